#include <cmath>
#include <random>

#include "doctest.h"
#include "hyperdyn/entropy.hpp"
#include "hyperdyn/zoo.hpp"
#include "oracles.hpp"

using namespace hyperdyn;

namespace {

constexpr double kTol = 1e-12;

PointSet set_of(std::size_t universe, std::vector<PointId> ids) { return make_point_set(universe, ids); }

OpenCover cover_of(std::size_t universe, std::vector<std::vector<PointId>> sets) {
    OpenCover c;
    for (auto& s : sets) {
        c.sets.push_back(set_of(universe, std::move(s)));
    }
    return c;
}

std::vector<std::vector<PointId>> lists(const OpenCover& c) {
    std::vector<std::vector<PointId>> out;
    for (const auto& s : c.sets) {
        out.push_back(members(s));
    }
    return out;
}

// A random cover of n points: every point lands in 1..3 of `count` sets.
OpenCover random_cover(std::mt19937_64& rng, std::size_t n, std::size_t count) {
    OpenCover c;
    c.sets.assign(count, PointSet(n));
    for (PointId x = 0; x < n; ++x) {
        const std::size_t copies = 1 + rng() % 3;
        for (std::size_t i = 0; i < copies; ++i) {
            c.sets[rng() % count].set(x);
        }
    }
    std::erase_if(c.sets, [](const PointSet& s) { return s.none(); });
    return c;
}

// Splits each set at random into up to three pieces, which keeps it a cover
// and makes every piece lie inside an original set.
OpenCover random_refinement(std::mt19937_64& rng, const OpenCover& coarse) {
    OpenCover fine;
    for (const auto& s : coarse.sets) {
        std::vector<PointSet> parts(1 + rng() % 3, PointSet(s.size()));
        for (PointId x : members(s)) {
            parts[rng() % parts.size()].set(x);
        }
        for (auto& p : parts) {
            if (p.any()) {
                fine.sets.push_back(std::move(p));
            }
        }
    }
    return fine;
}

}  // namespace

TEST_SUITE("entropy") {

TEST_CASE("cover validation") {
    CHECK_THROWS_AS(validate_cover(cover_of(3, {{0, 1}}), 3), InputError);
    CHECK_THROWS_AS(validate_cover(OpenCover{}, 3), InputError);
    OpenCover with_empty = cover_of(2, {{0, 1}});
    with_empty.sets.push_back(PointSet(2));
    CHECK_THROWS_AS(validate_cover(with_empty, 2), InputError);
    CHECK_THROWS_AS(min_subcover_size(cover_of(3, {{0}, {1}}), 3), InputError);
}

TEST_CASE("minimum subcover examples") {
    CHECK(min_subcover_size(cover_of(3, {{0, 1, 2}}), 3) == 1);
    CHECK(min_subcover_size(cover_of(4, {{0}, {1}, {2}, {3}}), 4) == 4);
    CHECK(min_subcover_size(cover_of(3, {{0, 1}, {1, 2}, {0, 2}}), 3) == 2);
}

TEST_CASE("minimum subcover agrees with exhaustive search") {
    std::mt19937_64 rng(2024);
    for (int trial = 0; trial < 300; ++trial) {
        const std::size_t n = 3 + rng() % 8;
        const OpenCover c = random_cover(rng, n, 2 + rng() % 10);
        REQUIRE(min_subcover_size(c, n) == oracle::exhaustive_cover(lists(c), n));
    }
}

TEST_CASE("set cover budget fails loudly") {
    std::mt19937_64 rng(5);
    const OpenCover c = random_cover(rng, 40, 30);
    CHECK_THROWS_AS(min_subcover_size(c, 40, 3), ResourceError);
}

TEST_CASE("joins") {
    const OpenCover a = cover_of(3, {{0, 1}, {2}});
    const OpenCover whole = cover_of(3, {{0, 1, 2}});
    CHECK(lists(join_covers(a, whole)) == lists(canonical_cover(a)));
    CHECK(lists(join_covers(a, a)) == lists(canonical_cover(a)));
    const OpenCover b = cover_of(3, {{0}, {1, 2}});
    CHECK(lists(join_covers(a, b)) == lists(canonical_cover(cover_of(3, {{0}, {1}, {2}}))));
}

TEST_CASE("preimage covers") {
    const OpenCover a = cover_of(3, {{0, 1}, {2}});
    CHECK(lists(preimage_cover(identity_table(3), a)) == lists(canonical_cover(a)));
    const OpenCover pre = preimage_cover(Table{2, 2, 2}, a);
    CHECK(lists(pre) == std::vector<std::vector<PointId>>{{0, 1, 2}});

    const System shift = make_full_shift(2, 3);
    const OpenCover cyl = cover_from_base(shift.space);
    const OpenCover p1 = preimage_cover(shift.family, 1, cyl);
    REQUIRE(p1.sets.size() == 2);
    for (const auto& s : p1.sets) {
        const auto ids = members(s);
        CHECK(ids.size() == 4);
        const char second = shift.space.label(ids.front())[1];
        for (PointId x : ids) {
            CHECK(shift.space.label(x)[1] == second);
        }
    }
    CHECK(lists(preimage_cover(shift.family, 0, cyl)) == lists(canonical_cover(cyl)));
}

TEST_CASE("identity family series decays as H_1 / k") {
    const System id = make_identity(4);
    const OpenCover c = cover_of(4, {{0, 1}, {2}, {3}, {1, 2}});
    const EntropySeries s = entropy_series(id.family, c, 6);
    REQUIRE(s.terms.size() == 6);
    const double h1 = s.terms[0].h;
    CHECK(s.terms[0].count == 3);
    for (const auto& t : s.terms) {
        CHECK(t.count == 3);
        CHECK(std::abs(t.rate - h1 / static_cast<double>(t.k)) < kTol);
    }
    CHECK(s.window == 2);
    CHECK(std::abs(s.limsup_estimate - h1 / 5.0) < kTol);
}

TEST_CASE("full shift L = 12 gives N_k = 2^k") {
    const System shift = make_full_shift(2, 12);
    const EntropySeries s = entropy_series(shift.family, cover_from_base(shift.space), 10);
    std::vector<std::size_t> cell(shift.space.size());
    for (PointId x = 0; x < cell.size(); ++x) {
        cell[x] = shift.space.label(x)[0] == '1';
    }
    for (const auto& t : s.terms) {
        CHECK(t.count == (std::uint64_t{1} << t.k));
        CHECK(t.count == oracle::itinerary_count(shift.family.maps(), cell, t.k));
        CHECK(std::abs(t.rate - std::log(2.0)) < kTol);
    }
    CHECK(s.exact_terms == 10);
    CHECK(s.window == 4);
}

TEST_CASE("interleaved shift refines only on shift steps") {
    System shift = make_full_shift(2, 12);
    const MapFamily fi = interleave_identity(shift.family, IdentityPosition::Second);
    const EntropySeries s = entropy_series(fi, cover_from_base(shift.space), 10);
    std::vector<std::size_t> cell(shift.space.size());
    for (PointId x = 0; x < cell.size(); ++x) {
        cell[x] = shift.space.label(x)[0] == '1';
    }
    for (const auto& t : s.terms) {
        CHECK(t.count == (std::uint64_t{1} << (t.k / 2 + 1)));
        CHECK(t.count == oracle::itinerary_count(fi.maps(), cell, t.k));
    }
}

TEST_CASE("join growth budget reports the partial series") {
    const System shift = make_full_shift(2, 10);
    Budget tight;
    tight.max_join_sets = 40;
    try {
        entropy_series(shift.family, cover_from_base(shift.space), 10, tight);
        FAIL("expected a budget error");
    } catch (const EntropyBudgetError& e) {
        CHECK_FALSE(e.partial().terms.empty());
        CHECK(e.partial().terms.size() < 10);
        CHECK(e.partial().terms.back().count == (std::uint64_t{1} << e.partial().terms.back().k));
    }
}

TEST_CASE("separated sets") {
    const System shift = make_full_shift(2, 10);
    const EntropySeries s = separated_entropy(shift, Rational(3, 4), 10);
    for (const auto& t : s.terms) {
        CHECK(t.count == (std::uint64_t{1} << t.k));
    }
    const System id = make_identity(5);
    for (const auto& t : separated_entropy(id, Rational(1, 2), 6).terms) {
        CHECK(t.count == 5);
    }
    const System rot = make_cyclic_rotation(6);
    for (const auto& t : separated_entropy(rot, Rational(1, 12), 8).terms) {
        CHECK(t.count <= 6);
    }
    CHECK_THROWS_AS(separated_entropy(id, Rational(0), 3), InputError);

    for (const System& small : {make_full_shift(2, 4), make_random_finite(7, 2, 9), make_odometer(3)}) {
        for (const Rational& eps : {Rational(1, 4), Rational(1, 2)}) {
            const auto series = separated_entropy(small, eps, 5);
            for (const auto& t : series.terms) {
                REQUIRE(t.count ==
                        oracle::exhaustive_separated(small.family.maps(), small.space.metric(), eps, t.k));
            }
        }
    }
}

TEST_CASE("autonomous cover entropy matches the separated estimate") {
    const System shift = make_full_shift(2, 12);
    const EntropySeries cover = entropy_series(shift.family, cover_from_base(shift.space), 8);
    const EntropySeries sep = separated_entropy(shift, Rational(3, 4), 8);
    CHECK(std::abs(cover.limsup_estimate - sep.limsup_estimate) <= 0.1);
}

TEST_CASE("hyperspace comparison") {
    const System shift = make_full_shift(2, 8);
    const OpenCover cyl = cover_from_base(shift.space);
    const auto same = hyper_entropy_compare(shift, 1, cyl, 6);
    REQUIRE(same.base.terms.size() == same.lifted.terms.size());
    for (std::size_t i = 0; i < same.base.terms.size(); ++i) {
        CHECK(same.base.terms[i].count == same.lifted.terms[i].count);
    }
    CHECK(same.dominance);

    const auto two = hyper_entropy_compare(shift, 2, cyl, 6);
    CHECK(two.dominance);
    for (std::size_t i = 0; i < two.base.terms.size(); ++i) {
        CHECK(two.lifted.terms[i].count >= two.base.terms[i].count);
    }

    const System id = make_identity(3);
    const auto flat = hyper_entropy_compare(id, 2, cover_from_base(id.space), 5);
    CHECK(flat.dominance);
    CHECK(flat.base.terms.back().count == flat.base.terms.front().count);
    CHECK(flat.lifted.terms.back().count == flat.lifted.terms.front().count);
}

TEST_CASE("lifted cover") {
    const System s = make_full_shift(2, 2);
    const auto hyper = HyperSpaceModel::build(s.space, 2);
    const OpenCover lifted = lift_cover(hyper, cover_from_base(s.space));
    CHECK_NOTHROW(validate_cover(lifted, hyper.size()));
}

TEST_CASE("refinement monotonicity on 200 seeded pairs") {
    std::mt19937_64 rng(77);
    for (int trial = 0; trial < 200; ++trial) {
        const std::size_t n = 4 + rng() % 7;
        const OpenCover coarse = random_cover(rng, n, 2 + rng() % 5);
        const OpenCover fine = random_refinement(rng, coarse);
        REQUIRE(refines(fine, coarse));
        REQUIRE(min_subcover_size(coarse, n) <= min_subcover_size(fine, n));
    }
}

TEST_CASE("joins refine both sides") {
    std::mt19937_64 rng(91);
    for (int trial = 0; trial < 100; ++trial) {
        const std::size_t n = 4 + rng() % 6;
        const OpenCover a = random_cover(rng, n, 2 + rng() % 4);
        const OpenCover b = random_cover(rng, n, 2 + rng() % 4);
        const OpenCover j = join_covers(a, b);
        REQUIRE(refines(j, a));
        REQUIRE(refines(j, b));
        REQUIRE(min_subcover_size(j, n) >= std::max(min_subcover_size(a, n), min_subcover_size(b, n)));
    }
}

TEST_CASE("series terms are nondecreasing in N_k") {
    for (std::uint64_t seed = 1; seed <= 15; ++seed) {
        const System s = make_random_finite(6, 1 + seed % 3, seed);
        const EntropySeries series = entropy_series(s.family, cover_from_base(s.space), 6);
        for (std::size_t i = 1; i < series.terms.size(); ++i) {
            CHECK(series.terms[i].count >= series.terms[i - 1].count);
        }
    }
}

}  // TEST_SUITE
