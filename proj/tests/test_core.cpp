#include <cstdlib>
#include <numeric>

#include "doctest.h"
#include "hyperdyn/trace.hpp"
#include "hyperdyn/zoo.hpp"
#include "hyperdyn/suites.hpp"
#include "oracles.hpp"

using namespace hyperdyn;

namespace {

System two_points(std::vector<Table> maps) {
    auto metric = std::make_shared<DenseMetric>(2, std::vector<Rational>{0, 1, 1, 0});
    return System{"two", SpaceModel({"a", "b"}, metric), MapFamily(2, std::move(maps))};
}

const Table kSwap{1, 0};

}  // namespace

TEST_SUITE("core") {

TEST_CASE("rational parsing and printing") {
    CHECK(parse_rational("3/6") == Rational(1, 2));
    CHECK(parse_rational("-2/4") == Rational(-1, 2));
    CHECK(parse_rational("7") == Rational(7));
    CHECK(to_string(Rational(4, 8)) == "1/2");
    CHECK(to_string(Rational(3)) == "3");
    CHECK_THROWS_AS(parse_rational("1/0"), InputError);
    CHECK_THROWS_AS(parse_rational("x"), InputError);
    CHECK_THROWS_AS(parse_rational(""), InputError);
    CHECK_THROWS_AS(parse_rational("1/2/3"), InputError);
}

TEST_CASE("budget overrides") {
    Budget b;
    b.apply_overrides("hyper_points=10,join_sets=5");
    CHECK(b.max_hyper_points == 10);
    CHECK(b.max_join_sets == 5);
    Budget c;
    c.apply_overrides("42");
    CHECK(c.max_hyper_points == 42);
    CHECK_THROWS_AS(c.apply_overrides("nonsense=1"), InputError);
    CHECK_THROWS_AS(c.apply_overrides("hyper_points=abc"), InputError);
    CHECK(Budget{} == Budget{});
}

TEST_CASE("dense metric axioms are enforced exactly") {
    CHECK_NOTHROW(DenseMetric(2, {0, 1, 1, 0}));
    CHECK_THROWS_AS(DenseMetric(2, {0, 1, 2, 0}), InputError);
    CHECK_THROWS_AS(DenseMetric(2, {1, 1, 1, 0}), InputError);
    CHECK_THROWS_AS(DenseMetric(2, {0, 0, 0, 0}), InputError);
    CHECK_THROWS_AS(DenseMetric(3, {0, 1, 3, 1, 0, 1, 3, 1, 0}), InputError);
    CHECK_THROWS_AS(DenseMetric(2, {0, -1, -1, 0}), InputError);
}

TEST_CASE("space model validation") {
    auto metric = std::make_shared<DenseMetric>(2, std::vector<Rational>{0, 1, 1, 0});
    CHECK_THROWS_AS(SpaceModel({"a", "a"}, metric), InputError);
    CHECK_THROWS_AS(SpaceModel({"a"}, metric), InputError);
    PointSet only_a(2);
    only_a.set(0);
    CHECK_THROWS_AS(SpaceModel({"a", "b"}, metric, {OpenSet{"A", only_a}}), InputError);
    CHECK_THROWS_AS(SpaceModel({"a", "b"}, metric, {OpenSet{"E", PointSet(2)}}), InputError);
    const SpaceModel space({"a", "b"}, metric);
    CHECK(space.open_base().size() == 2);
    CHECK(space.require("b") == 1);
    CHECK_THROWS_AS(space.require("c"), InputError);
    CHECK(space.diameter() == Rational(1));
}

TEST_CASE("omega_eval examples") {
    const MapFamily identity(3, {identity_table(3)});
    CHECK(omega_eval(identity, 7, 0) == 0);

    // [swap, I]: ω_1 = swap, ω_2 = swap, ω_3 = swap ∘ swap = id.
    const MapFamily swap_then_id(2, {kSwap, identity_table(2)});
    for (std::uint64_t n = 1; n <= 8; ++n) {
        CHECK(omega_eval(swap_then_id, n, 0) == oracle::fold(swap_then_id.maps(), n, 0));
    }
    CHECK(omega_eval(swap_then_id, 3, 0) == 0);

    const System odo = make_odometer(3);
    const PointId x = odo.space.require("000");
    CHECK(odo.space.label(omega_eval(odo.family, 1, x)) == "100");
}

TEST_CASE("composition trace examples") {
    const auto t_id = CompositionTrace::build(MapFamily(3, {identity_table(3)}));
    CHECK(t_id.preperiod() == 1);
    CHECK(t_id.cycle() == 1);
    CHECK(is_identity(t_id.omega(5)));

    const auto t_swap = CompositionTrace::build(MapFamily(2, {kSwap}));
    CHECK(t_swap.cycle() == 2);
    CHECK(t_swap.omega(1) == kSwap);
    CHECK(is_identity(t_swap.omega(2)));
    CHECK(t_swap.omega(3) == kSwap);

    const auto t_odo = CompositionTrace::build(make_odometer(2).family);
    CHECK(t_odo.preperiod() == 1);
    CHECK(t_odo.cycle() == 4);

    // Phase matters: the cycle of [swap, I, swap] is a multiple of its period.
    const auto t_phase = CompositionTrace::build(MapFamily(2, {kSwap, identity_table(2), kSwap}));
    CHECK(t_phase.cycle() % 3 == 0);

    // A genuine preperiod: [id, const] settles on the constant table after one
    // step, and the cycle still has to respect the phase.
    const auto t_pre = CompositionTrace::build(MapFamily(2, {identity_table(2), Table{0, 0}}));
    CHECK(t_pre.preperiod() == 2);
    CHECK(t_pre.cycle() == 2);
    CHECK(is_identity(t_pre.omega(1)));
    CHECK(t_pre.omega(9) == Table{0, 0});
}

TEST_CASE("trace agrees with direct folding up to tau + 2c") {
    auto systems = random_corpus();
    systems.push_back(make_odometer(3));
    systems.push_back(make_full_shift(2, 4));
    systems.push_back(System{"iphi", make_odometer(3).space,
                             interleave_identity(make_odometer(3).family, IdentityPosition::First)});
    for (const auto& s : systems) {
        const auto trace = CompositionTrace::build(s.family);
        const std::uint64_t last = trace.preperiod() + 2 * trace.cycle();
        for (std::uint64_t n = 1; n <= last; ++n) {
            for (PointId x = 0; x < s.space.size(); ++x) {
                REQUIRE(trace.eval(n, x) == oracle::fold(s.family.maps(), n, x));
            }
        }
    }
}

TEST_CASE("phase-cycle soundness and minimality") {
    for (const auto& s : random_corpus()) {
        const auto trace = CompositionTrace::build(s.family);
        const auto tau = trace.preperiod();
        const auto c = trace.cycle();
        for (std::uint64_t n = tau; n <= tau + 2 * c; ++n) {
            REQUIRE(trace.omega(n + c) == trace.omega(n));
        }
        // Minimal: no shorter shift reproduces both the phase and the tables.
        const std::size_t p = s.family.period();
        for (std::uint64_t d = 1; d < c; ++d) {
            bool repeats = d % p == 0;
            for (std::uint64_t n = tau; n < tau + c && repeats; ++n) {
                repeats = trace.omega(n + d) == trace.omega(n);
            }
            CHECK_FALSE(repeats);
        }
    }
}

TEST_CASE("block family") {
    const System odo = make_odometer(3);
    CHECK(block_family(odo.family, 1) == odo.family);

    const MapFamily fi(odo.space.size(), {odo.family.maps()[0], identity_table(8)});
    const MapFamily b2 = block_family(fi, 2);
    REQUIRE(b2.period() == 1);
    CHECK(b2.maps()[0] == CompositionTrace::build(fi).omega(2));

    const MapFamily b3 = block_family(odo.family, 3);
    REQUIRE(b3.period() == 1);
    const Table& phi = odo.family.maps()[0];
    CHECK(b3.maps()[0] == compose(phi, compose(phi, phi)));

    CHECK(block_family(MapFamily(2, {kSwap, identity_table(2), kSwap}), 2).period() == 3);
    CHECK(block_family(MapFamily(2, {kSwap, identity_table(2), kSwap, kSwap}), 2).period() == 2);

    for (const auto& s : random_corpus()) {
        const auto p = s.family.period();
        for (std::size_t n = 1; n <= 3; ++n) {
            const MapFamily block = block_family(s.family, n);
            CHECK(block.period() == p / std::gcd(p, n));
            for (std::uint64_t k = 1; k <= 3 * p; ++k) {
                for (PointId x = 0; x < s.space.size(); ++x) {
                    REQUIRE(omega_eval(block, k, x) == oracle::fold(s.family.maps(), k * n, x));
                }
            }
        }
    }
}

TEST_CASE("product family") {
    const System two = two_points({kSwap});
    const MapFamily prod = product_family(two.family, 2, {});
    CHECK(prod.points() == 4);
    // Coordinate 0 is the least significant digit.
    for (PointId a = 0; a < 2; ++a) {
        for (PointId b = 0; b < 2; ++b) {
            CHECK(prod.maps()[0][a + 2 * b] == kSwap[a] + 2 * kSwap[b]);
        }
    }
    const MapFamily id_prod = product_family(MapFamily(3, {identity_table(3)}), 3, {});
    CHECK(is_identity(id_prod.maps()[0]));

    const System ps = product_system(make_full_shift(2, 2), 2, {});
    CHECK(ps.space.size() == 16);
    CHECK(ps.space.distance(0, 15) == Rational(1));

    Budget tight;
    tight.max_product_points = 10;
    CHECK_THROWS_AS(product_family(MapFamily(4, {identity_table(4)}), 2, tight), ResourceError);
}

TEST_CASE("family validation and commutativity") {
    CHECK_THROWS_AS(MapFamily(2, {}), InputError);
    CHECK_THROWS_AS(MapFamily(2, {Table{0, 2}}), InputError);
    CHECK_THROWS_AS(MapFamily(2, {Table{0}}), InputError);
    CHECK(MapFamily(2, {kSwap, identity_table(2)}).is_commutative());
    CHECK_FALSE(MapFamily(3, {Table{1, 0, 2}, Table{0, 2, 1}}).is_commutative());
    auto s = make_full_shift(2, 3);
    s.family = MapFamily(4, {identity_table(4)});
    CHECK_THROWS_AS(validate(s), InputError);
}

TEST_CASE("trace budget") {
    Budget tight;
    tight.max_trace_entries = 10;
    CHECK_THROWS_AS(CompositionTrace::build(make_odometer(4).family, tight), ResourceError);
}

}  // TEST_SUITE
