#include "doctest.h"
#include "hyperdyn/hyperspace.hpp"
#include "hyperdyn/io.hpp"
#include "hyperdyn/suites.hpp"
#include "hyperdyn/zoo.hpp"
#include "oracles.hpp"

using namespace hyperdyn;

namespace {

HyperPoint hp(std::vector<PointId> ids, std::size_t universe) { return HyperPoint(std::move(ids), universe); }

PointSet set_of(std::size_t universe, std::vector<PointId> ids) { return make_point_set(universe, ids); }

}  // namespace

TEST_SUITE("hyperspace") {

TEST_CASE("hyperpoints are canonical") {
    CHECK(hp({2, 0, 2}, 3) == hp({0, 2}, 3));
    CHECK(hp({2, 0, 2}, 3).elements() == std::vector<PointId>{0, 2});
    CHECK_THROWS_AS(hp({}, 3), InputError);
    CHECK_THROWS_AS(hp({3}, 3), InputError);
    CHECK(hp({1}, 3) < hp({0, 1}, 3));
    CHECK(hp({0, 2}, 3) < hp({1, 2}, 3));
    CHECK(hp({0}, 3).is_subset_of(hp({0, 2}, 3)));
    CHECK(to_json(hp({2, 0}, 3)) == Json::array({0, 2}));
}

TEST_CASE("hausdorff distance examples") {
    const LineMetric line({Rational(0), Rational(1, 2), Rational(1)});
    CHECK(hausdorff_distance(line, hp({0, 1}, 3), hp({0, 1}, 3)) == Rational(0));
    CHECK(hausdorff_distance(line, hp({0}, 3), hp({2}, 3)) == Rational(1));
    CHECK(hausdorff_distance(line, hp({0}, 3), hp({0, 2}, 3)) == Rational(1));
    CHECK(hausdorff_distance(line, hp({0, 2}, 3), hp({1}, 3)) == Rational(1, 2));

    const System s = make_full_shift(2, 3);
    CHECK_THROWS_AS(hausdorff_distance(s.space, hp({0}, 4), hp({1}, 8)), InputError);
}

TEST_CASE("hausdorff distance matches the neighbourhood oracle") {
    for (const auto& s : random_corpus()) {
        const auto hyper = HyperSpaceModel::build(s.space, std::min<std::size_t>(3, s.space.size()));
        const auto& pts = hyper.points();
        for (std::size_t i = 0; i < pts.size(); i += 3) {
            for (std::size_t j = 0; j < pts.size(); j += 2) {
                REQUIRE(hausdorff_distance(s.space.metric(), pts[i], pts[j]) ==
                        oracle::hausdorff(s.space.metric(), pts[i].elements(), pts[j].elements()));
            }
        }
    }
}

TEST_CASE("d_H metric axioms on a six point space with m = 3") {
    const System s = make_random_finite(6, 1, 11);
    const auto hyper = HyperSpaceModel::build(s.space, 3);
    const auto& pts = hyper.points();
    REQUIRE(pts.size() == 41);
    const auto& d = s.space.metric();
    for (const auto& a : pts) {
        for (const auto& b : pts) {
            const Rational ab = hausdorff_distance(d, a, b);
            REQUIRE((ab == Rational(0)) == (a == b));
            REQUIRE(ab == hausdorff_distance(d, b, a));
            for (const auto& c : pts) {
                REQUIRE(!(hausdorff_distance(d, a, b) + hausdorff_distance(d, b, c) <
                          hausdorff_distance(d, a, c)));
            }
        }
    }
}

TEST_CASE("singleton embedding is isometric") {
    for (const System& s : {make_full_shift(2, 4), make_odometer(3), make_cyclic_rotation(5),
                            make_interval_grid({}, 8)}) {
        for (PointId x = 0; x < s.space.size(); ++x) {
            for (PointId y = 0; y < s.space.size(); ++y) {
                REQUIRE(hausdorff_distance(s.space, hp({x}, s.space.size()), hp({y}, s.space.size())) ==
                        s.space.distance(x, y));
            }
        }
    }
}

TEST_CASE("lift image") {
    const MapFamily identity(4, {identity_table(4)});
    CHECK(lift_image(identity, 5, hp({1, 3}, 4)) == hp({1, 3}, 4));

    const System odo = make_odometer(2);
    const auto& sp = odo.space;
    const HyperPoint cyl1 = hp({sp.require("10"), sp.require("11")}, 4);
    CHECK(lift_image(odo.family, 1, cyl1) == hp({sp.require("01"), sp.require("00")}, 4));

    // Identity second: ω_{2k-1} = f^k.
    const System tent = make_interval_grid({}, 16);
    const MapFamily fi = interleave_identity(tent.family, IdentityPosition::Second);
    const HyperPoint a = hp({0, 5, 9}, 16);
    for (std::uint64_t k = 1; k <= 4; ++k) {
        CHECK(lift_image(fi, 2 * k - 1, a) == lift_image(tent.family, k, a));
    }
    // Images never grow.
    const System constant = make_table_system({0, 0, 0});
    CHECK(lift_image(constant.family, 1, hp({0, 1, 2}, 3)).size() == 1);
}

TEST_CASE("lift invariants on the corpus") {
    for (const auto& s : random_corpus()) {
        const std::size_t n = s.space.size();
        const auto trace = CompositionTrace::build(s.family);
        const auto hyper = HyperSpaceModel::build(s.space, std::min<std::size_t>(3, n));
        for (std::uint64_t step = 1; step <= 6; ++step) {
            for (PointId x = 0; x < n; ++x) {
                REQUIRE(lift_image(s.family, step, hp({x}, n)) == hp({omega_eval(s.family, step, x)}, n));
            }
            for (const auto& a : hyper.points()) {
                REQUIRE(lift_image(trace, step, a) == lift_image(s.family, step, a));
                for (const auto& b : hyper.points()) {
                    if (a.is_subset_of(b)) {
                        REQUIRE(lift_image(s.family, step, a).is_subset_of(lift_image(s.family, step, b)));
                    }
                }
            }
        }
    }
}

TEST_CASE("vietoris membership") {
    const PointSet all = set_of(3, {0, 1, 2});
    for (const auto& a : {hp({0}, 3), hp({1, 2}, 3), hp({0, 1, 2}, 3)}) {
        CHECK(vietoris_contains({{all}}, a));
    }
    const VietorisBasic ab{{set_of(3, {0}), set_of(3, {1})}};
    CHECK_FALSE(vietoris_contains(ab, hp({0}, 3)));
    CHECK(vietoris_contains(ab, hp({0, 1}, 3)));
    CHECK_FALSE(vietoris_contains(ab, hp({0, 1, 2}, 3)));
    CHECK_THROWS_AS(vietoris_contains({}, hp({0}, 3)), InputError);
    CHECK(upper_vietoris_contains(set_of(3, {0, 1}), hp({1}, 3)));
    CHECK_FALSE(upper_vietoris_contains(set_of(3, {0, 1}), hp({1, 2}, 3)));
}

TEST_CASE("vietoris singleton basics are small d_H balls in the discrete case") {
    const System s = make_random_finite(5, 1, 3);
    const auto hyper = HyperSpaceModel::build(s.space, 3);
    const Rational radius = s.space.metric().positive_values().front() / 2;
    for (const auto& u : hyper.points()) {
        VietorisBasic basic;
        for (PointId x : u.elements()) {
            basic.hit_sets.push_back(set_of(5, {x}));
        }
        for (const auto& a : hyper.points()) {
            REQUIRE(vietoris_contains(basic, a) == (hausdorff_distance(s.space.metric(), a, u) < radius));
        }
    }
}

TEST_CASE("hyperspace model") {
    CHECK(hyperspace_cardinality(2, 2) == 3);
    CHECK(hyperspace_cardinality(6, 3) == 41);
    CHECK(hyperspace_cardinality(10, 10) == 1023);
    for (std::size_t n = 1; n <= 6; ++n) {
        for (std::size_t m = 1; m <= n; ++m) {
            const System s = make_identity(n);
            const auto hyper = HyperSpaceModel::build(s.space, m);
            CHECK(hyper.size() == hyperspace_cardinality(n, m));
            for (PointId x = 0; x < n; ++x) {
                CHECK(hyper.point(hyper.singleton(x)) == hp({x}, n));
            }
        }
    }
    Budget tight;
    tight.max_hyper_points = 10;
    try {
        HyperSpaceModel::build(make_identity(6).space, 3, tight);
        FAIL("expected a resource error");
    } catch (const ResourceError& e) {
        CHECK(std::string(e.what()).find("41") != std::string::npos);
    }
}

TEST_CASE("as_hyper_system") {
    const System swap = make_table_system({1, 0});
    const System lifted = as_hyper_system(swap, 2);
    REQUIRE(lifted.space.size() == 3);
    CHECK(lifted.family.maps()[0][2] == 2);
    CHECK(lifted.space.label(2) == "{p0,p1}");

    // Restricted to singletons the lift is the base system.
    for (const auto& s : random_corpus()) {
        const System l = as_hyper_system(s, std::min<std::size_t>(2, s.space.size()));
        for (std::size_t j = 0; j < s.family.period(); ++j) {
            for (PointId x = 0; x < s.space.size(); ++x) {
                REQUIRE(l.family.maps()[j][x] == s.family.maps()[j][x]);
            }
        }
        for (PointId x = 0; x < s.space.size(); ++x) {
            for (PointId y = 0; y < s.space.size(); ++y) {
                REQUIRE(l.space.distance(x, y) == s.space.distance(x, y));
            }
        }
    }

    // Open base: distinct nonempty Vietoris basics over the base opens.
    const System shift = make_full_shift(2, 2);
    const System ls = as_hyper_system(shift, 2);
    for (const auto& open : ls.space.open_base()) {
        CHECK(open.members.any());
    }
}

TEST_CASE("lifted systems round-trip through the description format") {
    const System base = make_odometer(3);
    const System lifted = as_hyper_system(base, 2);
    const Json doc = system_to_json(lifted);
    const System back = parse_system(doc);
    CHECK(back.space.size() == lifted.space.size());
    CHECK(back.family == lifted.family);
    CHECK(system_to_json(back) == doc);
}

}  // TEST_SUITE
