#include "doctest.h"
#include "hyperdyn/detectors.hpp"
#include "hyperdyn/io.hpp"
#include "hyperdyn/zoo.hpp"
#include "oracles.hpp"

using namespace hyperdyn;

namespace {

std::string image_label(const System& s, const std::string& label, std::size_t map = 0) {
    return s.space.label(s.family.maps()[map][s.space.require(label)]);
}

}  // namespace

TEST_SUITE("zoo") {

TEST_CASE("full shift") {
    const System one = make_full_shift(2, 1);
    CHECK(one.space.size() == 2);
    CHECK(one.family.maps()[0] == Table{0, 0});

    const System s = make_full_shift(2, 3);
    CHECK(s.name == "shift(a=2,L=3)");
    CHECK(s.space.size() == 8);
    CHECK(image_label(s, "101") == "010");
    CHECK(s.space.distance(s.space.require("000"), s.space.require("100")) == Rational(1));
    CHECK(s.space.distance(s.space.require("010"), s.space.require("011")) == Rational(1, 4));

    const System filled = make_full_shift(2, 3, {1, 1});
    CHECK(image_label(filled, "101") == "011");

    const System deep = make_full_shift(3, 3, {0, 2});
    CHECK(deep.space.open_base().size() == 3 + 9);
    CHECK(deep.space.open_base().front().name == "[0]");

    Budget tight;
    tight.max_space_points = 100;
    CHECK_THROWS_AS(make_full_shift(2, 10, {}, tight), ResourceError);
    CHECK_THROWS_AS(make_full_shift(2, 3, {2, 1}), InputError);
    CHECK(make_full_shift(1, 3).space.size() == 1);
    CHECK_THROWS_AS(make_full_shift(0, 3), InputError);
}

TEST_CASE("odometer") {
    const System o = make_odometer(3);
    CHECK(image_label(o, "000") == "100");
    CHECK(image_label(o, "110") == "001");
    CHECK(image_label(o, "111") == "000");
    for (std::size_t k = 1; k <= 6; ++k) {
        const System odo = make_odometer(k);
        const Table& phi = odo.family.maps()[0];
        Table power = phi;
        std::uint64_t order = 1;
        while (!is_identity(power)) {
            power = compose(phi, power);
            ++order;
        }
        CHECK(order == (std::uint64_t{1} << k));
    }
}

TEST_CASE("identity interleaving") {
    const MapFamily id(3, {identity_table(3)});
    for (auto pos : {IdentityPosition::First, IdentityPosition::Second}) {
        const MapFamily inter = interleave_identity(id, pos);
        for (const auto& t : inter.maps()) {
            CHECK(is_identity(t));
        }
    }
    const System tent = make_interval_grid({}, 16);
    const MapFamily fi = interleave_identity(tent.family, IdentityPosition::Second);
    const Table& f = tent.family.maps()[0];
    const auto trace = CompositionTrace::build(fi);
    CHECK(trace.omega(3) == compose(f, f));

    const System odo = make_odometer(2);
    const MapFamily iphi = interleave_identity(odo.family, IdentityPosition::First);
    const Table& phi = odo.family.maps()[0];
    CHECK(CompositionTrace::build(iphi).omega(5) == compose(phi, phi));

    CHECK(block_family(interleave_identity(tent.family, IdentityPosition::Second), 2) == tent.family);
    CHECK(block_family(interleave_identity(tent.family, IdentityPosition::First), 2) == tent.family);

    // ω relations in both positions.
    const auto first = CompositionTrace::build(interleave_identity(tent.family, IdentityPosition::First));
    const auto second = CompositionTrace::build(interleave_identity(tent.family, IdentityPosition::Second));
    const auto base = CompositionTrace::build(tent.family);
    for (std::uint64_t k = 1; k <= 6; ++k) {
        CHECK(first.omega(2 * k) == base.omega(k));
        CHECK(first.omega(2 * k + 1) == base.omega(k));
        CHECK(second.omega(2 * k - 1) == base.omega(k));
        CHECK(second.omega(2 * k) == base.omega(k));
    }
}

TEST_CASE("example 1 periods by an independent orbit scan") {
    for (std::size_t k = 3; k <= 6; ++k) {
        const System odo = make_odometer(k);
        const MapFamily iphi = interleave_identity(odo.family, IdentityPosition::First);
        const std::uint64_t expected = std::uint64_t{1} << (k + 1);
        const auto trace = CompositionTrace::build(iphi);
        for (PointId x = 0; x < odo.space.size(); ++x) {
            CHECK(oracle::scanned_period(iphi.maps(), x, 4 * expected, 16 * expected) == expected);
            CHECK(minimal_period(trace, x) == expected);
        }
        // The cylinder [w], |w| = 2, comes back after 2^(2+1) steps.
        for (const auto& open : odo.space.open_base()) {
            if (open.name.size() != 4) {
                continue;
            }
            const HyperPoint cyl(members(open.members), odo.space.size());
            CHECK(oracle::scanned_set_period(iphi.maps(), cyl.elements(), 64, 1024) == 8u);
            CHECK(minimal_set_period(trace, cyl) == 8u);
        }
    }
}

TEST_CASE("power families") {
    const System s = make_full_shift(2, 3);
    const MapFamily p = power_family(s.family, {1, 2});
    REQUIRE(p.period() == 2);
    CHECK(p.maps()[1] == compose(s.family.maps()[0], s.family.maps()[0]));
    CHECK(p.is_commutative());
    CHECK_THROWS_AS(power_family(p, {1}), InputError);
}

TEST_CASE("interval grids") {
    const System t2 = make_interval_grid({}, 2);
    CHECK(t2.discretized);
    CHECK(t2.family.maps()[0][0] == 1);
    CHECK(t2.space.distance(0, 1) == Rational(1, 2));

    const System rot0 = make_interval_grid({IntervalMap::Rotation, Rational(0)}, 10);
    CHECK(is_identity(rot0.family.maps()[0]));

    const System log4 = make_interval_grid({IntervalMap::Logistic, Rational(4)}, 4);
    CHECK(log4.family.maps()[0][1] == 3);

    const System g = make_interval_grid({}, 8, 3);
    CHECK(g.space.open_base().size() == 6);
    CHECK(g.space.open_base().front().name == "c0..c2");
    CHECK(make_interval_grid({}, 8, 1).space.open_base().front().name == "c0");

    CHECK_THROWS_AS(make_interval_grid({}, 1), InputError);
    CHECK_THROWS_AS(make_interval_grid({IntervalMap::Logistic, Rational(5)}, 8), InputError);
    CHECK_THROWS_AS(make_interval_grid({IntervalMap::Logistic, Rational(-1)}, 8), InputError);
}

TEST_CASE("random finite systems") {
    const System a = make_random_finite(6, 2, 13);
    const System b = make_random_finite(6, 2, 13);
    CHECK(a.family == b.family);
    CHECK(system_to_json(a) == system_to_json(b));
    CHECK_FALSE(make_random_finite(6, 2, 14).family == a.family);

    const System one = make_random_finite(1, 1, 3);
    CHECK(check_transitive(TracedSystem::build(one)).status == Status::Holds);
    CHECK(check_dense_periodic(TracedSystem::build(one)).status == Status::Holds);

    for (std::uint64_t seed = 0; seed < 40; ++seed) {
        const System s = make_random_finite(7, 2, seed, {seed % 2 == 0});
        const auto& d = s.space.metric();
        for (PointId x = 0; x < 7; ++x) {
            for (PointId y = 0; y < 7; ++y) {
                for (PointId z = 0; z < 7; ++z) {
                    REQUIRE(!(d.distance(x, y) + d.distance(y, z) < d.distance(x, z)));
                }
            }
        }
        if (seed % 2 == 0) {
            for (const auto& t : s.family.maps()) {
                std::vector<bool> hit(7);
                for (PointId y : t) {
                    hit[y] = true;
                }
                CHECK(std::all_of(hit.begin(), hit.end(), [](bool h) { return h; }));
            }
        }
    }
}

TEST_CASE("rotation, table and identity systems") {
    const System r = make_cyclic_rotation(5, 2);
    CHECK(image_label(r, "r4") == "r1");
    CHECK(r.space.distance(0, 4) == Rational(1, 5));
    CHECK(r.space.distance(0, 2) == Rational(2, 5));
    const System t = make_table_system({2, 0, 1});
    CHECK(image_label(t, "p0") == "p2");
    CHECK_THROWS_AS(make_table_system({3, 0, 1}), InputError);
    CHECK(is_identity(make_identity(4).family.maps()[0]));
}

TEST_CASE("recipes") {
    CHECK(build_recipe({{"kind", "full_shift"}, {"alphabet", 2}, {"length", 3}}).name == "shift(a=2,L=3)");
    CHECK(build_recipe({{"kind", "odometer"}, {"k", 3}}).name == "odometer(K=3)");
    const System ex1 = build_recipe(
        {{"kind", "odometer"}, {"k", 3}, {"post", {{{"op", "interleave_identity"}, {"position", "first"}}}}});
    CHECK(ex1.name == "[I,f](odometer(K=3))");
    CHECK(ex1.family.period() == 2);
    const System logi = build_recipe({{"kind", "interval_grid"}, {"map", "logistic"}, {"r", "4"}, {"cells", 4}});
    CHECK(logi.discretized);
    CHECK(logi.family.maps()[0][1] == 3);
    const System perm = build_recipe({{"kind", "permutation"}, {"points", 4}, {"step", 1}});
    CHECK(perm.family.maps()[0] == Table{1, 2, 3, 0});
    const System rnd =
        build_recipe({{"kind", "random_finite"}, {"points", 5}, {"period", 2}, {"seed", 7}, {"bijective", true}});
    CHECK(rnd.family == make_random_finite(5, 2, 7, {true}).family);
    const System blocked = build_recipe(
        {{"kind", "odometer"}, {"k", 3}, {"post", {{{"op", "block"}, {"n", 3}}}}});
    CHECK(blocked.family.maps()[0] == CompositionTrace::build(make_odometer(3).family).omega(3));
    const System prod = build_recipe({{"kind", "identity"}, {"points", 2}, {"post", {{{"op", "product"}, {"arity", 2}}}}});
    CHECK(prod.space.size() == 4);

    try {
        build_recipe({{"kind", "full_shift"}, {"alphabet", 2}, {"length", "three"}}, {}, "/system/recipe");
        FAIL("expected a config error");
    } catch (const ConfigError& e) {
        CHECK(e.path() == "/system/recipe/length");
    }
    try {
        build_recipe({{"kind", "odometer"}, {"k", 3}, {"post", {{{"op", "twist"}}}}}, {}, "/r");
        FAIL("expected a config error");
    } catch (const ConfigError& e) {
        CHECK(e.path() == "/r/post/0/op");
    }
    CHECK_THROWS_AS(build_recipe({{"kind", "moebius"}}), ConfigError);
    CHECK_THROWS_AS(build_recipe({{"kind", "odometer"}, {"k", 3}, {"extra", 1}}), ConfigError);
}

TEST_CASE("every zoo system exports to the description format") {
    for (const System& s : {make_full_shift(2, 3), make_odometer(3), make_interval_grid({}, 8),
                            make_random_finite(5, 2, 1), make_cyclic_rotation(4), make_identity(2)}) {
        const Json doc = system_to_json(s);
        const System back = parse_system(doc);
        CHECK(back.family == s.family);
        CHECK(back.space.labels() == s.space.labels());
        CHECK(back.discretized == s.discretized);
        CHECK(system_to_json(back) == doc);
    }
}

}  // TEST_SUITE
