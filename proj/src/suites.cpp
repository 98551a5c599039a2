#include "hyperdyn/suites.hpp"

#include <functional>
#include <map>
#include <numeric>
#include <random>
#include <sstream>

#include "hyperdyn/detectors.hpp"
#include "hyperdyn/entropy.hpp"
#include "hyperdyn/experiment.hpp"
#include "hyperdyn/zoo.hpp"

namespace hyperdyn {

std::vector<System> random_corpus() {
    std::vector<System> corpus;
    for (std::uint64_t seed = 1; seed <= 50; ++seed) {
        corpus.push_back(make_random_finite(2 + (seed * 7) % 6, 1 + seed % 3, seed,
                                            {seed % 2 == 0}));
    }
    return corpus;
}

namespace {

std::string verdict_text(const Verdict& v) {
    std::string text(to_string(v.status));
    if (v.status != Status::Inconclusive && !v.exact) {
        text += " (bounded)";
    }
    return text;
}

bool holds_exact(const Verdict& v) {
    return v.status == Status::Holds && v.exact;
}

bool fails_exact(const Verdict& v) {
    return v.status == Status::Fails && v.exact;
}

bool same_verdict(const Verdict& a, const Verdict& b) {
    return a.status == b.status && a.exact == b.exact;
}

Rational half_min_distance(const SpaceModel& space) {
    const auto scale = space.metric().positive_values();
    return scale.empty() ? Rational(1, 2) : scale.front() / 2;
}

TracedSystem traced(const System& s, const Budget& budget) {
    return TracedSystem::build(s, budget);
}

TracedSystem lifted(const System& s, std::size_t m, const Budget& budget) {
    return TracedSystem::build(as_hyper_system(s, m, budget), budget);
}

System with_family(System s, MapFamily family, const std::string& name) {
    s.family = std::move(family);
    s.name = name;
    return s;
}

System shift_powers(std::size_t length) {
    System s = make_full_shift(2, length);
    return with_family(s, power_family(s.family, {1, 2}), "powers[1,2](" + s.name + ")");
}

System interleaved(const System& s, IdentityPosition position) {
    return with_family(s, interleave_identity(s.family, position),
                       (position == IdentityPosition::First ? "[I,f](" : "[f,I](") + s.name + ")");
}

System tent(std::size_t cells) {
    return make_interval_grid({IntervalMap::Tent, 0}, cells);
}

std::vector<System> zoo_systems() {
    std::vector<System> zoo;
    zoo.push_back(make_full_shift(2, 3));
    zoo.push_back(make_full_shift(2, 4));
    zoo.push_back(shift_powers(3));
    zoo.push_back(make_odometer(3));
    zoo.push_back(interleaved(make_odometer(3), IdentityPosition::First));
    zoo.push_back(make_cyclic_rotation(4));
    zoo.push_back(make_cyclic_rotation(5));
    zoo.push_back(tent(16));
    zoo.push_back(interleaved(tent(16), IdentityPosition::Second));
    zoo.push_back(make_identity(3));
    zoo.push_back(make_table_system({1, 0}));
    zoo.push_back(make_table_system({1, 2, 0}));
    return zoo;
}

std::vector<System> first_of_corpus(std::size_t count) {
    auto corpus = random_corpus();
    corpus.erase(corpus.begin() + static_cast<std::ptrdiff_t>(std::min(count, corpus.size())), corpus.end());
    return corpus;
}

std::string join_counts(const EntropySeries& series) {
    std::string out;
    for (const auto& t : series.terms) {
        out += (out.empty() ? "" : " ") + std::to_string(t.count);
    }
    return out;
}

// --- suites ---------------------------------------------------------------

std::vector<SuiteRow> periodic_lift(const Budget& budget) {
    const std::string prop = "prop-periodic-lift";
    std::vector<System> systems;
    for (auto& s : random_corpus()) {
        if (check_dense_periodic(traced(s, budget)).status == Status::Holds) {
            systems.push_back(std::move(s));
        }
    }
    systems.push_back(make_cyclic_rotation(5));
    systems.push_back(interleaved(make_odometer(3), IdentityPosition::First));
    systems.push_back(make_identity(3));
    std::vector<SuiteRow> rows;
    for (const auto& s : systems) {
        const Verdict base = check_dense_periodic(traced(s, budget));
        std::uint64_t l = 1;
        if (base.status == Status::Holds) {
            for (const auto& e : base.witness["periodic"]) {
                l = std::lcm(l, e["n"].get<std::uint64_t>());
            }
        }
        const Verdict lift = check_dense_periodic(lifted(s, std::min<std::size_t>(3, s.space.size()), budget));
        bool divides = lift.status == Status::Holds;
        if (divides) {
            for (const auto& e : lift.witness["periodic"]) {
                divides = divides && l % e["n"].get<std::uint64_t>() == 0;
            }
        }
        const bool pass = base.status == Status::Holds && lift.status == Status::Holds && divides;
        rows.push_back({prop, s.name, verdict_text(base), verdict_text(lift),
                        "base Holds => lifted Holds, lifted periods divide lcm",
                        "lcm=" + std::to_string(l) + (divides ? ", all divide" : ", some do not divide"),
                        pass});
    }
    return rows;
}

std::vector<SuiteRow> example_one(const Budget& budget) {
    std::vector<SuiteRow> rows;
    for (std::size_t k = 2; k <= 6; ++k) {
        const System s = interleaved(make_odometer(k), IdentityPosition::First);
        const auto trace = CompositionTrace::build(s.family, budget);
        std::uint64_t singleton = 0;
        bool uniform = true;
        for (PointId x = 0; x < s.space.size(); ++x) {
            const auto p = minimal_period(trace, x);
            const std::uint64_t value = p ? *p : 0;
            uniform = uniform && (x == 0 || value == singleton);
            singleton = x == 0 ? value : singleton;
        }
        // Cylinders [w], |w| = 2: ids whose two leading digits spell w.
        std::string cyl;
        bool cylinders_ok = true;
        for (PointId w = 0; w < 4; ++w) {
            std::vector<PointId> ids;
            for (PointId x = 0; x < s.space.size(); ++x) {
                if ((x >> (k - 2)) == w) {
                    ids.push_back(x);
                }
            }
            const auto p = minimal_set_period(trace, HyperPoint(ids, s.space.size()));
            cyl += (cyl.empty() ? "" : ",") + (p ? std::to_string(*p) : std::string("none"));
            cylinders_ok = cylinders_ok && p && *p == 8;
        }
        const std::uint64_t expected = std::uint64_t{1} << (k + 1);
        rows.push_back({"example-1", "K=" + std::to_string(k),
                        "singleton period " + std::to_string(singleton),
                        "cylinder periods " + cyl,
                        "singleton period = 2^(K+1) = " + std::to_string(expected) +
                            ", |w|=2 cylinder period = 8",
                        uniform && singleton == expected && cylinders_ok ? "matches" : "differs",
                        uniform && singleton == expected && cylinders_ok});
    }
    return rows;
}

std::vector<System> pullback_systems() {
    auto systems = random_corpus();
    for (auto& s : zoo_systems()) {
        systems.push_back(std::move(s));
    }
    return systems;
}

std::vector<SuiteRow> transitivity_pullback(const Budget& budget) {
    std::vector<SuiteRow> rows;
    for (const auto& s : pullback_systems()) {
        const Verdict base = check_transitive(traced(s, budget));
        const Verdict lift = check_transitive(lifted(s, 2, budget));
        const bool violated = holds_exact(lift) && fails_exact(base);
        rows.push_back({"prop-transitivity-pullback", s.name, verdict_text(base), verdict_text(lift),
                        "lifted Holds => base Holds", violated ? "violated" : "consistent", !violated});
    }
    return rows;
}

std::vector<SuiteRow> total_transitivity_pullback(const Budget& budget) {
    std::vector<SuiteRow> rows;
    for (const auto& s : pullback_systems()) {
        const Verdict base = check_total_transitive(traced(s, budget), 3, {}, budget);
        const Verdict lift = check_total_transitive(lifted(s, 2, budget), 3, {}, budget);
        const bool violated = holds_exact(lift) && fails_exact(base);
        rows.push_back({"prop-total-transitivity-pullback", s.name, verdict_text(base),
                        verdict_text(lift), "lifted Holds => base Holds (n <= 3)",
                        violated ? "violated" : "consistent", !violated});
    }
    return rows;
}

std::vector<SuiteRow> mixing(const Budget& budget) {
    std::vector<System> systems;
    for (std::size_t length = 3; length <= 5; ++length) {
        systems.push_back(make_full_shift(2, length));
    }
    for (auto& s : first_of_corpus(20)) {
        systems.push_back(std::move(s));
    }
    std::vector<SuiteRow> rows;
    for (const auto& s : systems) {
        const Verdict base = check_topological_mixing(traced(s, budget));
        const Verdict lift = check_topological_mixing(lifted(s, 2, budget));
        const bool agree = same_verdict(base, lift) && base.exact;
        rows.push_back({"prop-mixing", s.name, verdict_text(base), verdict_text(lift),
                        "base = lifted", agree ? "agree" : "disagree", agree});
    }
    return rows;
}

std::vector<SuiteRow> strong_sensitivity(const Budget& budget) {
    std::vector<System> systems;
    for (std::size_t length = 3; length <= 5; ++length) {
        systems.push_back(make_full_shift(2, length));
    }
    systems.push_back(tent(32));
    systems.push_back(tent(64));
    systems.push_back(interleaved(tent(32), IdentityPosition::Second));
    std::vector<SuiteRow> rows;
    for (const auto& s : systems) {
        const Rational delta = half_min_distance(s.space);
        const Verdict base = check_cofinitely_sensitive(traced(s, budget), delta);
        const Verdict lift = check_cofinitely_sensitive(lifted(s, 2, budget), delta);
        const bool agree = same_verdict(base, lift) && base.exact;
        rows.push_back({"prop-strong-sensitivity", s.name + " delta=" + to_string(delta),
                        verdict_text(base), verdict_text(lift), "base = lifted",
                        agree ? "agree" : "disagree", agree});
    }
    return rows;
}

std::vector<SuiteRow> weak_mixing(const Budget& budget) {
    std::vector<SuiteRow> rows;
    const std::string prop = "prop-weak-mixing";
    {
        const System s = shift_powers(3);
        const auto base = traced(s, budget);
        const auto lift = lifted(s, 2, budget);
        std::string orders;
        bool all_hold = true;
        for (std::size_t k = 1; k <= 3; ++k) {
            const Verdict v = check_weak_mixing_order(base, k);
            orders += (k > 1 ? " " : "") + std::string("k=") + std::to_string(k) + ":" + verdict_text(v);
            all_hold = all_hold && holds_exact(v);
        }
        const Verdict lv = check_weak_mixing_order(lift, 2);
        const bool commutative = s.family.is_commutative();
        rows.push_back({prop, s.name + (commutative ? " (commutative)" : ""), orders,
                        "k=2:" + verdict_text(lv),
                        "base orders 1..3 Hold => lifted Holds, and conversely",
                        all_hold && holds_exact(lv) ? "both hold" : "mismatch",
                        commutative && all_hold && holds_exact(lv)});
    }
    {
        const System s = make_cyclic_rotation(4);
        const Verdict base = check_weak_mixing_order(traced(s, budget), 2);
        const Verdict lv = check_weak_mixing_order(lifted(s, 2, budget), 2);
        const bool pass = fails_exact(base) && fails_exact(lv);
        rows.push_back({prop, s.name, "k=2:" + verdict_text(base), "k=2:" + verdict_text(lv),
                        "base Fails and lifted Fails", pass ? "both fail" : "mismatch", pass});
    }
    // Independent route: transitivity of the k-fold product system.
    std::vector<System> cross = {shift_powers(3), make_cyclic_rotation(4), make_full_shift(2, 3)};
    for (auto& s : first_of_corpus(10)) {
        cross.push_back(std::move(s));
    }
    for (const auto& s : cross) {
        const Verdict masks = check_weak_mixing_order(traced(s, budget), 2);
        const Verdict product = check_transitive(traced(product_system(s, 2, budget), budget));
        const bool agree = same_verdict(masks, product);
        rows.push_back({prop, s.name + " product route", "hit sets:" + verdict_text(masks),
                        "product:" + verdict_text(product), "hit-set route = product route (k=2)",
                        agree ? "agree" : "disagree", agree});
    }
    return rows;
}

std::vector<SuiteRow> sensitivity_pullback(const Budget& budget) {
    std::vector<System> systems = {tent(16), tent(32), interleaved(tent(32), IdentityPosition::Second),
                                   make_full_shift(2, 4), make_cyclic_rotation(5)};
    for (auto& s : first_of_corpus(20)) {
        systems.push_back(std::move(s));
    }
    std::vector<SuiteRow> rows;
    for (const auto& s : systems) {
        const Rational delta = half_min_distance(s.space);
        const Verdict base = check_sensitive(traced(s, budget), delta);
        const Verdict lift = check_sensitive(lifted(s, 2, budget), delta);
        const bool violated = holds_exact(lift) && fails_exact(base);
        rows.push_back({"prop-sensitivity-pullback", s.name + " delta=" + to_string(delta),
                        verdict_text(base), verdict_text(lift), "lifted Holds => base Holds",
                        violated ? "violated" : "consistent", !violated});
    }
    return rows;
}

std::vector<SuiteRow> equicontinuity(const Budget& budget) {
    struct Case {
        System system;
        std::string expected;
    };
    std::vector<Case> cases;
    cases.push_back({make_identity(4), "Holds/Holds"});
    cases.push_back({make_cyclic_rotation(5), "Holds/Holds"});
    cases.push_back({make_cyclic_rotation(6, 2), "Holds/Holds"});
    cases.push_back({tent(16), "Fails/Fails"});
    cases.push_back({tent(32), "Fails/Fails"});
    cases.push_back({make_full_shift(2, 4), "base = lifted"});
    for (auto& s : first_of_corpus(20)) {
        cases.push_back({std::move(s), "base = lifted"});
    }
    std::vector<SuiteRow> rows;
    for (const auto& c : cases) {
        const Verdict base = check_equicontinuous(traced(c.system, budget), EquicontinuityMode::Uniform);
        const Verdict lift =
            check_equicontinuous(lifted(c.system, 2, budget), EquicontinuityMode::Uniform);
        const std::string observed = verdict_text(base) + "/" + verdict_text(lift);
        const bool pass = c.expected == "base = lifted" ? same_verdict(base, lift)
                                                        : observed == c.expected;
        rows.push_back({"prop-equicontinuity", c.system.name, verdict_text(base), verdict_text(lift),
                        c.expected, observed, pass});
    }
    return rows;
}

std::vector<SuiteRow> entropy(const Budget& budget) {
    const std::string prop = "prop-entropy";
    std::vector<SuiteRow> rows;
    for (std::size_t m : {std::size_t{1}, std::size_t{2}}) {
        const System s = make_full_shift(2, 8);
        const auto cmp = hyper_entropy_compare(s, m, cover_from_base(s.space), 6, budget);
        bool equal = true;
        for (std::size_t i = 0; i < cmp.base.terms.size(); ++i) {
            equal = equal && cmp.base.terms[i].count == cmp.lifted.terms[i].count;
        }
        const bool pass = m == 1 ? equal : cmp.dominance;
        rows.push_back({prop, s.name + " m=" + std::to_string(m) + " k_max=6",
                        "N=" + join_counts(cmp.base), "N=" + join_counts(cmp.lifted),
                        m == 1 ? "lifted = base (singleton conjugacy)" : "lifted N_k >= base N_k",
                        m == 1 ? (equal ? "equal" : "differ") : (cmp.dominance ? "dominates" : "below"),
                        pass});
    }
    {
        const System s = make_identity(4);
        const auto cmp = hyper_entropy_compare(s, 2, cover_from_base(s.space), 6, budget);
        bool flat = true;
        for (const auto& t : cmp.base.terms) {
            flat = flat && t.count == cmp.base.terms.front().count;
        }
        rows.push_back({prop, s.name + " m=2 k_max=6", "N=" + join_counts(cmp.base),
                        "N=" + join_counts(cmp.lifted), "N_k = N_1 (H_k/k = H_1/k), lifted >= base",
                        flat && cmp.dominance ? "flat, dominates" : "mismatch", flat && cmp.dominance});
    }
    {
        const System s = make_full_shift(2, 12);
        const auto series = entropy_series(s.family, cover_from_base(s.space), 10, budget);
        bool exact = series.terms.size() == 10;
        for (const auto& t : series.terms) {
            exact = exact && t.count == (std::uint64_t{1} << t.k);
        }
        rows.push_back({prop, s.name + " k_max=10", "N=" + join_counts(series), "n/a",
                        "N_k = 2^k (H_k/k = log 2)", exact ? "matches" : "differs", exact});
    }
    {
        const System s = interleaved(make_full_shift(2, 12), IdentityPosition::Second);
        const auto series = entropy_series(s.family, cover_from_base(s.space), 10, budget);
        bool exact = series.terms.size() == 10;
        for (const auto& t : series.terms) {
            exact = exact && t.count == (std::uint64_t{1} << (t.k / 2 + 1));
        }
        rows.push_back({prop, s.name + " k_max=10", "N=" + join_counts(series), "n/a",
                        "N_k = 2^(floor(k/2)+1)", exact ? "matches" : "differs", exact});
    }
    {
        const System s = make_full_shift(2, 10);
        const auto series = separated_entropy(s, Rational(3, 4), 10, budget);
        bool exact = series.terms.size() == 10;
        for (const auto& t : series.terms) {
            exact = exact && t.count == (std::uint64_t{1} << t.k);
        }
        rows.push_back({prop, s.name + " separated eps=3/4 n_max=10", "S=" + join_counts(series),
                        "n/a", "S_n = 2^n", exact ? "matches" : "differs", exact});
    }
    return rows;
}

std::vector<SuiteRow> expansive_pullback(const Budget& budget) {
    std::vector<System> systems = {make_full_shift(2, 4), make_cyclic_rotation(5), make_identity(3),
                                   tent(16), make_table_system({1, 2, 0})};
    for (auto& s : first_of_corpus(20)) {
        systems.push_back(std::move(s));
    }
    std::vector<SuiteRow> rows;
    for (const auto& s : systems) {
        const Rational delta = half_min_distance(s.space);
        const Verdict base = check_expansive(traced(s, budget), delta);
        const Verdict lift = check_expansive(lifted(s, 2, budget), delta);
        const bool violated = holds_exact(lift) && fails_exact(base);
        rows.push_back({"prop-expansive-pullback", s.name + " delta=" + to_string(delta),
                        verdict_text(base), verdict_text(lift), "lifted Holds => base Holds",
                        violated ? "violated" : "consistent", !violated});
    }
    return rows;
}

std::vector<SuiteRow> li_yorke(const Budget& budget) {
    std::vector<System> systems = {make_full_shift(2, 5), make_cyclic_rotation(5), tent(16),
                                   make_identity(3)};
    for (auto& s : first_of_corpus(20)) {
        systems.push_back(std::move(s));
    }
    std::vector<SuiteRow> rows;
    for (const auto& s : systems) {
        const Rational delta = half_min_distance(s.space);
        const auto base = traced(s, budget);
        const auto lift = lifted(s, 2, budget);
        const auto br = find_scrambled_pairs(base, delta, {}, 8, budget);
        const auto lr = find_scrambled_pairs(lift, delta, {}, 8, budget);
        // Singleton ids coincide with base ids in the hyperspace.
        bool embedded = lr.largest_scrambled_set.size() >= br.largest_scrambled_set.size();
        for (const auto& p : br.pairs) {
            bool found = false;
            for (const auto& q : lr.pairs) {
                found = found || (q.x == p.x && q.y == p.y);
            }
            embedded = embedded && found;
        }
        rows.push_back({"prop-li-yorke", s.name + " delta=" + to_string(delta),
                        "pairs=" + std::to_string(br.pairs.size()) +
                            " largest=" + std::to_string(br.largest_scrambled_set.size()),
                        "pairs=" + std::to_string(lr.pairs.size()) +
                            " largest=" + std::to_string(lr.largest_scrambled_set.size()),
                        "base scrambled sets embed as singletons",
                        embedded ? "embedded" : "missing", embedded && br.exact && lr.exact});
    }
    return rows;
}

std::vector<SuiteRow> metric_laws(const Budget& budget) {
    const std::string prop = "metric-laws";
    std::vector<SuiteRow> rows;
    {
        const System s = make_random_finite(6, 1, 2024);
        const auto hyper = HyperSpaceModel::build(s.space, 3, budget);
        const auto& pts = hyper.points();
        const std::size_t n = pts.size();
        std::vector<Rational> d(n * n);
        for (std::size_t i = 0; i < n; ++i) {
            for (std::size_t j = 0; j < n; ++j) {
                d[i * n + j] = hausdorff_distance(s.space, pts[i], pts[j]);
            }
        }
        std::uint64_t violations = 0;
        for (std::size_t i = 0; i < n; ++i) {
            for (std::size_t j = 0; j < n; ++j) {
                const bool zero = d[i * n + j] == Rational(0);
                violations += (zero != (i == j)) + (d[i * n + j] != d[j * n + i]);
                for (std::size_t k = 0; k < n; ++k) {
                    violations += d[i * n + k] > d[i * n + j] + d[j * n + k];
                }
            }
        }
        rows.push_back({prop, "d_H axioms on " + std::to_string(n) + " hyperpoints (|X|=6, m=3)", "",
                        "", "no violations", std::to_string(violations) + " violations",
                        violations == 0});
    }
    {
        std::mt19937_64 rng(77);
        auto draw = [&](std::uint64_t bound) { return rng() % bound; };
        std::uint64_t violations = 0;
        for (int trial = 0; trial < 200; ++trial) {
            const std::size_t n = 3 + draw(6);
            OpenCover coarse;
            PointSet covered(n);
            const std::size_t sets = 1 + draw(5);
            for (std::size_t i = 0; i < sets; ++i) {
                PointSet set(n);
                for (std::size_t x = 0; x < n; ++x) {
                    if (draw(2)) {
                        set.set(x);
                    }
                }
                set.set(draw(n));
                covered |= set;
                coarse.sets.push_back(std::move(set));
            }
            for (std::size_t x = 0; x < n; ++x) {
                if (!covered.test(x)) {
                    coarse.sets[draw(coarse.sets.size())].set(x);
                }
            }
            // Refine: split each coarse set into random pieces.
            OpenCover fine;
            for (const auto& set : coarse.sets) {
                const std::size_t pieces = 1 + draw(3);
                std::vector<PointSet> parts(pieces, PointSet(n));
                for (PointId x : members(set)) {
                    parts[draw(pieces)].set(x);
                }
                for (auto& part : parts) {
                    if (part.any()) {
                        fine.sets.push_back(std::move(part));
                    }
                }
            }
            const bool refined = refines(fine, coarse);
            const auto h_coarse = min_subcover_size(coarse, n, budget.max_setcover_nodes);
            const auto h_fine = min_subcover_size(fine, n, budget.max_setcover_nodes);
            const auto joined = join_covers(coarse, fine);
            violations += !refined || h_coarse > h_fine ||
                          !refines(joined, coarse) || !refines(joined, fine) ||
                          min_subcover_size(joined, n, budget.max_setcover_nodes) < h_fine;
        }
        rows.push_back({prop, "refinement monotonicity, 200 seeded cover pairs", "", "",
                        "alpha < beta => H(alpha) <= H(beta); join refines both",
                        std::to_string(violations) + " violations", violations == 0});
    }
    std::vector<System> spaces = zoo_systems();
    spaces.push_back(tent(32));
    spaces.push_back(make_full_shift(2, 5));
    spaces.push_back(make_random_finite(7, 1, 5));
    for (const auto& s : spaces) {
        std::uint64_t violations = 0;
        const std::size_t n = s.space.size();
        for (PointId x = 0; x < n; ++x) {
            for (PointId y = 0; y < n; ++y) {
                violations += hausdorff_distance(s.space, HyperPoint({x}, n), HyperPoint({y}, n)) !=
                              s.space.distance(x, y);
            }
        }
        rows.push_back({prop, "singleton isometry " + s.name, "", "", "d_H({x},{y}) = d(x,y)",
                        std::to_string(violations) + " violations", violations == 0});
    }
    return rows;
}

using SuiteFn = std::function<std::vector<SuiteRow>(const Budget&)>;

const std::vector<std::pair<std::string, SuiteFn>>& registry() {
    static const std::vector<std::pair<std::string, SuiteFn>> suites = {
        {"prop-periodic-lift", periodic_lift},
        {"example-1", example_one},
        {"prop-transitivity-pullback", transitivity_pullback},
        {"prop-total-transitivity-pullback", total_transitivity_pullback},
        {"prop-weak-mixing", weak_mixing},
        {"prop-mixing", mixing},
        {"prop-strong-sensitivity", strong_sensitivity},
        {"prop-sensitivity-pullback", sensitivity_pullback},
        {"prop-equicontinuity", equicontinuity},
        {"prop-entropy", entropy},
        {"prop-expansive-pullback", expansive_pullback},
        {"prop-li-yorke", li_yorke},
        {"metric-laws", metric_laws},
    };
    return suites;
}

}  // namespace

const std::vector<std::string>& suite_ids() {
    static const std::vector<std::string> ids = [] {
        std::vector<std::string> out;
        for (const auto& [id, fn] : registry()) {
            out.push_back(id);
        }
        return out;
    }();
    return ids;
}

std::vector<SuiteRow> run_suite(const std::string& id, const Budget& budget) {
    if (id == "all") {
        std::vector<SuiteRow> rows;
        for (const auto& [name, fn] : registry()) {
            auto part = fn(budget);
            rows.insert(rows.end(), part.begin(), part.end());
        }
        const auto passed = std::count_if(rows.begin(), rows.end(), [](const SuiteRow& r) { return r.pass; });
        const bool all = static_cast<std::size_t>(passed) == rows.size();
        rows.push_back({"all", "total", "", "", "every row passes",
                        std::to_string(passed) + "/" + std::to_string(rows.size()) + " passed", all});
        return rows;
    }
    for (const auto& [name, fn] : registry()) {
        if (name == id) {
            return fn(budget);
        }
    }
    throw InputError("unknown suite '" + id + "'");
}

std::string suite_csv(const std::vector<SuiteRow>& rows) {
    std::ostringstream out;
    out << "proposition,instance,base_verdict,lifted_verdict,relation_expected,relation_observed,pass\n";
    for (const auto& r : rows) {
        out << csv_escape(r.proposition) << ',' << csv_escape(r.instance) << ','
            << csv_escape(r.base_verdict) << ',' << csv_escape(r.lifted_verdict) << ','
            << csv_escape(r.relation_expected) << ',' << csv_escape(r.relation_observed) << ','
            << (r.pass ? "true" : "false") << '\n';
    }
    return out.str();
}

}  // namespace hyperdyn
