#include "hyperdyn/entropy.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <unordered_set>

#include "hyperdyn/clique.hpp"

namespace hyperdyn {

void validate_cover(const OpenCover& cover, std::size_t universe) {
    if (cover.sets.empty()) {
        throw InputError("cover has no sets");
    }
    PointSet seen(universe);
    for (const auto& set : cover.sets) {
        if (set.size() != universe) {
            throw InputError("cover set lives in a space of " + std::to_string(set.size()) +
                             " points, expected " + std::to_string(universe));
        }
        if (set.none()) {
            throw InputError("cover contains an empty set");
        }
        seen |= set;
    }
    if (!seen.all()) {
        throw InputError("sets do not cover point " + std::to_string((~seen).find_first()));
    }
}

OpenCover canonical_cover(OpenCover cover) {
    std::unordered_set<PointSet, PointSetHash> seen;
    std::vector<std::pair<std::vector<PointId>, PointSet>> keyed;
    for (auto& set : cover.sets) {
        if (set.any() && seen.insert(set).second) {
            keyed.emplace_back(members(set), std::move(set));
        }
    }
    std::sort(keyed.begin(), keyed.end(), [](const auto& a, const auto& b) {
        if (a.first.size() != b.first.size()) {
            return a.first.size() > b.first.size();
        }
        return a.first < b.first;
    });
    OpenCover out;
    out.sets.reserve(keyed.size());
    for (auto& [key, set] : keyed) {
        out.sets.push_back(std::move(set));
    }
    return out;
}

OpenCover cover_from_base(const SpaceModel& space) {
    OpenCover cover;
    for (const auto& open : space.open_base()) {
        cover.sets.push_back(open.members);
    }
    return cover;
}

namespace {

bool is_partition(const OpenCover& cover, std::size_t universe) {
    std::size_t total = 0;
    for (const auto& set : cover.sets) {
        total += set.count();
    }
    return total == universe;
}

/// Removes sets contained in another set. Neither the minimal subcover size
/// nor any later join's minimal subcover size changes.
OpenCover prune_dominated(OpenCover cover, std::size_t universe) {
    cover = canonical_cover(std::move(cover));
    if (cover.sets.empty() || is_partition(cover, universe)) {
        return cover;
    }
    // Sorted by size descending, so a dominating set appears earlier.
    OpenCover out;
    for (auto& set : cover.sets) {
        const bool dominated = std::any_of(out.sets.begin(), out.sets.end(),
                                           [&](const PointSet& kept) { return set.is_subset_of(kept); });
        if (!dominated) {
            out.sets.push_back(std::move(set));
        }
    }
    return out;
}

struct SetCoverSearch {
    const std::vector<PointSet>& sets;
    std::vector<std::vector<std::size_t>> covering;
    std::uint64_t budget;
    std::uint64_t nodes = 0;
    std::size_t best;

    void search(const PointSet& uncovered, std::size_t used) {
        if (++nodes > budget) {
            throw ResourceError("set cover search exceeded " + std::to_string(budget) + " nodes");
        }
        if (uncovered.none()) {
            best = std::min(best, used);
            return;
        }
        const std::size_t remaining = uncovered.count();
        std::size_t widest = 0;
        for (const auto& set : sets) {
            widest = std::max(widest, (set & uncovered).count());
        }
        if (used + (remaining + widest - 1) / widest >= best) {
            return;
        }
        // Branch on the uncovered point with the fewest covering sets.
        std::size_t pivot = uncovered.find_first();
        for (auto x = pivot; x != PointSet::npos; x = uncovered.find_next(x)) {
            if (covering[x].size() < covering[pivot].size()) {
                pivot = x;
            }
        }
        std::vector<std::pair<std::size_t, std::size_t>> options;
        for (std::size_t s : covering[pivot]) {
            options.emplace_back((sets[s] & uncovered).count(), s);
        }
        std::sort(options.begin(), options.end(),
                  [](const auto& a, const auto& b) { return a.first > b.first || (a.first == b.first && a.second < b.second); });
        for (const auto& [gain, s] : options) {
            search(uncovered - sets[s], used + 1);
        }
    }
};

std::size_t greedy_cover(const std::vector<PointSet>& sets, std::size_t universe) {
    PointSet uncovered(universe);
    uncovered.set();
    std::size_t used = 0;
    while (uncovered.any()) {
        std::size_t best = 0;
        std::size_t gain = 0;
        for (std::size_t s = 0; s < sets.size(); ++s) {
            const std::size_t g = (sets[s] & uncovered).count();
            if (g > gain) {
                gain = g;
                best = s;
            }
        }
        uncovered -= sets[best];
        ++used;
    }
    return used;
}

}  // namespace

std::uint64_t min_subcover_size(const OpenCover& cover, std::size_t universe,
                                std::uint64_t node_budget) {
    validate_cover(cover, universe);
    const OpenCover pruned = prune_dominated(cover, universe);
    if (is_partition(pruned, universe)) {
        return pruned.sets.size();
    }
    const auto& sets = pruned.sets;
    SetCoverSearch search{sets, std::vector<std::vector<std::size_t>>(universe), node_budget, 0,
                          greedy_cover(sets, universe)};
    for (std::size_t s = 0; s < sets.size(); ++s) {
        for (auto x = sets[s].find_first(); x != PointSet::npos; x = sets[s].find_next(x)) {
            search.covering[x].push_back(s);
        }
    }
    PointSet all(universe);
    all.set();
    search.search(all, 0);
    return search.best;
}

OpenCover join_covers(const OpenCover& a, const OpenCover& b) {
    OpenCover out;
    out.sets.reserve(a.sets.size() * b.sets.size());
    for (const auto& u : a.sets) {
        for (const auto& v : b.sets) {
            PointSet both = u & v;
            if (both.any()) {
                out.sets.push_back(std::move(both));
            }
        }
    }
    return canonical_cover(std::move(out));
}

bool refines(const OpenCover& fine, const OpenCover& coarse) {
    return std::all_of(fine.sets.begin(), fine.sets.end(), [&](const PointSet& f) {
        return std::any_of(coarse.sets.begin(), coarse.sets.end(),
                           [&](const PointSet& c) { return f.is_subset_of(c); });
    });
}

OpenCover preimage_cover(const Table& omega, const OpenCover& cover) {
    OpenCover out;
    for (const auto& set : cover.sets) {
        PointSet pre(omega.size());
        for (std::size_t x = 0; x < omega.size(); ++x) {
            if (set.test(omega[x])) {
                pre.set(x);
            }
        }
        if (pre.any()) {
            out.sets.push_back(std::move(pre));
        }
    }
    return out;
}

OpenCover preimage_cover(const MapFamily& family, std::uint64_t k, const OpenCover& cover) {
    Table omega = identity_table(family.points());
    for (std::uint64_t j = 1; j <= k; ++j) {
        omega = compose(family.step(j), omega);
    }
    return preimage_cover(omega, cover);
}

void summarize(EntropySeries& series, std::size_t k_max) {
    series.window = (k_max + 2) / 3;
    series.exact_terms = series.terms.size();
    series.limsup_estimate = 0.0;
    const std::size_t n = series.terms.size();
    const std::size_t from = n > series.window ? n - series.window : 0;
    for (std::size_t i = from; i < n; ++i) {
        series.limsup_estimate = i == from ? series.terms[i].rate
                                           : std::max(series.limsup_estimate, series.terms[i].rate);
    }
}

EntropySeries entropy_series(const MapFamily& family, const OpenCover& cover, std::size_t k_max,
                             const Budget& budget) {
    if (k_max == 0) {
        throw InputError("entropy series needs k_max >= 1");
    }
    const std::size_t n = family.points();
    validate_cover(cover, n);
    EntropySeries series;
    auto fail = [&](const std::string& what) {
        summarize(series, k_max);
        throw EntropyBudgetError(what + " at k = " + std::to_string(series.terms.size() + 1),
                                 series);
    };
    OpenCover joined = prune_dominated(cover, n);
    Table omega = identity_table(n);
    for (std::uint64_t k = 1; k <= k_max; ++k) {
        std::size_t dropped = 0;
        if (k > 1) {
            omega = compose(family.step(k - 1), omega);
            const OpenCover pre = preimage_cover(omega, cover);
            dropped = cover.sets.size() - pre.sets.size();
            if (joined.sets.size() * pre.sets.size() > budget.max_join_sets) {
                fail("join would exceed " + std::to_string(budget.max_join_sets) + " sets");
            }
            joined = prune_dominated(join_covers(joined, pre), n);
        }
        std::uint64_t count = 0;
        try {
            count = min_subcover_size(joined, n, budget.max_setcover_nodes);
        } catch (const ResourceError& e) {
            fail(e.what());
        }
        const double h = std::log(static_cast<double>(count));
        series.terms.push_back({k, count, h, h / static_cast<double>(k), dropped});
    }
    summarize(series, k_max);
    return series;
}

EntropySeries separated_entropy(const System& system, const Rational& epsilon, std::size_t n_max,
                                const Budget& budget) {
    if (epsilon <= 0) {
        throw InputError("separation epsilon must be positive, got " + to_string(epsilon));
    }
    if (n_max == 0) {
        throw InputError("separated entropy needs n_max >= 1");
    }
    const auto& space = system.space;
    const std::size_t n = space.size();
    std::vector<PointSet> adjacency(n, PointSet(n));
    Table omega = identity_table(n);
    EntropySeries series;
    for (std::uint64_t k = 1; k <= n_max; ++k) {
        if (k > 1) {
            omega = compose(system.family.step(k - 1), omega);
        }
        for (PointId x = 0; x < n; ++x) {
            for (PointId y = x + 1; y < n; ++y) {
                if (!adjacency[x].test(y) && space.distance(omega[x], omega[y]) > epsilon) {
                    adjacency[x].set(y);
                    adjacency[y].set(x);
                }
            }
        }
        std::uint64_t count = 0;
        try {
            count = maximum_clique(adjacency, budget.max_clique_nodes).size();
        } catch (const ResourceError& e) {
            summarize(series, n_max);
            throw EntropyBudgetError(e.what(), series);
        }
        const double h = std::log(static_cast<double>(count));
        series.terms.push_back({k, count, h, h / static_cast<double>(k), 0});
    }
    summarize(series, n_max);
    return series;
}

OpenCover lift_cover(const HyperSpaceModel& hyper, const OpenCover& cover) {
    const std::size_t c = cover.sets.size();
    const std::size_t m = std::min(hyper.max_cardinality(), c);
    OpenCover out;
    std::vector<std::size_t> pick;
    // Subsets of cover indices of size 1..m in lexicographic order.
    auto visit = [&](auto&& self, std::size_t from) -> void {
        if (!pick.empty()) {
            VietorisBasic basic;
            for (std::size_t i : pick) {
                basic.hit_sets.push_back(cover.sets[i]);
            }
            PointSet hit = hyper.members_of(basic);
            if (hit.any()) {
                out.sets.push_back(std::move(hit));
            }
        }
        if (pick.size() == m) {
            return;
        }
        for (std::size_t i = from; i < c; ++i) {
            pick.push_back(i);
            self(self, i + 1);
            pick.pop_back();
        }
    };
    visit(visit, 0);
    return canonical_cover(std::move(out));
}

EntropyComparison hyper_entropy_compare(const System& system, std::size_t max_cardinality,
                                        const OpenCover& cover, std::size_t k_max,
                                        const Budget& budget) {
    EntropyComparison result;
    result.base = entropy_series(system.family, cover, k_max, budget);
    const auto hyper = HyperSpaceModel::build(system.space, max_cardinality, budget);
    const System lifted = as_hyper_system(system, max_cardinality, budget);
    result.lifted = entropy_series(lifted.family, lift_cover(hyper, cover), k_max, budget);
    result.dominance = true;
    for (std::size_t i = 0; i < result.base.terms.size(); ++i) {
        result.dominance = result.dominance && result.lifted.terms[i].count >= result.base.terms[i].count;
    }
    return result;
}

}  // namespace hyperdyn
