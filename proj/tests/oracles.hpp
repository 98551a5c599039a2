#pragma once

// Brute-force reference computations. None of these use CompositionTrace,
// the detectors or the entropy solver; they work from the raw map lists.

#include <algorithm>
#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <vector>

#include "hyperdyn/family.hpp"
#include "hyperdyn/hyperspace.hpp"

namespace oracle {

using hyperdyn::PointId;
using hyperdyn::Rational;
using hyperdyn::Table;

// f_n(... f_1(x)) applied one map at a time.
inline PointId fold(const std::vector<Table>& maps, std::uint64_t n, PointId x) {
    for (std::uint64_t i = 0; i < n; ++i) {
        x = maps[i % maps.size()][x];
    }
    return x;
}

inline std::vector<PointId> orbit(const std::vector<Table>& maps, PointId x, std::uint64_t steps) {
    std::vector<PointId> out{x};
    for (std::uint64_t i = 0; i < steps; ++i) {
        x = maps[i % maps.size()][x];
        out.push_back(x);
    }
    return out;
}

// Smallest n <= max_n such that x_{nk} = x for every nk <= horizon, scanning
// one long orbit. `horizon` must be large enough to see the eventual cycle
// several times over.
inline std::optional<std::uint64_t> scanned_period(const std::vector<Table>& maps, PointId x,
                                                   std::uint64_t max_n, std::uint64_t horizon) {
    const auto xs = orbit(maps, x, horizon);
    for (std::uint64_t n = 1; n <= max_n; ++n) {
        bool ok = true;
        for (std::uint64_t m = n; m <= horizon && ok; m += n) {
            ok = xs[m] == x;
        }
        if (ok) {
            return n;
        }
    }
    return std::nullopt;
}

// Same for a set under the induced dynamics.
inline std::optional<std::uint64_t> scanned_set_period(const std::vector<Table>& maps,
                                                       const std::vector<PointId>& set,
                                                       std::uint64_t max_n, std::uint64_t horizon) {
    std::vector<std::set<PointId>> states{std::set<PointId>(set.begin(), set.end())};
    for (std::uint64_t i = 0; i < horizon; ++i) {
        std::set<PointId> next;
        for (PointId x : states.back()) {
            next.insert(maps[i % maps.size()][x]);
        }
        states.push_back(std::move(next));
    }
    for (std::uint64_t n = 1; n <= max_n; ++n) {
        bool ok = true;
        for (std::uint64_t m = n; m <= horizon && ok; m += n) {
            ok = states[m] == states[0];
        }
        if (ok) {
            return n;
        }
    }
    return std::nullopt;
}

// d_H as the least ε among {0} ∪ realized distances for which each set lies
// in the closed ε-neighbourhood of the other.
inline Rational hausdorff(const hyperdyn::MetricOracle& d, const std::vector<PointId>& a,
                          const std::vector<PointId>& b) {
    std::vector<Rational> candidates{Rational(0)};
    for (PointId x : a) {
        for (PointId y : b) {
            candidates.push_back(d.distance(x, y));
        }
    }
    std::sort(candidates.begin(), candidates.end());
    auto inside = [&](const std::vector<PointId>& from, const std::vector<PointId>& to,
                      const Rational& eps) {
        return std::all_of(from.begin(), from.end(), [&](PointId x) {
            return std::any_of(to.begin(), to.end(), [&](PointId y) { return !(eps < d.distance(x, y)); });
        });
    };
    for (const auto& eps : candidates) {
        if (inside(a, b, eps) && inside(b, a, eps)) {
            return eps;
        }
    }
    return candidates.back();
}

// Minimum subcover by trying every subfamily in order of size.
inline std::size_t exhaustive_cover(const std::vector<std::vector<PointId>>& sets, std::size_t universe) {
    const std::size_t m = sets.size();
    std::size_t best = m + 1;
    for (std::uint64_t mask = 1; mask < (std::uint64_t{1} << m); ++mask) {
        const auto count = static_cast<std::size_t>(__builtin_popcountll(mask));
        if (count >= best) {
            continue;
        }
        std::vector<bool> hit(universe, false);
        for (std::size_t i = 0; i < m; ++i) {
            if (mask >> i & 1) {
                for (PointId x : sets[i]) {
                    hit[x] = true;
                }
            }
        }
        if (std::all_of(hit.begin(), hit.end(), [](bool b) { return b; })) {
            best = count;
        }
    }
    return best;
}

// For a partition `cell`, N_k of the joined cover is the number of distinct
// itineraries (cell(x), cell(ω_1 x), ..., cell(ω_{k-1} x)).
inline std::size_t itinerary_count(const std::vector<Table>& maps, const std::vector<std::size_t>& cell,
                                   std::uint64_t k) {
    std::set<std::vector<std::size_t>> seen;
    for (PointId x = 0; x < cell.size(); ++x) {
        std::vector<std::size_t> word;
        for (std::uint64_t j = 0; j < k; ++j) {
            word.push_back(cell[fold(maps, j, x)]);
        }
        seen.insert(word);
    }
    return seen.size();
}

// Largest set pairwise separated by more than ε in the Bowen metric d_n,
// by exhaustive subset search (small spaces only).
inline std::size_t exhaustive_separated(const std::vector<Table>& maps, const hyperdyn::MetricOracle& d,
                                        const Rational& eps, std::uint64_t n) {
    const std::size_t size = d.size();
    auto sep = [&](PointId x, PointId y) {
        for (std::uint64_t j = 0; j < n; ++j) {
            if (eps < d.distance(fold(maps, j, x), fold(maps, j, y))) {
                return true;
            }
        }
        return false;
    };
    std::vector<std::vector<bool>> adj(size, std::vector<bool>(size));
    for (PointId x = 0; x < size; ++x) {
        for (PointId y = x + 1; y < size; ++y) {
            adj[x][y] = adj[y][x] = sep(x, y);
        }
    }
    std::size_t best = 0;
    for (std::uint64_t mask = 1; mask < (std::uint64_t{1} << size); ++mask) {
        const auto count = static_cast<std::size_t>(__builtin_popcountll(mask));
        if (count <= best) {
            continue;
        }
        bool ok = true;
        for (PointId x = 0; x < size && ok; ++x) {
            for (PointId y = x + 1; y < size && ok; ++y) {
                if ((mask >> x & 1) && (mask >> y & 1)) {
                    ok = adj[x][y];
                }
            }
        }
        if (ok) {
            best = count;
        }
    }
    return best;
}

// Transitivity by simulating images of every basic set for `steps` steps.
inline bool simulated_transitive(const std::vector<Table>& maps,
                                 const std::vector<std::vector<PointId>>& opens, std::uint64_t steps) {
    for (const auto& u : opens) {
        std::vector<std::set<PointId>> images;
        std::set<PointId> cur(u.begin(), u.end());
        for (std::uint64_t i = 0; i < steps; ++i) {
            std::set<PointId> next;
            for (PointId x : cur) {
                next.insert(maps[i % maps.size()][x]);
            }
            cur = next;
            images.push_back(cur);
        }
        for (const auto& v : opens) {
            const bool hit = std::any_of(images.begin(), images.end(), [&](const std::set<PointId>& img) {
                return std::any_of(v.begin(), v.end(), [&](PointId y) { return img.count(y) > 0; });
            });
            if (!hit) {
                return false;
            }
        }
    }
    return true;
}

inline std::vector<std::vector<PointId>> open_lists(const hyperdyn::SpaceModel& space) {
    std::vector<std::vector<PointId>> out;
    for (const auto& open : space.open_base()) {
        out.push_back(hyperdyn::members(open.members));
    }
    return out;
}

}  // namespace oracle
