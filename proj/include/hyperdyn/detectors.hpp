#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "hyperdyn/hyperspace.hpp"
#include "hyperdyn/trace.hpp"
#include "hyperdyn/verdict.hpp"

namespace hyperdyn {

// Quantifiers over "open sets" range over the declared open base: every
// property below is monotone under shrinking U (and V), so basic sets are
// enough. Times n range over n >= 1 and fold onto the trace's recorded
// states, which makes the exact searches finite.

/// Smallest n >= 1 with ω_{nk}(x) = x for every k >= 1, if any.
std::optional<std::uint64_t> minimal_period(const CompositionTrace& trace, PointId x);
/// Same for a finite set under the induced dynamics, without building the
/// hyperspace.
std::optional<std::uint64_t> minimal_set_period(const CompositionTrace& trace, const HyperPoint& set);

Verdict check_dense_periodic(const TracedSystem& system, const QueryOptions& options = {});

Verdict check_transitive(const TracedSystem& system, const QueryOptions& options = {});

/// n-transitivity for every n <= max_n, each on the block family 𝔽_n.
Verdict check_total_transitive(const TracedSystem& system, std::size_t max_n,
                               const QueryOptions& options = {}, const Budget& budget = {});

/// One common time for k pairs of basic sets. Decided from the set of hitting
/// times of each pair; the product-system route (transitivity of the k-fold
/// product) is an equivalent, independent check.
Verdict check_weak_mixing_order(const TracedSystem& system, std::size_t k,
                                const QueryOptions& options = {});

Verdict check_topological_mixing(const TracedSystem& system, const QueryOptions& options = {});

/// Throws InputError for delta <= 0.
Verdict check_sensitive(const TracedSystem& system, const Rational& delta,
                        const QueryOptions& options = {});
Verdict check_cofinitely_sensitive(const TracedSystem& system, const Rational& delta,
                                   const QueryOptions& options = {});

enum class EquicontinuityMode { Pointwise, Uniform };

/// ε and δ range over the positive values the metric attains, and the
/// implication is read as d(x,y) <= δ ⇒ d(ω_n x, ω_n y) <= ε for all n >= 1.
/// (Equivalently "<" against the midpoints between consecutive values.)
/// δ never drops below the smallest positive distance, so the check measures
/// growth of nearby orbits at the resolution of the space rather than holding
/// vacuously.
Verdict check_equicontinuous(const TracedSystem& system, EquicontinuityMode mode);

struct ScrambledPair {
    PointId x = 0;
    PointId y = 0;
    Rational limsup;
    Rational liminf;
};

struct ScrambledReport {
    /// Pairs x < y with limsup > δ and liminf = 0.
    std::vector<ScrambledPair> pairs;
    /// Li-Yorke sensitivity at δ: every point has, in each basic
    /// neighbourhood, a partner forming a δ-scrambled pair.
    Verdict li_yorke_sensitive;
    /// Largest δ-scrambled set found (maximum clique of `pairs`).
    std::vector<PointId> largest_scrambled_set;
    bool exact = false;
};

/// limsup/liminf of n ↦ d(ω_n x, ω_n y) are the max/min over the trace's
/// cycle when the horizon covers it; otherwise they are estimated over the
/// last `window` examined indices and the report is not exact.
ScrambledReport find_scrambled_pairs(const TracedSystem& system, const Rational& delta,
                                     const QueryOptions& options = {}, std::size_t window = 8,
                                     const Budget& budget = {});

Verdict check_expansive(const TracedSystem& system, const Rational& delta,
                        const QueryOptions& options = {});

Verdict check_chaotic_dependence(const TracedSystem& system, const QueryOptions& options = {});

/// Re-derives a verdict from its witness alone. Supported for transitive,
/// dense_periodic, sensitive and expansive; entries beyond a truncated
/// witness are not checked.
bool replay(const TracedSystem& system, const Verdict& verdict);

}  // namespace hyperdyn
