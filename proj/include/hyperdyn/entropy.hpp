#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "hyperdyn/hyperspace.hpp"
#include "hyperdyn/trace.hpp"

namespace hyperdyn {

struct OpenCover {
    std::vector<PointSet> sets;
};

/// Throws InputError unless every set is a nonempty subset of a
/// `universe`-point space and the sets cover it.
void validate_cover(const OpenCover& cover, std::size_t universe);

/// Drops empty and duplicate sets and sorts the rest (by size descending,
/// then by lowest member), so equal covers compare equal.
OpenCover canonical_cover(OpenCover cover);

/// The declared open base of a space, as a cover.
OpenCover cover_from_base(const SpaceModel& space);

/// N_U: fewest cover sets whose union is everything. Exact branch and bound;
/// throws ResourceError past `node_budget` search nodes.
std::uint64_t min_subcover_size(const OpenCover& cover, std::size_t universe,
                                std::uint64_t node_budget = Budget{}.max_setcover_nodes);

/// {U ∩ V}, empties and duplicates removed.
OpenCover join_covers(const OpenCover& a, const OpenCover& b);

/// α ≺ β: every set of `fine` lies inside some set of `coarse`.
bool refines(const OpenCover& fine, const OpenCover& coarse);

/// {ω^{-1}(U)} for the table ω, empty preimages dropped.
OpenCover preimage_cover(const Table& omega, const OpenCover& cover);
/// Same with ω = ω_k of the family (ω_0 is the identity).
OpenCover preimage_cover(const MapFamily& family, std::uint64_t k, const OpenCover& cover);

struct EntropyTerm {
    std::uint64_t k = 0;
    /// N_k, or S_n for the separated-set estimator.
    std::uint64_t count = 0;
    /// log count (natural log).
    double h = 0.0;
    double rate = 0.0;
    /// Cover sets whose preimage was empty at the newest join step.
    std::size_t dropped_preimages = 0;
};

struct EntropySeries {
    std::vector<EntropyTerm> terms;
    /// Max of rate over the last `window` terms; a finite stand-in for the
    /// limsup, always reported together with the window.
    double limsup_estimate = 0.0;
    std::size_t window = 0;
    std::size_t exact_terms = 0;
};

/// Thrown when a budget runs out part way; carries the terms computed so far.
class EntropyBudgetError : public ResourceError {
public:
    EntropyBudgetError(const std::string& what, EntropySeries partial)
        : ResourceError(what), partial_(std::move(partial)) {}
    const EntropySeries& partial() const { return partial_; }

private:
    EntropySeries partial_;
};

/// Fills in limsup_estimate, window (ceil(k_max / 3)) and exact_terms.
void summarize(EntropySeries& series, std::size_t k_max);

/// Terms k = 1..k_max with N_k = N(U ∨ ω_1^{-1}U ∨ ... ∨ ω_{k-1}^{-1}U).
EntropySeries entropy_series(const MapFamily& family, const OpenCover& cover, std::size_t k_max,
                             const Budget& budget = {});

/// Terms n = 1..n_max with S_n the largest set pairwise separated by more
/// than ε in max_{0<=j<n} d(ω_j x, ω_j y). Throws InputError for ε <= 0.
EntropySeries separated_entropy(const System& system, const Rational& epsilon, std::size_t n_max,
                                const Budget& budget = {});

/// {⟨U_S⟩ : S ⊆ cover, 1 <= |S| <= m} on the hyperspace, empties dropped.
OpenCover lift_cover(const HyperSpaceModel& hyper, const OpenCover& cover);

struct EntropyComparison {
    EntropySeries base;
    EntropySeries lifted;
    /// Every lifted N_k >= the base N_k.
    bool dominance = false;
};

EntropyComparison hyper_entropy_compare(const System& system, std::size_t max_cardinality,
                                        const OpenCover& cover, std::size_t k_max,
                                        const Budget& budget = {});

}  // namespace hyperdyn
