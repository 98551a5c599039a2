#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "hyperdyn/trace.hpp"

namespace hyperdyn {

/// A nonempty finite subset of a base space, stored sorted and duplicate free
/// so that value equality is set equality.
class HyperPoint {
public:
    /// Sorts and merges duplicates. Throws InputError when empty or when an id
    /// is outside a base of `universe` points.
    HyperPoint(std::vector<PointId> elements, std::size_t universe);

    const std::vector<PointId>& elements() const { return elements_; }
    std::size_t size() const { return elements_.size(); }
    std::size_t universe() const { return universe_; }
    bool contains(PointId x) const;
    bool is_subset_of(const HyperPoint& other) const;

    friend bool operator==(const HyperPoint& a, const HyperPoint& b) {
        return a.elements_ == b.elements_;
    }
    /// Cardinality first, then lexicographic on elements.
    friend std::strong_ordering operator<=>(const HyperPoint& a, const HyperPoint& b);

private:
    std::vector<PointId> elements_;
    std::size_t universe_;
};

struct HyperPointHash {
    std::size_t operator()(const HyperPoint& p) const;
};

/// max( max_a min_b d(a,b), max_b min_a d(a,b) ).
Rational hausdorff_distance(const MetricOracle& base, const HyperPoint& a, const HyperPoint& b);
/// Same, after checking both sets live in `base`. Throws InputError otherwise.
Rational hausdorff_distance(const SpaceModel& base, const HyperPoint& a, const HyperPoint& b);

/// {table[a] : a ∈ A}, canonicalized.
HyperPoint image(const Table& table, const HyperPoint& set);
/// ω_n(A).
HyperPoint lift_image(const MapFamily& family, std::uint64_t n, const HyperPoint& set);
HyperPoint lift_image(const CompositionTrace& trace, std::uint64_t n, const HyperPoint& set);

/// ⟨U_1, ..., U_k⟩: sets contained in the union that meet every U_i.
struct VietorisBasic {
    std::vector<PointSet> hit_sets;
};

/// Throws InputError when hit_sets is empty.
bool vietoris_contains(const VietorisBasic& basic, const HyperPoint& set);
/// U⁺ membership: A ⊆ U.
bool upper_vietoris_contains(const PointSet& upper, const HyperPoint& set);

/// Σ_{j=1..m} C(n, j), saturating at UINT64_MAX.
std::uint64_t hyperspace_cardinality(std::uint64_t n, std::uint64_t m);

/// Distances between hyperpoints via d_H over the base metric.
class HausdorffMetric final : public MetricOracle {
public:
    HausdorffMetric(std::shared_ptr<const MetricOracle> base,
                    std::shared_ptr<const std::vector<HyperPoint>> points);

    std::size_t size() const override { return points_->size(); }
    Rational distance(PointId a, PointId b) const override;
    /// d_H only ever takes values of the base metric, and singletons realize
    /// all of them.
    std::vector<Rational> positive_values() const override { return base_->positive_values(); }

private:
    std::shared_ptr<const MetricOracle> base_;
    std::shared_ptr<const std::vector<HyperPoint>> points_;
};

/// All nonempty subsets of the base with at most m elements, ordered by
/// cardinality then lexicographically, so ids 0..|X|-1 are the singletons
/// {0}..{|X|-1}.
class HyperSpaceModel {
public:
    /// Throws ResourceError (with the computed cardinality) over budget.
    static HyperSpaceModel build(const SpaceModel& base, std::size_t max_cardinality,
                                 const Budget& budget = {});

    const SpaceModel& base() const { return base_; }
    std::size_t max_cardinality() const { return max_cardinality_; }
    std::size_t size() const { return points_->size(); }
    const HyperPoint& point(PointId id) const { return (*points_)[id]; }
    const std::vector<HyperPoint>& points() const { return *points_; }
    std::optional<PointId> find(const HyperPoint& set) const;
    PointId singleton(PointId x) const { return x; }
    std::string label(const HyperPoint& set) const;

    /// A ↦ f(A) as a table over hyperpoint ids.
    Table lift_table(const Table& base_map) const;

    /// Hyperpoint ids belonging to ⟨U_1..U_k⟩.
    PointSet members_of(const VietorisBasic& basic) const;

    /// The hyperspace as an ordinary space: d_H metric, and as open base the
    /// distinct nonempty Vietoris basics ⟨U_1..U_k⟩ with k <= m built from
    /// the base's open sets.
    SpaceModel to_space_model(const Budget& budget = {}) const;

private:
    HyperSpaceModel(SpaceModel base, std::size_t m) : base_(std::move(base)), max_cardinality_(m) {}

    SpaceModel base_;
    std::size_t max_cardinality_;
    std::shared_ptr<std::vector<HyperPoint>> points_;
    std::unordered_map<HyperPoint, PointId, HyperPointHash> index_;
};

/// The induced system on the hyperspace of sets of size <= m.
System as_hyper_system(const System& system, std::size_t max_cardinality, const Budget& budget = {});

}  // namespace hyperdyn
