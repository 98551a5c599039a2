#pragma once

#include <cstddef>
#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include <boost/dynamic_bitset.hpp>

#include "hyperdyn/rational.hpp"

namespace hyperdyn {

using PointId = std::uint32_t;
using PointSet = boost::dynamic_bitset<std::uint64_t>;

std::vector<PointId> members(const PointSet& set);
PointSet make_point_set(std::size_t universe, std::span<const PointId> ids);
std::size_t hash_point_set(const PointSet& set);

struct PointSetHash {
    std::size_t operator()(const PointSet& set) const { return hash_point_set(set); }
};

/// Distance function of a finite space. Implementations are immutable and may
/// compute distances lazily (hyperspaces and products are never materialized
/// as dense matrices).
class MetricOracle {
public:
    virtual ~MetricOracle() = default;
    virtual std::size_t size() const = 0;
    virtual Rational distance(PointId a, PointId b) const = 0;
    /// Sorted distinct positive values attained by the metric.
    virtual std::vector<Rational> positive_values() const = 0;
};

/// Full n x n matrix. The constructor verifies every metric axiom exactly.
class DenseMetric final : public MetricOracle {
public:
    DenseMetric(std::size_t n, std::vector<Rational> row_major);

    std::size_t size() const override { return n_; }
    Rational distance(PointId a, PointId b) const override { return values_[a * n_ + b]; }
    std::vector<Rational> positive_values() const override;

private:
    std::size_t n_;
    std::vector<Rational> values_;
};

/// d(x, y) = 2^-(first index where the words differ), over words of a fixed
/// length with base-`alphabet` digits, first symbol most significant.
class WordMetric final : public MetricOracle {
public:
    WordMetric(std::size_t alphabet, std::size_t length);

    std::size_t size() const override { return size_; }
    Rational distance(PointId a, PointId b) const override;
    std::vector<Rational> positive_values() const override;

private:
    std::size_t alphabet_;
    std::size_t length_;
    std::size_t size_;
};

/// |x_a - x_b| for rational coordinates on a line.
class LineMetric final : public MetricOracle {
public:
    explicit LineMetric(std::vector<Rational> coordinates);

    std::size_t size() const override { return coordinates_.size(); }
    Rational distance(PointId a, PointId b) const override {
        const Rational diff = coordinates_[a] - coordinates_[b];
        return diff < 0 ? -diff : diff;
    }
    std::vector<Rational> positive_values() const override;

private:
    std::vector<Rational> coordinates_;
};

/// Max-metric on k-fold products, points encoded as base-n digits with
/// coordinate 0 least significant.
class ProductMetric final : public MetricOracle {
public:
    ProductMetric(std::shared_ptr<const MetricOracle> base, std::size_t arity);

    std::size_t size() const override { return size_; }
    Rational distance(PointId a, PointId b) const override;
    std::vector<Rational> positive_values() const override { return base_->positive_values(); }

private:
    std::shared_ptr<const MetricOracle> base_;
    std::size_t arity_;
    std::size_t size_;
};

struct OpenSet {
    std::string name;
    PointSet members;
};

/// A finite metric space together with a declared base of open sets.
class SpaceModel {
public:
    /// Validates labels (unique, nonempty), metric size, and the open base
    /// (nonempty members, union covers every point). An empty open_base means
    /// the discrete topology (all singletons).
    SpaceModel(std::vector<std::string> labels, std::shared_ptr<const MetricOracle> metric,
               std::vector<OpenSet> open_base = {});

    std::size_t size() const { return labels_.size(); }
    const std::string& label(PointId id) const { return labels_.at(id); }
    const std::vector<std::string>& labels() const { return labels_; }
    std::optional<PointId> find(const std::string& label) const;
    /// Like find, but throws InputError for unknown labels.
    PointId require(const std::string& label) const;

    Rational distance(PointId a, PointId b) const { return metric_->distance(a, b); }
    const MetricOracle& metric() const { return *metric_; }
    std::shared_ptr<const MetricOracle> metric_ptr() const { return metric_; }

    const std::vector<OpenSet>& open_base() const { return open_base_; }

    /// Largest pairwise distance within the set, 0 for sets with fewer than
    /// two points.
    Rational diameter(std::span<const PointId> points) const;
    Rational diameter(const PointSet& set) const;
    /// True iff diam(set) > threshold; stops at the first witnessing pair.
    bool diameter_exceeds(std::span<const PointId> points, const Rational& threshold) const;

    /// Diameter of the whole space.
    Rational diameter() const;

private:
    std::vector<std::string> labels_;
    std::shared_ptr<const MetricOracle> metric_;
    std::vector<OpenSet> open_base_;
};

std::vector<OpenSet> singleton_base(const std::vector<std::string>& labels);

}  // namespace hyperdyn
