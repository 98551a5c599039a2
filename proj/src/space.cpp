#include "hyperdyn/space.hpp"

#include <algorithm>
#include <set>
#include <unordered_set>

namespace hyperdyn {

std::vector<PointId> members(const PointSet& set) {
    std::vector<PointId> out;
    out.reserve(set.count());
    for (auto i = set.find_first(); i != PointSet::npos; i = set.find_next(i)) {
        out.push_back(static_cast<PointId>(i));
    }
    return out;
}

PointSet make_point_set(std::size_t universe, std::span<const PointId> ids) {
    PointSet set(universe);
    for (PointId id : ids) {
        if (id >= universe) {
            throw InputError("point id " + std::to_string(id) + " outside a space of " +
                             std::to_string(universe) + " points");
        }
        set.set(id);
    }
    return set;
}

std::size_t hash_point_set(const PointSet& set) {
    std::vector<std::uint64_t> blocks(set.num_blocks());
    boost::to_block_range(set, blocks.begin());
    std::size_t h = 1469598103934665603ull ^ set.size();
    for (std::uint64_t b : blocks) {
        h ^= b + 0x9e3779b97f4a7c15ull + (h << 6) + (h >> 2);
    }
    return h;
}

DenseMetric::DenseMetric(std::size_t n, std::vector<Rational> row_major)
    : n_(n), values_(std::move(row_major)) {
    if (values_.size() != n_ * n_) {
        throw InputError("metric matrix must be " + std::to_string(n_) + "x" + std::to_string(n_));
    }
    for (std::size_t i = 0; i < n_; ++i) {
        if (values_[i * n_ + i] != Rational(0)) {
            throw InputError("metric(" + std::to_string(i) + "," + std::to_string(i) + ") must be 0");
        }
        for (std::size_t j = i + 1; j < n_; ++j) {
            const Rational& dij = values_[i * n_ + j];
            if (dij <= 0) {
                throw InputError("metric(" + std::to_string(i) + "," + std::to_string(j) +
                                 ") must be positive for distinct points");
            }
            if (dij != values_[j * n_ + i]) {
                throw InputError("metric is not symmetric at (" + std::to_string(i) + "," +
                                 std::to_string(j) + ")");
            }
        }
    }
    for (std::size_t i = 0; i < n_; ++i) {
        for (std::size_t j = 0; j < n_; ++j) {
            for (std::size_t k = 0; k < n_; ++k) {
                if (values_[i * n_ + k] > values_[i * n_ + j] + values_[j * n_ + k]) {
                    throw InputError("triangle inequality fails for (" + std::to_string(i) + "," +
                                     std::to_string(j) + "," + std::to_string(k) + ")");
                }
            }
        }
    }
}

std::vector<Rational> DenseMetric::positive_values() const {
    std::set<Rational> seen;
    for (std::size_t i = 0; i < n_; ++i) {
        for (std::size_t j = i + 1; j < n_; ++j) {
            seen.insert(values_[i * n_ + j]);
        }
    }
    return {seen.begin(), seen.end()};
}

WordMetric::WordMetric(std::size_t alphabet, std::size_t length)
    : alphabet_(alphabet), length_(length), size_(1) {
    if (alphabet_ < 1 || length_ < 1 || length_ > 62) {
        throw InputError("word metric needs alphabet >= 1 and 1 <= length <= 62");
    }
    for (std::size_t i = 0; i < length_; ++i) {
        size_ *= alphabet_;
    }
}

Rational WordMetric::distance(PointId a, PointId b) const {
    if (a == b) {
        return 0;
    }
    // Digits are compared from the most significant (position 0) down.
    std::size_t scale = size_ / alphabet_;
    for (std::size_t pos = 0; pos < length_; ++pos) {
        if ((a / scale) % alphabet_ != (b / scale) % alphabet_) {
            return Rational(1, std::int64_t{1} << pos);
        }
        scale /= alphabet_;
    }
    return 0;
}

std::vector<Rational> WordMetric::positive_values() const {
    std::vector<Rational> out;
    if (alphabet_ < 2) {
        return out;
    }
    for (std::size_t pos = length_; pos-- > 0;) {
        out.emplace_back(1, std::int64_t{1} << pos);
    }
    return out;
}

LineMetric::LineMetric(std::vector<Rational> coordinates) : coordinates_(std::move(coordinates)) {
    std::vector<Rational> sorted = coordinates_;
    std::sort(sorted.begin(), sorted.end());
    if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) {
        throw InputError("line metric coordinates must be distinct");
    }
}

std::vector<Rational> LineMetric::positive_values() const {
    std::set<Rational> seen;
    for (std::size_t i = 0; i < coordinates_.size(); ++i) {
        for (std::size_t j = i + 1; j < coordinates_.size(); ++j) {
            seen.insert(distance(static_cast<PointId>(i), static_cast<PointId>(j)));
        }
    }
    return {seen.begin(), seen.end()};
}

ProductMetric::ProductMetric(std::shared_ptr<const MetricOracle> base, std::size_t arity)
    : base_(std::move(base)), arity_(arity), size_(1) {
    for (std::size_t i = 0; i < arity_; ++i) {
        size_ *= base_->size();
    }
}

Rational ProductMetric::distance(PointId a, PointId b) const {
    const std::size_t n = base_->size();
    Rational best = 0;
    for (std::size_t i = 0; i < arity_; ++i) {
        const auto da = static_cast<PointId>(a % n);
        const auto db = static_cast<PointId>(b % n);
        best = std::max(best, base_->distance(da, db));
        a /= static_cast<PointId>(n);
        b /= static_cast<PointId>(n);
    }
    return best;
}

std::vector<OpenSet> singleton_base(const std::vector<std::string>& labels) {
    std::vector<OpenSet> base;
    base.reserve(labels.size());
    for (std::size_t i = 0; i < labels.size(); ++i) {
        PointSet set(labels.size());
        set.set(i);
        base.push_back({"{" + labels[i] + "}", std::move(set)});
    }
    return base;
}

SpaceModel::SpaceModel(std::vector<std::string> labels, std::shared_ptr<const MetricOracle> metric,
                       std::vector<OpenSet> open_base)
    : labels_(std::move(labels)), metric_(std::move(metric)), open_base_(std::move(open_base)) {
    if (labels_.empty()) {
        throw InputError("a space needs at least one point");
    }
    if (!metric_ || metric_->size() != labels_.size()) {
        throw InputError("metric size does not match the number of points");
    }
    std::unordered_set<std::string> unique;
    for (const auto& l : labels_) {
        if (l.empty() || !unique.insert(l).second) {
            throw InputError("point labels must be nonempty and unique (offending: '" + l + "')");
        }
    }
    if (open_base_.empty()) {
        open_base_ = singleton_base(labels_);
    }
    PointSet covered(labels_.size());
    for (const auto& open : open_base_) {
        if (open.members.size() != labels_.size()) {
            throw InputError("open set '" + open.name + "' ranges over a different space");
        }
        if (open.members.none()) {
            throw InputError("open set '" + open.name + "' is empty");
        }
        covered |= open.members;
    }
    if (!covered.all()) {
        throw InputError("open base does not cover point '" + labels_[covered.flip().find_first()] + "'");
    }
}

std::optional<PointId> SpaceModel::find(const std::string& label) const {
    const auto it = std::find(labels_.begin(), labels_.end(), label);
    if (it == labels_.end()) {
        return std::nullopt;
    }
    return static_cast<PointId>(it - labels_.begin());
}

PointId SpaceModel::require(const std::string& label) const {
    if (auto id = find(label)) {
        return *id;
    }
    throw InputError("unknown point '" + label + "'");
}

Rational SpaceModel::diameter(std::span<const PointId> points) const {
    Rational best = 0;
    for (std::size_t i = 0; i < points.size(); ++i) {
        for (std::size_t j = i + 1; j < points.size(); ++j) {
            best = std::max(best, metric_->distance(points[i], points[j]));
        }
    }
    return best;
}

Rational SpaceModel::diameter(const PointSet& set) const {
    const auto ids = members(set);
    return diameter(ids);
}

bool SpaceModel::diameter_exceeds(std::span<const PointId> points, const Rational& threshold) const {
    for (std::size_t i = 0; i < points.size(); ++i) {
        for (std::size_t j = i + 1; j < points.size(); ++j) {
            if (metric_->distance(points[i], points[j]) > threshold) {
                return true;
            }
        }
    }
    return false;
}

Rational SpaceModel::diameter() const {
    const auto values = metric_->positive_values();
    return values.empty() ? Rational(0) : values.back();
}

}  // namespace hyperdyn
