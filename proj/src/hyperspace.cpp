#include "hyperdyn/hyperspace.hpp"

#include <algorithm>
#include <limits>
#include <unordered_set>

namespace hyperdyn {

HyperPoint::HyperPoint(std::vector<PointId> elements, std::size_t universe)
    : elements_(std::move(elements)), universe_(universe) {
    if (elements_.empty()) {
        throw InputError("a hyperpoint must be nonempty");
    }
    std::sort(elements_.begin(), elements_.end());
    elements_.erase(std::unique(elements_.begin(), elements_.end()), elements_.end());
    if (elements_.back() >= universe_) {
        throw InputError("hyperpoint element " + std::to_string(elements_.back()) +
                         " outside a base of " + std::to_string(universe_) + " points");
    }
}

bool HyperPoint::contains(PointId x) const {
    return std::binary_search(elements_.begin(), elements_.end(), x);
}

bool HyperPoint::is_subset_of(const HyperPoint& other) const {
    return std::includes(other.elements_.begin(), other.elements_.end(), elements_.begin(),
                         elements_.end());
}

std::strong_ordering operator<=>(const HyperPoint& a, const HyperPoint& b) {
    if (auto c = a.elements_.size() <=> b.elements_.size(); c != 0) {
        return c;
    }
    return a.elements_ <=> b.elements_;
}

std::size_t HyperPointHash::operator()(const HyperPoint& p) const {
    std::size_t h = 1469598103934665603ull;
    for (PointId v : p.elements()) {
        h = (h ^ v) * 1099511628211ull;
    }
    return h;
}

namespace {

Rational directed(const MetricOracle& metric, const HyperPoint& from, const HyperPoint& to) {
    Rational worst = 0;
    for (PointId a : from.elements()) {
        Rational nearest = metric.distance(a, to.elements().front());
        for (PointId b : to.elements()) {
            if (nearest == Rational(0)) {
                break;
            }
            nearest = std::min(nearest, metric.distance(a, b));
        }
        worst = std::max(worst, nearest);
    }
    return worst;
}

}  // namespace

Rational hausdorff_distance(const MetricOracle& base, const HyperPoint& a, const HyperPoint& b) {
    return std::max(directed(base, a, b), directed(base, b, a));
}

Rational hausdorff_distance(const SpaceModel& base, const HyperPoint& a, const HyperPoint& b) {
    if (a.universe() != base.size() || b.universe() != base.size()) {
        throw InputError("hyperpoints belong to a different base space");
    }
    return hausdorff_distance(base.metric(), a, b);
}

HyperPoint image(const Table& table, const HyperPoint& set) {
    std::vector<PointId> out;
    out.reserve(set.size());
    for (PointId x : set.elements()) {
        out.push_back(table.at(x));
    }
    return HyperPoint(std::move(out), table.size());
}

HyperPoint lift_image(const MapFamily& family, std::uint64_t n, const HyperPoint& set) {
    if (set.universe() != family.points()) {
        throw InputError("hyperpoint and family live on different spaces");
    }
    std::vector<PointId> out;
    for (PointId x : set.elements()) {
        out.push_back(omega_eval(family, n, x));
    }
    return HyperPoint(std::move(out), family.points());
}

HyperPoint lift_image(const CompositionTrace& trace, std::uint64_t n, const HyperPoint& set) {
    if (set.universe() != trace.points()) {
        throw InputError("hyperpoint and trace live on different spaces");
    }
    return image(trace.omega(n), set);
}

bool vietoris_contains(const VietorisBasic& basic, const HyperPoint& set) {
    if (basic.hit_sets.empty()) {
        throw InputError("a Vietoris basic set needs at least one hit set");
    }
    for (const PointSet& u : basic.hit_sets) {
        if (u.size() != set.universe()) {
            throw InputError("hit set ranges over a different space");
        }
    }
    for (PointId x : set.elements()) {
        const bool covered = std::any_of(basic.hit_sets.begin(), basic.hit_sets.end(),
                                         [x](const PointSet& u) { return u.test(x); });
        if (!covered) {
            return false;
        }
    }
    for (const PointSet& u : basic.hit_sets) {
        const bool hit = std::any_of(set.elements().begin(), set.elements().end(),
                                     [&u](PointId x) { return u.test(x); });
        if (!hit) {
            return false;
        }
    }
    return true;
}

bool upper_vietoris_contains(const PointSet& upper, const HyperPoint& set) {
    return std::all_of(set.elements().begin(), set.elements().end(),
                       [&upper](PointId x) { return x < upper.size() && upper.test(x); });
}

std::uint64_t hyperspace_cardinality(std::uint64_t n, std::uint64_t m) {
    constexpr std::uint64_t cap = std::numeric_limits<std::uint64_t>::max();
    std::uint64_t total = 0;
    unsigned __int128 binom = 1;
    for (std::uint64_t j = 1; j <= std::min(n, m); ++j) {
        binom = binom * (n - j + 1) / j;
        if (binom > cap || total > cap - static_cast<std::uint64_t>(binom)) {
            return cap;
        }
        total += static_cast<std::uint64_t>(binom);
    }
    return total;
}

HausdorffMetric::HausdorffMetric(std::shared_ptr<const MetricOracle> base,
                                 std::shared_ptr<const std::vector<HyperPoint>> points)
    : base_(std::move(base)), points_(std::move(points)) {}

Rational HausdorffMetric::distance(PointId a, PointId b) const {
    if (a == b) {
        return 0;
    }
    return hausdorff_distance(*base_, (*points_)[a], (*points_)[b]);
}

HyperSpaceModel HyperSpaceModel::build(const SpaceModel& base, std::size_t m, const Budget& budget) {
    if (m == 0) {
        throw InputError("hyperspace max cardinality must be >= 1");
    }
    const std::size_t n = base.size();
    const std::uint64_t count = hyperspace_cardinality(n, m);
    if (count > budget.max_hyper_points) {
        throw ResourceError("hyperspace of sets with <= " + std::to_string(m) + " points has " +
                            std::to_string(count) + " points, over the budget of " +
                            std::to_string(budget.max_hyper_points));
    }
    HyperSpaceModel model(base, m);
    auto points = std::make_shared<std::vector<HyperPoint>>();
    points->reserve(count);
    // Lexicographic enumeration of j-subsets, j = 1..m.
    for (std::size_t j = 1; j <= std::min(m, n); ++j) {
        std::vector<PointId> combo(j);
        for (std::size_t i = 0; i < j; ++i) {
            combo[i] = static_cast<PointId>(i);
        }
        while (true) {
            points->emplace_back(combo, n);
            std::size_t i = j;
            while (i > 0 && combo[i - 1] == n - j + i - 1) {
                --i;
            }
            if (i == 0) {
                break;
            }
            ++combo[i - 1];
            for (std::size_t k = i; k < j; ++k) {
                combo[k] = combo[k - 1] + 1;
            }
        }
    }
    model.index_.reserve(points->size());
    for (std::size_t id = 0; id < points->size(); ++id) {
        model.index_.emplace((*points)[id], static_cast<PointId>(id));
    }
    model.points_ = std::move(points);
    return model;
}

std::optional<PointId> HyperSpaceModel::find(const HyperPoint& set) const {
    const auto it = index_.find(set);
    if (it == index_.end()) {
        return std::nullopt;
    }
    return it->second;
}

std::string HyperSpaceModel::label(const HyperPoint& set) const {
    std::string out = "{";
    for (std::size_t i = 0; i < set.size(); ++i) {
        if (i > 0) {
            out += ",";
        }
        out += base_.label(set.elements()[i]);
    }
    return out + "}";
}

Table HyperSpaceModel::lift_table(const Table& base_map) const {
    Table out(points_->size());
    for (std::size_t id = 0; id < points_->size(); ++id) {
        // Images never grow, so they stay within the hyperspace.
        out[id] = index_.at(image(base_map, (*points_)[id]));
    }
    return out;
}

PointSet HyperSpaceModel::members_of(const VietorisBasic& basic) const {
    PointSet out(points_->size());
    for (std::size_t id = 0; id < points_->size(); ++id) {
        if (vietoris_contains(basic, (*points_)[id])) {
            out.set(id);
        }
    }
    return out;
}

SpaceModel HyperSpaceModel::to_space_model(const Budget& budget) const {
    std::vector<std::string> labels;
    labels.reserve(points_->size());
    for (const auto& p : *points_) {
        labels.push_back(label(p));
    }

    const auto& opens = base_.open_base();
    const std::uint64_t candidates = hyperspace_cardinality(opens.size(), max_cardinality_);
    if (candidates > budget.max_vietoris_candidates) {
        throw ResourceError("Vietoris base needs " + std::to_string(candidates) +
                            " candidate hit-set lists, over the budget of " +
                            std::to_string(budget.max_vietoris_candidates));
    }

    std::vector<OpenSet> basics;
    std::unordered_set<PointSet, PointSetHash> seen;
    const std::size_t b = opens.size();
    for (std::size_t k = 1; k <= std::min(max_cardinality_, b); ++k) {
        std::vector<std::size_t> combo(k);
        for (std::size_t i = 0; i < k; ++i) {
            combo[i] = i;
        }
        while (true) {
            VietorisBasic basic;
            std::string name = "<";
            for (std::size_t i = 0; i < k; ++i) {
                basic.hit_sets.push_back(opens[combo[i]].members);
                name += (i ? "," : "") + opens[combo[i]].name;
            }
            name += ">";
            PointSet set = members_of(basic);
            if (set.any() && seen.insert(set).second) {
                basics.push_back({std::move(name), std::move(set)});
            }
            std::size_t i = k;
            while (i > 0 && combo[i - 1] == b - k + i - 1) {
                --i;
            }
            if (i == 0) {
                break;
            }
            ++combo[i - 1];
            for (std::size_t j = i; j < k; ++j) {
                combo[j] = combo[j - 1] + 1;
            }
        }
    }
    return SpaceModel(std::move(labels),
                      std::make_shared<HausdorffMetric>(base_.metric_ptr(), points_),
                      std::move(basics));
}

System as_hyper_system(const System& system, std::size_t max_cardinality, const Budget& budget) {
    validate(system);
    const HyperSpaceModel hyper = HyperSpaceModel::build(system.space, max_cardinality, budget);
    std::vector<Table> maps;
    maps.reserve(system.family.period());
    for (const Table& f : system.family.maps()) {
        maps.push_back(hyper.lift_table(f));
    }
    MapFamily family(hyper.size(), std::move(maps));
    return System{"H" + std::to_string(max_cardinality) + "(" + system.name + ")",
                  hyper.to_space_model(budget), std::move(family), system.discretized};
}

}  // namespace hyperdyn
