#include "hyperdyn/family.hpp"

#include <numeric>

namespace hyperdyn {

Table identity_table(std::size_t n) {
    Table t(n);
    std::iota(t.begin(), t.end(), PointId{0});
    return t;
}

Table compose(const Table& outer, const Table& inner) {
    Table out(inner.size());
    for (std::size_t x = 0; x < inner.size(); ++x) {
        out[x] = outer[inner[x]];
    }
    return out;
}

bool is_identity(const Table& table) {
    for (std::size_t x = 0; x < table.size(); ++x) {
        if (table[x] != x) {
            return false;
        }
    }
    return true;
}

MapFamily::MapFamily(std::size_t points, std::vector<Table> maps)
    : points_(points), maps_(std::move(maps)) {
    if (maps_.empty()) {
        throw InputError("a map family needs at least one map");
    }
    for (std::size_t i = 0; i < maps_.size(); ++i) {
        if (maps_[i].size() != points_) {
            throw InputError("map " + std::to_string(i) + " is not total: " +
                             std::to_string(maps_[i].size()) + " entries for " +
                             std::to_string(points_) + " points");
        }
        for (PointId y : maps_[i]) {
            if (y >= points_) {
                throw InputError("map " + std::to_string(i) + " sends a point outside the space");
            }
        }
    }
}

bool MapFamily::is_commutative() const {
    for (std::size_t i = 0; i < maps_.size(); ++i) {
        for (std::size_t j = i + 1; j < maps_.size(); ++j) {
            if (compose(maps_[i], maps_[j]) != compose(maps_[j], maps_[i])) {
                return false;
            }
        }
    }
    return true;
}

void validate(const System& system) {
    if (system.family.points() != system.space.size()) {
        throw InputError("family acts on " + std::to_string(system.family.points()) +
                         " points but the space has " + std::to_string(system.space.size()));
    }
}

PointId omega_eval(const MapFamily& family, std::uint64_t n, PointId x) {
    if (n == 0) {
        throw InputError("omega_eval needs n >= 1");
    }
    if (x >= family.points()) {
        throw InputError("unknown point id " + std::to_string(x));
    }
    for (std::uint64_t i = 1; i <= n; ++i) {
        x = family.step(i)[x];
    }
    return x;
}

MapFamily block_family(const MapFamily& family, std::size_t n) {
    if (n == 0) {
        throw InputError("block length must be >= 1");
    }
    const std::size_t p = family.period();
    const std::size_t blocks = p / std::gcd(p, n);
    std::vector<Table> maps;
    maps.reserve(blocks);
    std::uint64_t step = 1;
    for (std::size_t j = 0; j < blocks; ++j) {
        Table t = identity_table(family.points());
        for (std::size_t i = 0; i < n; ++i, ++step) {
            t = compose(family.step(step), t);
        }
        maps.push_back(std::move(t));
    }
    return MapFamily(family.points(), std::move(maps));
}

namespace {

std::uint64_t checked_power(std::uint64_t base, std::size_t arity, std::uint64_t limit,
                            const char* what) {
    std::uint64_t size = 1;
    for (std::size_t i = 0; i < arity; ++i) {
        if (size > limit / std::max<std::uint64_t>(base, 1)) {
            throw ResourceError(std::string(what) + " exceeds budget of " + std::to_string(limit) +
                                " points");
        }
        size *= base;
    }
    if (size > limit) {
        throw ResourceError(std::string(what) + " of " + std::to_string(size) +
                            " points exceeds budget of " + std::to_string(limit));
    }
    return size;
}

}  // namespace

MapFamily product_family(const MapFamily& family, std::size_t arity, const Budget& budget) {
    if (arity < 1) {
        throw InputError("product arity must be >= 1");
    }
    const std::size_t n = family.points();
    const auto size = checked_power(n, arity, budget.max_product_points, "product space");
    std::vector<Table> maps;
    for (const Table& f : family.maps()) {
        Table t(size);
        for (std::uint64_t code = 0; code < size; ++code) {
            std::uint64_t rest = code;
            std::uint64_t image = 0;
            std::uint64_t scale = 1;
            for (std::size_t i = 0; i < arity; ++i) {
                image += f[rest % n] * scale;
                rest /= n;
                scale *= n;
            }
            t[code] = static_cast<PointId>(image);
        }
        maps.push_back(std::move(t));
    }
    return MapFamily(size, std::move(maps));
}

System product_system(const System& system, std::size_t arity, const Budget& budget) {
    validate(system);
    const SpaceModel& base = system.space;
    const std::size_t n = base.size();
    MapFamily family = product_family(system.family, arity, budget);
    const std::size_t size = family.points();

    // Coordinate 0 is the least significant digit.
    std::vector<std::string> labels(size);
    for (std::size_t code = 0; code < size; ++code) {
        std::string label = "(";
        std::size_t rest = code;
        for (std::size_t i = 0; i < arity; ++i) {
            if (i > 0) {
                label += ",";
            }
            label += base.label(static_cast<PointId>(rest % n));
            rest /= n;
        }
        labels[code] = label + ")";
    }

    const auto& opens = base.open_base();
    const std::uint64_t open_count =
        checked_power(opens.size(), arity, budget.max_product_points, "product open base");
    std::vector<OpenSet> product_opens;
    product_opens.reserve(open_count);
    std::vector<std::size_t> pick(arity, 0);
    for (std::uint64_t idx = 0; idx < open_count; ++idx) {
        std::uint64_t rest = idx;
        std::string name;
        for (std::size_t i = 0; i < arity; ++i) {
            pick[i] = rest % opens.size();
            rest /= opens.size();
            name += (i ? " x " : "") + opens[pick[i]].name;
        }
        PointSet set(size);
        for (std::size_t code = 0; code < size; ++code) {
            std::size_t r = code;
            bool inside = true;
            for (std::size_t i = 0; i < arity && inside; ++i) {
                inside = opens[pick[i]].members.test(r % n);
                r /= n;
            }
            if (inside) {
                set.set(code);
            }
        }
        product_opens.push_back({std::move(name), std::move(set)});
    }

    SpaceModel space(std::move(labels), std::make_shared<ProductMetric>(base.metric_ptr(), arity),
                     std::move(product_opens));
    return System{system.name + "^" + std::to_string(arity), std::move(space), std::move(family),
                  system.discretized};
}

}  // namespace hyperdyn
