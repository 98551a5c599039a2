#include "hyperdyn/zoo.hpp"

#include <random>

#include "json_fields.hpp"

namespace hyperdyn {

namespace {

std::uint64_t checked_power(std::size_t base, std::size_t exponent, std::uint64_t limit,
                            const std::string& what) {
    std::uint64_t size = 1;
    for (std::size_t i = 0; i < exponent; ++i) {
        if (size > limit / base) {
            throw ResourceError(what + " has more than " + std::to_string(limit) + " points");
        }
        size *= base;
    }
    return size;
}

char digit(std::size_t d) {
    return static_cast<char>(d < 10 ? '0' + d : 'a' + (d - 10));
}

/// Words in id order, first symbol most significant (as WordMetric).
std::vector<std::string> word_labels(std::size_t alphabet, std::size_t length, std::size_t size) {
    std::vector<std::string> labels(size, std::string(length, '0'));
    for (std::size_t id = 0; id < size; ++id) {
        std::size_t rest = id;
        for (std::size_t i = length; i-- > 0;) {
            labels[id][i] = digit(rest % alphabet);
            rest /= alphabet;
        }
    }
    return labels;
}

/// Cylinders [w] for 1 <= |w| <= depth: prefix w covers a contiguous id range.
std::vector<OpenSet> cylinders(std::size_t alphabet, std::size_t depth, std::size_t size) {
    std::vector<OpenSet> opens;
    std::size_t block = size;
    std::size_t words = 1;
    for (std::size_t j = 1; j <= depth; ++j) {
        block /= alphabet;
        words *= alphabet;
        for (std::size_t w = 0; w < words; ++w) {
            PointSet set(size);
            for (std::size_t id = w * block; id < (w + 1) * block; ++id) {
                set.set(id);
            }
            std::string name(j, '0');
            std::size_t rest = w;
            for (std::size_t i = j; i-- > 0;) {
                name[i] = digit(rest % alphabet);
                rest /= alphabet;
            }
            opens.push_back({"[" + name + "]", std::move(set)});
        }
    }
    return opens;
}

std::shared_ptr<const MetricOracle> discrete_metric(std::size_t n) {
    std::vector<Rational> values(n * n, Rational(1));
    for (std::size_t i = 0; i < n; ++i) {
        values[i * n + i] = 0;
    }
    return std::make_shared<DenseMetric>(n, std::move(values));
}

std::vector<std::string> numbered(const std::string& prefix, std::size_t n) {
    std::vector<std::string> labels;
    for (std::size_t i = 0; i < n; ++i) {
        labels.push_back(prefix + std::to_string(i));
    }
    return labels;
}

/// Grid cell holding y in [0, 1]; y = 1 belongs to the last cell.
PointId cell_of(const Rational& y, std::size_t cells) {
    const std::int64_t n = static_cast<std::int64_t>(cells);
    const std::int64_t index = (y.numerator() * n) / y.denominator();
    return static_cast<PointId>(std::clamp<std::int64_t>(index, 0, n - 1));
}

Rational fractional_part(const Rational& y) {
    std::int64_t whole = y.numerator() / y.denominator();
    if (y.numerator() < 0 && whole * y.denominator() != y.numerator()) {
        --whole;
    }
    return y - whole;
}

}  // namespace

System make_full_shift(std::size_t alphabet, std::size_t length, ShiftOptions options,
                       const Budget& budget) {
    if (alphabet < 1 || alphabet > 36) {
        throw InputError("full shift alphabet must be in 1..36");
    }
    if (length < 1) {
        throw InputError("full shift length must be >= 1");
    }
    if (options.fill >= alphabet) {
        throw InputError("fill symbol " + std::to_string(options.fill) + " is not in the alphabet");
    }
    if (options.depth < 1 || options.depth > length) {
        throw InputError("cylinder depth must be in 1..L");
    }
    const std::uint64_t size = checked_power(alphabet, length, budget.max_space_points, "full shift");
    const std::uint64_t tail = size / alphabet;
    Table shift(size);
    for (std::uint64_t id = 0; id < size; ++id) {
        shift[id] = static_cast<PointId>((id % tail) * alphabet + options.fill);
    }
    SpaceModel space(word_labels(alphabet, length, size),
                     std::make_shared<WordMetric>(alphabet, length),
                     cylinders(alphabet, options.depth, size));
    return System{"shift(a=" + std::to_string(alphabet) + ",L=" + std::to_string(length) + ")",
                  std::move(space), MapFamily(size, {std::move(shift)}), false};
}

System make_odometer(std::size_t k, std::size_t depth) {
    if (k < 1 || k > 20) {
        throw InputError("odometer truncation must be in 1..20");
    }
    if (depth == 0) {
        depth = k;
    }
    if (depth > k) {
        throw InputError("cylinder depth must be in 1..K");
    }
    const std::size_t size = std::size_t{1} << k;
    // Label position i (0-based, left to right) is bit k-1-i of the id and
    // carries weight 2^i in the adding machine.
    auto value_of = [&](std::size_t id) {
        std::size_t v = 0;
        for (std::size_t i = 0; i < k; ++i) {
            v |= ((id >> (k - 1 - i)) & 1u) << i;
        }
        return v;
    };
    auto id_of = value_of;  // the bit reversal is an involution
    Table phi(size);
    for (std::size_t id = 0; id < size; ++id) {
        phi[id] = static_cast<PointId>(id_of((value_of(id) + 1) % size));
    }
    SpaceModel space(word_labels(2, k, size), std::make_shared<WordMetric>(2, k),
                     cylinders(2, depth, size));
    return System{"odometer(K=" + std::to_string(k) + ")", std::move(space),
                  MapFamily(size, {std::move(phi)}), false};
}

MapFamily interleave_identity(const MapFamily& family, IdentityPosition position) {
    const Table id = identity_table(family.points());
    std::vector<Table> maps;
    for (const Table& f : family.maps()) {
        if (position == IdentityPosition::First) {
            maps.push_back(id);
            maps.push_back(f);
        } else {
            maps.push_back(f);
            maps.push_back(id);
        }
    }
    return MapFamily(family.points(), std::move(maps));
}

MapFamily power_family(const MapFamily& family, const std::vector<std::size_t>& exponents) {
    if (family.period() != 1) {
        throw InputError("powers need an autonomous family");
    }
    if (exponents.empty()) {
        throw InputError("powers need at least one exponent");
    }
    std::vector<Table> maps;
    for (std::size_t e : exponents) {
        Table t = identity_table(family.points());
        for (std::size_t i = 0; i < e; ++i) {
            t = compose(family.maps()[0], t);
        }
        maps.push_back(std::move(t));
    }
    return MapFamily(family.points(), std::move(maps));
}

System make_interval_grid(IntervalMapSpec map, std::size_t cells, std::size_t window) {
    if (cells < 2) {
        throw InputError("interval grid needs at least 2 cells");
    }
    if (map.kind == IntervalMap::Logistic && (map.parameter < 0 || map.parameter > 4)) {
        throw InputError("logistic parameter r must lie in [0, 4], got " + to_string(map.parameter));
    }
    if (window < 1) {
        throw InputError("grid window must be >= 1");
    }
    window = std::min(window, cells);
    const std::int64_t n = static_cast<std::int64_t>(cells);
    std::vector<Rational> midpoints;
    Table table(cells);
    for (std::int64_t i = 0; i < n; ++i) {
        const Rational y(2 * i + 1, 2 * n);
        midpoints.push_back(y);
        Rational image;
        switch (map.kind) {
            case IntervalMap::Tent:
                image = y < Rational(1, 2) ? 2 * y : 2 - 2 * y;
                break;
            case IntervalMap::Logistic:
                image = map.parameter * y * (1 - y);
                break;
            case IntervalMap::Rotation:
                image = fractional_part(y + map.parameter);
                break;
        }
        table[i] = cell_of(image, cells);
    }
    std::vector<OpenSet> opens;
    for (std::size_t start = 0; start + window <= cells; ++start) {
        PointSet set(cells);
        for (std::size_t j = start; j < start + window; ++j) {
            set.set(j);
        }
        const std::string name = window == 1 ? "c" + std::to_string(start)
                                             : "c" + std::to_string(start) + "..c" +
                                                   std::to_string(start + window - 1);
        opens.push_back({name, std::move(set)});
    }
    std::string name;
    switch (map.kind) {
        case IntervalMap::Tent:
            name = "tent(N=" + std::to_string(cells) + ")";
            break;
        case IntervalMap::Logistic:
            name = "logistic(r=" + to_string(map.parameter) + ",N=" + std::to_string(cells) + ")";
            break;
        case IntervalMap::Rotation:
            name = "rotation(alpha=" + to_string(map.parameter) + ",N=" + std::to_string(cells) + ")";
            break;
    }
    SpaceModel space(numbered("c", cells), std::make_shared<LineMetric>(std::move(midpoints)),
                     std::move(opens));
    return System{std::move(name), std::move(space), MapFamily(cells, {std::move(table)}), true};
}

System make_random_finite(std::size_t points, std::size_t period, std::uint64_t seed,
                          RandomOptions options) {
    if (points < 1 || period < 1) {
        throw InputError("random systems need at least one point and one map");
    }
    // Raw engine output reduced by modulo: std::uniform_int_distribution is
    // implementation-defined, and systems must match across platforms.
    std::mt19937_64 rng(seed);
    auto draw = [&](std::uint64_t bound) { return rng() % bound; };

    const std::size_t n = points;
    std::vector<Rational> d(n * n, Rational(0));
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j) {
            d[i * n + j] = d[j * n + i] = Rational(static_cast<std::int64_t>(draw(4) + 1), 4);
        }
    }
    for (std::size_t k = 0; k < n; ++k) {
        for (std::size_t i = 0; i < n; ++i) {
            for (std::size_t j = 0; j < n; ++j) {
                if (d[i * n + k] + d[k * n + j] < d[i * n + j]) {
                    d[i * n + j] = d[i * n + k] + d[k * n + j];
                }
            }
        }
    }
    std::vector<Table> maps;
    for (std::size_t m = 0; m < period; ++m) {
        Table t(n);
        if (options.bijective) {
            t = identity_table(n);
            for (std::size_t i = n; i-- > 1;) {
                std::swap(t[i], t[draw(i + 1)]);
            }
        } else {
            for (auto& y : t) {
                y = static_cast<PointId>(draw(n));
            }
        }
        maps.push_back(std::move(t));
    }
    SpaceModel space(numbered("p", n), std::make_shared<DenseMetric>(n, std::move(d)));
    return System{"random(n=" + std::to_string(n) + ",p=" + std::to_string(period) +
                      ",seed=" + std::to_string(seed) + (options.bijective ? ",bijective" : "") + ")",
                  std::move(space), MapFamily(n, std::move(maps)), false};
}

System make_cyclic_rotation(std::size_t points, std::size_t step) {
    if (points < 1) {
        throw InputError("rotation needs at least one point");
    }
    const std::size_t n = points;
    std::vector<Rational> d(n * n);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            const std::size_t gap = i > j ? i - j : j - i;
            d[i * n + j] = Rational(static_cast<std::int64_t>(std::min(gap, n - gap)),
                                    static_cast<std::int64_t>(n));
        }
    }
    Table t(n);
    for (std::size_t i = 0; i < n; ++i) {
        t[i] = static_cast<PointId>((i + step) % n);
    }
    SpaceModel space(numbered("r", n), std::make_shared<DenseMetric>(n, std::move(d)));
    return System{"rotation(n=" + std::to_string(n) + ",step=" + std::to_string(step) + ")",
                  std::move(space), MapFamily(n, {std::move(t)}), false};
}

System make_table_system(const std::vector<PointId>& table) {
    const std::size_t n = table.size();
    if (n == 0) {
        throw InputError("table system needs at least one point");
    }
    std::string name = "table(";
    for (std::size_t i = 0; i < n; ++i) {
        name += (i ? "," : "") + std::to_string(table[i]);
    }
    SpaceModel space(numbered("p", n), discrete_metric(n));
    return System{name + ")", std::move(space), MapFamily(n, {table}), false};
}

System make_identity(std::size_t points) {
    if (points < 1) {
        throw InputError("identity needs at least one point");
    }
    SpaceModel space(numbered("p", points), discrete_metric(points));
    return System{"identity(n=" + std::to_string(points) + ")", std::move(space),
                  MapFamily(points, {identity_table(points)}), false};
}

namespace {

System build_kind(const Json& recipe, const Budget& budget, const std::string& path) {
    using namespace fields;
    const std::string kind = get_string(recipe, "kind", path);
    if (kind == "full_shift") {
        allow_keys(recipe, path, {"kind", "alphabet", "length", "fill", "depth", "post"});
        ShiftOptions options;
        options.fill = get_uint(recipe, "fill", path, 0);
        options.depth = get_positive(recipe, "depth", path, 1);
        const std::size_t length = get_positive(recipe, "length", path);
        if (options.depth > length) {
            throw ConfigError(child(path, "depth"), "must not exceed length");
        }
        const std::size_t alphabet = get_positive(recipe, "alphabet", path, 2);
        if (options.fill >= alphabet) {
            throw ConfigError(child(path, "fill"), "not a symbol of the alphabet");
        }
        return make_full_shift(alphabet, length, options, budget);
    }
    if (kind == "odometer") {
        allow_keys(recipe, path, {"kind", "k", "depth", "post"});
        const std::size_t k = get_positive(recipe, "k", path);
        if (k > 20) {
            throw ConfigError(child(path, "k"), "must be at most 20");
        }
        const std::size_t depth = get_uint(recipe, "depth", path, 0);
        if (depth > k) {
            throw ConfigError(child(path, "depth"), "must not exceed k");
        }
        return make_odometer(k, depth);
    }
    if (kind == "interval_grid") {
        allow_keys(recipe, path, {"kind", "map", "r", "alpha", "cells", "window", "post"});
        const std::string map = get_string(recipe, "map", path);
        IntervalMapSpec spec;
        if (map == "tent") {
            spec.kind = IntervalMap::Tent;
        } else if (map == "logistic") {
            spec.kind = IntervalMap::Logistic;
            spec.parameter = get_rational(recipe, "r", path);
            if (spec.parameter < 0 || spec.parameter > 4) {
                throw ConfigError(child(path, "r"), "must lie in [0, 4]");
            }
        } else if (map == "rotation") {
            spec.kind = IntervalMap::Rotation;
            spec.parameter = get_rational(recipe, "alpha", path);
        } else {
            throw ConfigError(child(path, "map"), "expected tent, logistic or rotation");
        }
        const std::size_t cells = get_uint(recipe, "cells", path);
        if (cells < 2) {
            throw ConfigError(child(path, "cells"), "must be at least 2");
        }
        return make_interval_grid(spec, cells, get_positive(recipe, "window", path, 3));
    }
    if (kind == "permutation") {
        allow_keys(recipe, path, {"kind", "points", "step", "table", "post"});
        if (const Json* table = optional(recipe, "table")) {
            require_array(*table, child(path, "table"));
            std::vector<PointId> t;
            for (std::size_t i = 0; i < table->size(); ++i) {
                const auto y = as_uint((*table)[i], child(child(path, "table"), i));
                if (y >= table->size()) {
                    throw ConfigError(child(child(path, "table"), i), "image out of range");
                }
                t.push_back(static_cast<PointId>(y));
            }
            if (t.empty()) {
                throw ConfigError(child(path, "table"), "must not be empty");
            }
            return make_table_system(t);
        }
        return make_cyclic_rotation(get_positive(recipe, "points", path),
                                    get_uint(recipe, "step", path, 1));
    }
    if (kind == "random_finite") {
        allow_keys(recipe, path, {"kind", "points", "period", "seed", "bijective", "post"});
        return make_random_finite(get_positive(recipe, "points", path),
                                  get_positive(recipe, "period", path, 1),
                                  get_uint(recipe, "seed", path, 0),
                                  {get_bool(recipe, "bijective", path, false)});
    }
    if (kind == "identity") {
        allow_keys(recipe, path, {"kind", "points", "post"});
        return make_identity(get_positive(recipe, "points", path));
    }
    throw ConfigError(child(path, "kind"), "unknown recipe kind '" + kind + "'");
}

}  // namespace

System build_recipe(const Json& recipe, const Budget& budget, const std::string& path) {
    using namespace fields;
    require_object(recipe, path);
    System system = build_kind(recipe, budget, path);
    const Json* post = optional(recipe, "post");
    if (!post) {
        return system;
    }
    const std::string post_path = child(path, "post");
    require_array(*post, post_path);
    for (std::size_t i = 0; i < post->size(); ++i) {
        const Json& step = (*post)[i];
        const std::string at = child(post_path, i);
        require_object(step, at);
        const std::string op = get_string(step, "op", at);
        if (op == "interleave_identity") {
            allow_keys(step, at, {"op", "position"});
            const std::string position = get_string(step, "position", at, "first");
            if (position != "first" && position != "second") {
                throw ConfigError(child(at, "position"), "expected first or second");
            }
            const bool first = position == "first";
            system.family = interleave_identity(
                system.family, first ? IdentityPosition::First : IdentityPosition::Second);
            system.name = (first ? "[I,f](" : "[f,I](") + system.name + ")";
        } else if (op == "block") {
            allow_keys(step, at, {"op", "n"});
            const std::size_t n = get_positive(step, "n", at);
            system.family = block_family(system.family, n);
            system.name = "block" + std::to_string(n) + "(" + system.name + ")";
        } else if (op == "powers") {
            allow_keys(step, at, {"op", "exponents"});
            const Json& list = required(step, "exponents", at);
            require_array(list, child(at, "exponents"));
            std::vector<std::size_t> exponents;
            std::string tag;
            for (std::size_t j = 0; j < list.size(); ++j) {
                exponents.push_back(as_uint(list[j], child(child(at, "exponents"), j)));
                tag += (j ? "," : "") + std::to_string(exponents.back());
            }
            if (exponents.empty()) {
                throw ConfigError(child(at, "exponents"), "must not be empty");
            }
            if (system.family.period() != 1) {
                throw ConfigError(child(at, "op"), "powers need an autonomous family");
            }
            system.family = power_family(system.family, exponents);
            system.name = "powers[" + tag + "](" + system.name + ")";
        } else if (op == "product") {
            allow_keys(step, at, {"op", "arity"});
            const std::size_t arity = get_positive(step, "arity", at);
            if (arity < 2) {
                throw ConfigError(child(at, "arity"), "must be at least 2");
            }
            system = product_system(system, arity, budget);
        } else {
            throw ConfigError(child(at, "op"), "unknown combinator '" + op + "'");
        }
    }
    return system;
}

}  // namespace hyperdyn
