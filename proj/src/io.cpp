#include "hyperdyn/io.hpp"

#include <fstream>
#include <unordered_map>

#include "json_fields.hpp"

namespace hyperdyn {

using namespace fields;

namespace {

PointId point_ref(const Json& value, const std::unordered_map<std::string, PointId>& index,
                  const std::string& path) {
    const std::string label = as_string(value, path);
    const auto it = index.find(label);
    if (it == index.end()) {
        throw ConfigError(path, "unknown point '" + label + "'");
    }
    return it->second;
}

}  // namespace

System parse_system(const Json& doc, const std::string& path) {
    require_object(doc, path);
    allow_keys(doc, path,
               {"name", "points", "metric", "open_base", "open_names", "maps", "commutative",
                "discretized"});

    const Json& points = required(doc, "points", path);
    const std::string points_path = child(path, "points");
    require_array(points, points_path);
    if (points.empty()) {
        throw ConfigError(points_path, "must not be empty");
    }
    std::vector<std::string> labels;
    std::unordered_map<std::string, PointId> index;
    for (std::size_t i = 0; i < points.size(); ++i) {
        labels.push_back(as_string(points[i], child(points_path, i)));
        if (!index.emplace(labels.back(), static_cast<PointId>(i)).second) {
            throw ConfigError(child(points_path, i), "duplicate point '" + labels.back() + "'");
        }
    }
    const std::size_t n = labels.size();

    const Json& metric = required(doc, "metric", path);
    const std::string metric_path = child(path, "metric");
    require_array(metric, metric_path);
    if (metric.size() != n) {
        throw ConfigError(metric_path, "expected " + std::to_string(n) + " rows");
    }
    std::vector<Rational> values;
    values.reserve(n * n);
    for (std::size_t i = 0; i < n; ++i) {
        const std::string row_path = child(metric_path, i);
        require_array(metric[i], row_path);
        if (metric[i].size() != n) {
            throw ConfigError(row_path, "expected " + std::to_string(n) + " entries");
        }
        for (std::size_t j = 0; j < n; ++j) {
            values.push_back(as_rational(metric[i][j], child(row_path, j)));
        }
    }
    std::shared_ptr<const MetricOracle> oracle;
    try {
        oracle = std::make_shared<DenseMetric>(n, std::move(values));
    } catch (const InputError& e) {
        throw ConfigError(metric_path, e.what());
    }

    std::vector<OpenSet> opens;
    if (const Json* base = optional(doc, "open_base")) {
        const std::string base_path = child(path, "open_base");
        require_array(*base, base_path);
        const Json* names = optional(doc, "open_names");
        if (names) {
            require_array(*names, child(path, "open_names"));
            if (names->size() != base->size()) {
                throw ConfigError(child(path, "open_names"), "must match open_base in length");
            }
        }
        for (std::size_t i = 0; i < base->size(); ++i) {
            const std::string set_path = child(base_path, i);
            require_array((*base)[i], set_path);
            PointSet set(n);
            std::string name = "{";
            for (std::size_t j = 0; j < (*base)[i].size(); ++j) {
                const PointId x = point_ref((*base)[i][j], index, child(set_path, j));
                set.set(x);
            }
            if (set.none()) {
                throw ConfigError(set_path, "open sets must be nonempty");
            }
            for (PointId x : members(set)) {
                name += (name.size() > 1 ? "," : "") + labels[x];
            }
            name += "}";
            if (names) {
                name = as_string((*names)[i], child(child(path, "open_names"), i));
            }
            opens.push_back({std::move(name), std::move(set)});
        }
        if (opens.empty()) {
            throw ConfigError(base_path, "must not be empty");
        }
    } else if (optional(doc, "open_names")) {
        throw ConfigError(child(path, "open_names"), "given without open_base");
    }

    std::optional<SpaceModel> space;
    try {
        space.emplace(labels, oracle, std::move(opens));
    } catch (const InputError& e) {
        throw ConfigError(child(path, "open_base"), e.what());
    }

    const Json& maps = required(doc, "maps", path);
    const std::string maps_path = child(path, "maps");
    require_array(maps, maps_path);
    if (maps.empty()) {
        throw ConfigError(maps_path, "must list at least one map");
    }
    std::vector<Table> tables;
    for (std::size_t m = 0; m < maps.size(); ++m) {
        const std::string map_path = child(maps_path, m);
        require_array(maps[m], map_path);
        if (maps[m].size() != n) {
            throw ConfigError(map_path, "expected an image for each of the " + std::to_string(n) +
                                            " points");
        }
        Table t(n);
        for (std::size_t x = 0; x < n; ++x) {
            t[x] = point_ref(maps[m][x], index, child(map_path, x));
        }
        tables.push_back(std::move(t));
    }
    MapFamily family(n, std::move(tables));
    if (get_bool(doc, "commutative", path, false) && !family.is_commutative()) {
        throw ConfigError(child(path, "commutative"), "claimed, but the maps do not commute");
    }
    return System{get_string(doc, "name", path, "system"), std::move(*space), std::move(family),
                  get_bool(doc, "discretized", path, false)};
}

Json read_json_file(const std::string& file) {
    std::ifstream in(file);
    if (!in) {
        throw InputError("cannot open '" + file + "'");
    }
    try {
        return Json::parse(in);
    } catch (const Json::parse_error& e) {
        throw InputError("'" + file + "' is not valid JSON: " + e.what());
    }
}

System load_system_file(const std::string& file) {
    return parse_system(read_json_file(file));
}

Json system_to_json(const System& system, const Budget& budget) {
    const auto& space = system.space;
    const std::size_t n = space.size();
    if (static_cast<std::uint64_t>(n) * n > budget.max_space_points) {
        throw ResourceError("dense export of " + std::to_string(n) + " points needs " +
                            std::to_string(static_cast<std::uint64_t>(n) * n) +
                            " metric entries, over the budget of " +
                            std::to_string(budget.max_space_points));
    }
    Json doc;
    doc["name"] = system.name;
    doc["points"] = space.labels();
    Json metric = Json::array();
    for (PointId i = 0; i < n; ++i) {
        Json row = Json::array();
        for (PointId j = 0; j < n; ++j) {
            row.push_back(to_string(space.distance(i, j)));
        }
        metric.push_back(std::move(row));
    }
    doc["metric"] = std::move(metric);
    Json base = Json::array();
    Json names = Json::array();
    for (const auto& open : space.open_base()) {
        Json set = Json::array();
        for (PointId x : members(open.members)) {
            set.push_back(space.label(x));
        }
        base.push_back(std::move(set));
        names.push_back(open.name);
    }
    doc["open_base"] = std::move(base);
    doc["open_names"] = std::move(names);
    Json maps = Json::array();
    for (const Table& t : system.family.maps()) {
        Json row = Json::array();
        for (PointId y : t) {
            row.push_back(space.label(y));
        }
        maps.push_back(std::move(row));
    }
    doc["maps"] = std::move(maps);
    doc["commutative"] = system.family.is_commutative();
    doc["discretized"] = system.discretized;
    return doc;
}

Json to_json(const HyperPoint& point) {
    return Json(point.elements());
}

}  // namespace hyperdyn
