#include "hyperdyn/experiment.hpp"

#include <atomic>
#include <chrono>
#include <cmath>
#include <filesystem>
#include <sstream>
#include <thread>

#include "hyperdyn/detectors.hpp"
#include "hyperdyn/entropy.hpp"
#include "hyperdyn/io.hpp"
#include "hyperdyn/zoo.hpp"
#include "json_fields.hpp"

namespace hyperdyn {

using namespace fields;

Target parse_target(const std::string& text) {
    if (text == "base") {
        return {};
    }
    const std::string prefix = "lifted:";
    if (text.rfind(prefix, 0) == 0) {
        const std::string digits = text.substr(prefix.size());
        if (!digits.empty() && digits.size() <= 6 &&
            digits.find_first_not_of("0123456789") == std::string::npos) {
            const std::size_t m = std::stoul(digits);
            if (m >= 1) {
                return Target{m};
            }
        }
    }
    throw InputError("target must be 'base' or 'lifted:M' with M >= 1, got '" + text + "'");
}

std::string to_string(const Target& target) {
    return target.is_lifted() ? "lifted:" + std::to_string(target.lifted) : "base";
}

const std::vector<std::string>& supported_properties() {
    static const std::vector<std::string> names = {
        "dense_periodic",   "transitive",         "total_transitive", "weak_mixing",
        "topological_mixing", "sensitive",        "cofinitely_sensitive", "equicontinuous",
        "li_yorke",         "expansive",          "chaotic_dependence", "entropy",
        "separated_entropy", "hyper_entropy"};
    return names;
}

namespace {

/// "auto" (half the smallest positive distance) or a positive rational.
Json threshold_param(const Json& query, std::string_view key, const std::string& path) {
    const Json& v = required(query, key, path);
    if (v.is_string() && v.get<std::string>() == "auto") {
        return "auto";
    }
    const Rational r = as_rational(v, child(path, key));
    if (r <= 0) {
        throw ConfigError(child(path, key), "must be positive");
    }
    return to_string(r);
}

Rational resolve_threshold(const Json& value, const SpaceModel& space) {
    if (value.get<std::string>() == "auto") {
        const auto scale = space.metric().positive_values();
        return scale.empty() ? Rational(1, 2) : scale.front() / 2;
    }
    return parse_rational(value.get<std::string>());
}

}  // namespace

PropertyQuery parse_query(const Json& query, const std::string& path) {
    require_object(query, path);
    PropertyQuery q;
    q.property = get_string(query, "property", path);
    Json& p = q.params;
    auto horizon = [&] { p["horizon"] = get_uint(query, "horizon", path, 0); };
    auto witness_limit = [&] { p["witness_limit"] = get_positive(query, "witness_limit", path, 64); };
    const std::string& name = q.property;
    if (name == "dense_periodic") {
        allow_keys(query, path, {"property", "witness_limit"});
        witness_limit();
    } else if (name == "transitive" || name == "topological_mixing" || name == "chaotic_dependence") {
        allow_keys(query, path, {"property", "horizon", "witness_limit"});
        horizon();
        witness_limit();
    } else if (name == "total_transitive") {
        allow_keys(query, path, {"property", "max_n", "horizon", "witness_limit"});
        p["max_n"] = get_positive(query, "max_n", path, 3);
        horizon();
        witness_limit();
    } else if (name == "weak_mixing") {
        allow_keys(query, path, {"property", "k", "horizon", "witness_limit"});
        p["k"] = get_positive(query, "k", path, 2);
        horizon();
        witness_limit();
    } else if (name == "sensitive" || name == "cofinitely_sensitive" || name == "expansive") {
        allow_keys(query, path, {"property", "delta", "horizon", "witness_limit"});
        p["delta"] = threshold_param(query, "delta", path);
        horizon();
        witness_limit();
    } else if (name == "equicontinuous") {
        allow_keys(query, path, {"property", "mode"});
        const std::string mode = get_string(query, "mode", path, "uniform");
        if (mode != "uniform" && mode != "pointwise") {
            throw ConfigError(child(path, "mode"), "expected uniform or pointwise");
        }
        p["mode"] = mode;
    } else if (name == "li_yorke") {
        allow_keys(query, path, {"property", "delta", "horizon", "window", "min_set_size", "witness_limit"});
        p["delta"] = threshold_param(query, "delta", path);
        horizon();
        p["window"] = get_positive(query, "window", path, 8);
        p["min_set_size"] = get_positive(query, "min_set_size", path, 2);
        witness_limit();
    } else if (name == "entropy") {
        allow_keys(query, path, {"property", "k_max"});
        p["k_max"] = get_positive(query, "k_max", path, 8);
    } else if (name == "separated_entropy") {
        allow_keys(query, path, {"property", "epsilon", "n_max"});
        p["epsilon"] = threshold_param(query, "epsilon", path);
        p["n_max"] = get_positive(query, "n_max", path, 8);
    } else if (name == "hyper_entropy") {
        allow_keys(query, path, {"property", "m", "k_max"});
        p["m"] = get_positive(query, "m", path, 2);
        p["k_max"] = get_positive(query, "k_max", path, 6);
    } else {
        throw ConfigError(child(path, "property"), "unknown property '" + name + "'");
    }
    return q;
}

ExperimentConfig parse_config(const Json& doc, const Budget& defaults, const std::string& base_dir) {
    require_object(doc, "");
    allow_keys(doc, "", {"system", "target", "queries", "output", "budget", "workers", "timing"});
    ExperimentConfig config;
    config.base_dir = base_dir;

    const Json& system = required(doc, "system", "");
    require_object(system, "/system");
    if (system.size() != 1) {
        throw ConfigError("/system", "expected exactly one of recipe, file, inline");
    }
    allow_keys(system, "/system", {"recipe", "file", "inline"});
    if (const Json* file = optional(system, "file")) {
        as_string(*file, "/system/file");
    } else {
        require_object(system.begin().value(), "/system/" + system.begin().key());
    }
    config.system = system;

    if (const Json* target = optional(doc, "target")) {
        try {
            config.target = parse_target(as_string(*target, "/target"));
        } catch (const ConfigError&) {
            throw;
        } catch (const InputError& e) {
            throw ConfigError("/target", e.what());
        }
    }

    const Json& queries = required(doc, "queries", "");
    require_array(queries, "/queries");
    if (queries.empty()) {
        throw ConfigError("/queries", "must list at least one query");
    }
    for (std::size_t i = 0; i < queries.size(); ++i) {
        config.queries.push_back(parse_query(queries[i], child("/queries", i)));
    }

    if (const Json* output = optional(doc, "output")) {
        require_object(*output, "/output");
        allow_keys(*output, "/output", {"path", "format"});
        config.output.path = get_string(*output, "path", "/output", "");
        config.output.format = get_string(*output, "format", "/output", "json-lines");
        if (config.output.format != "json-lines" && config.output.format != "csv") {
            throw ConfigError("/output/format", "expected json-lines or csv");
        }
    }

    config.budget = defaults;
    if (const Json* budget = optional(doc, "budget")) {
        require_object(*budget, "/budget");
        for (const auto& [key, value] : budget->items()) {
            bool known = false;
            for (const auto& [name, member] : Budget::fields()) {
                if (key == name) {
                    known = true;
                    const std::uint64_t v = as_uint(value, child("/budget", key));
                    if (v == 0 && name != "wall_clock_ms") {
                        throw ConfigError(child("/budget", key), "must be positive");
                    }
                    config.budget.*member = v;
                }
            }
            if (!known) {
                throw ConfigError(child("/budget", key), "unknown budget key");
            }
        }
    }

    config.workers = get_positive(doc, "workers", "", 1);
    config.timing = get_bool(doc, "timing", "", false);
    return config;
}

ExperimentConfig load_config(const std::string& file) {
    const auto dir = std::filesystem::path(file).parent_path();
    return parse_config(read_json_file(file), Budget::from_environment(),
                        dir.empty() ? "." : dir.string());
}

Json to_json(const ExperimentConfig& config) {
    Json doc;
    doc["system"] = config.system;
    doc["target"] = to_string(config.target);
    Json queries = Json::array();
    for (const auto& q : config.queries) {
        Json entry = {{"property", q.property}};
        for (const auto& [key, value] : q.params.items()) {
            entry[key] = value;
        }
        queries.push_back(std::move(entry));
    }
    doc["queries"] = std::move(queries);
    doc["output"] = {{"path", config.output.path}, {"format", config.output.format}};
    Json budget = Json::object();
    for (const auto& [name, member] : Budget::fields()) {
        budget[std::string(name)] = config.budget.*member;
    }
    doc["budget"] = std::move(budget);
    doc["workers"] = config.workers;
    doc["timing"] = config.timing;
    return doc;
}

System build_system(const Json& spec, const Budget& budget, const std::string& base_dir,
                    const std::string& path) {
    require_object(spec, path);
    if (const Json* recipe = optional(spec, "recipe")) {
        return build_recipe(*recipe, budget, child(path, "recipe"));
    }
    if (const Json* inline_doc = optional(spec, "inline")) {
        return parse_system(*inline_doc, child(path, "inline"));
    }
    if (const Json* file = optional(spec, "file")) {
        std::filesystem::path p(as_string(*file, child(path, "file")));
        if (p.is_relative()) {
            p = std::filesystem::path(base_dir) / p;
        }
        try {
            return load_system_file(p.string());
        } catch (const InputError& e) {
            throw ConfigError(child(path, "file"), e.what());
        }
    }
    throw ConfigError(path, "expected one of recipe, file, inline");
}

namespace {

QueryOptions options_of(const Json& params) {
    QueryOptions o;
    if (params.contains("horizon")) {
        o.horizon = params["horizon"].get<std::uint64_t>();
    }
    if (params.contains("witness_limit")) {
        o.witness_limit = params["witness_limit"].get<std::size_t>();
    }
    return o;
}

Json series_json(const EntropySeries& series) {
    Json terms = Json::array();
    for (const auto& t : series.terms) {
        terms.push_back({{"k", t.k},
                         {"count", t.count},
                         {"H", t.h},
                         {"H_over_k", t.rate},
                         {"dropped_preimages", t.dropped_preimages}});
    }
    return {{"terms", terms},
            {"limsup_estimate", series.limsup_estimate},
            {"window", series.window},
            {"exact_terms", series.exact_terms},
            {"log_base", "e"}};
}

Json verdict_record(const Verdict& v, const PropertyQuery& q) {
    return {{"property", q.property},
            {"params", q.params},
            {"status", std::string(to_string(v.status))},
            {"exact", v.exact},
            {"witness", v.witness},
            {"horizon", v.horizon}};
}

Json series_record(const PropertyQuery& q, Json witness, std::uint64_t horizon) {
    return {{"property", q.property},
            {"params", q.params},
            {"status", "Computed"},
            {"exact", true},
            {"witness", std::move(witness)},
            {"horizon", horizon}};
}

}  // namespace

Json evaluate_query(const TracedSystem& system, const PropertyQuery& q, const Budget& budget) {
    const Json& p = q.params;
    const QueryOptions options = options_of(p);
    const std::string& name = q.property;
    if (name == "dense_periodic") {
        return verdict_record(check_dense_periodic(system, options), q);
    }
    if (name == "transitive") {
        return verdict_record(check_transitive(system, options), q);
    }
    if (name == "total_transitive") {
        return verdict_record(
            check_total_transitive(system, p["max_n"].get<std::size_t>(), options, budget), q);
    }
    if (name == "weak_mixing") {
        return verdict_record(check_weak_mixing_order(system, p["k"].get<std::size_t>(), options), q);
    }
    if (name == "topological_mixing") {
        return verdict_record(check_topological_mixing(system, options), q);
    }
    if (name == "chaotic_dependence") {
        return verdict_record(check_chaotic_dependence(system, options), q);
    }
    if (name == "sensitive" || name == "cofinitely_sensitive" || name == "expansive") {
        const Rational delta = resolve_threshold(p["delta"], system.space());
        Verdict v = name == "sensitive"   ? check_sensitive(system, delta, options)
                    : name == "expansive" ? check_expansive(system, delta, options)
                                          : check_cofinitely_sensitive(system, delta, options);
        return verdict_record(v, q);
    }
    if (name == "equicontinuous") {
        const auto mode = p["mode"] == "pointwise" ? EquicontinuityMode::Pointwise
                                                   : EquicontinuityMode::Uniform;
        return verdict_record(check_equicontinuous(system, mode), q);
    }
    if (name == "li_yorke") {
        const Rational delta = resolve_threshold(p["delta"], system.space());
        const auto report = find_scrambled_pairs(system, delta, options,
                                                 p["window"].get<std::size_t>(), budget);
        Json pairs = Json::array();
        for (const auto& pair : report.pairs) {
            if (pairs.size() >= options.witness_limit) {
                break;
            }
            pairs.push_back({{"x", system.space().label(pair.x)},
                             {"y", system.space().label(pair.y)},
                             {"limsup", to_string(pair.limsup)},
                             {"liminf", to_string(pair.liminf)}});
        }
        Json set = Json::array();
        for (PointId x : report.largest_scrambled_set) {
            set.push_back(system.space().label(x));
        }
        Json record = verdict_record(report.li_yorke_sensitive, q);
        record["witness"] = {{"delta", to_string(delta)},
                             {"pair_count", report.pairs.size()},
                             {"pairs", pairs},
                             {"largest_scrambled_set", set},
                             {"scrambled_set_found",
                              set.size() >= p["min_set_size"].get<std::size_t>()},
                             {"li_yorke_sensitive", report.li_yorke_sensitive.witness}};
        return record;
    }
    if (name == "entropy") {
        const std::size_t k_max = p["k_max"].get<std::size_t>();
        return series_record(
            q, series_json(entropy_series(system.system.family, cover_from_base(system.space()),
                                          k_max, budget)),
            k_max);
    }
    if (name == "separated_entropy") {
        const std::size_t n_max = p["n_max"].get<std::size_t>();
        const Rational eps = resolve_threshold(p["epsilon"], system.space());
        return series_record(q, series_json(separated_entropy(system.system, eps, n_max, budget)),
                             n_max);
    }
    if (name == "hyper_entropy") {
        const std::size_t k_max = p["k_max"].get<std::size_t>();
        const auto cmp = hyper_entropy_compare(system.system, p["m"].get<std::size_t>(),
                                               cover_from_base(system.space()), k_max, budget);
        return series_record(q,
                             {{"base", series_json(cmp.base)},
                              {"lifted", series_json(cmp.lifted)},
                              {"dominance", cmp.dominance}},
                             k_max);
    }
    throw InputError("unknown property '" + name + "'");
}

namespace {

Json error_record(const PropertyQuery& q, const std::string& status, const std::string& message) {
    return {{"property", q.property},
            {"params", q.params},
            {"status", status},
            {"exact", false},
            {"witness", {{"message", message}}},
            {"horizon", std::uint64_t{0}}};
}

}  // namespace

RunResult run(const ExperimentConfig& config) {
    const auto started = std::chrono::steady_clock::now();
    const Budget& budget = config.budget;
    RunResult result;
    result.records.resize(config.queries.size());

    // Input errors in the system description are configuration errors and
    // propagate; running out of budget while lifting is recorded per query.
    System base = build_system(config.system, budget, config.base_dir);
    std::optional<TracedSystem> traced;
    std::string setup_error;
    try {
        System target = config.target.is_lifted() ? as_hyper_system(base, config.target.lifted, budget)
                                                  : std::move(base);
        traced.emplace(TracedSystem::build(std::move(target), budget));
    } catch (const ResourceError& e) {
        setup_error = e.what();
    }

    std::vector<char> errored(config.queries.size(), 0);
    std::atomic<std::size_t> next{0};
    auto elapsed_ms = [&] {
        return static_cast<std::uint64_t>(std::chrono::duration_cast<std::chrono::milliseconds>(
                                              std::chrono::steady_clock::now() - started)
                                              .count());
    };
    auto worker = [&] {
        for (std::size_t i = next++; i < config.queries.size(); i = next++) {
            const PropertyQuery& q = config.queries[i];
            const auto t0 = std::chrono::steady_clock::now();
            Json record;
            if (!traced) {
                record = error_record(q, "ResourceError", setup_error);
            } else if (budget.wall_clock_ms > 0 && elapsed_ms() >= budget.wall_clock_ms) {
                record = error_record(q, "ResourceError",
                                      "wall-clock budget of " + std::to_string(budget.wall_clock_ms) +
                                          " ms exhausted before the query started");
            } else {
                try {
                    record = evaluate_query(*traced, q, budget);
                } catch (const EntropyBudgetError& e) {
                    record = error_record(q, "ResourceError", e.what());
                    record["witness"]["partial"] = series_json(e.partial());
                } catch (const ResourceError& e) {
                    record = error_record(q, "ResourceError", e.what());
                } catch (const InputError& e) {
                    record = error_record(q, "InputError", e.what());
                    errored[i] = 1;
                } catch (const std::exception& e) {
                    record = error_record(q, "InternalError", e.what());
                    errored[i] = 1;
                }
            }
            if (config.timing) {
                record["wall_time_ms"] = std::chrono::duration<double, std::milli>(
                                             std::chrono::steady_clock::now() - t0)
                                             .count();
            } else {
                record["wall_time_ms"] = nullptr;
            }
            record["discretized"] = traced ? traced->system.discretized : false;
            result.records[i] = std::move(record);
        }
    };
    const std::size_t workers = std::min(config.workers, config.queries.size());
    if (workers <= 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        for (std::size_t w = 0; w < workers; ++w) {
            pool.emplace_back(worker);
        }
        for (auto& t : pool) {
            t.join();
        }
    }
    result.has_errors = std::any_of(errored.begin(), errored.end(), [](char e) { return e != 0; });
    return result;
}

std::string csv_escape(const std::string& field) {
    if (field.find_first_of(",\"\n") == std::string::npos) {
        return field;
    }
    std::string out = "\"";
    for (char ch : field) {
        out += ch == '"' ? std::string("\"\"") : std::string(1, ch);
    }
    return out + "\"";
}

std::string format_records(const std::vector<Json>& records, const std::string& format) {
    std::ostringstream out;
    if (format == "csv") {
        out << "property,params,status,exact,witness,horizon,wall_time_ms,discretized\n";
        for (const auto& r : records) {
            out << csv_escape(r["property"].get<std::string>()) << ','
                << csv_escape(r["params"].dump()) << ',' << r["status"].get<std::string>() << ','
                << (r["exact"].get<bool>() ? "true" : "false") << ','
                << csv_escape(r["witness"].dump()) << ',' << r["horizon"].dump() << ','
                << (r["wall_time_ms"].is_null() ? "" : r["wall_time_ms"].dump()) << ','
                << (r["discretized"].get<bool>() ? "true" : "false") << '\n';
        }
        return out.str();
    }
    for (const auto& r : records) {
        out << r.dump() << '\n';
    }
    return out.str();
}

}  // namespace hyperdyn
