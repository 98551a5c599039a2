#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "hyperdyn/budget.hpp"
#include "hyperdyn/trace.hpp"
#include "hyperdyn/verdict.hpp"

namespace hyperdyn {

/// Which system a query runs on: the base, or its hyperspace of sets of
/// size <= lifted.
struct Target {
    std::size_t lifted = 0;

    bool is_lifted() const { return lifted > 0; }
    friend bool operator==(const Target&, const Target&) = default;
};

/// "base" or "lifted:M" with M >= 1.
Target parse_target(const std::string& text);
std::string to_string(const Target& target);

struct PropertyQuery {
    std::string property;
    /// Validated parameters in canonical form (defaults filled in).
    Json params = Json::object();
};

/// Names accepted in "property".
const std::vector<std::string>& supported_properties();

/// Checks a query object and fills in defaults. Errors are ConfigError with
/// JSON-pointer paths under `path`.
PropertyQuery parse_query(const Json& query, const std::string& path);

struct OutputSpec {
    /// Empty means standard output.
    std::string path;
    /// "json-lines" or "csv".
    std::string format = "json-lines";
};

struct ExperimentConfig {
    /// {"recipe": {...}}, {"file": "path"} or {"inline": {...description...}}.
    Json system;
    Target target;
    std::vector<PropertyQuery> queries;
    OutputSpec output;
    Budget budget;
    std::size_t workers = 1;
    /// Fill wall_time_ms; off by default so reports are byte-stable.
    bool timing = false;
    /// Directory that relative "file" paths are resolved against.
    std::string base_dir = ".";
};

/// Budget keys accepted under "budget" (and in HYPERDYN_BUDGET).
ExperimentConfig parse_config(const Json& doc, const Budget& defaults = Budget::from_environment(),
                              const std::string& base_dir = ".");
ExperimentConfig load_config(const std::string& file);
/// Canonical form; parse_config(to_json(c)) reproduces c.
Json to_json(const ExperimentConfig& config);

/// Builds the base system described by a config's "system" field.
System build_system(const Json& spec, const Budget& budget, const std::string& base_dir,
                    const std::string& path = "/system");

/// Runs one query. Exceptions propagate to the caller.
Json evaluate_query(const TracedSystem& system, const PropertyQuery& query, const Budget& budget);

struct RunResult {
    std::vector<Json> records;
    /// Some query hit an input or internal error (resource errors and Fails
    /// verdicts do not count).
    bool has_errors = false;
};

/// One record per query, in query order:
///   {property, params, status, exact, witness, horizon, wall_time_ms, discretized}
/// status is Holds/Fails/Inconclusive for detectors, Computed for entropy
/// series, and ResourceError/InputError/InternalError for failed queries.
RunResult run(const ExperimentConfig& config);

/// json-lines: one compact object per line. csv: one row per record with
/// the witness and params as embedded JSON.
std::string format_records(const std::vector<Json>& records, const std::string& format);

std::string csv_escape(const std::string& field);

}  // namespace hyperdyn
