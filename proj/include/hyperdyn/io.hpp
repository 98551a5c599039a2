#pragma once

#include <string>

#include "hyperdyn/family.hpp"
#include "hyperdyn/hyperspace.hpp"
#include "hyperdyn/verdict.hpp"

namespace hyperdyn {

/// Reads a system description:
///   {"name": "...", "points": ["a", "b"], "metric": [["0", "1"], ["1", "0"]],
///    "open_base": [["a"], ["b"]], "open_names": ["A", "B"],
///    "maps": [["b", "a"]], "commutative": true, "discretized": false}
/// Metric entries are rational strings or integers, map entries are labels,
/// and open_base defaults to singletons. A "commutative": true claim is
/// verified. Errors are ConfigError with the JSON pointer of the bad field.
System parse_system(const Json& doc, const std::string& path = "");

System load_system_file(const std::string& file);

/// The canonical description (dense metric, labels everywhere). Throws
/// ResourceError when the dense matrix would exceed budget.max_space_points
/// entries.
Json system_to_json(const System& system, const Budget& budget = {});

/// Sorted point ids.
Json to_json(const HyperPoint& point);

Json read_json_file(const std::string& file);

}  // namespace hyperdyn
