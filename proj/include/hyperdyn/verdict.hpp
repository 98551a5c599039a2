#pragma once

#include <cstdint>
#include <string>
#include <string_view>

#include "json.hpp"

namespace hyperdyn {

using Json = nlohmann::ordered_json;

enum class Status { Holds, Fails, Inconclusive };

std::string_view to_string(Status status);
Status parse_status(std::string_view text);

/// Outcome of a property check.
///
/// `exact` is set when the verdict is a proof for the finite periodic system:
/// either the witness certifies it directly (a hit, a separation) or the
/// search covered every state the trace can reach. Inconclusive verdicts are
/// never exact and report the horizon they exhausted.
struct Verdict {
    std::string property;
    Json params = Json::object();
    Status status = Status::Inconclusive;
    bool exact = false;
    Json witness = Json::object();
    /// Indices n = 1..horizon were examined.
    std::uint64_t horizon = 0;
    std::uint64_t preperiod = 0;
    std::uint64_t cycle = 0;
};

/// Options shared by the horizon-bounded detectors.
struct QueryOptions {
    /// 0 examines every recorded state (exact search).
    std::uint64_t horizon = 0;
    /// Upper bound on per-item witness entries written into a verdict.
    std::size_t witness_limit = 64;
};

}  // namespace hyperdyn
