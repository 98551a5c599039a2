#pragma once

#include <cstdint>
#include <string_view>
#include <utility>
#include <vector>

namespace hyperdyn {

/// Hard size limits. Exceeding any of them raises ResourceError; nothing is
/// approximated to stay under a limit.
struct Budget {
    std::uint64_t max_hyper_points = 200'000;
    std::uint64_t max_product_points = 200'000;
    std::uint64_t max_space_points = 1'000'000;
    std::uint64_t max_vietoris_candidates = 100'000;
    /// Sum over recorded tables of their length.
    std::uint64_t max_trace_entries = 50'000'000;
    std::uint64_t max_join_sets = 1u << 20;
    std::uint64_t max_setcover_nodes = 1u << 20;
    std::uint64_t max_clique_nodes = 1u << 22;
    /// 0 disables the ceiling.
    std::uint64_t wall_clock_ms = 0;

    /// Defaults, overridden by HYPERDYN_BUDGET when it is set.
    static Budget from_environment();

    /// Applies "key=value,key=value" overrides. A bare integer sets
    /// max_hyper_points. Throws InputError on unknown keys.
    void apply_overrides(std::string_view spec);

    using Field = std::pair<std::string_view, std::uint64_t Budget::*>;
    /// Override keys and the members they set, in a fixed order.
    static const std::vector<Field>& fields();

    friend bool operator==(const Budget&, const Budget&) = default;
};

}  // namespace hyperdyn
