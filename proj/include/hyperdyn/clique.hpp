#pragma once

#include <cstdint>
#include <vector>

#include "hyperdyn/space.hpp"

namespace hyperdyn {

/// Exact maximum clique by branch and bound with greedy-colouring bounds.
/// `adjacency[v]` must be symmetric and irreflexive. Throws ResourceError once
/// more than `node_budget` search nodes are expanded.
std::vector<PointId> maximum_clique(const std::vector<PointSet>& adjacency,
                                    std::uint64_t node_budget);

}  // namespace hyperdyn
