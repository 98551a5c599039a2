#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "hyperdyn/family.hpp"
#include "hyperdyn/verdict.hpp"

namespace hyperdyn {

struct ShiftOptions {
    /// Symbol appended by the truncated shift.
    std::size_t fill = 0;
    /// Cylinders [w] with 1 <= |w| <= depth form the open base.
    std::size_t depth = 1;
};

/// Words of length L over {0..a-1} with d = 2^-(first difference) and the
/// shift σ(x_1..x_L) = x_2..x_L s, s = fill. Labels are the words.
System make_full_shift(std::size_t alphabet, std::size_t length, ShiftOptions options = {},
                       const Budget& budget = {});

/// Binary words of length K with the adding machine x ↦ x + 100..0, carry
/// moving right and dropped past the last digit. Cylinders of length
/// 1..depth (0 means K) are the open base.
System make_odometer(std::size_t k, std::size_t depth = 0);

enum class IdentityPosition { First, Second };

/// [I, f_1, I, f_2, ...] (First) or [f_1, I, f_2, I, ...] (Second).
MapFamily interleave_identity(const MapFamily& family, IdentityPosition position);

/// [f^e_1, f^e_2, ...] for an autonomous family [f].
MapFamily power_family(const MapFamily& family, const std::vector<std::size_t>& exponents);

enum class IntervalMap { Tent, Logistic, Rotation };

struct IntervalMapSpec {
    IntervalMap kind = IntervalMap::Tent;
    /// r for the logistic map, α for the rotation.
    Rational parameter = 0;
};

/// N cells of [0, 1] represented by their midpoints. Each cell goes to the
/// cell holding the image of its midpoint; the metric is the midpoint
/// distance and the open base consists of runs of `window` adjacent cells.
System make_interval_grid(IntervalMapSpec map, std::size_t cells, std::size_t window = 3);

struct RandomOptions {
    /// Draw permutations instead of arbitrary self-maps.
    bool bijective = false;
};

/// n points with distances k/4 (k uniform in 1..4) repaired to the
/// shortest-path metric, and p uniformly random maps. Discrete topology.
/// Deterministic in seed on every platform.
System make_random_finite(std::size_t points, std::size_t period, std::uint64_t seed,
                          RandomOptions options = {});

/// x ↦ x + step on Z/n with the circular metric min(|i-j|, n-|i-j|) / n.
System make_cyclic_rotation(std::size_t points, std::size_t step = 1);

/// An explicit permutation or self-map table on the discrete space with all
/// distances 1.
System make_table_system(const std::vector<PointId>& table);

/// The identity on n points of the discrete space.
System make_identity(std::size_t points);

/// Builds a system from a recipe object:
///   {"kind": "full_shift", "alphabet": 2, "length": 3, "fill": 0, "depth": 1}
///   {"kind": "odometer", "k": 3}
///   {"kind": "interval_grid", "map": "tent" | "logistic" | "rotation",
///    "r" | "alpha": "p/q", "cells": 32, "window": 3}
///   {"kind": "permutation", "points": 4, "step": 1}  or  {"kind": "permutation", "table": [...]}
///   {"kind": "random_finite", "points": 5, "period": 2, "seed": 7, "bijective": false}
///   {"kind": "identity", "points": 3}
/// followed by an optional "post" list applied in order:
///   {"op": "interleave_identity", "position": "first" | "second"}
///   {"op": "block", "n": 2}, {"op": "powers", "exponents": [1, 2]},
///   {"op": "product", "arity": 2}
/// Errors name the offending field as a JSON pointer relative to `path`.
System build_recipe(const Json& recipe, const Budget& budget = {}, const std::string& path = "");

}  // namespace hyperdyn
