#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "hyperdyn/budget.hpp"
#include "hyperdyn/space.hpp"

namespace hyperdyn {

/// A total self-map of a finite space: table[x] is the image of x.
using Table = std::vector<PointId>;

Table identity_table(std::size_t n);
/// outer ∘ inner, i.e. x ↦ outer[inner[x]].
Table compose(const Table& outer, const Table& inner);
bool is_identity(const Table& table);

/// The non-autonomous rule f_1, f_2, ... given by a finite list cycled
/// periodically: f_n = maps[(n - 1) mod p].
class MapFamily {
public:
    MapFamily(std::size_t points, std::vector<Table> maps);

    std::size_t points() const { return points_; }
    std::size_t period() const { return maps_.size(); }
    const std::vector<Table>& maps() const { return maps_; }
    /// f_n for n >= 1.
    const Table& step(std::uint64_t n) const { return maps_[(n - 1) % maps_.size()]; }

    /// f_i ∘ f_j = f_j ∘ f_i for all listed maps.
    bool is_commutative() const;

    friend bool operator==(const MapFamily&, const MapFamily&) = default;

private:
    std::size_t points_;
    std::vector<Table> maps_;
};

/// A space with a family acting on it.
struct System {
    std::string name;
    SpaceModel space;
    MapFamily family;
    /// Set for grid discretizations of interval maps; verdicts then describe
    /// the discretized system only.
    bool discretized = false;
};

/// Throws InputError when the family's tables do not act on the space.
void validate(const System& system);

/// ω_n(x) = f_n(f_{n-1}(... f_1(x))), by direct folding.
PointId omega_eval(const MapFamily& family, std::uint64_t n, PointId x);

/// 𝔽_n: the j-th map is f_{jn} ∘ ... ∘ f_{(j-1)n+1}, so that the k-th state
/// of the block family is ω_{kn}. The result has period p / gcd(p, n).
MapFamily block_family(const MapFamily& family, std::size_t n);

/// The k-fold product system with coordinatewise maps, max-metric and
/// products of basic open sets as its open base.
System product_system(const System& system, std::size_t arity, const Budget& budget);

/// Tables of the coordinatewise family on the k-fold product (point encoding
/// as in ProductMetric).
MapFamily product_family(const MapFamily& family, std::size_t arity, const Budget& budget);

}  // namespace hyperdyn
