#pragma once

#include <cstddef>
#include <cstdint>
#include <memory>
#include <vector>

#include "hyperdyn/family.hpp"

namespace hyperdyn {

/// The tables ω_1, ω_2, ... of a periodic family, recorded up to the first
/// repetition of the state (n mod p, ω_n).
///
/// With preperiod τ and cycle c (both minimal), ω_{n+c} = ω_n for n >= τ,
/// so ω_1 .. ω_{τ+c-1} are all the states the system ever visits and every
/// later index folds back into [τ, τ+c-1].
class CompositionTrace {
public:
    static CompositionTrace build(const MapFamily& family, const Budget& budget = {});

    std::uint64_t preperiod() const { return preperiod_; }
    std::uint64_t cycle() const { return cycle_; }
    /// τ + c - 1: the number of recorded tables.
    std::uint64_t distinct() const { return tables_.size(); }
    std::size_t points() const { return points_; }

    /// The recorded index representing ω_n (n >= 1).
    std::uint64_t fold(std::uint64_t n) const;
    /// ω_n for n >= 1; ω_0 is the identity.
    const Table& omega(std::uint64_t n) const;
    PointId eval(std::uint64_t n, PointId x) const { return omega(n)[x]; }
    /// Indices τ .. τ+c-1, the part that recurs forever.
    bool in_cycle(std::uint64_t index) const { return index >= preperiod_; }

private:
    std::size_t points_ = 0;
    std::vector<Table> tables_;
    Table identity_;
    std::uint64_t preperiod_ = 1;
    std::uint64_t cycle_ = 1;
};

/// A system bundled with its composition trace. Detectors take this so that
/// the trace is built once and shared read-only between queries.
struct TracedSystem {
    System system;
    CompositionTrace trace;

    static TracedSystem build(System system, const Budget& budget = {});

    const SpaceModel& space() const { return system.space; }
};

}  // namespace hyperdyn
