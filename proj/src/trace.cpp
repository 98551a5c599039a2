#include "hyperdyn/trace.hpp"

#include <unordered_map>

namespace hyperdyn {

namespace {

std::size_t hash_state(std::size_t phase, const Table& table) {
    std::size_t h = 1469598103934665603ull ^ phase;
    for (PointId v : table) {
        h = (h ^ v) * 1099511628211ull;
    }
    return h;
}

}  // namespace

CompositionTrace CompositionTrace::build(const MapFamily& family, const Budget& budget) {
    CompositionTrace trace;
    trace.points_ = family.points();
    trace.identity_ = identity_table(family.points());
    const std::size_t p = family.period();

    // Phase of ω_n is n mod p: the next map applied is f_{n+1}.
    std::unordered_multimap<std::size_t, std::uint64_t> seen;
    Table current = family.step(1);
    for (std::uint64_t n = 1;; ++n) {
        const std::size_t phase = n % p;
        const std::size_t h = hash_state(phase, current);
        auto [lo, hi] = seen.equal_range(h);
        for (auto it = lo; it != hi; ++it) {
            const std::uint64_t earlier = it->second;
            if (earlier % p == phase && trace.tables_[earlier - 1] == current) {
                trace.preperiod_ = earlier;
                trace.cycle_ = n - earlier;
                return trace;
            }
        }
        if ((n + 1) * family.points() > budget.max_trace_entries) {
            throw ResourceError("composition trace exceeds budget of " +
                                std::to_string(budget.max_trace_entries) + " table entries");
        }
        seen.emplace(h, n);
        trace.tables_.push_back(current);
        current = compose(family.step(n + 1), current);
    }
}

std::uint64_t CompositionTrace::fold(std::uint64_t n) const {
    if (n <= tables_.size()) {
        return n;
    }
    return preperiod_ + (n - preperiod_) % cycle_;
}

const Table& CompositionTrace::omega(std::uint64_t n) const {
    if (n == 0) {
        return identity_;
    }
    return tables_[fold(n) - 1];
}

TracedSystem TracedSystem::build(System system, const Budget& budget) {
    validate(system);
    CompositionTrace trace = CompositionTrace::build(system.family, budget);
    return TracedSystem{std::move(system), std::move(trace)};
}

}  // namespace hyperdyn
