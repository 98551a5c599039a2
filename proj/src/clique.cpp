#include "hyperdyn/clique.hpp"

#include <algorithm>
#include <string>

namespace hyperdyn {

namespace {

struct CliqueSearch {
    const std::vector<PointSet>& adjacency;
    std::uint64_t budget;
    std::uint64_t nodes = 0;
    std::vector<PointId> current;
    std::vector<PointId> best;

    // Greedy colouring of `candidates`; returns vertices in colour order with
    // the colour (1-based) of each.
    void colour(const PointSet& candidates, std::vector<PointId>& order,
                std::vector<std::size_t>& colours) const {
        PointSet uncoloured = candidates;
        std::size_t c = 0;
        while (uncoloured.any()) {
            ++c;
            PointSet available = uncoloured;
            for (auto v = available.find_first(); v != PointSet::npos; v = available.find_next(v)) {
                order.push_back(static_cast<PointId>(v));
                colours.push_back(c);
                uncoloured.reset(v);
                available -= adjacency[v];
            }
        }
    }

    void expand(PointSet candidates) {
        if (++nodes > budget) {
            throw ResourceError("maximum clique search exceeded " + std::to_string(budget) +
                                " nodes");
        }
        std::vector<PointId> order;
        std::vector<std::size_t> colours;
        colour(candidates, order, colours);
        for (std::size_t i = order.size(); i-- > 0;) {
            if (current.size() + colours[i] <= best.size()) {
                return;
            }
            const PointId v = order[i];
            current.push_back(v);
            PointSet next = candidates & adjacency[v];
            if (next.none()) {
                if (current.size() > best.size()) {
                    best = current;
                }
            } else {
                expand(std::move(next));
            }
            current.pop_back();
            candidates.reset(v);
        }
    }
};

}  // namespace

std::vector<PointId> maximum_clique(const std::vector<PointSet>& adjacency,
                                    std::uint64_t node_budget) {
    if (adjacency.empty()) {
        return {};
    }
    CliqueSearch search{adjacency, node_budget, 0, {}, {}};
    PointSet all(adjacency.size());
    all.set();
    search.expand(std::move(all));
    std::sort(search.best.begin(), search.best.end());
    return search.best;
}

}  // namespace hyperdyn
