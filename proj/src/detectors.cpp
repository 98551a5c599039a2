#include "hyperdyn/detectors.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <unordered_map>

#include "hyperdyn/clique.hpp"

namespace hyperdyn {

std::string_view to_string(Status status) {
    switch (status) {
        case Status::Holds:
            return "Holds";
        case Status::Fails:
            return "Fails";
        case Status::Inconclusive:
            return "Inconclusive";
    }
    return "Inconclusive";
}

Status parse_status(std::string_view text) {
    if (text == "Holds") {
        return Status::Holds;
    }
    if (text == "Fails") {
        return Status::Fails;
    }
    if (text == "Inconclusive") {
        return Status::Inconclusive;
    }
    throw InputError("unknown status '" + std::string(text) + "'");
}

namespace {

using TimeSet = boost::dynamic_bitset<std::uint64_t>;

std::uint64_t examined(const CompositionTrace& trace, const QueryOptions& options) {
    return options.horizon == 0 ? trace.distinct() : std::min(options.horizon, trace.distinct());
}

Verdict start(const TracedSystem& system, std::string property, Json params, std::uint64_t horizon) {
    Verdict v;
    v.property = std::move(property);
    v.params = std::move(params);
    v.horizon = horizon;
    v.preperiod = system.trace.preperiod();
    v.cycle = system.trace.cycle();
    return v;
}

void require_positive(const Rational& delta, const char* what) {
    if (delta <= 0) {
        throw InputError(std::string(what) + " must be positive, got " + to_string(delta));
    }
}

/// Distinct images of `ids` under `table`, ascending.
std::vector<PointId> image_points(const Table& table, const std::vector<PointId>& ids,
                                  std::vector<char>& mark) {
    std::vector<PointId> out;
    for (PointId x : ids) {
        const PointId y = table[x];
        if (!mark[y]) {
            mark[y] = 1;
            out.push_back(y);
        }
    }
    for (PointId y : out) {
        mark[y] = 0;
    }
    std::sort(out.begin(), out.end());
    return out;
}

Json label_list(const SpaceModel& space, const std::vector<PointId>& ids, std::size_t limit) {
    Json out = Json::array();
    for (std::size_t i = 0; i < ids.size() && i < limit; ++i) {
        out.push_back(space.label(ids[i]));
    }
    return out;
}

/// hits[u * |B| + v] has bit n-1 set iff ω_n(U) ∩ V ≠ ∅, for n = 1..horizon.
std::vector<TimeSet> hit_matrix(const TracedSystem& system, std::uint64_t horizon) {
    const auto& opens = system.space().open_base();
    const std::size_t b = opens.size();
    const std::size_t n_points = system.space().size();
    std::vector<TimeSet> hits(b * b, TimeSet(horizon));
    std::vector<char> mark(n_points, 0);
    PointSet img(n_points);
    for (std::size_t u = 0; u < b; ++u) {
        const auto ids = members(opens[u].members);
        for (std::uint64_t n = 1; n <= horizon; ++n) {
            img.reset();
            for (PointId y : image_points(system.trace.omega(n), ids, mark)) {
                img.set(y);
            }
            for (std::size_t v = 0; v < b; ++v) {
                if (img.intersects(opens[v].members)) {
                    hits[u * b + v].set(n - 1);
                }
            }
        }
    }
    return hits;
}

Json image_trace(const TracedSystem& system, const PointSet& open, std::uint64_t horizon,
                 std::size_t limit) {
    const auto ids = members(open);
    std::vector<char> mark(system.space().size(), 0);
    Json out = Json::array();
    for (std::uint64_t n = 1; n <= horizon && n <= limit; ++n) {
        const auto img = image_points(system.trace.omega(n), ids, mark);
        out.push_back({{"n", n}, {"points", label_list(system.space(), img, limit)}});
    }
    return out;
}

/// Smallest K such that every n >= K lies in `times` (times over 1..T, with
/// the cycle [τ, T] fully set). Assumes the cycle condition was checked.
std::uint64_t cofinal_start(const TimeSet& times, std::uint64_t total) {
    std::uint64_t k = total;
    while (k > 1 && times.test(k - 2)) {
        --k;
    }
    return k;
}

/// First index in [from, to] (1-based) missing from `times`, or 0.
std::uint64_t first_missing(const TimeSet& times, std::uint64_t from, std::uint64_t to) {
    for (std::uint64_t n = from; n <= to; ++n) {
        if (!times.test(n - 1)) {
            return n;
        }
    }
    return 0;
}

std::optional<std::uint64_t> minimal_return(const CompositionTrace& trace,
                                            const std::vector<char>& fixed_at) {
    // fixed_at[j] for recorded index j = 1..T (slot 0 unused). Only n <= T
    // can be minimal: a valid n >= τ stays valid after subtracting multiples
    // of c as long as it remains >= τ.
    const std::uint64_t total = trace.distinct();
    const std::uint64_t tau = trace.preperiod();
    const std::uint64_t c = trace.cycle();
    for (std::uint64_t n = 1; n <= total; ++n) {
        if (!fixed_at[n]) {
            continue;
        }
        bool valid = true;
        std::uint64_t k = 1;
        for (; k * n < tau && valid; ++k) {
            valid = fixed_at[trace.fold(k * n)] != 0;
        }
        // From here on the folded indices step by n mod c around the cycle.
        const std::uint64_t steps = c / std::gcd(n % c == 0 ? c : n % c, c);
        for (std::uint64_t s = 0; s < steps && valid; ++s, ++k) {
            valid = fixed_at[trace.fold(k * n)] != 0;
        }
        if (valid) {
            return n;
        }
    }
    return std::nullopt;
}

}  // namespace

std::optional<std::uint64_t> minimal_period(const CompositionTrace& trace, PointId x) {
    std::vector<char> fixed_at(trace.distinct() + 1, 0);
    for (std::uint64_t j = 1; j <= trace.distinct(); ++j) {
        fixed_at[j] = trace.eval(j, x) == x;
    }
    return minimal_return(trace, fixed_at);
}

std::optional<std::uint64_t> minimal_set_period(const CompositionTrace& trace, const HyperPoint& set) {
    std::vector<char> fixed_at(trace.distinct() + 1, 0);
    for (std::uint64_t j = 1; j <= trace.distinct(); ++j) {
        fixed_at[j] = image(trace.omega(j), set) == set;
    }
    return minimal_return(trace, fixed_at);
}

Verdict check_dense_periodic(const TracedSystem& system, const QueryOptions& options) {
    const auto& space = system.space();
    Verdict v = start(system, "dense_periodic", Json::object(), system.trace.distinct());
    v.exact = true;
    std::vector<std::optional<std::uint64_t>> period(space.size());
    for (PointId x = 0; x < space.size(); ++x) {
        period[x] = minimal_period(system.trace, x);
    }
    Json entries = Json::array();
    const auto& opens = space.open_base();
    for (const auto& open : opens) {
        std::optional<std::pair<std::uint64_t, PointId>> best;
        for (PointId x : members(open.members)) {
            if (period[x] && (!best || std::make_pair(*period[x], x) < *best)) {
                best = std::make_pair(*period[x], x);
            }
        }
        if (!best) {
            v.status = Status::Fails;
            v.witness = {{"open", open.name},
                         {"points", label_list(space, members(open.members), options.witness_limit)}};
            return v;
        }
        if (entries.size() < options.witness_limit) {
            entries.push_back({{"open", open.name}, {"x", space.label(best->second)}, {"n", best->first}});
        }
    }
    v.status = Status::Holds;
    v.witness = {{"opens", opens.size()},
                 {"periodic", entries},
                 {"truncated", entries.size() < opens.size()}};
    return v;
}

Verdict check_transitive(const TracedSystem& system, const QueryOptions& options) {
    const std::uint64_t horizon = examined(system.trace, options);
    Verdict v = start(system, "transitive", {{"horizon", options.horizon}}, horizon);
    const auto& opens = system.space().open_base();
    const std::size_t b = opens.size();
    const auto hits = hit_matrix(system, horizon);
    Json entries = Json::array();
    std::uint64_t max_first = 0;
    for (std::size_t u = 0; u < b; ++u) {
        for (std::size_t w = 0; w < b; ++w) {
            const TimeSet& t = hits[u * b + w];
            const auto first = t.find_first();
            if (first == TimeSet::npos) {
                v.exact = horizon == system.trace.distinct();
                v.status = v.exact ? Status::Fails : Status::Inconclusive;
                v.witness = {{"U", opens[u].name},
                             {"V", opens[w].name},
                             {"images", image_trace(system, opens[u].members, horizon,
                                                    options.witness_limit)}};
                return v;
            }
            max_first = std::max<std::uint64_t>(max_first, first + 1);
            if (entries.size() < options.witness_limit) {
                entries.push_back({{"U", opens[u].name}, {"V", opens[w].name}, {"n", first + 1}});
            }
        }
    }
    v.status = Status::Holds;
    v.exact = true;
    v.witness = {{"pairs", b * b},
                 {"max_first_hit", max_first},
                 {"hits", entries},
                 {"truncated", entries.size() < b * b}};
    return v;
}

Verdict check_total_transitive(const TracedSystem& system, std::size_t max_n,
                               const QueryOptions& options, const Budget& budget) {
    if (max_n == 0) {
        throw InputError("total transitivity needs max_n >= 1");
    }
    Verdict v = start(system, "total_transitive", {{"max_n", max_n}, {"horizon", options.horizon}},
                      0);
    Json blocks = Json::array();
    bool inconclusive = false;
    for (std::size_t n = 1; n <= max_n; ++n) {
        System block = system.system;
        block.family = block_family(system.system.family, n);
        const auto traced = TracedSystem::build(std::move(block), budget);
        Verdict part = check_transitive(traced, options);
        v.horizon = std::max(v.horizon, part.horizon);
        blocks.push_back({{"n", n}, {"status", to_string(part.status)}});
        if (part.status == Status::Fails) {
            v.status = Status::Fails;
            v.exact = part.exact;
            v.witness = {{"failing_n", n}, {"blocks", blocks}, {"transitivity", part.witness}};
            return v;
        }
        inconclusive = inconclusive || part.status == Status::Inconclusive;
    }
    v.status = inconclusive ? Status::Inconclusive : Status::Holds;
    v.exact = !inconclusive;
    v.witness = {{"blocks", blocks}};
    return v;
}

Verdict check_weak_mixing_order(const TracedSystem& system, std::size_t k,
                                const QueryOptions& options) {
    if (k == 0) {
        throw InputError("weak mixing order must be >= 1");
    }
    const std::uint64_t horizon = examined(system.trace, options);
    Verdict v = start(system, "weak_mixing", {{"k", k}, {"horizon", options.horizon}}, horizon);
    const auto& opens = system.space().open_base();
    const std::size_t b = opens.size();
    const auto hits = hit_matrix(system, horizon);

    // Distinct hitting-time sets, each with the first pair producing it.
    std::vector<std::pair<TimeSet, std::size_t>> masks;
    {
        std::map<std::vector<std::uint64_t>, std::size_t> seen;
        for (std::size_t i = 0; i < hits.size(); ++i) {
            std::vector<std::uint64_t> blocks(hits[i].num_blocks());
            boost::to_block_range(hits[i], blocks.begin());
            if (seen.emplace(blocks, masks.size()).second) {
                masks.emplace_back(hits[i], i);
            }
        }
    }
    // Only inclusion-minimal masks can make a tuple fail.
    std::vector<std::size_t> minimal;
    for (std::size_t i = 0; i < masks.size(); ++i) {
        bool dominated = false;
        for (std::size_t j = 0; j < masks.size() && !dominated; ++j) {
            dominated = j != i && masks[j].first.is_proper_subset_of(masks[i].first);
        }
        if (!dominated) {
            minimal.push_back(i);
        }
    }

    auto pair_json = [&](std::size_t pair) {
        return Json{{"U", opens[pair / b].name}, {"V", opens[pair % b].name}};
    };

    // Multisets of size k over the minimal masks, in lexicographic order.
    std::vector<std::size_t> pick(k, 0);
    Json sample = Json::array();
    std::uint64_t checked = 0;
    const std::size_t m = minimal.size();
    while (true) {
        TimeSet common = masks[minimal[pick[0]]].first;
        for (std::size_t i = 1; i < k; ++i) {
            common &= masks[minimal[pick[i]]].first;
        }
        ++checked;
        if (common.none()) {
            v.exact = horizon == system.trace.distinct();
            v.status = v.exact ? Status::Fails : Status::Inconclusive;
            Json tuple = Json::array();
            for (std::size_t i = 0; i < k; ++i) {
                tuple.push_back(pair_json(masks[minimal[pick[i]]].second));
            }
            v.witness = {{"pairs", tuple}, {"common_times", Json::array()}};
            return v;
        }
        if (sample.size() < options.witness_limit) {
            Json tuple = Json::array();
            for (std::size_t i = 0; i < k; ++i) {
                tuple.push_back(pair_json(masks[minimal[pick[i]]].second));
            }
            sample.push_back({{"pairs", tuple}, {"n", common.find_first() + 1}});
        }
        std::size_t i = k;
        while (i > 0 && pick[i - 1] == m - 1) {
            --i;
        }
        if (i == 0) {
            break;
        }
        ++pick[i - 1];
        for (std::size_t j = i; j < k; ++j) {
            pick[j] = pick[i - 1];
        }
    }
    v.status = Status::Holds;
    v.exact = true;
    v.witness = {{"distinct_hit_sets", masks.size()},
                 {"minimal_hit_sets", m},
                 {"tuples_checked", checked},
                 {"sample", sample},
                 {"truncated", sample.size() < checked}};
    return v;
}

Verdict check_topological_mixing(const TracedSystem& system, const QueryOptions& options) {
    const std::uint64_t horizon = examined(system.trace, options);
    const std::uint64_t total = system.trace.distinct();
    const std::uint64_t tau = system.trace.preperiod();
    Verdict v = start(system, "topological_mixing", {{"horizon", options.horizon}}, horizon);
    const auto& opens = system.space().open_base();
    const std::size_t b = opens.size();
    const auto hits = hit_matrix(system, horizon);
    std::uint64_t worst_k = 0;
    Json entries = Json::array();
    std::optional<std::size_t> unresolved;
    for (std::size_t i = 0; i < hits.size(); ++i) {
        if (horizon >= tau) {
            if (auto miss = first_missing(hits[i], tau, horizon)) {
                v.status = Status::Fails;
                v.exact = true;
                v.witness = {{"U", opens[i / b].name},
                             {"V", opens[i % b].name},
                             {"missing_n", miss},
                             {"recurs_every", system.trace.cycle()}};
                return v;
            }
        }
        if (horizon < total) {
            unresolved = unresolved.value_or(i);
            continue;
        }
        const std::uint64_t k = cofinal_start(hits[i], total);
        worst_k = std::max(worst_k, k);
        if (entries.size() < options.witness_limit) {
            entries.push_back({{"U", opens[i / b].name}, {"V", opens[i % b].name}, {"K", k}});
        }
    }
    if (unresolved) {
        v.status = Status::Inconclusive;
        v.witness = {{"U", opens[*unresolved / b].name}, {"V", opens[*unresolved % b].name}};
        return v;
    }
    v.status = Status::Holds;
    v.exact = true;
    v.witness = {{"max_K", worst_k}, {"pairs", entries}, {"truncated", entries.size() < hits.size()}};
    return v;
}

namespace {

/// exceeds[u] bit n-1 set iff diam(ω_n(U)) > δ.
std::vector<TimeSet> diameter_flags(const TracedSystem& system, const Rational& delta,
                                    std::uint64_t horizon, bool stop_at_first) {
    const auto& space = system.space();
    const auto& opens = space.open_base();
    std::vector<TimeSet> flags(opens.size(), TimeSet(horizon));
    std::vector<char> mark(space.size(), 0);
    for (std::size_t u = 0; u < opens.size(); ++u) {
        const auto ids = members(opens[u].members);
        for (std::uint64_t n = 1; n <= horizon; ++n) {
            const auto img = image_points(system.trace.omega(n), ids, mark);
            if (space.diameter_exceeds(img, delta)) {
                flags[u].set(n - 1);
                if (stop_at_first) {
                    break;
                }
            }
        }
    }
    return flags;
}

/// Lexicographically smallest x < y in `open` whose n-th images are more
/// than δ apart.
std::pair<PointId, PointId> separating_pair(const TracedSystem& system, const PointSet& open,
                                            std::uint64_t n, const Rational& delta) {
    const auto ids = members(open);
    const Table& t = system.trace.omega(n);
    for (std::size_t i = 0; i < ids.size(); ++i) {
        for (std::size_t j = i + 1; j < ids.size(); ++j) {
            if (system.space().distance(t[ids[i]], t[ids[j]]) > delta) {
                return {ids[i], ids[j]};
            }
        }
    }
    throw std::logic_error("no separating pair although the diameter exceeds delta");
}

Json diameter_sequence(const TracedSystem& system, const PointSet& open, std::uint64_t horizon,
                       std::size_t limit) {
    const auto ids = members(open);
    std::vector<char> mark(system.space().size(), 0);
    Json out = Json::array();
    for (std::uint64_t n = 1; n <= horizon && n <= limit; ++n) {
        const auto img = image_points(system.trace.omega(n), ids, mark);
        out.push_back(to_string(system.space().diameter(img)));
    }
    return out;
}

}  // namespace

Verdict check_sensitive(const TracedSystem& system, const Rational& delta,
                        const QueryOptions& options) {
    require_positive(delta, "sensitivity delta");
    const std::uint64_t horizon = examined(system.trace, options);
    Verdict v = start(system, "sensitive", {{"delta", to_string(delta)}, {"horizon", options.horizon}},
                      horizon);
    const auto& space = system.space();
    const auto& opens = space.open_base();
    const auto flags = diameter_flags(system, delta, horizon, true);
    Json entries = Json::array();
    for (std::size_t u = 0; u < opens.size(); ++u) {
        const auto first = flags[u].find_first();
        if (first == TimeSet::npos) {
            v.exact = horizon == system.trace.distinct();
            v.status = v.exact ? Status::Fails : Status::Inconclusive;
            v.witness = {{"U", opens[u].name},
                         {"diameters", diameter_sequence(system, opens[u].members, horizon,
                                                         options.witness_limit)}};
            return v;
        }
        if (entries.size() < options.witness_limit) {
            const auto [x, y] = separating_pair(system, opens[u].members, first + 1, delta);
            entries.push_back({{"U", opens[u].name},
                               {"n", first + 1},
                               {"x", space.label(x)},
                               {"y", space.label(y)}});
        }
    }
    v.status = Status::Holds;
    v.exact = true;
    v.witness = {{"delta", to_string(delta)}, {"opens", entries},
                 {"truncated", entries.size() < opens.size()}};
    return v;
}

Verdict check_cofinitely_sensitive(const TracedSystem& system, const Rational& delta,
                                   const QueryOptions& options) {
    require_positive(delta, "cofinite sensitivity delta");
    const std::uint64_t horizon = examined(system.trace, options);
    const std::uint64_t total = system.trace.distinct();
    const std::uint64_t tau = system.trace.preperiod();
    Verdict v = start(system, "cofinitely_sensitive",
                      {{"delta", to_string(delta)}, {"horizon", options.horizon}}, horizon);
    const auto& opens = system.space().open_base();
    const auto flags = diameter_flags(system, delta, horizon, false);
    std::uint64_t worst_k = 0;
    Json entries = Json::array();
    std::optional<std::size_t> unresolved;
    for (std::size_t u = 0; u < opens.size(); ++u) {
        if (horizon >= tau) {
            if (auto miss = first_missing(flags[u], tau, horizon)) {
                v.status = Status::Fails;
                v.exact = true;
                v.witness = {{"U", opens[u].name},
                             {"missing_n", miss},
                             {"recurs_every", system.trace.cycle()},
                             {"diameters", diameter_sequence(system, opens[u].members, horizon,
                                                             options.witness_limit)}};
                return v;
            }
        }
        if (horizon < total) {
            unresolved = unresolved.value_or(u);
            continue;
        }
        const std::uint64_t k = cofinal_start(flags[u], total);
        worst_k = std::max(worst_k, k);
        if (entries.size() < options.witness_limit) {
            entries.push_back({{"U", opens[u].name}, {"K", k}});
        }
    }
    if (unresolved) {
        v.status = Status::Inconclusive;
        v.witness = {{"U", opens[*unresolved].name}};
        return v;
    }
    v.status = Status::Holds;
    v.exact = true;
    v.witness = {{"max_K", worst_k}, {"opens", entries}, {"truncated", entries.size() < opens.size()}};
    return v;
}

Verdict check_equicontinuous(const TracedSystem& system, EquicontinuityMode mode) {
    const auto& space = system.space();
    const std::uint64_t total = system.trace.distinct();
    const bool uniform = mode == EquicontinuityMode::Uniform;
    Verdict v = start(system, "equicontinuous", {{"mode", uniform ? "uniform" : "pointwise"}}, total);
    v.exact = true;
    const auto scale = space.metric().positive_values();
    if (scale.empty()) {
        v.status = Status::Holds;
        v.witness = {{"delta_table", Json::array()}};
        return v;
    }
    const Rational finest = scale.front();

    // Largest orbit distance of each pair, and the first time it exceeds a
    // given ε is recomputed only for the reported violation.
    const std::size_t n = space.size();
    auto orbit_max = [&](PointId x, PointId y) {
        Rational best = 0;
        for (std::uint64_t k = 1; k <= total; ++k) {
            best = std::max(best, space.distance(system.trace.eval(k, x), system.trace.eval(k, y)));
        }
        return best;
    };
    auto first_exceed = [&](PointId x, PointId y, const Rational& eps) -> std::uint64_t {
        for (std::uint64_t k = 1; k <= total; ++k) {
            if (space.distance(system.trace.eval(k, x), system.trace.eval(k, y)) > eps) {
                return k;
            }
        }
        return 0;
    };

    // Per-level maxima: level[i] = max orbit distance over pairs with
    // d(x,y) == scale[i] (uniform), or per point (pointwise).
    auto level_of = [&](const Rational& d) {
        return static_cast<std::size_t>(std::lower_bound(scale.begin(), scale.end(), d) - scale.begin());
    };
    const std::size_t levels = scale.size();
    std::vector<std::vector<Rational>> level_max(uniform ? 1 : n, std::vector<Rational>(levels, 0));
    for (PointId x = 0; x < n; ++x) {
        for (PointId y = x + 1; y < n; ++y) {
            const std::size_t lv = level_of(space.distance(x, y));
            const Rational m = orbit_max(x, y);
            if (uniform) {
                level_max[0][lv] = std::max(level_max[0][lv], m);
            } else {
                level_max[x][lv] = std::max(level_max[x][lv], m);
                level_max[y][lv] = std::max(level_max[y][lv], m);
            }
        }
    }
    // delta(ε) = largest δ with prefix-max over levels <= δ at most ε.
    auto delta_table = [&](const std::vector<Rational>& per_level) {
        Json table = Json::array();
        std::vector<Rational> prefix(levels);
        Rational run = 0;
        for (std::size_t i = 0; i < levels; ++i) {
            run = std::max(run, per_level[i]);
            prefix[i] = run;
        }
        for (const Rational& eps : scale) {
            std::optional<Rational> delta;
            for (std::size_t i = 0; i < levels && prefix[i] <= eps; ++i) {
                delta = scale[i];
            }
            table.push_back({{"epsilon", to_string(eps)},
                             {"delta", delta ? Json(to_string(*delta)) : Json(nullptr)}});
        }
        return table;
    };
    auto violation = [&](PointId x_filter, bool filtered) -> Json {
        // Smallest ε without a δ, then lexicographically smallest (n, x, y)
        // among pairs at the finest distance.
        for (const Rational& eps : scale) {
            std::optional<std::tuple<std::uint64_t, PointId, PointId>> best;
            for (PointId x = 0; x < n; ++x) {
                for (PointId y = x + 1; y < n; ++y) {
                    if (filtered && x != x_filter && y != x_filter) {
                        continue;
                    }
                    if (space.distance(x, y) != finest) {
                        continue;
                    }
                    if (auto k = first_exceed(x, y, eps)) {
                        const auto cand = std::make_tuple(k, x, y);
                        if (!best || cand < *best) {
                            best = cand;
                        }
                    }
                }
            }
            if (best) {
                const auto [k, x, y] = *best;
                return {{"epsilon", to_string(eps)},
                        {"delta", to_string(finest)},
                        {"x", space.label(x)},
                        {"y", space.label(y)},
                        {"n", k},
                        {"distance", to_string(space.distance(system.trace.eval(k, x),
                                                              system.trace.eval(k, y)))}};
            }
        }
        return Json::object();
    };

    if (uniform) {
        if (level_max[0][0] > finest) {
            v.status = Status::Fails;
            v.witness = violation(0, false);
            return v;
        }
        v.status = Status::Holds;
        v.witness = {{"delta_table", delta_table(level_max[0])}};
        return v;
    }
    for (PointId x = 0; x < n; ++x) {
        if (level_max[x][0] > finest) {
            v.status = Status::Fails;
            v.witness = violation(x, true);
            v.witness["at"] = space.label(x);
            return v;
        }
    }
    v.status = Status::Holds;
    Json points = Json::array();
    for (PointId x = 0; x < n && points.size() < 16; ++x) {
        points.push_back({{"x", space.label(x)}, {"delta_table", delta_table(level_max[x])}});
    }
    v.witness = {{"points", points}, {"truncated", points.size() < n}};
    return v;
}

namespace {

struct PairExtremes {
    Rational limsup;
    Rational liminf;
};

PairExtremes pair_extremes(const TracedSystem& system, PointId x, PointId y, std::uint64_t from,
                           std::uint64_t to) {
    PairExtremes e{0, -1};
    for (std::uint64_t k = from; k <= to; ++k) {
        const Rational d = system.space().distance(system.trace.eval(k, x), system.trace.eval(k, y));
        e.limsup = std::max(e.limsup, d);
        e.liminf = e.liminf < 0 ? d : std::min(e.liminf, d);
    }
    return e;
}

struct ScrambleScan {
    std::vector<ScrambledPair> pairs;
    std::vector<PointSet> partners;
    bool exact = false;
    std::uint64_t horizon = 0;
    std::uint64_t from = 0;
};

/// Pairs with limsup > threshold and liminf = 0.
ScrambleScan scan_scrambled(const TracedSystem& system, const Rational& threshold,
                            const QueryOptions& options, std::size_t window) {
    ScrambleScan scan;
    scan.horizon = examined(system.trace, options);
    scan.exact = scan.horizon == system.trace.distinct();
    if (scan.exact) {
        scan.from = system.trace.preperiod();
    } else {
        const std::uint64_t w = std::max<std::uint64_t>(window, 1);
        scan.from = scan.horizon > w ? scan.horizon - w + 1 : 1;
    }
    const std::size_t n = system.space().size();
    scan.partners.assign(n, PointSet(n));
    for (PointId x = 0; x < n; ++x) {
        for (PointId y = x + 1; y < n; ++y) {
            const auto e = pair_extremes(system, x, y, scan.from, scan.horizon);
            if (e.limsup > threshold && e.liminf == Rational(0)) {
                scan.pairs.push_back({x, y, e.limsup, e.liminf});
                scan.partners[x].set(y);
                scan.partners[y].set(x);
            }
        }
    }
    return scan;
}

/// ∀x ∀ basic U ∋ x ∃y ∈ U scrambled with x.
Verdict neighbourhood_verdict(const TracedSystem& system, Verdict v, const ScrambleScan& scan) {
    const auto& space = system.space();
    for (const auto& open : space.open_base()) {
        for (PointId x : members(open.members)) {
            if (!scan.partners[x].intersects(open.members)) {
                v.exact = scan.exact;
                v.status = scan.exact ? Status::Fails : Status::Inconclusive;
                v.witness = {{"x", space.label(x)}, {"U", open.name}};
                return v;
            }
        }
    }
    v.exact = scan.exact;
    v.status = scan.exact ? Status::Holds : Status::Inconclusive;
    v.witness = {{"scrambled_pairs", scan.pairs.size()}};
    return v;
}

}  // namespace

ScrambledReport find_scrambled_pairs(const TracedSystem& system, const Rational& delta,
                                     const QueryOptions& options, std::size_t window,
                                     const Budget& budget) {
    require_positive(delta, "scrambling delta");
    const auto scan = scan_scrambled(system, delta, options, window);
    ScrambledReport report;
    report.exact = scan.exact;
    report.pairs = scan.pairs;
    Verdict v = start(system, "li_yorke_sensitive",
                      {{"delta", to_string(delta)}, {"horizon", options.horizon}, {"window", window}},
                      scan.horizon);
    report.li_yorke_sensitive = neighbourhood_verdict(system, std::move(v), scan);
    if (!scan.pairs.empty()) {
        report.largest_scrambled_set = maximum_clique(scan.partners, budget.max_clique_nodes);
    }
    return report;
}

Verdict check_chaotic_dependence(const TracedSystem& system, const QueryOptions& options) {
    const auto scan = scan_scrambled(system, Rational(0), options, 8);
    Verdict v = start(system, "chaotic_dependence", {{"horizon", options.horizon}}, scan.horizon);
    return neighbourhood_verdict(system, std::move(v), scan);
}

Verdict check_expansive(const TracedSystem& system, const Rational& delta,
                        const QueryOptions& options) {
    require_positive(delta, "expansivity delta");
    const std::uint64_t horizon = examined(system.trace, options);
    Verdict v = start(system, "expansive", {{"delta", to_string(delta)}, {"horizon", options.horizon}},
                      horizon);
    const auto& space = system.space();
    const std::size_t n = space.size();
    std::uint64_t worst = 0;
    Json entries = Json::array();
    std::uint64_t pairs = 0;
    for (PointId x = 0; x < n; ++x) {
        for (PointId y = x + 1; y < n; ++y) {
            ++pairs;
            std::uint64_t found = 0;
            for (std::uint64_t k = 1; k <= horizon && found == 0; ++k) {
                if (space.distance(system.trace.eval(k, x), system.trace.eval(k, y)) > delta) {
                    found = k;
                }
            }
            if (found == 0) {
                v.exact = horizon == system.trace.distinct();
                v.status = v.exact ? Status::Fails : Status::Inconclusive;
                v.witness = {{"x", space.label(x)}, {"y", space.label(y)}};
                return v;
            }
            worst = std::max(worst, found);
            if (entries.size() < options.witness_limit) {
                entries.push_back({{"x", space.label(x)}, {"y", space.label(y)}, {"n", found}});
            }
        }
    }
    v.status = Status::Holds;
    v.exact = true;
    v.witness = {{"max_separation_time", worst}, {"pairs", entries}, {"truncated", entries.size() < pairs}};
    return v;
}

namespace {

const PointSet& open_by_name(const SpaceModel& space, const std::string& name) {
    for (const auto& open : space.open_base()) {
        if (open.name == name) {
            return open.members;
        }
    }
    throw InputError("witness names unknown open set '" + name + "'");
}

bool replay_transitive(const TracedSystem& system, const Verdict& v) {
    const auto& space = system.space();
    std::vector<char> mark(space.size(), 0);
    auto hits_at = [&](const PointSet& u, const PointSet& w, std::uint64_t n) {
        for (PointId y : image_points(system.trace.omega(n), members(u), mark)) {
            if (w.test(y)) {
                return true;
            }
        }
        return false;
    };
    if (v.status == Status::Holds) {
        for (const auto& e : v.witness.at("hits")) {
            if (!hits_at(open_by_name(space, e.at("U")), open_by_name(space, e.at("V")),
                         e.at("n").get<std::uint64_t>())) {
                return false;
            }
        }
        return true;
    }
    const auto& u = open_by_name(space, v.witness.at("U"));
    const auto& w = open_by_name(space, v.witness.at("V"));
    for (std::uint64_t n = 1; n <= system.trace.distinct(); ++n) {
        if (hits_at(u, w, n)) {
            return false;
        }
    }
    return true;
}

bool periodic_by_folding(const MapFamily& family, PointId x, std::uint64_t n, std::uint64_t bound) {
    // ω_{nk}(x) for k = 1..bound, by direct iteration of the family.
    PointId y = x;
    std::uint64_t step = 0;
    for (std::uint64_t k = 1; k <= bound; ++k) {
        for (; step < n * k; ++step) {
            y = family.step(step + 1)[y];
        }
        if (y != x) {
            return false;
        }
    }
    return true;
}

bool replay_dense_periodic(const TracedSystem& system, const Verdict& v) {
    const auto& space = system.space();
    const std::uint64_t bound = system.trace.distinct() + 1;
    if (v.status == Status::Holds) {
        for (const auto& e : v.witness.at("periodic")) {
            const auto& open = open_by_name(space, e.at("open"));
            const PointId x = space.require(e.at("x"));
            if (!open.test(x) || !periodic_by_folding(system.system.family, x,
                                                      e.at("n").get<std::uint64_t>(), bound)) {
                return false;
            }
        }
        return true;
    }
    const auto& open = open_by_name(space, v.witness.at("open"));
    for (PointId x : members(open)) {
        if (minimal_period(system.trace, x)) {
            return false;
        }
    }
    return true;
}

bool replay_sensitive(const TracedSystem& system, const Verdict& v) {
    const auto& space = system.space();
    const Rational delta = parse_rational(v.params.at("delta").get<std::string>());
    if (v.status == Status::Holds) {
        for (const auto& e : v.witness.at("opens")) {
            const auto& open = open_by_name(space, e.at("U"));
            const PointId x = space.require(e.at("x"));
            const PointId y = space.require(e.at("y"));
            const std::uint64_t n = e.at("n").get<std::uint64_t>();
            if (!open.test(x) || !open.test(y) ||
                !(space.distance(system.trace.eval(n, x), system.trace.eval(n, y)) > delta)) {
                return false;
            }
        }
        return true;
    }
    const auto& open = open_by_name(space, v.witness.at("U"));
    const auto ids = members(open);
    std::vector<char> mark(space.size(), 0);
    for (std::uint64_t n = 1; n <= system.trace.distinct(); ++n) {
        if (space.diameter_exceeds(image_points(system.trace.omega(n), ids, mark), delta)) {
            return false;
        }
    }
    return true;
}

bool replay_expansive(const TracedSystem& system, const Verdict& v) {
    const auto& space = system.space();
    const Rational delta = parse_rational(v.params.at("delta").get<std::string>());
    auto separated = [&](PointId x, PointId y, std::uint64_t n) {
        return space.distance(system.trace.eval(n, x), system.trace.eval(n, y)) > delta;
    };
    if (v.status == Status::Holds) {
        for (const auto& e : v.witness.at("pairs")) {
            if (!separated(space.require(e.at("x")), space.require(e.at("y")),
                           e.at("n").get<std::uint64_t>())) {
                return false;
            }
        }
        return true;
    }
    const PointId x = space.require(v.witness.at("x"));
    const PointId y = space.require(v.witness.at("y"));
    for (std::uint64_t n = 1; n <= system.trace.distinct(); ++n) {
        if (separated(x, y, n)) {
            return false;
        }
    }
    return true;
}

}  // namespace

bool replay(const TracedSystem& system, const Verdict& verdict) {
    if (verdict.status == Status::Inconclusive || !verdict.exact) {
        return false;
    }
    if (verdict.property == "transitive") {
        return replay_transitive(system, verdict);
    }
    if (verdict.property == "dense_periodic") {
        return replay_dense_periodic(system, verdict);
    }
    if (verdict.property == "sensitive") {
        return replay_sensitive(system, verdict);
    }
    if (verdict.property == "expansive") {
        return replay_expansive(system, verdict);
    }
    throw InputError("no replay for property '" + verdict.property + "'");
}

}  // namespace hyperdyn
