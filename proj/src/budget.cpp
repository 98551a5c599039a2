#include "hyperdyn/budget.hpp"

#include <charconv>
#include <cstdlib>
#include <string>

#include "hyperdyn/rational.hpp"

namespace hyperdyn {

namespace {

std::uint64_t parse_count(std::string_view text) {
    std::uint64_t value = 0;
    auto [end, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
    if (text.empty() || ec != std::errc{} || end != text.data() + text.size() || value == 0) {
        throw InputError("budget value '" + std::string(text) + "' is not a positive integer");
    }
    return value;
}

}  // namespace

Budget Budget::from_environment() {
    Budget budget;
    if (const char* env = std::getenv("HYPERDYN_BUDGET"); env != nullptr && *env != '\0') {
        budget.apply_overrides(env);
    }
    return budget;
}

void Budget::apply_overrides(std::string_view spec) {
    while (!spec.empty()) {
        const auto comma = spec.find(',');
        const auto item = spec.substr(0, comma);
        spec = comma == std::string_view::npos ? std::string_view{} : spec.substr(comma + 1);
        if (item.empty()) {
            continue;
        }
        const auto eq = item.find('=');
        if (eq == std::string_view::npos) {
            max_hyper_points = parse_count(item);
            continue;
        }
        const auto key = item.substr(0, eq);
        const auto value = parse_count(item.substr(eq + 1));
        bool known = false;
        for (const auto& [name, member] : fields()) {
            if (key == name) {
                this->*member = value;
                known = true;
            }
        }
        if (!known) {
            throw InputError("unknown budget key '" + std::string(key) + "'");
        }
    }
}

const std::vector<Budget::Field>& Budget::fields() {
    static const std::vector<Field> table = {
        {"hyper_points", &Budget::max_hyper_points},
        {"product_points", &Budget::max_product_points},
        {"space_points", &Budget::max_space_points},
        {"vietoris_candidates", &Budget::max_vietoris_candidates},
        {"trace_entries", &Budget::max_trace_entries},
        {"join_sets", &Budget::max_join_sets},
        {"setcover_nodes", &Budget::max_setcover_nodes},
        {"clique_nodes", &Budget::max_clique_nodes},
        {"wall_clock_ms", &Budget::wall_clock_ms},
    };
    return table;
}

}  // namespace hyperdyn
