#include <cmath>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "hyperdyn/detectors.hpp"
#include "hyperdyn/entropy.hpp"
#include "hyperdyn/experiment.hpp"
#include "hyperdyn/io.hpp"
#include "hyperdyn/suites.hpp"

using namespace hyperdyn;

namespace {

constexpr int kExitErrors = 1;
constexpr int kExitInvalid = 2;

struct Common {
    std::string config;
    std::string target;
    std::uint64_t horizon = 0;
    bool horizon_set = false;
    std::string delta;
    std::size_t workers = 0;
    std::string log_base = "e";
    std::string output;
};

void write_output(const std::string& path, const std::string& text) {
    if (path.empty() || path == "-") {
        std::cout << text;
        return;
    }
    std::ofstream out(path, std::ios::binary);
    if (!out) {
        throw InputError("cannot write '" + path + "'");
    }
    out << text;
}

ExperimentConfig load(const Common& c) {
    if (c.config.empty()) {
        throw InputError("--config is required");
    }
    ExperimentConfig config = load_config(c.config);
    if (!c.target.empty()) {
        config.target = parse_target(c.target);
    }
    for (auto& q : config.queries) {
        if (c.horizon_set && q.params.contains("horizon")) {
            q.params["horizon"] = c.horizon;
        }
        if (!c.delta.empty() && q.params.contains("delta")) {
            q.params["delta"] = c.delta == "auto" ? std::string("auto") : to_string(parse_rational(c.delta));
        }
    }
    if (c.workers > 0) {
        config.workers = c.workers;
    }
    return config;
}

System target_system(const ExperimentConfig& config) {
    System base = build_system(config.system, config.budget, config.base_dir);
    if (config.target.is_lifted()) {
        return as_hyper_system(base, config.target.lifted, config.budget);
    }
    return base;
}

double display_log(double natural, const std::string& base) {
    return base == "2" ? natural / std::log(2.0) : natural;
}

int cmd_validate(const Common& c, const std::string& system_file) {
    if (!system_file.empty()) {
        const System system = load_system_file(system_file);
        write_output(c.output, system_to_json(system, Budget::from_environment()).dump(2) + "\n");
        return 0;
    }
    const ExperimentConfig config = load(c);
    const System system = target_system(config);
    Json doc = {{"config", to_json(config)},
                {"system", {{"name", system.name},
                            {"points", system.space.size()},
                            {"open_sets", system.space.open_base().size()},
                            {"period", system.family.period()},
                            {"commutative", system.family.is_commutative()},
                            {"discretized", system.discretized}}}};
    write_output(c.output, doc.dump(2) + "\n");
    return 0;
}

int cmd_orbit(const Common& c, std::uint64_t steps, const std::vector<std::string>& points) {
    const ExperimentConfig config = load(c);
    const auto traced = TracedSystem::build(target_system(config), config.budget);
    const auto& space = traced.space();
    if (steps == 0) {
        steps = traced.trace.distinct() + traced.trace.cycle();
    }
    std::vector<PointId> ids;
    for (const auto& label : points) {
        ids.push_back(space.require(label));
    }
    if (ids.empty()) {
        for (PointId x = 0; x < space.size(); ++x) {
            ids.push_back(x);
        }
    }
    std::ostringstream out;
    out << "n";
    for (PointId x : ids) {
        out << ',' << csv_escape(space.label(x));
    }
    out << '\n';
    for (std::uint64_t n = 0; n <= steps; ++n) {
        out << n;
        for (PointId x : ids) {
            out << ',' << csv_escape(space.label(n == 0 ? x : traced.trace.eval(n, x)));
        }
        out << '\n';
    }
    std::cerr << "preperiod " << traced.trace.preperiod() << ", cycle " << traced.trace.cycle()
              << "\n";
    write_output(c.output, out.str());
    return 0;
}

int cmd_lift(const Common& c) {
    ExperimentConfig config = load(c);
    if (!config.target.is_lifted()) {
        throw InputError("lift needs --target lifted:M (or a lifted target in the config)");
    }
    write_output(c.output, system_to_json(target_system(config), config.budget).dump(2) + "\n");
    return 0;
}

int cmd_check(const Common& c) {
    const ExperimentConfig config = load(c);
    const RunResult result = run(config);
    std::string text = format_records(result.records, config.output.format);
    write_output(c.output.empty() ? config.output.path : c.output, text);
    return result.has_errors ? kExitErrors : 0;
}

int cmd_entropy(const Common& c, std::size_t k_max, const std::string& summary_path) {
    ExperimentConfig config = load(c);
    std::vector<PropertyQuery> queries;
    for (const auto& q : config.queries) {
        if (q.property == "entropy" || q.property == "separated_entropy" ||
            q.property == "hyper_entropy") {
            queries.push_back(q);
        }
    }
    if (queries.empty()) {
        queries.push_back(parse_query({{"property", "entropy"}}, "/queries/0"));
    }
    if (k_max > 0) {
        for (auto& q : queries) {
            q.params[q.property == "separated_entropy" ? "n_max" : "k_max"] = k_max;
        }
    }
    config.queries = queries;
    const RunResult result = run(config);
    std::ostringstream csv;
    csv << std::setprecision(15);
    Json summaries = Json::array();
    csv << "query,series,k,H_k,H_k_over_k\n";
    for (std::size_t i = 0; i < result.records.size(); ++i) {
        const Json& r = result.records[i];
        if (r["status"] != "Computed") {
            summaries.push_back({{"query", i}, {"property", r["property"]}, {"status", r["status"]},
                                 {"message", r["witness"].value("message", "")}});
            continue;
        }
        auto emit = [&](const std::string& label, const Json& series) {
            for (const auto& t : series["terms"]) {
                csv << i << ',' << label << ',' << t["k"].get<std::uint64_t>() << ','
                    << display_log(t["H"].get<double>(), c.log_base) << ','
                    << display_log(t["H_over_k"].get<double>(), c.log_base) << '\n';
            }
            summaries.push_back({{"query", i},
                                 {"property", r["property"]},
                                 {"series", label},
                                 {"limsup_estimate",
                                  display_log(series["limsup_estimate"].get<double>(), c.log_base)},
                                 {"window", series["window"]},
                                 {"exact_terms", series["exact_terms"]},
                                 {"log_base", c.log_base}});
        };
        if (r["property"] == "hyper_entropy") {
            emit("base", r["witness"]["base"]);
            emit("lifted", r["witness"]["lifted"]);
            summaries.back()["dominance"] = r["witness"]["dominance"];
        } else {
            emit(r["property"].get<std::string>(), r["witness"]);
        }
    }
    write_output(c.output, csv.str());
    const std::string summary = summaries.dump(2) + "\n";
    if (summary_path.empty()) {
        std::cerr << summary;
    } else {
        write_output(summary_path, summary);
    }
    return result.has_errors ? kExitErrors : 0;
}

int cmd_repro(const Common& c, const std::string& suite, bool strict) {
    const auto rows = run_suite(suite, Budget::from_environment());
    write_output(c.output, suite_csv(rows));
    const bool all_pass = std::all_of(rows.begin(), rows.end(), [](const SuiteRow& r) { return r.pass; });
    return strict && !all_pass ? kExitErrors : 0;
}

int cmd_plotdata(const Common& c, const std::string& kind, std::uint64_t steps,
                 const std::string& x_label, const std::string& y_label) {
    const ExperimentConfig config = load(c);
    const auto traced = TracedSystem::build(target_system(config), config.budget);
    const auto& space = traced.space();
    if (steps == 0) {
        steps = traced.trace.distinct() + traced.trace.cycle();
    }
    std::ostringstream out;
    if (kind == "diameters") {
        out << "n,open,diameter,diameter_float\n";
        for (const auto& open : space.open_base()) {
            const auto ids = members(open.members);
            for (std::uint64_t n = 1; n <= steps; ++n) {
                PointSet img(space.size());
                for (PointId x : ids) {
                    img.set(traced.trace.eval(n, x));
                }
                const Rational d = space.diameter(img);
                out << n << ',' << csv_escape(open.name) << ',' << to_string(d) << ','
                    << to_double(d) << '\n';
            }
        }
    } else if (kind == "distances") {
        std::vector<std::pair<PointId, PointId>> pairs;
        if (!x_label.empty() || !y_label.empty()) {
            pairs.emplace_back(space.require(x_label), space.require(y_label));
        } else {
            for (PointId x = 0; x < space.size(); ++x) {
                for (PointId y = x + 1; y < space.size(); ++y) {
                    pairs.emplace_back(x, y);
                }
            }
        }
        out << "n,x,y,distance,distance_float\n";
        for (const auto& [x, y] : pairs) {
            for (std::uint64_t n = 0; n <= steps; ++n) {
                const Rational d = n == 0 ? space.distance(x, y)
                                          : space.distance(traced.trace.eval(n, x), traced.trace.eval(n, y));
                out << n << ',' << csv_escape(space.label(x)) << ',' << csv_escape(space.label(y))
                    << ',' << to_string(d) << ',' << to_double(d) << '\n';
            }
        }
    } else {
        throw InputError("--kind must be diameters or distances");
    }
    write_output(c.output, out.str());
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Non-autonomous systems, their hyperspace lifts, and dynamical property checks"};
    app.require_subcommand(1);
    Common c;
    auto add_common = [&](CLI::App* sub, bool with_target, bool config_required = true) {
        auto* opt = sub->add_option("--config", c.config, "Experiment config (JSON)");
        if (config_required) {
            opt->required();
        }
        if (with_target) {
            sub->add_option("--target", c.target, "base or lifted:M");
        }
        sub->add_option("-o,--output", c.output, "Write to this file instead of stdout");
    };

    auto* validate = app.add_subcommand("validate", "Validate a config and echo its canonical form");
    add_common(validate, true, false);
    std::string system_file;
    validate->add_option("--system", system_file, "System description file to echo in canonical form")
        ->excludes("--config");

    std::uint64_t steps = 0;
    std::vector<std::string> points;
    auto* orbit = app.add_subcommand("orbit", "Print trajectories n -> w_n(x) as CSV");
    add_common(orbit, true);
    orbit->add_option("--steps", steps, "Last n to print (default: trace length plus a cycle)");
    orbit->add_option("--points", points, "Labels to follow (default: all)")->delimiter(',');

    auto* lift = app.add_subcommand("lift", "Export the hyperspace system as a description file");
    add_common(lift, true);

    auto* check = app.add_subcommand("check", "Run the config's queries and emit one record each");
    add_common(check, true);
    check->add_option("--horizon", c.horizon, "Override every query horizon (0 = exact)")
        ->each([&](const std::string&) { c.horizon_set = true; });
    check->add_option("--delta", c.delta, "Override every delta, as P/Q or auto");
    check->add_option("--workers", c.workers, "Queries evaluated concurrently");

    std::size_t k_max = 0;
    std::string summary_path;
    auto* entropy = app.add_subcommand("entropy", "Entropy series as CSV rows (k, H_k, H_k/k)");
    add_common(entropy, true);
    entropy->add_option("--k-max", k_max, "Override k_max / n_max");
    entropy->add_option("--log-base", c.log_base, "Display logarithms in base e or 2")
        ->check(CLI::IsMember({"e", "2"}));
    entropy->add_option("--summary", summary_path, "Write the JSON summary here (default: stderr)");
    entropy->add_option("--workers", c.workers, "Queries evaluated concurrently");

    std::string suite;
    bool strict = false;
    auto* repro = app.add_subcommand("repro", "Run a proposition suite and print its CSV table");
    repro->add_option("suite", suite, "Suite id or all")->required();
    repro->add_option("-o,--output", c.output, "Write to this file instead of stdout");
    repro->add_flag("--strict", strict, "Exit 1 when a row does not pass");

    std::string kind = "diameters";
    std::string x_label;
    std::string y_label;
    auto* plot = app.add_subcommand("export-plotdata", "CSV of diameter or distance sequences");
    add_common(plot, true);
    plot->add_option("--kind", kind, "diameters or distances")
        ->check(CLI::IsMember({"diameters", "distances"}));
    plot->add_option("--steps", steps, "Last n (default: trace length plus a cycle)");
    plot->add_option("--x", x_label, "First point of a single distance sequence");
    plot->add_option("--y", y_label, "Second point of a single distance sequence");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e);
    }

    try {
        if (*validate) {
            return cmd_validate(c, system_file);
        }
        if (*orbit) {
            return cmd_orbit(c, steps, points);
        }
        if (*lift) {
            return cmd_lift(c);
        }
        if (*check) {
            return cmd_check(c);
        }
        if (*entropy) {
            return cmd_entropy(c, k_max, summary_path);
        }
        if (*repro) {
            return cmd_repro(c, suite, strict);
        }
        if (*plot) {
            return cmd_plotdata(c, kind, steps, x_label, y_label);
        }
    } catch (const ResourceError& e) {
        std::cerr << "resource error: " << e.what() << "\n";
        return kExitErrors;
    } catch (const InputError& e) {
        std::cerr << "invalid input: " << e.what() << "\n";
        return kExitInvalid;
    }
    return 0;
}
