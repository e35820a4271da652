#include <chrono>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <set>

#include <CLI11.hpp>
#include <json.hpp>

#include "topodyn/constructions.hpp"
#include "topodyn/serialize.hpp"

namespace fs = std::filesystem;
using nlohmann::json;
using namespace topodyn;

namespace {

constexpr const char* kVersion = "topodyn 0.1.0";

// exit codes: 0 holds/computed, 1 fails-at-horizon, 2 inconclusive, 3 usage
int verdict_exit(Verdict v) {
    switch (v) {
        case Verdict::HoldsAtHorizon: return 0;
        case Verdict::FailsAtHorizon: return 1;
        case Verdict::Inconclusive: return 2;
    }
    return 3;
}

struct Experiment {
    SystemSpec system;
    std::optional<PointSpec> point;
    std::string operation;
    std::map<std::string, std::string> opts;
    fs::path outdir;
    Limits limits;
};

std::string opt_or(const Experiment& e, const std::string& key, const std::string& fallback) {
    auto it = e.opts.find(key);
    return it == e.opts.end() ? fallback : it->second;
}

std::int64_t int_opt(const Experiment& e, const std::string& key, std::int64_t fallback) {
    auto it = e.opts.find(key);
    return it == e.opts.end() ? fallback : std::stoll(it->second);
}

Rat rat_opt(const Experiment& e, const std::string& key, const Rat& fallback) {
    auto it = e.opts.find(key);
    return it == e.opts.end() ? fallback : Rat::from_string(it->second);
}

const std::set<std::string> kKnownExperimentKeys = {
    "operation", "fixture", "output",   "depth",  "horizon", "burn_in", "delta",  "epsilon",
    "k",         "k_max",   "sequence", "family", "param",   "pair_budget",       "n_max",
    "base",      "mutated", "eps_list", "series", "h_grid"};

Experiment load_experiment(const fs::path& config_path) {
    std::ifstream in(config_path);
    if (!in) throw ConfigError("cannot open config " + config_path.string());
    std::stringstream buf;
    buf << in.rdbuf();
    ConfigTable table = parse_config(buf.str());
    auto exp_it = table.find("experiment");
    if (exp_it == table.end()) throw ConfigError("config needs an [experiment] section");
    for (const auto& [k, v] : exp_it->second) {
        (void)v;
        if (!kKnownExperimentKeys.count(k)) throw ConfigError("unknown experiment key '" + k + "'");
    }

    std::optional<SystemSpec> sys;
    std::optional<PointSpec> pt;
    if (exp_it->second.count("fixture")) {
        Fixture f = standard_fixture(exp_it->second.at("fixture"));
        sys = f.system;
        pt = f.point;
    }
    if (table.count("system")) sys = system_from_config(table, "system");
    if (table.count("point")) pt = point_from_config(table, "point");
    if (!sys) throw ConfigError("config needs a fixture or a [system] section");
    auto op_it = exp_it->second.find("operation");
    if (op_it == exp_it->second.end()) throw ConfigError("config needs operation = <name>");

    Experiment e{*sys, pt, op_it->second, exp_it->second, "out", Limits{}};
    if (exp_it->second.count("output")) e.outdir = exp_it->second.at("output");
    if (auto lim_it = table.find("limits"); lim_it != table.end()) {
        for (const auto& [k, v] : lim_it->second) {
            std::int64_t n = std::stoll(v);
            if (k == "max_horizon") e.limits.max_horizon = n;
            else if (k == "max_depth") e.limits.max_depth = static_cast<int>(n);
            else if (k == "max_cells") e.limits.max_cells = n;
            else if (k == "max_pairs") e.limits.max_pairs = n;
            else if (k == "max_tuples") e.limits.max_tuples = n;
            else if (k == "max_window_positions") e.limits.max_window_positions = n;
            else if (k == "prefix_limit") e.limits.prefix_limit = n;
            else if (k == "ip_search_bound") e.limits.ip_search_bound = n;
            else throw ConfigError("unknown limits key '" + k + "'");
        }
    }
    return e;
}

SequenceSpec sequence_opt(const Experiment& e) {
    std::string s = opt_or(e, "sequence", "full");
    if (s == "full") return SequenceSpec::full();
    if (s.rfind("arithmetic:", 0) == 0) {
        auto rest = s.substr(11);
        auto comma = rest.find(',');
        if (comma == std::string::npos) throw ConfigError("sequence arithmetic:a,b");
        return SequenceSpec::arithmetic(std::stoll(rest.substr(0, comma)), std::stoll(rest.substr(comma + 1)));
    }
    if (s.rfind("geometric:", 0) == 0) return SequenceSpec::geometric(std::stoll(s.substr(10)));
    if (s.rfind("explicit:", 0) == 0) {
        std::vector<std::int64_t> raw;
        std::stringstream ss(s.substr(9));
        std::string tok;
        while (std::getline(ss, tok, ',')) raw.push_back(std::stoll(tok));
        return SequenceSpec::explicit_list(std::move(raw));
    }
    throw ConfigError("unknown sequence spec '" + s + "'");
}

FamilyKind family_opt(const Experiment& e) {
    std::string f = opt_or(e, "family", "thick");
    if (f == "thick") return FamilyKind::Thick;
    if (f == "syndetic") return FamilyKind::Syndetic;
    if (f == "thickly-syndetic") return FamilyKind::ThicklySyndetic;
    if (f == "cofinite") return FamilyKind::Cofinite;
    if (f == "ip") return FamilyKind::Ip;
    throw ConfigError("unknown family '" + f + "'");
}

const PointSpec& need_point(const Experiment& e) {
    if (!e.point) throw ConfigError("operation '" + e.operation + "' needs a point (fixture or [point])");
    return *e.point;
}

// Runs one experiment; fills result and side files, returns the exit code.
int dispatch(const Experiment& e, json& result, std::map<std::string, std::string>& side_files) {
    const int depth = static_cast<int>(int_opt(e, "depth", 2));
    const std::int64_t H = int_opt(e, "horizon", 100);
    const std::int64_t burn = int_opt(e, "burn_in", H / 2);
    const Rat delta = rat_opt(e, "delta", Rat(1, 4));
    const Rat epsilon = rat_opt(e, "epsilon", Rat(1, 10));
    const int k = static_cast<int>(int_opt(e, "k", 2));

    const std::string& op = e.operation;
    if (op == "transitivity-test" || op == "weak-mixing-test" || op == "mixing-test") {
        DiagnosticVerdict v = op == "transitivity-test" ? transitivity_test(e.system, depth, H, e.limits)
                              : op == "weak-mixing-test" ? weak_mixing_test(e.system, depth, H, e.limits)
                                                         : mixing_test(e.system, depth, H, e.limits);
        result = to_json(v);
        return verdict_exit(v.verdict);
    }
    if (op == "multi-sensitivity-test") {
        auto v = multi_sensitivity_test(e.system, k, depth, delta, H, e.limits);
        result = to_json(v);
        return verdict_exit(v.verdict);
    }
    if (op == "sensitivity-constant") {
        result = json{{"sensitivity_constant", sensitivity_constant(e.system, depth, H, e.limits).to_double()}};
        return 0;
    }
    if (op == "thick-sensitivity-profile") {
        auto p = thick_sensitivity_profile(e.system, depth, delta, H, e.limits);
        result = to_json(p);
        return 0;
    }
    if (op == "lyapunov") {
        std::vector<PointSpec> sample;
        if (e.point) sample.push_back(*e.point);
        auto rep = lyapunov_numbers(e.system, depth, H, burn, std::max(2, k), sample, e.limits);
        result = to_json(rep);
        return 0;
    }
    if (op == "lyapunov-sweep") {
        std::vector<PointSpec> sample;
        if (e.point) sample.push_back(*e.point);
        json sweep = json::array();
        std::int64_t grid = int_opt(e, "h_grid", 4);
        for (std::int64_t h = H / grid > 0 ? H / grid : 1; h <= H; h += std::max<std::int64_t>(1, H / grid)) {
            auto rep = lyapunov_numbers(e.system, depth, h, h / 2, std::max(2, k), sample, e.limits);
            sweep.push_back({{"horizon", h}, {"L_d", rep.l_d.to_double()}});
        }
        result = json{{"sweep", sweep}};
        return 0;
    }
    if (op == "li-yorke-search") {
        auto w = li_yorke_search(e.system, need_point(e), depth, delta, H, burn, Rat(1, 1024), e.limits);
        if (w) {
            ConfigTable t;
            point_to_config(w->partner, "witness", t);
            result = json{{"found", true},
                          {"witness", write_config(t)},
                          {"min_dist", w->min_dist.to_double()},
                          {"max_dist", w->max_dist.to_double()}};
        } else {
            result = json{{"found", false}};
        }
        return 0;
    }
    if (op == "syndetic-equicontinuity") {
        auto g = syndetic_equicontinuity(e.system, need_point(e), epsilon, depth, H, e.limits);
        result = g ? json{{"gap", *g}} : json{{"gap", nullptr}};
        return 0;
    }
    if (op == "proximal-search") {
        auto rep = proximal_partner_search(e.system, need_point(e), depth, epsilon, H, e.limits);
        result = json{{"cells_tested", rep.cells_tested},
                      {"cells_with_witness", rep.cells_with_witness},
                      {"fraction", rep.fraction}};
        return 0;
    }
    if (op == "hitting-set" || op == "sensitivity-set") {
        auto cells = cell_family(e.system, depth, e.limits);
        json arr = json::array();
        for (const auto& u : cells) {
            if (op == "hitting-set") {
                for (const auto& v : cells) {
                    auto t = hitting_set(e.system, u, v, H, e.limits);
                    arr.push_back({{"u", u.describe()}, {"v", v.describe()}, {"set", to_json(t)}});
                }
            } else {
                auto t = sensitivity_set(e.system, u, delta, H, e.limits);
                arr.push_back({{"u", u.describe()}, {"set", to_json(t)}});
            }
        }
        result = json{{"sets", arr}};
        return 0;
    }
    if (op == "visit-set") {
        auto cells = cell_family(e.system, depth, e.limits);
        json arr = json::array();
        for (const auto& g : cells) {
            auto ws = visit_set(e.system, need_point(e), g, H, e.limits);
            arr.push_back({{"cell", g.describe()}, {"set", to_json(ws)}});
            side_files["visits_" + g.describe() + ".csv"] = windowset_to_csv(ws);
        }
        result = json{{"sets", arr}};
        return 0;
    }
    if (op == "omega-limit") {
        result = to_json(omega_limit_approx(e.system, need_point(e), depth, H, e.limits));
        return 0;
    }
    if (op == "omega-nt") {
        result = to_json(omega_nt_approx(e.system, need_point(e), depth, H, int_opt(e, "pair_budget", 10000), e.limits));
        return 0;
    }
    if (op == "transitive-compact-evidence") {
        std::vector<PointSpec> sample{need_point(e)};
        auto rep = transitive_compact_evidence(e.system, sample, depth, H, int_opt(e, "pair_budget", 10000), e.limits);
        result = to_json(rep);
        return rep.verdict == "consistent-with-transitive-compact" ? 0 : 2;
    }
    if (op == "family-transitivity") {
        auto rep = family_transitivity(e.system, family_opt(e), depth, H, int_opt(e, "param", 0), e.limits);
        result = to_json(rep);
        return verdict_exit(rep.aggregate);
    }
    if (op == "sep-count") {
        result = json{{"count", sep_count_exact(e.system, sequence_opt(e), k, epsilon, e.limits)}};
        return 0;
    }
    if (op == "seq-entropy") {
        std::vector<Rat> eps_list;
        {
            std::stringstream ss(opt_or(e, "eps_list", "3/10"));
            std::string tok;
            while (std::getline(ss, tok, ',')) eps_list.push_back(Rat::from_string(tok));
        }
        auto est = seq_entropy_estimate(e.system, sequence_opt(e), eps_list, static_cast<int>(int_opt(e, "k_max", 8)), e.limits);
        result = to_json(est);
        // CSV side file for plotting
        std::string csv = "k,sep,log_sep\n";
        if (!est.profiles.empty()) {
            for (std::size_t i = 0; i < est.profiles[0].counts.size(); ++i) {
                double ls = std::log(static_cast<double>(est.profiles[0].counts[i]));
                csv += std::to_string(i + 1) + "," + std::to_string(est.profiles[0].counts[i]) + "," +
                       std::to_string(ls) + "\n";
            }
        }
        side_files["sep_profile.csv"] = csv;
        return 0;
    }
    if (op == "verify-newprop") {
        auto v = verify_newprop(static_cast<std::uint32_t>(int_opt(e, "base", 10)),
                                static_cast<int>(int_opt(e, "n_max", 5)), opt_or(e, "mutated", "false") == "true");
        result = to_json(v);
        return verdict_exit(v.verdict.verdict);
    }
    throw ConfigError("unknown operation '" + op + "'");
}

int cmd_run(const fs::path& config_path) {
    auto t0 = std::chrono::steady_clock::now();
    Experiment e = load_experiment(config_path);
    json result;
    std::map<std::string, std::string> side_files;
    int code = dispatch(e, result, side_files);
    auto t1 = std::chrono::steady_clock::now();

    std::ifstream cfg(config_path);
    std::stringstream cfg_echo;
    cfg_echo << cfg.rdbuf();

    json report;
    report["config"] = cfg_echo.str();
    report["operation"] = e.operation;
    report["result"] = result;
    report["runtime_ms"] = std::chrono::duration_cast<std::chrono::milliseconds>(t1 - t0).count();
    report["version"] = kVersion;

    fs::create_directories(e.outdir);
    std::ofstream out(e.outdir / "report.json");
    out << report.dump(2) << "\n";
    for (const auto& [name, content] : side_files) {
        std::string safe = name;
        for (char& c : safe)
            if (c == '[' || c == ']' || c == '(' || c == ')' || c == ',' || c == ':') c = '_';
        std::ofstream f(e.outdir / safe);
        f << content;
    }
    std::cout << report["result"].dump(2) << "\n";
    return code;
}

int cmd_list_fixtures() {
    for (const auto& [name, desc] : fixture_registry())
        std::cout << name << "\t" << desc << "\n";
    return 0;
}

int cmd_plot(const fs::path& report_path, const std::string& series) {
    std::ifstream in(report_path);
    if (!in) throw ConfigError("cannot open report " + report_path.string());
    json report = json::parse(in);
    std::cout << emit_plot_data(report, series);
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"finite-horizon experiments on symbolic and exact-arithmetic dynamical systems"};
    app.set_version_flag("--version", kVersion);

    std::string config_path, report_path, series;
    auto* run = app.add_subcommand("run", "run the experiment described by a config file");
    run->add_option("config", config_path, "experiment config")->required();
    auto* lf = app.add_subcommand("list-fixtures", "list the built-in example systems");
    auto* plot = app.add_subcommand("plot", "extract a two-column CSV series from a report");
    plot->add_option("report", report_path, "report.json produced by run")->required();
    plot->add_option("series", series, "series name: sep | thick-profile | lyapunov-sweep")->required();
    app.require_subcommand(1);

    try {
        app.parse(argc, argv);
        if (run->parsed()) return cmd_run(config_path);
        if (lf->parsed()) return cmd_list_fixtures();
        if (plot->parsed()) return cmd_plot(report_path, series);
    } catch (const CLI::ParseError& err) {
        return app.exit(err) ? 3 : 0;
    } catch (const Error& err) {
        std::cerr << "error: " << err.what() << "\n";
        return 3;
    } catch (const std::exception& err) {
        std::cerr << "error: " << err.what() << "\n";
        return 3;
    }
    return 3;
}
