#include <filesystem>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "evasion/dataset.hpp"
#include "evasion/errors.hpp"
#include "evasion/harness.hpp"

namespace {

struct AttackFlags {
    std::vector<std::string> datasets;
    std::vector<std::string> defenders;
    std::vector<std::string> methods;
    std::string config_file;
    std::string out_dir;
    int runs = 0;
    std::uint64_t seed = 0;
    std::uint64_t b_explore = 0;
    std::uint64_t n_attack = 0;
    double r_exploit = -1.0;
    std::uint64_t fixture_n = 0;
    std::vector<std::string> overrides; // raw key=value pairs
};

void add_attack_flags(CLI::App* cmd, AttackFlags& f) {
    cmd->add_option("--dataset", f.datasets,
                    "CSV path or fixture name (separable-2d, two-blob-nonconvex); repeatable");
    cmd->add_option("--defender", f.defenders,
                    "defender kind: linear|knn|dtree|rforest|rbf; repeatable");
    cmd->add_option("--method", f.methods, "attack method: ap|re; repeatable");
    cmd->add_option("--config", f.config_file, "flat key=value config file");
    cmd->add_option("--runs", f.runs, "repetitions per matrix cell");
    cmd->add_option("--seed", f.seed, "master seed");
    cmd->add_option("--b-explore", f.b_explore, "probe budget (both methods)");
    cmd->add_option("--n-attack", f.n_attack, "attack set size (both methods)");
    cmd->add_option("--r-exploit", f.r_exploit, "exploitation radius (both methods)");
    cmd->add_option("--fixture-n", f.fixture_n, "rows generated for fixture datasets");
    cmd->add_option("--set", f.overrides,
                    "extra config override as key=value; repeatable");
    cmd->add_option("--out", f.out_dir, "output directory")->required();
}

evasion::ExperimentConfig build_config(const CLI::App* cmd, const AttackFlags& f) {
    evasion::ExperimentConfig cfg;
    if (!f.config_file.empty())
        cfg = evasion::load_config_file(f.config_file);

    if (cmd->count("--dataset"))
        cfg.datasets = f.datasets;
    if (cmd->count("--defender"))
        cfg.defenders = f.defenders;
    if (cmd->count("--method")) {
        cfg.methods.clear();
        for (const auto& m : f.methods)
            cfg.methods.push_back(evasion::method_from(m));
    }
    if (cfg.methods.empty())
        cfg.methods = {evasion::AttackMethod::AP, evasion::AttackMethod::RE};
    if (cmd->count("--runs"))
        cfg.runs = f.runs;
    if (cmd->count("--seed"))
        cfg.master_seed = f.seed;
    if (cmd->count("--b-explore")) {
        cfg.ap.b_explore = f.b_explore;
        cfg.re.b_explore = f.b_explore;
    }
    if (cmd->count("--n-attack")) {
        cfg.ap.n_attack = f.n_attack;
        cfg.re.n_attack = f.n_attack;
    }
    if (cmd->count("--r-exploit")) {
        cfg.ap.r_exploit = f.r_exploit;
        cfg.re.r_exploit = f.r_exploit;
    }
    if (cmd->count("--fixture-n"))
        cfg.fixture_n = f.fixture_n;

    for (const auto& kv : f.overrides) {
        const auto eq = kv.find('=');
        if (eq == std::string::npos)
            throw evasion::ConfigError("--set expects key=value, got '" + kv + "'");
        evasion::apply_config_entry(cfg, kv.substr(0, eq), kv.substr(eq + 1));
    }
    return cfg;
}

int report_outcome(const evasion::ExperimentResult& result) {
    std::cout << evasion::format_report_table(result.report);
    if (!result.errors.empty()) {
        std::cerr << result.errors.size() << " matrix cell(s) failed:\n";
        for (const auto& e : result.errors)
            std::cerr << "  " << e.dataset << "/" << e.defender << "/" << e.method
                      << "/run" << e.run << ": " << e.message << "\n";
        return 2;
    }
    return 0;
}

std::vector<double> parse_values(const std::string& csv) {
    std::vector<double> out;
    std::stringstream ss(csv);
    std::string item;
    while (std::getline(ss, item, ',')) {
        if (item.empty())
            continue;
        try {
            std::size_t used = 0;
            const double v = std::stod(item, &used);
            if (used != item.size())
                throw std::invalid_argument(item);
            out.push_back(v);
        } catch (const std::exception&) {
            throw evasion::ConfigError("--values: cannot parse '" + item +
                                       "' as a number");
        }
    }
    return out;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"evasion: black-box classifier evasion testbed"};
    app.require_subcommand(1);

    AttackFlags attack_flags;
    auto* attack_cmd = app.add_subcommand(
        "attack", "run the experiment matrix and write a report");
    add_attack_flags(attack_cmd, attack_flags);

    AttackFlags sweep_flags;
    std::string sweep_param;
    std::string sweep_values;
    bool sweep_charts = false;
    auto* sweep_cmd =
        app.add_subcommand("sweep", "run one experiment per parameter value");
    sweep_cmd->add_option("--param", sweep_param, "r-exploit | b-explore")
        ->required();
    sweep_cmd->add_option("--values", sweep_values, "comma-separated, increasing")
        ->required();
    sweep_cmd->add_flag("--charts", sweep_charts, "also render an SVG line chart");
    add_attack_flags(sweep_cmd, sweep_flags);

    std::string gen_kind, gen_out;
    std::uint64_t gen_n = 400, gen_seed = 1;
    auto* gen_cmd = app.add_subcommand("gen-data", "write a synthetic fixture CSV");
    gen_cmd->add_option("--kind", gen_kind, "separable-2d | two-blob-nonconvex")
        ->required();
    gen_cmd->add_option("--n", gen_n, "rows to generate (>= 20)");
    gen_cmd->add_option("--seed", gen_seed, "generator seed");
    gen_cmd->add_option("--out", gen_out, "output CSV path")->required();

    std::string report_dir;
    bool report_charts = false;
    auto* report_cmd = app.add_subcommand(
        "report", "rebuild aggregates (and charts) from an existing report dir");
    report_cmd->add_option("dir", report_dir, "report directory")->required();
    report_cmd->add_flag("--charts", report_charts, "re-render sweep charts");

    CLI11_PARSE(app, argc, argv);

    try {
        if (*attack_cmd) {
            const auto cfg = build_config(attack_cmd, attack_flags);
            const auto result = evasion::run_experiment(cfg);
            evasion::emit_report(result, attack_flags.out_dir);
            std::cout << "report written to " << attack_flags.out_dir << "\n";
            return report_outcome(result);
        }
        if (*sweep_cmd) {
            evasion::SweepSpec spec;
            spec.parameter = evasion::sweep_parameter_from(sweep_param);
            spec.values = parse_values(sweep_values);
            spec.base = build_config(sweep_cmd, sweep_flags);
            const auto results = evasion::run_sweep(spec);
            evasion::emit_sweep(spec.parameter, results, sweep_flags.out_dir,
                                sweep_charts);
            int rc = 0;
            for (const auto& [value, result] : results) {
                std::cout << "== " << evasion::to_string(spec.parameter) << " = "
                          << value << "\n";
                rc = std::max(rc, report_outcome(result));
            }
            std::cout << "sweep written to " << sweep_flags.out_dir << "\n";
            return rc;
        }
        if (*gen_cmd) {
            const auto ds = evasion::make_synthetic(
                evasion::synthetic_kind_from(gen_kind), gen_n, gen_seed);
            evasion::save_csv(ds, gen_out);
            std::cout << "wrote " << ds.size() << " rows to " << gen_out << "\n";
            return 0;
        }
        if (*report_cmd) {
            const auto written = evasion::regenerate_report(report_dir, report_charts);
            for (const auto& p : written)
                std::cout << "wrote " << p.string() << "\n";
            return 0;
        }
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
