// ncmaj: command line front door for the matrix-valued Boolean analysis lab.
//
//   ncmaj list
//   ncmaj run <experiment> [--seed S] [--config file.json] [flag overrides]
//
// Seed precedence: --seed flag, then NCMAJ_SEED, then time-derived (recorded
// in the report either way). Exit status 0 on pass or report-only verdicts,
// 2 on a failed hard assertion.

#include <CLI11.hpp>
#include <chrono>
#include <cstdlib>
#include <fstream>
#include <iostream>

#include "ncmaj/serialization.hpp"

namespace {

using ncmaj::json;

std::uint64_t resolve_seed(bool seed_set, std::uint64_t flag_seed, std::string& source) {
    if (seed_set) {
        source = "flag";
        return flag_seed;
    }
    if (const char* env = std::getenv("NCMAJ_SEED")) {
        source = "env";
        return std::strtoull(env, nullptr, 10);
    }
    source = "time";
    return static_cast<std::uint64_t>(
        std::chrono::duration_cast<std::chrono::nanoseconds>(
            std::chrono::system_clock::now().time_since_epoch())
            .count());
}

void write_csv(const ncmaj::ExperimentReport& rep, const std::string& path) {
    if (!rep.config.contains("cdf_thresholds")) {
        std::cerr << "note: experiment emitted no grid table, csv skipped\n";
        return;
    }
    std::ofstream out(path);
    out << "threshold,boolean_exceed,mc_exceed\n";
    const auto& t = rep.config["cdf_thresholds"];
    const auto& b = rep.config["cdf_boolean"];
    const auto& m = rep.config["cdf_mc"];
    for (std::size_t i = 0; i < t.size(); ++i)
        out << t[i].get<double>() << "," << b[i].get<double>() << "," << m[i].get<double>()
            << "\n";
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"numerical lab for matrix-valued Boolean analysis, moment majorization and "
                 "noncommutative Grothendieck optimization"};
    app.require_subcommand(1);

    auto* list = app.add_subcommand("list", "list registered experiments and their defaults");

    auto* run = app.add_subcommand("run", "run one experiment and write a JSON report");
    std::string name;
    run->add_option("experiment", name, "experiment name (see `ncmaj list`)")->required();
    std::string config_path, out_path, csv_path;
    run->add_option("--config", config_path, "JSON file with parameter overrides");
    run->add_option("--out", out_path, "write the report to this path");
    run->add_option("--csv", csv_path, "write grid tables (exceedance curves) as CSV");
    std::uint64_t seed = 0;
    auto* seed_opt = run->add_option("--seed", seed, "master seed (beats NCMAJ_SEED)");
    int workers = 0;
    run->add_option("--workers", workers, "worker threads (default: hardware)");

    // common numeric overrides; unset flags leave the experiment defaults
    json overrides = json::object();
    std::map<std::string, long long> int_flags;
    std::map<std::string, double> real_flags;
    std::map<std::string, std::string> str_flags;
    const std::vector<std::string> int_names = {"m",       "n",       "d",     "K",  "N",
                                                "samples", "restarts", "p",    "dmax",
                                                "instances", "rounding_draws"};
    const std::vector<std::string> real_names = {"rho", "tau", "tol", "c2", "t_max", "t_step"};
    const std::vector<std::string> str_names = {"family", "f_kind", "kind", "pipeline"};
    for (const auto& key : int_names)
        run->add_option("--" + key, int_flags[key]);
    for (const auto& key : real_names)
        run->add_option("--" + key, real_flags[key]);
    for (const auto& key : str_names)
        run->add_option("--" + key, str_flags[key]);
    std::vector<int> p_grid;
    auto* p_grid_opt = run->add_option("--p-grid", p_grid, "p sweep values");
    bool damping = false;
    auto* damping_opt = run->add_flag("--damping", damping, "include the block damping check");
    std::string instance_path;
    run->add_option("--instance", instance_path,
                    "JSON instance file (4-tensor or block matrix)");

    CLI11_PARSE(app, argc, argv);

    if (list->parsed()) {
        for (const auto& info : ncmaj::experiment_registry()) {
            std::cout << info.name << "\n  " << info.summary << "\n  defaults: "
                      << info.defaults.dump() << "\n";
        }
        return 0;
    }

    try {
        json params = json::object();
        if (!config_path.empty()) {
            std::ifstream in(config_path);
            if (!in) throw ncmaj::InvalidInput("cannot open config file " + config_path);
            json file_cfg = json::parse(in);
            // accept either a bare parameter map or a full emitted report
            if (file_cfg.contains("config"))
                params = file_cfg["config"];
            else
                params = file_cfg;
            params.erase("seed");
        }
        for (const auto& key : int_names)
            if (run->count("--" + key)) params[key] = int_flags[key];
        for (const auto& key : real_names)
            if (run->count("--" + key)) params[key] = real_flags[key];
        for (const auto& key : str_names)
            if (run->count("--" + key)) params[key] = str_flags[key];
        if (p_grid_opt->count()) params["p_grid"] = p_grid;
        if (damping_opt->count()) params["damping"] = damping;
        if (!instance_path.empty()) {
            std::ifstream in(instance_path);
            if (!in) throw ncmaj::InvalidInput("cannot open instance file " + instance_path);
            params["instance"] = json::parse(in);
        }

        std::string seed_source;
        std::uint64_t resolved_seed = resolve_seed(seed_opt->count() > 0, seed, seed_source);
        if (!config_path.empty() && seed_opt->count() == 0 && !std::getenv("NCMAJ_SEED")) {
            // a config file produced by a previous run carries its seed
            std::ifstream in(config_path);
            json file_cfg = json::parse(in);
            if (file_cfg.contains("seed")) {
                resolved_seed = file_cfg["seed"].get<std::uint64_t>();
                seed_source = "config";
            } else if (file_cfg.contains("config") && file_cfg["config"].contains("seed")) {
                resolved_seed = file_cfg["config"]["seed"].get<std::uint64_t>();
                seed_source = "config";
            }
        }

        ncmaj::ExperimentReport rep =
            ncmaj::run_experiment(name, params, resolved_seed, workers);
        rep.config["seed_source"] = seed_source;

        const json out = ncmaj::report_to_json(rep);
        std::cout << "seed: " << resolved_seed << " (" << seed_source << ")\n";
        std::cout << "verdict: " << ncmaj::verdict_name(rep.verdict) << "\n";
        for (const auto& v : rep.values) {
            std::cout << "  " << v.label << " = " << v.value;
            if (v.stderr_) std::cout << " +- " << *v.stderr_;
            std::cout << "  [" << v.provenance << "]\n";
        }
        if (!out_path.empty()) {
            std::ofstream f(out_path);
            f << out.dump(2) << "\n";
        } else {
            std::cout << out.dump(2) << "\n";
        }
        if (!csv_path.empty()) write_csv(rep, csv_path);
        return rep.verdict == ncmaj::Verdict::Fail ? 2 : 0;
    } catch (const ncmaj::InvalidInput& e) {
        std::cerr << "invalid input: " << e.what() << "\n";
        return 64;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}
