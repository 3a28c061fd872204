// Command-line front end: figure-level experiments (phase diagrams, welfare
// and profit curves, the instantaneous-utility curve), the Monte Carlo
// simulator, the verification suites, and single-scenario design solving.

#include <cstdio>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "wlanopt/json_io.hpp"
#include "wlanopt/sweep.hpp"
#include "wlanopt/verify.hpp"
#include "wlanopt/version.hpp"

namespace {

using namespace wlanopt;

void add_sweep_flags(CLI::App* cmd, SweepSpec& spec, std::string& n1_text, std::string& n2_text,
                     std::string& preset, std::string& out_path) {
    cmd->add_option("--preset", preset, "'paper': the two-type video/email baseline (default)");
    cmd->add_option("--provider", spec.provider, "benevolent | selfish | both");
    cmd->add_option("--protocol", spec.protocol, "csma | tdma | both");
    cmd->add_option("--n1", n1_text, "video population: N or a:b or a:b:step");
    cmd->add_option("--n2-range", n2_text, "email population range a:b or a:b:step");
    cmd->add_option("--demand1", spec.demand1, "lambda/mu of video users");
    cmd->add_option("--demand2", spec.demand2, "lambda/mu of email users");
    cmd->add_option("--c0-csma", spec.c0_csma, "provider fixed cost under CSMA");
    cmd->add_option("--c0-tdma", spec.c0_tdma, "provider fixed cost under TDMA");
    cmd->add_option("--grid-step", spec.grid_step, "search grid step for the solvers");
    cmd->add_option("--ps-grid", spec.ps_grid, "fee grid points for the both-mixed search");
    cmd->add_option("--jobs", spec.jobs, "worker threads (0 = all cores)");
    cmd->add_option("--alpha1", spec.alpha1, "video utility ceiling");
    cmd->add_option("--beta1", spec.beta1, "video throughput sensitivity");
    cmd->add_option("--alpha2", spec.alpha2, "email utility ceiling");
    cmd->add_option("--beta2", spec.beta2, "email throughput sensitivity");
    cmd->add_option("--csma-p", spec.csma_p, "CSMA transmission probability");
    cmd->add_option("--delta-t", spec.delta_t, "billing period length");
    cmd->add_option("--out", out_path, "output CSV path");
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"optimal pricing and user equilibria for a wireless-LAN provider"};
    app.set_version_flag("--version", std::string("wlanopt ") + kVersion);
    app.require_subcommand(1);

    SweepSpec spec;
    std::string n1_text, n2_text, out_path = "out.csv", preset;

    auto* phase = app.add_subcommand("phase-diagram",
                                     "optimal NE type per (N1, N2) grid point");
    add_sweep_flags(phase, spec, n1_text, n2_text, preset, out_path);

    auto* welfare = app.add_subcommand("welfare-curve",
                                       "benevolent welfare, CSMA vs TDMA, over N2");
    add_sweep_flags(welfare, spec, n1_text, n2_text, preset, out_path);

    auto* profit = app.add_subcommand("profit-curve",
                                      "selfish profit, CSMA vs TDMA, over N2");
    add_sweep_flags(profit, spec, n1_text, n2_text, preset, out_path);

    auto* utility = app.add_subcommand("utility-curve",
                                       "instantaneous utility vs CSMA throughput, m = 20..1");
    add_sweep_flags(utility, spec, n1_text, n2_text, preset, out_path);

    auto* solve = app.add_subcommand("solve", "solve one design problem, JSON to stdout");
    std::string scenario_path, provider_one = "benevolent";
    double solve_grid_step = 1e-2;
    int solve_ps_grid = 1000;
    solve->add_option("--scenario", scenario_path, "scenario JSON file")->required();
    solve->add_option("--provider", provider_one, "benevolent | selfish");
    solve->add_option("--grid-step", solve_grid_step, "search grid step");
    solve->add_option("--ps-grid", solve_ps_grid, "fee grid points for the both-mixed search");

    auto* simulate_cmd = app.add_subcommand("simulate", "run the Monte Carlo simulator");
    std::string sim_config_path, sim_out = "-";
    std::uint64_t sim_seed = 0;
    simulate_cmd->add_option("--config", sim_config_path, "SimConfig JSON file")->required();
    simulate_cmd->add_option("--seed", sim_seed, "override the config seed");
    simulate_cmd->add_option("--out", sim_out, "report JSON path ('-' for stdout)");

    auto* verify_cmd = app.add_subcommand("verify",
                                          "run an oracle suite: lemmas|solver|simulator|collapse");
    std::string mode;
    std::uint64_t verify_seed = 0;
    verify_cmd->add_option("mode", mode, "lemmas | solver | simulator | collapse")->required();
    verify_cmd->add_option("--seed", verify_seed, "suite seed where applicable");

    CLI11_PARSE(app, argc, argv);

    if (!preset.empty() && preset != "paper") {
        std::cerr << "unknown preset: " << preset << " (only 'paper' exists)\n";
        return 2;
    }

    try {
        if (*phase || *welfare || *profit || *utility) {
            if (!n1_text.empty()) spec.n1 = IntRange::parse(n1_text);
            if (!n2_text.empty()) spec.n2 = IntRange::parse(n2_text);
        }
        if (*phase) {
            write_output(out_path, phase_csv(phase_diagram(spec)), spec);
            std::cout << out_path << "\n";
        } else if (*welfare) {
            spec.provider = "benevolent";
            write_output(out_path, curve_csv(welfare_curve(spec), "welfare"), spec);
            std::cout << out_path << "\n";
        } else if (*profit) {
            spec.provider = "selfish";
            write_output(out_path, curve_csv(profit_curve(spec), "profit"), spec);
            std::cout << out_path << "\n";
        } else if (*utility) {
            write_output(out_path, utility_csv(utility_curve(spec)), spec);
            std::cout << out_path << "\n";
        } else if (*solve) {
            const Scenario s = scenario_from_json(load_json_file(scenario_path));
            const auto errs = validate_scenario(s);
            if (!errs.empty()) {
                for (const auto& e : errs) std::cerr << "invalid scenario: " << e << "\n";
                return 2;
            }
            SearchOptions opt;
            opt.grid_step = solve_grid_step;
            opt.ps_grid = solve_ps_grid;
            const Objective obj =
                provider_one == "selfish" ? Objective::Revenue : Objective::Welfare;
            std::cout << design_outcome_to_json(solve_design(obj, s, opt)).dump(2) << "\n";
        } else if (*simulate_cmd) {
            SimConfig cfg = sim_config_from_json(load_json_file(sim_config_path));
            if (simulate_cmd->count("--seed")) cfg.seed = sim_seed;
            const json report = sim_report_to_json(simulate(cfg));
            if (sim_out == "-")
                std::cout << report.dump(2) << "\n";
            else
                save_json_file(sim_out, report);
        } else if (*verify_cmd) {
            verify::SuiteResult result;
            const bool seeded = verify_cmd->count("--seed") > 0;
            if (mode == "lemmas") result = verify::closed_form_suite();
            else if (mode == "solver") result = verify::solver_suite();
            else if (mode == "simulator")
                result = seeded ? verify::simulator_suite(verify_seed) : verify::simulator_suite();
            else if (mode == "collapse")
                result = seeded ? verify::collapse_suite(verify_seed) : verify::collapse_suite();
            else {
                std::cerr << "unknown verify mode: " << mode << "\n";
                return 2;
            }
            std::printf("%s: %d checks, %d failures\n", result.name.c_str(), result.checks,
                        result.failures);
            for (const auto& m : result.messages) std::printf("  FAIL %s\n", m.c_str());
            return result.passed() ? 0 : 1;
        }
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 0;
}
