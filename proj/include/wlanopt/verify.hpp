#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "wlanopt/design.hpp"
#include "wlanopt/types.hpp"

// Oracle-equivalence suites: closed forms against the exact enumeration
// engine, the table-procedure solvers against dense-grid brute force, the
// simulator against the exact engine, and the policy-collapse reduction.
// Shared by the `verify` CLI subcommand and the acceptance harness.

namespace wlanopt::verify {

struct SuiteResult {
    std::string name;
    int checks = 0;
    int failures = 0;
    std::vector<std::string> messages;
    std::vector<std::string> notes;  // printed even when the suite passes

    SuiteResult() = default;
    explicit SuiteResult(std::string suite_name) : name(std::move(suite_name)) {}

    void check(bool ok, const std::string& what);
    bool passed() const { return failures == 0; }
};

/// |a - b| <= rel * max(|a|,|b|) + abs_floor.
bool close_rel(double a, double b, double rel, double abs_floor = 1e-12);

/// Closed forms vs exact enumeration on the N1,N2 <= 6 grid (profiles on a
/// 0.25 grid, demand ratios {0.1, 1}^2), per protocol or combined.
SuiteResult closed_form_suite_csma();
SuiteResult closed_form_suite_tdma();
SuiteResult closed_form_suite();

/// Table-procedure solvers vs brute force over pricing with independent NE
/// search, N1,N2 <= 3, both providers and protocols, c0 in {0, 0.5}.
SuiteResult solver_suite();

/// Simulator vs exact engine on five fixed scenarios, 3-sigma bands.
SuiteResult simulator_suite(std::uint64_t seed = 20240817);

/// Policy collapse on random two-plan TDMA policies with computed equilibria.
SuiteResult collapse_suite(std::uint64_t seed = 7, int cases = 100);

/// Best objective achievable by any pricing inducing any Nash equilibrium,
/// found by grid search with zoom refinement; the solver oracle.
double brute_force_objective(Objective obj, const Scenario& s);

}  // namespace wlanopt::verify
