#pragma once

#include <functional>
#include <string>
#include <vector>

#include "wlanopt/types.hpp"

// The Stackelberg first stage: for each of the candidate equilibrium types
// the provider can induce, find the best pricing policy and the objective it
// achieves, then pick the best candidate. Benevolent providers maximize
// social welfare over six candidate types (the three all-mixed/out patterns
// other than full shutdown are never better than zero welfare); selfish
// providers maximize revenue over all nine.
//
// Everything here is specialized to the two-type, single-non-dummy-plan,
// admit-all scenario of the design procedures. Pricing under CSMA is a pure
// subscription fee; under TDMA it is a (p_s, q) pair.

namespace wlanopt {

enum class Objective { Welfare, Revenue };

struct NECandidate {
    NEType type;
    ActionProfile profile;
    PricingPolicy policy;
    double welfare = 0.0;
    double revenue = 0.0;
    bool feasible = false;
    std::string note;  // reason when infeasible
};

struct SearchOptions {
    double grid_step = 1e-2;   // coarse grid for pi searches
    double refine_tol = 1e-8;  // refinement interval width
    int ps_grid = 1000;        // subscription-fee grid for the both-mixed CSMA step
    bool skip_both_mixed = false;  // drop the (m,m) candidate (selfish providers)
};

struct DesignOutcome {
    DesignSolution best;
    std::vector<NECandidate> candidates;  // in tie-break priority order
};

struct Objectives {
    double welfare = 0.0;
    double revenue = 0.0;
    bool ir_ok = false;
};

/// S = sum_k (U_k - C_k) N_k and R = sum_k C_k N_k for an arbitrary
/// profile/policy, with the provider's individual-rationality flag
/// (revenue covers c0 whenever anyone subscribes).
Objectives evaluate_objectives(const ActionProfile& profile, const PricingPolicy& policy,
                               const Scenario& s);

struct ScalarMaxResult {
    double arg = 0.0;
    double value = 0.0;
};

/// Deterministic maximizer on [0,1]: coarse grid scan followed by iterative
/// zoom refinement around the best cell down to `tol` interval width.
/// Ties keep the leftmost point. -inf / NaN values mark infeasible points.
ScalarMaxResult scalar_maximize(const std::function<double(double)>& f,
                                double grid_step = 1e-2, double tol = 1e-8);

DesignOutcome solve_benevolent_csma(const Scenario& s, const SearchOptions& opt = {});
DesignOutcome solve_selfish_csma(const Scenario& s, const SearchOptions& opt = {});
DesignOutcome solve_benevolent_tdma(const Scenario& s, const SearchOptions& opt = {});
DesignOutcome solve_selfish_tdma(const Scenario& s, const SearchOptions& opt = {});

/// Dispatch on objective and the scenario's protocol.
DesignOutcome solve_design(Objective obj, const Scenario& s, const SearchOptions& opt = {});

}  // namespace wlanopt
