#pragma once

#include <optional>
#include <string>
#include <vector>

#include "wlanopt/types.hpp"

// Nash-equilibrium machinery for the plan selection game: per-plan net
// payoffs of a deviating user, equilibrium verification with a certificate,
// mixed-equilibrium indifference solving, and the reduction of a multi-plan
// TDMA policy to an equivalent single-plan one.

namespace wlanopt {

inline constexpr double kNashTol = 1e-6;         // default net-payoff slack
inline constexpr double kIndifferenceTol = 1e-9; // |w| at a solved mixed coordinate

/// w_{k,l}: net value per unit probability a type-k user places on plan l,
/// holding everyone else at the profile. w_{k,0} = 0 (dummy plan). The
/// deviation payoff of playing row pi'_k is the inner product pi'_k . w_k.
struct NetPayoffs {
    std::vector<double> w;
    double best() const;  // max over plans (>= 0 since w[0] = 0)
};

/// Uses the closed forms when K=2 with admit-all (the per-plan value is then
/// plan-independent), exact enumeration otherwise.
NetPayoffs net_payoffs(int k, const ActionProfile& profile, const PricingPolicy& policy,
                       const Scenario& s);

struct NashCertificate {
    bool is_nash = false;
    std::vector<double> gaps;  // per type: best-response value minus achieved value
    int worst_type = -1;
    double worst_gap = 0.0;
};

/// Definition-1 check: every plan in the support of pi_k attains the best net
/// payoff within tol. Types with zero population impose no constraint.
NashCertificate nash_certificate(const ActionProfile& profile, const PricingPolicy& policy,
                                 const Scenario& s, double tol = kNashTol);
bool is_nash(const ActionProfile& profile, const PricingPolicy& policy, const Scenario& s,
             double tol = kNashTol);

/// Construct the symmetric profile of the requested equilibrium type for a
/// single-plan policy (K=2, L=1): In -> 1, Out -> 0, Mixed -> interior root of
/// w = 0. Returns nothing if no profile of that type satisfies the stance
/// conditions (In: w >= 0, Out: w <= 0, Mixed: w = 0 strictly inside (0,1)).
std::optional<ActionProfile> solve_mixed_indifference(const NEType& which,
                                                      const PricingPolicy& policy,
                                                      const Scenario& s);

struct CollapseResult {
    bool ok = false;
    PricingPolicy policy;   // (dummy, (p_s, q)) when ok
    std::string reason;     // set when !ok
};

/// Replace a multi-plan TDMA policy with a single-plan one that preserves the
/// given equilibrium and both types' expected costs. Requires TDMA, admit-all,
/// K=2. Singular cost-matching systems with unequal targets are reported, not
/// solved.
CollapseResult collapse_policy(const PricingPolicy& multi, const ActionProfile& profile,
                               const Scenario& s);

/// The in-probability view of a K=2 profile after collapsing plans.
ActionProfile collapse_profile(const ActionProfile& profile);

}  // namespace wlanopt
