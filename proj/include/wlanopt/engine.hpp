#pragma once

#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include "wlanopt/types.hpp"

// Exact steady-state evaluation by enumeration: the ground-truth oracle the
// closed forms are tested against. Works for any K, L and either admission
// policy, at desk scale (it refuses instances whose admissible state set
// exceeds kMaxStates and directs callers to the closed forms or the
// simulator).

namespace wlanopt {

inline constexpr std::int64_t kMaxStates = 10'000'000;

struct StationaryDistribution {
    std::vector<std::pair<SystemState, double>> support;
};

/// Stationary law of the online-count process for a fixed randomization
/// outcome. The unnormalized weight of state x is
///   prod_{k,l} C(n_{k,l}, x_{k,l}) (lambda_k/mu_k)^{x_{k,l}}
/// restricted to the admissible set and normalized; under admit-all each
/// x_{k,l} is Binomial(n_{k,l}, lambda_k/(lambda_k+mu_k)).
StationaryDistribution stationary_distribution(const Randomization& n, const Scenario& s);

/// V_k^l: expected utility of use of one (k,l) subscriber over a billing
/// period at steady state. Requires n[k][l] >= 1.
double steady_state_utility(int k, int l, const Randomization& n, const Scenario& s);

/// B_k^l: expected guaranteed data amount of one (k,l) subscriber over a
/// billing period at steady state. Requires n[k][l] >= 1.
double expected_guaranteed_rate(int k, int l, const Randomization& n, const Scenario& s);

/// Law of the randomization outcome given that one type-k user is pinned to
/// plan l; the remaining users randomize independently according to the
/// profile. Well defined even when pi_{k,l} = 0.
std::vector<std::pair<Randomization, double>> randomization_distribution(
    int k, int l, const ActionProfile& profile, const Scenario& s);

/// U_k: expected utility of use of a type-k user whose own plan distribution
/// is `deviation` (profile row k when absent) while everyone else follows the
/// profile.
double expected_utility_of_use(int k, const ActionProfile& profile, const Scenario& s,
                               const std::optional<std::vector<double>>& deviation = {});

/// C_k: expected cost under the policy, same deviation convention.
double expected_cost(int k, const ActionProfile& profile, const PricingPolicy& policy,
                     const Scenario& s,
                     const std::optional<std::vector<double>>& deviation = {});

}  // namespace wlanopt
