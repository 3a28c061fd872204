#pragma once

#include <utility>
#include <vector>

#include "wlanopt/types.hpp"

// Instantaneous throughput models for CSMA and TDMA, the throughput-based
// utility function, and the closed-form expected utility / cost / usage
// expressions for the two-type, single-plan, admit-all scenario.
//
// CSMA is the symmetric slotted-ALOHA abstraction: with m online users each
// transmitting independently with probability p per slot, a given user
// succeeds at rate p(1-p)^(m-1) (bandwidth normalized to 1). TDMA gives every
// online user an equal guaranteed share 1/m.

namespace wlanopt {

/// Instantaneous throughput of an online (k,l) user in state x.
/// Requires x[k][l] >= 1 (the user must be online).
double throughput(const SystemState& x, int k, int l, const MacProtocol& protocol);

/// Throughput for a given total online count m >= 1.
double throughput_at(int online_total, const MacProtocol& protocol);

/// u_k(tau) = alpha_k - beta_k / tau. Requires tau > 0; may be negative.
double utility_of_use(const UserType& t, double tau);

/// The congestion factor x_k(pi) = pi * lambda_k/(lambda_k+mu_k) * p/(1-p) + 1
/// appearing in the CSMA closed forms. Uses the type's own rates.
double x_factor(double pi_in, const UserType& t, double p);

// ---------------------------------------------------------------------------
// Closed forms (K = 2, L = 1, admit-all). "Unit" quantities are per unit of
// in-probability: a user playing pi'_in earns pi'_in * unit_use and pays
// pi'_in * (p_s + q * unit_usage).
// ---------------------------------------------------------------------------

/// Expected utility of use per unit in-probability of a deviating type-k user
/// when everyone else plays in-probabilities pi_in[0..1].
double csma_unit_use(int k, const double pi_in[2], const Scenario& s);
double tdma_unit_use(int k, const double pi_in[2], const Scenario& s);

/// Expected guaranteed usage (B-hat) of a pinned-in type-k user over one
/// billing period. TDMA: DT * r_k * E[1/(1 + Y_k + Y_-k)] with
/// Y_k ~ Bin(N_k - 1, pi_k r_k), Y_-k ~ Bin(N_-k, pi_-k r_-k).
double csma_unit_usage(int k, const double pi_in[2], const Scenario& s);
double tdma_unit_usage(int k, const double pi_in[2], const Scenario& s);

/// Dispatch on the scenario protocol.
double unit_use(int k, const double pi_in[2], const Scenario& s);
double unit_usage(int k, const double pi_in[2], const Scenario& s);

/// Profile-level wrappers over the closed forms. `deviation` is the
/// acting user's own in-probability (defaults to the profile's).
/// Returns {U_k, C_k}. Requires K=2, L=1 (policy with one non-dummy plan),
/// admit-all, and the matching protocol.
std::pair<double, double> csma_expected_utility(int k, const ActionProfile& profile,
                                                std::optional<double> deviation,
                                                const PricingPolicy& policy, const Scenario& s);
std::pair<double, double> tdma_expected_utility(int k, const ActionProfile& profile,
                                                std::optional<double> deviation,
                                                const PricingPolicy& policy, const Scenario& s);
/// B-hat_k for the profile (TDMA).
double tdma_expected_usage(int k, const ActionProfile& profile, const Scenario& s);

/// Binomial(n, p) probability mass function as a dense vector of length n+1.
std::vector<double> binomial_pmf(int n, double p);

}  // namespace wlanopt
