#include "wlanopt/mac.hpp"

#include <cmath>

namespace wlanopt {

namespace {

void require_two_type_single_plan(const Scenario& s, Protocol expected) {
    if (s.num_types() != 2)
        throw std::invalid_argument("closed forms require exactly two user types");
    if (!s.admission.admits_all())
        throw std::invalid_argument("closed forms require the admit-all policy");
    if (s.protocol.kind != expected)
        throw std::invalid_argument("closed form called for the wrong MAC protocol");
}

}  // namespace

double throughput_at(int m, const MacProtocol& protocol) {
    if (m < 1) throw std::invalid_argument("throughput: no online user to measure");
    if (protocol.is_tdma()) return 1.0 / m;
    return protocol.p * std::pow(1.0 - protocol.p, m - 1);
}

double throughput(const SystemState& x, int k, int l, const MacProtocol& protocol) {
    if (l == 0) throw std::invalid_argument("throughput: dummy-plan users are not in the network");
    if (x.x[k][l] < 1) throw std::invalid_argument("throughput: the (k,l) user is not online");
    return throughput_at(x.online_total(), protocol);
}

double utility_of_use(const UserType& t, double tau) {
    if (!(tau > 0.0)) throw std::invalid_argument("utility_of_use: tau must be > 0");
    return t.alpha - t.beta / tau;
}

double x_factor(double pi_in, const UserType& t, double p) {
    return pi_in * t.occupancy() * p / (1.0 - p) + 1.0;
}

double csma_unit_use(int k, const double pi_in[2], const Scenario& s) {
    require_two_type_single_plan(s, Protocol::Csma);
    const auto& own = s.types[k];
    const auto& other = s.types[1 - k];
    const double p = s.protocol.p;
    const double congestion = std::pow(x_factor(pi_in[k], own, p), own.count - 1) *
                              std::pow(x_factor(pi_in[1 - k], other, p), other.count);
    return s.delta_t * own.occupancy() * (own.alpha - own.beta / p * congestion);
}

double tdma_unit_use(int k, const double pi_in[2], const Scenario& s) {
    require_two_type_single_plan(s, Protocol::Tdma);
    const auto& own = s.types[k];
    const auto& other = s.types[1 - k];
    const double load = 1.0 + own.occupancy() * (own.count - 1) * pi_in[k] +
                        other.occupancy() * other.count * pi_in[1 - k];
    return s.delta_t * own.occupancy() * (own.alpha - own.beta * load);
}

double csma_unit_usage(int k, const double pi_in[2], const Scenario& s) {
    require_two_type_single_plan(s, Protocol::Csma);
    const auto& own = s.types[k];
    const auto& other = s.types[1 - k];
    const double p = s.protocol.p;
    // E[p(1-p)^Y] over the other online users; each is online-and-subscribed
    // independently with probability pi * occupancy.
    const double shade = std::pow(1.0 - pi_in[k] * own.occupancy() * p, own.count - 1) *
                         std::pow(1.0 - pi_in[1 - k] * other.occupancy() * p, other.count);
    return s.delta_t * own.occupancy() * p * shade;
}

std::vector<double> binomial_pmf(int n, double p) {
    if (n < 0) n = 0;  // an empty population contributes a point mass at zero
    std::vector<double> pmf(static_cast<std::size_t>(n) + 1, 0.0);
    if (n == 0 || p <= 0.0) {
        pmf[0] = 1.0;
        if (n > 0 && p >= 1.0) { pmf[0] = 0.0; pmf[n] = 1.0; }
        return pmf;
    }
    if (p >= 1.0) {
        pmf[n] = 1.0;
        return pmf;
    }
    pmf[0] = std::pow(1.0 - p, n);
    const double ratio = p / (1.0 - p);
    for (int j = 0; j < n; ++j)
        pmf[j + 1] = pmf[j] * ratio * (n - j) / (j + 1);
    return pmf;
}

double tdma_unit_usage(int k, const double pi_in[2], const Scenario& s) {
    require_two_type_single_plan(s, Protocol::Tdma);
    const auto& own = s.types[k];
    const auto& other = s.types[1 - k];
    const auto own_pmf = binomial_pmf(own.count - 1, pi_in[k] * own.occupancy());
    const auto other_pmf = binomial_pmf(other.count, pi_in[1 - k] * other.occupancy());
    double mean_share = 0.0;
    for (std::size_t i = 0; i < own_pmf.size(); ++i) {
        if (own_pmf[i] == 0.0) continue;
        for (std::size_t j = 0; j < other_pmf.size(); ++j)
            mean_share += own_pmf[i] * other_pmf[j] / (1.0 + i + j);
    }
    return s.delta_t * own.occupancy() * mean_share;
}

double unit_use(int k, const double pi_in[2], const Scenario& s) {
    return s.protocol.is_csma() ? csma_unit_use(k, pi_in, s) : tdma_unit_use(k, pi_in, s);
}

double unit_usage(int k, const double pi_in[2], const Scenario& s) {
    return s.protocol.is_csma() ? csma_unit_usage(k, pi_in, s) : tdma_unit_usage(k, pi_in, s);
}

namespace {

void require_single_plan_policy(const PricingPolicy& policy) {
    if (policy.num_plans() != 2)
        throw std::invalid_argument("closed forms require a single non-dummy plan");
}

std::pair<double, double> expected_utility_impl(int k, const ActionProfile& profile,
                                                std::optional<double> deviation,
                                                const PricingPolicy& policy, const Scenario& s) {
    require_single_plan_policy(policy);
    const double pi_in[2] = {profile.in_prob(0), profile.in_prob(1)};
    const double act = deviation.value_or(pi_in[k]);
    if (act == 0.0) return {0.0, 0.0};  // out users earn and pay nothing
    const double use = unit_use(k, pi_in, s);
    const auto& plan = policy.plans[1];
    double cost = plan.subscription;
    if (plan.rate_charge > 0.0) cost += plan.rate_charge * unit_usage(k, pi_in, s);
    return {act * use, act * cost};
}

}  // namespace

std::pair<double, double> csma_expected_utility(int k, const ActionProfile& profile,
                                                std::optional<double> deviation,
                                                const PricingPolicy& policy, const Scenario& s) {
    require_two_type_single_plan(s, Protocol::Csma);
    return expected_utility_impl(k, profile, deviation, policy, s);
}

std::pair<double, double> tdma_expected_utility(int k, const ActionProfile& profile,
                                                std::optional<double> deviation,
                                                const PricingPolicy& policy, const Scenario& s) {
    require_two_type_single_plan(s, Protocol::Tdma);
    return expected_utility_impl(k, profile, deviation, policy, s);
}

double tdma_expected_usage(int k, const ActionProfile& profile, const Scenario& s) {
    const double pi_in[2] = {profile.in_prob(0), profile.in_prob(1)};
    return tdma_unit_usage(k, pi_in, s);
}

}  // namespace wlanopt
