#pragma once

#include <cmath>
#include <cstdint>
#include <limits>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

// Core domain types for the wireless-LAN pricing model: user populations,
// MAC protocol, pricing plans/policies, plan-choice profiles and the integer
// count matrices describing randomization outcomes and online states.
//
// All types are immutable value types; validation happens in the constructors
// (which throw std::invalid_argument) and in validate_scenario(), which
// collects every violation instead of stopping at the first.

namespace wlanopt {

inline constexpr double kRowSumTol = 1e-12;

/// One class of users: utility parameters, individual arrival/departure
/// rates and population size.
struct UserType {
    double alpha;   // utility ceiling (utils)
    double beta;    // throughput sensitivity (utils * rate)
    double lambda;  // individual arrival rate (1/time)
    double mu;      // individual departure rate (1/time)
    int count;      // population size N_k

    UserType(double alpha_, double beta_, double lambda_, double mu_, int count_)
        : alpha(alpha_), beta(beta_), lambda(lambda_), mu(mu_), count(count_) {
        if (!(alpha > 0.0)) throw std::invalid_argument("UserType: alpha must be > 0");
        if (!(beta > 0.0)) throw std::invalid_argument("UserType: beta must be > 0");
        if (!(lambda > 0.0)) throw std::invalid_argument("UserType: lambda must be > 0");
        if (!(mu > 0.0)) throw std::invalid_argument("UserType: mu must be > 0");
        if (count < 0) throw std::invalid_argument("UserType: count must be >= 0");
    }

    /// Steady-state probability of being online, lambda/(lambda+mu) in (0,1).
    double occupancy() const { return lambda / (lambda + mu); }
};

enum class Protocol { Csma, Tdma };

struct MacProtocol {
    Protocol kind = Protocol::Tdma;
    double p = 0.0;  // CSMA per-slot transmission probability, in (0,1)

    static MacProtocol csma(double p) {
        if (!(p > 0.0 && p < 1.0))
            throw std::invalid_argument("MacProtocol: CSMA p out of range (0,1)");
        return MacProtocol{Protocol::Csma, p};
    }
    static MacProtocol tdma() { return MacProtocol{Protocol::Tdma, 0.0}; }

    bool is_csma() const { return kind == Protocol::Csma; }
    bool is_tdma() const { return kind == Protocol::Tdma; }
};

/// A pricing plan (p_s, q): subscription fee per billing period plus a charge
/// per unit of guaranteed data rate. p_s = +inf is a valid shut-out sentinel.
struct PricingPlan {
    double subscription = 0.0;  // p_s
    double rate_charge = 0.0;   // q

    PricingPlan() = default;
    PricingPlan(double p_s, double q) : subscription(p_s), rate_charge(q) {
        if (std::isnan(p_s) || p_s < 0.0)
            throw std::invalid_argument("PricingPlan: p_s must be >= 0");
        if (!(q >= 0.0) || std::isinf(q))
            throw std::invalid_argument("PricingPlan: q must be finite and >= 0");
    }

    static PricingPlan dummy() { return PricingPlan{}; }
    bool is_free() const { return subscription == 0.0 && rate_charge == 0.0; }
};

/// Menu of L+1 plans; index 0 is always the dummy (non-subscription) plan.
struct PricingPolicy {
    std::vector<PricingPlan> plans;

    PricingPolicy() : plans{PricingPlan::dummy()} {}
    explicit PricingPolicy(std::vector<PricingPlan> all_plans) : plans(std::move(all_plans)) {
        if (plans.empty() || !plans.front().is_free())
            throw std::invalid_argument("PricingPolicy: plans[0] must be the free dummy plan");
    }

    /// Policy (dummy, (p_s, q)) with a single non-dummy plan.
    static PricingPolicy single(double p_s, double q) {
        return PricingPolicy{{PricingPlan::dummy(), PricingPlan(p_s, q)}};
    }
    /// Policy whose non-dummy plan is priced out of reach (p_s = inf).
    static PricingPolicy shut_out() {
        return single(std::numeric_limits<double>::infinity(), 0.0);
    }

    int num_plans() const { return static_cast<int>(plans.size()); }  // L + 1
};

/// Admission control: admit everyone, or cap the number of concurrent online
/// subscribers per plan. caps[0] is ignored (dummy users never enter).
struct AdmissionPolicy {
    std::optional<std::vector<int>> caps;

    static AdmissionPolicy admit_all() { return AdmissionPolicy{}; }
    static AdmissionPolicy per_plan_cap(std::vector<int> caps_) {
        return AdmissionPolicy{std::move(caps_)};
    }

    bool admits_all() const { return !caps.has_value(); }
    int cap(int plan) const {
        if (!caps || plan == 0 || plan >= static_cast<int>(caps->size()))
            return std::numeric_limits<int>::max();
        return (*caps)[plan];
    }
};

struct Scenario {
    std::vector<UserType> types;
    double delta_t = 1.0;  // billing period length
    double c0 = 0.0;       // provider fixed cost per billing period
    MacProtocol protocol = MacProtocol::tdma();
    AdmissionPolicy admission = AdmissionPolicy::admit_all();

    int num_types() const { return static_cast<int>(types.size()); }
};

/// Row-stochastic K x (L+1) matrix; row k is type k's distribution over plans
/// (column 0 = dummy plan).
struct ActionProfile {
    std::vector<std::vector<double>> pi;

    static ActionProfile from_rows(std::vector<std::vector<double>> rows);
    /// K=2, L=1 profile from the two in-probabilities.
    static ActionProfile two_type(double pi1_in, double pi2_in) {
        return from_rows({{1.0 - pi1_in, pi1_in}, {1.0 - pi2_in, pi2_in}});
    }

    int num_types() const { return static_cast<int>(pi.size()); }
    int num_plans() const { return pi.empty() ? 0 : static_cast<int>(pi[0].size()); }
    double in_prob(int k) const;  // total non-dummy probability of row k
};

/// Result of the time-zero randomization: n[k][l] type-k users on plan l.
struct Randomization {
    std::vector<std::vector<int>> n;

    int num_types() const { return static_cast<int>(n.size()); }
    int num_plans() const { return n.empty() ? 0 : static_cast<int>(n[0].size()); }
    int row_total(int k) const;
};

/// Online-user counts x[k][l] <= n[k][l] of the governing Randomization.
struct SystemState {
    std::vector<std::vector<int>> x;

    int num_types() const { return static_cast<int>(x.size()); }
    int num_plans() const { return x.empty() ? 0 : static_cast<int>(x[0].size()); }
    /// Total online subscribers over non-dummy plans.
    int online_total() const;
};

/// Per-plan online-user counts v_l = sum_k x[k][l] -- all the provider can see.
std::vector<int> pricing_state(const SystemState& x);

enum class Stance : std::uint8_t { In, Out, Mixed };

/// Equilibrium classification: one stance per user type, e.g. (i,o) for
/// "type 1 fully in, type 2 fully out".
struct NEType {
    std::vector<Stance> t;

    NEType() = default;
    explicit NEType(std::vector<Stance> stances) : t(std::move(stances)) {}
    static NEType two(Stance t1, Stance t2) { return NEType{{t1, t2}}; }
    /// Parse compact labels like "io", "mm".
    static NEType parse(const std::string& label);

    std::string label() const;  // "io"
    std::string pretty() const; // "(i,o)"
    bool operator==(const NEType& o) const { return t == o.t; }
};

/// Classify a profile into stances using the mixed-interior tolerance.
NEType classify_profile(const ActionProfile& profile, double tol = 1e-9);

/// Outcome of one provider design problem. `feasible == false` stands in for
/// the -inf objective; welfare/revenue are only meaningful when feasible.
struct DesignSolution {
    MacProtocol protocol;
    PricingPolicy policy;
    ActionProfile profile;
    NEType ne_type;
    double welfare = 0.0;
    double revenue = 0.0;
    bool feasible = false;
};

/// Collect every violated invariant of the scenario and its contained types.
/// Empty result means the scenario is valid.
std::vector<std::string> validate_scenario(const Scenario& s);

/// Violations of profile shape / row-stochasticity against a scenario.
std::vector<std::string> validate_profile(const ActionProfile& profile, const Scenario& s);

/// Check n is a plausible randomization outcome for s (row sums = N_k).
std::vector<std::string> validate_randomization(const Randomization& n, const Scenario& s);

}  // namespace wlanopt
