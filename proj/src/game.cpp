#include "wlanopt/game.hpp"

#include <algorithm>
#include <cmath>
#include <functional>

#include "wlanopt/engine.hpp"
#include "wlanopt/mac.hpp"

namespace wlanopt {

namespace {

bool closed_form_applies(const Scenario& s) {
    return s.num_types() == 2 && s.admission.admits_all();
}

// Roots of f on [0,1]: scan for sign changes, bisect each bracket to 1e-12.
// Endpoints with |f| == 0 count as roots.
std::vector<double> scan_roots(const std::function<double(double)>& f, int grid = 200) {
    std::vector<double> roots;
    double prev_x = 0.0, prev_f = f(0.0);
    if (prev_f == 0.0) roots.push_back(0.0);
    for (int i = 1; i <= grid; ++i) {
        const double x = static_cast<double>(i) / grid;
        const double fx = f(x);
        if (fx == 0.0) {
            roots.push_back(x);
        } else if (prev_f != 0.0 && std::signbit(fx) != std::signbit(prev_f)) {
            double lo = prev_x, hi = x, flo = prev_f;
            while (hi - lo > 1e-12) {
                const double mid = 0.5 * (lo + hi);
                const double fm = f(mid);
                if (fm == 0.0) { lo = hi = mid; break; }
                if (std::signbit(fm) == std::signbit(flo)) { lo = mid; flo = fm; }
                else hi = mid;
            }
            roots.push_back(0.5 * (lo + hi));
        }
        prev_x = x;
        prev_f = fx;
    }
    return roots;
}

}  // namespace

double NetPayoffs::best() const {
    double b = 0.0;
    for (double v : w)
        if (v > b) b = v;
    return b;
}

NetPayoffs net_payoffs(int k, const ActionProfile& profile, const PricingPolicy& policy,
                       const Scenario& s) {
    if (policy.num_plans() != profile.num_plans())
        throw std::invalid_argument("policy and profile disagree on the number of plans");
    NetPayoffs out;
    out.w.assign(policy.num_plans(), 0.0);

    if (closed_form_applies(s)) {
        // Under admit-all the pinned user's use and usage do not depend on
        // which non-dummy plan it subscribes to, only on everyone else's
        // total in-probability.
        const double pi_in[2] = {profile.in_prob(0), profile.in_prob(1)};
        const double use = unit_use(k, pi_in, s);
        double usage = -1.0;  // computed lazily, only if some plan charges q
        for (int l = 1; l < policy.num_plans(); ++l) {
            const auto& plan = policy.plans[l];
            double cost = plan.subscription;
            if (plan.rate_charge > 0.0) {
                if (usage < 0.0) usage = unit_usage(k, pi_in, s);
                cost += plan.rate_charge * usage;
            }
            out.w[l] = use - cost;
        }
        return out;
    }

    for (int l = 1; l < policy.num_plans(); ++l) {
        std::vector<double> pure(policy.num_plans(), 0.0);
        pure[l] = 1.0;
        const double use = expected_utility_of_use(k, profile, s, pure);
        const double cost = expected_cost(k, profile, policy, s, pure);
        out.w[l] = use - cost;
    }
    return out;
}

NashCertificate nash_certificate(const ActionProfile& profile, const PricingPolicy& policy,
                                 const Scenario& s, double tol) {
    NashCertificate cert;
    cert.gaps.assign(profile.num_types(), 0.0);
    for (int k = 0; k < profile.num_types(); ++k) {
        if (s.types[k].count == 0) continue;  // nobody of this type exists
        const NetPayoffs w = net_payoffs(k, profile, policy, s);
        double achieved = 0.0;
        for (int l = 0; l < profile.num_plans(); ++l)
            if (profile.pi[k][l] > 0.0) achieved += profile.pi[k][l] * w.w[l];
        cert.gaps[k] = w.best() - achieved;
        if (cert.gaps[k] > cert.worst_gap) {
            cert.worst_gap = cert.gaps[k];
            cert.worst_type = k;
        }
    }
    cert.is_nash = cert.worst_gap <= tol;
    return cert;
}

bool is_nash(const ActionProfile& profile, const PricingPolicy& policy, const Scenario& s,
             double tol) {
    return nash_certificate(profile, policy, s, tol).is_nash;
}

namespace {

double w_in(int k, double own, double other_in, const PricingPolicy& policy,
            const Scenario& s) {
    const double pi_in[2] = {k == 0 ? own : other_in, k == 0 ? other_in : own};
    const auto& plan = policy.plans[1];
    double cost = plan.subscription;
    if (plan.rate_charge > 0.0) cost += plan.rate_charge * unit_usage(k, pi_in, s);
    return unit_use(k, pi_in, s) - cost;
}

bool stance_holds(Stance t, double pi, double w) {
    switch (t) {
        case Stance::In: return pi == 1.0 && w >= -kIndifferenceTol;
        case Stance::Out: return pi == 0.0 && w <= kIndifferenceTol;
        case Stance::Mixed:
            return pi >= kNashTol && pi <= 1.0 - kNashTol && std::abs(w) <= kIndifferenceTol;
    }
    return false;
}

// Table-style closed form for the both-mixed CSMA equilibrium of a pure
// subscription policy: solve x_k^(Nk-1) x_-k^(N-k) = A_k for both k.
std::optional<std::pair<double, double>> csma_both_mixed(const PricingPolicy& policy,
                                                         const Scenario& s) {
    const double p = s.protocol.p;
    const double p_s = policy.plans[1].subscription;
    double a[2];
    for (int k = 0; k < 2; ++k) {
        const auto& t = s.types[k];
        a[k] = (t.alpha - p_s / (s.delta_t * t.occupancy())) * p / t.beta;
        if (!(a[k] > 0.0)) return std::nullopt;
    }
    const int n1 = s.types[0].count, n2 = s.types[1].count;
    if (n1 < 1 || n2 < 1 || n1 + n2 < 2) return std::nullopt;
    const double denom = n1 + n2 - 1;
    double pi[2];
    for (int k = 0; k < 2; ++k) {
        const int no = k == 0 ? n2 : n1;
        const double xk = std::pow(a[1 - k], no / denom) / std::pow(a[k], (no - 1) / denom);
        const auto& t = s.types[k];
        pi[k] = (xk - 1.0) / (t.occupancy() * p / (1.0 - p));
    }
    return std::make_pair(pi[0], pi[1]);
}

}  // namespace

std::optional<ActionProfile> solve_mixed_indifference(const NEType& which,
                                                      const PricingPolicy& policy,
                                                      const Scenario& s) {
    if (s.num_types() != 2 || which.t.size() != 2)
        throw std::invalid_argument("solve_mixed_indifference: needs exactly two types");
    if (policy.num_plans() != 2)
        throw std::invalid_argument("solve_mixed_indifference: needs a single non-dummy plan");
    if (!s.admission.admits_all())
        throw std::invalid_argument("solve_mixed_indifference: needs the admit-all policy");

    const auto finish = [&](double pi1, double pi2) -> std::optional<ActionProfile> {
        const double pis[2] = {pi1, pi2};
        for (int k = 0; k < 2; ++k) {
            if (s.types[k].count == 0) continue;  // no player of this type to constrain
            const double w = w_in(k, pis[k], pis[1 - k], policy, s);
            if (!stance_holds(which.t[k], pis[k], w)) return std::nullopt;
        }
        return ActionProfile::two_type(pi1, pi2);
    };

    const int mixed_count = static_cast<int>(std::count(which.t.begin(), which.t.end(),
                                                        Stance::Mixed));
    const auto pure_value = [](Stance t) { return t == Stance::In ? 1.0 : 0.0; };

    if (mixed_count == 0) return finish(pure_value(which.t[0]), pure_value(which.t[1]));

    // A type can only be mixed if it has someone to mix.
    for (int k = 0; k < 2; ++k)
        if (which.t[k] == Stance::Mixed && s.types[k].count < 1) return std::nullopt;

    if (mixed_count == 1) {
        const int k = which.t[0] == Stance::Mixed ? 0 : 1;
        const double other = pure_value(which.t[1 - k]);
        for (double root : scan_roots([&](double x) { return w_in(k, x, other, policy, s); })) {
            auto profile = k == 0 ? finish(root, other) : finish(other, root);
            if (profile) return profile;
        }
        return std::nullopt;
    }

    // Both mixed. Pure-subscription CSMA has a closed form; otherwise solve
    // the nested indifference system numerically along the leftmost branch of
    // the inner root and validate by substitution.
    if (s.protocol.is_csma() && policy.plans[1].rate_charge == 0.0) {
        if (auto pi = csma_both_mixed(policy, s)) return finish(pi->first, pi->second);
        return std::nullopt;
    }
    const auto inner_root = [&](double pi1) -> std::optional<double> {
        auto roots = scan_roots([&](double x) { return w_in(1, x, pi1, policy, s); });
        if (roots.empty()) return std::nullopt;
        return roots.front();
    };
    const auto outer = [&](double pi1) -> double {
        auto r = inner_root(pi1);
        if (!r) return std::numeric_limits<double>::quiet_NaN();
        return w_in(0, pi1, *r, policy, s);
    };
    double prev_x = -1.0, prev_f = 0.0;
    for (int i = 0; i <= 200; ++i) {
        const double x = i / 200.0;
        const double fx = outer(x);
        if (std::isnan(fx)) { prev_x = -1.0; continue; }
        if (prev_x >= 0.0 && (fx == 0.0 || std::signbit(fx) != std::signbit(prev_f))) {
            double lo = prev_x, hi = x, flo = prev_f;
            while (hi - lo > 1e-12) {
                const double mid = 0.5 * (lo + hi);
                const double fm = outer(mid);
                if (std::isnan(fm)) break;
                if (fm == 0.0) { lo = hi = mid; break; }
                if (std::signbit(fm) == std::signbit(flo)) { lo = mid; flo = fm; }
                else hi = mid;
            }
            const double pi1 = 0.5 * (lo + hi);
            if (auto r = inner_root(pi1))
                if (auto profile = finish(pi1, *r)) return profile;
        }
        prev_x = x;
        prev_f = fx;
    }
    return std::nullopt;
}

ActionProfile collapse_profile(const ActionProfile& profile) {
    std::vector<std::vector<double>> rows;
    for (int k = 0; k < profile.num_types(); ++k) {
        const double in = profile.in_prob(k);
        rows.push_back({1.0 - in, in});
    }
    return ActionProfile::from_rows(std::move(rows));
}

CollapseResult collapse_policy(const PricingPolicy& multi, const ActionProfile& profile,
                               const Scenario& s) {
    if (!s.protocol.is_tdma() || s.num_types() != 2 || !s.admission.admits_all())
        throw std::invalid_argument("collapse_policy: requires TDMA, admit-all, two types");
    if (multi.num_plans() != profile.num_plans())
        throw std::invalid_argument("collapse_policy: policy and profile disagree on plans");

    CollapseResult res;
    if (multi.num_plans() == 2) {  // already single-plan
        res.ok = true;
        res.policy = multi;
        return res;
    }

    const ActionProfile reduced = collapse_profile(profile);
    const double pi_in[2] = {reduced.in_prob(0), reduced.in_prob(1)};

    // Per-in-unit cost targets, usage coefficients and average instrument
    // mixes of the participating types; out types carry no cost constraint.
    double usage[2], target[2], ps_mix[2] = {0.0, 0.0}, q_mix[2] = {0.0, 0.0};
    bool active[2];
    for (int k = 0; k < 2; ++k) {
        usage[k] = tdma_unit_usage(k, pi_in, s);
        active[k] = pi_in[k] > 0.0 && s.types[k].count > 0;
        if (active[k]) {
            for (int l = 1; l < multi.num_plans(); ++l) {
                ps_mix[k] += profile.pi[k][l] * multi.plans[l].subscription;
                q_mix[k] += profile.pi[k][l] * multi.plans[l].rate_charge;
            }
            ps_mix[k] /= pi_in[k];
            q_mix[k] /= pi_in[k];
        }
        target[k] = ps_mix[k] + q_mix[k] * usage[k];
    }

    double p_s = 0.0, q = 0.0;
    if (active[0] && active[1]) {
        if (std::abs(ps_mix[0] - ps_mix[1]) <= 1e-12 && std::abs(q_mix[0] - q_mix[1]) <= 1e-12) {
            // both types already face the same average plan; use it directly
            p_s = ps_mix[0];
            q = q_mix[0];
        } else {
            const double du = usage[0] - usage[1];
            if (std::abs(du) < 1e-14) {
                if (std::abs(target[0] - target[1]) > kIndifferenceTol) {
                    res.reason = "no exact collapse at q>=0: equal usages, unequal target costs";
                    return res;
                }
                p_s = target[0];
            } else {
                q = (target[0] - target[1]) / du;
                p_s = target[0] - q * usage[0];
                if (q < 0.0 || p_s < 0.0) {
                    // tiny negatives are roundoff; anything else has no valid plan
                    if (q < -1e-12 || p_s < -1e-12) {
                        res.reason = "no exact collapse at q>=0";
                        return res;
                    }
                    q = std::max(q, 0.0);
                    p_s = std::max(p_s, 0.0);
                }
            }
        }
    } else if (active[0] || active[1]) {
        // Keep the participating type's instrument mix; averaging the plans it
        // uses preserves its cost and cannot make deviation attractive for
        // the out type (each original plan already deterred it).
        const int k = active[0] ? 0 : 1;
        p_s = ps_mix[k];
        q = q_mix[k];
    } else {
        res.ok = true;
        res.policy = PricingPolicy::shut_out();
        return res;
    }

    res.ok = true;
    res.policy = PricingPolicy::single(p_s, q);
    return res;
}

}  // namespace wlanopt
