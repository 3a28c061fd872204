#include "wlanopt/design.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "wlanopt/engine.hpp"
#include "wlanopt/game.hpp"
#include "wlanopt/mac.hpp"

namespace wlanopt {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kGateSlack = 1e-9;   // feasibility gates and IR comparisons
constexpr double kInterior = 1e-6;    // mixed coordinates live in [kInterior, 1-kInterior]

double guarded(double v) { return std::isnan(v) ? -kInf : v; }

// Deterministic 2-D maximizer on [lo,hi]^2, same contract as scalar_maximize.
struct Scan2DResult {
    double x = 0.0, y = 0.0, value = -kInf;
};

Scan2DResult scan2d_maximize(const std::function<double(double, double)>& f, double lo,
                             double hi, double grid_step, double tol) {
    Scan2DResult best;
    best.x = best.y = lo;
    const int n = std::max(1, static_cast<int>(std::lround((hi - lo) / grid_step)));
    for (int i = 0; i <= n; ++i)
        for (int j = 0; j <= n; ++j) {
            const double x = lo + (hi - lo) * i / n;
            const double y = lo + (hi - lo) * j / n;
            const double v = guarded(f(x, y));
            if (v > best.value) best = {x, y, v};
        }
    double h = (hi - lo) / n;
    int guard = 0;
    while (h > tol && ++guard < 60) {
        const double xlo = std::max(lo, best.x - h), xhi = std::min(hi, best.x + h);
        const double ylo = std::max(lo, best.y - h), yhi = std::min(hi, best.y + h);
        const int m = 16;
        for (int i = 0; i <= m; ++i)
            for (int j = 0; j <= m; ++j) {
                const double x = xlo + (xhi - xlo) * i / m;
                const double y = ylo + (yhi - ylo) * j / m;
                const double v = guarded(f(x, y));
                if (v > best.value) best = {x, y, v};
            }
        h *= 2.0 / m;
    }
    return best;
}

}  // namespace

ScalarMaxResult scalar_maximize(const std::function<double(double)>& f, double grid_step,
                                double tol) {
    ScalarMaxResult best{0.0, guarded(f(0.0))};
    const int n = std::max(1, static_cast<int>(std::lround(1.0 / grid_step)));
    for (int i = 1; i <= n; ++i) {
        const double x = static_cast<double>(i) / n;
        const double v = guarded(f(x));
        if (v > best.value) best = {x, v};
    }
    double h = 1.0 / n;
    int guard = 0;
    while (h > tol && ++guard < 80) {
        const double lo = std::max(0.0, best.arg - h), hi = std::min(1.0, best.arg + h);
        const int m = 64;
        for (int i = 0; i <= m; ++i) {
            const double x = lo + (hi - lo) * i / m;
            const double v = guarded(f(x));
            if (v > best.value) best = {x, v};
        }
        h *= 2.0 / m;
    }
    return best;
}

Objectives evaluate_objectives(const ActionProfile& profile, const PricingPolicy& policy,
                               const Scenario& s) {
    Objectives out;
    bool anyone_in = false;
    const bool closed = s.num_types() == 2 && s.admission.admits_all();
    for (int k = 0; k < s.num_types(); ++k) {
        const int count = s.types[k].count;
        if (count == 0) continue;
        double use = 0.0, cost = 0.0;
        if (closed) {
            const double pi_in[2] = {profile.in_prob(0), profile.in_prob(1)};
            if (pi_in[k] > 0.0) {
                use = pi_in[k] * unit_use(k, pi_in, s);
                double usage = -1.0;
                for (int l = 1; l < policy.num_plans(); ++l) {
                    if (profile.pi[k][l] == 0.0) continue;
                    double c = policy.plans[l].subscription;
                    if (policy.plans[l].rate_charge > 0.0) {
                        if (usage < 0.0) usage = unit_usage(k, pi_in, s);
                        c += policy.plans[l].rate_charge * usage;
                    }
                    cost += profile.pi[k][l] * c;
                }
            }
        } else {
            use = expected_utility_of_use(k, profile, s);
            cost = expected_cost(k, profile, policy, s);
        }
        if (profile.in_prob(k) > 0.0) anyone_in = true;
        out.welfare += (use - cost) * count;
        out.revenue += cost * count;
    }
    out.ir_ok = !anyone_in || out.revenue >= s.c0 - kGateSlack;
    return out;
}

// ---------------------------------------------------------------------------
// Candidate construction
// ---------------------------------------------------------------------------

namespace {

struct Designer {
    const Scenario& s;
    const SearchOptions& opt;
    double n_count[2];
    bool present[2];

    explicit Designer(const Scenario& sc, const SearchOptions& o) : s(sc), opt(o) {
        for (int k = 0; k < 2; ++k) {
            n_count[k] = s.types[k].count;
            present[k] = s.types[k].count > 0;
        }
    }

    double use(int k, double pi1, double pi2) const {
        const double pi_in[2] = {pi1, pi2};
        return unit_use(k, pi_in, s);
    }
    double usage(int k, double pi1, double pi2) const {
        const double pi_in[2] = {pi1, pi2};
        return unit_usage(k, pi_in, s);
    }

    NECandidate infeasible(const NEType& type, std::string why) const {
        NECandidate c;
        c.type = type;
        c.profile = ActionProfile::two_type(0.0, 0.0);
        c.policy = PricingPolicy::shut_out();
        c.feasible = false;
        c.note = std::move(why);
        return c;
    }

    NECandidate finish(const NEType& type, double pi1, double pi2, double p_s, double q) const {
        NECandidate c;
        c.type = type;
        c.profile = ActionProfile::two_type(pi1, pi2);
        c.policy = PricingPolicy::single(std::max(p_s, 0.0), std::max(q, 0.0));
        const Objectives obj = evaluate_objectives(c.profile, c.policy, s);
        c.welfare = obj.welfare;
        c.revenue = obj.revenue;
        c.feasible = obj.ir_ok;
        if (!obj.ir_ok) c.note = "revenue does not cover the fixed cost";
        if (c.feasible) {
            const auto cert = nash_certificate(c.profile, c.policy, s, kNashTol);
            if (!cert.is_nash) {
                c.feasible = false;
                c.note = "candidate failed equilibrium verification";
            }
        }
        return c;
    }

    NECandidate shutdown() const {
        NECandidate c;
        c.type = NEType::parse("oo");
        c.profile = ActionProfile::two_type(0.0, 0.0);
        c.policy = PricingPolicy::shut_out();
        c.welfare = 0.0;
        c.revenue = 0.0;
        c.feasible = true;
        return c;
    }

    // ---- CSMA: pure-subscription pricing -----------------------------------

    NECandidate csma_both_in(Objective obj) const {
        const NEType type = NEType::parse("ii");
        double floor_use = kInf;
        for (int k = 0; k < 2; ++k)
            if (present[k]) floor_use = std::min(floor_use, use(k, 1.0, 1.0));
        if (floor_use == kInf) floor_use = 0.0;  // nobody present
        if (floor_use < -kGateSlack) return infeasible(type, "a present type would earn negative use");
        floor_use = std::max(floor_use, 0.0);
        const double total = n_count[0] + n_count[1];
        if (floor_use * total < s.c0 - kGateSlack)
            return infeasible(type, "cannot cover the fixed cost with both types in");
        const double p_s = obj == Objective::Welfare ? (total > 0.0 ? s.c0 / total : 0.0)
                                                     : floor_use;
        return finish(type, 1.0, 1.0, p_s, 0.0);
    }

    NECandidate csma_one_in(Objective obj, int k) const {
        const NEType type = k == 0 ? NEType::parse("io") : NEType::parse("oi");
        if (!present[k]) return infeasible(type, "no users of the in type");
        const double pi1 = k == 0 ? 1.0 : 0.0;
        const double pi2 = k == 0 ? 0.0 : 1.0;
        const double in_use = use(k, pi1, pi2);
        const double dev_use = present[1 - k] ? use(1 - k, pi1, pi2) : 0.0;
        const double keep_out = std::max(dev_use, 0.0);
        const double p_floor = std::max(keep_out, s.c0 / n_count[k]);
        if (in_use < p_floor - kGateSlack)
            return infeasible(type, "in type cannot pay enough to deter the other and cover cost");
        const double p_s = obj == Objective::Welfare ? p_floor : std::max(in_use, 0.0);
        return finish(type, pi1, pi2, p_s, 0.0);
    }

    NECandidate csma_mixed_in(Objective obj, int k) const {
        // type k mixed, the other fully in
        const NEType type = k == 0 ? NEType::parse("mi") : NEType::parse("im");
        if (!present[k] || !present[1 - k])
            return infeasible(type, "both types must be populated");
        const auto eval = [&](double pi) -> double {
            const double pi1 = k == 0 ? pi : 1.0;
            const double pi2 = k == 0 ? 1.0 : pi;
            const double p_s = use(k, pi1, pi2);  // mixed indifference
            if (p_s < 0.0) return -kInf;
            const double in_use = use(1 - k, pi1, pi2);
            if (in_use < p_s) return -kInf;  // the pure-in type must stay
            const double revenue = p_s * (pi * n_count[k] + n_count[1 - k]);
            if (revenue < s.c0 - kGateSlack) return -kInf;
            return obj == Objective::Welfare ? (in_use - p_s) * n_count[1 - k] : revenue;
        };
        const auto r = scalar_maximize(
            [&](double t) {
                const double pi = kInterior + (1.0 - 2.0 * kInterior) * t;
                return eval(pi);
            },
            opt.grid_step, opt.refine_tol);
        if (r.value == -kInf) return infeasible(type, "no feasible mixed probability");
        const double pi = kInterior + (1.0 - 2.0 * kInterior) * r.arg;
        const double pi1 = k == 0 ? pi : 1.0;
        const double pi2 = k == 0 ? 1.0 : pi;
        return finish(type, pi1, pi2, use(k, pi1, pi2), 0.0);
    }

    NECandidate csma_mixed_out(int k) const {
        // type k mixed, the other out; selfish providers only
        const NEType type = k == 0 ? NEType::parse("mo") : NEType::parse("om");
        if (!present[k]) return infeasible(type, "no users of the mixed type");
        const auto eval = [&](double pi) -> double {
            const double pi1 = k == 0 ? pi : 0.0;
            const double pi2 = k == 0 ? 0.0 : pi;
            const double p_s = use(k, pi1, pi2);
            if (p_s < 0.0) return -kInf;
            if (present[1 - k] && use(1 - k, pi1, pi2) > p_s) return -kInf;  // other must stay out
            const double revenue = p_s * pi * n_count[k];
            if (revenue < s.c0 - kGateSlack) return -kInf;
            return revenue;
        };
        const auto r = scalar_maximize(
            [&](double t) {
                const double pi = kInterior + (1.0 - 2.0 * kInterior) * t;
                return eval(pi);
            },
            opt.grid_step, opt.refine_tol);
        if (r.value == -kInf) return infeasible(type, "no feasible mixed probability");
        const double pi = kInterior + (1.0 - 2.0 * kInterior) * r.arg;
        const double pi1 = k == 0 ? pi : 0.0;
        const double pi2 = k == 0 ? 0.0 : pi;
        return finish(type, pi1, pi2, use(k, pi1, pi2), 0.0);
    }

    NECandidate csma_both_mixed() const {
        const NEType type = NEType::parse("mm");
        if (!present[0] || !present[1]) return infeasible(type, "both types must be populated");
        double ps_max = kInf;
        for (int k = 0; k < 2; ++k) {
            const auto& t = s.types[k];
            ps_max = std::min(ps_max,
                              s.delta_t * t.occupancy() * (t.alpha - t.beta / s.protocol.p));
        }
        if (!(ps_max > 0.0)) return infeasible(type, "no subscription supports both types mixing");
        const auto profile_at = [&](double p_s) -> std::optional<ActionProfile> {
            return solve_mixed_indifference(type, PricingPolicy::single(p_s, 0.0), s);
        };
        const auto eval = [&](double t) -> double {
            const double p_s = t * ps_max;
            const auto prof = profile_at(p_s);
            if (!prof) return -kInf;
            const double revenue =
                p_s * (prof->in_prob(0) * n_count[0] + prof->in_prob(1) * n_count[1]);
            if (revenue < s.c0 - kGateSlack) return -kInf;
            return revenue;
        };
        const auto r = scalar_maximize(eval, 1.0 / opt.ps_grid, opt.refine_tol);
        if (r.value == -kInf) return infeasible(type, "no subscription induces a both-mixed NE");
        const double p_s = r.arg * ps_max;
        const auto prof = profile_at(p_s);
        if (!prof) return infeasible(type, "no subscription induces a both-mixed NE");
        return finish(type, prof->in_prob(0), prof->in_prob(1), p_s, 0.0);
    }

    // ---- TDMA: subscription plus guaranteed-rate charge ---------------------

    NECandidate tdma_both_in(Objective obj) const {
        const NEType type = NEType::parse("ii");
        if (!present[0] && !present[1]) {
            if (s.c0 > kGateSlack) return infeasible(type, "no users at all");
            return finish(type, 1.0, 1.0, 0.0, 0.0);
        }
        int k = -1;  // lowest-utility present type
        for (int m = 0; m < 2; ++m)
            if (present[m] && (k < 0 || use(m, 1.0, 1.0) < use(k, 1.0, 1.0))) k = m;
        const double u_low = use(k, 1.0, 1.0);
        if (u_low < -kGateSlack) return infeasible(type, "lowest-utility type would earn negative use");

        if (!present[1 - k]) {  // single-type population
            if (u_low * n_count[k] < s.c0 - kGateSlack)
                return infeasible(type, "cannot cover the fixed cost");
            const double p_s = obj == Objective::Welfare ? s.c0 / n_count[k] : std::max(u_low, 0.0);
            return finish(type, 1.0, 1.0, p_s, 0.0);
        }

        const double u_high = use(1 - k, 1.0, 1.0);
        const double b_low = usage(k, 1.0, 1.0);
        const double b_high = usage(1 - k, 1.0, 1.0);
        const double uratio = u_low > 0.0 ? u_high / u_low : kInf;
        const double rho = std::min(uratio, std::max(1.0, b_high / b_low));
        const double capacity = u_low > 0.0 ? u_low * (n_count[k] + rho * n_count[1 - k]) : 0.0;
        if (capacity < s.c0 - kGateSlack)
            return infeasible(type, "cannot cover the fixed cost with both types in");

        const double c_low = obj == Objective::Welfare
                                 ? (capacity > 0.0 ? s.c0 / (n_count[k] + rho * n_count[1 - k]) : 0.0)
                                 : std::max(u_low, 0.0);
        double q = 0.0, p_s = c_low;
        if (rho > 1.0 + 1e-12 && b_high - b_low > 1e-14) {
            q = c_low * (rho - 1.0) / (b_high - b_low);
            p_s = c_low - q * b_low;
        }
        return finish(type, 1.0, 1.0, std::max(p_s, 0.0), q);
    }

    NECandidate tdma_one_in(Objective obj, int k) const {
        const NEType type = k == 0 ? NEType::parse("io") : NEType::parse("oi");
        if (!present[k]) return infeasible(type, "no users of the in type");
        const double pi1 = k == 0 ? 1.0 : 0.0;
        const double pi2 = k == 0 ? 0.0 : 1.0;
        const double u_in = use(k, pi1, pi2);
        const double b_in = usage(k, pi1, pi2);
        const double u_dev = present[1 - k] ? use(1 - k, pi1, pi2) : 0.0;
        const double b_dev = present[1 - k] ? usage(1 - k, pi1, pi2) : b_in;

        const double keep_out =
            u_dev > 0.0 ? u_dev * std::min(1.0, b_in / b_dev) : 0.0;
        const double c_floor = std::max(keep_out, s.c0 / n_count[k]);
        if (u_in < c_floor - kGateSlack)
            return infeasible(type, "in type cannot pay enough to deter the other and cover cost");

        const double c = obj == Objective::Welfare ? c_floor : std::max(u_in, 0.0);
        // Realize cost c while pricing the would-be deviator at >= its use.
        // When the usages are (nearly) equal the gate already forces
        // u_dev <= c up to slack, so q stays zero.
        double p_s = c, q = 0.0;
        if (u_dev > 0.0 && c < u_dev && b_dev - b_in > 1e-12) {
            q = (u_dev - c) / (b_dev - b_in);
            p_s = c - q * b_in;
        }
        return finish(type, pi1, pi2, std::max(p_s, 0.0), q);
    }

    // Feasible in-type cost interval at mixed indifference, and the (p_s, q)
    // realizing a chosen in-type cost.
    struct MixedPricing {
        bool ok = false;
        double c_lo = 0.0, c_hi = 0.0;  // achievable in-type cost range
        double u_mixed = 0.0, b_mixed = 0.0, b_other = 0.0;
    };

    MixedPricing mixed_pricing(int k, double pi1, double pi2) const {
        MixedPricing mp;
        mp.u_mixed = use(k, pi1, pi2);
        if (mp.u_mixed < 0.0) return mp;  // indifference needs a nonnegative charge
        mp.b_mixed = usage(k, pi1, pi2);
        mp.b_other = usage(1 - k, pi1, pi2);
        const double ratio = mp.b_other / mp.b_mixed;
        mp.c_lo = mp.u_mixed * std::min(1.0, ratio);
        mp.c_hi = mp.u_mixed * std::max(1.0, ratio);
        mp.ok = true;
        return mp;
    }

    std::pair<double, double> realize_mixed(const MixedPricing& mp, double c_other) const {
        if (std::abs(mp.b_other - mp.b_mixed) < 1e-14) return {mp.u_mixed, 0.0};
        // only costs inside [c_lo, c_hi] are reachable; targets outside are
        // gate slack and land within the equilibrium tolerance anyway
        const double c = std::clamp(c_other, mp.c_lo, mp.c_hi);
        const double q = std::max(0.0, (c - mp.u_mixed) / (mp.b_other - mp.b_mixed));
        return {std::max(mp.u_mixed - q * mp.b_mixed, 0.0), q};
    }

    NECandidate tdma_mixed_in(Objective obj, int k) const {
        const NEType type = k == 0 ? NEType::parse("mi") : NEType::parse("im");
        if (!present[k] || !present[1 - k])
            return infeasible(type, "both types must be populated");
        const auto eval = [&](double pi) -> double {
            const double pi1 = k == 0 ? pi : 1.0;
            const double pi2 = k == 0 ? 1.0 : pi;
            const auto mp = mixed_pricing(k, pi1, pi2);
            if (!mp.ok) return -kInf;
            const double u_other = use(1 - k, pi1, pi2);
            const double mixed_revenue = n_count[k] * pi * mp.u_mixed;
            const double c_ir = (s.c0 - mixed_revenue) / n_count[1 - k];
            if (obj == Objective::Welfare) {
                const double c = std::max({mp.c_lo, c_ir, 0.0});
                if (c > std::min(mp.c_hi, u_other) + kGateSlack) return -kInf;
                return (u_other - c) * n_count[1 - k];
            }
            const double c = std::min(mp.c_hi, u_other);
            if (c < std::max(mp.c_lo, 0.0) - kGateSlack) return -kInf;
            const double revenue = mixed_revenue + n_count[1 - k] * c;
            if (revenue < s.c0 - kGateSlack) return -kInf;
            return revenue;
        };
        const auto r = scalar_maximize(
            [&](double t) {
                const double pi = kInterior + (1.0 - 2.0 * kInterior) * t;
                return eval(pi);
            },
            opt.grid_step, opt.refine_tol);
        if (r.value == -kInf) return infeasible(type, "no feasible mixed probability");
        const double pi = kInterior + (1.0 - 2.0 * kInterior) * r.arg;
        const double pi1 = k == 0 ? pi : 1.0;
        const double pi2 = k == 0 ? 1.0 : pi;
        const auto mp = mixed_pricing(k, pi1, pi2);
        const double u_other = use(1 - k, pi1, pi2);
        const double c_ir = (s.c0 - n_count[k] * pi * mp.u_mixed) / n_count[1 - k];
        const double c = obj == Objective::Welfare
                             ? std::min(std::max({mp.c_lo, c_ir, 0.0}), std::min(mp.c_hi, u_other))
                             : std::min(mp.c_hi, u_other);
        const auto [p_s, q] = realize_mixed(mp, c);
        return finish(type, pi1, pi2, p_s, q);
    }

    NECandidate tdma_mixed_out(int k) const {
        const NEType type = k == 0 ? NEType::parse("mo") : NEType::parse("om");
        if (!present[k]) return infeasible(type, "no users of the mixed type");
        const auto eval = [&](double pi) -> double {
            const double pi1 = k == 0 ? pi : 0.0;
            const double pi2 = k == 0 ? 0.0 : pi;
            const auto mp = mixed_pricing(k, pi1, pi2);
            if (!mp.ok) return -kInf;
            if (present[1 - k]) {
                const double u_dev = use(1 - k, pi1, pi2);
                if (u_dev > mp.c_hi + kGateSlack) return -kInf;  // cannot keep the other out
            }
            const double revenue = n_count[k] * pi * mp.u_mixed;
            if (revenue < s.c0 - kGateSlack) return -kInf;
            return revenue;
        };
        const auto r = scalar_maximize(
            [&](double t) {
                const double pi = kInterior + (1.0 - 2.0 * kInterior) * t;
                return eval(pi);
            },
            opt.grid_step, opt.refine_tol);
        if (r.value == -kInf) return infeasible(type, "no feasible mixed probability");
        const double pi = kInterior + (1.0 - 2.0 * kInterior) * r.arg;
        const double pi1 = k == 0 ? pi : 0.0;
        const double pi2 = k == 0 ? 0.0 : pi;
        const auto mp = mixed_pricing(k, pi1, pi2);
        double c_dev_target = 0.0;
        if (present[1 - k]) c_dev_target = use(1 - k, pi1, pi2);
        const auto [p_s, q] = realize_mixed(mp, std::max(c_dev_target, 0.0));
        return finish(type, pi1, pi2, p_s, q);
    }

    NECandidate tdma_both_mixed() const {
        const NEType type = NEType::parse("mm");
        if (!present[0] || !present[1]) return infeasible(type, "both types must be populated");
        const auto system = [&](double pi1, double pi2, double& p_s, double& q) -> bool {
            const double u1 = use(0, pi1, pi2), u2 = use(1, pi1, pi2);
            if (u1 < 0.0 || u2 < 0.0) return false;
            const double b1 = usage(0, pi1, pi2), b2 = usage(1, pi1, pi2);
            if (std::abs(b1 - b2) < 1e-14) {
                if (std::abs(u1 - u2) > kIndifferenceTol) return false;
                p_s = u1;
                q = 0.0;
                return true;
            }
            q = (u1 - u2) / (b1 - b2);
            p_s = u1 - q * b1;
            if (q < -1e-12 || p_s < -1e-12) return false;
            q = std::max(q, 0.0);
            p_s = std::max(p_s, 0.0);
            return true;
        };
        const auto eval = [&](double pi1, double pi2) -> double {
            double p_s, q;
            if (!system(pi1, pi2, p_s, q)) return -kInf;
            const double revenue = n_count[0] * pi1 * use(0, pi1, pi2) +
                                   n_count[1] * pi2 * use(1, pi1, pi2);
            if (revenue < s.c0 - kGateSlack) return -kInf;
            return revenue;
        };
        const auto r = scan2d_maximize(eval, kInterior, 1.0 - kInterior, opt.grid_step, 1e-7);
        if (r.value == -kInf) return infeasible(type, "no pricing induces a both-mixed NE");
        double p_s, q;
        if (!system(r.x, r.y, p_s, q)) return infeasible(type, "no pricing induces a both-mixed NE");
        return finish(type, r.x, r.y, p_s, q);
    }
};

DesignOutcome pick_best(std::vector<NECandidate> candidates, Objective obj, const Scenario& s) {
    DesignOutcome out;
    int best = -1;
    double best_value = -kInf;
    for (std::size_t i = 0; i < candidates.size(); ++i) {
        if (!candidates[i].feasible) continue;
        const double v = obj == Objective::Welfare ? candidates[i].welfare
                                                   : candidates[i].revenue;
        if (v > best_value) {  // strict: ties keep the higher-priority candidate
            best_value = v;
            best = static_cast<int>(i);
        }
    }
    if (best < 0) throw std::logic_error("no feasible candidate; shutdown should always be one");
    const NECandidate& c = candidates[best];
    out.best.protocol = s.protocol;
    out.best.policy = c.policy;
    out.best.profile = c.profile;
    out.best.ne_type = c.type;
    out.best.welfare = c.welfare;
    out.best.revenue = c.revenue;
    out.best.feasible = true;
    out.candidates = std::move(candidates);
    return out;
}

void require_design_scenario(const Scenario& s, Protocol protocol) {
    auto errs = validate_scenario(s);
    if (!errs.empty()) throw std::invalid_argument("scenario invalid: " + errs.front());
    if (s.num_types() != 2)
        throw std::invalid_argument("design solvers require exactly two user types");
    if (!s.admission.admits_all())
        throw std::invalid_argument("design solvers require the admit-all policy");
    if (s.protocol.kind != protocol)
        throw std::invalid_argument("design solver called for the wrong MAC protocol");
}

}  // namespace

DesignOutcome solve_benevolent_csma(const Scenario& s, const SearchOptions& opt) {
    require_design_scenario(s, Protocol::Csma);
    Designer d(s, opt);
    std::vector<NECandidate> c;
    c.push_back(d.csma_both_in(Objective::Welfare));
    c.push_back(d.csma_one_in(Objective::Welfare, 0));
    c.push_back(d.csma_one_in(Objective::Welfare, 1));
    c.push_back(d.csma_mixed_in(Objective::Welfare, 0));
    c.push_back(d.csma_mixed_in(Objective::Welfare, 1));
    c.push_back(d.shutdown());
    return pick_best(std::move(c), Objective::Welfare, s);
}

DesignOutcome solve_selfish_csma(const Scenario& s, const SearchOptions& opt) {
    require_design_scenario(s, Protocol::Csma);
    Designer d(s, opt);
    std::vector<NECandidate> c;
    c.push_back(d.csma_both_in(Objective::Revenue));
    c.push_back(d.csma_one_in(Objective::Revenue, 0));
    c.push_back(d.csma_one_in(Objective::Revenue, 1));
    c.push_back(d.csma_mixed_in(Objective::Revenue, 0));
    c.push_back(d.csma_mixed_in(Objective::Revenue, 1));
    if (opt.skip_both_mixed)
        c.push_back(d.infeasible(NEType::parse("mm"), "skipped by request"));
    else
        c.push_back(d.csma_both_mixed());
    c.push_back(d.csma_mixed_out(0));
    c.push_back(d.csma_mixed_out(1));
    c.push_back(d.shutdown());
    return pick_best(std::move(c), Objective::Revenue, s);
}

DesignOutcome solve_benevolent_tdma(const Scenario& s, const SearchOptions& opt) {
    require_design_scenario(s, Protocol::Tdma);
    Designer d(s, opt);
    std::vector<NECandidate> c;
    c.push_back(d.tdma_both_in(Objective::Welfare));
    c.push_back(d.tdma_one_in(Objective::Welfare, 0));
    c.push_back(d.tdma_one_in(Objective::Welfare, 1));
    c.push_back(d.tdma_mixed_in(Objective::Welfare, 0));
    c.push_back(d.tdma_mixed_in(Objective::Welfare, 1));
    c.push_back(d.shutdown());
    return pick_best(std::move(c), Objective::Welfare, s);
}

DesignOutcome solve_selfish_tdma(const Scenario& s, const SearchOptions& opt) {
    require_design_scenario(s, Protocol::Tdma);
    Designer d(s, opt);
    std::vector<NECandidate> c;
    c.push_back(d.tdma_both_in(Objective::Revenue));
    c.push_back(d.tdma_one_in(Objective::Revenue, 0));
    c.push_back(d.tdma_one_in(Objective::Revenue, 1));
    c.push_back(d.tdma_mixed_in(Objective::Revenue, 0));
    c.push_back(d.tdma_mixed_in(Objective::Revenue, 1));
    if (opt.skip_both_mixed)
        c.push_back(d.infeasible(NEType::parse("mm"), "skipped by request"));
    else
        c.push_back(d.tdma_both_mixed());
    c.push_back(d.tdma_mixed_out(0));
    c.push_back(d.tdma_mixed_out(1));
    c.push_back(d.shutdown());
    return pick_best(std::move(c), Objective::Revenue, s);
}

DesignOutcome solve_design(Objective obj, const Scenario& s, const SearchOptions& opt) {
    if (s.protocol.is_csma())
        return obj == Objective::Welfare ? solve_benevolent_csma(s, opt)
                                         : solve_selfish_csma(s, opt);
    return obj == Objective::Welfare ? solve_benevolent_tdma(s, opt)
                                     : solve_selfish_tdma(s, opt);
}

}  // namespace wlanopt
