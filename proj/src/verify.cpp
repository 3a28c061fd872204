#include "wlanopt/verify.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <random>

#include "wlanopt/engine.hpp"
#include "wlanopt/game.hpp"
#include "wlanopt/mac.hpp"
#include "wlanopt/sim.hpp"

namespace wlanopt::verify {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

Scenario baseline(Protocol proto, double demand1, double demand2, int n1, int n2,
                  double c0 = 0.0) {
    Scenario s;
    s.types.emplace_back(10.0, 0.3, demand1, 1.0, n1);
    s.types.emplace_back(5.0, 0.1, demand2, 1.0, n2);
    s.delta_t = 1.0;
    s.c0 = c0;
    s.protocol = proto == Protocol::Csma ? MacProtocol::csma(2.0 / 17.0) : MacProtocol::tdma();
    return s;
}

double objective_value(Objective obj, const Objectives& o) {
    return obj == Objective::Welfare ? o.welfare : o.revenue;
}

}  // namespace

void SuiteResult::check(bool ok, const std::string& what) {
    ++checks;
    if (!ok) {
        ++failures;
        if (messages.size() < 25) messages.push_back(what);
    }
}

bool close_rel(double a, double b, double rel, double abs_floor) {
    return std::abs(a - b) <= rel * std::max(std::abs(a), std::abs(b)) + abs_floor;
}

// ---------------------------------------------------------------------------
// Closed forms vs exact enumeration
// ---------------------------------------------------------------------------

namespace {

SuiteResult closed_form_grid(Protocol proto) {
    SuiteResult r{proto == Protocol::Csma ? "closed-forms-csma" : "closed-forms-tdma"};
    const double pis[] = {0.0, 0.25, 0.5, 0.75, 1.0};
    const double demands[] = {0.1, 1.0};
    const PricingPolicy policy = proto == Protocol::Csma ? PricingPolicy::single(1.37, 0.0)
                                                         : PricingPolicy::single(0.8, 0.6);

    for (double d1 : demands)
        for (double d2 : demands)
            for (int n1 = 1; n1 <= 6; ++n1)
                for (int n2 = 1; n2 <= 6; ++n2) {
                    const Scenario s = baseline(proto, d1, d2, n1, n2);
                    for (double p1 : pis)
                        for (double p2 : pis) {
                            const auto profile = ActionProfile::two_type(p1, p2);
                            for (int k = 0; k < 2; ++k) {
                                const std::string tag =
                                    "d=(" + std::to_string(d1) + "," + std::to_string(d2) +
                                    ") N=(" + std::to_string(n1) + "," + std::to_string(n2) +
                                    ") pi=(" + std::to_string(p1) + "," + std::to_string(p2) +
                                    ") k=" + std::to_string(k + 1);

                                const auto [u, c] =
                                    proto == Protocol::Csma
                                        ? csma_expected_utility(k, profile, {}, policy, s)
                                        : tdma_expected_utility(k, profile, {}, policy, s);
                                r.check(close_rel(u, expected_utility_of_use(k, profile, s), 1e-9),
                                        "U mismatch " + tag);
                                r.check(close_rel(c, expected_cost(k, profile, policy, s), 1e-9),
                                        "C mismatch " + tag);

                                if (proto == Protocol::Tdma) {
                                    // B-hat: binomial mixture vs pinned enumeration
                                    double b_enum = 0.0;
                                    for (const auto& [n, pr] :
                                         randomization_distribution(k, 1, profile, s))
                                        b_enum += pr * expected_guaranteed_rate(k, 1, n, s);
                                    r.check(close_rel(tdma_expected_usage(k, profile, s), b_enum,
                                                      1e-9),
                                            "B-hat mismatch " + tag);
                                }
                            }
                        }
                }
    return r;
}

}  // namespace

SuiteResult closed_form_suite_csma() { return closed_form_grid(Protocol::Csma); }
SuiteResult closed_form_suite_tdma() { return closed_form_grid(Protocol::Tdma); }

SuiteResult closed_form_suite() {
    SuiteResult r = closed_form_suite_csma();
    const SuiteResult td = closed_form_suite_tdma();
    r.name = "lemmas";
    r.checks += td.checks;
    r.failures += td.failures;
    r.messages.insert(r.messages.end(), td.messages.begin(), td.messages.end());
    return r;
}

// ---------------------------------------------------------------------------
// Brute-force design oracle
// ---------------------------------------------------------------------------

namespace {

double price_cap(const Scenario& s) {
    double m = 0.0;
    for (const auto& t : s.types) m = std::max(m, s.delta_t * t.occupancy() * t.alpha);
    return 1.05 * m + 1e-9;
}

// 1-D max over [lo,hi] with top-`keep` coarse cells refined by zooming.
double refined_max_1d(const std::function<double(double)>& f, double lo, double hi, int coarse,
                      int keep = 8) {
    std::vector<std::pair<double, double>> samples;  // (value, x)
    for (int i = 0; i <= coarse; ++i) {
        const double x = lo + (hi - lo) * i / coarse;
        const double v = f(x);
        if (std::isfinite(v)) samples.emplace_back(v, x);
    }
    if (samples.empty()) return -kInf;
    std::sort(samples.begin(), samples.end(),
              [](const auto& a, const auto& b) { return a.first > b.first; });
    double best = samples[0].first;
    const int tops = std::min<int>(keep, static_cast<int>(samples.size()));
    const double h0 = (hi - lo) / coarse;
    for (int t = 0; t < tops; ++t) {
        double cx = samples[t].second, h = h0;
        for (int round = 0; round < 6; ++round) {
            const double a = std::max(lo, cx - h), b = std::min(hi, cx + h);
            double bv = -kInf, bx = cx;
            for (int i = 0; i <= 40; ++i) {
                const double x = a + (b - a) * i / 40;
                const double v = f(x);
                if (v > bv) { bv = v; bx = x; }
            }
            if (bv > best) best = bv;
            cx = bx;
            h *= 2.0 / 40;
        }
    }
    return best;
}

double refined_max_2d(const std::function<double(double, double)>& f, double xlo, double xhi,
                      double ylo, double yhi, int coarse, int keep = 6) {
    struct Pt {
        double v, x, y;
    };
    std::vector<Pt> samples;
    for (int i = 0; i <= coarse; ++i)
        for (int j = 0; j <= coarse; ++j) {
            const double x = xlo + (xhi - xlo) * i / coarse;
            const double y = ylo + (yhi - ylo) * j / coarse;
            const double v = f(x, y);
            if (std::isfinite(v)) samples.push_back({v, x, y});
        }
    if (samples.empty()) return -kInf;
    std::sort(samples.begin(), samples.end(), [](const Pt& a, const Pt& b) { return a.v > b.v; });
    double best = samples[0].v;
    const double hx0 = (xhi - xlo) / coarse, hy0 = (yhi - ylo) / coarse;
    const int tops = std::min<int>(keep, static_cast<int>(samples.size()));
    for (int t = 0; t < tops; ++t) {
        double cx = samples[t].x, cy = samples[t].y, hx = hx0, hy = hy0;
        for (int round = 0; round < 5; ++round) {
            const double ax = std::max(xlo, cx - hx), bx = std::min(xhi, cx + hx);
            const double ay = std::max(ylo, cy - hy), by = std::min(yhi, cy + hy);
            double bv = -kInf, nx = cx, ny = cy;
            for (int i = 0; i <= 16; ++i)
                for (int j = 0; j <= 16; ++j) {
                    const double x = ax + (bx - ax) * i / 16;
                    const double y = ay + (by - ay) * j / 16;
                    const double v = f(x, y);
                    if (v > bv) { bv = v; nx = x; ny = y; }
                }
            if (bv > best) best = bv;
            cx = nx;
            cy = ny;
            hx *= 2.0 / 16;
            hy *= 2.0 / 16;
        }
    }
    return best;
}

const std::array<const char*, 9> kAllStances = {"ii", "io", "oi", "mi", "im",
                                                "mm", "mo", "om", "oo"};

// Best objective over every NE the policy admits.
double best_equilibrium_value(Objective obj, const PricingPolicy& policy, const Scenario& s) {
    double best = -kInf;
    for (const char* label : kAllStances) {
        const auto prof = solve_mixed_indifference(NEType::parse(label), policy, s);
        if (!prof) continue;
        if (!is_nash(*prof, policy, s, kNashTol)) continue;
        const Objectives o = evaluate_objectives(*prof, policy, s);
        if (!o.ir_ok) continue;
        best = std::max(best, objective_value(obj, o));
    }
    return best;
}

double brute_csma(Objective obj, const Scenario& s) {
    const double pmax = price_cap(s);
    const double best = refined_max_1d(
        [&](double p_s) { return best_equilibrium_value(obj, PricingPolicy::single(p_s, 0.0), s); },
        0.0, pmax, 2000);
    return std::max(0.0, best);
}

double brute_tdma(Objective obj, const Scenario& s) {
    const double pmax = price_cap(s);
    double bmin = kInf;
    for (int k = 0; k < 2; ++k) {
        const double both_in[2] = {1.0, 1.0};
        if (s.types[k].count > 0) bmin = std::min(bmin, tdma_unit_usage(k, both_in, s));
    }
    const double qmax = std::isfinite(bmin) && bmin > 0.0 ? 1.05 * pmax / bmin : pmax;

    double best = 0.0;  // shutdown

    // Pure stance patterns over the full pricing box.
    for (const char* label : {"ii", "io", "oi"}) {
        const NEType type = NEType::parse(label);
        const double pi1 = type.t[0] == Stance::In ? 1.0 : 0.0;
        const double pi2 = type.t[1] == Stance::In ? 1.0 : 0.0;
        const auto profile = ActionProfile::two_type(pi1, pi2);
        best = std::max(best, refined_max_2d(
                                  [&](double p_s, double q) -> double {
                                      const auto policy = PricingPolicy::single(p_s, q);
                                      if (!is_nash(profile, policy, s, kNashTol)) return -kInf;
                                      const Objectives o = evaluate_objectives(profile, policy, s);
                                      if (!o.ir_ok) return -kInf;
                                      return objective_value(obj, o);
                                  },
                                  0.0, pmax, 0.0, qmax, 160));
    }

    // One type mixed: its indifference pins the pricing to a segment, and the
    // objective is linear in the other type's per-unit cost, so only the
    // feasible cost interval's endpoints matter.
    const auto mixed_value = [&](int k, bool other_in, double pi) -> double {
        const double pi1 = k == 0 ? pi : (other_in ? 1.0 : 0.0);
        const double pi2 = k == 1 ? pi : (other_in ? 1.0 : 0.0);
        const double pv[2] = {pi1, pi2};
        const double u_m = tdma_unit_use(k, pv, s);
        if (u_m < 0.0) return -kInf;
        const double b_m = tdma_unit_usage(k, pv, s);
        const double b_o = tdma_unit_usage(1 - k, pv, s);
        const double u_o = tdma_unit_use(1 - k, pv, s);
        const double nk = s.types[k].count, no = s.types[1 - k].count;
        const double c_lo = u_m * std::min(1.0, b_o / b_m);
        const double c_hi = u_m * std::max(1.0, b_o / b_m);
        const double base = nk * pi * u_m;
        if (!other_in) {
            // keep the other type out: some point of the segment must price
            // its deviation at or above its use
            if (no > 0 && u_o > c_hi) return -kInf;
            if (base < s.c0 - 1e-9) return -kInf;
            return obj == Objective::Revenue ? base : 0.0;
        }
        if (no == 0) return -kInf;
        double value = -kInf;
        for (double c : {std::max(c_lo, (s.c0 - base) / no), std::min(c_hi, u_o)}) {
            if (c < c_lo - 1e-12 || c > c_hi + 1e-12 || c > u_o + 1e-12 || c < 0.0) continue;
            const double revenue = base + no * c;
            if (revenue < s.c0 - 1e-9) continue;
            value = std::max(value,
                             obj == Objective::Welfare ? no * (u_o - c) : revenue);
        }
        return value;
    };
    for (int k = 0; k < 2; ++k) {
        if (s.types[k].count == 0) continue;
        for (bool other_in : {true, false}) {
            if (obj == Objective::Welfare && !other_in) continue;  // zero welfare
            best = std::max(best,
                            refined_max_1d([&](double pi) { return mixed_value(k, other_in, pi); },
                                           1e-6, 1.0 - 1e-6, 2000));
        }
    }

    // Both mixed (revenue only; welfare is zero by indifference).
    if (obj == Objective::Revenue && s.types[0].count > 0 && s.types[1].count > 0) {
        best = std::max(best, refined_max_2d(
                                  [&](double pi1, double pi2) -> double {
                                      const double pv[2] = {pi1, pi2};
                                      const double u1 = tdma_unit_use(0, pv, s);
                                      const double u2 = tdma_unit_use(1, pv, s);
                                      if (u1 < 0.0 || u2 < 0.0) return -kInf;
                                      const double b1 = tdma_unit_usage(0, pv, s);
                                      const double b2 = tdma_unit_usage(1, pv, s);
                                      double p_s, q;
                                      if (std::abs(b1 - b2) < 1e-14) {
                                          if (std::abs(u1 - u2) > 1e-9) return -kInf;
                                          p_s = u1;
                                          q = 0.0;
                                      } else {
                                          q = (u1 - u2) / (b1 - b2);
                                          p_s = u1 - q * b1;
                                      }
                                      if (q < -1e-12 || p_s < -1e-12) return -kInf;
                                      const double revenue = s.types[0].count * pi1 * u1 +
                                                             s.types[1].count * pi2 * u2;
                                      if (revenue < s.c0 - 1e-9) return -kInf;
                                      return revenue;
                                  },
                                  1e-6, 1.0 - 1e-6, 1e-6, 1.0 - 1e-6, 300));
    }
    return best;
}

}  // namespace

double brute_force_objective(Objective obj, const Scenario& s) {
    return s.protocol.is_csma() ? brute_csma(obj, s) : brute_tdma(obj, s);
}

SuiteResult solver_suite() {
    SuiteResult r{"solver"};
    for (int n1 = 1; n1 <= 3; ++n1)
        for (int n2 = 1; n2 <= 3; ++n2)
            for (double c0 : {0.0, 0.5})
                for (Protocol proto : {Protocol::Csma, Protocol::Tdma})
                    for (Objective obj : {Objective::Welfare, Objective::Revenue}) {
                        const Scenario s = baseline(proto, 1.0, 0.1, n1, n2, c0);
                        const DesignOutcome out = solve_design(obj, s);
                        const double got = objective_value(
                            obj, Objectives{out.best.welfare, out.best.revenue, true});
                        const double want = brute_force_objective(obj, s);
                        r.check(close_rel(got, want, 1e-3, 1e-6),
                                "solver vs brute force: N=(" + std::to_string(n1) + "," +
                                    std::to_string(n2) + ") c0=" + std::to_string(c0) +
                                    (proto == Protocol::Csma ? " csma" : " tdma") +
                                    (obj == Objective::Welfare ? " welfare" : " revenue") +
                                    " got=" + std::to_string(got) + " want=" + std::to_string(want));
                    }
    return r;
}

// ---------------------------------------------------------------------------
// Simulator vs exact engine
// ---------------------------------------------------------------------------

SuiteResult simulator_suite(std::uint64_t seed) {
    SuiteResult r{"simulator"};

    struct Case {
        Scenario s;
        Randomization n;
        std::string name;
    };
    std::vector<Case> cases;
    {
        Scenario s;
        s.types.emplace_back(10.0, 0.3, 0.1, 1.0, 3);
        s.protocol = MacProtocol::csma(2.0 / 17.0);
        cases.push_back({s, Randomization{{{0, 3}}}, "one-type csma"});
    }
    cases.push_back({baseline(Protocol::Tdma, 1.0, 1.0, 5, 5),
                     Randomization{{{0, 5}, {0, 5}}}, "tdma 5+5"});
    cases.push_back({baseline(Protocol::Csma, 1.0, 0.1, 4, 2),
                     Randomization{{{0, 4}, {0, 2}}}, "csma 4+2"});
    {
        Scenario s = baseline(Protocol::Tdma, 1.0, 1.0, 5, 5);
        s.admission = AdmissionPolicy::per_plan_cap({0, 4});
        cases.push_back({s, Randomization{{{0, 5}, {0, 5}}}, "tdma capped"});
    }
    cases.push_back({baseline(Protocol::Csma, 0.1, 1.0, 2, 6),
                     Randomization{{{0, 2}, {0, 6}}}, "csma 2+6"});

    int case_idx = 0;
    for (const auto& c : cases) {
        ++case_idx;
        // exact values
        const auto dist = stationary_distribution(c.n, c.s);
        std::vector<std::vector<double>> occ(c.s.num_types(),
                                             std::vector<double>(c.n.num_plans(), 0.0));
        for (const auto& [state, pr] : dist.support)
            for (int k = 0; k < c.s.num_types(); ++k)
                for (int l = 1; l < c.n.num_plans(); ++l) occ[k][l] += pr * state.x[k][l];

        double rate = 0.0;
        for (int k = 0; k < c.s.num_types(); ++k)
            for (int l = 1; l < c.n.num_plans(); ++l)
                rate += 2.0 * c.n.n[k][l] * c.s.types[k].lambda * c.s.types[k].mu /
                        (c.s.types[k].lambda + c.s.types[k].mu);

        SimConfig cfg;
        cfg.scenario = c.s;
        cfg.policy = PricingPolicy::single(0.0, 0.0);
        cfg.fixed_n = c.n;
        cfg.horizon = 1e6 / rate;
        cfg.seed = seed + 1000 * case_idx;
        cfg.replications = 8;
        const SimReport rep = simulate(cfg);

        for (const auto& cell : rep.cells) {
            if (c.n.n[cell.type][cell.plan] == 0) continue;
            const std::string tag = c.name + " cell(" + std::to_string(cell.type + 1) + "," +
                                    std::to_string(cell.plan) + ")";
            const double ex_occ = occ[cell.type][cell.plan];
            r.check(std::abs(cell.occupancy.mean - ex_occ) <=
                        3.0 * std::max(cell.occupancy.se, 1e-9),
                    tag + " occupancy off by " +
                        std::to_string(cell.occupancy.mean - ex_occ) + " (3se=" +
                        std::to_string(3.0 * cell.occupancy.se) + ")");
            const double ex_v = steady_state_utility(cell.type, cell.plan, c.n, c.s);
            r.check(std::abs(cell.utility.mean - ex_v) <= 3.0 * std::max(cell.utility.se, 1e-9),
                    tag + " V off by " + std::to_string(cell.utility.mean - ex_v));
            const double ex_b = expected_guaranteed_rate(cell.type, cell.plan, c.n, c.s);
            r.check(std::abs(cell.usage.mean - ex_b) <= 3.0 * std::max(cell.usage.se, 1e-9),
                    tag + " B off by " + std::to_string(cell.usage.mean - ex_b));
        }
    }
    return r;
}

// ---------------------------------------------------------------------------
// Policy collapse on random two-plan policies
// ---------------------------------------------------------------------------

namespace {

std::optional<ActionProfile> find_two_plan_ne(const PricingPolicy& policy, const Scenario& s) {
    const std::vector<std::vector<double>> stances = {{1, 0, 0}, {0, 1, 0}, {0, 0, 1}};
    for (const auto& row1 : stances)
        for (const auto& row2 : stances) {
            const auto profile = ActionProfile::from_rows({row1, row2});
            if (is_nash(profile, policy, s, 1e-9)) return profile;
        }
    // one type mixing between the dummy and a single plan, the other pure
    for (int k = 0; k < 2; ++k)
        for (int plan = 1; plan <= 2; ++plan)
            for (const auto& other : stances) {
                const auto at = [&](double pi) {
                    std::vector<std::vector<double>> rows(2);
                    rows[k] = {1.0 - pi, plan == 1 ? pi : 0.0, plan == 2 ? pi : 0.0};
                    rows[1 - k] = other;
                    return ActionProfile::from_rows(std::move(rows));
                };
                const auto w_at = [&](double pi) {
                    return net_payoffs(k, at(pi), policy, s).w[plan];
                };
                double prev = w_at(0.0);
                for (int i = 1; i <= 50; ++i) {
                    const double x = i / 50.0;
                    const double fx = w_at(x);
                    if (fx == 0.0 || std::signbit(fx) != std::signbit(prev)) {
                        double lo = (i - 1) / 50.0, hi = x, flo = prev;
                        while (hi - lo > 1e-13) {
                            const double mid = 0.5 * (lo + hi);
                            const double fm = w_at(mid);
                            if (fm == 0.0) { lo = hi = mid; break; }
                            if (std::signbit(fm) == std::signbit(flo)) { lo = mid; flo = fm; }
                            else hi = mid;
                        }
                        const double root = 0.5 * (lo + hi);
                        if (root > 1e-6 && root < 1.0 - 1e-6) {
                            const auto profile = at(root);
                            if (is_nash(profile, policy, s, 1e-7)) return profile;
                        }
                    }
                    prev = fx;
                }
            }
    return std::nullopt;
}

}  // namespace

SuiteResult collapse_suite(std::uint64_t seed, int cases) {
    SuiteResult r{"collapse"};
    std::mt19937_64 g(seed);
    const auto uni = [&](double lo, double hi) {
        return lo + (hi - lo) * ((g() >> 11) * 0x1.0p-53);
    };

    int accepted = 0, attempts = 0, reported = 0;
    while (accepted < cases && attempts < cases * 60) {
        ++attempts;
        Scenario s;
        s.types.emplace_back(uni(6.0, 12.0), uni(0.1, 0.5), uni(0.2, 1.5), 1.0,
                             1 + static_cast<int>(uni(0.0, 4.0)));
        s.types.emplace_back(uni(3.0, 6.0), uni(0.05, 0.2), uni(0.2, 1.5), 1.0,
                             1 + static_cast<int>(uni(0.0, 4.0)));
        s.protocol = MacProtocol::tdma();
        const PricingPolicy policy{{PricingPlan::dummy(),
                                    PricingPlan(uni(0.0, 2.5), uni(0.0, 2.0)),
                                    PricingPlan(uni(0.0, 2.5), uni(0.0, 2.0))}};
        const auto ne = find_two_plan_ne(policy, s);
        if (!ne) continue;
        ++accepted;

        const auto res = collapse_policy(policy, *ne, s);
        if (!res.ok) {
            ++reported;  // singular systems are reported, not failed
            continue;
        }
        const auto reduced = collapse_profile(*ne);
        for (int k = 0; k < 2; ++k) {
            const double multi_cost = expected_cost(k, *ne, policy, s);
            const double single_cost = expected_cost(k, reduced, res.policy, s);
            r.check(close_rel(multi_cost, single_cost, 1e-9, 1e-9),
                    "case " + std::to_string(accepted) + ": cost of type " +
                        std::to_string(k + 1) + " changed from " + std::to_string(multi_cost) +
                        " to " + std::to_string(single_cost));
        }
        r.check(is_nash(reduced, res.policy, s, kNashTol),
                "case " + std::to_string(accepted) + ": collapsed policy breaks the equilibrium");
    }
    r.check(accepted == cases,
            "only " + std::to_string(accepted) + "/" + std::to_string(cases) +
                " random policies yielded an equilibrium");
    return r;
}

}  // namespace wlanopt::verify
