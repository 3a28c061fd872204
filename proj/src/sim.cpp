#include "wlanopt/sim.hpp"

#include <cmath>
#include <random>

#include "wlanopt/mac.hpp"
#include "wlanopt/parallel.hpp"

namespace wlanopt {

namespace {

double exp_draw(std::mt19937_64& g, double rate) {
    const double u = (g() >> 11) * 0x1.0p-53;  // uniform in [0,1)
    return -std::log1p(-u) / rate;
}

double uniform_draw(std::mt19937_64& g) { return (g() >> 11) * 0x1.0p-53; }

Randomization draw_randomization(std::mt19937_64& g, const ActionProfile& profile,
                                 const Scenario& s) {
    Randomization n;
    n.n.assign(s.num_types(), std::vector<int>(profile.num_plans(), 0));
    for (int k = 0; k < s.num_types(); ++k)
        for (int i = 0; i < s.types[k].count; ++i) {
            double u = uniform_draw(g);
            int plan = 0;
            for (int l = 0; l < profile.num_plans(); ++l) {
                if (u < profile.pi[k][l] || l == profile.num_plans() - 1) {
                    plan = l;
                    break;
                }
                u -= profile.pi[k][l];
            }
            ++n.n[k][plan];
        }
    return n;
}

struct RepAccum {
    Randomization n;
    std::vector<std::vector<double>> occ, vint, bint;  // time integrals per cell
    std::vector<double> use_int, usage_q_int, ps_paid; // per type
    std::vector<int> max_v;
    std::vector<double> state_time;
    std::uint64_t events = 0;
};

RepAccum run_replication(const SimConfig& cfg, std::uint64_t stream) {
    const Scenario& s = cfg.scenario;
    std::mt19937_64 g(stream);
    RepAccum acc;
    acc.n = cfg.fixed_n ? *cfg.fixed_n : draw_randomization(g, *cfg.profile, s);

    const int K = s.num_types();
    const int plans = acc.n.num_plans();
    const double warmup = cfg.warmup < 0.0 ? 0.1 * cfg.horizon : cfg.warmup;
    const double span = cfg.horizon - warmup;

    acc.occ.assign(K, std::vector<double>(plans, 0.0));
    acc.vint.assign(K, std::vector<double>(plans, 0.0));
    acc.bint.assign(K, std::vector<double>(plans, 0.0));
    acc.use_int.assign(K, 0.0);
    acc.usage_q_int.assign(K, 0.0);
    acc.ps_paid.assign(K, 0.0);
    acc.max_v.assign(plans, 0);

    std::vector<std::vector<int>> x(K, std::vector<int>(plans, 0));

    // Mixed-radix state indexing for the dwell-time histogram.
    std::int64_t n_states = 1;
    if (cfg.track_states) {
        for (int k = 0; k < K; ++k)
            for (int l = 1; l < plans; ++l) n_states *= acc.n.n[k][l] + 1;
        if (n_states <= (1 << 20)) acc.state_time.assign(n_states, 0.0);
    }
    const auto state_id = [&]() {
        std::int64_t id = 0, base = 1;
        for (int k = 0; k < K; ++k)
            for (int l = 1; l < plans; ++l) {
                id += base * x[k][l];
                base *= acc.n.n[k][l] + 1;
            }
        return id;
    };

    double t = 0.0;
    int online = 0;
    for (;;) {
        double total_rate = 0.0;
        for (int k = 0; k < K; ++k)
            for (int l = 1; l < plans; ++l)
                total_rate += s.types[k].lambda * (acc.n.n[k][l] - x[k][l]) +
                              s.types[k].mu * x[k][l];

        const double dt = total_rate > 0.0 ? exp_draw(g, total_rate) : cfg.horizon - t;
        const double seg_end = std::min(t + dt, cfg.horizon);
        const double w = std::max(0.0, seg_end - std::max(t, warmup));
        if (w > 0.0) {
            const double tau = online > 0 ? throughput_at(online, s.protocol) : 0.0;
            for (int k = 0; k < K; ++k) {
                const auto& ut = s.types[k];
                const double u_val = online > 0 ? ut.alpha - ut.beta / tau : 0.0;
                for (int l = 1; l < plans; ++l) {
                    const int xc = x[k][l];
                    if (xc == 0) continue;
                    acc.occ[k][l] += w * xc;
                    acc.vint[k][l] += w * xc * u_val;
                    acc.bint[k][l] += w * xc * tau;
                    acc.use_int[k] += w * xc * u_val;
                    if (cfg.policy.plans[l].rate_charge > 0.0)
                        acc.usage_q_int[k] += w * cfg.policy.plans[l].rate_charge * xc * tau;
                }
            }
            if (!acc.state_time.empty()) acc.state_time[state_id()] += w;
        }
        t += dt;
        if (t >= cfg.horizon || total_rate <= 0.0) break;

        // pick the event cell
        double pick = uniform_draw(g) * total_rate;
        int ek = -1, el = -1;
        bool arrival = false;
        for (int k = 0; k < K && ek < 0; ++k)
            for (int l = 1; l < plans; ++l) {
                const double arr = s.types[k].lambda * (acc.n.n[k][l] - x[k][l]);
                if (pick < arr) { ek = k; el = l; arrival = true; break; }
                pick -= arr;
                const double dep = s.types[k].mu * x[k][l];
                if (pick < dep) { ek = k; el = l; arrival = false; break; }
                pick -= dep;
            }
        if (ek < 0) {  // numerical tail; attribute to the last positive-rate cell
            for (int k = K - 1; k >= 0 && ek < 0; --k)
                for (int l = plans - 1; l >= 1; --l)
                    if (x[k][l] > 0) { ek = k; el = l; arrival = false; break; }
            if (ek < 0) break;
        }
        ++acc.events;
        if (arrival) {
            int v = 0;
            for (int k = 0; k < K; ++k) v += x[k][el];
            if (v <= s.admission.cap(el) - 1) {  // admit
                ++x[ek][el];
                ++online;
                if (v + 1 > acc.max_v[el]) acc.max_v[el] = v + 1;
            }
            // blocked arrivals leave the state unchanged
        } else {
            --x[ek][el];
            --online;
        }
    }

    // normalize integrals to per-billing-period averages
    for (int k = 0; k < K; ++k) {
        for (int l = 1; l < plans; ++l) {
            acc.occ[k][l] /= span;
            const int nkl = acc.n.n[k][l];
            if (nkl > 0) {
                acc.vint[k][l] *= s.delta_t / (span * nkl);
                acc.bint[k][l] *= s.delta_t / (span * nkl);
            }
        }
        const int count = s.types[k].count;
        if (count > 0) {
            acc.use_int[k] *= s.delta_t / (span * count);
            acc.usage_q_int[k] *= s.delta_t / (span * count);
            double ps = 0.0;
            for (int l = 1; l < plans; ++l)
                if (acc.n.n[k][l] > 0) ps += acc.n.n[k][l] * cfg.policy.plans[l].subscription;
            acc.ps_paid[k] = ps / count;
        }
    }
    if (!acc.state_time.empty())
        for (auto& v : acc.state_time) v /= span;
    return acc;
}

Estimate summarize(const std::vector<double>& values) {
    Estimate e;
    const int r = static_cast<int>(values.size());
    for (double v : values) e.mean += v;
    e.mean /= r;
    if (r > 1) {
        double ss = 0.0;
        for (double v : values) ss += (v - e.mean) * (v - e.mean);
        e.se = std::sqrt(ss / (r - 1) / r);
    }
    return e;
}

}  // namespace

SimReport simulate(const SimConfig& cfg) {
    const Scenario& s = cfg.scenario;
    auto errs = validate_scenario(s);
    if (!errs.empty()) throw std::invalid_argument("scenario invalid: " + errs.front());
    if (!cfg.profile && !cfg.fixed_n)
        throw std::invalid_argument("simulate: need a profile or a fixed randomization");
    if (cfg.profile) {
        errs = validate_profile(*cfg.profile, s);
        if (!errs.empty()) throw std::invalid_argument("profile invalid: " + errs.front());
    }
    if (cfg.fixed_n) {
        errs = validate_randomization(*cfg.fixed_n, s);
        if (!errs.empty()) throw std::invalid_argument("randomization invalid: " + errs.front());
    }
    const int plans = cfg.fixed_n ? cfg.fixed_n->num_plans() : cfg.profile->num_plans();
    if (cfg.policy.num_plans() != plans)
        throw std::invalid_argument("policy and profile/randomization disagree on plans");
    if (cfg.replications < 1) throw std::invalid_argument("simulate: replications must be >= 1");
    if (!(cfg.horizon > 0.0) || cfg.warmup >= cfg.horizon)
        throw std::invalid_argument("simulate: need horizon > warmup >= 0");

    std::vector<RepAccum> reps(cfg.replications);
    parallel_for(cfg.replications, 0,
                 [&](int r) { reps[r] = run_replication(cfg, cfg.seed + static_cast<std::uint64_t>(r)); });

    SimReport rep;
    rep.rng = "mt19937_64, stream r seeded with seed + r";
    rep.horizon = cfg.horizon;
    rep.warmup = cfg.warmup < 0.0 ? 0.1 * cfg.horizon : cfg.warmup;
    rep.seed = cfg.seed;
    rep.replications = cfg.replications;
    rep.max_pricing_state.assign(plans, 0);
    for (const auto& r : reps) {
        rep.total_events += r.events;
        for (int l = 0; l < plans; ++l)
            rep.max_pricing_state[l] = std::max(rep.max_pricing_state[l], r.max_v[l]);
    }

    const int K = s.num_types();
    std::vector<double> buf(cfg.replications);
    for (int k = 0; k < K; ++k) {
        for (int l = 1; l < plans; ++l) {
            CellReport cell;
            cell.type = k;
            cell.plan = l;
            for (int r = 0; r < cfg.replications; ++r) buf[r] = reps[r].occ[k][l];
            cell.occupancy = summarize(buf);
            for (int r = 0; r < cfg.replications; ++r) buf[r] = reps[r].vint[k][l];
            cell.utility = summarize(buf);
            for (int r = 0; r < cfg.replications; ++r) buf[r] = reps[r].bint[k][l];
            cell.usage = summarize(buf);
            for (int r = 0; r < cfg.replications; ++r) cell.mean_n += reps[r].n.n[k][l];
            cell.mean_n /= cfg.replications;
            rep.cells.push_back(cell);
        }
        if (s.types[k].count > 0) {
            TypeReport tr;
            tr.type = k;
            for (int r = 0; r < cfg.replications; ++r) buf[r] = reps[r].use_int[k];
            tr.use = summarize(buf);
            for (int r = 0; r < cfg.replications; ++r)
                buf[r] = reps[r].ps_paid[k] + reps[r].usage_q_int[k];
            tr.cost = summarize(buf);
            rep.types.push_back(tr);
        }
    }

    if (cfg.track_states && cfg.fixed_n && !reps[0].state_time.empty()) {
        const auto& n = *cfg.fixed_n;
        rep.state_freq.assign(reps[0].state_time.size(), 0.0);
        for (const auto& r : reps)
            for (std::size_t i = 0; i < r.state_time.size(); ++i)
                rep.state_freq[i] += r.state_time[i] / cfg.replications;
        // enumerate states in the same mixed-radix order used for indexing
        std::vector<std::pair<int, int>> cells;
        for (int k = 0; k < K; ++k)
            for (int l = 1; l < plans; ++l) cells.emplace_back(k, l);
        std::vector<int> c(cells.size(), 0);
        for (std::size_t idx = 0; idx < rep.state_freq.size(); ++idx) {
            SystemState st;
            st.x.assign(K, std::vector<int>(plans, 0));
            for (std::size_t i = 0; i < cells.size(); ++i)
                st.x[cells[i].first][cells[i].second] = c[i];
            rep.state_index.push_back(st);
            std::size_t i = 0;
            while (i < cells.size() && c[i] == n.n[cells[i].first][cells[i].second]) c[i++] = 0;
            if (i < cells.size()) ++c[i];
        }
    }
    return rep;
}

}  // namespace wlanopt
