#include "wlanopt/engine.hpp"

#include <algorithm>
#include <cmath>
#include <functional>

#include "wlanopt/mac.hpp"

namespace wlanopt {

namespace {

struct Cell {
    int k, l, bound;
};

// Flatten the non-dummy (k,l) cells; x[k][0] is identically zero because
// dummy-plan users never enter the network.
std::vector<Cell> cells_of(const Randomization& n) {
    std::vector<Cell> cells;
    for (int k = 0; k < n.num_types(); ++k)
        for (int l = 1; l < n.num_plans(); ++l) cells.push_back({k, l, n.n[k][l]});
    return cells;
}

std::int64_t state_count(const std::vector<Cell>& cells) {
    std::int64_t count = 1;
    for (const auto& c : cells) {
        count *= (c.bound + 1);
        if (count > kMaxStates) return count;
    }
    return count;
}

void require_valid(const Randomization& n, const Scenario& s) {
    auto errs = validate_randomization(n, s);
    if (!errs.empty()) throw std::invalid_argument("randomization invalid: " + errs.front());
    if (state_count(cells_of(n)) > kMaxStates)
        throw std::invalid_argument(
            "admissible state set exceeds the enumeration bound; use the closed forms or the "
            "simulator");
}

bool caps_ok(const std::vector<int>& counts, const std::vector<Cell>& cells,
             const Scenario& s) {
    if (s.admission.admits_all()) return true;
    std::vector<int> v;  // per-plan online totals
    for (std::size_t i = 0; i < cells.size(); ++i) {
        if (static_cast<int>(v.size()) <= cells[i].l) v.resize(cells[i].l + 1, 0);
        v[cells[i].l] += counts[i];
    }
    for (std::size_t l = 1; l < v.size(); ++l)
        if (v[l] > s.admission.cap(static_cast<int>(l))) return false;
    return true;
}

// Visit every admissible state with its stationary probability.
void for_each_state(const Randomization& n, const Scenario& s,
                    const std::function<void(const std::vector<Cell>&, const std::vector<int>&,
                                             double)>& visit) {
    const auto cells = cells_of(n);
    std::vector<int> counts(cells.size(), 0);

    // Per-cell binomial weights C(n,x) * (lambda/mu)^x.
    std::vector<std::vector<double>> cell_weight(cells.size());
    for (std::size_t i = 0; i < cells.size(); ++i) {
        const auto& t = s.types[cells[i].k];
        const double rho = t.lambda / t.mu;
        auto& w = cell_weight[i];
        w.assign(cells[i].bound + 1, 0.0);
        w[0] = 1.0;
        for (int x = 0; x < cells[i].bound; ++x)
            w[x + 1] = w[x] * rho * (cells[i].bound - x) / (x + 1);
    }

    // Two odometer sweeps: normalize first, then visit.
    const auto sweep = [&](const std::function<void(const std::vector<int>&, double)>& f) {
        std::fill(counts.begin(), counts.end(), 0);
        for (;;) {
            if (caps_ok(counts, cells, s)) {
                double w = 1.0;
                for (std::size_t i = 0; i < cells.size(); ++i) w *= cell_weight[i][counts[i]];
                f(counts, w);
            }
            std::size_t i = 0;
            while (i < cells.size() && counts[i] == cells[i].bound) counts[i++] = 0;
            if (i == cells.size()) break;
            ++counts[i];
        }
    };

    double total = 0.0;
    sweep([&](const std::vector<int>&, double w) { total += w; });
    if (!(total > 0.0))
        throw std::invalid_argument("stationary distribution: empty admissible set");
    sweep([&](const std::vector<int>& c, double w) { visit(cells, c, w / total); });
}

SystemState to_state(const Randomization& n, const std::vector<Cell>& cells,
                     const std::vector<int>& counts) {
    SystemState st;
    st.x.assign(n.num_types(), std::vector<int>(n.num_plans(), 0));
    for (std::size_t i = 0; i < cells.size(); ++i) st.x[cells[i].k][cells[i].l] = counts[i];
    return st;
}

// Expected value of (x_{k,l}/n_{k,l}) * f(total online) at steady state.
double per_user_expectation(int k, int l, const Randomization& n, const Scenario& s,
                            const std::function<double(int)>& f) {
    if (l < 1 || l >= n.num_plans() || k < 0 || k >= n.num_types())
        throw std::invalid_argument("per-user expectation needs a non-dummy (k,l) cell");
    if (n.n[k][l] < 1)
        throw std::invalid_argument("per-user expectation undefined: n[k][l] = 0");
    require_valid(n, s);
    double acc = 0.0;
    int cell_index = -1;
    for_each_state(n, s, [&](const std::vector<Cell>& cells, const std::vector<int>& counts,
                             double prob) {
        if (cell_index < 0)
            for (std::size_t i = 0; i < cells.size(); ++i)
                if (cells[i].k == k && cells[i].l == l) cell_index = static_cast<int>(i);
        const int own = counts[cell_index];
        if (own == 0) return;  // the observed user is offline, contributes nothing
        int m = 0;
        for (int c : counts) m += c;
        acc += prob * (static_cast<double>(own) / n.n[k][l]) * f(m);
    });
    return s.delta_t * acc;
}

// Enumerate integer compositions of `total` into `parts` bins.
void for_each_composition(int total, int parts, std::vector<int>& bins, int idx,
                          const std::function<void(const std::vector<int>&)>& visit) {
    if (idx == parts - 1) {
        bins[idx] = total;
        visit(bins);
        return;
    }
    for (int c = 0; c <= total; ++c) {
        bins[idx] = c;
        for_each_composition(total - c, parts, bins, idx + 1, visit);
    }
}

double multinomial_prob(const std::vector<int>& bins, const std::vector<double>& probs) {
    int total = 0;
    for (int b : bins) total += b;
    double value = 1.0;
    // prod C(remaining, b_i) p_i^{b_i}, accumulated stably as a plain product
    int remaining = total;
    for (std::size_t i = 0; i < bins.size(); ++i) {
        const int b = bins[i];
        if (b == 0) continue;
        if (probs[i] == 0.0) return 0.0;
        for (int j = 0; j < b; ++j) value *= probs[i] * (remaining - j) / (j + 1);
        remaining -= b;
    }
    return value;
}

}  // namespace

StationaryDistribution stationary_distribution(const Randomization& n, const Scenario& s) {
    require_valid(n, s);
    StationaryDistribution dist;
    for_each_state(n, s, [&](const std::vector<Cell>& cells, const std::vector<int>& counts,
                             double prob) {
        dist.support.emplace_back(to_state(n, cells, counts), prob);
    });
    return dist;
}

double steady_state_utility(int k, int l, const Randomization& n, const Scenario& s) {
    const auto& t = s.types[k];
    return per_user_expectation(k, l, n, s, [&](int m) {
        return utility_of_use(t, throughput_at(m, s.protocol));
    });
}

double expected_guaranteed_rate(int k, int l, const Randomization& n, const Scenario& s) {
    return per_user_expectation(k, l, n, s,
                                [&](int m) { return throughput_at(m, s.protocol); });
}

std::vector<std::pair<Randomization, double>> randomization_distribution(
    int k, int l, const ActionProfile& profile, const Scenario& s) {
    auto errs = validate_profile(profile, s);
    if (!errs.empty()) throw std::invalid_argument("profile invalid: " + errs.front());
    if (l < 0 || l >= profile.num_plans())
        throw std::invalid_argument("randomization_distribution: bad plan index");

    const int K = s.num_types();
    const int plans = profile.num_plans();

    // Per-type lists of (bins, probability); the pinned type distributes
    // N_k - 1 users and gets the pinned user added to plan l afterwards.
    std::vector<std::vector<std::pair<std::vector<int>, double>>> per_type(K);
    for (int j = 0; j < K; ++j) {
        const int total = s.types[j].count - (j == k ? 1 : 0);
        std::vector<int> bins(plans, 0);
        for_each_composition(total, plans, bins, 0, [&](const std::vector<int>& b) {
            const double pr = multinomial_prob(b, profile.pi[j]);
            if (pr > 0.0) per_type[j].emplace_back(b, pr);
        });
    }
    if (s.types[k].count < 1)
        throw std::invalid_argument("randomization_distribution: pinned type has no users");

    std::vector<std::pair<Randomization, double>> out;
    std::vector<std::size_t> pick(K, 0);
    for (;;) {
        Randomization n;
        n.n.resize(K);
        double pr = 1.0;
        for (int j = 0; j < K; ++j) {
            n.n[j] = per_type[j][pick[j]].first;
            pr *= per_type[j][pick[j]].second;
        }
        n.n[k][l] += 1;  // the pinned user
        if (pr > 0.0) out.emplace_back(std::move(n), pr);
        int j = 0;
        while (j < K && pick[j] + 1 == per_type[j].size()) pick[j++] = 0;
        if (j == K) break;
        ++pick[j];
    }
    return out;
}

namespace {

std::vector<double> deviation_or_row(int k, const ActionProfile& profile,
                                     const std::optional<std::vector<double>>& deviation) {
    if (!deviation) return profile.pi[k];
    if (deviation->size() != profile.pi[k].size())
        throw std::invalid_argument("deviation row has the wrong number of plans");
    return *deviation;
}

}  // namespace

double expected_utility_of_use(int k, const ActionProfile& profile, const Scenario& s,
                               const std::optional<std::vector<double>>& deviation) {
    const auto act = deviation_or_row(k, profile, deviation);
    double total = 0.0;
    for (int l = 1; l < profile.num_plans(); ++l) {
        if (act[l] == 0.0) continue;
        double v = 0.0;
        for (const auto& [n, pr] : randomization_distribution(k, l, profile, s))
            v += pr * steady_state_utility(k, l, n, s);
        total += act[l] * v;
    }
    return total;
}

double expected_cost(int k, const ActionProfile& profile, const PricingPolicy& policy,
                     const Scenario& s, const std::optional<std::vector<double>>& deviation) {
    if (policy.num_plans() != profile.num_plans())
        throw std::invalid_argument("policy and profile disagree on the number of plans");
    const auto act = deviation_or_row(k, profile, deviation);
    double total = 0.0;
    for (int l = 1; l < policy.num_plans(); ++l) {
        if (act[l] == 0.0) continue;
        const auto& plan = policy.plans[l];
        double usage_charge = 0.0;
        if (plan.rate_charge > 0.0) {
            for (const auto& [n, pr] : randomization_distribution(k, l, profile, s))
                usage_charge += pr * plan.rate_charge * expected_guaranteed_rate(k, l, n, s);
        }
        total += act[l] * (plan.subscription + usage_charge);
    }
    return total;
}

}  // namespace wlanopt
