#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "wlanopt/types.hpp"

// Continuous-time Monte Carlo simulation of the arrival/departure dynamics:
// randomization at time zero (or a fixed outcome), finite-source Poisson
// arrivals at rate lambda_k * (n - x), exponential departures at rate
// mu_k * x, admission control blocking, and time-weighted accumulation of
// occupancy, utility of use and guaranteed usage. The independent stochastic
// oracle for the exact engine.

namespace wlanopt {

struct SimConfig {
    Scenario scenario;
    PricingPolicy policy;
    std::optional<ActionProfile> profile;  // draw n each replication...
    std::optional<Randomization> fixed_n;  // ...or keep it fixed
    double horizon = 1e4;   // simulated time per replication
    double warmup = -1.0;   // discarded prefix; < 0 means 10% of horizon
    std::uint64_t seed = 1;
    int replications = 8;
    bool track_states = false;  // record per-state dwell frequencies (small chains)
};

struct Estimate {
    double mean = 0.0;
    double se = 0.0;  // standard error across replications
};

struct CellReport {
    int type = 0, plan = 0;       // (k, l)
    Estimate occupancy;           // time-average online count
    Estimate utility;             // empirical V_k^l per billing period
    Estimate usage;               // empirical B_k^l per billing period
    double mean_n = 0.0;          // average realized n_{k,l}
};

struct TypeReport {
    int type = 0;
    Estimate use;    // empirical U_k
    Estimate cost;   // empirical C_k
};

struct SimReport {
    std::string rng;  // algorithm + streaming scheme
    double horizon = 0.0, warmup = 0.0;
    std::uint64_t seed = 0;
    int replications = 0;
    std::uint64_t total_events = 0;
    std::vector<CellReport> cells;
    std::vector<TypeReport> types;
    std::vector<int> max_pricing_state;            // per plan, over all event instants
    std::vector<double> state_freq;                // when track_states (single fixed n)
    std::vector<SystemState> state_index;          // states matching state_freq
};

/// Run the simulation. Deterministic for a given config: replication r uses
/// an independent mt19937_64 stream seeded with seed + r, and results are
/// merged in replication order.
SimReport simulate(const SimConfig& cfg);

}  // namespace wlanopt
