#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "wlanopt/design.hpp"
#include "wlanopt/types.hpp"

// Figure-level experiment runners: phase diagrams over user counts, welfare
// and profit curves comparing CSMA against TDMA, and the instantaneous
// utility curve. All emit deterministic CSV (12 significant digits, LF line
// endings) plus a JSON sidecar holding the resolved sweep parameters.

namespace wlanopt {

struct IntRange {
    int lo = 1, hi = 1, step = 1;

    std::vector<int> values() const;
    /// Parse "a:b" or "a:b:step".
    static IntRange parse(const std::string& text);
};

struct SweepSpec {
    std::string provider = "benevolent";  // benevolent | selfish | both
    std::string protocol = "csma";        // csma | tdma | both
    IntRange n1{10, 10, 1};
    IntRange n2{1, 50, 1};
    double demand1 = 1.0;  // lambda/mu of type 1 (video)
    double demand2 = 1.0;  // lambda/mu of type 2 (email)
    double c0_csma = 0.0;
    double c0_tdma = 0.0;
    double grid_step = 1e-2;
    int ps_grid = 1000;  // subscription-fee grid for the both-mixed CSMA step
    int jobs = 0;        // worker threads; 0 = hardware concurrency

    // paper-baseline user parameters; --preset paper fills these
    double alpha1 = 10.0, beta1 = 0.3;
    double alpha2 = 5.0, beta2 = 0.1;
    double csma_p = 2.0 / 17.0;
    double delta_t = 1.0;
};

/// Two-type scenario at the sweep's parameters for the given protocol and counts.
Scenario sweep_scenario(const SweepSpec& spec, Protocol protocol, int n1, int n2);

struct PhaseRow {
    int n1 = 0, n2 = 0;
    std::string provider, protocol;
    NEType ne_type;
    double p_s = 0.0, q = 0.0, pi1 = 0.0, pi2 = 0.0, welfare = 0.0, revenue = 0.0;
    std::string status = "ok";
};

std::vector<PhaseRow> phase_diagram(const SweepSpec& spec);

struct CurveRow {
    int n2 = 0;
    double csma = 0.0;
    double tdma = 0.0;
};

/// Benevolent optimal welfare per protocol over the n2 range (n1 fixed at
/// spec.n1.lo).
std::vector<CurveRow> welfare_curve(const SweepSpec& spec);

/// Selfish optimal profit (revenue net of the fixed cost when operating).
std::vector<CurveRow> profit_curve(const SweepSpec& spec);

struct UtilityRow {
    int m = 0;
    double tau = 0.0, u_video = 0.0, u_email = 0.0;
};

/// Instantaneous utility of both user classes as CSMA throughput varies with
/// the online count m = 20..1.
std::vector<UtilityRow> utility_curve(const SweepSpec& spec);

// CSV rendering (fixed column order, %.12g floats, LF endings).
std::string phase_csv(const std::vector<PhaseRow>& rows);
std::string curve_csv(const std::vector<CurveRow>& rows, const std::string& value_name);
std::string utility_csv(const std::vector<UtilityRow>& rows);

nlohmann::json sweep_spec_to_json(const SweepSpec& spec);

/// Write `text` verbatim to `path` and the sidecar (resolved spec + tool
/// version) to path + ".meta.json".
void write_output(const std::string& path, const std::string& text, const SweepSpec& spec);

/// %.12g rendering used by every CSV column.
std::string fmt_sig12(double v);

}  // namespace wlanopt
