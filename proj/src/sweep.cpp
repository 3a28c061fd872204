#include "wlanopt/sweep.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <stdexcept>

#include "wlanopt/json_io.hpp"
#include "wlanopt/mac.hpp"
#include "wlanopt/parallel.hpp"
#include "wlanopt/version.hpp"

namespace wlanopt {

std::vector<int> IntRange::values() const {
    std::vector<int> out;
    if (step < 1) throw std::invalid_argument("range step must be >= 1");
    if (lo < 0) throw std::invalid_argument("user counts cannot be negative");
    for (int v = lo; v <= hi; v += step) out.push_back(v);
    if (out.empty()) throw std::invalid_argument("empty range");
    return out;
}

IntRange IntRange::parse(const std::string& text) {
    IntRange r;
    const auto c1 = text.find(':');
    if (c1 == std::string::npos) {
        r.lo = r.hi = std::stoi(text);
        return r;
    }
    r.lo = std::stoi(text.substr(0, c1));
    const auto c2 = text.find(':', c1 + 1);
    if (c2 == std::string::npos) {
        r.hi = std::stoi(text.substr(c1 + 1));
    } else {
        r.hi = std::stoi(text.substr(c1 + 1, c2 - c1 - 1));
        r.step = std::stoi(text.substr(c2 + 1));
    }
    return r;
}

Scenario sweep_scenario(const SweepSpec& spec, Protocol protocol, int n1, int n2) {
    Scenario s;
    s.types.emplace_back(spec.alpha1, spec.beta1, spec.demand1, 1.0, n1);
    s.types.emplace_back(spec.alpha2, spec.beta2, spec.demand2, 1.0, n2);
    s.delta_t = spec.delta_t;
    s.protocol = protocol == Protocol::Csma ? MacProtocol::csma(spec.csma_p)
                                            : MacProtocol::tdma();
    s.c0 = protocol == Protocol::Csma ? spec.c0_csma : spec.c0_tdma;
    s.admission = AdmissionPolicy::admit_all();
    return s;
}

std::string fmt_sig12(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.12g", v);
    return buf;
}

namespace {

std::vector<std::string> split_choice(const std::string& v, const char* a, const char* b) {
    if (v == "both") return {a, b};
    if (v == a || v == b) return {v};
    throw std::invalid_argument("expected '" + std::string(a) + "', '" + b + "' or 'both', got '" +
                                v + "'");
}

SearchOptions search_options(const SweepSpec& spec) {
    SearchOptions opt;
    opt.grid_step = spec.grid_step;
    opt.ps_grid = spec.ps_grid;
    return opt;
}

}  // namespace

std::vector<PhaseRow> phase_diagram(const SweepSpec& spec) {
    const auto providers = split_choice(spec.provider, "benevolent", "selfish");
    const auto protocols = split_choice(spec.protocol, "csma", "tdma");
    const auto n1s = spec.n1.values();
    const auto n2s = spec.n2.values();

    struct Task {
        int n1, n2;
        std::string provider, protocol;
    };
    std::vector<Task> tasks;
    for (int n1 : n1s)
        for (int n2 : n2s)
            for (const auto& prov : providers)
                for (const auto& proto : protocols) tasks.push_back({n1, n2, prov, proto});

    std::vector<PhaseRow> rows(tasks.size());
    const SearchOptions opt = search_options(spec);
    parallel_for(static_cast<int>(tasks.size()), spec.jobs, [&](int i) {
        const Task& t = tasks[i];
        PhaseRow row;
        row.n1 = t.n1;
        row.n2 = t.n2;
        row.provider = t.provider;
        row.protocol = t.protocol;
        try {
            const Scenario s = sweep_scenario(
                spec, t.protocol == "csma" ? Protocol::Csma : Protocol::Tdma, t.n1, t.n2);
            const Objective obj =
                t.provider == "benevolent" ? Objective::Welfare : Objective::Revenue;
            const DesignOutcome out = solve_design(obj, s, opt);
            row.ne_type = out.best.ne_type;
            row.p_s = out.best.policy.plans[1].subscription;
            row.q = out.best.policy.plans[1].rate_charge;
            row.pi1 = out.best.profile.in_prob(0);
            row.pi2 = out.best.profile.in_prob(1);
            row.welfare = out.best.welfare;
            row.revenue = out.best.revenue;
        } catch (const std::exception& e) {
            row.status = e.what();
        }
        rows[i] = row;
    });
    return rows;
}

namespace {

std::vector<CurveRow> protocol_comparison_curve(const SweepSpec& spec, Objective obj) {
    const auto n2s = spec.n2.values();
    const int n1 = spec.n1.lo;
    if (n1 < 0) throw std::invalid_argument("user counts cannot be negative");
    // surface bad user parameters here, not inside a worker thread
    for (Protocol proto : {Protocol::Csma, Protocol::Tdma}) {
        const Scenario probe = sweep_scenario(spec, proto, n1, n2s.front());
        const auto errs = validate_scenario(probe);
        if (!errs.empty()) throw std::invalid_argument("sweep scenario invalid: " + errs.front());
    }
    std::vector<CurveRow> rows(n2s.size());
    const SearchOptions opt = search_options(spec);
    parallel_for(static_cast<int>(n2s.size()), spec.jobs, [&](int i) {
        CurveRow row;
        row.n2 = n2s[i];
        for (Protocol proto : {Protocol::Csma, Protocol::Tdma}) {
            const Scenario s = sweep_scenario(spec, proto, n1, n2s[i]);
            const DesignOutcome out = solve_design(obj, s, opt);
            double value;
            if (obj == Objective::Welfare) {
                value = out.best.welfare;
            } else {
                // profit: revenue net of the fixed cost, which is only
                // incurred when somebody subscribes
                const bool operating =
                    out.best.profile.in_prob(0) > 0.0 || out.best.profile.in_prob(1) > 0.0;
                value = out.best.revenue - (operating ? s.c0 : 0.0);
            }
            (proto == Protocol::Csma ? row.csma : row.tdma) = value;
        }
        rows[i] = row;
    });
    return rows;
}

}  // namespace

std::vector<CurveRow> welfare_curve(const SweepSpec& spec) {
    return protocol_comparison_curve(spec, Objective::Welfare);
}

std::vector<CurveRow> profit_curve(const SweepSpec& spec) {
    return protocol_comparison_curve(spec, Objective::Revenue);
}

std::vector<UtilityRow> utility_curve(const SweepSpec& spec) {
    std::vector<UtilityRow> rows;
    const MacProtocol csma = MacProtocol::csma(spec.csma_p);
    for (int m = 20; m >= 1; --m) {
        UtilityRow r;
        r.m = m;
        r.tau = throughput_at(m, csma);
        r.u_video = spec.alpha1 - spec.beta1 / r.tau;
        r.u_email = spec.alpha2 - spec.beta2 / r.tau;
        rows.push_back(r);
    }
    return rows;
}

std::string phase_csv(const std::vector<PhaseRow>& rows) {
    std::string out = "n1,n2,provider,protocol,ne_type,p_s,q,pi1,pi2,welfare,revenue,status\n";
    for (const auto& r : rows) {
        out += std::to_string(r.n1) + ',' + std::to_string(r.n2) + ',' + r.provider + ',' +
               r.protocol + ',' + r.ne_type.label() + ',' + fmt_sig12(r.p_s) + ',' +
               fmt_sig12(r.q) + ',' + fmt_sig12(r.pi1) + ',' + fmt_sig12(r.pi2) + ',' +
               fmt_sig12(r.welfare) + ',' + fmt_sig12(r.revenue) + ',' + r.status + '\n';
    }
    return out;
}

std::string curve_csv(const std::vector<CurveRow>& rows, const std::string& value_name) {
    std::string out = "n2," + value_name + "_csma," + value_name + "_tdma\n";
    for (const auto& r : rows)
        out += std::to_string(r.n2) + ',' + fmt_sig12(r.csma) + ',' + fmt_sig12(r.tdma) + '\n';
    return out;
}

std::string utility_csv(const std::vector<UtilityRow>& rows) {
    std::string out = "m,tau,u_video,u_email\n";
    for (const auto& r : rows)
        out += std::to_string(r.m) + ',' + fmt_sig12(r.tau) + ',' + fmt_sig12(r.u_video) + ',' +
               fmt_sig12(r.u_email) + '\n';
    return out;
}

nlohmann::json sweep_spec_to_json(const SweepSpec& spec) {
    return nlohmann::json{
        {"provider", spec.provider},
        {"protocol", spec.protocol},
        {"n1", {{"lo", spec.n1.lo}, {"hi", spec.n1.hi}, {"step", spec.n1.step}}},
        {"n2", {{"lo", spec.n2.lo}, {"hi", spec.n2.hi}, {"step", spec.n2.step}}},
        {"demand1", spec.demand1},
        {"demand2", spec.demand2},
        {"c0_csma", spec.c0_csma},
        {"c0_tdma", spec.c0_tdma},
        {"grid_step", spec.grid_step},
        {"ps_grid", spec.ps_grid},
        {"alpha1", spec.alpha1},
        {"beta1", spec.beta1},
        {"alpha2", spec.alpha2},
        {"beta2", spec.beta2},
        {"csma_p", spec.csma_p},
        {"delta_t", spec.delta_t},
        {"version", kVersion}};
}

void write_output(const std::string& path, const std::string& text, const SweepSpec& spec) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot open " + path + " for writing");
    out << text;
    save_json_file(path + ".meta.json", sweep_spec_to_json(spec));
}

}  // namespace wlanopt
