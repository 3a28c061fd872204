// Python bindings for the main operations: scenario construction, closed
// forms, the exact engine, equilibrium checks, the design solvers, the
// simulator and the experiment sweeps.

#include <pybind11/functional.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "wlanopt/design.hpp"
#include "wlanopt/engine.hpp"
#include "wlanopt/game.hpp"
#include "wlanopt/json_io.hpp"
#include "wlanopt/mac.hpp"
#include "wlanopt/sim.hpp"
#include "wlanopt/sweep.hpp"
#include "wlanopt/verify.hpp"
#include "wlanopt/version.hpp"

namespace py = pybind11;
using namespace wlanopt;

namespace {

double unit_use_py(int k, std::pair<double, double> pi_in, const Scenario& s) {
    const double pv[2] = {pi_in.first, pi_in.second};
    return unit_use(k, pv, s);
}

double unit_usage_py(int k, std::pair<double, double> pi_in, const Scenario& s) {
    const double pv[2] = {pi_in.first, pi_in.second};
    return unit_usage(k, pv, s);
}

}  // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "pricing policies and user equilibria for a wireless-LAN provider";
    m.attr("__version__") = kVersion;

    py::class_<UserType>(m, "UserType")
        .def(py::init<double, double, double, double, int>(), py::arg("alpha"), py::arg("beta"),
             py::arg("lambda_"), py::arg("mu"), py::arg("count"))
        .def_readonly("alpha", &UserType::alpha)
        .def_readonly("beta", &UserType::beta)
        .def_readonly("lambda_", &UserType::lambda)
        .def_readonly("mu", &UserType::mu)
        .def_readonly("count", &UserType::count)
        .def("occupancy", &UserType::occupancy);

    py::class_<MacProtocol>(m, "MacProtocol")
        .def_static("csma", &MacProtocol::csma, py::arg("p"))
        .def_static("tdma", &MacProtocol::tdma)
        .def("is_csma", &MacProtocol::is_csma)
        .def_readonly("p", &MacProtocol::p);

    py::class_<PricingPlan>(m, "PricingPlan")
        .def(py::init<double, double>(), py::arg("p_s"), py::arg("q"))
        .def_static("dummy", &PricingPlan::dummy)
        .def_readonly("p_s", &PricingPlan::subscription)
        .def_readonly("q", &PricingPlan::rate_charge);

    py::class_<PricingPolicy>(m, "PricingPolicy")
        .def(py::init<std::vector<PricingPlan>>())
        .def_static("single", &PricingPolicy::single, py::arg("p_s"), py::arg("q"))
        .def_static("shut_out", &PricingPolicy::shut_out)
        .def_readonly("plans", &PricingPolicy::plans);

    py::class_<AdmissionPolicy>(m, "AdmissionPolicy")
        .def_static("admit_all", &AdmissionPolicy::admit_all)
        .def_static("per_plan_cap", &AdmissionPolicy::per_plan_cap, py::arg("caps"))
        .def("admits_all", &AdmissionPolicy::admits_all);

    py::class_<Scenario>(m, "Scenario")
        .def(py::init([](std::vector<UserType> types, double delta_t, double c0,
                         MacProtocol protocol, AdmissionPolicy admission) {
                 return Scenario{std::move(types), delta_t, c0, protocol, admission};
             }),
             py::arg("types"), py::arg("delta_t") = 1.0, py::arg("c0") = 0.0,
             py::arg("protocol") = MacProtocol::tdma(),
             py::arg("admission") = AdmissionPolicy::admit_all())
        .def_readonly("types", &Scenario::types)
        .def_readonly("delta_t", &Scenario::delta_t)
        .def_readonly("c0", &Scenario::c0)
        .def_readonly("protocol", &Scenario::protocol)
        .def("to_json", [](const Scenario& s) { return scenario_to_json(s).dump(); })
        .def_static("from_json",
                    [](const std::string& text) { return scenario_from_json(json::parse(text)); });

    py::class_<ActionProfile>(m, "ActionProfile")
        .def_static("from_rows", &ActionProfile::from_rows, py::arg("rows"))
        .def_static("two_type", &ActionProfile::two_type, py::arg("pi1_in"), py::arg("pi2_in"))
        .def_readonly("pi", &ActionProfile::pi)
        .def("in_prob", &ActionProfile::in_prob, py::arg("k"));

    py::class_<Randomization>(m, "Randomization")
        .def(py::init([](std::vector<std::vector<int>> n) { return Randomization{std::move(n)}; }))
        .def_readonly("n", &Randomization::n);

    py::class_<SystemState>(m, "SystemState")
        .def(py::init([](std::vector<std::vector<int>> x) { return SystemState{std::move(x)}; }))
        .def_readonly("x", &SystemState::x);

    py::class_<NEType>(m, "NEType")
        .def_static("parse", &NEType::parse, py::arg("label"))
        .def("label", &NEType::label)
        .def("pretty", &NEType::pretty);

    m.def("pricing_state", &pricing_state, py::arg("state"));
    m.def("validate_scenario", &validate_scenario, py::arg("scenario"));

    // exact engine
    py::class_<StationaryDistribution>(m, "StationaryDistribution")
        .def_readonly("support", &StationaryDistribution::support);
    m.def("stationary_distribution", &stationary_distribution, py::arg("n"), py::arg("scenario"));
    m.def("steady_state_utility", &steady_state_utility, py::arg("k"), py::arg("l"), py::arg("n"),
          py::arg("scenario"));
    m.def("expected_guaranteed_rate", &expected_guaranteed_rate, py::arg("k"), py::arg("l"),
          py::arg("n"), py::arg("scenario"));
    m.def("expected_utility_of_use", &expected_utility_of_use, py::arg("k"), py::arg("profile"),
          py::arg("scenario"), py::arg("deviation") = std::nullopt);
    m.def("expected_cost", &expected_cost, py::arg("k"), py::arg("profile"), py::arg("policy"),
          py::arg("scenario"), py::arg("deviation") = std::nullopt);

    // throughput models and closed forms
    m.def("throughput_at", &throughput_at, py::arg("online_total"), py::arg("protocol"));
    m.def("utility_of_use", &utility_of_use, py::arg("type"), py::arg("tau"));
    m.def("x_factor", &x_factor, py::arg("pi_in"), py::arg("type"), py::arg("p"));
    m.def("unit_use", &unit_use_py, py::arg("k"), py::arg("pi_in"), py::arg("scenario"));
    m.def("unit_usage", &unit_usage_py, py::arg("k"), py::arg("pi_in"), py::arg("scenario"));
    m.def("tdma_expected_usage", &tdma_expected_usage, py::arg("k"), py::arg("profile"),
          py::arg("scenario"));

    // plan selection game
    py::class_<NetPayoffs>(m, "NetPayoffs").def_readonly("w", &NetPayoffs::w);
    m.def("net_payoffs", &net_payoffs, py::arg("k"), py::arg("profile"), py::arg("policy"),
          py::arg("scenario"));
    py::class_<NashCertificate>(m, "NashCertificate")
        .def_readonly("is_nash", &NashCertificate::is_nash)
        .def_readonly("gaps", &NashCertificate::gaps)
        .def_readonly("worst_type", &NashCertificate::worst_type)
        .def_readonly("worst_gap", &NashCertificate::worst_gap);
    m.def("nash_certificate", &nash_certificate, py::arg("profile"), py::arg("policy"),
          py::arg("scenario"), py::arg("tol") = kNashTol);
    m.def("is_nash", &is_nash, py::arg("profile"), py::arg("policy"), py::arg("scenario"),
          py::arg("tol") = kNashTol);
    m.def("solve_mixed_indifference", &solve_mixed_indifference, py::arg("which"),
          py::arg("policy"), py::arg("scenario"));
    py::class_<CollapseResult>(m, "CollapseResult")
        .def_readonly("ok", &CollapseResult::ok)
        .def_readonly("policy", &CollapseResult::policy)
        .def_readonly("reason", &CollapseResult::reason);
    m.def("collapse_policy", &collapse_policy, py::arg("multi"), py::arg("profile"),
          py::arg("scenario"));

    // provider design
    py::enum_<Objective>(m, "Objective")
        .value("Welfare", Objective::Welfare)
        .value("Revenue", Objective::Revenue);
    py::class_<SearchOptions>(m, "SearchOptions")
        .def(py::init<>())
        .def_readwrite("grid_step", &SearchOptions::grid_step)
        .def_readwrite("ps_grid", &SearchOptions::ps_grid)
        .def_readwrite("skip_both_mixed", &SearchOptions::skip_both_mixed);
    py::class_<DesignSolution>(m, "DesignSolution")
        .def_readonly("policy", &DesignSolution::policy)
        .def_readonly("profile", &DesignSolution::profile)
        .def_readonly("ne_type", &DesignSolution::ne_type)
        .def_readonly("welfare", &DesignSolution::welfare)
        .def_readonly("revenue", &DesignSolution::revenue);
    py::class_<NECandidate>(m, "NECandidate")
        .def_readonly("type", &NECandidate::type)
        .def_readonly("welfare", &NECandidate::welfare)
        .def_readonly("revenue", &NECandidate::revenue)
        .def_readonly("feasible", &NECandidate::feasible)
        .def_readonly("note", &NECandidate::note);
    py::class_<DesignOutcome>(m, "DesignOutcome")
        .def_readonly("best", &DesignOutcome::best)
        .def_readonly("candidates", &DesignOutcome::candidates)
        .def("to_json", [](const DesignOutcome& o) { return design_outcome_to_json(o).dump(); });
    py::class_<Objectives>(m, "Objectives")
        .def_readonly("welfare", &Objectives::welfare)
        .def_readonly("revenue", &Objectives::revenue)
        .def_readonly("ir_ok", &Objectives::ir_ok);
    m.def("evaluate_objectives", &evaluate_objectives, py::arg("profile"), py::arg("policy"),
          py::arg("scenario"));
    m.def("solve_design", &solve_design, py::arg("objective"), py::arg("scenario"),
          py::arg("options") = SearchOptions{});
    m.def("solve_benevolent_csma", &solve_benevolent_csma, py::arg("scenario"),
          py::arg("options") = SearchOptions{});
    m.def("solve_selfish_csma", &solve_selfish_csma, py::arg("scenario"),
          py::arg("options") = SearchOptions{});
    m.def("solve_benevolent_tdma", &solve_benevolent_tdma, py::arg("scenario"),
          py::arg("options") = SearchOptions{});
    m.def("solve_selfish_tdma", &solve_selfish_tdma, py::arg("scenario"),
          py::arg("options") = SearchOptions{});

    // simulator
    py::class_<SimConfig>(m, "SimConfig")
        .def(py::init<>())
        .def_readwrite("scenario", &SimConfig::scenario)
        .def_readwrite("policy", &SimConfig::policy)
        .def_readwrite("profile", &SimConfig::profile)
        .def_readwrite("fixed_n", &SimConfig::fixed_n)
        .def_readwrite("horizon", &SimConfig::horizon)
        .def_readwrite("warmup", &SimConfig::warmup)
        .def_readwrite("seed", &SimConfig::seed)
        .def_readwrite("replications", &SimConfig::replications)
        .def_readwrite("track_states", &SimConfig::track_states);
    py::class_<Estimate>(m, "Estimate")
        .def_readonly("mean", &Estimate::mean)
        .def_readonly("se", &Estimate::se);
    py::class_<CellReport>(m, "CellReport")
        .def_readonly("type", &CellReport::type)
        .def_readonly("plan", &CellReport::plan)
        .def_readonly("occupancy", &CellReport::occupancy)
        .def_readonly("utility", &CellReport::utility)
        .def_readonly("usage", &CellReport::usage);
    py::class_<TypeReport>(m, "TypeReport")
        .def_readonly("type", &TypeReport::type)
        .def_readonly("use", &TypeReport::use)
        .def_readonly("cost", &TypeReport::cost);
    py::class_<SimReport>(m, "SimReport")
        .def_readonly("rng", &SimReport::rng)
        .def_readonly("total_events", &SimReport::total_events)
        .def_readonly("cells", &SimReport::cells)
        .def_readonly("types", &SimReport::types)
        .def_readonly("max_pricing_state", &SimReport::max_pricing_state)
        .def("to_json", [](const SimReport& r) { return sim_report_to_json(r).dump(); });
    m.def("simulate", &simulate, py::arg("config"),
          py::call_guard<py::gil_scoped_release>());

    // sweeps
    py::class_<IntRange>(m, "IntRange")
        .def(py::init([](int lo, int hi, int step) { return IntRange{lo, hi, step}; }),
             py::arg("lo"), py::arg("hi"), py::arg("step") = 1)
        .def_static("parse", &IntRange::parse);
    py::class_<SweepSpec>(m, "SweepSpec")
        .def(py::init<>())
        .def_readwrite("provider", &SweepSpec::provider)
        .def_readwrite("protocol", &SweepSpec::protocol)
        .def_readwrite("n1", &SweepSpec::n1)
        .def_readwrite("n2", &SweepSpec::n2)
        .def_readwrite("demand1", &SweepSpec::demand1)
        .def_readwrite("demand2", &SweepSpec::demand2)
        .def_readwrite("c0_csma", &SweepSpec::c0_csma)
        .def_readwrite("c0_tdma", &SweepSpec::c0_tdma)
        .def_readwrite("grid_step", &SweepSpec::grid_step)
        .def_readwrite("ps_grid", &SweepSpec::ps_grid)
        .def_readwrite("jobs", &SweepSpec::jobs);
    py::class_<PhaseRow>(m, "PhaseRow")
        .def_readonly("n1", &PhaseRow::n1)
        .def_readonly("n2", &PhaseRow::n2)
        .def_readonly("provider", &PhaseRow::provider)
        .def_readonly("protocol", &PhaseRow::protocol)
        .def_readonly("ne_type", &PhaseRow::ne_type)
        .def_readonly("p_s", &PhaseRow::p_s)
        .def_readonly("q", &PhaseRow::q)
        .def_readonly("welfare", &PhaseRow::welfare)
        .def_readonly("revenue", &PhaseRow::revenue)
        .def_readonly("status", &PhaseRow::status);
    py::class_<CurveRow>(m, "CurveRow")
        .def_readonly("n2", &CurveRow::n2)
        .def_readonly("csma", &CurveRow::csma)
        .def_readonly("tdma", &CurveRow::tdma);
    m.def("phase_diagram", &phase_diagram, py::arg("spec"),
          py::call_guard<py::gil_scoped_release>());
    m.def("welfare_curve", &welfare_curve, py::arg("spec"),
          py::call_guard<py::gil_scoped_release>());
    m.def("profit_curve", &profit_curve, py::arg("spec"),
          py::call_guard<py::gil_scoped_release>());
    m.def("phase_csv", &phase_csv, py::arg("rows"));
    m.def("curve_csv", &curve_csv, py::arg("rows"), py::arg("value_name"));
}
