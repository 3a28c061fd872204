#include "wlanopt/json_io.hpp"

#include <fstream>
#include <limits>

namespace wlanopt {

namespace {

json money_to_json(double v) {
    if (std::isinf(v)) return "inf";
    return v;
}

double money_from_json(const json& j, const char* what) {
    if (j.is_string()) {
        if (j.get<std::string>() == "inf") return std::numeric_limits<double>::infinity();
        throw std::runtime_error(std::string("bad value for ") + what + ": " + j.dump());
    }
    return j.get<double>();
}

}  // namespace

json scenario_to_json(const Scenario& s) {
    json types = json::array();
    for (const auto& t : s.types)
        types.push_back({{"alpha", t.alpha},
                         {"beta", t.beta},
                         {"lambda", t.lambda},
                         {"mu", t.mu},
                         {"count", t.count}});
    json protocol = s.protocol.is_csma() ? json{{"kind", "csma"}, {"p", s.protocol.p}}
                                         : json{{"kind", "tdma"}};
    json admission;
    if (s.admission.admits_all())
        admission = {{"kind", "admit_all"}};
    else
        admission = {{"kind", "per_plan_cap"}, {"caps", *s.admission.caps}};
    return json{{"types", types},
                {"delta_t", s.delta_t},
                {"c0", s.c0},
                {"protocol", protocol},
                {"admission", admission}};
}

Scenario scenario_from_json(const json& j) {
    Scenario s;
    for (const auto& t : j.at("types"))
        s.types.emplace_back(t.at("alpha").get<double>(), t.at("beta").get<double>(),
                             t.at("lambda").get<double>(), t.at("mu").get<double>(),
                             t.at("count").get<int>());
    s.delta_t = j.at("delta_t").get<double>();
    s.c0 = j.at("c0").get<double>();
    const auto& proto = j.at("protocol");
    const std::string kind = proto.at("kind").get<std::string>();
    if (kind == "csma")
        s.protocol = MacProtocol::csma(proto.at("p").get<double>());
    else if (kind == "tdma")
        s.protocol = MacProtocol::tdma();
    else
        throw std::runtime_error("unknown protocol kind: " + kind);
    if (j.contains("admission")) {
        const auto& adm = j.at("admission");
        const std::string akind = adm.at("kind").get<std::string>();
        if (akind == "admit_all")
            s.admission = AdmissionPolicy::admit_all();
        else if (akind == "per_plan_cap")
            s.admission = AdmissionPolicy::per_plan_cap(adm.at("caps").get<std::vector<int>>());
        else
            throw std::runtime_error("unknown admission kind: " + akind);
    }
    return s;
}

json policy_to_json(const PricingPolicy& p) {
    json plans = json::array();
    for (const auto& plan : p.plans)
        plans.push_back({{"p_s", money_to_json(plan.subscription)}, {"q", plan.rate_charge}});
    return json{{"plans", plans}};
}

PricingPolicy policy_from_json(const json& j) {
    std::vector<PricingPlan> plans;
    for (const auto& plan : j.at("plans"))
        plans.emplace_back(money_from_json(plan.at("p_s"), "p_s"), plan.at("q").get<double>());
    return PricingPolicy(std::move(plans));
}

json profile_to_json(const ActionProfile& a) { return json(a.pi); }

ActionProfile profile_from_json(const json& j) {
    return ActionProfile::from_rows(j.get<std::vector<std::vector<double>>>());
}

json randomization_to_json(const Randomization& n) { return json(n.n); }

Randomization randomization_from_json(const json& j) {
    Randomization n;
    n.n = j.get<std::vector<std::vector<int>>>();
    return n;
}

json sim_config_to_json(const SimConfig& cfg) {
    json j{{"scenario", scenario_to_json(cfg.scenario)},
           {"policy", policy_to_json(cfg.policy)},
           {"horizon", cfg.horizon},
           {"warmup", cfg.warmup},
           {"seed", cfg.seed},
           {"replications", cfg.replications},
           {"track_states", cfg.track_states}};
    if (cfg.profile) j["profile"] = profile_to_json(*cfg.profile);
    if (cfg.fixed_n) j["fixed_n"] = randomization_to_json(*cfg.fixed_n);
    return j;
}

SimConfig sim_config_from_json(const json& j) {
    SimConfig cfg;
    cfg.scenario = scenario_from_json(j.at("scenario"));
    cfg.policy = policy_from_json(j.at("policy"));
    if (j.contains("profile")) cfg.profile = profile_from_json(j.at("profile"));
    if (j.contains("fixed_n")) cfg.fixed_n = randomization_from_json(j.at("fixed_n"));
    cfg.horizon = j.at("horizon").get<double>();
    if (j.contains("warmup")) cfg.warmup = j.at("warmup").get<double>();
    if (j.contains("seed")) cfg.seed = j.at("seed").get<std::uint64_t>();
    if (j.contains("replications")) cfg.replications = j.at("replications").get<int>();
    if (j.contains("track_states")) cfg.track_states = j.at("track_states").get<bool>();
    return cfg;
}

namespace {

json estimate_to_json(const Estimate& e) { return json{{"mean", e.mean}, {"se", e.se}}; }

}  // namespace

json sim_report_to_json(const SimReport& rep) {
    json cells = json::array();
    for (const auto& c : rep.cells)
        cells.push_back({{"type", c.type + 1},
                         {"plan", c.plan},
                         {"occupancy", estimate_to_json(c.occupancy)},
                         {"utility", estimate_to_json(c.utility)},
                         {"usage", estimate_to_json(c.usage)},
                         {"mean_n", c.mean_n}});
    json types = json::array();
    for (const auto& t : rep.types)
        types.push_back({{"type", t.type + 1},
                         {"use", estimate_to_json(t.use)},
                         {"cost", estimate_to_json(t.cost)}});
    return json{{"rng", rep.rng},
                {"horizon", rep.horizon},
                {"warmup", rep.warmup},
                {"seed", rep.seed},
                {"replications", rep.replications},
                {"total_events", rep.total_events},
                {"cells", cells},
                {"types", types},
                {"max_pricing_state", rep.max_pricing_state}};
}

json design_outcome_to_json(const DesignOutcome& out) {
    const auto solution_to_json = [](const DesignSolution& d) {
        return json{{"protocol", d.protocol.is_csma() ? "csma" : "tdma"},
                    {"ne_type", d.ne_type.label()},
                    {"policy", policy_to_json(d.policy)},
                    {"profile", profile_to_json(d.profile)},
                    {"welfare", d.welfare},
                    {"revenue", d.revenue},
                    {"feasible", d.feasible}};
    };
    json candidates = json::array();
    for (const auto& c : out.candidates) {
        json jc{{"ne_type", c.type.label()},
                {"feasible", c.feasible},
                {"welfare", c.welfare},
                {"revenue", c.revenue},
                {"policy", policy_to_json(c.policy)},
                {"profile", profile_to_json(c.profile)}};
        if (!c.note.empty()) jc["note"] = c.note;
        candidates.push_back(jc);
    }
    json j = solution_to_json(out.best);
    j["candidates"] = candidates;
    return j;
}

json load_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open " + path);
    json j;
    try {
        in >> j;
    } catch (const json::parse_error& e) {
        throw std::runtime_error(path + ": " + e.what());
    }
    return j;
}

void save_json_file(const std::string& path, const json& j) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot open " + path + " for writing");
    out << j.dump(2) << '\n';
}

}  // namespace wlanopt
