#pragma once

#include <string>

#include <json.hpp>

#include "wlanopt/design.hpp"
#include "wlanopt/sim.hpp"
#include "wlanopt/types.hpp"

// JSON schemas for the file formats: scenario documents, pricing policies,
// profiles, simulator configs/reports and design solutions. An infinite
// subscription fee is serialized as the literal string "inf".

namespace wlanopt {

using json = nlohmann::json;

json scenario_to_json(const Scenario& s);
Scenario scenario_from_json(const json& j);

json policy_to_json(const PricingPolicy& p);
PricingPolicy policy_from_json(const json& j);

json profile_to_json(const ActionProfile& a);
ActionProfile profile_from_json(const json& j);

json randomization_to_json(const Randomization& n);
Randomization randomization_from_json(const json& j);

json sim_config_to_json(const SimConfig& cfg);
SimConfig sim_config_from_json(const json& j);

json sim_report_to_json(const SimReport& rep);

json design_outcome_to_json(const DesignOutcome& out);

/// Read and parse a whole JSON file; throws std::runtime_error with the path
/// on failure.
json load_json_file(const std::string& path);
void save_json_file(const std::string& path, const json& j);

}  // namespace wlanopt
