#pragma once

#include <json.hpp>
#include <string>
#include <vector>

#include "cle/acceptance.hpp"

namespace cle {

/// Experiment names accepted by run_experiment.
const std::vector<std::string>& experiment_names();

/// Runs a named experiment. `params` may omit any key; the returned object echoes
/// every effective parameter under "params" and carries "results", "checks",
/// "warnings", "partition" and an optional "table" {columns, rows}.
/// Unknown names or keys raise DomainError.
nlohmann::json run_experiment(const std::string& name, const nlohmann::json& params);

nlohmann::json to_json(const Check& c);
nlohmann::json to_json(const CriterionResult& r);

/// true / false from the checks, null when there are none.
nlohmann::json gate_verdict(const nlohmann::json& checks);

}  // namespace cle
