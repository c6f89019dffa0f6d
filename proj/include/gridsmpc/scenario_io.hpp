#pragma once

#include <string>

#include "gridsmpc/simulation.hpp"

namespace gridsmpc {

// Schema identifier expected in the "schema" key of scenario files.
inline constexpr const char* kScenarioSchema = "gridsmpc-scenario-v1";

// Loads a scenario TOML file. Unknown schema values, missing required keys,
// malformed values and out-of-range lanes throw std::runtime_error with a
// message naming the problem.
Scenario load_scenario(const std::string& path);

}  // namespace gridsmpc
