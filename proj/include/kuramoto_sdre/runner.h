#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "kuramoto_sdre/scenarios.h"
#include "kuramoto_sdre/sim.h"

namespace kuramoto_sdre {

struct ScenarioRun {
  Scenario scenario;
  ResolvedScenario resolved;
  RunResult result;
  Vector u_ss_oracle;
  double wall_time_s = 0.0;
};

/// Builtin name first, then a path to a scenario file. Throws ScenarioError.
Scenario resolve_scenario_ref(const std::string& ref);

/// Resolves the scenario, simulates it and evaluates the steady-state oracle.
ScenarioRun execute(const Scenario& scenario);

/// The same scenario with seed replaced; samplers are required.
Scenario with_seed(Scenario scenario, std::uint64_t seed);

}  // namespace kuramoto_sdre
