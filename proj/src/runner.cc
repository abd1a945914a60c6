#include "kuramoto_sdre/runner.h"

#include <chrono>
#include <filesystem>

#include "kuramoto_sdre/controller.h"

namespace kuramoto_sdre {

Scenario resolve_scenario_ref(const std::string& ref) {
  if (auto builtin = find_builtin(ref)) return *builtin;
  if (std::filesystem::is_regular_file(ref)) return load_scenario_file(ref);
  throw ScenarioError("unknown scenario '" + ref + "' (not a builtin name or a readable file)");
}

ScenarioRun execute(const Scenario& scenario) {
  const auto start = std::chrono::steady_clock::now();
  ResolvedScenario resolved = resolve(scenario);
  RunResult result = run_closed_loop(resolved.params, resolved.cfg, resolved.weights,
                                     resolved.theta0, resolved.sim);
  Vector u_ss = steady_state_u(resolved.params, resolved.cfg);
  const std::chrono::duration<double> elapsed = std::chrono::steady_clock::now() - start;
  return {scenario, std::move(resolved), std::move(result), std::move(u_ss), elapsed.count()};
}

Scenario with_seed(Scenario scenario, std::uint64_t seed) {
  if (!scenario.uses_sampler()) {
    throw ScenarioError("scenario '" + scenario.name + "' has no sampled fields to seed");
  }
  scenario.seed = seed;
  return scenario;
}

}  // namespace kuramoto_sdre
