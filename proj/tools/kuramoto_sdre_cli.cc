// Command-line driver: run scenarios, write trajectories and plots, and expose
// the steady-state oracle and the Riccati solver for debugging.

#include <algorithm>
#include <atomic>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <mutex>
#include <string>
#include <thread>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "kuramoto_sdre/controller.h"
#include "kuramoto_sdre/output.h"
#include "kuramoto_sdre/riccati.h"
#include "kuramoto_sdre/runner.h"
#include "kuramoto_sdre/scenarios.h"

namespace ks = kuramoto_sdre;

namespace {

constexpr int kExitConfig = 2;
constexpr int kExitOutput = 3;
constexpr int kExitNotStabilizable = 4;

std::string format_vector(const ks::Vector& v) {
  std::string out;
  char buf[32];
  for (Eigen::Index i = 0; i < v.size(); ++i) {
    std::snprintf(buf, sizeof(buf), "%.9g", v(i));
    if (i > 0) out += ' ';
    out += buf;
  }
  return out;
}

ks::Scenario load_with_overrides(const std::string& ref, const std::vector<std::string>& overrides) {
  ks::Scenario scenario = ks::resolve_scenario_ref(ref);
  for (const auto& o : overrides) ks::apply_override(scenario, o);
  scenario.validate();
  return scenario;
}

unsigned thread_cap() {
  unsigned cap = std::max(1u, std::thread::hardware_concurrency());
  if (const char* env = std::getenv("KURAMOTO_SDRE_THREADS")) {
    const int requested = std::atoi(env);
    if (requested > 0) cap = static_cast<unsigned>(requested);
  }
  return cap;
}

int cmd_run(const std::string& ref, const std::string& out, const std::vector<std::string>& sets,
            const std::optional<std::uint64_t>& seed) {
  ks::Scenario scenario = load_with_overrides(ref, sets);
  if (seed) scenario = ks::with_seed(scenario, *seed);
  const ks::ScenarioRun run = ks::execute(scenario);
  const auto summary = ks::summary_json(run.scenario, run.resolved, run.result.summary,
                                        run.u_ss_oracle, run.wall_time_s);
  ks::write_output_bundle(out, run.result, summary, run.resolved.params.size());

  const auto& s = run.result.summary;
  std::cout << "scenario: " << scenario.name << "\n"
            << "final_e_inf_norm: " << s.final_e_inf_norm << "\n"
            << "final_u: " << format_vector(s.final_u) << "\n"
            << "u_ss_oracle: " << format_vector(run.u_ss_oracle) << "\n"
            << "any_fallback: " << (s.any_fallback ? "true" : "false") << "\n"
            << "wrote " << out << "\n";
  return 0;
}

int cmd_batch(const std::vector<std::string>& refs, const std::string& out,
              const std::vector<std::string>& sets, int seeds) {
  struct Job {
    ks::Scenario scenario;
    std::filesystem::path dir;
  };
  std::vector<Job> jobs;
  for (const auto& ref : refs) {
    const ks::Scenario base = load_with_overrides(ref, sets);
    if (!base.uses_sampler()) {
      jobs.push_back({base, std::filesystem::path(out) / base.name});
      continue;
    }
    const int count = seeds > 0 ? seeds : ks::default_seed_count(base.n);
    for (int k = 0; k < count; ++k) {
      const std::uint64_t seed = *base.seed + static_cast<std::uint64_t>(k);
      jobs.push_back({ks::with_seed(base, seed),
                      std::filesystem::path(out) / base.name / ("seed-" + std::to_string(seed))});
    }
  }

  std::atomic<std::size_t> next{0};
  std::mutex io;
  int status = 0;
  auto worker = [&] {
    for (std::size_t i = next++; i < jobs.size(); i = next++) {
      const Job& job = jobs[i];
      try {
        const ks::ScenarioRun run = ks::execute(job.scenario);
        const auto summary = ks::summary_json(run.scenario, run.resolved, run.result.summary,
                                              run.u_ss_oracle, run.wall_time_s);
        ks::write_output_bundle(job.dir, run.result, summary, run.resolved.params.size());
        std::lock_guard lock(io);
        std::cout << job.scenario.name << " seed="
                  << (job.scenario.seed ? std::to_string(*job.scenario.seed) : "-")
                  << " final_e_inf_norm=" << run.result.summary.final_e_inf_norm
                  << " any_fallback=" << (run.result.summary.any_fallback ? "true" : "false")
                  << " wall_time_s=" << run.wall_time_s << "\n";
      } catch (const ks::OutputError& ex) {
        std::lock_guard lock(io);
        std::cerr << "error: " << ex.what() << "\n";
        status = kExitOutput;
      }
    }
  };
  const unsigned threads = std::min<unsigned>(thread_cap(), static_cast<unsigned>(jobs.size()));
  std::vector<std::thread> pool;
  for (unsigned t = 0; t < threads; ++t) pool.emplace_back(worker);
  for (auto& t : pool) t.join();
  return status;
}

int cmd_steady_state(const std::string& ref, const std::vector<std::string>& sets) {
  const ks::ResolvedScenario resolved = ks::resolve(load_with_overrides(ref, sets));
  std::cout << format_vector(ks::steady_state_u(resolved.params, resolved.cfg)) << "\n";
  return 0;
}

int cmd_care_solve(const std::string& path) {
  ks::CareProblem problem;
  try {
    std::ifstream in(path);
    if (!in) throw ks::ScenarioError("cannot open " + path);
    const nlohmann::json doc = nlohmann::json::parse(in);
    problem = {ks::matrix_from_json(doc.at("a")), ks::matrix_from_json(doc.at("b")),
               ks::matrix_from_json(doc.at("q")), ks::matrix_from_json(doc.at("r"))};
    ks::validate(problem);
  } catch (const nlohmann::json::exception& ex) {
    throw ks::ScenarioError(path + ": " + ex.what());
  }
  const ks::CareSolution solution = ks::solve_care(problem);
  std::cout << "P =\n";
  for (Eigen::Index i = 0; i < solution.p.rows(); ++i) {
    std::cout << "  " << format_vector(solution.p.row(i).transpose()) << "\n";
  }
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.3e", solution.residual_norm);
  std::cout << "residual_norm = " << buf << "\n"
            << "iterations = " << solution.iterations << "\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"SDRE phase-locking control of Kuramoto oscillator networks"};
  app.require_subcommand(1);

  std::string ref;
  std::string out;
  std::vector<std::string> sets;
  std::optional<std::uint64_t> seed;
  auto* run = app.add_subcommand("run", "Simulate a scenario and write CSV, JSON and SVG output");
  run->add_option("scenario", ref, "Builtin scenario name or scenario JSON file")->required();
  run->add_option("--out", out, "Output directory")->required();
  run->add_option("--seed", seed, "Override the sampling seed");
  run->add_option("--set", sets, "Override a scenario field (key=value)");

  std::vector<std::string> refs;
  int seeds = 0;
  std::string batch_out;
  std::vector<std::string> batch_sets;
  auto* batch = app.add_subcommand("batch", "Run several scenarios (and seeds) in parallel");
  batch->add_option("scenarios", refs, "Builtin names or scenario files")->required();
  batch->add_option("--out", batch_out, "Output directory")->required();
  batch->add_option("--seeds", seeds, "Seeds per sampled scenario (default: 10 for N<=20, 3 above)");
  batch->add_option("--set", batch_sets, "Override a scenario field (key=value)");

  std::string ss_ref;
  std::vector<std::string> ss_sets;
  auto* steady = app.add_subcommand("steady-state", "Print the steady-state input u_ss");
  steady->add_option("scenario", ss_ref, "Builtin scenario name or scenario JSON file")->required();
  steady->add_option("--set", ss_sets, "Override a scenario field (key=value)");

  std::string care_file;
  auto* care = app.add_subcommand("care-solve", "Solve a CARE given as JSON {a, b, q, r}");
  care->add_option("file", care_file, "Matrix file")->required();

  app.add_subcommand("list", "List builtin scenarios");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitConfig;
  }

  try {
    if (*run) return cmd_run(ref, out, sets, seed);
    if (*batch) return cmd_batch(refs, batch_out, batch_sets, seeds);
    if (*steady) return cmd_steady_state(ss_ref, ss_sets);
    if (*care) return cmd_care_solve(care_file);
    for (const auto& s : ks::builtin_scenarios()) std::cout << s.name << "\n";
    return 0;
  } catch (const ks::NotStabilizable& ex) {
    std::cerr << "error: not stabilizable: " << ex.what() << "\n";
    return kExitNotStabilizable;
  } catch (const ks::OutputError& ex) {
    std::cerr << "error: " << ex.what() << "\n";
    return kExitOutput;
  } catch (const std::exception& ex) {
    std::cerr << "error: " << ex.what() << "\n";
    return kExitConfig;
  }
}
