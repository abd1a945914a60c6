#pragma once

#include <cstdint>
#include <optional>
#include <random>
#include <stdexcept>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include <json.hpp>

#include "kuramoto_sdre/controller.h"
#include "kuramoto_sdre/kuramoto.h"
#include "kuramoto_sdre/sim.h"

namespace kuramoto_sdre {

/// Malformed scenario document or override.
class ScenarioError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Deterministic uniform source: MT19937-64 with the top 53 bits mapped to
/// [0, 1). Both steps are fully specified, so draws agree bit-for-bit on every
/// conforming platform.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next_u64() { return engine_(); }
  /// (x >> 11) · 2⁻⁵³, in [0, 1).
  double uniform01() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

 private:
  std::mt19937_64 engine_;
};

/// Stream seed for a run: seed XOR FNV-1a-64(name).
std::uint64_t stream_seed(std::uint64_t seed, std::string_view name);

struct SamplerSpec {
  double low = 0.0;
  double high = 1.0;

  void validate() const;
  bool operator==(const SamplerSpec&) const = default;
};

/// Uniform draw on [low, high).
double sample(const SamplerSpec& spec, Rng& rng);

/// Initial phases placed near the target: e(0)_i drawn from `perturbation`
/// per phase difference, then θ0 = reconstruct_phases(e(0), X^des).
struct AroundTargetSpec {
  SamplerSpec perturbation;
  bool operator==(const AroundTargetSpec&) const = default;
};

using VectorSpec = std::variant<Vector, SamplerSpec>;
using PhaseSpec = std::variant<Vector, SamplerSpec, AroundTargetSpec>;

struct Scenario {
  std::string name;
  int n = 0;
  double coupling = 1.0;
  VectorSpec omega;
  VectorSpec x_des;
  PhaseSpec theta0;
  double q_scale = 1000.0;
  double r_scale = 1.0;
  SimConfig sim;
  /// Present iff some field is sampled.
  std::optional<std::uint64_t> seed;

  bool uses_sampler() const;
  void validate() const;
};

bool operator==(const Scenario& a, const Scenario& b);

/// A scenario with every sampled field drawn.
struct ResolvedScenario {
  NetworkParams params;
  DesiredConfig cfg;
  PhaseState theta0;
  SdreWeights weights;
  SimConfig sim;
  std::optional<std::uint64_t> seed;
};

/// Draws ω (N values), then X^des (N−1), then θ0 (N, or N−1 perturbations)
/// from the stream seeded by stream_seed(seed, name).
ResolvedScenario resolve(const Scenario& scenario);

/// paper-4osc, paper-dispersion, paper-lowq, paper-scale-{10,20,50,100}.
std::vector<Scenario> builtin_scenarios();
std::optional<Scenario> find_builtin(std::string_view name);

/// Default number of seeds for scaling-study sweeps at this network size.
int default_seed_count(int n);

/// Applies one `key=value` override. Keys: coupling, q_scale, r_scale,
/// t_final, dt, record_every, control_update_every, seed.
void apply_override(Scenario& scenario, std::string_view assignment);

constexpr int kScenarioFormatVersion = 1;

nlohmann::json to_json(const Scenario& scenario);
Scenario scenario_from_json(const nlohmann::json& doc);
Scenario load_scenario_file(const std::string& path);

nlohmann::json vector_to_json(const Vector& v);
Vector vector_from_json(const nlohmann::json& j);
nlohmann::json matrix_to_json(const Matrix& m);
Matrix matrix_from_json(const nlohmann::json& j);

}  // namespace kuramoto_sdre
