#include "kuramoto_sdre/scenarios.h"

#include <charconv>
#include <cmath>
#include <fstream>
#include <numbers>

namespace kuramoto_sdre {
namespace {

using nlohmann::json;

constexpr double kPi = std::numbers::pi;

bool same_vector(const Vector& a, const Vector& b) {
  return a.size() == b.size() && (a.array() == b.array()).all();
}

template <typename Variant>
bool same_spec(const Variant& a, const Variant& b) {
  if (a.index() != b.index()) return false;
  return std::visit(
      [&](const auto& lhs) {
        using T = std::decay_t<decltype(lhs)>;
        const auto& rhs = std::get<T>(b);
        if constexpr (std::is_same_v<T, Vector>) {
          return same_vector(lhs, rhs);
        } else {
          return lhs == rhs;
        }
      },
      a);
}

Vector draw(const SamplerSpec& spec, Eigen::Index count, Rng& rng) {
  Vector v(count);
  for (Eigen::Index i = 0; i < count; ++i) v(i) = sample(spec, rng);
  return v;
}

Vector resolve_vector(const VectorSpec& spec, Eigen::Index count, Rng& rng) {
  if (const auto* explicit_values = std::get_if<Vector>(&spec)) return *explicit_values;
  return draw(std::get<SamplerSpec>(spec), count, rng);
}

json sampler_to_json(const SamplerSpec& s) {
  return json{{"uniform", {{"low", s.low}, {"high", s.high}}}};
}

SamplerSpec sampler_from_json(const json& j) {
  const json& u = j.at("uniform");
  SamplerSpec s{u.at("low").get<double>(), u.at("high").get<double>()};
  s.validate();
  return s;
}

json vector_spec_to_json(const VectorSpec& spec) {
  if (const auto* v = std::get_if<Vector>(&spec)) return vector_to_json(*v);
  return sampler_to_json(std::get<SamplerSpec>(spec));
}

VectorSpec vector_spec_from_json(const json& j) {
  if (j.is_array()) return vector_from_json(j);
  return sampler_from_json(j);
}

json phase_spec_to_json(const PhaseSpec& spec) {
  if (const auto* v = std::get_if<Vector>(&spec)) return vector_to_json(*v);
  if (const auto* s = std::get_if<SamplerSpec>(&spec)) return sampler_to_json(*s);
  return json{{"around_target", sampler_to_json(std::get<AroundTargetSpec>(spec).perturbation)}};
}

PhaseSpec phase_spec_from_json(const json& j) {
  if (j.is_array()) return vector_from_json(j);
  if (j.contains("around_target")) return AroundTargetSpec{sampler_from_json(j.at("around_target"))};
  return sampler_from_json(j);
}

Scenario scale_scenario(int n) {
  Scenario s;
  s.name = "paper-scale-" + std::to_string(n);
  s.n = n;
  s.coupling = 1.0;
  s.omega = SamplerSpec{0.0, kPi / 2.0};
  s.x_des = SamplerSpec{-kPi / 4.0, kPi / 4.0};
  if (n <= 20) {
    s.theta0 = SamplerSpec{-kPi, kPi};
  } else {
    s.theta0 = AroundTargetSpec{SamplerSpec{-0.1, 0.1}};
  }
  s.q_scale = 1000.0;
  s.r_scale = 1.0;
  s.seed = 1;
  return s;
}

template <typename T>
T parse_number(std::string_view key, std::string_view text) {
  T value{};
  const auto* end = text.data() + text.size();
  const auto [ptr, ec] = std::from_chars(text.data(), end, value);
  if (ec != std::errc() || ptr != end) {
    throw ScenarioError("override " + std::string(key) + ": cannot parse '" + std::string(text) +
                        "'");
  }
  return value;
}

}  // namespace

std::uint64_t stream_seed(std::uint64_t seed, std::string_view name) {
  std::uint64_t hash = 0xcbf29ce484222325ULL;
  for (const char c : name) {
    hash ^= static_cast<unsigned char>(c);
    hash *= 0x100000001b3ULL;
  }
  return seed ^ hash;
}

void SamplerSpec::validate() const {
  if (!std::isfinite(low) || !std::isfinite(high) || !(low < high)) {
    throw ScenarioError("sampler bounds must be finite with low < high");
  }
}

double sample(const SamplerSpec& spec, Rng& rng) {
  return spec.low + (spec.high - spec.low) * rng.uniform01();
}

bool Scenario::uses_sampler() const {
  return std::holds_alternative<SamplerSpec>(omega) || std::holds_alternative<SamplerSpec>(x_des) ||
         !std::holds_alternative<Vector>(theta0);
}

void Scenario::validate() const {
  if (name.empty()) throw ScenarioError("scenario name is empty");
  if (n < 2) throw ScenarioError("scenario needs n >= 2");
  if (!(coupling > 0.0) || !std::isfinite(coupling)) throw ScenarioError("coupling must be > 0");
  if (!(q_scale >= 0.0) || !std::isfinite(q_scale)) throw ScenarioError("q_scale must be >= 0");
  if (!(r_scale > 0.0) || !std::isfinite(r_scale)) throw ScenarioError("r_scale must be > 0");

  auto check_length = [](const auto& spec, Eigen::Index expected, const char* what) {
    if (const auto* v = std::get_if<Vector>(&spec)) {
      if (v->size() != expected) {
        throw ScenarioError(std::string(what) + " has length " + std::to_string(v->size()) +
                            ", expected " + std::to_string(expected));
      }
      if (!v->allFinite()) throw ScenarioError(std::string(what) + " has non-finite entries");
    }
  };
  check_length(omega, n, "omega");
  check_length(x_des, n - 1, "x_des");
  check_length(theta0, n, "theta0");
  if (const auto* s = std::get_if<SamplerSpec>(&omega)) s->validate();
  if (const auto* s = std::get_if<SamplerSpec>(&x_des)) s->validate();
  if (const auto* s = std::get_if<SamplerSpec>(&theta0)) s->validate();
  if (const auto* s = std::get_if<AroundTargetSpec>(&theta0)) s->perturbation.validate();

  if (uses_sampler() != seed.has_value()) {
    throw ScenarioError(uses_sampler() ? "scenario uses samplers but has no seed"
                                       : "seed given for a scenario without samplers");
  }
  try {
    sim.validate();
  } catch (const std::invalid_argument& ex) {
    throw ScenarioError(ex.what());
  }
}

bool operator==(const Scenario& a, const Scenario& b) {
  return a.name == b.name && a.n == b.n && a.coupling == b.coupling &&
         same_spec(a.omega, b.omega) && same_spec(a.x_des, b.x_des) &&
         same_spec(a.theta0, b.theta0) && a.q_scale == b.q_scale && a.r_scale == b.r_scale &&
         a.sim.t_final == b.sim.t_final && a.sim.dt == b.sim.dt &&
         a.sim.record_every == b.sim.record_every &&
         a.sim.control_update_every == b.sim.control_update_every && a.seed == b.seed;
}

ResolvedScenario resolve(const Scenario& scenario) {
  scenario.validate();
  Rng rng(stream_seed(scenario.seed.value_or(0), scenario.name));
  const Eigen::Index n = scenario.n;

  Vector omega = resolve_vector(scenario.omega, n, rng);
  DesiredConfig cfg(resolve_vector(scenario.x_des, n - 1, rng));
  Vector theta0;
  if (const auto* v = std::get_if<Vector>(&scenario.theta0)) {
    theta0 = *v;
  } else if (const auto* s = std::get_if<SamplerSpec>(&scenario.theta0)) {
    theta0 = draw(*s, n, rng);
  } else {
    const auto& around = std::get<AroundTargetSpec>(scenario.theta0);
    theta0 = reconstruct_phases(ErrorState(draw(around.perturbation, n - 1, rng)), cfg).theta();
  }

  return {NetworkParams(scenario.coupling, std::move(omega)), std::move(cfg),
          PhaseState(std::move(theta0)),
          SdreWeights::scaled_identity(scenario.n, scenario.q_scale, scenario.r_scale),
          scenario.sim, scenario.seed};
}

std::vector<Scenario> builtin_scenarios() {
  std::vector<Scenario> list;

  Scenario four;
  four.name = "paper-4osc";
  four.n = 4;
  four.coupling = 1.0;
  four.omega = Vector{{1.30, 1.39, 0.44, 1.28}};
  four.x_des = Vector{{-0.74, 0.27, 0.15}};
  four.theta0 = Vector{{0.60, 0.86, 0.84, -0.13}};
  four.q_scale = 1000.0;
  four.r_scale = 1.0;
  list.push_back(four);

  Scenario dispersion = four;
  dispersion.name = "paper-dispersion";
  dispersion.omega = Vector{{0.0, kPi / 3.0, 2.0 * kPi / 3.0, kPi}};
  dispersion.x_des = Vector{{-0.7, 1.2, -0.5}};
  dispersion.theta0 = Vector{{2.75, -0.96, 1.97, 2.10}};
  list.push_back(dispersion);

  Scenario lowq = dispersion;
  lowq.name = "paper-lowq";
  lowq.q_scale = 0.001;
  list.push_back(lowq);

  for (const int n : {10, 20, 50, 100}) list.push_back(scale_scenario(n));
  return list;
}

std::optional<Scenario> find_builtin(std::string_view name) {
  for (auto& s : builtin_scenarios()) {
    if (s.name == name) return s;
  }
  return std::nullopt;
}

int default_seed_count(int n) { return n <= 20 ? 10 : 3; }

void apply_override(Scenario& scenario, std::string_view assignment) {
  const auto eq = assignment.find('=');
  if (eq == std::string_view::npos || eq == 0) {
    throw ScenarioError("override must look like key=value: '" + std::string(assignment) + "'");
  }
  const std::string_view key = assignment.substr(0, eq);
  const std::string_view value = assignment.substr(eq + 1);

  if (key == "coupling") {
    scenario.coupling = parse_number<double>(key, value);
  } else if (key == "q_scale") {
    scenario.q_scale = parse_number<double>(key, value);
  } else if (key == "r_scale") {
    scenario.r_scale = parse_number<double>(key, value);
  } else if (key == "t_final") {
    scenario.sim.t_final = parse_number<double>(key, value);
  } else if (key == "dt") {
    scenario.sim.dt = parse_number<double>(key, value);
  } else if (key == "record_every") {
    scenario.sim.record_every = parse_number<int>(key, value);
  } else if (key == "control_update_every") {
    scenario.sim.control_update_every = parse_number<int>(key, value);
  } else if (key == "seed") {
    scenario.seed = parse_number<std::uint64_t>(key, value);
  } else {
    throw ScenarioError("unknown override key '" + std::string(key) + "'");
  }
}

json vector_to_json(const Vector& v) {
  json j = json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) j.push_back(v(i));
  return j;
}

Vector vector_from_json(const json& j) {
  if (!j.is_array()) throw ScenarioError("expected an array of numbers");
  Vector v(static_cast<Eigen::Index>(j.size()));
  for (std::size_t i = 0; i < j.size(); ++i) {
    if (!j[i].is_number()) throw ScenarioError("expected an array of numbers");
    v(static_cast<Eigen::Index>(i)) = j[i].get<double>();
  }
  return v;
}

json matrix_to_json(const Matrix& m) {
  json rows = json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) rows.push_back(vector_to_json(m.row(i).transpose()));
  return rows;
}

Matrix matrix_from_json(const json& j) {
  if (!j.is_array() || j.empty()) throw ScenarioError("expected a non-empty array of rows");
  const std::size_t cols = j[0].is_array() ? j[0].size() : 0;
  if (cols == 0) throw ScenarioError("matrix rows must be non-empty arrays");
  Matrix m(static_cast<Eigen::Index>(j.size()), static_cast<Eigen::Index>(cols));
  for (std::size_t i = 0; i < j.size(); ++i) {
    const Vector row = vector_from_json(j[i]);
    if (static_cast<std::size_t>(row.size()) != cols) throw ScenarioError("ragged matrix rows");
    m.row(static_cast<Eigen::Index>(i)) = row.transpose();
  }
  return m;
}

json to_json(const Scenario& s) {
  json j{{"version", kScenarioFormatVersion},
         {"name", s.name},
         {"n", s.n},
         {"coupling", s.coupling},
         {"omega", vector_spec_to_json(s.omega)},
         {"x_des", vector_spec_to_json(s.x_des)},
         {"theta0", phase_spec_to_json(s.theta0)},
         {"q_scale", s.q_scale},
         {"r_scale", s.r_scale},
         {"sim",
          {{"t_final", s.sim.t_final},
           {"dt", s.sim.dt},
           {"record_every", s.sim.record_every},
           {"control_update_every", s.sim.control_update_every}}}};
  if (s.seed) j["seed"] = *s.seed;
  return j;
}

Scenario scenario_from_json(const json& doc) {
  try {
    if (!doc.is_object()) throw ScenarioError("scenario document must be a JSON object");
    if (doc.value("version", 0) != kScenarioFormatVersion) {
      throw ScenarioError("unsupported scenario version (expected 1)");
    }
    Scenario s;
    s.name = doc.at("name").get<std::string>();
    s.n = doc.at("n").get<int>();
    s.coupling = doc.value("coupling", 1.0);
    s.omega = vector_spec_from_json(doc.at("omega"));
    s.x_des = vector_spec_from_json(doc.at("x_des"));
    s.theta0 = phase_spec_from_json(doc.at("theta0"));
    s.q_scale = doc.value("q_scale", 1000.0);
    s.r_scale = doc.value("r_scale", 1.0);
    if (doc.contains("sim")) {
      const json& sim = doc.at("sim");
      s.sim.t_final = sim.value("t_final", s.sim.t_final);
      s.sim.dt = sim.value("dt", s.sim.dt);
      s.sim.record_every = sim.value("record_every", s.sim.record_every);
      s.sim.control_update_every = sim.value("control_update_every", s.sim.control_update_every);
    }
    if (doc.contains("seed")) s.seed = doc.at("seed").get<std::uint64_t>();
    s.validate();
    return s;
  } catch (const json::exception& ex) {
    throw ScenarioError(std::string("scenario JSON: ") + ex.what());
  }
}

Scenario load_scenario_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ScenarioError("cannot open scenario file " + path);
  json doc;
  try {
    doc = json::parse(in);
  } catch (const json::exception& ex) {
    throw ScenarioError(path + ": " + ex.what());
  }
  return scenario_from_json(doc);
}

}  // namespace kuramoto_sdre
