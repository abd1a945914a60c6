#pragma once

#include <filesystem>
#include <ostream>
#include <string>
#include <vector>

#include <json.hpp>

#include "kuramoto_sdre/scenarios.h"
#include "kuramoto_sdre/sim.h"

namespace kuramoto_sdre {

/// Output directory or file could not be written.
class OutputError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// `t,theta_1..theta_N,x_1..x_{N-1},e_1..e_{N-1},u_1..u_N,care_residual,fallback`
std::string trajectory_csv_header(int n);

/// One row per record, 9 significant digits, '\n' line endings.
void write_trajectory_csv(std::ostream& out, const std::vector<TrajectoryRecord>& records, int n);

/// Summary document for one run; `scenario` is the scenario after overrides.
nlohmann::json summary_json(const Scenario& scenario, const ResolvedScenario& resolved,
                            const RunSummary& summary, const Vector& u_ss_oracle,
                            double wall_time_s);

struct Series {
  std::string name;
  std::vector<double> values;
};

/// Line chart with one polyline per series over a shared time axis.
void write_svg_plot(std::ostream& out, const std::string& title, const std::string& y_label,
                    const std::vector<double>& t, const std::vector<Series>& series);

struct OutputBundle {
  std::filesystem::path trajectory_csv;
  std::filesystem::path summary_json;
  std::vector<std::filesystem::path> plots;
};

/// Writes trajectory.csv, summary.json, phase_differences.svg, errors.svg
/// and controls.svg under `dir`, creating it if needed.
OutputBundle write_output_bundle(const std::filesystem::path& dir, const RunResult& result,
                                 const nlohmann::json& summary, int n);

}  // namespace kuramoto_sdre
