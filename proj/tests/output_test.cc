#include "kuramoto_sdre/output.h"

#include <filesystem>
#include <fstream>
#include <sstream>

#include <gtest/gtest.h>

#include "kuramoto_sdre/runner.h"

namespace kuramoto_sdre {
namespace {

std::vector<std::string> split(const std::string& line, char sep) {
  std::vector<std::string> out;
  std::stringstream ss(line);
  std::string item;
  while (std::getline(ss, item, sep)) out.push_back(item);
  return out;
}

TEST(TrajectoryCsv, Header) {
  EXPECT_EQ(trajectory_csv_header(3),
            "t,theta_1,theta_2,theta_3,x_1,x_2,e_1,e_2,u_1,u_2,u_3,care_residual,fallback");
}

TEST(TrajectoryCsv, RowsAndFormat) {
  const ScenarioRun run = execute(*find_builtin("paper-4osc"));
  std::ostringstream out;
  write_trajectory_csv(out, run.result.records, 4);
  const std::string text = out.str();
  EXPECT_EQ(text.find('\r'), std::string::npos);

  std::istringstream in(text);
  std::string line;
  std::getline(in, line);
  EXPECT_EQ(line, trajectory_csv_header(4));
  int rows = 0;
  while (std::getline(in, line)) {
    const auto cells = split(line, ',');
    EXPECT_EQ(cells.size(), 1u + 4 + 3 + 3 + 4 + 2);
    EXPECT_TRUE(cells.back() == "0" || cells.back() == "1");
    ++rows;
  }
  EXPECT_EQ(rows, 201);

  // Second row is t = 0.01 with θ₁ printed to 9 significant digits.
  std::istringstream again(text);
  std::getline(again, line);
  std::getline(again, line);
  const auto first = split(line, ',');
  EXPECT_EQ(first[0], "0");
  EXPECT_EQ(first[1], "0.6");
}

TEST(TrajectoryCsv, ByteIdenticalOnRerun) {
  Scenario s = *find_builtin("paper-scale-10");
  std::ostringstream a, b;
  write_trajectory_csv(a, execute(s).result.records, 10);
  write_trajectory_csv(b, execute(s).result.records, 10);
  EXPECT_EQ(a.str(), b.str());
}

TEST(Summary, Fields) {
  const ScenarioRun run = execute(*find_builtin("paper-scale-10"));
  const auto j = summary_json(run.scenario, run.resolved, run.result.summary, run.u_ss_oracle,
                              run.wall_time_s);
  for (const char* key : {"version", "scenario", "seed", "final_e_inf_norm", "final_u",
                          "u_ss_oracle", "peak_u_inf_norm", "any_fallback", "wall_time_s"}) {
    EXPECT_TRUE(j.contains(key)) << key;
  }
  EXPECT_EQ(j["seed"], 1);
  EXPECT_EQ(j["final_u"].size(), 10u);
  EXPECT_EQ(scenario_from_json(j["scenario"]), run.scenario);
}

TEST(Svg, Polylines) {
  std::ostringstream out;
  write_svg_plot(out, "demo", "y", {0.0, 1.0, 2.0}, {{"a", {0.0, 1.0, 0.5}}, {"b", {2.0, 2.0, 2.0}}});
  const std::string svg = out.str();
  EXPECT_EQ(svg.rfind("<svg", 0), 0u);
  EXPECT_NE(svg.find("</svg>"), std::string::npos);
  std::size_t count = 0;
  for (std::size_t pos = svg.find("<polyline"); pos != std::string::npos;
       pos = svg.find("<polyline", pos + 1)) {
    ++count;
  }
  EXPECT_EQ(count, 2u);
  EXPECT_NE(svg.find(">a</text>"), std::string::npos);
}

TEST(OutputBundle, WritesAllFiles) {
  const auto dir = std::filesystem::temp_directory_path() / "kuramoto_sdre_bundle_test";
  std::filesystem::remove_all(dir);
  const ScenarioRun run = execute(*find_builtin("paper-4osc"));
  const auto summary = summary_json(run.scenario, run.resolved, run.result.summary, run.u_ss_oracle,
                                    run.wall_time_s);
  const OutputBundle bundle = write_output_bundle(dir, run.result, summary, 4);
  ASSERT_EQ(bundle.plots.size(), 3u);
  for (const auto& p : {bundle.trajectory_csv, bundle.summary_json, bundle.plots[0],
                        bundle.plots[1], bundle.plots[2]}) {
    ASSERT_TRUE(std::filesystem::exists(p)) << p;
    EXPECT_GT(std::filesystem::file_size(p), 0u) << p;
  }
  EXPECT_EQ(bundle.plots[0].filename(), "phase_differences.svg");
  EXPECT_EQ(bundle.plots[1].filename(), "errors.svg");
  EXPECT_EQ(bundle.plots[2].filename(), "controls.svg");
  std::filesystem::remove_all(dir);
}

TEST(OutputBundle, UnwritableDirectory) {
  const auto file = std::filesystem::temp_directory_path() / "kuramoto_sdre_not_a_dir";
  std::ofstream(file) << "x";
  const ScenarioRun run = execute(*find_builtin("paper-4osc"));
  EXPECT_THROW(write_output_bundle(file / "sub", run.result, nlohmann::json::object(), 4),
               OutputError);
  std::filesystem::remove(file);
}

}  // namespace
}  // namespace kuramoto_sdre
