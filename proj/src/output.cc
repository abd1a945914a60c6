#include "kuramoto_sdre/output.h"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

namespace kuramoto_sdre {
namespace {

std::string format_g9(double value) {
  std::array<char, 32> buf{};
  std::snprintf(buf.data(), buf.size(), "%.9g", value);
  return buf.data();
}

void append_columns(std::string& header, const char* prefix, int count) {
  for (int i = 1; i <= count; ++i) {
    header += ',';
    header += prefix;
    header += std::to_string(i);
  }
}

constexpr std::array<const char*, 10> kPalette = {"#1f77b4", "#ff7f0e", "#2ca02c", "#d62728",
                                                  "#9467bd", "#8c564b", "#e377c2", "#7f7f7f",
                                                  "#bcbd22", "#17becf"};

std::vector<double> column(const std::vector<TrajectoryRecord>& records,
                           const Vector TrajectoryRecord::*field, Eigen::Index index) {
  std::vector<double> values;
  values.reserve(records.size());
  for (const auto& r : records) values.push_back((r.*field)(index));
  return values;
}

std::vector<Series> series_of(const std::vector<TrajectoryRecord>& records,
                              const Vector TrajectoryRecord::*field, const std::string& prefix,
                              int count) {
  std::vector<Series> out;
  for (int i = 0; i < count; ++i) {
    out.push_back({prefix + std::to_string(i + 1), column(records, field, i)});
  }
  return out;
}

void write_file(const std::filesystem::path& path, const std::string& contents) {
  std::ofstream out(path, std::ios::binary);
  out << contents;
  out.close();
  if (!out) throw OutputError("cannot write " + path.string());
}

}  // namespace

std::string trajectory_csv_header(int n) {
  std::string header = "t";
  append_columns(header, "theta_", n);
  append_columns(header, "x_", n - 1);
  append_columns(header, "e_", n - 1);
  append_columns(header, "u_", n);
  header += ",care_residual,fallback";
  return header;
}

void write_trajectory_csv(std::ostream& out, const std::vector<TrajectoryRecord>& records, int n) {
  out << trajectory_csv_header(n) << '\n';
  std::string line;
  for (const auto& r : records) {
    line = format_g9(r.t);
    for (const Vector* v : {&r.theta, &r.x, &r.e, &r.u}) {
      for (Eigen::Index i = 0; i < v->size(); ++i) {
        line += ',';
        line += format_g9((*v)(i));
      }
    }
    line += ',';
    line += format_g9(r.care_residual);
    line += r.fallback_used ? ",1" : ",0";
    out << line << '\n';
  }
}

nlohmann::json summary_json(const Scenario& scenario, const ResolvedScenario& resolved,
                            const RunSummary& summary, const Vector& u_ss_oracle,
                            double wall_time_s) {
  nlohmann::json j;
  j["version"] = kScenarioFormatVersion;
  j["scenario"] = to_json(scenario);
  j["seed"] = resolved.seed ? nlohmann::json(*resolved.seed) : nlohmann::json(nullptr);
  j["inputs"] = {{"omega", vector_to_json(resolved.params.omega())},
                 {"x_des", vector_to_json(resolved.cfg.values())},
                 {"theta0", vector_to_json(resolved.theta0.theta())}};
  j["final_e_inf_norm"] = summary.final_e_inf_norm;
  j["final_u"] = vector_to_json(summary.final_u);
  j["u_ss_oracle"] = vector_to_json(u_ss_oracle);
  j["peak_u_inf_norm"] = summary.peak_u_inf_norm;
  j["steps"] = summary.steps;
  j["any_fallback"] = summary.any_fallback;
  j["fallback_steps"] = summary.fallback_steps;
  j["negative_u_steps"] = summary.negative_u_steps;
  j["controllability_deficient_steps"] = summary.controllability_deficient_steps;
  j["wall_time_s"] = wall_time_s;
  return j;
}

void write_svg_plot(std::ostream& out, const std::string& title, const std::string& y_label,
                    const std::vector<double>& t, const std::vector<Series>& series) {
  constexpr double kWidth = 800, kHeight = 450;
  constexpr double kLeft = 70, kRight = 140, kTop = 40, kBottom = 50;
  const double plot_w = kWidth - kLeft - kRight;
  const double plot_h = kHeight - kTop - kBottom;

  double t_min = t.empty() ? 0.0 : t.front();
  double t_max = t.empty() ? 1.0 : t.back();
  if (t_max <= t_min) t_max = t_min + 1.0;
  double y_min = 0.0, y_max = 0.0;
  bool first = true;
  for (const auto& s : series) {
    for (const double v : s.values) {
      if (first) {
        y_min = y_max = v;
        first = false;
      }
      y_min = std::min(y_min, v);
      y_max = std::max(y_max, v);
    }
  }
  if (y_max - y_min < 1e-12) {
    y_min -= 1.0;
    y_max += 1.0;
  }
  auto px = [&](double x) { return kLeft + (x - t_min) / (t_max - t_min) * plot_w; };
  auto py = [&](double y) { return kTop + (y_max - y) / (y_max - y_min) * plot_h; };

  out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << kWidth << "\" height=\""
      << kHeight << "\" viewBox=\"0 0 " << kWidth << ' ' << kHeight << "\">\n";
  out << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  out << "<text x=\"" << kWidth / 2 << "\" y=\"24\" text-anchor=\"middle\" font-family=\"sans-serif\""
      << " font-size=\"16\">" << title << "</text>\n";
  out << "<rect x=\"" << kLeft << "\" y=\"" << kTop << "\" width=\"" << plot_w << "\" height=\""
      << plot_h << "\" fill=\"none\" stroke=\"black\"/>\n";

  for (int k = 0; k <= 4; ++k) {
    const double fy = y_min + (y_max - y_min) * k / 4.0;
    const double fx = t_min + (t_max - t_min) * k / 4.0;
    out << "<text x=\"" << kLeft - 6 << "\" y=\"" << py(fy) + 4
        << "\" text-anchor=\"end\" font-family=\"sans-serif\" font-size=\"11\">" << format_g9(fy)
        << "</text>\n";
    out << "<text x=\"" << px(fx) << "\" y=\"" << kTop + plot_h + 16
        << "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"11\">"
        << format_g9(fx) << "</text>\n";
  }
  out << "<text x=\"" << kLeft + plot_w / 2 << "\" y=\"" << kHeight - 10
      << "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"12\">t [s]</text>\n";
  out << "<text x=\"16\" y=\"" << kTop + plot_h / 2
      << "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"12\" transform=\"rotate(-90 16 "
      << kTop + plot_h / 2 << ")\">" << y_label << "</text>\n";

  constexpr std::size_t kMaxLegend = 12;
  for (std::size_t s = 0; s < series.size(); ++s) {
    const char* color = kPalette[s % kPalette.size()];
    out << "<polyline fill=\"none\" stroke=\"" << color << "\" stroke-width=\"1.5\" points=\"";
    const std::size_t count = std::min(series[s].values.size(), t.size());
    for (std::size_t i = 0; i < count; ++i) {
      out << format_g9(px(t[i])) << ',' << format_g9(py(series[s].values[i]));
      if (i + 1 < count) out << ' ';
    }
    out << "\"/>\n";
    if (s < kMaxLegend) {
      const double ly = kTop + 14.0 * static_cast<double>(s) + 8.0;
      out << "<line x1=\"" << kLeft + plot_w + 10 << "\" y1=\"" << ly << "\" x2=\""
          << kLeft + plot_w + 30 << "\" y2=\"" << ly << "\" stroke=\"" << color
          << "\" stroke-width=\"2\"/>\n";
      out << "<text x=\"" << kLeft + plot_w + 34 << "\" y=\"" << ly + 4
          << "\" font-family=\"sans-serif\" font-size=\"11\">" << series[s].name << "</text>\n";
    } else if (s == kMaxLegend) {
      out << "<text x=\"" << kLeft + plot_w + 10 << "\" y=\"" << kTop + 14.0 * kMaxLegend + 12
          << "\" font-family=\"sans-serif\" font-size=\"11\">+" << series.size() - kMaxLegend
          << " more</text>\n";
    }
  }
  out << "</svg>\n";
}

OutputBundle write_output_bundle(const std::filesystem::path& dir, const RunResult& result,
                                 const nlohmann::json& summary, int n) {
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec || !std::filesystem::is_directory(dir)) {
    throw OutputError("cannot create output directory " + dir.string());
  }

  OutputBundle bundle;
  bundle.trajectory_csv = dir / "trajectory.csv";
  bundle.summary_json = dir / "summary.json";

  std::ostringstream csv;
  write_trajectory_csv(csv, result.records, n);
  write_file(bundle.trajectory_csv, csv.str());
  write_file(bundle.summary_json, summary.dump(2) + "\n");

  std::vector<double> t;
  for (const auto& r : result.records) t.push_back(r.t);

  struct PlotSpec {
    const char* file;
    const char* title;
    const char* y_label;
    const Vector TrajectoryRecord::*field;
    const char* prefix;
    int count;
  };
  const std::array<PlotSpec, 3> plots = {{
      {"phase_differences.svg", "Phase differences X_i(t)", "X_i [rad]", &TrajectoryRecord::x,
       "X_", n - 1},
      {"errors.svg", "Errors e_i(t)", "e_i [rad]", &TrajectoryRecord::e, "e_", n - 1},
      {"controls.svg", "Control inputs u_i(t)", "u_i", &TrajectoryRecord::u, "u_", n},
  }};
  for (const auto& p : plots) {
    std::ostringstream svg;
    write_svg_plot(svg, p.title, p.y_label, t, series_of(result.records, p.field, p.prefix, p.count));
    const auto path = dir / p.file;
    write_file(path, svg.str());
    bundle.plots.push_back(path);
  }
  return bundle;
}

}  // namespace kuramoto_sdre
