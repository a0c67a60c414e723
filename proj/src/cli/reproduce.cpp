#include <cmath>
#include <limits>
#include <numbers>
#include <ostream>
#include <sstream>

#include <json.hpp>

#include "fringelab/cli.hpp"
#include "fringelab/fringe_analysis.hpp"
#include "fringelab/reference_values.hpp"
#include "fringelab/semiclassical.hpp"

namespace fringelab::cli {
namespace {

using Json = nlohmann::ordered_json;

constexpr double kPi = std::numbers::pi;
constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();
constexpr std::size_t kFigurePoints = 4096;

PhaseGrid figure_grid() { return PhaseGrid::cell_centers(-kPi, kPi, kFigurePoints); }

std::vector<double> phases(const PhaseGrid& grid) { return {grid.values().begin(), grid.values().end()}; }

// Exact amplitude against 2 A cos S with the closed-form equal-case action.
Table amplitude_figure(int photons) {
  const TwoModeConfig config = TwoModeConfig::from_differences(photons, 0, 0);
  const PhaseGrid grid = figure_grid();
  ApproximationOptions options;
  options.length = VectorLength::NPlusOne;
  options.anchor = ActionAnchor::EqualCaseParity;
  const SemiclassicalModel model(config, options);
  const AmplitudeTrace trace = amplitude_trace(config, grid);
  const Complex unit = std::conj(model.reference_phase());

  std::vector<double> exact, approx;
  for (std::size_t i = 0; i < grid.size(); ++i) {
    exact.push_back((unit * trace.amplitudes[i]).real());
    approx.push_back(model.is_valid(grid[i]) ? model.approx_amplitude(grid[i]) : kNaN);
  }
  Table table;
  table.add_column("phi", phases(grid));
  table.add_column("exact_amplitude", exact);
  table.add_column("approx_amplitude", approx);
  return table;
}

Table rate_figure(int photons, int input_diff, int output_diff) {
  const TwoModeConfig config = TwoModeConfig::from_differences(photons, input_diff, output_diff);
  const PhaseGrid grid = figure_grid();
  const AmplitudeTrace trace = amplitude_trace(config, grid);
  const SemiclassicalCurve curve = semiclassical_curve(config, grid);
  std::vector<double> probability, envelope4, in_support;
  for (std::size_t i = 0; i < grid.size(); ++i) {
    probability.push_back(std::norm(trace.amplitudes[i]));
    envelope4.push_back(4.0 * curve.envelope[i] * curve.envelope[i]);
    in_support.push_back(curve.evanescent[i] || !std::isfinite(curve.j3_classical[i]) ? 0.0 : 1.0);
  }
  Table table;
  table.add_column("phi", phases(grid));
  table.add_column("probability", probability);
  table.add_column("envelope", envelope4);
  table.add_column("in_support", in_support);
  return table;
}

// |J3| relative to (N+1)/2 for N = 8 and 16 with 2m = N/2 (and 2m_psi = N/2
// when `both`).
Table j3_figure(bool both) {
  const PhaseGrid grid = figure_grid();
  Table table;
  table.add_column("phi", phases(grid));
  for (int photons : {8, 16}) {
    const TwoModeConfig config =
        TwoModeConfig::from_differences(photons, both ? photons / 2 : 0, photons / 2);
    std::vector<double> relative;
    for (double phi : grid.values()) {
      const ClassicalJ3 j3 = classical_j3(config, phi);
      relative.push_back(j3.evanescent ? kNaN : j3.magnitude / (0.5 * (photons + 1.0)));
    }
    table.add_column("j3_relative_n" + std::to_string(photons), relative);
  }
  return table;
}

Json summary_json(const ReferenceSummary& summary) {
  Json j;
  j["schema_version"] = 1;
  j["all_pass"] = summary.all_pass;
  Json checks = Json::array();
  for (const auto& c : summary.checks) {
    Json entry;
    entry["group"] = c.group;
    entry["name"] = c.name;
    entry["expected"] = c.expected;
    entry["measured"] = std::isfinite(c.measured) ? Json(c.measured) : Json(nullptr);
    entry["tolerance"] = c.tolerance;
    entry["pass"] = c.pass;
    checks.push_back(entry);
  }
  j["checks"] = checks;
  Json reports = Json::array();
  for (const auto& r : summary.reports) {
    Json entry;
    entry["photons"] = r.config.photons;
    entry["input_diff"] = r.config.m_psi.twice();
    entry["output_diff"] = r.config.m.twice();
    entry["zeros"] = r.zeros;
    entry["widths"] = r.widths;
    entry["j3_exp"] = r.j3_exp;
    entry["j3_maximum"] = r.j3_maximum;
    entry["evanescent_zeros"] = r.evanescent_zeros;
    Json matches = Json::array();
    for (const auto& m : r.matches) {
      matches.push_back({{"center", m.fringe.center()},
                         {"j3_exp", m.j3_exp},
                         {"matching_phase", m.matching_phase ? Json(*m.matching_phase) : Json(nullptr)},
                         {"exceeds_maximum", m.exceeds_maximum}});
    }
    entry["matches"] = matches;
    entry["notes"] = r.notes;
    reports.push_back(entry);
  }
  j["reports"] = reports;
  return j;
}

}  // namespace

bool reproduce_paper(const std::filesystem::path& directory, std::ostream& log) {
  std::filesystem::create_directories(directory);
  struct Figure {
    const char* name;
    Table table;
  };
  const Figure figures[] = {
      {"fig1a", amplitude_figure(8)},       {"fig1b", amplitude_figure(16)},
      {"fig2a", rate_figure(8, 0, 0)},      {"fig2b", rate_figure(16, 0, 0)},
      {"fig3", j3_figure(false)},           {"fig4a", rate_figure(8, 0, 4)},
      {"fig4b", rate_figure(16, 0, 8)},     {"fig5", j3_figure(true)},
      {"fig6a", rate_figure(8, 4, 4)},      {"fig6b", rate_figure(16, 8, 8)},
  };
  for (const auto& fig : figures) {
    std::ostringstream os;
    write_csv(os, fig.table);
    const auto path = directory / (std::string(fig.name) + ".csv");
    write_file(path, os.str());
    log << "wrote " << path.string() << '\n';
  }

  const ReferenceSummary summary = evaluate_reference_values();
  write_file(directory / "summary.json", summary_json(summary).dump(2) + "\n");
  for (const auto& c : summary.checks) {
    if (!c.pass) {
      log << "FAIL " << c.group << " " << c.name << ": expected " << format_number(c.expected)
          << ", measured " << format_number(c.measured) << '\n';
    }
  }
  return summary.all_pass;
}

}  // namespace fringelab::cli
