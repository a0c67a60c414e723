#include "fringelab/fringe_analysis.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

#include <boost/math/tools/minima.hpp>

#include "fringelab/root_finding.hpp"

namespace fringelab {
namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kNoiseFloor = 1e-10;  // relative to the trace peak
constexpr std::size_t kMatchSamples = 4096;
constexpr double kEndpointProbe = 1e-9;

std::string format_interval(const PhaseInterval& iv) {
  std::ostringstream os;
  os.precision(6);
  os << "[" << iv.lower << ", " << iv.upper << "]";
  return os.str();
}

bool in_mirrored_support(const std::vector<PhaseInterval>& support, double phi) {
  const double a = std::abs(phi);
  return std::any_of(support.begin(), support.end(),
                     [a](const PhaseInterval& iv) { return iv.contains(a); });
}

}  // namespace

AmplitudeSource amplitude_source(const Interferometer& engine, const TwoModeConfig& config) {
  return [&engine, config](double phi) { return engine.amplitude(config.m_psi, config.m, phi); };
}

std::vector<double> find_probability_zeros(const AmplitudeTrace& trace, PhaseInterval interval,
                                           const AmplitudeSource& source) {
  if (trace.realized.size() != trace.grid.size()) {
    throw InvalidArgument("trace is not realized on its grid");
  }
  if (interval.lower < trace.grid.front() || interval.upper > trace.grid.back()) {
    throw InvalidArgument("zero search interval " + format_interval(interval) +
                          " exceeds the trace grid coverage");
  }

  std::vector<double> x, y;
  double peak = 0.0;
  for (std::size_t i = 0; i < trace.grid.size(); ++i) {
    if (!interval.contains(trace.grid[i])) continue;
    x.push_back(trace.grid[i]);
    y.push_back(trace.realized[i]);
    peak = std::max(peak, std::abs(trace.realized[i]));
  }
  const auto brackets = sign_change_brackets(x, y, kNoiseFloor * peak);
  for (std::size_t i = 1; i < brackets.size(); ++i) {
    if (brackets[i - 1].upper == brackets[i].lower && brackets[i].lower != brackets[i].upper) {
      std::ostringstream os;
      os << "grid too coarse: sign changes in adjacent cells near phi = " << brackets[i].lower;
      throw NumericalError(os.str());
    }
  }

  const Complex unit = std::conj(trace.global_phase);
  auto realized = [&](double phi) { return (unit * source(phi)).real(); };
  std::vector<double> zeros;
  zeros.reserve(brackets.size());
  for (const auto& b : brackets) zeros.push_back(refine_root(realized, b.lower, b.upper));
  return zeros;
}

FringeWidths fringe_widths_and_j3(std::span<const double> zeros) {
  FringeWidths out;
  if (zeros.size() < 2) {
    out.note = "fewer than two zeros: no complete fringe";
    return out;
  }
  for (std::size_t i = 1; i < zeros.size(); ++i) {
    const double width = zeros[i] - zeros[i - 1];
    if (!(width > 0.0)) throw InvalidArgument("zeros must be strictly increasing");
    out.widths.push_back(width);
    out.j3_exp.push_back(kPi / width);
  }
  return out;
}

EqualCasePrediction equal_case_predictions(int photons) {
  if (photons < 2 || photons % 2 != 0) {
    throw InvalidArgument("equal-case predictions need even N >= 2, got N = " +
                          std::to_string(photons));
  }
  EqualCasePrediction p;
  p.photons = photons;
  const double n1 = photons + 1.0;
  for (int k = 0;; ++k) {
    const double phi = (4.0 * k + 3.0) * kPi / (2.0 * n1);
    if (phi >= kPi) break;
    p.minima.push_back(phi);
  }
  p.total_count = 2 * static_cast<int>(p.minima.size());
  p.interior_width = 2.0 * kPi / n1;
  p.edge_width = 3.0 * kPi / n1;
  return p;
}

std::vector<double> match_classical_phases(const TwoModeConfig& config, double j3_value,
                                           VectorLength length) {
  const double target = j3_value * j3_value;
  auto f = [&](double phi) { return classical_radicand(config, phi, length) - target; };
  std::vector<double> roots;
  for (const auto& iv : classical_support(config, length)) {
    const double lo = std::max(iv.lower, kEndpointProbe);
    const double hi = std::min(iv.upper, kPi - kEndpointProbe);
    if (!(hi > lo)) continue;
    for (double r : scan_roots(f, lo, hi, kMatchSamples)) roots.push_back(r);
  }
  return roots;
}

double classical_j3_maximum(const TwoModeConfig& config, VectorLength length) {
  double best = 0.0;
  for (const auto& iv : classical_support(config, length)) {
    const double lo = std::max(iv.lower, 0.0);
    const double hi = std::min(iv.upper, kPi - kEndpointProbe);
    const auto [arg, neg] = boost::math::tools::brent_find_minima(
        [&](double phi) { return -classical_radicand(config, phi, length); }, lo, hi, 50);
    (void)arg;
    best = std::max(best, std::sqrt(std::max(0.0, -neg)));
    best = std::max(best, std::sqrt(std::max(0.0, classical_radicand(config, lo, length))));
  }
  return best;
}

FringeMatch match_fringe(const TwoModeConfig& config, PhaseInterval fringe, double j3_exp,
                         double j3_maximum, VectorLength length) {
  FringeMatch match;
  match.fringe = fringe;
  match.j3_exp = j3_exp;
  if (j3_exp > j3_maximum) {
    match.exceeds_maximum = true;
    return match;
  }
  const double center = fringe.center();
  const double sign = center < 0.0 ? -1.0 : 1.0;
  std::optional<double> best;
  for (double r : match_classical_phases(config, j3_exp, length)) {
    const double candidate = sign * r;
    if (!best || std::abs(candidate - center) < std::abs(*best - center)) best = candidate;
  }
  if (best) {
    match.matching_phase = best;
    match.offset = *best - center;
    match.inside_fringe = fringe.contains(*best);
  }
  return match;
}

FringeReport compare_report(const TwoModeConfig& config, const AmplitudeTrace& trace,
                            const SemiclassicalCurve& curve, const AmplitudeSource& source) {
  config.validate();
  FringeReport report;
  report.config = config;
  report.support = curve.support;
  report.j3_maximum = classical_j3_maximum(config, curve.length);

  for (const auto& iv : curve.support) {
    report.notes.push_back("classical support " + format_interval(iv));
  }
  if (curve.support.empty()) report.notes.push_back("empty classical support");

  const PhaseInterval span{trace.grid.front(), trace.grid.back()};
  for (double z : find_probability_zeros(trace, span, source)) {
    if (in_mirrored_support(curve.support, z)) {
      report.zeros.push_back(z);
    } else {
      report.evanescent_zeros.push_back(z);
    }
  }
  if (!report.evanescent_zeros.empty()) {
    report.notes.push_back(std::to_string(report.evanescent_zeros.size()) +
                           " zero(s) in evanescent tails excluded from fringe statistics");
  }

  const FringeWidths fw = fringe_widths_and_j3(report.zeros);
  report.widths = fw.widths;
  report.j3_exp = fw.j3_exp;
  if (!fw.note.empty()) report.notes.push_back(fw.note);

  for (std::size_t k = 0; k < fw.widths.size(); ++k) {
    const FringeMatch match = match_fringe(config, {report.zeros[k], report.zeros[k + 1]},
                                           fw.j3_exp[k], report.j3_maximum, curve.length);
    if (match.exceeds_maximum) {
      std::ostringstream os;
      os.precision(4);
      os << "fringe " << k << ": |J3|exp = " << match.j3_exp
         << " exceeds the classical maximum " << report.j3_maximum;
      report.notes.push_back(os.str());
    } else if (!match.matching_phase) {
      report.notes.push_back("fringe " + std::to_string(k) + ": no classical solution in support");
    }
    report.matches.push_back(match);
  }
  return report;
}

FringeReport analyze_fringes(const TwoModeConfig& config, FringeAnalysisOptions options) {
  config.validate();
  const Interferometer engine(config.photons);
  const PhaseGrid grid = PhaseGrid::cell_centers(0.0, kPi, options.grid_points);
  const AmplitudeTrace trace = amplitude_trace(engine, config, grid);
  ApproximationOptions approx;
  approx.length = options.length;
  const SemiclassicalCurve curve = SemiclassicalModel(config, approx).curve(grid);
  return compare_report(config, trace, curve, amplitude_source(engine, config));
}

}  // namespace fringelab
