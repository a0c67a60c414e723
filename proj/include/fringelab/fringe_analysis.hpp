#pragma once

#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "fringelab/exact_evolution.hpp"
#include "fringelab/semiclassical.hpp"

namespace fringelab {

/// Evaluates the complex amplitude at an arbitrary phase; used to refine zeros
/// beyond the grid resolution.
using AmplitudeSource = std::function<Complex(double)>;

AmplitudeSource amplitude_source(const Interferometer& engine, const TwoModeConfig& config);

inline constexpr std::size_t kDefaultFringeGridPoints = 4096;

/// Zeros of the realized amplitude inside `interval`, located as sign changes
/// on the trace grid and refined by bisection to 1e-10. Throws NumericalError
/// ("grid too coarse") when sign changes occur in two adjacent cells.
std::vector<double> find_probability_zeros(const AmplitudeTrace& trace, PhaseInterval interval,
                                           const AmplitudeSource& source);

struct FringeWidths {
  std::vector<double> widths;  // consecutive zero gaps
  std::vector<double> j3_exp;  // pi / width, units of hbar
  std::string note;            // set when fewer than two zeros were given
};

FringeWidths fringe_widths_and_j3(std::span<const double> zeros);

/// Closed-form expectations for equal photon numbers (m_psi = m = 0).
struct EqualCasePrediction {
  int photons = 0;
  std::vector<double> minima;  // on (0, pi): 3 pi/(2(N+1)), 7 pi/(2(N+1)), ...
  int total_count = 0;         // minima on (-pi, pi)
  double interior_width = 0.0; // 2 pi / (N+1)
  double edge_width = 0.0;     // 3 pi / (N+1), the peaks at 0 and +-pi
};

/// Throws InvalidArgument unless N is even and at least 2.
EqualCasePrediction equal_case_predictions(int photons);

/// Phases in (0, pi) where the classical J3 equals `j3_value`.
std::vector<double> match_classical_phases(const TwoModeConfig& config, double j3_value,
                                           VectorLength length = VectorLength::Exact);

/// Largest classical J3 over the support (0 when the support is empty).
double classical_j3_maximum(const TwoModeConfig& config, VectorLength length = VectorLength::Exact);

struct FringeMatch {
  PhaseInterval fringe;
  double j3_exp = 0.0;
  std::optional<double> matching_phase;  // classical J3 == j3_exp nearest the center
  double offset = 0.0;                   // matching_phase - center
  bool inside_fringe = false;
  bool exceeds_maximum = false;
};

/// Solves classical J3 == j3_exp for the phase nearest the fringe center
/// (same sign as the center). Flags j3_exp above `j3_maximum` instead.
FringeMatch match_fringe(const TwoModeConfig& config, PhaseInterval fringe, double j3_exp,
                         double j3_maximum, VectorLength length = VectorLength::Exact);

struct FringeReport {
  TwoModeConfig config;
  std::vector<double> zeros;  // inside the classical support
  std::vector<double> widths;
  std::vector<double> j3_exp;
  std::vector<FringeMatch> matches;
  std::vector<PhaseInterval> support;
  std::vector<double> evanescent_zeros;  // excluded from fringe statistics
  double j3_maximum = 0.0;
  std::vector<std::string> notes;
};

FringeReport compare_report(const TwoModeConfig& config, const AmplitudeTrace& trace,
                            const SemiclassicalCurve& curve, const AmplitudeSource& source);

struct FringeAnalysisOptions {
  std::size_t grid_points = kDefaultFringeGridPoints;
  VectorLength length = VectorLength::Exact;
};

/// Exact trace on (0, pi), semiclassical curve, and report in one call.
FringeReport analyze_fringes(const TwoModeConfig& config, FringeAnalysisOptions options = {});

}  // namespace fringelab
