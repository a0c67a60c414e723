#pragma once

#include <cstdint>
#include <numbers>
#include <vector>

#include "fringelab/exact_evolution.hpp"
#include "fringelab/types.hpp"

namespace fringelab {

/// Classical J-vector length used in the semiclassical formulas.
///  - Exact:    L^2 = N(N+2)/4, the Casimir value.
///  - NPlusOne: L = (N+1)/2, the shorthand used for the closed-form equal-case
///              action and the random-phase model.
enum class VectorLength { Exact, NPlusOne };

double vector_length_squared(int photons, VectorLength length);

/// Uniform random-phase density d(rho)/d(theta) = 1/(2 pi), hbar = 1.
inline constexpr double kRho0 = 1.0 / (2.0 * std::numbers::pi);

/// Classical path-intensity difference. `magnitude` is sqrt(|radicand|); when
/// the radicand is negative the point is evanescent and `magnitude` is the
/// imaginary part.
struct ClassicalJ3 {
  double magnitude = 0.0;
  bool evanescent = false;
};

/// L^2 - (m_psi^2 - 2 cos(phi) m_psi m + m^2) / sin^2(phi), evaluated in a
/// cancellation-free form. The removable limits at sin(phi) = 0 (m_psi = m at
/// phi = 0, m_psi = -m at phi = +-pi) are returned; other sin(phi) = 0 points
/// throw InvalidArgument.
double classical_radicand(const TwoModeConfig& config, double phi,
                          VectorLength length = VectorLength::Exact);

ClassicalJ3 classical_j3(const TwoModeConfig& config, double phi,
                         VectorLength length = VectorLength::Exact);

/// Maximal sub-intervals of [0, pi] with a nonnegative radicand, endpoints
/// refined by bisection to 1e-10. The support on (-pi, 0) is the mirror image.
std::vector<PhaseInterval> classical_support(const TwoModeConfig& config,
                                             VectorLength length = VectorLength::Exact);

/// Hamilton-Jacobi action S(phi) = S(ref) - integral_ref^phi J3, by adaptive
/// Gauss-Kronrod quadrature (absolute error < 1e-9). Both phases must lie in
/// one support interval.
double action(const TwoModeConfig& config, double phi, double reference_phi,
              double reference_action, VectorLength length = VectorLength::Exact);

/// A = sqrt(rho0 / |sin(phi) J3|). Infinite at turning points; throws outside
/// the support or at sin(phi) = 0.
double envelope(const TwoModeConfig& config, double phi,
                VectorLength length = VectorLength::Exact);

/// d/dphi (sin(phi) A^2 dS/dphi) from closed-form derivatives.
double continuity_residual(const TwoModeConfig& config, double phi,
                           VectorLength length = VectorLength::Exact);

/// How the free integration constant of the action is fixed.
///  - NearestExactZero: at the phase where J3 is maximal, S is set so that the
///    approximate amplitude's nearest zero coincides with the nearest zero of
///    the exact realized amplitude, including its sign.
///  - EqualCaseParity:  S(pi/2) = -N pi/4 (beam-splitter parity), only for
///    m_psi = m = 0.
enum class ActionAnchor { NearestExactZero, EqualCaseParity };

struct ApproximationOptions {
  VectorLength length = VectorLength::Exact;
  ActionAnchor anchor = ActionAnchor::NearestExactZero;
  double edge_margin = 0.05;  // rad kept away from support endpoints
};

/// Per-phase semiclassical quantities on a grid. `action` and `envelope` are
/// NaN outside the support.
struct SemiclassicalCurve {
  TwoModeConfig config;
  PhaseGrid grid;
  std::vector<double> j3_classical;
  std::vector<bool> evanescent;
  std::vector<double> action;
  std::vector<double> envelope;
  std::vector<PhaseInterval> support;
  VectorLength length = VectorLength::Exact;
  double rho0 = kRho0;
};

/// The WKB-style separation <m|psi(phi)> ~ 2 A(phi) cos S(phi) for one
/// configuration, with its action constant calibrated once at construction.
class SemiclassicalModel {
 public:
  explicit SemiclassicalModel(const TwoModeConfig& config, ApproximationOptions options = {});

  const TwoModeConfig& config() const { return config_; }
  const ApproximationOptions& options() const { return options_; }
  const std::vector<PhaseInterval>& support() const { return support_; }
  double anchor_phase() const { return anchor_phase_; }
  double anchor_action() const { return anchor_action_; }
  /// Unit phase of the exact amplitude that the approximation reproduces.
  Complex reference_phase() const { return reference_phase_; }

  /// True when |phi| lies in a support interval shrunk by the edge margin.
  bool is_valid(double phi) const;
  double action_at(double phi) const;
  /// 2 A cos S at phi; odd or even in phi following the exact amplitude.
  /// Throws InvalidArgument outside the margin-shrunk support.
  double approx_amplitude(double phi) const;

  SemiclassicalCurve curve(const PhaseGrid& grid) const;

 private:
  const PhaseInterval* interval_for(double abs_phi) const;

  TwoModeConfig config_;
  ApproximationOptions options_;
  std::vector<PhaseInterval> support_;
  double anchor_phase_ = 0.0;
  double anchor_action_ = 0.0;
  Complex reference_phase_{1.0, 0.0};
  double mirror_sign_ = 1.0;  // realized(-phi) = mirror_sign * realized(phi)
};

double approx_amplitude(const TwoModeConfig& config, double phi,
                        ApproximationOptions options = {});

SemiclassicalCurve semiclassical_curve(const TwoModeConfig& config, const PhaseGrid& grid,
                                       VectorLength length = VectorLength::Exact);

/// Histogram of output half-differences under random-phase classical
/// interference. Bins are unit-width, centered on m = N/2, N/2 - 1, ..., -N/2.
struct ClassicalHistogram {
  int photons = 0;
  HalfInteger m_psi;
  double phi = 0.0;
  std::uint64_t samples = 0;
  std::uint64_t seed = 0;
  std::vector<HalfInteger> m_values;
  std::vector<std::uint64_t> counts;
  std::vector<double> frequencies;
  std::vector<double> standard_errors;  // sqrt(p (1 - p) / samples)
};

inline constexpr std::uint64_t kMinClassicalSamples = 10000;

/// Samples theta ~ U[0, 2 pi), sets J2 = R cos(theta) with
/// R = sqrt(L^2 - m_psi^2), and bins J_phi = cos(phi) m_psi - sin(phi) J2.
/// Deterministic for a given (seed, samples) regardless of thread count.
ClassicalHistogram classical_envelope_oracle(int photons, HalfInteger m_psi, double phi,
                                             std::uint64_t samples, std::uint64_t seed,
                                             VectorLength length = VectorLength::NPlusOne);

}  // namespace fringelab
