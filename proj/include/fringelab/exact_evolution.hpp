#pragma once

#include <complex>
#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include <Eigen/Dense>

#include "fringelab/spin_algebra.hpp"
#include "fringelab/types.hpp"

namespace fringelab {

using Complex = std::complex<double>;

/// Strictly increasing, finite phases within [-pi, pi].
class PhaseGrid {
 public:
  PhaseGrid() = default;
  explicit PhaseGrid(std::vector<double> phases);

  /// `count` equally spaced points including both endpoints.
  static PhaseGrid linspace(double lower, double upper, std::size_t count);
  /// Centers of `count` equal cells covering (lower, upper); never touches the
  /// endpoints, which keeps grids over (0, pi) off the cot singularities.
  static PhaseGrid cell_centers(double lower, double upper, std::size_t count);

  std::span<const double> values() const { return phases_; }
  std::size_t size() const { return phases_.size(); }
  double operator[](std::size_t i) const { return phases_[i]; }
  double front() const { return phases_.front(); }
  double back() const { return phases_.back(); }

 private:
  std::vector<double> phases_;
};

/// Complex amplitudes <m|psi(phi)> on a grid together with their real-valued
/// representation: amplitudes[k] == global_phase * realized[k].
struct AmplitudeTrace {
  std::optional<TwoModeConfig> config;  // empty for superposition inputs
  PhaseGrid grid;
  std::vector<Complex> amplitudes;
  Complex global_phase{1.0, 0.0};
  std::vector<double> realized;
};

struct WeakValue {
  Complex value;
  bool singular = false;  // |<m|psi(phi)>| below the singularity threshold
};

struct WeakValueTrace {
  TwoModeConfig config;
  PhaseGrid grid;
  std::vector<Complex> j3_weak;
  std::vector<Complex> j3sq_weak;
  std::vector<bool> singular_flags;
};

/// One J3 eigenstate component of a superposition input.
struct PathComponent {
  HalfInteger m3;
  Complex coefficient;
};

/// Normalized superposition of path (J3) eigenstates.
class SuperpositionInput {
 public:
  SuperpositionInput(int photons, std::vector<PathComponent> components);

  /// (|m3> + |-m3>)/sqrt(2); reduces to |0> when m3 == 0.
  static SuperpositionInput noon_like(int photons, HalfInteger m3);
  static SuperpositionInput path_eigenstate(int photons, HalfInteger m3);

  int photons() const { return photons_; }
  const std::vector<PathComponent>& components() const { return components_; }
  /// coefficient(m3) == conj(coefficient(-m3)) for every m3.
  bool is_path_symmetric(double tolerance = 1e-12) const;
  /// Dense coefficients in the J3 basis, index k <-> m3 = N/2 - k.
  Eigen::VectorXcd dense() const;

 private:
  int photons_;
  std::vector<PathComponent> components_;
};

/// Spectral evaluator for a fixed photon number. Holds the operator set and
/// the phase-fixed J1 basis; every amplitude is a sum over J3 eigenvalues
///   sum_k bra[k] * ket[k] * m3_k^p * exp(-i phi m3_k),
/// so phase derivatives and J3 matrix elements come out exactly.
class Interferometer {
 public:
  explicit Interferometer(int photons);

  int photons() const { return ops_.photons; }
  const OperatorSet& operators() const { return ops_; }
  const MeasurementBasis& number_basis() const { return basis_; }

  /// <m; J1| J3^power exp(-i phi J3) |ket>.
  Complex matrix_element(HalfInteger m, const Eigen::VectorXcd& ket, double phi, int power) const;
  Complex matrix_element(HalfInteger m, HalfInteger m_psi, double phi, int power) const;

  Complex amplitude(HalfInteger m_psi, HalfInteger m, double phi) const {
    return matrix_element(m, m_psi, phi, 0);
  }
  /// d^order/dphi^order of the amplitude, analytic.
  Complex amplitude_derivative(HalfInteger m_psi, HalfInteger m, double phi, int order) const;

  WeakValue weak_value_j3(HalfInteger m_psi, HalfInteger m, double phi) const;
  WeakValue weak_value_j3sq(HalfInteger m_psi, HalfInteger m, double phi) const;

  std::vector<double> probability_distribution(HalfInteger m_psi, double phi) const;
  Complex superposition_amplitude(const SuperpositionInput& input, HalfInteger m, double phi) const;

 private:
  OperatorSet ops_;
  MeasurementBasis basis_;
};

/// Pointwise weak values are flagged singular below this amplitude modulus.
inline constexpr double kPointSingularityThreshold = 1e-6;
/// On grids the threshold is relative to the largest modulus on the grid.
inline constexpr double kRelativeSingularityThreshold = 1e-6;
/// Maximum tolerated |Im(conj(global_phase) * amplitude)| after realization.
inline constexpr double kRealizationTolerance = 1e-9;

Complex amplitude(const TwoModeConfig& config, double phi);
std::vector<double> probability_distribution(int photons, HalfInteger m_psi, double phi);
WeakValue weak_value_j3(const TwoModeConfig& config, double phi);
WeakValue weak_value_j3sq(const TwoModeConfig& config, double phi);
Complex superposition_amplitude(const SuperpositionInput& input, HalfInteger m, double phi);

/// Right-hand side N(N+2)/4 - (m_psi^2 - 2 cos(phi) m_psi m + m^2) / sin^2(phi).
double weak_identity_rhs(const TwoModeConfig& config, double phi);

/// |j3sq_weak + i cot(phi) j3_weak - weak_identity_rhs|. Rejects phi at integer
/// multiples of pi.
double verify_weak_identity(const TwoModeConfig& config, double phi);
double verify_weak_identity(const Interferometer& engine, const TwoModeConfig& config, double phi);

/// |a'' + cot(phi) a' + weak_identity_rhs * a| with analytic derivatives.
double ode_residual(const TwoModeConfig& config, double phi);
double ode_residual(const Interferometer& engine, const TwoModeConfig& config, double phi);

/// Chooses the unit complex constant for a trace: the phase of the
/// largest-modulus amplitude, folded onto Re > 0 (or +i when purely imaginary).
Complex canonical_phase(std::span<const Complex> amplitudes);

/// Splits raw amplitudes into global phase and real values. Throws
/// NumericalError ("non-realizable trace") when the imaginary residue after
/// removing the global phase exceeds kRealizationTolerance.
AmplitudeTrace realize_amplitudes(const PhaseGrid& grid, std::vector<Complex> amplitudes,
                                  std::optional<TwoModeConfig> config = std::nullopt);

AmplitudeTrace amplitude_trace(const Interferometer& engine, const TwoModeConfig& config,
                               const PhaseGrid& grid);
AmplitudeTrace amplitude_trace(const TwoModeConfig& config, const PhaseGrid& grid);
AmplitudeTrace superposition_trace(const Interferometer& engine, const SuperpositionInput& input,
                                   HalfInteger m, const PhaseGrid& grid);

WeakValueTrace weak_value_trace(const Interferometer& engine, const TwoModeConfig& config,
                                const PhaseGrid& grid);

/// Numerical integration of the single-fringe ODE
///   y'' + cot(phi) y' + weak_identity_rhs(phi) y = 0
/// with adaptive Dormand-Prince steps. Independent of the spectral sum.
struct FringeOdeProblem {
  TwoModeConfig config;
  double start = 0.0;
  double value = 0.0;  // y(start)
  double slope = 0.0;  // y'(start)
};

/// Margin the integration span must keep from 0 and +-pi.
inline constexpr double kOdeSingularMargin = 0.05;

/// Returns y at each phase in `outputs` (sorted, all on one side of `start`,
/// inside the admissible span). Throws InvalidArgument for spans that come
/// within kOdeSingularMargin of a cot singularity and NumericalError on
/// step-size underflow.
std::vector<double> integrate_fringe_ode(const FringeOdeProblem& problem,
                                         std::span<const double> outputs);

/// Seeds the ODE from the spectral amplitude and its analytic derivative at
/// span_start and integrates to each output phase. The result is rescaled by
/// the seed's phase, so it is directly comparable to amplitude(config, phi).
std::vector<Complex> ode_solve_oracle(const TwoModeConfig& config, double span_start,
                                      std::span<const double> outputs);

}  // namespace fringelab
