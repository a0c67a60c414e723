#include "fringelab/exact_evolution.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "fringelab/parallel.hpp"

namespace fringelab {
namespace {

constexpr double kPi = std::numbers::pi;

void require_off_singularity(double phi, const char* what) {
  if (!std::isfinite(phi)) throw InvalidArgument(std::string(what) + ": phase must be finite");
  if (std::abs(std::sin(phi)) < 1e-12) {
    std::ostringstream os;
    os << what << ": phi = " << phi << " is a cot singularity (integer multiple of pi)";
    throw InvalidArgument(os.str());
  }
}

void require_finite(double phi) {
  if (!std::isfinite(phi)) throw InvalidArgument("phase must be finite");
}

}  // namespace

// ---------------------------------------------------------------------------
// PhaseGrid

PhaseGrid::PhaseGrid(std::vector<double> phases) : phases_(std::move(phases)) {
  if (phases_.empty()) throw InvalidArgument("phase grid must not be empty");
  for (std::size_t i = 0; i < phases_.size(); ++i) {
    const double phi = phases_[i];
    if (!std::isfinite(phi)) throw InvalidArgument("phase grid values must be finite");
    if (phi < -kPi || phi > kPi) throw InvalidArgument("phase grid values must lie in [-pi, pi]");
    if (i > 0 && !(phi > phases_[i - 1])) {
      throw InvalidArgument("phase grid must be strictly increasing");
    }
  }
}

PhaseGrid PhaseGrid::linspace(double lower, double upper, std::size_t count) {
  if (count < 2 || !(upper > lower)) {
    throw InvalidArgument("linspace requires count >= 2 and upper > lower");
  }
  std::vector<double> phases(count);
  const double step = (upper - lower) / static_cast<double>(count - 1);
  for (std::size_t i = 0; i < count; ++i) phases[i] = lower + step * static_cast<double>(i);
  phases.back() = upper;
  return PhaseGrid(std::move(phases));
}

PhaseGrid PhaseGrid::cell_centers(double lower, double upper, std::size_t count) {
  if (count < 1 || !(upper > lower)) {
    throw InvalidArgument("cell_centers requires count >= 1 and upper > lower");
  }
  std::vector<double> phases(count);
  const double step = (upper - lower) / static_cast<double>(count);
  for (std::size_t i = 0; i < count; ++i) {
    phases[i] = lower + step * (static_cast<double>(i) + 0.5);
  }
  return PhaseGrid(std::move(phases));
}

// ---------------------------------------------------------------------------
// SuperpositionInput

SuperpositionInput::SuperpositionInput(int photons, std::vector<PathComponent> components)
    : photons_(photons), components_(std::move(components)) {
  if (photons_ < 1) throw InvalidArgument("photon number N >= 1 violated");
  if (components_.empty()) throw InvalidArgument("superposition needs at least one component");
  double norm = 0.0;
  for (std::size_t i = 0; i < components_.size(); ++i) {
    validate_half_difference(photons_, components_[i].m3, "m3");
    for (std::size_t j = 0; j < i; ++j) {
      if (components_[j].m3 == components_[i].m3) {
        throw InvalidArgument("duplicate m3 = " + components_[i].m3.to_string() +
                              " in superposition");
      }
    }
    norm += std::norm(components_[i].coefficient);
  }
  if (std::abs(norm - 1.0) > 1e-12) {
    std::ostringstream os;
    os << "superposition must be normalized to 1e-12, got sum |c|^2 = " << norm;
    throw InvalidArgument(os.str());
  }
}

SuperpositionInput SuperpositionInput::noon_like(int photons, HalfInteger m3) {
  const HalfInteger up = m3.twice() < 0 ? -m3 : m3;
  if (up.is_zero()) return path_eigenstate(photons, up);
  const double c = std::numbers::sqrt2 / 2.0;
  return SuperpositionInput(photons, {{up, Complex(c, 0.0)}, {-up, Complex(c, 0.0)}});
}

SuperpositionInput SuperpositionInput::path_eigenstate(int photons, HalfInteger m3) {
  return SuperpositionInput(photons, {{m3, Complex(1.0, 0.0)}});
}

bool SuperpositionInput::is_path_symmetric(double tolerance) const {
  const Eigen::VectorXcd c = dense();
  const Eigen::Index dim = c.size();
  for (Eigen::Index k = 0; k < dim; ++k) {
    if (std::abs(c[k] - std::conj(c[dim - 1 - k])) > tolerance) return false;
  }
  return true;
}

Eigen::VectorXcd SuperpositionInput::dense() const {
  Eigen::VectorXcd c = Eigen::VectorXcd::Zero(photons_ + 1);
  for (const auto& comp : components_) c[descending_index(photons_, comp.m3)] = comp.coefficient;
  return c;
}

// ---------------------------------------------------------------------------
// Interferometer

Interferometer::Interferometer(int photons)
    : ops_(build_operator_set(photons)), basis_(j1_eigenbasis(ops_)) {}

Complex Interferometer::matrix_element(HalfInteger m, const Eigen::VectorXcd& ket, double phi,
                                       int power) const {
  require_finite(phi);
  validate_half_difference(photons(), m, "m");
  const auto bra = basis_.vectors.col(descending_index(photons(), m));
  const auto& m3 = ops_.j3_eigenvalues;
  Complex sum(0.0, 0.0);
  for (Eigen::Index k = 0; k < m3.size(); ++k) {
    const double weight = bra[k] * std::pow(m3[k], power);
    if (weight == 0.0) continue;
    sum += weight * ket[k] * std::polar(1.0, -phi * m3[k]);
  }
  return sum;
}

Complex Interferometer::matrix_element(HalfInteger m, HalfInteger m_psi, double phi,
                                       int power) const {
  validate_half_difference(photons(), m_psi, "m_psi");
  const Eigen::VectorXcd ket =
      basis_.vectors.col(descending_index(photons(), m_psi)).cast<Complex>();
  return matrix_element(m, ket, phi, power);
}

Complex Interferometer::amplitude_derivative(HalfInteger m_psi, HalfInteger m, double phi,
                                             int order) const {
  if (order < 0) throw InvalidArgument("derivative order must be nonnegative");
  Complex factor(1.0, 0.0);
  for (int i = 0; i < order; ++i) factor *= Complex(0.0, -1.0);
  return factor * matrix_element(m, m_psi, phi, order);
}

WeakValue Interferometer::weak_value_j3(HalfInteger m_psi, HalfInteger m, double phi) const {
  const Complex den = matrix_element(m, m_psi, phi, 0);
  const Complex num = matrix_element(m, m_psi, phi, 1);
  return {num / den, std::abs(den) < kPointSingularityThreshold};
}

WeakValue Interferometer::weak_value_j3sq(HalfInteger m_psi, HalfInteger m, double phi) const {
  const Complex den = matrix_element(m, m_psi, phi, 0);
  const Complex num = matrix_element(m, m_psi, phi, 2);
  return {num / den, std::abs(den) < kPointSingularityThreshold};
}

std::vector<double> Interferometer::probability_distribution(HalfInteger m_psi,
                                                             double phi) const {
  require_finite(phi);
  validate_half_difference(photons(), m_psi, "m_psi");
  const auto& m3 = ops_.j3_eigenvalues;
  const auto input = basis_.vectors.col(descending_index(photons(), m_psi));
  Eigen::VectorXcd evolved(m3.size());
  for (Eigen::Index k = 0; k < m3.size(); ++k) {
    evolved[k] = input[k] * std::polar(1.0, -phi * m3[k]);
  }
  const Eigen::VectorXcd projected = basis_.vectors.transpose().cast<Complex>() * evolved;
  std::vector<double> probs(static_cast<std::size_t>(projected.size()));
  for (Eigen::Index j = 0; j < projected.size(); ++j) {
    probs[static_cast<std::size_t>(j)] = std::norm(projected[j]);
  }
  return probs;
}

Complex Interferometer::superposition_amplitude(const SuperpositionInput& input, HalfInteger m,
                                                double phi) const {
  if (input.photons() != photons()) {
    throw InvalidArgument("superposition photon number does not match the interferometer");
  }
  return matrix_element(m, input.dense(), phi, 0);
}

// ---------------------------------------------------------------------------
// Free functions

Complex amplitude(const TwoModeConfig& config, double phi) {
  config.validate();
  return Interferometer(config.photons).amplitude(config.m_psi, config.m, phi);
}

std::vector<double> probability_distribution(int photons, HalfInteger m_psi, double phi) {
  return Interferometer(photons).probability_distribution(m_psi, phi);
}

WeakValue weak_value_j3(const TwoModeConfig& config, double phi) {
  config.validate();
  return Interferometer(config.photons).weak_value_j3(config.m_psi, config.m, phi);
}

WeakValue weak_value_j3sq(const TwoModeConfig& config, double phi) {
  config.validate();
  return Interferometer(config.photons).weak_value_j3sq(config.m_psi, config.m, phi);
}

Complex superposition_amplitude(const SuperpositionInput& input, HalfInteger m, double phi) {
  return Interferometer(input.photons()).superposition_amplitude(input, m, phi);
}

double weak_identity_rhs(const TwoModeConfig& config, double phi) {
  const double s = std::sin(phi);
  const double mp = config.m_psi.value();
  const double m = config.m.value();
  return casimir(config.photons) - (mp * mp - 2.0 * std::cos(phi) * mp * m + m * m) / (s * s);
}

double verify_weak_identity(const Interferometer& engine, const TwoModeConfig& config,
                            double phi) {
  require_off_singularity(phi, "verify_weak_identity");
  const WeakValue w1 = engine.weak_value_j3(config.m_psi, config.m, phi);
  const WeakValue w2 = engine.weak_value_j3sq(config.m_psi, config.m, phi);
  if (w1.singular) {
    throw InvalidArgument("verify_weak_identity: amplitude vanishes at phi (singular point)");
  }
  const double cot = std::cos(phi) / std::sin(phi);
  return std::abs(w2.value + Complex(0.0, cot) * w1.value - weak_identity_rhs(config, phi));
}

double verify_weak_identity(const TwoModeConfig& config, double phi) {
  config.validate();
  return verify_weak_identity(Interferometer(config.photons), config, phi);
}

double ode_residual(const Interferometer& engine, const TwoModeConfig& config, double phi) {
  require_off_singularity(phi, "ode_residual");
  const Complex a0 = engine.amplitude_derivative(config.m_psi, config.m, phi, 0);
  const Complex a1 = engine.amplitude_derivative(config.m_psi, config.m, phi, 1);
  const Complex a2 = engine.amplitude_derivative(config.m_psi, config.m, phi, 2);
  const double cot = std::cos(phi) / std::sin(phi);
  return std::abs(a2 + cot * a1 + weak_identity_rhs(config, phi) * a0);
}

double ode_residual(const TwoModeConfig& config, double phi) {
  config.validate();
  return ode_residual(Interferometer(config.photons), config, phi);
}

Complex canonical_phase(std::span<const Complex> amplitudes) {
  const Complex* largest = nullptr;
  for (const auto& a : amplitudes) {
    if (!largest || std::abs(a) > std::abs(*largest)) largest = &a;
  }
  if (!largest || std::abs(*largest) == 0.0) return {1.0, 0.0};
  Complex unit = *largest / std::abs(*largest);
  constexpr double kImaginaryAxis = 1e-12;
  if (unit.real() < -kImaginaryAxis ||
      (std::abs(unit.real()) <= kImaginaryAxis && unit.imag() < 0.0)) {
    unit = -unit;
  }
  return unit;
}

AmplitudeTrace realize_amplitudes(const PhaseGrid& grid, std::vector<Complex> amplitudes,
                                  std::optional<TwoModeConfig> config) {
  if (amplitudes.size() != grid.size()) {
    throw InvalidArgument("amplitude count does not match the phase grid");
  }
  AmplitudeTrace trace;
  trace.config = config;
  trace.grid = grid;
  trace.global_phase = canonical_phase(amplitudes);
  trace.realized.resize(amplitudes.size());
  double worst = 0.0;
  std::size_t worst_index = 0;
  for (std::size_t k = 0; k < amplitudes.size(); ++k) {
    const Complex rotated = std::conj(trace.global_phase) * amplitudes[k];
    trace.realized[k] = rotated.real();
    if (std::abs(rotated.imag()) > worst) {
      worst = std::abs(rotated.imag());
      worst_index = k;
    }
  }
  if (worst > kRealizationTolerance) {
    std::ostringstream os;
    os << "non-realizable trace: imaginary residue " << worst << " at phi = "
       << grid[worst_index] << " exceeds " << kRealizationTolerance;
    throw NumericalError(os.str());
  }
  trace.amplitudes = std::move(amplitudes);
  return trace;
}

AmplitudeTrace amplitude_trace(const Interferometer& engine, const TwoModeConfig& config,
                               const PhaseGrid& grid) {
  config.validate();
  std::vector<Complex> raw(grid.size());
  parallel_for(grid.size(), [&](std::size_t i) {
    raw[i] = engine.amplitude(config.m_psi, config.m, grid[i]);
  });
  return realize_amplitudes(grid, std::move(raw), config);
}

AmplitudeTrace amplitude_trace(const TwoModeConfig& config, const PhaseGrid& grid) {
  config.validate();
  return amplitude_trace(Interferometer(config.photons), config, grid);
}

AmplitudeTrace superposition_trace(const Interferometer& engine, const SuperpositionInput& input,
                                   HalfInteger m, const PhaseGrid& grid) {
  std::vector<Complex> raw(grid.size());
  parallel_for(grid.size(), [&](std::size_t i) {
    raw[i] = engine.superposition_amplitude(input, m, grid[i]);
  });
  return realize_amplitudes(grid, std::move(raw));
}

WeakValueTrace weak_value_trace(const Interferometer& engine, const TwoModeConfig& config,
                                const PhaseGrid& grid) {
  config.validate();
  const std::size_t n = grid.size();
  std::vector<Complex> amp(n), first(n), second(n);
  parallel_for(n, [&](std::size_t i) {
    amp[i] = engine.matrix_element(config.m, config.m_psi, grid[i], 0);
    first[i] = engine.matrix_element(config.m, config.m_psi, grid[i], 1);
    second[i] = engine.matrix_element(config.m, config.m_psi, grid[i], 2);
  });

  double peak = 0.0;
  for (const auto& a : amp) peak = std::max(peak, std::abs(a));
  const double threshold = kRelativeSingularityThreshold * peak;

  WeakValueTrace trace;
  trace.config = config;
  trace.grid = grid;
  trace.j3_weak.resize(n);
  trace.j3sq_weak.resize(n);
  trace.singular_flags.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    trace.j3_weak[i] = first[i] / amp[i];
    trace.j3sq_weak[i] = second[i] / amp[i];
    trace.singular_flags[i] = std::abs(amp[i]) < threshold;
  }
  return trace;
}

}  // namespace fringelab
