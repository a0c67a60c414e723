#include "fringelab/semiclassical.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <numbers>
#include <sstream>

#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <boost/math/tools/minima.hpp>

#include "fringelab/root_finding.hpp"

namespace fringelab {
namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kSinZero = 1e-15;
constexpr double kEndpointProbe = 1e-9;
constexpr std::size_t kSupportSamples = 4096;
constexpr std::size_t kCalibrationSamples = 2048;
constexpr double kActionTolerance = 1e-9;
constexpr double kSupportSlack = 1e-9;

// (m_psi^2 - 2 cos(phi) m_psi m + m^2) / sin^2(phi) without cancellation near
// phi = 0 and phi = pi.
double path_term(double m_psi, double m, double phi) {
  const double s = std::sin(phi);
  const double c = std::cos(phi);
  const bool near_zero = c >= 0.0;
  const double diff = near_zero ? m_psi - m : m_psi + m;
  const double cross = near_zero ? 2.0 * m_psi * m / (1.0 + c) : -2.0 * m_psi * m / (1.0 - c);
  if (std::abs(s) < kSinZero) {
    if (diff != 0.0) {
      std::ostringstream os;
      os << "classical J3 diverges at phi = " << phi << " (sin(phi) = 0 with m_psi "
         << (near_zero ? "!= m" : "!= -m") << ")";
      throw InvalidArgument(os.str());
    }
    return cross;
  }
  return diff * diff / (s * s) + cross;
}

// d/dphi of path_term.
double path_term_derivative(double m_psi, double m, double phi) {
  const double s = std::sin(phi);
  const double c = std::cos(phi);
  return 2.0 * (m_psi * m - c * path_term(m_psi, m, phi)) / s;
}

double positive_part_sqrt(double radicand) { return std::sqrt(std::max(0.0, radicand)); }

const PhaseInterval* containing(const std::vector<PhaseInterval>& intervals, double phi) {
  for (const auto& iv : intervals) {
    if (phi >= iv.lower - kSupportSlack && phi <= iv.upper + kSupportSlack) return &iv;
  }
  return nullptr;
}

std::string phase_text(double phi) {
  std::ostringstream os;
  os << phi;
  return os.str();
}

// Adaptive bisection over a fixed 31-point Kronrod rule with an absolute
// tolerance. Boost's own driver works with a relative one, which keeps
// splitting below the rounding floor on very short intervals.
double kronrod_step(const std::function<double(double)>& f, double a, double b, double tol,
                    int depth, double& error) {
  double local = 0.0;
  const double estimate =
      boost::math::quadrature::gauss_kronrod<double, 31>::integrate(f, a, b, 0, 0.0, &local);
  if (local <= tol || depth == 0) {
    error += local;
    return estimate;
  }
  const double mid = 0.5 * (a + b);
  return kronrod_step(f, a, mid, 0.5 * tol, depth - 1, error) +
         kronrod_step(f, mid, b, 0.5 * tol, depth - 1, error);
}

double kronrod(const std::function<double(double)>& f, double a, double b) {
  if (a == b) return 0.0;
  double error = 0.0;
  const double integral = kronrod_step(f, a, b, 1e-12, 30, error);
  if (!(error < kActionTolerance)) {
    throw NumericalError("action quadrature error estimate " + phase_text(error) +
                         " exceeds 1e-9");
  }
  return integral;
}

// integral_from^to J3 dphi for 0 <= from, to inside the support interval `iv`.
// Near a turning point J3 ~ sqrt(phi - edge), so each half of the interval is
// mapped through phi = edge +- u^2, which leaves a smooth integrand.
double integrate_j3(const TwoModeConfig& config, const PhaseInterval& iv, double from, double to,
                    VectorLength length) {
  if (from == to) return 0.0;
  if (from > to) return -integrate_j3(config, iv, to, from, length);
  auto j3 = [&](double t) { return positive_part_sqrt(classical_radicand(config, t, length)); };
  const double lo = iv.lower;
  const double hi = iv.upper;
  const bool lower_turning = lo > 0.0;
  const bool upper_turning = hi < kPi;
  const double mid = 0.5 * (lo + hi);

  auto left = [&](double a, double b) {
    if (!lower_turning) return kronrod(j3, a, b);
    auto g = [&](double u) { return 2.0 * u * j3(lo + u * u); };
    return kronrod(g, std::sqrt(std::max(0.0, a - lo)), std::sqrt(std::max(0.0, b - lo)));
  };
  auto right = [&](double a, double b) {
    if (!upper_turning) return kronrod(j3, a, b);
    auto g = [&](double u) { return 2.0 * u * j3(hi - u * u); };
    return kronrod(g, std::sqrt(std::max(0.0, hi - b)), std::sqrt(std::max(0.0, hi - a)));
  };
  if (to <= mid) return left(from, to);
  if (from >= mid) return right(from, to);
  return left(from, mid) + right(mid, to);
}

// Signed phases: J3 is even in phi, and a path through 0 is split there.
double integrate_j3_signed(const TwoModeConfig& config, const PhaseInterval& iv, double from,
                           double to, VectorLength length) {
  if (from >= 0.0 && to >= 0.0) return integrate_j3(config, iv, from, to, length);
  if (from <= 0.0 && to <= 0.0) return -integrate_j3(config, iv, -from, -to, length);
  return integrate_j3_signed(config, iv, from, 0.0, length) +
         integrate_j3_signed(config, iv, 0.0, to, length);
}

}  // namespace

double vector_length_squared(int photons, VectorLength length) {
  return length == VectorLength::Exact ? casimir(photons) : 0.25 * (photons + 1.0) * (photons + 1.0);
}

double classical_radicand(const TwoModeConfig& config, double phi, VectorLength length) {
  config.validate();
  if (!std::isfinite(phi)) throw InvalidArgument("phase must be finite");
  return vector_length_squared(config.photons, length) -
         path_term(config.m_psi.value(), config.m.value(), phi);
}

ClassicalJ3 classical_j3(const TwoModeConfig& config, double phi, VectorLength length) {
  const double radicand = classical_radicand(config, phi, length);
  return {std::sqrt(std::abs(radicand)), radicand < 0.0};
}

std::vector<PhaseInterval> classical_support(const TwoModeConfig& config, VectorLength length) {
  config.validate();
  auto radicand = [&](double phi) { return classical_radicand(config, phi, length); };

  std::vector<double> x;
  x.reserve(kSupportSamples + 2);
  x.push_back(kEndpointProbe);
  const PhaseGrid inner = PhaseGrid::cell_centers(0.0, kPi, kSupportSamples);
  x.insert(x.end(), inner.values().begin(), inner.values().end());
  x.push_back(kPi - kEndpointProbe);

  std::vector<double> y(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) y[i] = radicand(x[i]);

  std::vector<PhaseInterval> support;
  bool inside = y.front() >= 0.0;
  double lower = 0.0;
  for (std::size_t i = 0; i + 1 < x.size(); ++i) {
    const bool next_inside = y[i + 1] >= 0.0;
    if (next_inside == inside) continue;
    const double edge = refine_root(radicand, x[i], x[i + 1]);
    if (inside) {
      support.push_back({lower, edge});
    } else {
      lower = edge;
    }
    inside = next_inside;
  }
  if (inside) support.push_back({lower, kPi});
  return support;
}

double action(const TwoModeConfig& config, double phi, double reference_phi,
              double reference_action, VectorLength length) {
  config.validate();
  const auto support = classical_support(config, length);
  const PhaseInterval* iv = containing(support, std::abs(phi));
  const bool same_side = (phi >= 0.0) == (reference_phi >= 0.0) || (iv && iv->lower == 0.0);
  if (!iv || !same_side || !containing(std::vector<PhaseInterval>{*iv}, std::abs(reference_phi))) {
    throw InvalidArgument("action: phi = " + phase_text(phi) + " and reference " +
                          phase_text(reference_phi) + " must share one support interval");
  }
  return reference_action - integrate_j3_signed(config, *iv, reference_phi, phi, length);
}

double envelope(const TwoModeConfig& config, double phi, VectorLength length) {
  const double radicand = classical_radicand(config, phi, length);
  const double s = std::abs(std::sin(phi));
  if (s < kSinZero) throw InvalidArgument("envelope: sin(phi) = 0");
  if (radicand < 0.0) {
    throw InvalidArgument("envelope: phi = " + phase_text(phi) + " is outside the classical support");
  }
  return std::sqrt(kRho0 / (s * std::sqrt(radicand)));
}

double continuity_residual(const TwoModeConfig& config, double phi, VectorLength length) {
  const double radicand = classical_radicand(config, phi, length);
  const double s = std::sin(phi);
  if (std::abs(s) < kSinZero || !(radicand > 0.0)) {
    throw InvalidArgument("continuity_residual: phi must lie in the support interior");
  }
  const double c = std::cos(phi);
  const double sign = s > 0.0 ? 1.0 : -1.0;
  const double mp = config.m_psi.value();
  const double m = config.m.value();

  const double j3 = std::sqrt(radicand);
  const double dj3 = -path_term_derivative(mp, m, phi) / (2.0 * j3);
  const double a2 = kRho0 / (std::abs(s) * j3);
  const double da2 = -kRho0 * (sign * c * j3 + std::abs(s) * dj3) / (s * s * j3 * j3);
  // f = sin * A^2 * dS/dphi with dS/dphi = -J3.
  return c * a2 * (-j3) + s * da2 * (-j3) + s * a2 * (-dj3);
}

// ---------------------------------------------------------------------------
// SemiclassicalModel

SemiclassicalModel::SemiclassicalModel(const TwoModeConfig& config, ApproximationOptions options)
    : config_(config), options_(options) {
  config_.validate();
  if (options_.edge_margin < 0.0) throw InvalidArgument("edge margin must be nonnegative");
  support_ = classical_support(config_, options_.length);

  const Interferometer engine(config_.photons);
  const PhaseGrid probe = PhaseGrid::cell_centers(0.0, kPi, kCalibrationSamples);
  std::vector<Complex> raw(probe.size());
  for (std::size_t i = 0; i < probe.size(); ++i) {
    raw[i] = engine.amplitude(config_.m_psi, config_.m, probe[i]);
  }
  reference_phase_ = canonical_phase(raw);
  // a(-phi) = conj(a(phi)) for real bra and ket: even when the constant phase
  // is real, odd when it is imaginary.
  mirror_sign_ = std::abs(reference_phase_.real()) > 0.5 ? 1.0 : -1.0;

  const bool equal_case = config_.m_psi.is_zero() && config_.m.is_zero();
  if (options_.anchor == ActionAnchor::EqualCaseParity) {
    if (!equal_case) {
      throw InvalidArgument("EqualCaseParity anchor requires m_psi = m = 0");
    }
    anchor_phase_ = kPi / 2.0;
    anchor_action_ = -kPi * config_.photons / 4.0;
    return;
  }
  if (support_.empty()) return;

  // Anchor where J3 is maximal.
  auto radicand = [&](double phi) { return classical_radicand(config_, phi, options_.length); };
  const PhaseInterval* anchor_interval = &support_.front();
  if (equal_case) {
    anchor_phase_ = kPi / 2.0;
  } else {
    double best = -std::numeric_limits<double>::infinity();
    for (const auto& iv : support_) {
      const auto [arg, neg] = boost::math::tools::brent_find_minima(
          [&](double phi) { return -radicand(phi); }, iv.lower, iv.upper, 40);
      if (-neg > best) {
        best = -neg;
        anchor_phase_ = arg;
        anchor_interval = &iv;
      }
    }
  }

  auto realized = [&](double phi) {
    return (std::conj(reference_phase_) * engine.amplitude(config_.m_psi, config_.m, phi)).real();
  };
  const double lo = std::max(anchor_interval->lower, kEndpointProbe);
  const double hi = std::min(anchor_interval->upper, kPi - kEndpointProbe);
  const std::vector<double> zeros = scan_roots(realized, lo, hi, kCalibrationSamples);

  if (zeros.empty()) {
    anchor_action_ = realized(anchor_phase_) >= 0.0 ? 0.0 : kPi;
    return;
  }
  const auto nearest = std::min_element(zeros.begin(), zeros.end(), [&](double a, double b) {
    return std::abs(a - anchor_phase_) < std::abs(b - anchor_phase_);
  });
  const double zero = *nearest;

  // Just past the zero, cos(pi/2 - integral J3) is positive; pick the branch
  // whose sign matches the exact amplitude there.
  double probe_phi = 0.0;
  bool expect_positive = true;
  if (nearest + 1 != zeros.end()) {
    probe_phi = 0.5 * (zero + *(nearest + 1));
  } else if (nearest != zeros.begin()) {
    probe_phi = 0.5 * (zero + *(nearest - 1));
    expect_positive = false;
  } else {
    const double j3 = std::max(std::sqrt(std::max(radicand(zero), 0.0)), 1.0);
    probe_phi = zero + std::min(0.5 * kPi / j3, 0.5 * (hi - zero));
  }
  const bool positive = realized(probe_phi) > 0.0;
  const double zero_action = positive == expect_positive ? kPi / 2.0 : -kPi / 2.0;
  anchor_action_ =
      zero_action - integrate_j3(config_, *anchor_interval, zero, anchor_phase_, options_.length);
}

const PhaseInterval* SemiclassicalModel::interval_for(double abs_phi) const {
  for (const auto& iv : support_) {
    if (abs_phi >= iv.lower && abs_phi <= iv.upper) return &iv;
  }
  return nullptr;
}

bool SemiclassicalModel::is_valid(double phi) const {
  const double a = std::abs(phi);
  for (const auto& iv : support_) {
    if (a >= iv.lower + options_.edge_margin && a <= iv.upper - options_.edge_margin) return true;
  }
  return false;
}

double SemiclassicalModel::action_at(double phi) const {
  const double a = std::abs(phi);
  const PhaseInterval* iv = interval_for(a);
  if (!iv || !iv->contains(anchor_phase_)) {
    throw InvalidArgument("action_at: phi = " + phase_text(phi) +
                          " is outside the anchored support interval");
  }
  return anchor_action_ - integrate_j3(config_, *iv, anchor_phase_, a, options_.length);
}

double SemiclassicalModel::approx_amplitude(double phi) const {
  if (!is_valid(phi)) {
    throw InvalidArgument("approx_amplitude: phi = " + phase_text(phi) +
                          " is outside the support shrunk by the edge margin");
  }
  const double a = std::abs(phi);
  const double value = 2.0 * envelope(config_, a, options_.length) * std::cos(action_at(a));
  return phi < 0.0 ? mirror_sign_ * value : value;
}

SemiclassicalCurve SemiclassicalModel::curve(const PhaseGrid& grid) const {
  const double nan = std::numeric_limits<double>::quiet_NaN();
  SemiclassicalCurve out;
  out.config = config_;
  out.grid = grid;
  out.support = support_;
  out.length = options_.length;
  const std::size_t n = grid.size();
  out.j3_classical.assign(n, nan);
  out.evanescent.assign(n, false);
  out.action.assign(n, nan);
  out.envelope.assign(n, nan);

  for (std::size_t i = 0; i < n; ++i) {
    const double phi = grid[i];
    double radicand = 0.0;
    try {
      radicand = classical_radicand(config_, phi, options_.length);
    } catch (const InvalidArgument&) {
      continue;  // non-removable sin(phi) = 0
    }
    out.j3_classical[i] = std::sqrt(std::abs(radicand));
    out.evanescent[i] = radicand < 0.0;
    if (radicand < 0.0) continue;
    const double a = std::abs(phi);
    const PhaseInterval* iv = interval_for(a);
    if (iv && iv->contains(anchor_phase_)) {
      out.action[i] = anchor_action_ - integrate_j3(config_, *iv, anchor_phase_, a, options_.length);
    }
    const double s = std::abs(std::sin(phi));
    out.envelope[i] = s < kSinZero || radicand == 0.0
                          ? std::numeric_limits<double>::infinity()
                          : std::sqrt(kRho0 / (s * std::sqrt(radicand)));
  }
  return out;
}

double approx_amplitude(const TwoModeConfig& config, double phi, ApproximationOptions options) {
  return SemiclassicalModel(config, options).approx_amplitude(phi);
}

SemiclassicalCurve semiclassical_curve(const TwoModeConfig& config, const PhaseGrid& grid,
                                       VectorLength length) {
  ApproximationOptions options;
  options.length = length;
  return SemiclassicalModel(config, options).curve(grid);
}

}  // namespace fringelab
