#include <array>
#include <cmath>
#include <numbers>
#include <sstream>

#include <boost/numeric/odeint/stepper/controlled_runge_kutta.hpp>
#include <boost/numeric/odeint/stepper/generation.hpp>
#include <boost/numeric/odeint/stepper/runge_kutta_dopri5.hpp>

#include "fringelab/exact_evolution.hpp"

namespace fringelab {
namespace {

namespace odeint = boost::numeric::odeint;
using State = std::array<double, 2>;

constexpr double kPi = std::numbers::pi;
constexpr double kAbsTolerance = 1e-12;
constexpr double kRelTolerance = 1e-12;
constexpr double kMinStep = 1e-12;

bool span_is_admissible(double lower, double upper) {
  const bool positive = lower >= kOdeSingularMargin && upper <= kPi - kOdeSingularMargin;
  const bool negative = lower >= -kPi + kOdeSingularMargin && upper <= -kOdeSingularMargin;
  return positive || negative;
}

}  // namespace

std::vector<double> integrate_fringe_ode(const FringeOdeProblem& problem,
                                         std::span<const double> outputs) {
  problem.config.validate();
  double lower = problem.start;
  double upper = problem.start;
  for (double phi : outputs) {
    if (!std::isfinite(phi)) throw InvalidArgument("ODE output phases must be finite");
    lower = std::min(lower, phi);
    upper = std::max(upper, phi);
  }
  if (!span_is_admissible(lower, upper)) {
    std::ostringstream os;
    os << "ODE span [" << lower << ", " << upper << "] must stay " << kOdeSingularMargin
       << " rad away from 0 and +-pi";
    throw InvalidArgument(os.str());
  }

  const TwoModeConfig& config = problem.config;
  auto rhs = [&config](const State& y, State& dydphi, double phi) {
    const double cot = std::cos(phi) / std::sin(phi);
    dydphi[0] = y[1];
    dydphi[1] = -cot * y[1] - weak_identity_rhs(config, phi) * y[0];
  };

  auto stepper = odeint::make_controlled(kAbsTolerance, kRelTolerance,
                                         odeint::runge_kutta_dopri5<State>());
  State state{problem.value, problem.slope};
  double phi = problem.start;
  double step = 1e-3;

  std::vector<double> values;
  values.reserve(outputs.size());
  for (double target : outputs) {
    const double direction = target >= phi ? 1.0 : -1.0;
    step = direction * std::abs(step);
    while (direction * (target - phi) > 0.0) {
      if (direction * (phi + step - target) > 0.0) step = target - phi;
      const odeint::controlled_step_result result = stepper.try_step(rhs, state, phi, step);
      if (result == odeint::fail && std::abs(step) < kMinStep) {
        std::ostringstream os;
        os << "ODE step-size underflow at phi = " << phi;
        throw NumericalError(os.str());
      }
    }
    values.push_back(state[0]);
  }
  return values;
}

std::vector<Complex> ode_solve_oracle(const TwoModeConfig& config, double span_start,
                                      std::span<const double> outputs) {
  config.validate();
  const Interferometer engine(config.photons);
  const Complex value = engine.amplitude_derivative(config.m_psi, config.m, span_start, 0);
  const Complex slope = engine.amplitude_derivative(config.m_psi, config.m, span_start, 1);

  // Amplitude and slope share one constant phase; take it from the larger.
  const Complex seed = std::abs(value) >= std::abs(slope) ? value : slope;
  const Complex unit = std::abs(seed) > 0.0 ? seed / std::abs(seed) : Complex(1.0, 0.0);

  const FringeOdeProblem problem{config, span_start, (std::conj(unit) * value).real(),
                                 (std::conj(unit) * slope).real()};
  const std::vector<double> real_values = integrate_fringe_ode(problem, outputs);

  std::vector<Complex> result(real_values.size());
  for (std::size_t i = 0; i < real_values.size(); ++i) result[i] = unit * real_values[i];
  return result;
}

}  // namespace fringelab
