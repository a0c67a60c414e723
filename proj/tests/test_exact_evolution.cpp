#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "fringelab/exact_evolution.hpp"
#include "oracles.hpp"

using namespace fringelab;

namespace {

constexpr double kPi = std::numbers::pi;

HalfInteger h(int twice) { return HalfInteger::from_twice(twice); }

struct Draw {
  TwoModeConfig config;
  double phi;
};

// Random configurations with N <= 32 and phases away from sin(phi) = 0 and
// from amplitude zeros.
std::vector<Draw> random_draws(std::size_t count, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::vector<Draw> draws;
  while (draws.size() < count) {
    const int n = std::uniform_int_distribution<int>(1, 32)(rng);
    std::uniform_int_distribution<int> diff(0, n);
    const auto config = TwoModeConfig::from_differences(n, n - 2 * diff(rng), n - 2 * diff(rng));
    const double phi = std::uniform_real_distribution<double>(-kPi, kPi)(rng);
    if (std::abs(std::sin(phi)) < 1e-3) continue;
    if (std::abs(amplitude(config, phi)) < 1e-6) continue;
    draws.push_back({config, phi});
  }
  return draws;
}

}  // namespace

TEST_SUITE("exact_evolution") {

TEST_CASE("single photon amplitudes in closed form") {
  for (double phi : {-3.0, -1.0, 0.0, 0.4, 2.5}) {
    const Complex up = amplitude(TwoModeConfig::from_differences(1, 1, 1), phi);
    const Complex flip = amplitude(TwoModeConfig::from_differences(1, 1, -1), phi);
    CHECK(std::abs(up - Complex(std::cos(phi / 2), 0.0)) < 1e-14);
    CHECK(std::abs(flip - Complex(0.0, -std::sin(phi / 2))) < 1e-14);
  }
}

TEST_CASE("spectral sums match the dense matrix exponential") {
  std::mt19937_64 rng(11);
  for (int n = 1; n <= 16; ++n) {
    const Interferometer engine(n);
    for (int trial = 0; trial < 4; ++trial) {
      std::uniform_int_distribution<int> diff(0, n);
      const int in = n - 2 * diff(rng);
      const int out = n - 2 * diff(rng);
      const double phi = std::uniform_real_distribution<double>(-kPi, kPi)(rng);
      for (int power = 0; power <= 2; ++power) {
        const Complex spectral = engine.matrix_element(h(out), h(in), phi, power);
        CHECK(std::abs(spectral - oracle::expm_element(n, in, out, phi, power)) < 1e-10);
      }
    }
  }
}

TEST_CASE("weak values match brute-force ratios") {
  const auto config = TwoModeConfig::from_differences(9, 3, -1);
  for (double phi : {0.3, 1.2, -2.2}) {
    const Complex a = oracle::expm_element(9, 3, -1, phi, 0);
    CHECK(std::abs(weak_value_j3(config, phi).value - oracle::expm_element(9, 3, -1, phi, 1) / a) <
          1e-9);
    CHECK(std::abs(weak_value_j3sq(config, phi).value - oracle::expm_element(9, 3, -1, phi, 2) / a) <
          1e-9);
  }
}

TEST_CASE("weak values near zeros are flagged") {
  // m_psi = 0, m = 1/2 parity: amplitude vanishes at phi = 0 for odd-m outputs.
  const auto config = TwoModeConfig::from_differences(2, 0, 2);
  CHECK(std::abs(amplitude(config, 0.0)) < 1e-14);
  CHECK(weak_value_j3(config, 0.0).singular);
  CHECK_THROWS_AS(verify_weak_identity(config, 0.0), InvalidArgument);
}

TEST_CASE("analytic derivatives match finite differences") {
  const Interferometer engine(12);
  const double phi = 0.83;
  const double step = 1e-5;
  for (int order = 1; order <= 2; ++order) {
    const Complex plus = engine.amplitude_derivative(h(4), h(-2), phi + step, order - 1);
    const Complex minus = engine.amplitude_derivative(h(4), h(-2), phi - step, order - 1);
    CHECK(std::abs(engine.amplitude_derivative(h(4), h(-2), phi, order) - (plus - minus) / (2 * step)) <
          1e-6);
  }
}

TEST_CASE("property suite over random draws") {
  const auto draws = random_draws(200, 20240601);
  for (const auto& d : draws) {
    const int n = d.config.photons;
    const double n2 = static_cast<double>(n) * n;
    CAPTURE(d.config.describe());
    CAPTURE(d.phi);

    const auto p = probability_distribution(n, d.config.m_psi, d.phi);
    double total = 0.0;
    for (double x : p) total += x;
    CHECK(std::abs(total - 1.0) < 1e-12);

    CHECK(verify_weak_identity(d.config, d.phi) < 1e-8 * n2);
    CHECK(ode_residual(d.config, d.phi) < 1e-8 * n2 * std::max(1.0, std::abs(amplitude(d.config, d.phi))));
    CHECK(std::abs(weak_value_j3(d.config, d.phi).value.real()) < 1e-8);

    const Complex forward = amplitude(d.config, d.phi);
    const Complex swapped = amplitude(d.config.exchanged(), d.phi);
    CHECK(std::abs(forward - swapped) < 1e-12);
  }
}

TEST_CASE("weak identity right-hand side") {
  const auto config = TwoModeConfig::from_differences(8, 0, 4);
  CHECK(weak_identity_rhs(config, kPi / 2) == doctest::Approx(20.0 - 4.0));
}

TEST_CASE("realization splits a constant phase") {
  const PhaseGrid grid = PhaseGrid::linspace(0.1, 3.0, 64);
  for (const auto& config : {TwoModeConfig::from_differences(8, 0, 4),
                             TwoModeConfig::from_differences(7, 1, -3)}) {
    const AmplitudeTrace trace = amplitude_trace(config, grid);
    CHECK(std::abs(std::abs(trace.global_phase) - 1.0) < 1e-15);
    CHECK(trace.global_phase.real() >= 0.0);
    for (std::size_t i = 0; i < grid.size(); ++i) {
      CHECK(std::abs(trace.amplitudes[i] - trace.global_phase * trace.realized[i]) < 1e-9);
    }
  }
}

TEST_CASE("non-realizable traces are rejected") {
  const PhaseGrid grid = PhaseGrid::linspace(0.0, 1.0, 3);
  std::vector<Complex> values{{1.0, 0.0}, {0.0, 1.0}, {1.0, 1.0}};
  CHECK_THROWS_WITH_AS(realize_amplitudes(grid, values), doctest::Contains("non-realizable"),
                       NumericalError);
}

TEST_CASE("phase grids validate their values") {
  CHECK_THROWS_AS(PhaseGrid(std::vector<double>{}), InvalidArgument);
  CHECK_THROWS_AS(PhaseGrid(std::vector<double>{0.0, 0.0}), InvalidArgument);
  CHECK_THROWS_AS(PhaseGrid(std::vector<double>{0.0, 4.0}), InvalidArgument);
  CHECK_THROWS_AS(PhaseGrid(std::vector<double>{0.0, std::nan("")}), InvalidArgument);
  const PhaseGrid cells = PhaseGrid::cell_centers(0.0, kPi, 4);
  CHECK(cells[0] == doctest::Approx(kPi / 8));
  CHECK(cells.back() < kPi);
}

TEST_CASE("superpositions") {
  const auto noon = SuperpositionInput::noon_like(8, h(8));
  CHECK(noon.is_path_symmetric());
  CHECK(noon.dense().norm() == doctest::Approx(1.0));
  CHECK_THROWS_AS(SuperpositionInput(4, {{h(4), {1.0, 0.0}}, {h(4), {0.0, 0.0}}}), InvalidArgument);
  CHECK_THROWS_AS(SuperpositionInput(4, {{h(4), {0.5, 0.0}}}), InvalidArgument);

  const Interferometer engine(8);
  for (double phi : {0.2, 1.1, -2.4}) {
    // A path eigenstate input picks up a pure phase.
    const auto eigen = SuperpositionInput::path_eigenstate(8, h(4));
    const Eigen::VectorXd bra = engine.number_basis().vector(h(2));
    const Complex expected = bra[2] * std::exp(Complex(0.0, -phi * 2.0));
    CHECK(std::abs(engine.superposition_amplitude(eigen, h(2), phi) - expected) < 1e-12);
  }
  // Path-symmetric inputs give realizable traces.
  const AmplitudeTrace trace =
      superposition_trace(engine, noon, h(0), PhaseGrid::linspace(-3.0, 3.0, 101));
  CHECK(trace.realized.size() == 101);
}

TEST_CASE("ODE oracle reproduces spectral amplitudes") {
  for (const auto& config : {TwoModeConfig::from_differences(8, 0, 4),
                             TwoModeConfig::from_differences(16, 0, 8),
                             TwoModeConfig::from_differences(8, 4, 4),
                             TwoModeConfig::from_differences(16, 8, 8)}) {
    const std::vector<double> outputs{1.0, 1.4, 1.9, 2.5, 3.0};
    const auto ode = ode_solve_oracle(config, 0.6, outputs);
    for (std::size_t i = 0; i < outputs.size(); ++i) {
      CHECK(std::abs(ode[i] - amplitude(config, outputs[i])) < 1e-6);
    }
  }
}

TEST_CASE("ODE spans must avoid the cot singularities") {
  const auto config = TwoModeConfig::from_differences(8, 0, 4);
  const std::vector<double> near_zero{0.01};
  CHECK_THROWS_AS(ode_solve_oracle(config, 1.0, near_zero), InvalidArgument);
  const std::vector<double> across{0.5};
  CHECK_THROWS_AS(ode_solve_oracle(config, -0.5, across), InvalidArgument);
}

}
