#include <doctest.h>

#include <cmath>
#include <cstdlib>
#include <numbers>

#include "fringelab/semiclassical.hpp"
#include "oracles.hpp"

using namespace fringelab;

namespace {

constexpr double kPi = std::numbers::pi;

TwoModeConfig cfg(int n, int in, int out) { return TwoModeConfig::from_differences(n, in, out); }

}  // namespace

TEST_SUITE("semiclassical") {

TEST_CASE("support endpoints against closed forms") {
  // m_psi = 0: sin(phi) >= |m| / L.
  for (const auto& [n, out] : {std::pair{8, 4}, {16, 8}, {12, 2}}) {
    const double l = std::sqrt(casimir(n));
    const double edge = std::asin(0.5 * out / l);
    const auto support = classical_support(cfg(n, 0, out));
    REQUIRE(support.size() == 1);
    CHECK(support[0].lower == doctest::Approx(edge).epsilon(1e-9));
    CHECK(support[0].upper == doctest::Approx(kPi - edge).epsilon(1e-9));
  }
  // m_psi = m: 1 + cos(phi) >= 2 m^2 / L^2.
  for (const auto& [n, d] : {std::pair{8, 4}, {16, 8}}) {
    const double m = 0.5 * d;
    const double edge = std::acos(2.0 * m * m / casimir(n) - 1.0);
    const auto support = classical_support(cfg(n, d, d));
    REQUIRE(support.size() == 1);
    CHECK(support[0].lower == 0.0);
    CHECK(support[0].upper == doctest::Approx(edge).epsilon(1e-9));
  }
  // Equal case: whole half period.
  const auto full = classical_support(cfg(16, 0, 0));
  REQUIRE(full.size() == 1);
  CHECK(full[0].lower == 0.0);
  CHECK(full[0].upper == kPi);
}

TEST_CASE("the N+1 length puts the m = m_psi boundary at 2 pi / 3 for m = (N+1)/4") {
  const auto support = classical_support(cfg(5, 3, 3), VectorLength::NPlusOne);
  REQUIRE(support.size() == 1);
  CHECK(support[0].upper == doctest::Approx(2.0 * kPi / 3.0).epsilon(1e-9));
}

TEST_CASE("radicand equals the weak-identity right-hand side") {
  for (double phi : {0.3, 1.0, 2.0, 2.9}) {
    const auto c = cfg(10, 2, -4);
    CHECK(classical_radicand(c, phi) == doctest::Approx(weak_identity_rhs(c, phi)).epsilon(1e-12));
  }
}

TEST_CASE("removable limits and divergences at sin(phi) = 0") {
  CHECK(std::isfinite(classical_radicand(cfg(8, 4, 4), 0.0)));
  CHECK(std::isfinite(classical_radicand(cfg(8, 4, -4), kPi)));
  CHECK_THROWS_AS(classical_radicand(cfg(8, 0, 4), 0.0), InvalidArgument);
  CHECK(classical_j3(cfg(8, 0, 4), 0.2).evanescent);
  CHECK_FALSE(classical_j3(cfg(8, 0, 4), kPi / 2).evanescent);
}

TEST_CASE("action against fixed-order Gauss-Legendre") {
  for (const auto& c : {cfg(16, 0, 8), cfg(8, 0, 4), cfg(16, 8, 8)}) {
    const auto iv = classical_support(c).front();
    auto j3 = [&](double phi) { return std::sqrt(std::max(0.0, classical_radicand(c, phi))); };
    const double total = oracle::gauss_legendre_cosine_map(j3, iv.lower, iv.upper);
    CHECK(std::abs(action(c, iv.upper, iv.lower, 0.0) + total) < 1e-9);
    const double mid = iv.center();
    CHECK(std::abs(action(c, mid, iv.lower, 1.5) - (1.5 - oracle::gauss_legendre_cosine_map(
                                                               j3, iv.lower, mid))) < 1e-9);
  }
}

TEST_CASE("equal-case action is linear in phi") {
  for (int n : {8, 16}) {
    const auto c = cfg(n, 0, 0);
    const double slope = 0.5 * std::sqrt(n * (n + 2.0));
    for (double phi : {0.2, 1.0, 2.8}) {
      CHECK(action(c, phi, kPi / 2, -kPi * n / 4) ==
            doctest::Approx(-kPi * n / 4 - slope * (phi - kPi / 2)).epsilon(1e-12));
    }
    CHECK(action(c, 1.0, kPi / 2, -kPi * n / 4, VectorLength::NPlusOne) ==
          doctest::Approx(-0.5 * ((n + 1.0) * 1.0 - kPi / 2)).epsilon(1e-12));
  }
}

TEST_CASE("action rejects phases in different support intervals") {
  CHECK_THROWS_AS(action(cfg(8, 0, 4), 0.1, 1.5, 0.0), InvalidArgument);
  CHECK_THROWS_AS(action(cfg(8, 0, 4), -1.5, 1.5, 0.0), InvalidArgument);
  CHECK(std::abs(action(cfg(8, 0, 4), -1.2, -1.5, 0.0) + action(cfg(8, 0, 4), 1.2, 1.5, 0.0)) < 1e-12);
}

TEST_CASE("envelope satisfies the continuity equation") {
  for (const auto& c : {cfg(16, 0, 8), cfg(8, 4, 4), cfg(12, 0, 0), cfg(9, 3, -1)}) {
    const auto iv = classical_support(c).front();
    for (int k = 1; k < 10; ++k) {
      const double phi = iv.lower + (iv.upper - iv.lower) * (0.1 + 0.08 * k);
      if (std::abs(std::sin(phi)) < 1e-3) continue;
      CHECK(std::abs(continuity_residual(c, phi)) < 1e-8);
    }
  }
  CHECK_THROWS_AS(envelope(cfg(8, 0, 4), 0.2), InvalidArgument);
  CHECK(envelope(cfg(16, 0, 0), kPi / 2) ==
        doctest::Approx(std::sqrt(kRho0 / std::sqrt(casimir(16)))));
}

TEST_CASE("closed-form equal-case approximation") {
  const auto c = cfg(16, 0, 0);
  ApproximationOptions options;
  options.length = VectorLength::NPlusOne;
  options.anchor = ActionAnchor::EqualCaseParity;
  const SemiclassicalModel model(c, options);
  for (double phi : {0.5, 1.3, -2.1}) {
    const double a = std::abs(phi);
    const double expected = 2.0 * std::sqrt(1.0 / (kPi * 17.0 * std::sin(a))) *
                            std::cos(8.5 * a - kPi / 4.0);
    CHECK(model.approx_amplitude(phi) == doctest::Approx(expected).epsilon(1e-10));
  }
  CHECK_THROWS_AS(model.approx_amplitude(0.01), InvalidArgument);
  options.anchor = ActionAnchor::EqualCaseParity;
  CHECK_THROWS_AS(SemiclassicalModel(cfg(16, 0, 8), options), InvalidArgument);
}

TEST_CASE("calibrated approximation tracks the exact amplitude inside the support") {
  for (const auto& [c, tolerance] : {std::pair{cfg(16, 0, 8), 0.05}, {cfg(16, 8, 8), 0.05},
                                     {cfg(16, 0, 0), 0.05}}) {
    const SemiclassicalModel model(c);
    const Complex unit = std::conj(model.reference_phase());
    const auto iv = model.support().front();
    double worst = 0.0;
    for (int k = 0; k <= 100; ++k) {
      const double phi = iv.lower + 0.15 + (iv.upper - iv.lower - 0.3) * k / 100.0;
      if (!model.is_valid(phi) || std::sin(phi) < 0.15) continue;
      const double exact = (unit * amplitude(c, phi)).real();
      worst = std::max(worst, std::abs(exact - model.approx_amplitude(phi)));
    }
    CAPTURE(c.describe());
    CHECK(worst < tolerance);
  }
}

TEST_CASE("curve fields") {
  const auto c = cfg(8, 0, 4);
  const SemiclassicalCurve curve = semiclassical_curve(c, PhaseGrid::linspace(-kPi, kPi, 65));
  CHECK(curve.rho0 == doctest::Approx(1.0 / (2.0 * kPi)));
  for (std::size_t i = 0; i < curve.grid.size(); ++i) {
    if (curve.evanescent[i]) {
      CHECK(std::isnan(curve.envelope[i]));
      CHECK(std::isnan(curve.action[i]));
    } else if (std::isfinite(curve.j3_classical[i])) {
      CHECK(curve.envelope[i] > 0.0);
    }
  }
}

TEST_CASE("Monte-Carlo histogram is deterministic across thread counts") {
  setenv("FRINGELAB_THREADS", "1", 1);
  const auto one = classical_envelope_oracle(16, HalfInteger{}, kPi / 2, 300000, 42);
  setenv("FRINGELAB_THREADS", "4", 1);
  const auto four = classical_envelope_oracle(16, HalfInteger{}, kPi / 2, 300000, 42);
  unsetenv("FRINGELAB_THREADS");
  CHECK(one.counts == four.counts);
  std::uint64_t total = 0;
  for (auto c : one.counts) total += c;
  CHECK(total == 300000);
  const auto other = classical_envelope_oracle(16, HalfInteger{}, kPi / 2, 300000, 43);
  CHECK(other.counts != one.counts);
}

TEST_CASE("Monte-Carlo histogram follows 2 A^2") {
  const auto hist = classical_envelope_oracle(12, HalfInteger::from_twice(2), 1.2, 400000, 5);
  const double radius = std::sqrt(0.25 * 13.0 * 13.0 - 1.0);
  for (std::size_t k = 0; k < hist.m_values.size(); ++k) {
    const double m = hist.m_values[k].value();
    const double center = std::cos(1.2) * 1.0;
    if (std::abs(m - center) > std::sin(1.2) * radius - 2.0) continue;
    const TwoModeConfig c{12, HalfInteger::from_twice(2), hist.m_values[k]};
    const double a = envelope(c, 1.2, VectorLength::NPlusOne);
    CAPTURE(m);
    CHECK(std::abs(hist.frequencies[k] - 2.0 * a * a) < 4.0 * hist.standard_errors[k]);
  }
}

TEST_CASE("Monte-Carlo input validation") {
  CHECK_THROWS_WITH_AS(classical_envelope_oracle(16, HalfInteger{}, 1.0, 999, 1),
                       doctest::Contains("10^4"), InvalidArgument);
  CHECK_THROWS_AS(classical_envelope_oracle(16, HalfInteger::from_twice(1), 1.0, 20000, 1),
                  InvalidArgument);
}

}
