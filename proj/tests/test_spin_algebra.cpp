#include <doctest.h>

#include <cmath>

#include "fringelab/spin_algebra.hpp"
#include "oracles.hpp"

using namespace fringelab;
using Complex = std::complex<double>;

TEST_SUITE("spin_algebra") {

TEST_CASE("commutators close on the Lie algebra") {
  const Complex i(0.0, 1.0);
  for (int n = 1; n <= 20; ++n) {
    const OperatorSet ops = build_operator_set(n);
    CHECK((ops.j1 * ops.j2 - ops.j2 * ops.j1 - i * ops.j3).cwiseAbs().maxCoeff() < 1e-10);
    CHECK((ops.j2 * ops.j3 - ops.j3 * ops.j2 - i * ops.j1).cwiseAbs().maxCoeff() < 1e-10);
    CHECK((ops.j3 * ops.j1 - ops.j1 * ops.j3 - i * ops.j2).cwiseAbs().maxCoeff() < 1e-10);
  }
}

TEST_CASE("Casimir and hermiticity") {
  for (int n : {1, 2, 5, 16, 32}) {
    const OperatorSet ops = build_operator_set(n);
    const Eigen::MatrixXcd c = ops.j1 * ops.j1 + ops.j2 * ops.j2 + ops.j3 * ops.j3;
    const Eigen::MatrixXcd expected =
        casimir(n) * Eigen::MatrixXcd::Identity(ops.dim(), ops.dim());
    CHECK((c - expected).cwiseAbs().maxCoeff() < 1e-10);
    CHECK((ops.j1 - ops.j1.adjoint()).cwiseAbs().maxCoeff() == 0.0);
    CHECK((ops.j2 - ops.j2.adjoint()).cwiseAbs().maxCoeff() == 0.0);
    CHECK(ops.j3_eigenvalues[0] == doctest::Approx(0.5 * n));
  }
}

TEST_CASE("operators agree with an independent construction") {
  for (int n : {1, 4, 9}) {
    const OperatorSet ops = build_operator_set(n);
    const oracle::Spin s = oracle::spin_matrices(n);
    CHECK((ops.j1 - s.j1).cwiseAbs().maxCoeff() < 1e-14);
    CHECK((ops.j2 - s.j2).cwiseAbs().maxCoeff() < 1e-14);
    CHECK((ops.j3 - s.j3).cwiseAbs().maxCoeff() < 1e-14);
  }
}

TEST_CASE("J1 eigenbasis is real, orthonormal, ordered and phase fixed") {
  for (int n = 1; n <= 24; ++n) {
    const OperatorSet ops = build_operator_set(n);
    const MeasurementBasis basis = j1_eigenbasis(ops);
    const auto dim = ops.dim();
    CHECK((basis.vectors.transpose() * basis.vectors - Eigen::MatrixXd::Identity(dim, dim))
              .cwiseAbs()
              .maxCoeff() < 1e-10);
    for (Eigen::Index k = 0; k < dim; ++k) {
      CHECK(basis.eigenvalues[k] == doctest::Approx(0.5 * n - k).epsilon(1e-12));
      const Eigen::VectorXcd v = basis.vectors.col(k).cast<Complex>();
      CHECK((ops.j1 * v - basis.eigenvalues[k] * v).norm() < 1e-10);
      Eigen::Index lead = 0;
      while (std::abs(basis.vectors(lead, k)) < 1e-12) ++lead;
      CHECK(basis.vectors(lead, k) > 0.0);
    }
  }
}

TEST_CASE("J1 eigenbasis matches the rotated J3 basis") {
  for (int n : {1, 2, 7, 16}) {
    const MeasurementBasis basis = j1_eigenbasis(build_operator_set(n));
    CHECK((basis.vectors - oracle::j1_vectors_by_rotation(n)).cwiseAbs().maxCoeff() < 1e-10);
  }
}

TEST_CASE("hand-computed eigenvectors") {
  const MeasurementBasis one = j1_eigenbasis(build_operator_set(1));
  const double r = 1.0 / std::sqrt(2.0);
  CHECK(one.vector(HalfInteger::from_twice(1))[0] == doctest::Approx(r));
  CHECK(one.vector(HalfInteger::from_twice(1))[1] == doctest::Approx(r));
  CHECK(one.vector(HalfInteger::from_twice(-1))[1] == doctest::Approx(-r));

  const Eigen::VectorXd zero = j1_eigenbasis(build_operator_set(2)).vector(HalfInteger{});
  CHECK(zero[0] == doctest::Approx(r));
  CHECK(std::abs(zero[1]) < 1e-14);
  CHECK(zero[2] == doctest::Approx(-r));
}

TEST_CASE("basis round trip returns the identity") {
  for (int n : {3, 8, 16}) {
    const OperatorSet ops = build_operator_set(n);
    const Eigen::MatrixXd v = j1_eigenbasis(ops).vectors;
    const Eigen::MatrixXd id = j3_eigenbasis(ops).vectors;
    CHECK((v * v.transpose() * id - id).cwiseAbs().maxCoeff() < 1e-10);
  }
}

TEST_CASE("invalid inputs name the violated invariant") {
  CHECK_THROWS_WITH_AS(build_operator_set(0), doctest::Contains("N >= 1"), InvalidArgument);
  CHECK_THROWS_WITH_AS(TwoModeConfig::from_differences(8, 1, 0), doctest::Contains("parity"),
                       InvalidArgument);
  CHECK_THROWS_WITH_AS(TwoModeConfig::from_differences(4, 6, 0), doctest::Contains("<= N/2"),
                       InvalidArgument);
  CHECK_THROWS_AS(HalfInteger::from_double(0.3), InvalidArgument);
  CHECK(HalfInteger::from_double(-1.5).twice() == -3);
  CHECK(HalfInteger::from_twice(3).to_string() == "3/2");
  CHECK(HalfInteger::from_twice(-4).to_string() == "-2");
}

}
