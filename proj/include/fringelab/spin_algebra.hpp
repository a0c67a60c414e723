#pragma once

#include <Eigen/Dense>

#include "fringelab/types.hpp"

namespace fringelab {

/// Schwinger two-mode operators for N photons (spin l = N/2) as dense
/// Hermitian matrices in the J3 eigenbasis. Index k corresponds to the path
/// eigenvalue m3 = N/2 - k.
struct OperatorSet {
  int photons = 0;
  Eigen::MatrixXcd j1;
  Eigen::MatrixXcd j2;
  Eigen::MatrixXcd j3;
  Eigen::VectorXd j3_eigenvalues;  // N/2, N/2 - 1, ..., -N/2

  Eigen::Index dim() const { return j3.rows(); }
};

/// Casimir value N(N+2)/4 of J1^2 + J2^2 + J3^2.
inline double casimir(int photons) { return 0.25 * photons * (photons + 2.0); }

/// Ladder-operator construction. Throws InvalidArgument for N < 1.
OperatorSet build_operator_set(int photons);

enum class Component { J1, J3 };

/// Orthonormal eigenvectors of one J component, stored column-wise and ordered
/// by descending eigenvalue. Components are expressed in the J3 basis; the J1
/// basis is phase-fixed so that every entry is real.
struct MeasurementBasis {
  Component label = Component::J1;
  int photons = 0;
  Eigen::MatrixXd vectors;
  Eigen::VectorXd eigenvalues;

  /// Column for the eigenvalue `value` (a half-integer in {N/2, ..., -N/2}).
  Eigen::VectorXd vector(HalfInteger value) const;
};

/// Diagonalizes J1 and fixes each eigenvector's phase so that its first
/// nonzero component, scanning from m3 = N/2, is real and positive.
MeasurementBasis j1_eigenbasis(const OperatorSet& ops);

/// The trivial path basis (identity columns).
MeasurementBasis j3_eigenbasis(const OperatorSet& ops);

}  // namespace fringelab
