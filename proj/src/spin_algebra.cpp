#include "fringelab/spin_algebra.hpp"

#include <Eigen/Eigenvalues>
#include <cmath>
#include <complex>
#include <string>

namespace fringelab {

OperatorSet build_operator_set(int photons) {
  if (photons < 1) {
    throw InvalidArgument("photon number N >= 1 violated: N = " + std::to_string(photons));
  }
  const Eigen::Index dim = photons + 1;
  const double l = 0.5 * photons;

  OperatorSet ops;
  ops.photons = photons;
  ops.j3_eigenvalues.resize(dim);
  for (Eigen::Index k = 0; k < dim; ++k) ops.j3_eigenvalues[k] = l - static_cast<double>(k);

  // J+ |l, m3> = sqrt(l(l+1) - m3(m3+1)) |l, m3+1>; raising moves toward index 0.
  Eigen::MatrixXd raising = Eigen::MatrixXd::Zero(dim, dim);
  for (Eigen::Index k = 1; k < dim; ++k) {
    const double m3 = ops.j3_eigenvalues[k];
    raising(k - 1, k) = std::sqrt(l * (l + 1.0) - m3 * (m3 + 1.0));
  }
  const Eigen::MatrixXd lowering = raising.transpose();
  const std::complex<double> i(0.0, 1.0);

  ops.j1 = (0.5 * (raising + lowering)).cast<std::complex<double>>();
  ops.j2 = (-0.5 * i) * (raising - lowering).cast<std::complex<double>>();
  ops.j3 = ops.j3_eigenvalues.cast<std::complex<double>>().asDiagonal();
  return ops;
}

Eigen::VectorXd MeasurementBasis::vector(HalfInteger value) const {
  validate_half_difference(photons, value, "eigenvalue");
  return vectors.col(descending_index(photons, value));
}

MeasurementBasis j1_eigenbasis(const OperatorSet& ops) {
  const Eigen::Index dim = ops.dim();
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(ops.j1);
  if (solver.info() != Eigen::Success) {
    throw NumericalError("J1 diagonalization failed for N = " + std::to_string(ops.photons));
  }

  MeasurementBasis basis;
  basis.label = Component::J1;
  basis.photons = ops.photons;
  basis.vectors.resize(dim, dim);
  basis.eigenvalues.resize(dim);

  // Eigen returns ascending eigenvalues; store descending.
  for (Eigen::Index col = 0; col < dim; ++col) {
    const Eigen::Index src = dim - 1 - col;
    Eigen::VectorXcd v = solver.eigenvectors().col(src);

    Eigen::Index lead = 0;
    while (lead < dim && std::abs(v[lead]) <= 1e-12) ++lead;
    if (lead == dim) throw NumericalError("zero eigenvector returned by J1 diagonalization");
    v *= std::conj(v[lead]) / std::abs(v[lead]);

    const double imag_residue = v.imag().cwiseAbs().maxCoeff();
    if (imag_residue > 1e-10) {
      throw NumericalError("J1 eigenvector is not real after phase fixing (residue " +
                           std::to_string(imag_residue) + ")");
    }
    basis.vectors.col(col) = v.real().normalized();
    basis.eigenvalues[col] = solver.eigenvalues()[src];
  }
  return basis;
}

MeasurementBasis j3_eigenbasis(const OperatorSet& ops) {
  MeasurementBasis basis;
  basis.label = Component::J3;
  basis.photons = ops.photons;
  basis.vectors = Eigen::MatrixXd::Identity(ops.dim(), ops.dim());
  basis.eigenvalues = ops.j3_eigenvalues;
  return basis;
}

}  // namespace fringelab
