#pragma once

#include <Eigen/Dense>

namespace fdepth {

struct SymmetricEigen {
  Eigen::VectorXd values;   // descending
  Eigen::MatrixXd vectors;  // column j pairs with values(j)
  int sweeps = 0;
};

/// Cyclic Jacobi eigensolver for a symmetric matrix. Stops once the
/// off-diagonal Frobenius norm falls to `tol` times the Frobenius norm of the
/// input; throws ErrorKind::numerical if `max_sweeps` is exhausted first.
SymmetricEigen jacobi_eigen(Eigen::MatrixXd a, double tol = 1e-12, int max_sweeps = 100);

/// Lower Cholesky factor of a symmetric positive definite matrix, rejecting
/// condition numbers above `max_condition`.
Eigen::LLT<Eigen::MatrixXd> spd_factor(const Eigen::MatrixXd& cov, double max_condition = 1e12);

}  // namespace fdepth
