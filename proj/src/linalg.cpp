#include "fdepth/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <vector>

#include "fdepth/error.hpp"

namespace fdepth {

namespace {

double off_diagonal_norm(const Eigen::MatrixXd& a) {
  double s = 0.0;
  for (Eigen::Index j = 0; j < a.cols(); ++j) {
    for (Eigen::Index i = 0; i < a.rows(); ++i) {
      if (i != j) s += a(i, j) * a(i, j);
    }
  }
  return std::sqrt(s);
}

void rotate(Eigen::MatrixXd& a, Eigen::MatrixXd& v, Eigen::Index p, Eigen::Index q) {
  const double apq = a(p, q);
  if (apq == 0.0) return;
  const double theta = (a(q, q) - a(p, p)) / (2.0 * apq);
  const double t = (theta >= 0.0 ? 1.0 : -1.0) / (std::abs(theta) + std::sqrt(theta * theta + 1.0));
  const double c = 1.0 / std::sqrt(t * t + 1.0);
  const double s = t * c;
  const Eigen::Index n = a.rows();

  double* colp = a.col(p).data();
  double* colq = a.col(q).data();
  for (Eigen::Index k = 0; k < n; ++k) {
    const double x = colp[k];
    const double y = colq[k];
    colp[k] = c * x - s * y;
    colq[k] = s * x + c * y;
  }
  for (Eigen::Index k = 0; k < n; ++k) {
    const double x = a(p, k);
    const double y = a(q, k);
    a(p, k) = c * x - s * y;
    a(q, k) = s * x + c * y;
  }
  a(p, q) = 0.0;
  a(q, p) = 0.0;

  double* vp = v.col(p).data();
  double* vq = v.col(q).data();
  for (Eigen::Index k = 0; k < n; ++k) {
    const double x = vp[k];
    const double y = vq[k];
    vp[k] = c * x - s * y;
    vq[k] = s * x + c * y;
  }
}

}  // namespace

SymmetricEigen jacobi_eigen(Eigen::MatrixXd a, double tol, int max_sweeps) {
  if (a.rows() != a.cols()) throw Error(ErrorKind::invalid_config, "jacobi_eigen needs a square matrix");
  const Eigen::Index n = a.rows();
  Eigen::MatrixXd v = Eigen::MatrixXd::Identity(n, n);
  const double scale = a.norm();

  int sweep = 0;
  if (scale > 0.0) {
    while (off_diagonal_norm(a) > tol * scale) {
      if (sweep == max_sweeps) {
        throw Error(ErrorKind::numerical, "Jacobi eigensolver did not converge");
      }
      for (Eigen::Index p = 0; p + 1 < n; ++p) {
        for (Eigen::Index q = p + 1; q < n; ++q) rotate(a, v, p, q);
      }
      ++sweep;
    }
  }

  std::vector<Eigen::Index> order(static_cast<std::size_t>(n));
  std::iota(order.begin(), order.end(), Eigen::Index{0});
  std::stable_sort(order.begin(), order.end(), [&](Eigen::Index i, Eigen::Index j) { return a(i, i) > a(j, j); });

  SymmetricEigen out;
  out.values.resize(n);
  out.vectors.resize(n, n);
  for (Eigen::Index j = 0; j < n; ++j) {
    out.values(j) = a(order[static_cast<std::size_t>(j)], order[static_cast<std::size_t>(j)]);
    out.vectors.col(j) = v.col(order[static_cast<std::size_t>(j)]);
  }
  out.sweeps = sweep;
  return out;
}

Eigen::LLT<Eigen::MatrixXd> spd_factor(const Eigen::MatrixXd& cov, double max_condition) {
  if (cov.rows() != cov.cols() || cov.rows() == 0) {
    throw Error(ErrorKind::invalid_config, "covariance must be a non-empty square matrix");
  }
  const double asym = (cov - cov.transpose()).cwiseAbs().maxCoeff();
  if (asym > 1e-12 * std::max(1.0, cov.cwiseAbs().maxCoeff())) {
    throw Error(ErrorKind::invalid_config, "covariance is not symmetric");
  }
  const auto spectrum = jacobi_eigen(cov);
  const double top = spectrum.values(0);
  const double bottom = spectrum.values(spectrum.values.size() - 1);
  if (!(bottom > 0.0) || top / bottom > max_condition) {
    throw Error(ErrorKind::degenerate_model, "covariance is singular, indefinite or ill-conditioned");
  }
  Eigen::LLT<Eigen::MatrixXd> llt(cov);
  if (llt.info() != Eigen::Success) {
    throw Error(ErrorKind::degenerate_model, "covariance is not positive definite");
  }
  return llt;
}

}  // namespace fdepth
