#pragma once

#include <cstddef>
#include <memory>
#include <optional>
#include <vector>

#include <Eigen/Dense>

#include "fdepth/core.hpp"
#include "fdepth/kernels.hpp"

namespace fdepth {

/// Covariance kernel sampled on a grid (symmetric m x m).
class KernelMatrix {
 public:
  KernelMatrix(Grid grid, Eigen::MatrixXd values);

  /// Tabulates k(s, t) on the grid.
  template <class Fn>
  static KernelMatrix tabulate(const Grid& grid, Fn&& k) {
    const auto m = static_cast<Eigen::Index>(grid.size());
    Eigen::MatrixXd v(m, m);
    for (Eigen::Index i = 0; i < m; ++i) {
      for (Eigen::Index j = 0; j <= i; ++j) {
        v(i, j) = k(grid.point(static_cast<std::size_t>(i)), grid.point(static_cast<std::size_t>(j)));
        v(j, i) = v(i, j);
      }
    }
    return KernelMatrix(grid, std::move(v));
  }

  const Grid& grid() const noexcept { return grid_; }
  const Eigen::MatrixXd& values() const noexcept { return values_; }
  double operator()(std::size_t s, std::size_t t) const {
    return values_(static_cast<Eigen::Index>(s), static_cast<Eigen::Index>(t));
  }

 private:
  Grid grid_;
  Eigen::MatrixXd values_;
};

/// Eigenpairs of a covariance operator, nonincreasing eigenvalues, with
/// eigenfunctions orthonormal under the trapezoid inner product.
class EigenSystem {
 public:
  /// `delta` is 0 for an untruncated system. `raw_count` defaults to the
  /// number of pairs supplied.
  EigenSystem(Grid grid, std::vector<double> eigenvalues, RowMatrix eigenfunctions, double delta = 0.0,
              std::optional<std::size_t> raw_count = std::nullopt);

  const Grid& grid() const noexcept { return grid_; }
  std::size_t count() const noexcept { return eigenvalues_.size(); }
  std::size_t raw_count() const noexcept { return raw_count_; }
  double delta() const noexcept { return delta_; }
  const std::vector<double>& eigenvalues() const noexcept { return eigenvalues_; }
  double eigenvalue(std::size_t p) const { return eigenvalues_.at(p); }
  /// C x m, row p holds eigenfunction p.
  const RowMatrix& eigenfunctions() const noexcept { return eigenfunctions_; }
  GridFunction eigenfunction(std::size_t p) const;

  /// Leading `count` pairs, keeping delta and raw_count.
  EigenSystem leading(std::size_t count) const;

 private:
  Grid grid_;
  std::vector<double> eigenvalues_;
  RowMatrix eigenfunctions_;
  double delta_;
  std::size_t raw_count_;
};

/// KL coefficients of n observations against a shared eigensystem.
struct CoefficientMatrix {
  RowMatrix coeffs;  // n x C
  std::shared_ptr<const EigenSystem> system;
};

KernelMatrix empirical_covariance(const FunctionalSample& sample, bool center,
                                  kernels::Exec exec = kernels::Exec::parallel);

/// Eigenpairs of the integral operator discretized with trapezoid weights W:
/// Jacobi on W^{1/2} K W^{1/2}, phi = W^{-1/2} u. Negative eigenvalues are
/// clipped to zero after a PSD sanity check (smallest >= -1e-8 * largest).
EigenSystem eigen_decompose(const KernelMatrix& kernel);

/// Keeps the leading min(#{lambda >= delta}, n) pairs.
EigenSystem truncate(const EigenSystem& system, double delta, std::size_t n);

/// max(1e-8, min(lambda_1, lambda_1 / (sqrt(n) log n))).
double default_delta(double leading_eigenvalue, std::size_t n);

std::vector<double> kl_project(const GridFunction& f, const EigenSystem& system);

CoefficientMatrix project_sample(const FunctionalSample& sample, std::shared_ptr<const EigenSystem> system,
                                 kernels::Exec exec = kernels::Exec::parallel);

/// sum_p coeffs_p phi_p on the system grid.
GridFunction reconstruct(std::span<const double> coeffs, const EigenSystem& system);

struct FitOptions {
  std::optional<double> delta;  // default_delta() when unset
  bool center = true;
};

/// Fitting half of the depth pipeline: covariance, eigendecomposition,
/// truncation and projection of the (centered) observations.
struct FunctionalModel {
  GridFunction center;  // sample mean, or zero when fitted without centering
  std::shared_ptr<const EigenSystem> system;
  CoefficientMatrix coefficients;  // of f_i - center
  bool centered = true;
  std::size_t n = 0;
};

FunctionalModel fit_model(const FunctionalSample& sample, const FitOptions& options = {},
                          kernels::Exec exec = kernels::Exec::parallel);

}  // namespace fdepth
