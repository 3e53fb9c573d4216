#pragma once

#include <cstddef>
#include <vector>

#include "fdepth/core.hpp"
#include "fdepth/kernels.hpp"

namespace fdepth {

/// Boundary-preserving, strictly increasing reparameterization of [0, 1].
class WarpingFunction {
 public:
  WarpingFunction(Grid grid, std::vector<double> values);
  static WarpingFunction identity(std::size_t m);

  const Grid& grid() const noexcept { return grid_; }
  std::span<const double> values() const noexcept { return values_; }
  double operator[](std::size_t k) const noexcept { return values_[k]; }
  GridFunction as_function() const { return GridFunction(grid_, values_); }

  /// gamma^{-1}, by linear interpolation back onto the grid.
  WarpingFunction inverse() const;
  /// (this o inner)(t) = this(inner(t)).
  WarpingFunction compose(const WarpingFunction& inner) const;

 private:
  Grid grid_;
  std::vector<double> values_;
};

/// Square-root velocity function sign(f') sqrt(|f'|). Derivatives are taken
/// in the grid's own time units.
GridFunction srvf(const GridFunction& f);

/// (q o gamma) sqrt(gamma') with q sampled on the unit-interval version of
/// its grid.
std::vector<double> warp_srvf(std::span<const double> q, const WarpingFunction& gamma);

/// Elastic objective || (q_u o gamma) sqrt(gamma') - q_v ||_2^2 over [0, 1].
double warping_objective(std::span<const double> q_u, std::span<const double> q_v, const WarpingFunction& gamma);

/// Dynamic-programming minimizer of the elastic objective between two SRVFs
/// sampled on a common m-point grid, time rescaled to [0, 1]. Paths move
/// through lattice steps (di, dj) with di, dj in 1..5 and gcd 1; equal-cost
/// paths resolve toward the diagonal.
WarpingFunction optimal_warping_srvf(std::span<const double> q_u, std::span<const double> q_v);

/// gamma minimizing || (q(u) o gamma) sqrt(gamma') - q(v) ||; aligns u to v.
WarpingFunction optimal_warping(const GridFunction& u, const GridFunction& v);

struct KarcherOptions {
  int max_iter = 20;
  double tol = 1e-4;
};

struct KarcherResult {
  GridFunction template_function;
  std::vector<WarpingFunction> warpings;  // gamma_i aligning f_i to the template
  std::vector<double> template_srvf;
  int iterations = 0;
  bool converged = false;
};

/// Karcher mean in SRVF space with per-iteration recentering.
KarcherResult karcher_mean(const FunctionalSample& sample, const KarcherOptions& options = {},
                           kernels::Exec exec = kernels::Exec::parallel);

double warp_l2_distance(const WarpingFunction& gamma);
double fisher_rao_distance(const WarpingFunction& gamma);

}  // namespace fdepth
