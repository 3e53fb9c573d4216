#pragma once

// Generators for the simulation designs. Every generator is a pure function
// of its arguments and seed; path i draws from substream (seed, i).

#include <cstdint>
#include <memory>
#include <vector>

#include <Eigen/Dense>

#include "fdepth/core.hpp"
#include "fdepth/covkernel.hpp"
#include "fdepth/kernels.hpp"

namespace fdepth::sim {

/// Matern kernel for nu in {1/2, 3/2} with length-scale l.
double matern_kernel(double nu, double l, double s, double t);
KernelMatrix matern_kernel_matrix(const Grid& grid, double nu, double l);

/// Zero-mean Gaussian paths sum_p xi_p phi_p with xi_p ~ N(0, lambda_p).
FunctionalSample gp_sample(const EigenSystem& system, std::size_t n, std::uint64_t seed,
                           kernels::Exec exec = kernels::Exec::parallel);
FunctionalSample gp_sample(const KernelMatrix& kernel, std::size_t n, std::uint64_t seed,
                           kernels::Exec exec = kernels::Exec::parallel);

/// lambda_p = 1 / (p pi)^2, phi_p = sqrt(2) sin(p pi t) on a unit grid, for
/// p = 1..P. P must stay below m - 1 so the sampled sines remain orthonormal.
EigenSystem brownian_bridge_system(const Grid& grid, std::size_t P);

struct GeneratedSample {
  FunctionalSample sample;
  std::shared_ptr<const EigenSystem> system;  // generating system (possibly truncated to the grid)
  RowMatrix coefficients;                     // n x P generating coefficients
};

/// Brownian-bridge eigenbasis with Laplace coefficients of variance lambda_p,
/// summed to P_trunc terms. The returned system keeps min(P_trunc, m - 2) modes.
GeneratedSample brownian_bridge_laplace_sample(const Grid& grid, std::size_t n, std::size_t P_trunc,
                                               std::uint64_t seed, kernels::Exec exec = kernels::Exec::parallel);

enum class FourierKind {
  interleaved,  // sqrt2 sin(pi (p+1) t) for odd p, sqrt2 cos(pi p t) for even p
  with_constant  // 1, then sqrt2 cos(pi p t) for even p, sqrt2 sin(pi (p-1) t) for odd p >= 3
};

/// P x m matrix, row p - 1 holding phi_p.
RowMatrix fourier_basis(FourierKind kind, std::size_t P, const Grid& grid);

/// Coefficient variances per basis index.
struct CoefficientLaw {
  enum class Kind { std_normal, decaying, normal };
  Kind kind = Kind::std_normal;
  double variance = 1.0;  // for Kind::normal

  static CoefficientLaw std_normal() { return {Kind::std_normal, 1.0}; }
  /// Variances 1, ((P-1)/P)^2, ..., (1/P)^2.
  static CoefficientLaw decaying() { return {Kind::decaying, 1.0}; }
  static CoefficientLaw normal(double variance) { return {Kind::normal, variance}; }

  std::vector<double> variances(std::size_t P) const;
};

/// sum_p a_{i,p} phi_p with a_{i,p} ~ N(0, var_p). The system carries var_p as
/// eigenvalues when they are nonincreasing.
GeneratedSample fourier_gp_sample(FourierKind kind, std::size_t P, const CoefficientLaw& law, std::size_t n,
                                  const Grid& grid, std::uint64_t seed, kernels::Exec exec = kernels::Exec::parallel);

struct OutlierMixture {
  FunctionalSample sample;
  std::vector<bool> outlier;  // planted rows come last
};

/// Inliers with unit coefficient variance followed by outliers with
/// `outlier_variance`, interleaved Fourier basis.
OutlierMixture fourier_outlier_mixture(std::size_t P, std::size_t inliers, std::size_t outliers,
                                       double outlier_variance, const Grid& grid, std::uint64_t seed,
                                       kernels::Exec exec = kernels::Exec::parallel);

/// gamma(t) = 6 (e^{a(t+3)/6} - 1) / (e^a - 1) - 3 on [-3, 3]; identity for a = 0.
double two_bump_warp(double a, double t);

struct WarpedSample {
  FunctionalSample sample;
  std::vector<double> shifts;  // a_i
  std::size_t middle = 0;      // index carrying the optional noise
};

/// Two Gaussian bumps with N(1, 1/16) heights composed with gamma_i, a_i
/// equally spaced in [-1, 1]. With `noisy`, the middle path gains white noise
/// of variance 0.01 per grid point from a separate stream.
WarpedSample two_bump_warped_sample(std::size_t n, std::uint64_t seed, bool noisy, std::size_t m = 101);

/// n draws of N(mu, Sigma) via the Cholesky factor; row i uses substream (seed, i).
RowMatrix mvn_sample(const Eigen::VectorXd& mu, const Eigen::MatrixXd& sigma, std::size_t n, std::uint64_t seed);

/// Derives an independent master seed for a named component of a design.
std::uint64_t sub_seed(std::uint64_t seed, std::uint64_t component);

}  // namespace fdepth::sim
