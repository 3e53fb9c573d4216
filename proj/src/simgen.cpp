#include "fdepth/simgen.hpp"

#include <cmath>
#include <numbers>

#include "fdepth/linalg.hpp"
#include "fdepth/rng.hpp"

namespace fdepth::sim {

namespace {

constexpr double kPi = std::numbers::pi;

// Rows: sum_p coeffs(i, p) basis(p, :).
FunctionalSample combine(const Grid& grid, const RowMatrix& coeffs, const RowMatrix& basis, kernels::Exec exec) {
  return FunctionalSample(grid, kernels::reconstruct_rows(coeffs, basis, exec));
}

RowMatrix normal_coefficients(std::span<const double> sd, std::size_t n, std::uint64_t seed, kernels::Exec exec) {
  RowMatrix out(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(sd.size()));
  kernels::for_each_index(n, exec, [&](std::size_t i) {
    CounterRng rng(seed, i);
    for (std::size_t p = 0; p < sd.size(); ++p) {
      out(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(p)) = sd[p] * rng.normal();
    }
  });
  return out;
}

}  // namespace

std::uint64_t sub_seed(std::uint64_t seed, std::uint64_t component) {
  return mix64(seed + mix64(component ^ 0xa0761d6478bd642fULL));
}

double matern_kernel(double nu, double l, double s, double t) {
  if (!(l > 0.0)) throw Error(ErrorKind::invalid_config, "Matern length-scale must be positive");
  const double r = std::abs(s - t) / l;
  if (nu == 0.5) return std::exp(-r);
  if (nu == 1.5) {
    const double a = std::sqrt(3.0) * r;
    return (1.0 + a) * std::exp(-a);
  }
  throw Error(ErrorKind::invalid_config, "Matern smoothness must be 1/2 or 3/2");
}

KernelMatrix matern_kernel_matrix(const Grid& grid, double nu, double l) {
  matern_kernel(nu, l, 0.0, 0.0);  // validates before tabulating
  return KernelMatrix::tabulate(grid, [&](double s, double t) { return matern_kernel(nu, l, s, t); });
}

FunctionalSample gp_sample(const EigenSystem& system, std::size_t n, std::uint64_t seed, kernels::Exec exec) {
  std::vector<double> sd(system.count());
  for (std::size_t p = 0; p < sd.size(); ++p) sd[p] = std::sqrt(system.eigenvalue(p));
  if (sd.empty()) {
    return FunctionalSample(system.grid(), RowMatrix::Zero(static_cast<Eigen::Index>(n),
                                                           static_cast<Eigen::Index>(system.grid().size())));
  }
  return combine(system.grid(), normal_coefficients(sd, n, seed, exec), system.eigenfunctions(), exec);
}

FunctionalSample gp_sample(const KernelMatrix& kernel, std::size_t n, std::uint64_t seed, kernels::Exec exec) {
  const EigenSystem full = eigen_decompose(kernel);
  // Eigenvalues at rounding level carry no signal, only Jacobi noise.
  const double floor = full.count() > 0 ? 1e-12 * full.eigenvalue(0) : 0.0;
  std::size_t keep = 0;
  while (keep < full.count() && full.eigenvalue(keep) > floor) ++keep;
  return gp_sample(full.leading(keep), n, seed, exec);
}

EigenSystem brownian_bridge_system(const Grid& grid, std::size_t P) {
  if (grid.t0() != 0.0 || grid.t1() != 1.0) {
    throw Error(ErrorKind::invalid_config, "the Brownian-bridge basis lives on [0, 1]");
  }
  if (P + 1 >= grid.size()) {
    throw Error(ErrorKind::invalid_config, "Brownian-bridge modes must stay below the grid's Nyquist index");
  }
  std::vector<double> lambda(P);
  RowMatrix phi(static_cast<Eigen::Index>(P), static_cast<Eigen::Index>(grid.size()));
  for (std::size_t p = 1; p <= P; ++p) {
    lambda[p - 1] = 1.0 / (static_cast<double>(p * p) * kPi * kPi);
    for (std::size_t k = 0; k < grid.size(); ++k) {
      phi(static_cast<Eigen::Index>(p - 1), static_cast<Eigen::Index>(k)) =
          std::sqrt(2.0) * std::sin(kPi * static_cast<double>(p) * grid.point(k));
    }
    // sin(p pi) is not exactly zero in floating point.
    phi(static_cast<Eigen::Index>(p - 1), static_cast<Eigen::Index>(grid.size() - 1)) = 0.0;
  }
  return EigenSystem(grid, std::move(lambda), std::move(phi));
}

GeneratedSample brownian_bridge_laplace_sample(const Grid& grid, std::size_t n, std::size_t P_trunc,
                                               std::uint64_t seed, kernels::Exec exec) {
  if (P_trunc == 0) throw Error(ErrorKind::invalid_config, "P_trunc must be at least 1");
  const auto m = grid.size();
  RowMatrix basis(static_cast<Eigen::Index>(P_trunc), static_cast<Eigen::Index>(m));
  for (std::size_t p = 1; p <= P_trunc; ++p) {
    for (std::size_t k = 0; k < m; ++k) {
      basis(static_cast<Eigen::Index>(p - 1), static_cast<Eigen::Index>(k)) =
          (k == 0 || k + 1 == m) ? 0.0 : std::sqrt(2.0) * std::sin(kPi * static_cast<double>(p) * grid.point(k));
    }
  }
  RowMatrix coeffs(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(P_trunc));
  kernels::for_each_index(n, exec, [&](std::size_t i) {
    CounterRng rng(seed, i);
    for (std::size_t p = 1; p <= P_trunc; ++p) {
      const double lambda = 1.0 / (static_cast<double>(p * p) * kPi * kPi);
      coeffs(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(p - 1)) = rng.laplace(std::sqrt(lambda / 2.0));
    }
  });
  auto system = std::make_shared<const EigenSystem>(brownian_bridge_system(grid, std::min(P_trunc, m - 2)));
  return GeneratedSample{combine(grid, coeffs, basis, exec), std::move(system), std::move(coeffs)};
}

RowMatrix fourier_basis(FourierKind kind, std::size_t P, const Grid& grid) {
  RowMatrix out(static_cast<Eigen::Index>(P), static_cast<Eigen::Index>(grid.size()));
  const double r2 = std::sqrt(2.0);
  for (std::size_t p = 1; p <= P; ++p) {
    const double fp = static_cast<double>(p);
    for (std::size_t k = 0; k < grid.size(); ++k) {
      const double t = grid.point(k);
      double v = 0.0;
      if (kind == FourierKind::interleaved) {
        v = p % 2 == 1 ? r2 * std::sin(kPi * (fp + 1.0) * t) : r2 * std::cos(kPi * fp * t);
      } else if (p == 1) {
        v = 1.0;
      } else {
        v = p % 2 == 0 ? r2 * std::cos(kPi * fp * t) : r2 * std::sin(kPi * (fp - 1.0) * t);
      }
      out(static_cast<Eigen::Index>(p - 1), static_cast<Eigen::Index>(k)) = v;
    }
  }
  return out;
}

std::vector<double> CoefficientLaw::variances(std::size_t P) const {
  std::vector<double> v(P, 1.0);
  if (kind == Kind::normal) {
    if (!(variance >= 0.0)) throw Error(ErrorKind::invalid_config, "coefficient variance must be nonnegative");
    std::fill(v.begin(), v.end(), variance);
  } else if (kind == Kind::decaying) {
    for (std::size_t p = 0; p < P; ++p) {
      const double r = static_cast<double>(P - p) / static_cast<double>(P);
      v[p] = r * r;
    }
  }
  return v;
}

GeneratedSample fourier_gp_sample(FourierKind kind, std::size_t P, const CoefficientLaw& law, std::size_t n,
                                  const Grid& grid, std::uint64_t seed, kernels::Exec exec) {
  if (P == 0) throw Error(ErrorKind::invalid_config, "Fourier basis needs P >= 1");
  RowMatrix basis = fourier_basis(kind, P, grid);
  const auto var = law.variances(P);
  std::vector<double> sd(P);
  for (std::size_t p = 0; p < P; ++p) sd[p] = std::sqrt(var[p]);
  RowMatrix coeffs = normal_coefficients(sd, n, seed, exec);
  FunctionalSample sample = combine(grid, coeffs, basis, exec);
  auto system = std::make_shared<const EigenSystem>(grid, var, std::move(basis));
  return GeneratedSample{std::move(sample), std::move(system), std::move(coeffs)};
}

OutlierMixture fourier_outlier_mixture(std::size_t P, std::size_t inliers, std::size_t outliers,
                                       double outlier_variance, const Grid& grid, std::uint64_t seed,
                                       kernels::Exec exec) {
  const RowMatrix basis = fourier_basis(FourierKind::interleaved, P, grid);
  const std::size_t n = inliers + outliers;
  RowMatrix coeffs(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(P));
  const double outlier_sd = std::sqrt(outlier_variance);
  kernels::for_each_index(n, exec, [&](std::size_t i) {
    CounterRng rng(seed, i);
    const double sd = i < inliers ? 1.0 : outlier_sd;
    for (std::size_t p = 0; p < P; ++p) coeffs(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(p)) = sd * rng.normal();
  });
  std::vector<bool> flags(n, false);
  for (std::size_t i = inliers; i < n; ++i) flags[i] = true;
  return OutlierMixture{combine(grid, coeffs, basis, exec), std::move(flags)};
}

double two_bump_warp(double a, double t) {
  if (a == 0.0) return t;
  return 6.0 * std::expm1(a * (t + 3.0) / 6.0) / std::expm1(a) - 3.0;
}

WarpedSample two_bump_warped_sample(std::size_t n, std::uint64_t seed, bool noisy, std::size_t m) {
  if (n % 2 == 0) throw Error(ErrorKind::invalid_config, "the warped design needs an odd sample size");
  const Grid grid(-3.0, 3.0, m);
  WarpedSample out{FunctionalSample(grid, RowMatrix::Zero(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(m))),
                   std::vector<double>(n), n / 2};
  RowMatrix values(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(m));
  for (std::size_t i = 0; i < n; ++i) {
    const double a = n == 1 ? 0.0 : -1.0 + 2.0 * static_cast<double>(i) / static_cast<double>(n - 1);
    // Exact zero for the middle shift keeps gamma the identity there.
    out.shifts[i] = i == out.middle ? 0.0 : a;
    CounterRng rng(seed, i);
    const double c1 = 1.0 + 0.25 * rng.normal();
    const double c2 = 1.0 + 0.25 * rng.normal();
    for (std::size_t k = 0; k < m; ++k) {
      const double g = k == 0 ? -3.0 : (k + 1 == m ? 3.0 : two_bump_warp(out.shifts[i], grid.point(k)));
      values(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(k)) =
          c1 * std::exp(-(g - 1.5) * (g - 1.5) / 2.0) + c2 * std::exp(-(g + 1.5) * (g + 1.5) / 2.0);
    }
  }
  if (noisy) {
    CounterRng rng(sub_seed(seed, 1), 0);
    for (std::size_t k = 0; k < m; ++k) {
      values(static_cast<Eigen::Index>(out.middle), static_cast<Eigen::Index>(k)) += 0.1 * rng.normal();
    }
  }
  out.sample = FunctionalSample(grid, std::move(values));
  return out;
}

RowMatrix mvn_sample(const Eigen::VectorXd& mu, const Eigen::MatrixXd& sigma, std::size_t n, std::uint64_t seed) {
  const auto d = mu.size();
  if (sigma.rows() != d || sigma.cols() != d) throw Error(ErrorKind::invalid_config, "covariance shape mismatch");
  const Eigen::MatrixXd L = spd_factor(sigma).matrixL();
  RowMatrix out(static_cast<Eigen::Index>(n), d);
  Eigen::VectorXd z(d);
  for (std::size_t i = 0; i < n; ++i) {
    CounterRng rng(seed, i);
    for (Eigen::Index j = 0; j < d; ++j) z(j) = rng.normal();
    out.row(static_cast<Eigen::Index>(i)) = (mu + L * z).transpose();
  }
  return out;
}

}  // namespace fdepth::sim
