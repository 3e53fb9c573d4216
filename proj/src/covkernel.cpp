#include "fdepth/covkernel.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "fdepth/linalg.hpp"

namespace fdepth {

KernelMatrix::KernelMatrix(Grid grid, Eigen::MatrixXd values) : grid_(grid), values_(std::move(values)) {
  const auto m = static_cast<Eigen::Index>(grid_.size());
  if (values_.rows() != m || values_.cols() != m) {
    throw Error(ErrorKind::grid_mismatch, "kernel matrix size does not match grid");
  }
  if (!values_.allFinite()) throw Error(ErrorKind::input_format, "kernel values must be finite");
  const double scale = values_.cwiseAbs().maxCoeff();
  if ((values_ - values_.transpose()).cwiseAbs().maxCoeff() > 1e-12 * scale) {
    throw Error(ErrorKind::invalid_config, "kernel matrix is not symmetric");
  }
}

EigenSystem::EigenSystem(Grid grid, std::vector<double> eigenvalues, RowMatrix eigenfunctions, double delta,
                         std::optional<std::size_t> raw_count)
    : grid_(grid),
      eigenvalues_(std::move(eigenvalues)),
      eigenfunctions_(std::move(eigenfunctions)),
      delta_(delta),
      raw_count_(raw_count.value_or(eigenvalues_.size())) {
  if (static_cast<std::size_t>(eigenfunctions_.rows()) != eigenvalues_.size() ||
      static_cast<std::size_t>(eigenfunctions_.cols()) != grid_.size()) {
    throw Error(ErrorKind::invalid_config, "eigenfunction table does not match eigenvalues and grid");
  }
  for (std::size_t p = 0; p < eigenvalues_.size(); ++p) {
    if (!(eigenvalues_[p] >= 0.0) || (p > 0 && eigenvalues_[p] > eigenvalues_[p - 1])) {
      throw Error(ErrorKind::invalid_config, "eigenvalues must be nonnegative and nonincreasing");
    }
  }
  if (raw_count_ < eigenvalues_.size()) {
    throw Error(ErrorKind::invalid_config, "raw eigenpair count below retained count");
  }

  const auto w = grid_.weights();
  const Eigen::Map<const Eigen::VectorXd> wv(w.data(), static_cast<Eigen::Index>(w.size()));
  const Eigen::MatrixXd gram = eigenfunctions_ * wv.asDiagonal() * eigenfunctions_.transpose();
  const double err =
      gram.size() > 0 ? (gram - Eigen::MatrixXd::Identity(gram.rows(), gram.cols())).cwiseAbs().maxCoeff() : 0.0;
  if (err > 1e-6) {
    std::ostringstream os;
    os << "eigenfunctions are not orthonormal (max Gram error " << err << ")";
    throw Error(ErrorKind::invalid_config, os.str());
  }
}

GridFunction EigenSystem::eigenfunction(std::size_t p) const {
  const auto row = eigenfunctions_.row(static_cast<Eigen::Index>(p));
  return GridFunction(grid_, std::vector<double>(row.data(), row.data() + row.size()));
}

EigenSystem EigenSystem::leading(std::size_t count) const {
  count = std::min(count, eigenvalues_.size());
  std::vector<double> values(eigenvalues_.begin(), eigenvalues_.begin() + static_cast<std::ptrdiff_t>(count));
  RowMatrix functions = eigenfunctions_.topRows(static_cast<Eigen::Index>(count));
  return EigenSystem(grid_, std::move(values), std::move(functions), delta_, raw_count_);
}

KernelMatrix empirical_covariance(const FunctionalSample& sample, bool center, kernels::Exec exec) {
  if (sample.size() < 2) throw Error(ErrorKind::input_format, "covariance estimation needs n >= 2");
  RowMatrix x = sample.values();
  if (center) {
    const Eigen::RowVectorXd mu = x.colwise().mean();
    x.rowwise() -= mu;
  }
  return KernelMatrix(sample.grid(), kernels::second_moment(x, exec));
}

EigenSystem eigen_decompose(const KernelMatrix& kernel) {
  const Grid& grid = kernel.grid();
  const auto w = grid.weights();
  const auto m = static_cast<Eigen::Index>(grid.size());
  Eigen::VectorXd root(m);
  for (Eigen::Index k = 0; k < m; ++k) root(k) = std::sqrt(w[static_cast<std::size_t>(k)]);

  const Eigen::MatrixXd sym = root.asDiagonal() * kernel.values() * root.asDiagonal();
  const SymmetricEigen eig = jacobi_eigen(sym);

  const double top = std::max(eig.values(0), 0.0);
  const double bottom = eig.values(m - 1);
  if (bottom < -1e-8 * top) {
    throw Error(ErrorKind::numerical, "kernel is not positive semi-definite on the grid");
  }

  std::vector<double> values(static_cast<std::size_t>(m));
  RowMatrix functions(m, m);
  for (Eigen::Index p = 0; p < m; ++p) {
    values[static_cast<std::size_t>(p)] = std::max(eig.values(p), 0.0);
    Eigen::VectorXd phi = eig.vectors.col(p).cwiseQuotient(root);
    // Sign convention: first non-negligible component positive.
    const double peak = phi.cwiseAbs().maxCoeff();
    for (Eigen::Index k = 0; k < m; ++k) {
      if (std::abs(phi(k)) > 1e-8 * peak) {
        if (phi(k) < 0.0) phi = -phi;
        break;
      }
    }
    functions.row(p) = phi.transpose();
  }
  return EigenSystem(grid, std::move(values), std::move(functions));
}

EigenSystem truncate(const EigenSystem& system, double delta, std::size_t n) {
  if (!(delta > 0.0)) throw Error(ErrorKind::invalid_config, "truncation threshold must be positive");
  const auto& lambda = system.eigenvalues();
  std::size_t kept = 0;
  while (kept < lambda.size() && lambda[kept] >= delta) ++kept;
  kept = std::min(kept, n);
  if (kept == 0) {
    std::ostringstream os;
    os << "no eigenvalue reaches the truncation threshold " << delta;
    throw Error(ErrorKind::degenerate_model, os.str());
  }
  std::vector<double> values(lambda.begin(), lambda.begin() + static_cast<std::ptrdiff_t>(kept));
  RowMatrix functions = system.eigenfunctions().topRows(static_cast<Eigen::Index>(kept));
  return EigenSystem(system.grid(), std::move(values), std::move(functions), delta, system.raw_count());
}

double default_delta(double leading_eigenvalue, std::size_t n) {
  if (n < 2) throw Error(ErrorKind::invalid_config, "default threshold needs n >= 2");
  const double nn = static_cast<double>(n);
  // sqrt(2) log 2 < 1, so the cap keeps the leading pair when n = 2.
  return std::max(1e-8, std::min(leading_eigenvalue, leading_eigenvalue / (std::sqrt(nn) * std::log(nn))));
}

std::vector<double> kl_project(const GridFunction& f, const EigenSystem& system) {
  require_same_grid(f.grid(), system.grid());
  const auto w = system.grid().weights();
  const auto v = f.values();
  const auto& phi = system.eigenfunctions();
  std::vector<double> out(system.count());
  for (std::size_t p = 0; p < out.size(); ++p) {
    double acc = 0.0;
    for (std::size_t k = 0; k < v.size(); ++k) {
      acc += w[k] * v[k] * phi(static_cast<Eigen::Index>(p), static_cast<Eigen::Index>(k));
    }
    out[p] = acc;
  }
  return out;
}

CoefficientMatrix project_sample(const FunctionalSample& sample, std::shared_ptr<const EigenSystem> system,
                                 kernels::Exec exec) {
  require_same_grid(sample.grid(), system->grid());
  const auto w = sample.grid().weights();
  RowMatrix coeffs = kernels::project_rows(sample.values(), w, system->eigenfunctions(), exec);
  return CoefficientMatrix{std::move(coeffs), std::move(system)};
}

GridFunction reconstruct(std::span<const double> coeffs, const EigenSystem& system) {
  if (coeffs.size() > system.count()) throw Error(ErrorKind::invalid_config, "more coefficients than eigenpairs");
  std::vector<double> v(system.grid().size(), 0.0);
  const auto& phi = system.eigenfunctions();
  for (std::size_t p = 0; p < coeffs.size(); ++p) {
    for (std::size_t k = 0; k < v.size(); ++k) {
      v[k] += coeffs[p] * phi(static_cast<Eigen::Index>(p), static_cast<Eigen::Index>(k));
    }
  }
  return GridFunction(system.grid(), std::move(v));
}

FunctionalModel fit_model(const FunctionalSample& sample, const FitOptions& options, kernels::Exec exec) {
  const KernelMatrix kernel = empirical_covariance(sample, options.center, exec);
  const EigenSystem full = eigen_decompose(kernel);
  const double delta = options.delta.value_or(default_delta(full.eigenvalue(0), sample.size()));
  auto system = std::make_shared<const EigenSystem>(truncate(full, delta, sample.size()));

  GridFunction center = options.center ? sample.mean() : GridFunction::zeros(sample.grid());
  RowMatrix shifted = sample.values();
  const Eigen::Map<const Eigen::RowVectorXd> mu(center.values().data(),
                                                static_cast<Eigen::Index>(center.size()));
  shifted.rowwise() -= mu;
  CoefficientMatrix coefficients = project_sample(FunctionalSample(sample.grid(), std::move(shifted)), system, exec);
  return FunctionalModel{std::move(center), system, std::move(coefficients), options.center, sample.size()};
}

}  // namespace fdepth
