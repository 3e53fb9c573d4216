#include "fdepth/kernels.hpp"

#include <cstdlib>
#include <string>

#include <omp.h>

namespace fdepth::kernels {

namespace {
int g_thread_limit = 0;
}

void set_thread_limit(int threads) {
  g_thread_limit = threads > 0 ? threads : 0;
  if (g_thread_limit > 0) omp_set_num_threads(g_thread_limit);
}

void configure_threads() {
  if (const char* env = std::getenv("FDEPTH_THREADS")) {
    try {
      set_thread_limit(std::stoi(env));
    } catch (const std::exception&) {
      // Unparseable values leave the runtime default in place.
    }
  }
}

int thread_limit() { return g_thread_limit > 0 ? g_thread_limit : omp_get_max_threads(); }

Eigen::MatrixXd second_moment(const RowMatrix& x, Exec exec) {
  const Eigen::Index n = x.rows();
  const Eigen::Index m = x.cols();
  Eigen::MatrixXd k = Eigen::MatrixXd::Zero(m, m);
  const double inv_n = 1.0 / static_cast<double>(n);

  if (exec == Exec::serial) {
    for (Eigen::Index s = 0; s < m; ++s) {
      for (Eigen::Index t = s; t < m; ++t) {
        double acc = 0.0;
        for (Eigen::Index i = 0; i < n; ++i) acc += x(i, s) * x(i, t);
        k(s, t) = acc * inv_n;
        k(t, s) = k(s, t);
      }
    }
    return k;
  }

  // Column-major copy so each observation column is contiguous per grid point.
  const Eigen::MatrixXd xc = x;
#pragma omp parallel for schedule(dynamic, 4)
  for (Eigen::Index s = 0; s < m; ++s) {
    const double* xs = xc.col(s).data();
    for (Eigen::Index t = s; t < m; ++t) {
      const double* xt = xc.col(t).data();
      double acc = 0.0;
      for (Eigen::Index i = 0; i < n; ++i) acc += xs[i] * xt[i];
      k(s, t) = acc * inv_n;
    }
  }
  for (Eigen::Index s = 0; s < m; ++s) {
    for (Eigen::Index t = s + 1; t < m; ++t) k(t, s) = k(s, t);
  }
  return k;
}

RowMatrix project_rows(const RowMatrix& x, std::span<const double> weights, const RowMatrix& basis, Exec exec) {
  const Eigen::Index n = x.rows();
  const Eigen::Index m = x.cols();
  const Eigen::Index c = basis.rows();
  RowMatrix out(n, c);

  auto row_kernel = [&](Eigen::Index i) {
    for (Eigen::Index p = 0; p < c; ++p) {
      double acc = 0.0;
      for (Eigen::Index k = 0; k < m; ++k) acc += weights[static_cast<std::size_t>(k)] * x(i, k) * basis(p, k);
      out(i, p) = acc;
    }
  };

  if (exec == Exec::serial) {
    for (Eigen::Index i = 0; i < n; ++i) row_kernel(i);
  } else {
#pragma omp parallel for schedule(static)
    for (Eigen::Index i = 0; i < n; ++i) row_kernel(i);
  }
  return out;
}

RowMatrix reconstruct_rows(const RowMatrix& coeffs, const RowMatrix& basis, Exec exec) {
  const Eigen::Index n = coeffs.rows();
  const Eigen::Index c = coeffs.cols();
  const Eigen::Index m = basis.cols();
  RowMatrix out = RowMatrix::Zero(n, m);

  auto row_kernel = [&](Eigen::Index j) {
    double* dst = out.row(j).data();
    for (Eigen::Index p = 0; p < c; ++p) {
      const double a = coeffs(j, p);
      const double* src = basis.row(p).data();
      for (Eigen::Index k = 0; k < m; ++k) dst[k] += a * src[k];
    }
  };

  if (exec == Exec::serial) {
    for (Eigen::Index j = 0; j < n; ++j) row_kernel(j);
  } else {
#pragma omp parallel for schedule(static)
    for (Eigen::Index j = 0; j < n; ++j) row_kernel(j);
  }
  return out;
}

Eigen::VectorXd weighted_square_sums(const RowMatrix& coeffs, std::span<const double> scale, Exec exec) {
  const Eigen::Index n = coeffs.rows();
  const Eigen::Index c = coeffs.cols();
  Eigen::VectorXd out(n);
  auto row_kernel = [&](Eigen::Index j) {
    double acc = 0.0;
    for (Eigen::Index p = 0; p < c; ++p) acc += coeffs(j, p) * coeffs(j, p) * scale[static_cast<std::size_t>(p)];
    out(j) = acc;
  };
  if (exec == Exec::serial) {
    for (Eigen::Index j = 0; j < n; ++j) row_kernel(j);
  } else {
#pragma omp parallel for schedule(static)
    for (Eigen::Index j = 0; j < n; ++j) row_kernel(j);
  }
  return out;
}

std::size_t count_at_least(std::span<const double> reference, double threshold, Exec exec) {
  const auto n = static_cast<long long>(reference.size());
  long long hits = 0;
  if (exec == Exec::serial) {
    for (long long j = 0; j < n; ++j) hits += reference[static_cast<std::size_t>(j)] >= threshold ? 1 : 0;
  } else {
#pragma omp parallel for reduction(+ : hits) schedule(static)
    for (long long j = 0; j < n; ++j) hits += reference[static_cast<std::size_t>(j)] >= threshold ? 1 : 0;
  }
  return static_cast<std::size_t>(hits);
}

}  // namespace fdepth::kernels
