#pragma once

// Data-parallel kernels. Every kernel takes an Exec tag: `serial` runs the
// plain reference loop, `parallel` the OpenMP version. Parallel kernels write
// each output slot from exactly one iteration, so both paths agree bit for bit
// unless noted otherwise.

#include <cstddef>
#include <span>

#include <Eigen/Dense>

#include "fdepth/core.hpp"

namespace fdepth::kernels {

enum class Exec { serial, parallel };

/// Caps OpenMP workers; values <= 0 leave the runtime default. Reads
/// FDEPTH_THREADS when called with no argument.
void configure_threads();
void set_thread_limit(int threads);
int thread_limit();

/// Second-moment kernel X^T X / n of the (already centered) rows of X.
/// The serial path is the textbook triple loop; the parallel path walks
/// upper-triangle columns under OpenMP and mirrors. Both accumulate over
/// observations in index order, so results are identical.
Eigen::MatrixXd second_moment(const RowMatrix& x, Exec exec);

/// coeffs(i, p) = sum_k w_k x(i, k) basis(p, k).
RowMatrix project_rows(const RowMatrix& x, std::span<const double> weights, const RowMatrix& basis, Exec exec);

/// rows(j, :) = sum_p coeffs(j, p) basis(p, :).
RowMatrix reconstruct_rows(const RowMatrix& coeffs, const RowMatrix& basis, Exec exec);

/// out(j) = sum_p coeffs(j, p)^2 * scale(p).
Eigen::VectorXd weighted_square_sums(const RowMatrix& coeffs, std::span<const double> scale, Exec exec);

/// Count of reference values >= threshold.
std::size_t count_at_least(std::span<const double> reference, double threshold, Exec exec);

/// Applies fn(i) for i in [0, n). fn must only write state owned by index i.
template <class Fn>
void for_each_index(std::size_t n, Exec exec, Fn&& fn) {
  if (exec == Exec::serial) {
    for (std::size_t i = 0; i < n; ++i) fn(i);
    return;
  }
  const auto count = static_cast<long long>(n);
#pragma omp parallel for schedule(dynamic, 1)
  for (long long i = 0; i < count; ++i) fn(static_cast<std::size_t>(i));
}

}  // namespace fdepth::kernels
