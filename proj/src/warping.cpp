#include "fdepth/warping.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <numeric>

namespace fdepth {

namespace {

constexpr int kMaxStep = 5;
constexpr double kSlopeFloor = 1e-12;

struct Step {
  int di;
  int dj;
};

const std::vector<Step>& lattice_steps() {
  static const std::vector<Step> steps = [] {
    std::vector<Step> s;
    for (int di = 1; di <= kMaxStep; ++di) {
      for (int dj = 1; dj <= kMaxStep; ++dj) {
        if (std::gcd(di, dj) == 1) s.push_back({di, dj});
      }
    }
    return s;
  }();
  return steps;
}

// Linear interpolation of samples on the uniform grid x_k = k / (m - 1).
double interp_unit(std::span<const double> y, double x) {
  const std::size_t m = y.size();
  const double pos = std::clamp(x, 0.0, 1.0) * static_cast<double>(m - 1);
  auto k = static_cast<std::size_t>(pos);
  if (k >= m - 1) return y[m - 1];
  const double frac = pos - static_cast<double>(k);
  return y[k] + frac * (y[k + 1] - y[k]);
}

// Inverse interpolation of a strictly increasing table: t with table(t) = y.
double invert_unit(std::span<const double> table, double y) {
  const std::size_t m = table.size();
  auto it = std::upper_bound(table.begin(), table.end(), y);
  if (it == table.begin()) return 0.0;
  if (it == table.end()) return 1.0;
  const auto k = static_cast<std::size_t>(it - table.begin()) - 1;
  const double span = table[k + 1] - table[k];
  const double frac = span > 0.0 ? (y - table[k]) / span : 0.0;
  return (static_cast<double>(k) + frac) / static_cast<double>(m - 1);
}

std::vector<double> unit_srvf(std::span<const double> f) {
  const std::size_t m = f.size();
  std::vector<double> d(m);
  derivative_values(f, 1.0 / static_cast<double>(m - 1), 1, d);
  for (double& x : d) x = (x < 0.0 ? -1.0 : 1.0) * std::sqrt(std::abs(x));
  return d;
}

std::vector<double> slopes(const WarpingFunction& gamma) {
  const std::size_t m = gamma.values().size();
  std::vector<double> d(m);
  derivative_values(gamma.values(), 1.0 / static_cast<double>(m - 1), 1, d);
  for (double& x : d) x = std::max(x, kSlopeFloor);
  return d;
}

void ensure_boundaries(std::vector<double>& v) {
  v.front() = 0.0;
  v.back() = 1.0;
}

}  // namespace

WarpingFunction::WarpingFunction(Grid grid, std::vector<double> values) : grid_(grid), values_(std::move(values)) {
  if (grid_.t0() != 0.0 || grid_.t1() != 1.0) {
    throw Error(ErrorKind::invalid_config, "warping functions live on [0, 1]");
  }
  if (values_.size() != grid_.size()) throw Error(ErrorKind::grid_mismatch, "warping length does not match grid");
  if (values_.front() != 0.0 || values_.back() != 1.0) {
    throw Error(ErrorKind::invalid_config, "warping must fix 0 and 1");
  }
  for (std::size_t k = 0; k + 1 < values_.size(); ++k) {
    if (!(values_[k + 1] > values_[k])) throw Error(ErrorKind::invalid_config, "warping must be strictly increasing");
  }
}

WarpingFunction WarpingFunction::identity(std::size_t m) {
  const Grid g = Grid::unit(m);
  return WarpingFunction(g, g.points());
}

WarpingFunction WarpingFunction::inverse() const {
  const std::size_t m = values_.size();
  std::vector<double> out(m);
  for (std::size_t k = 0; k < m; ++k) out[k] = invert_unit(values_, grid_.point(k));
  ensure_boundaries(out);
  return WarpingFunction(grid_, std::move(out));
}

WarpingFunction WarpingFunction::compose(const WarpingFunction& inner) const {
  require_same_grid(grid_, inner.grid_);
  std::vector<double> out(values_.size());
  for (std::size_t k = 0; k < out.size(); ++k) out[k] = interp_unit(values_, inner.values_[k]);
  ensure_boundaries(out);
  return WarpingFunction(grid_, std::move(out));
}

GridFunction srvf(const GridFunction& f) {
  GridFunction d = derivative(f, 1);
  std::vector<double> q(d.values().begin(), d.values().end());
  for (double& x : q) x = (x < 0.0 ? -1.0 : 1.0) * std::sqrt(std::abs(x));
  return GridFunction(f.grid(), std::move(q));
}

std::vector<double> warp_srvf(std::span<const double> q, const WarpingFunction& gamma) {
  if (q.size() != gamma.values().size()) throw Error(ErrorKind::grid_mismatch, "SRVF and warping lengths differ");
  const auto d = slopes(gamma);
  std::vector<double> out(q.size());
  for (std::size_t k = 0; k < q.size(); ++k) out[k] = interp_unit(q, gamma[k]) * std::sqrt(d[k]);
  return out;
}

double warping_objective(std::span<const double> q_u, std::span<const double> q_v, const WarpingFunction& gamma) {
  const auto warped = warp_srvf(q_u, gamma);
  std::vector<double> diff(warped.size());
  for (std::size_t k = 0; k < diff.size(); ++k) diff[k] = (warped[k] - q_v[k]) * (warped[k] - q_v[k]);
  return trapezoid(diff, 1.0 / static_cast<double>(diff.size() - 1));
}

WarpingFunction optimal_warping_srvf(std::span<const double> q_u, std::span<const double> q_v) {
  const std::size_t m = q_u.size();
  if (q_v.size() != m) throw Error(ErrorKind::grid_mismatch, "SRVFs must share a grid");
  if (m < 3) throw Error(ErrorKind::invalid_config, "alignment needs at least 3 points");
  const double h = 1.0 / static_cast<double>(m - 1);
  const auto& steps = lattice_steps();
  constexpr double inf = std::numeric_limits<double>::infinity();

  // Node (i, j): gamma(t_i) = t_j. cost = accumulated elastic energy,
  // drift = accumulated |i - j| over visited nodes (tie-breaker).
  std::vector<double> cost(m * m, inf);
  std::vector<double> drift(m * m, inf);
  std::vector<int> back(m * m, -1);
  auto at = [m](std::size_t i, std::size_t j) { return i * m + j; };
  cost[at(0, 0)] = 0.0;
  drift[at(0, 0)] = 0.0;

  auto segment_cost = [&](std::size_t i0, std::size_t j0, int di, int dj) {
    const double slope = static_cast<double>(dj) / static_cast<double>(di);
    const double root = std::sqrt(slope);
    double acc = 0.0;
    for (int s = 0; s <= di; ++s) {
      const std::size_t x = i0 + static_cast<std::size_t>(s);
      const double pos = static_cast<double>(j0) + slope * static_cast<double>(s);
      auto k = static_cast<std::size_t>(pos);
      double qu;
      if (k >= m - 1) {
        qu = q_u[m - 1];
      } else {
        const double frac = pos - static_cast<double>(k);
        qu = q_u[k] + frac * (q_u[k + 1] - q_u[k]);
      }
      const double r = qu * root - q_v[x];
      acc += (s == 0 || s == di ? 0.5 : 1.0) * r * r;
    }
    return acc * h;
  };

  for (std::size_t i = 1; i < m; ++i) {
    for (std::size_t j = 1; j < m; ++j) {
      double best = inf;
      double best_drift = inf;
      int best_step = -1;
      for (std::size_t s = 0; s < steps.size(); ++s) {
        const auto [di, dj] = steps[s];
        if (static_cast<std::size_t>(di) > i || static_cast<std::size_t>(dj) > j) continue;
        const std::size_t pi = i - static_cast<std::size_t>(di);
        const std::size_t pj = j - static_cast<std::size_t>(dj);
        const double base = cost[at(pi, pj)];
        if (base == inf) continue;
        const double c = base + segment_cost(pi, pj, di, dj);
        const double dr = drift[at(pi, pj)] + std::abs(static_cast<double>(i) - static_cast<double>(j));
        const double eps = 1e-12 * (1.0 + std::abs(best));
        if (c < best - eps || (c <= best + eps && dr < best_drift)) {
          best = c;
          best_drift = dr;
          best_step = static_cast<int>(s);
        }
      }
      cost[at(i, j)] = best;
      drift[at(i, j)] = best_drift;
      back[at(i, j)] = best_step;
    }
  }

  // Walk back and fill gamma on the grid by linear interpolation per segment.
  std::vector<double> gamma(m, 0.0);
  std::size_t i = m - 1;
  std::size_t j = m - 1;
  gamma[m - 1] = 1.0;
  while (i > 0) {
    const int s = back[at(i, j)];
    if (s < 0) throw Error(ErrorKind::numerical, "warping lattice has no feasible path");
    const auto [di, dj] = steps[static_cast<std::size_t>(s)];
    const std::size_t pi = i - static_cast<std::size_t>(di);
    const std::size_t pj = j - static_cast<std::size_t>(dj);
    for (int k = 0; k < di; ++k) {
      const double pos = static_cast<double>(pj) + static_cast<double>(dj) * k / static_cast<double>(di);
      gamma[pi + static_cast<std::size_t>(k)] = pos * h;
    }
    i = pi;
    j = pj;
  }
  ensure_boundaries(gamma);
  WarpingFunction result(Grid::unit(m), std::move(gamma));

  // Guard against stencil differences between the lattice energy and the
  // grid objective: never return something worse than the identity.
  const WarpingFunction id = WarpingFunction::identity(m);
  if (warping_objective(q_u, q_v, result) > warping_objective(q_u, q_v, id)) return id;
  return result;
}

WarpingFunction optimal_warping(const GridFunction& u, const GridFunction& v) {
  require_same_grid(u.grid(), v.grid());
  const auto qu = unit_srvf(u.values());
  const auto qv = unit_srvf(v.values());
  return optimal_warping_srvf(qu, qv);
}

KarcherResult karcher_mean(const FunctionalSample& sample, const KarcherOptions& options, kernels::Exec exec) {
  const std::size_t n = sample.size();
  const std::size_t m = sample.grid().size();
  if (n < 2) throw Error(ErrorKind::input_format, "Karcher mean needs n >= 2");
  const double h = 1.0 / static_cast<double>(m - 1);

  std::vector<std::vector<double>> q(n);
  for (std::size_t i = 0; i < n; ++i) q[i] = unit_srvf(sample.row_values(i));

  std::vector<double> mu(m, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t k = 0; k < m; ++k) mu[k] += q[i][k];
  }
  for (double& x : mu) x /= static_cast<double>(n);

  std::vector<WarpingFunction> gammas(n, WarpingFunction::identity(m));
  auto align_all = [&](const std::vector<double>& target) {
    kernels::for_each_index(n, exec, [&](std::size_t i) { gammas[i] = optimal_warping_srvf(q[i], target); });
  };

  KarcherResult result{GridFunction::zeros(sample.grid()), {}, {}, 0, false};
  for (int iter = 0; iter < options.max_iter; ++iter) {
    align_all(mu);

    // Cross-sectional means in fixed index order.
    std::vector<double> next(m, 0.0);
    std::vector<double> mean_gamma(m, 0.0);
    for (std::size_t i = 0; i < n; ++i) {
      const auto aligned = warp_srvf(q[i], gammas[i]);
      for (std::size_t k = 0; k < m; ++k) {
        next[k] += aligned[k];
        mean_gamma[k] += gammas[i][k];
      }
    }
    for (std::size_t k = 0; k < m; ++k) {
      next[k] /= static_cast<double>(n);
      mean_gamma[k] /= static_cast<double>(n);
    }
    ensure_boundaries(mean_gamma);
    const WarpingFunction center_inv = WarpingFunction(Grid::unit(m), mean_gamma).inverse();
    next = warp_srvf(next, center_inv);

    std::vector<double> change(m);
    for (std::size_t k = 0; k < m; ++k) change[k] = (next[k] - mu[k]) * (next[k] - mu[k]);
    const double delta = std::sqrt(trapezoid(change, h));
    mu = std::move(next);
    result.iterations = iter + 1;
    if (delta < options.tol) {
      result.converged = true;
      break;
    }
  }
  align_all(mu);

  // Template from its SRVF: f(u) = f(0) + int_0^u q|q|, f(0) the mean start value.
  double start = 0.0;
  for (std::size_t i = 0; i < n; ++i) start += sample.row_values(i)[0];
  start /= static_cast<double>(n);
  std::vector<double> f(m);
  f[0] = start;
  for (std::size_t k = 1; k < m; ++k) {
    const double a = mu[k - 1] * std::abs(mu[k - 1]);
    const double b = mu[k] * std::abs(mu[k]);
    f[k] = f[k - 1] + 0.5 * h * (a + b);
  }
  result.template_function = GridFunction(sample.grid(), std::move(f));
  result.warpings = std::move(gammas);
  result.template_srvf = std::move(mu);
  return result;
}

double warp_l2_distance(const WarpingFunction& gamma) {
  const std::size_t m = gamma.values().size();
  std::vector<double> diff(m);
  for (std::size_t k = 0; k < m; ++k) diff[k] = gamma[k] - gamma.grid().point(k);
  return lp_norm_values(diff, gamma.grid().step(), 2.0);
}

double fisher_rao_distance(const WarpingFunction& gamma) {
  auto d = slopes(gamma);
  for (double& x : d) x = std::sqrt(x);
  const double inner = std::clamp(trapezoid(d, gamma.grid().step()), -1.0, 1.0);
  return std::acos(inner);
}

}  // namespace fdepth
