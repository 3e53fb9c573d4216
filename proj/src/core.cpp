#include "fdepth/core.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace fdepth {

Grid::Grid(double t0, double t1, std::size_t m) : t0_(t0), t1_(t1), m_(m) {
  if (!(t1 > t0) || !std::isfinite(t0) || !std::isfinite(t1)) {
    throw Error(ErrorKind::invalid_config, "grid requires finite t0 < t1");
  }
  if (m < 3) {
    throw Error(ErrorKind::invalid_config, "grid requires at least 3 points");
  }
}

double Grid::point(std::size_t k) const noexcept {
  if (k + 1 == m_) return t1_;
  return t0_ + static_cast<double>(k) * step();
}

std::vector<double> Grid::points() const {
  std::vector<double> t(m_);
  for (std::size_t k = 0; k < m_; ++k) t[k] = point(k);
  return t;
}

std::vector<double> Grid::weights() const {
  std::vector<double> w(m_, step());
  w.front() *= 0.5;
  w.back() *= 0.5;
  return w;
}

GridFunction::GridFunction(Grid grid, std::vector<double> values)
    : grid_(grid), values_(std::move(values)) {
  if (values_.size() != grid_.size()) {
    std::ostringstream os;
    os << "function has " << values_.size() << " values on a grid of " << grid_.size();
    throw Error(ErrorKind::grid_mismatch, os.str());
  }
  for (double v : values_) {
    if (!std::isfinite(v)) throw Error(ErrorKind::input_format, "function values must be finite");
  }
}

GridFunction GridFunction::zeros(const Grid& grid) { return constant(grid, 0.0); }

GridFunction GridFunction::constant(const Grid& grid, double c) {
  return GridFunction(grid, std::vector<double>(grid.size(), c));
}

GridFunction GridFunction::sample(const Grid& grid, const std::function<double(double)>& f) {
  std::vector<double> v(grid.size());
  for (std::size_t k = 0; k < v.size(); ++k) v[k] = f(grid.point(k));
  return GridFunction(grid, std::move(v));
}

GridFunction GridFunction::operator+(const GridFunction& other) const {
  require_same_grid(grid_, other.grid_);
  std::vector<double> v(values_);
  for (std::size_t k = 0; k < v.size(); ++k) v[k] += other.values_[k];
  return GridFunction(grid_, std::move(v));
}

GridFunction GridFunction::operator-(const GridFunction& other) const {
  require_same_grid(grid_, other.grid_);
  std::vector<double> v(values_);
  for (std::size_t k = 0; k < v.size(); ++k) v[k] -= other.values_[k];
  return GridFunction(grid_, std::move(v));
}

GridFunction GridFunction::operator*(double c) const {
  std::vector<double> v(values_);
  for (double& x : v) x *= c;
  return GridFunction(grid_, std::move(v));
}

FunctionalSample::FunctionalSample(Grid grid, RowMatrix values)
    : grid_(grid), values_(std::move(values)) {
  if (static_cast<std::size_t>(values_.cols()) != grid_.size()) {
    throw Error(ErrorKind::grid_mismatch, "sample width does not match grid size");
  }
  if (!values_.allFinite()) {
    throw Error(ErrorKind::input_format, "sample values must be finite");
  }
}

FunctionalSample::FunctionalSample(const std::vector<GridFunction>& rows)
    : grid_(rows.empty() ? throw Error(ErrorKind::input_format, "empty sample") : rows.front().grid()),
      values_(static_cast<Eigen::Index>(rows.size()), static_cast<Eigen::Index>(rows.front().size())) {
  for (std::size_t i = 0; i < rows.size(); ++i) {
    require_same_grid(grid_, rows[i].grid());
    auto v = rows[i].values();
    for (std::size_t k = 0; k < v.size(); ++k) {
      values_(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(k)) = v[k];
    }
  }
}

std::span<const double> FunctionalSample::row_values(std::size_t i) const {
  return {values_.data() + i * grid_.size(), grid_.size()};
}

GridFunction FunctionalSample::row(std::size_t i) const {
  auto v = row_values(i);
  return GridFunction(grid_, std::vector<double>(v.begin(), v.end()));
}

GridFunction FunctionalSample::mean() const {
  Eigen::RowVectorXd mu = values_.colwise().mean();
  return GridFunction(grid_, std::vector<double>(mu.data(), mu.data() + mu.size()));
}

void require_same_grid(const Grid& a, const Grid& b) {
  if (!(a == b)) throw Error(ErrorKind::grid_mismatch, "functions live on different grids");
}

double trapezoid(std::span<const double> values, double step) {
  const std::size_t m = values.size();
  if (m < 2) return 0.0;
  double interior = 0.0;
  for (std::size_t k = 1; k + 1 < m; ++k) interior += values[k];
  return step * (interior + 0.5 * (values.front() + values.back()));
}

double lp_norm_values(std::span<const double> values, double step, double p) {
  if (!(p >= 1.0)) throw Error(ErrorKind::invalid_config, "lp norm requires p >= 1");
  const std::size_t m = values.size();
  if (p == 2.0) {
    double interior = 0.0;
    for (std::size_t k = 1; k + 1 < m; ++k) interior += values[k] * values[k];
    const double ends = 0.5 * (values.front() * values.front() + values.back() * values.back());
    return std::sqrt(step * (interior + ends));
  }
  double scale = 0.0;
  for (double v : values) scale = std::max(scale, std::abs(v));
  if (scale == 0.0) return 0.0;
  // Scaled to keep |f/scale|^p in range for large p.
  double interior = 0.0;
  for (std::size_t k = 1; k + 1 < m; ++k) interior += std::pow(std::abs(values[k]) / scale, p);
  const double ends =
      0.5 * (std::pow(std::abs(values.front()) / scale, p) + std::pow(std::abs(values.back()) / scale, p));
  return scale * std::pow(step * (interior + ends), 1.0 / p);
}

double integrate(const GridFunction& f) { return trapezoid(f.values(), f.grid().step()); }

double lp_norm(const GridFunction& f, double p) { return lp_norm_values(f.values(), f.grid().step(), p); }

double l2_inner(const GridFunction& f, const GridFunction& g) {
  require_same_grid(f.grid(), g.grid());
  auto a = f.values();
  auto b = g.values();
  const std::size_t m = a.size();
  double interior = 0.0;
  for (std::size_t k = 1; k + 1 < m; ++k) interior += a[k] * b[k];
  return f.grid().step() * (interior + 0.5 * (a.front() * b.front() + a.back() * b.back()));
}

void derivative_values(std::span<const double> f, double h, int r, std::span<double> out) {
  const std::size_t m = f.size();
  if (r == 1) {
    if (m < 3) throw Error(ErrorKind::invalid_config, "first derivative needs at least 3 points");
    const double inv = 1.0 / (2.0 * h);
    out[0] = (-3.0 * f[0] + 4.0 * f[1] - f[2]) * inv;
    for (std::size_t k = 1; k + 1 < m; ++k) out[k] = (f[k + 1] - f[k - 1]) * inv;
    out[m - 1] = (3.0 * f[m - 1] - 4.0 * f[m - 2] + f[m - 3]) * inv;
  } else if (r == 2) {
    if (m < 5) throw Error(ErrorKind::invalid_config, "second derivative needs at least 5 points");
    const double inv = 1.0 / (h * h);
    out[0] = (2.0 * f[0] - 5.0 * f[1] + 4.0 * f[2] - f[3]) * inv;
    for (std::size_t k = 1; k + 1 < m; ++k) out[k] = (f[k + 1] - 2.0 * f[k] + f[k - 1]) * inv;
    out[m - 1] = (2.0 * f[m - 1] - 5.0 * f[m - 2] + 4.0 * f[m - 3] - f[m - 4]) * inv;
  } else {
    throw Error(ErrorKind::invalid_config, "derivative order must be 1 or 2");
  }
}

GridFunction derivative(const GridFunction& f, int r) {
  std::vector<double> out(f.size());
  derivative_values(f.values(), f.grid().step(), r, out);
  return GridFunction(f.grid(), std::move(out));
}

}  // namespace fdepth
