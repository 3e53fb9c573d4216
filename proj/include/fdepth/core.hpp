#pragma once

#include <cstddef>
#include <functional>
#include <span>
#include <vector>

#include <Eigen/Dense>

#include "fdepth/error.hpp"

namespace fdepth {

using RowMatrix = Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

/// Uniform grid t_k = t0 + k * (t1 - t0) / (m - 1), k = 0..m-1.
class Grid {
 public:
  Grid(double t0, double t1, std::size_t m);
  static Grid unit(std::size_t m) { return Grid(0.0, 1.0, m); }

  double t0() const noexcept { return t0_; }
  double t1() const noexcept { return t1_; }
  std::size_t size() const noexcept { return m_; }
  double step() const noexcept { return (t1_ - t0_) / static_cast<double>(m_ - 1); }
  double point(std::size_t k) const noexcept;
  std::vector<double> points() const;

  /// Trapezoid quadrature weights (h/2, h, ..., h, h/2).
  std::vector<double> weights() const;

  friend bool operator==(const Grid&, const Grid&) = default;

 private:
  double t0_;
  double t1_;
  std::size_t m_;
};

/// A real function sampled on a Grid. Values are finite.
class GridFunction {
 public:
  GridFunction(Grid grid, std::vector<double> values);
  static GridFunction zeros(const Grid& grid);
  static GridFunction constant(const Grid& grid, double c);
  static GridFunction sample(const Grid& grid, const std::function<double(double)>& f);

  const Grid& grid() const noexcept { return grid_; }
  std::size_t size() const noexcept { return values_.size(); }
  std::span<const double> values() const noexcept { return values_; }
  double operator[](std::size_t k) const noexcept { return values_[k]; }

  GridFunction operator+(const GridFunction& other) const;
  GridFunction operator-(const GridFunction& other) const;
  GridFunction operator*(double c) const;
  friend GridFunction operator*(double c, const GridFunction& f) { return f * c; }

 private:
  Grid grid_;
  std::vector<double> values_;
};

/// n observations on a shared grid, stored row-major (n x m).
class FunctionalSample {
 public:
  FunctionalSample(Grid grid, RowMatrix values);
  explicit FunctionalSample(const std::vector<GridFunction>& rows);

  const Grid& grid() const noexcept { return grid_; }
  std::size_t size() const noexcept { return static_cast<std::size_t>(values_.rows()); }
  const RowMatrix& values() const noexcept { return values_; }
  std::span<const double> row_values(std::size_t i) const;
  GridFunction row(std::size_t i) const;
  GridFunction mean() const;

 private:
  Grid grid_;
  RowMatrix values_;
};

void require_same_grid(const Grid& a, const Grid& b);

// Quadrature on raw values; the span length defines the number of nodes.
double trapezoid(std::span<const double> values, double step);

double lp_norm_values(std::span<const double> values, double step, double p);

double integrate(const GridFunction& f);
double lp_norm(const GridFunction& f, double p);
double l2_inner(const GridFunction& f, const GridFunction& g);

/// r-th derivative by finite differences (r in {1, 2}). Central stencils in
/// the interior, second-order one-sided stencils at both ends.
GridFunction derivative(const GridFunction& f, int r);

void derivative_values(std::span<const double> values, double step, int r, std::span<double> out);

}  // namespace fdepth
