#pragma once

#include <memory>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include <Eigen/Dense>

#include "fdepth/core.hpp"
#include "fdepth/covkernel.hpp"

namespace fdepth {

/// Decaying weights a_p defining the modified RKHS norm.
class WeightSequence {
 public:
  enum class Kind { constant_one, inverse_p, inverse_sqrt_log, power };

  static WeightSequence constant_one() { return WeightSequence(Kind::constant_one, 0.0); }
  static WeightSequence inverse_p() { return WeightSequence(Kind::inverse_p, 0.0); }
  static WeightSequence inverse_sqrt_log() { return WeightSequence(Kind::inverse_sqrt_log, 0.0); }
  /// a_p = p^{-(1/2 + s)}, s > 0.
  static WeightSequence power(double s);
  /// Parses "one", "inverse-p", "inverse-sqrt-log", "power:<s>".
  static WeightSequence parse(const std::string& text);

  Kind kind() const noexcept { return kind_; }
  double exponent() const noexcept { return s_; }
  bool square_summable() const noexcept { return kind_ != Kind::constant_one; }
  std::string name() const;

  /// a_p for p = 1 (index 0).
  double at(std::size_t index) const;
  std::vector<double> values(std::size_t length) const;

 private:
  WeightSequence(Kind kind, double s) : kind_(kind), s_(s) {}
  Kind kind_;
  double s_;
};

double modified_norm_sq(std::span<const double> coeffs, const EigenSystem& system, const WeightSequence& weights);
double rkhs_norm_sq(std::span<const double> coeffs, const EigenSystem& system);

/// (x - mean)^T cov^{-1} (x - mean) through a Cholesky solve.
double mahalanobis_norm_sq(std::span<const double> x, std::span<const double> mean, const Eigen::MatrixXd& cov);
double mahalanobis_norm_sq(std::span<const double> x, std::span<const double> mean,
                           const Eigen::LLT<Eigen::MatrixXd>& factor);

namespace criterion {
struct Lp {
  double p = 2.0;
};
struct DerivativeLp {
  int r = 1;
  double p = 2.0;
};
struct ModifiedRkhs {
  std::shared_ptr<const EigenSystem> system;
  WeightSequence weights = WeightSequence::inverse_p();
};
struct Rkhs {
  std::shared_ptr<const EigenSystem> system;
};
struct WarpL2 {};
struct WarpFisherRao {};
struct Mahalanobis {
  std::shared_ptr<const Eigen::LLT<Eigen::MatrixXd>> factor;
};
}  // namespace criterion

/// The criterion function zeta(f, f_c) together with its fitted context.
class Criterion {
 public:
  using Spec = std::variant<criterion::Lp, criterion::DerivativeLp, criterion::ModifiedRkhs, criterion::Rkhs,
                            criterion::WarpL2, criterion::WarpFisherRao, criterion::Mahalanobis>;

  static Criterion lp(double p);
  static Criterion derivative_lp(int r, double p);
  /// Constant-one weights are refused unless `finite_dimensional` is set.
  static Criterion modified_rkhs(std::shared_ptr<const EigenSystem> system, WeightSequence weights,
                                 bool finite_dimensional = false);
  static Criterion rkhs(std::shared_ptr<const EigenSystem> system);
  static Criterion warp_l2();
  static Criterion warp_fisher_rao();
  static Criterion mahalanobis(const Eigen::MatrixXd& cov);

  const Spec& spec() const noexcept { return spec_; }
  std::string name() const;
  bool is_warping() const noexcept;
  /// Norm criteria satisfy zeta(f, f_c) = ||f - f_c||.
  bool is_norm() const noexcept { return !is_warping(); }

 private:
  explicit Criterion(Spec spec) : spec_(std::move(spec)) {}
  Spec spec_;
};

/// zeta(f, f_c) >= 0.
double evaluate_criterion(const Criterion& c, const GridFunction& f, const GridFunction& f_c);

/// Vector form for multivariate data. Only Mahalanobis and Lp apply.
double evaluate_criterion(const Criterion& c, std::span<const double> x, std::span<const double> center);

}  // namespace fdepth
