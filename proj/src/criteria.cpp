#include "fdepth/criteria.hpp"

#include <cmath>
#include <sstream>

#include "fdepth/linalg.hpp"
#include "fdepth/warping.hpp"

namespace fdepth {

WeightSequence WeightSequence::power(double s) {
  if (!(s > 0.0)) throw Error(ErrorKind::invalid_config, "power weights need s > 0");
  return WeightSequence(Kind::power, s);
}

WeightSequence WeightSequence::parse(const std::string& text) {
  if (text == "one" || text == "constant-one") return constant_one();
  if (text == "inverse-p") return inverse_p();
  if (text == "inverse-sqrt-log") return inverse_sqrt_log();
  if (text.rfind("power:", 0) == 0) {
    try {
      return power(std::stod(text.substr(6)));
    } catch (const std::logic_error&) {
      // fall through to the error below
    }
  }
  throw Error(ErrorKind::invalid_config, "unknown weight sequence '" + text + "'");
}

std::string WeightSequence::name() const {
  switch (kind_) {
    case Kind::constant_one:
      return "one";
    case Kind::inverse_p:
      return "inverse-p";
    case Kind::inverse_sqrt_log:
      return "inverse-sqrt-log";
    case Kind::power: {
      std::ostringstream os;
      os << "power:" << s_;
      return os.str();
    }
  }
  return "?";
}

double WeightSequence::at(std::size_t index) const {
  const double p = static_cast<double>(index + 1);
  switch (kind_) {
    case Kind::constant_one:
      return 1.0;
    case Kind::inverse_p:
      return 1.0 / p;
    case Kind::inverse_sqrt_log:
      return 1.0 / (std::sqrt(p) * std::log(p + 1.0));
    case Kind::power:
      return std::pow(p, -(0.5 + s_));
  }
  return 0.0;
}

std::vector<double> WeightSequence::values(std::size_t length) const {
  std::vector<double> a(length);
  for (std::size_t i = 0; i < length; ++i) a[i] = at(i);
  return a;
}

namespace {

void check_coefficients(std::span<const double> coeffs, const EigenSystem& system) {
  if (coeffs.size() > system.count()) {
    throw Error(ErrorKind::invalid_config, "coefficient sequence longer than the eigensystem");
  }
  for (std::size_t p = 0; p < coeffs.size(); ++p) {
    if (!(system.eigenvalue(p) > 0.0)) {
      throw Error(ErrorKind::numerical, "zero eigenvalue retained in an RKHS norm");
    }
  }
}

}  // namespace

double modified_norm_sq(std::span<const double> coeffs, const EigenSystem& system, const WeightSequence& weights) {
  check_coefficients(coeffs, system);
  double acc = 0.0;
  for (std::size_t p = 0; p < coeffs.size(); ++p) {
    const double a = weights.at(p);
    acc += coeffs[p] * coeffs[p] / system.eigenvalue(p) * a * a;
  }
  return acc;
}

double rkhs_norm_sq(std::span<const double> coeffs, const EigenSystem& system) {
  check_coefficients(coeffs, system);
  double acc = 0.0;
  for (std::size_t p = 0; p < coeffs.size(); ++p) acc += coeffs[p] * coeffs[p] / system.eigenvalue(p);
  return acc;
}

double mahalanobis_norm_sq(std::span<const double> x, std::span<const double> mean,
                           const Eigen::LLT<Eigen::MatrixXd>& factor) {
  const auto d = static_cast<Eigen::Index>(x.size());
  if (mean.size() != x.size() || factor.matrixL().rows() != d) {
    throw Error(ErrorKind::grid_mismatch, "Mahalanobis dimensions disagree");
  }
  Eigen::VectorXd diff(d);
  for (Eigen::Index k = 0; k < d; ++k) diff(k) = x[static_cast<std::size_t>(k)] - mean[static_cast<std::size_t>(k)];
  const Eigen::VectorXd y = factor.matrixL().solve(diff);
  return y.squaredNorm();
}

double mahalanobis_norm_sq(std::span<const double> x, std::span<const double> mean, const Eigen::MatrixXd& cov) {
  return mahalanobis_norm_sq(x, mean, spd_factor(cov));
}

Criterion Criterion::lp(double p) {
  if (!(p >= 1.0)) throw Error(ErrorKind::invalid_config, "lp criterion needs p >= 1");
  return Criterion(criterion::Lp{p});
}

Criterion Criterion::derivative_lp(int r, double p) {
  if (r != 1 && r != 2) throw Error(ErrorKind::invalid_config, "derivative order must be 1 or 2");
  if (!(p >= 1.0)) throw Error(ErrorKind::invalid_config, "lp criterion needs p >= 1");
  return Criterion(criterion::DerivativeLp{r, p});
}

Criterion Criterion::modified_rkhs(std::shared_ptr<const EigenSystem> system, WeightSequence weights,
                                   bool finite_dimensional) {
  if (!system) throw Error(ErrorKind::invalid_config, "modified RKHS criterion needs an eigensystem");
  if (!weights.square_summable() && !finite_dimensional) {
    throw Error(ErrorKind::invalid_config,
                "constant-one weights diverge for infinite-dimensional models; declare the model finite-dimensional");
  }
  return Criterion(criterion::ModifiedRkhs{std::move(system), weights});
}

Criterion Criterion::rkhs(std::shared_ptr<const EigenSystem> system) {
  if (!system) throw Error(ErrorKind::invalid_config, "RKHS criterion needs an eigensystem");
  return Criterion(criterion::Rkhs{std::move(system)});
}

Criterion Criterion::warp_l2() { return Criterion(criterion::WarpL2{}); }
Criterion Criterion::warp_fisher_rao() { return Criterion(criterion::WarpFisherRao{}); }

Criterion Criterion::mahalanobis(const Eigen::MatrixXd& cov) {
  return Criterion(criterion::Mahalanobis{std::make_shared<const Eigen::LLT<Eigen::MatrixXd>>(spd_factor(cov))});
}

std::string Criterion::name() const {
  struct Namer {
    std::string operator()(const criterion::Lp& c) const {
      std::ostringstream os;
      os << "lp(" << c.p << ")";
      return os.str();
    }
    std::string operator()(const criterion::DerivativeLp& c) const {
      std::ostringstream os;
      os << "derivative-lp(" << c.r << "," << c.p << ")";
      return os.str();
    }
    std::string operator()(const criterion::ModifiedRkhs&) const { return "modified-rkhs"; }
    std::string operator()(const criterion::Rkhs&) const { return "rkhs"; }
    std::string operator()(const criterion::WarpL2&) const { return "warp-l2"; }
    std::string operator()(const criterion::WarpFisherRao&) const { return "warp-fisher-rao"; }
    std::string operator()(const criterion::Mahalanobis&) const { return "mahalanobis"; }
  };
  return std::visit(Namer{}, spec_);
}

bool Criterion::is_warping() const noexcept {
  return std::holds_alternative<criterion::WarpL2>(spec_) || std::holds_alternative<criterion::WarpFisherRao>(spec_);
}

double evaluate_criterion(const Criterion& c, const GridFunction& f, const GridFunction& f_c) {
  require_same_grid(f.grid(), f_c.grid());
  struct Eval {
    const GridFunction& f;
    const GridFunction& f_c;

    double operator()(const criterion::Lp& c) const { return lp_norm(f - f_c, c.p); }
    double operator()(const criterion::DerivativeLp& c) const { return lp_norm(derivative(f - f_c, c.r), c.p); }
    double operator()(const criterion::ModifiedRkhs& c) const {
      const auto coeffs = kl_project(f - f_c, *c.system);
      return std::sqrt(modified_norm_sq(coeffs, *c.system, c.weights));
    }
    double operator()(const criterion::Rkhs& c) const {
      const auto coeffs = kl_project(f - f_c, *c.system);
      return std::sqrt(rkhs_norm_sq(coeffs, *c.system));
    }
    double operator()(const criterion::WarpL2&) const { return warp_l2_distance(optimal_warping(f, f_c)); }
    double operator()(const criterion::WarpFisherRao&) const {
      return fisher_rao_distance(optimal_warping(f, f_c));
    }
    double operator()(const criterion::Mahalanobis& c) const {
      return std::sqrt(mahalanobis_norm_sq(f.values(), f_c.values(), *c.factor));
    }
  };
  return std::visit(Eval{f, f_c}, c.spec());
}

double evaluate_criterion(const Criterion& c, std::span<const double> x, std::span<const double> center) {
  if (x.size() != center.size()) throw Error(ErrorKind::grid_mismatch, "observation and center differ in length");
  if (const auto* m = std::get_if<criterion::Mahalanobis>(&c.spec())) {
    return std::sqrt(mahalanobis_norm_sq(x, center, *m->factor));
  }
  if (const auto* lp = std::get_if<criterion::Lp>(&c.spec())) {
    double acc = 0.0;
    for (std::size_t k = 0; k < x.size(); ++k) acc += std::pow(std::abs(x[k] - center[k]), lp->p);
    return std::pow(acc, 1.0 / lp->p);
  }
  throw Error(ErrorKind::invalid_config, "criterion " + c.name() + " is not defined for multivariate vectors");
}

}  // namespace fdepth
