#include "fdepth/depth.hpp"

#include <cmath>

#include "fdepth/linalg.hpp"
#include "fdepth/rng.hpp"
#include "fdepth/special.hpp"

namespace fdepth {

std::string to_string(Estimator e) {
  switch (e) {
    case Estimator::monte_carlo:
      return "monte-carlo";
    case Estimator::sample_average:
      return "sample-average";
    case Estimator::closed_form:
      return "closed-form";
  }
  return "?";
}

std::string to_string(Sampler s) { return s == Sampler::bootstrap ? "bootstrap" : "gaussian"; }

Estimator parse_estimator(const std::string& text) {
  if (text == "monte-carlo" || text == "mc") return Estimator::monte_carlo;
  if (text == "sample-average") return Estimator::sample_average;
  if (text == "closed-form") return Estimator::closed_form;
  throw Error(ErrorKind::invalid_config, "unknown estimator '" + text + "'");
}

Sampler parse_sampler(const std::string& text) {
  if (text == "bootstrap") return Sampler::bootstrap;
  if (text == "gaussian") return Sampler::gaussian;
  throw Error(ErrorKind::invalid_config, "unknown sampler '" + text + "'");
}

double depth_from_values(double observed, std::span<const double> reference, kernels::Exec exec) {
  if (reference.empty()) throw Error(ErrorKind::invalid_config, "depth needs a nonempty reference set");
  // Ties count toward depth. Values equal up to rounding are ties: resampled
  // references can reproduce an observation exactly in exact arithmetic.
  const double threshold = observed - kTieTolerance * std::abs(observed);
  return static_cast<double>(kernels::count_at_least(reference, threshold, exec)) /
         static_cast<double>(reference.size());
}

RowMatrix bootstrap_reference(const CoefficientMatrix& coeffs, std::size_t N, std::uint64_t seed,
                              kernels::Exec exec) {
  const auto n = static_cast<std::uint64_t>(coeffs.coeffs.rows());
  const Eigen::Index c = coeffs.coeffs.cols();
  if (n == 0 || c == 0) throw Error(ErrorKind::invalid_config, "bootstrap needs a nonempty coefficient matrix");
  if (N == 0) throw Error(ErrorKind::invalid_config, "bootstrap size must be positive");
  RowMatrix out(static_cast<Eigen::Index>(N), c);
  kernels::for_each_index(N, exec, [&](std::size_t j) {
    CounterRng rng(seed, j);
    const auto row = static_cast<Eigen::Index>(j);
    for (Eigen::Index p = 0; p < c; ++p) {
      out(row, p) = coeffs.coeffs(static_cast<Eigen::Index>(rng.index(n)), p);
    }
  });
  return out;
}

RowMatrix gaussian_reference(const EigenSystem& system, std::size_t N, std::uint64_t seed, kernels::Exec exec) {
  if (N == 0) throw Error(ErrorKind::invalid_config, "reference size must be positive");
  const auto c = static_cast<Eigen::Index>(system.count());
  std::vector<double> sd(system.count());
  for (std::size_t p = 0; p < sd.size(); ++p) sd[p] = std::sqrt(system.eigenvalue(p));
  RowMatrix out(static_cast<Eigen::Index>(N), c);
  kernels::for_each_index(N, exec, [&](std::size_t j) {
    CounterRng rng(seed, j);
    for (Eigen::Index p = 0; p < c; ++p) out(static_cast<Eigen::Index>(j), p) = sd[static_cast<std::size_t>(p)] * rng.normal();
  });
  return out;
}

namespace {

bool same_function(const GridFunction& a, const GridFunction& b) {
  if (!(a.grid() == b.grid())) return false;
  const auto x = a.values();
  const auto y = b.values();
  return std::equal(x.begin(), x.end(), y.begin());
}

std::vector<double> to_vector(const Eigen::VectorXd& v) { return std::vector<double>(v.data(), v.data() + v.size()); }

}  // namespace

std::vector<double> reference_criterion_values(const Criterion& criterion, const RowMatrix& rows,
                                               const EigenSystem& system, const GridFunction& base,
                                               const GridFunction& f_c, kernels::Exec exec) {
  require_same_grid(system.grid(), f_c.grid());
  if (static_cast<std::size_t>(rows.cols()) > system.count()) {
    throw Error(ErrorKind::invalid_config, "reference rows exceed the eigensystem size");
  }
  const std::size_t c = static_cast<std::size_t>(rows.cols());
  const bool centered = same_function(base, f_c);
  const auto& spec = criterion.spec();

  if (centered) {
    // Fast paths: the criterion only sees the coefficient vector.
    if (const auto* lp = std::get_if<criterion::Lp>(&spec); lp && lp->p == 2.0) {
      std::vector<double> ones(c, 1.0);
      auto out = to_vector(kernels::weighted_square_sums(rows, ones, exec));
      for (double& v : out) v = std::sqrt(v);
      return out;
    }
    auto weighted = [&](const EigenSystem& target, auto&& weight) -> std::optional<std::vector<double>> {
      if (&target != &system && !(target.count() == system.count() && target.grid() == system.grid() &&
                                  target.eigenfunctions() == system.eigenfunctions())) {
        return std::nullopt;
      }
      std::vector<double> scale(c);
      for (std::size_t p = 0; p < c; ++p) {
        if (!(target.eigenvalue(p) > 0.0)) throw Error(ErrorKind::numerical, "zero eigenvalue retained in an RKHS norm");
        scale[p] = weight(p) / target.eigenvalue(p);
      }
      auto out = to_vector(kernels::weighted_square_sums(rows, scale, exec));
      for (double& v : out) v = std::sqrt(v);
      return out;
    };
    if (const auto* mod = std::get_if<criterion::ModifiedRkhs>(&spec)) {
      auto out = weighted(*mod->system, [&](std::size_t p) {
        const double a = mod->weights.at(p);
        return a * a;
      });
      if (out) return *out;
    }
    if (const auto* rk = std::get_if<criterion::Rkhs>(&spec)) {
      auto out = weighted(*rk->system, [](std::size_t) { return 1.0; });
      if (out) return *out;
    }
  }

  // General path: rebuild each g_j on the grid and evaluate the criterion.
  const RowMatrix functions = kernels::reconstruct_rows(rows, system.eigenfunctions().topRows(rows.cols()), exec);
  const auto b = base.values();
  std::vector<double> out(static_cast<std::size_t>(rows.rows()));
  kernels::for_each_index(out.size(), exec, [&](std::size_t j) {
    std::vector<double> g(b.size());
    for (std::size_t k = 0; k < g.size(); ++k) g[k] = b[k] + functions(static_cast<Eigen::Index>(j), static_cast<Eigen::Index>(k));
    out[j] = evaluate_criterion(criterion, GridFunction(system.grid(), std::move(g)), f_c);
  });
  return out;
}

std::vector<double> sample_criterion_values(const Criterion& criterion, const FunctionalSample& reference,
                                            const GridFunction& f_c, kernels::Exec exec) {
  require_same_grid(reference.grid(), f_c.grid());
  std::vector<double> out(reference.size());
  kernels::for_each_index(out.size(), exec,
                          [&](std::size_t j) { out[j] = evaluate_criterion(criterion, reference.row(j), f_c); });
  return out;
}

DepthResult mc_depth(const GridFunction& f_obs, const GridFunction& f_c, const Criterion& criterion,
                     const RowMatrix& reference, const EigenSystem& system, std::uint64_t seed, kernels::Exec exec) {
  const double zeta = evaluate_criterion(criterion, f_obs, f_c);
  const auto values = reference_criterion_values(criterion, reference, system, f_c, f_c, exec);
  return DepthResult{depth_from_values(zeta, values, exec), criterion.name(), Estimator::monte_carlo,
                     values.size(), seed, zeta};
}

DepthResult mc_depth(const GridFunction& f_obs, const GridFunction& f_c, const Criterion& criterion,
                     const FunctionalSample& reference, std::uint64_t seed, kernels::Exec exec) {
  const double zeta = evaluate_criterion(criterion, f_obs, f_c);
  const auto values = sample_criterion_values(criterion, reference, f_c, exec);
  return DepthResult{depth_from_values(zeta, values, exec), criterion.name(), Estimator::monte_carlo,
                     values.size(), seed, zeta};
}

DepthResult sample_average_depth(const GridFunction& f_obs, const GridFunction& f_c, const Criterion& criterion,
                                 const FunctionalSample& sample, kernels::Exec exec) {
  const double zeta = evaluate_criterion(criterion, f_obs, f_c);
  const auto values = sample_criterion_values(criterion, sample, f_c, exec);
  return DepthResult{depth_from_values(zeta, values, exec), criterion.name(), Estimator::sample_average,
                     values.size(), 0, zeta};
}

double halfspace_depth_from_norm(double rkhs_norm) { return std_normal_sf(rkhs_norm); }

double chisq_depth_from_norm_sq(double rkhs_norm_sq, std::size_t dimension) {
  return chi2_sf(rkhs_norm_sq, static_cast<double>(dimension));
}

DepthResult halfspace_depth_closed_form(const GridFunction& f_obs, const GridFunction& f_c,
                                        const EigenSystem& system) {
  const double norm = std::sqrt(rkhs_norm_sq(kl_project(f_obs - f_c, system), system));
  return DepthResult{halfspace_depth_from_norm(norm), "rkhs", Estimator::closed_form, 0, 0, norm};
}

DepthResult chisq_depth(const GridFunction& f_obs, const GridFunction& f_c, const EigenSystem& system) {
  const double norm_sq = rkhs_norm_sq(kl_project(f_obs - f_c, system), system);
  return DepthResult{chisq_depth_from_norm_sq(norm_sq, system.count()), "rkhs", Estimator::closed_form, 0, 0,
                     std::sqrt(norm_sq)};
}

double halfspace_contour_level(double alpha) {
  if (!(alpha > 0.0 && alpha <= 0.5)) throw Error(ErrorKind::invalid_config, "halfspace depth levels lie in (0, 0.5]");
  return std_normal_quantile(1.0 - alpha);
}

double chisq_contour_level(double alpha, std::size_t dimension) {
  if (!(alpha >= 0.0 && alpha <= 1.0)) throw Error(ErrorKind::invalid_config, "depth levels lie in [0, 1]");
  return chi2_quantile(1.0 - alpha, static_cast<double>(dimension));
}

bool central_region_membership(const DepthResult& depth, double alpha) { return depth.value >= alpha; }

DepthResult mc_depth(std::span<const double> x, std::span<const double> center, const Criterion& criterion,
                     const RowMatrix& reference_points, std::uint64_t seed, kernels::Exec exec) {
  const double zeta = evaluate_criterion(criterion, x, center);
  std::vector<double> values(static_cast<std::size_t>(reference_points.rows()));
  const auto d = static_cast<std::size_t>(reference_points.cols());
  kernels::for_each_index(values.size(), exec, [&](std::size_t j) {
    values[j] = evaluate_criterion(criterion, std::span<const double>(reference_points.row(static_cast<Eigen::Index>(j)).data(), d), center);
  });
  return DepthResult{depth_from_values(zeta, values, exec), criterion.name(), Estimator::monte_carlo,
                     values.size(), seed, zeta};
}

DepthResult sample_average_depth(std::span<const double> x, std::span<const double> center,
                                 const Criterion& criterion, const RowMatrix& sample, kernels::Exec exec) {
  DepthResult r = mc_depth(x, center, criterion, sample, 0, exec);
  r.estimator = Estimator::sample_average;
  return r;
}

RowMatrix multivariate_reference(const RowMatrix& training, const Eigen::VectorXd& mean, const Eigen::MatrixXd& cov,
                                 Sampler sampler, std::size_t N, std::uint64_t seed, kernels::Exec exec) {
  const Eigen::Index d = mean.size();
  if (cov.rows() != d || cov.cols() != d) throw Error(ErrorKind::invalid_config, "covariance shape mismatch");
  const SymmetricEigen axes = jacobi_eigen(cov);
  RowMatrix scores;
  if (sampler == Sampler::bootstrap) {
    if (training.cols() != d) throw Error(ErrorKind::grid_mismatch, "training rows differ in dimension");
    RowMatrix centered = training;
    centered.rowwise() -= mean.transpose();
    CoefficientMatrix coeffs{centered * axes.vectors, nullptr};
    scores = bootstrap_reference(coeffs, N, seed, exec);
  } else {
    if (N == 0) throw Error(ErrorKind::invalid_config, "reference size must be positive");
    scores.resize(static_cast<Eigen::Index>(N), d);
    kernels::for_each_index(N, exec, [&](std::size_t j) {
      CounterRng rng(seed, j);
      for (Eigen::Index k = 0; k < d; ++k) {
        scores(static_cast<Eigen::Index>(j), k) = std::sqrt(std::max(axes.values(k), 0.0)) * rng.normal();
      }
    });
  }
  RowMatrix out = scores * axes.vectors.transpose();
  out.rowwise() += mean.transpose();
  return out;
}

DepthResult mahalanobis_depth_closed_form(std::span<const double> x, std::span<const double> mean,
                                          const Eigen::MatrixXd& cov) {
  const double q = mahalanobis_norm_sq(x, mean, cov);
  return DepthResult{chi2_sf(q, static_cast<double>(x.size())), "mahalanobis", Estimator::closed_form, 0, 0,
                     std::sqrt(q)};
}

DepthScorer::DepthScorer(const FunctionalModel& model, const FunctionalSample& sample, Criterion criterion,
                         GridFunction f_c, DepthOptions options)
    : criterion_(std::move(criterion)), f_c_(std::move(f_c)), options_(options), system_(model.system) {
  require_same_grid(model.system->grid(), f_c_.grid());
  switch (options_.estimator) {
    case Estimator::monte_carlo: {
      const RowMatrix rows = options_.sampler == Sampler::bootstrap
                                 ? bootstrap_reference(model.coefficients, options_.N, options_.seed, options_.exec)
                                 : gaussian_reference(*model.system, options_.N, options_.seed, options_.exec);
      reference_ = reference_criterion_values(criterion_, rows, *model.system, model.center, f_c_, options_.exec);
      break;
    }
    case Estimator::sample_average:
      reference_ = sample_criterion_values(criterion_, sample, f_c_, options_.exec);
      options_.N = reference_.size();
      break;
    case Estimator::closed_form: {
      const bool rkhs = std::holds_alternative<criterion::Rkhs>(criterion_.spec());
      const auto* mod = std::get_if<criterion::ModifiedRkhs>(&criterion_.spec());
      const bool unweighted = mod && mod->weights.kind() == WeightSequence::Kind::constant_one;
      if (!rkhs && !unweighted) {
        throw Error(ErrorKind::invalid_config, "closed-form depth is defined for the RKHS criterion only");
      }
      system_ = rkhs ? std::get<criterion::Rkhs>(criterion_.spec()).system : mod->system;
      options_.N = 0;
      break;
    }
  }
}

DepthResult DepthScorer::score_value(double zeta) const {
  DepthResult r;
  r.criterion = criterion_.name();
  r.estimator = options_.estimator;
  r.N = options_.N;
  r.seed = options_.estimator == Estimator::monte_carlo ? options_.seed : 0;
  r.criterion_value = zeta;
  if (options_.estimator == Estimator::closed_form) {
    r.value = options_.closed_form == ClosedForm::halfspace ? halfspace_depth_from_norm(zeta)
                                                            : chisq_depth_from_norm_sq(zeta * zeta, system_->count());
  } else {
    r.value = depth_from_values(zeta, reference_, kernels::Exec::serial);
  }
  return r;
}

DepthResult DepthScorer::score(const GridFunction& f) const {
  return score_value(evaluate_criterion(criterion_, f, f_c_));
}

std::vector<DepthResult> DepthScorer::score_all(const FunctionalSample& queries) const {
  require_same_grid(queries.grid(), f_c_.grid());
  std::vector<double> zeta(queries.size());
  kernels::for_each_index(zeta.size(), options_.exec,
                          [&](std::size_t i) { zeta[i] = evaluate_criterion(criterion_, queries.row(i), f_c_); });
  std::vector<DepthResult> out;
  out.reserve(zeta.size());
  for (double z : zeta) out.push_back(score_value(z));
  return out;
}

OutlierReport detect_outliers(const DepthScorer& scorer, const FunctionalSample& sample, double alpha) {
  if (!(alpha >= 0.0 && alpha <= 1.0)) throw Error(ErrorKind::invalid_config, "outlier threshold must lie in [0, 1]");
  OutlierReport report;
  report.results = scorer.score_all(sample);
  for (std::size_t i = 0; i < report.results.size(); ++i) {
    // alpha = 1 flags everything, including observations of depth exactly 1.
    if (report.results[i].value < alpha || alpha >= 1.0) report.outliers.push_back(i);
  }
  return report;
}

}  // namespace fdepth
