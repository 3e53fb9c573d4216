#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "fdepth/covkernel.hpp"
#include "fdepth/criteria.hpp"
#include "fdepth/kernels.hpp"

namespace fdepth {

enum class Estimator { monte_carlo, sample_average, closed_form };
enum class Sampler { bootstrap, gaussian };

std::string to_string(Estimator e);
std::string to_string(Sampler s);
Estimator parse_estimator(const std::string& text);
Sampler parse_sampler(const std::string& text);

struct DepthResult {
  double value = 0.0;  // in [0, 1]
  std::string criterion;
  Estimator estimator = Estimator::monte_carlo;
  std::size_t N = 0;  // reference size; 0 for closed forms
  std::uint64_t seed = 0;
  double criterion_value = 0.0;  // zeta(f_obs, f_c), or the RKHS norm for closed forms
};

inline constexpr std::size_t kDefaultMonteCarloSize = 1000;

/// Relative gap below which two criterion values count as tied.
inline constexpr double kTieTolerance = 1e-12;

/// Fraction of reference values >= the observed value (ties, up to
/// kTieTolerance relative, count).
double depth_from_values(double observed, std::span<const double> reference,
                         kernels::Exec exec = kernels::Exec::parallel);

/// Per-coordinate resampling with replacement from the columns of `coeffs`.
/// Row j draws from substream (seed, j).
RowMatrix bootstrap_reference(const CoefficientMatrix& coeffs, std::size_t N, std::uint64_t seed,
                              kernels::Exec exec = kernels::Exec::parallel);

/// Gaussian KL coefficients: row j, column p ~ N(0, lambda_p), substream (seed, j).
RowMatrix gaussian_reference(const EigenSystem& system, std::size_t N, std::uint64_t seed,
                             kernels::Exec exec = kernels::Exec::parallel);

/// zeta(g_j, f_c) for g_j = base + sum_p rows(j, p) phi_p.
std::vector<double> reference_criterion_values(const Criterion& criterion, const RowMatrix& rows,
                                               const EigenSystem& system, const GridFunction& base,
                                               const GridFunction& f_c,
                                               kernels::Exec exec = kernels::Exec::parallel);

/// zeta(g_j, f_c) for explicit reference functions.
std::vector<double> sample_criterion_values(const Criterion& criterion, const FunctionalSample& reference,
                                            const GridFunction& f_c, kernels::Exec exec = kernels::Exec::parallel);

/// Monte Carlo depth against a coefficient reference set g_j = f_c + sum_p rows(j, p) phi_p.
DepthResult mc_depth(const GridFunction& f_obs, const GridFunction& f_c, const Criterion& criterion,
                     const RowMatrix& reference, const EigenSystem& system, std::uint64_t seed,
                     kernels::Exec exec = kernels::Exec::parallel);

/// Monte Carlo depth against explicit reference functions.
DepthResult mc_depth(const GridFunction& f_obs, const GridFunction& f_c, const Criterion& criterion,
                     const FunctionalSample& reference, std::uint64_t seed,
                     kernels::Exec exec = kernels::Exec::parallel);

DepthResult sample_average_depth(const GridFunction& f_obs, const GridFunction& f_c, const Criterion& criterion,
                                 const FunctionalSample& sample, kernels::Exec exec = kernels::Exec::parallel);

/// 1 - Phi(||f_obs - f_c||_{H_K}) for a finite-dimensional Gaussian model.
DepthResult halfspace_depth_closed_form(const GridFunction& f_obs, const GridFunction& f_c,
                                        const EigenSystem& system);
/// 1 - F_{chi2(C)}(||f_obs - f_c||^2_{H_K}).
DepthResult chisq_depth(const GridFunction& f_obs, const GridFunction& f_c, const EigenSystem& system);

/// Closed forms from a known RKHS norm.
double halfspace_depth_from_norm(double rkhs_norm);
double chisq_depth_from_norm_sq(double rkhs_norm_sq, std::size_t dimension);

/// Criterion level zeta* with depth(zeta*) = alpha: the RKHS norm for the
/// halfspace form and the squared norm for the chi-square form.
double halfspace_contour_level(double alpha);
double chisq_contour_level(double alpha, std::size_t dimension);

bool central_region_membership(const DepthResult& depth, double alpha);

// Multivariate data: rows of a matrix are observations in R^d.
DepthResult mc_depth(std::span<const double> x, std::span<const double> center, const Criterion& criterion,
                     const RowMatrix& reference_points, std::uint64_t seed,
                     kernels::Exec exec = kernels::Exec::parallel);
DepthResult sample_average_depth(std::span<const double> x, std::span<const double> center,
                                 const Criterion& criterion, const RowMatrix& sample,
                                 kernels::Exec exec = kernels::Exec::parallel);
/// Reference points in R^d. Both samplers work in the principal axes of
/// `cov`: the Gaussian one draws N(0, lambda_k) scores, the bootstrap one
/// resamples each score column of the centered training rows independently.
RowMatrix multivariate_reference(const RowMatrix& training, const Eigen::VectorXd& mean, const Eigen::MatrixXd& cov,
                                 Sampler sampler, std::size_t N, std::uint64_t seed,
                                 kernels::Exec exec = kernels::Exec::parallel);
/// 1 - F_{chi2(d)}((x - mu)^T Sigma^{-1} (x - mu)).
DepthResult mahalanobis_depth_closed_form(std::span<const double> x, std::span<const double> mean,
                                          const Eigen::MatrixXd& cov);

enum class ClosedForm { chi_square, halfspace };

struct DepthOptions {
  Estimator estimator = Estimator::monte_carlo;
  ClosedForm closed_form = ClosedForm::chi_square;
  Sampler sampler = Sampler::bootstrap;
  std::size_t N = kDefaultMonteCarloSize;
  std::uint64_t seed = 0;
  kernels::Exec exec = kernels::Exec::parallel;
};

/// Scores many observations against one fitted model. Reference criterion
/// values are computed once at construction.
class DepthScorer {
 public:
  DepthScorer(const FunctionalModel& model, const FunctionalSample& sample, Criterion criterion, GridFunction f_c,
              DepthOptions options);

  DepthResult score(const GridFunction& f) const;
  std::vector<DepthResult> score_all(const FunctionalSample& queries) const;

  const Criterion& criterion() const noexcept { return criterion_; }
  const GridFunction& center() const noexcept { return f_c_; }
  const DepthOptions& options() const noexcept { return options_; }
  std::span<const double> reference_values() const noexcept { return reference_; }

 private:
  DepthResult score_value(double zeta) const;

  Criterion criterion_;
  GridFunction f_c_;
  DepthOptions options_;
  std::shared_ptr<const EigenSystem> system_;
  std::vector<double> reference_;
};

struct OutlierReport {
  std::vector<std::size_t> outliers;
  std::vector<DepthResult> results;
};

/// Flags observations whose depth against the full-sample model is < alpha.
OutlierReport detect_outliers(const DepthScorer& scorer, const FunctionalSample& sample, double alpha);

/// Fits on `sample`, builds the criterion from `make_criterion(model)` and
/// scores every observation against the sample mean.
template <class MakeCriterion>
OutlierReport detect_outliers(const FunctionalSample& sample, MakeCriterion&& make_criterion,
                              const DepthOptions& options, double alpha, const FitOptions& fit = {}) {
  const FunctionalModel model = fit_model(sample, fit, options.exec);
  DepthScorer scorer(model, sample, make_criterion(model), model.center, options);
  return detect_outliers(scorer, sample, alpha);
}

}  // namespace fdepth
