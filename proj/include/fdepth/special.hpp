#pragma once

namespace fdepth {

/// Standard normal CDF, via erfc so the upper tail keeps full relative accuracy.
double std_normal_cdf(double x);
/// 1 - Phi(x) without cancellation.
double std_normal_sf(double x);
double std_normal_quantile(double p);

/// CDF of chi-square with k degrees of freedom (regularized lower incomplete gamma).
double chi2_cdf(double x, double k);
double chi2_sf(double x, double k);
double chi2_quantile(double p, double k);

}  // namespace fdepth
