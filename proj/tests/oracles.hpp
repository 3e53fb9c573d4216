#pragma once

// Reference computations that share no code with the library. Each one
// takes a different numerical route from the implementation it checks.

#include <algorithm>
#include <cmath>
#include <numbers>
#include <vector>

namespace oracle {

/// erf by its Maclaurin series; accurate to ~1e-14 for |x| <= 3.
inline double erf_series(double x) {
  double term = x;
  double sum = x;
  for (int n = 1; n < 200; ++n) {
    term *= -x * x / n;
    const double add = term / (2 * n + 1);
    sum += add;
    if (std::abs(add) < 1e-18 * std::abs(sum)) break;
  }
  return 2.0 / std::sqrt(std::numbers::pi) * sum;
}

inline double normal_cdf(double x) { return 0.5 * (1.0 + erf_series(x / std::numbers::sqrt2)); }

/// chi-square CDF for even k: 1 - e^{-x/2} sum_{j<k/2} (x/2)^j / j!.
inline double chi2_cdf_even(double x, int k) {
  const double h = x / 2.0;
  double term = 1.0;
  double sum = 1.0;
  for (int j = 1; j < k / 2; ++j) {
    term *= h / j;
    sum += term;
  }
  return 1.0 - std::exp(-h) * sum;
}

/// Regularized lower incomplete gamma P(s, x) by its power series.
inline double gamma_p_series(double s, double x) {
  if (x <= 0.0) return 0.0;
  double term = 1.0 / s;
  double sum = term;
  for (int n = 1; n < 10000; ++n) {
    term *= x / (s + n);
    sum += term;
    if (term < 1e-17 * sum) break;
  }
  return std::exp(s * std::log(x) - x - std::lgamma(s)) * sum;
}

inline double chi2_cdf_series(double x, double k) { return gamma_p_series(k / 2.0, x / 2.0); }

/// Spearman rank correlation (no tie correction; inputs are continuous).
inline double spearman(const std::vector<double>& a, const std::vector<double>& b) {
  auto ranks = [](const std::vector<double>& v) {
    std::vector<std::size_t> idx(v.size());
    for (std::size_t i = 0; i < idx.size(); ++i) idx[i] = i;
    std::sort(idx.begin(), idx.end(), [&](std::size_t i, std::size_t j) { return v[i] < v[j]; });
    std::vector<double> r(v.size());
    for (std::size_t k = 0; k < idx.size(); ++k) r[idx[k]] = static_cast<double>(k);
    return r;
  };
  const auto ra = ranks(a);
  const auto rb = ranks(b);
  const double n = static_cast<double>(a.size());
  double d2 = 0.0;
  for (std::size_t i = 0; i < ra.size(); ++i) d2 += (ra[i] - rb[i]) * (ra[i] - rb[i]);
  return 1.0 - 6.0 * d2 / (n * (n * n - 1.0));
}

/// Kolmogorov-Smirnov distance between a sample and a CDF.
template <class Cdf>
double ks_distance(std::vector<double> x, Cdf&& cdf) {
  std::sort(x.begin(), x.end());
  const double n = static_cast<double>(x.size());
  double d = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double f = cdf(x[i]);
    d = std::max({d, std::abs(f - static_cast<double>(i) / n), std::abs(static_cast<double>(i + 1) / n - f)});
  }
  return d;
}

inline double median(std::vector<double> v) {
  std::sort(v.begin(), v.end());
  const std::size_t n = v.size();
  return n % 2 == 1 ? v[n / 2] : 0.5 * (v[n / 2 - 1] + v[n / 2]);
}

}  // namespace oracle
