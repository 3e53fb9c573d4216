#include "fdepth/special.hpp"

#include <cmath>
#include <limits>
#include <numbers>

#include <boost/math/distributions/chi_squared.hpp>
#include <boost/math/distributions/normal.hpp>
#include <boost/math/special_functions/gamma.hpp>

#include "fdepth/error.hpp"

namespace fdepth {

double std_normal_cdf(double x) { return 0.5 * std::erfc(-x / std::numbers::sqrt2); }

double std_normal_sf(double x) { return 0.5 * std::erfc(x / std::numbers::sqrt2); }

double std_normal_quantile(double p) {
  if (!(p > 0.0 && p < 1.0)) {
    if (p == 0.0) return -std::numeric_limits<double>::infinity();
    if (p == 1.0) return std::numeric_limits<double>::infinity();
    throw Error(ErrorKind::invalid_config, "normal quantile requires p in [0, 1]");
  }
  return boost::math::quantile(boost::math::normal_distribution<double>(0.0, 1.0), p);
}

double chi2_cdf(double x, double k) {
  if (!(k > 0.0)) throw Error(ErrorKind::invalid_config, "chi-square needs k > 0");
  if (!(x > 0.0)) return 0.0;
  if (std::isinf(x)) return 1.0;
  return boost::math::gamma_p(0.5 * k, 0.5 * x);
}

double chi2_sf(double x, double k) {
  if (!(k > 0.0)) throw Error(ErrorKind::invalid_config, "chi-square needs k > 0");
  if (!(x > 0.0)) return 1.0;
  if (std::isinf(x)) return 0.0;
  return boost::math::gamma_q(0.5 * k, 0.5 * x);
}

double chi2_quantile(double p, double k) {
  if (!(p >= 0.0 && p <= 1.0)) throw Error(ErrorKind::invalid_config, "chi-square quantile requires p in [0, 1]");
  if (p == 0.0) return 0.0;
  if (p == 1.0) return std::numeric_limits<double>::infinity();
  return boost::math::quantile(boost::math::chi_squared_distribution<double>(k), p);
}

}  // namespace fdepth
