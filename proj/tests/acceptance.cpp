// Acceptance suite: one PASS/FAIL line per criterion, nonzero exit on any
// failure. Tolerances are fixed here and reported next to the measured values.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <numbers>
#include <string>
#include <vector>

#include "fdepth/depth.hpp"
#include "fdepth/rng.hpp"
#include "fdepth/simgen.hpp"
#include "fdepth/warping.hpp"
#include "oracles.hpp"

using namespace fdepth;
using std::numbers::pi;

namespace {

struct Outcome {
  bool pass;
  std::string detail;
};

std::string fmt(const char* f, auto... args) {
  char buf[512];
  std::snprintf(buf, sizeof buf, f, args...);
  return buf;
}

std::shared_ptr<const EigenSystem> share(EigenSystem s) { return std::make_shared<const EigenSystem>(std::move(s)); }

std::vector<double> values_of(const std::vector<DepthResult>& r) {
  std::vector<double> v;
  for (const auto& d : r) v.push_back(d.value);
  return v;
}

std::size_t argmin(const std::vector<double>& v) {
  return static_cast<std::size_t>(std::min_element(v.begin(), v.end()) - v.begin());
}
std::size_t argmax(const std::vector<double>& v) {
  return static_cast<std::size_t>(std::max_element(v.begin(), v.end()) - v.begin());
}

// 1. Modified norm with a_p = 1/p is pi^2 times the squared L2 norm on the
// Brownian-bridge model, so the two depths rank identically.
Outcome proportionality() {
  const Grid g = Grid::unit(101);
  const auto gen = sim::brownian_bridge_laplace_sample(g, 100, 1000, 1);
  const auto& truth = gen.system;
  const auto weights = WeightSequence::inverse_p();

  double worst_ratio = 0.0;
  for (std::size_t i = 0; i < 100; ++i) {
    const auto f = gen.sample.row(i);
    const double ratio = modified_norm_sq(kl_project(f, *truth), *truth, weights) / std::pow(lp_norm(f, 2.0), 2);
    worst_ratio = std::max(worst_ratio, std::abs(ratio / (pi * pi) - 1.0));
  }

  // True system: common bootstrap reference of the true coefficients, f_c = 0.
  const auto zero = GridFunction::zeros(g);
  const CoefficientMatrix coeffs = project_sample(gen.sample, truth);
  const RowMatrix ref = bootstrap_reference(coeffs, 1000, 2);
  const auto mod = Criterion::modified_rkhs(truth, weights);
  const auto l2 = Criterion::lp(2);
  std::vector<double> d_mod;
  std::vector<double> d_l2;
  for (std::size_t i = 0; i < 100; ++i) {
    d_mod.push_back(mc_depth(gen.sample.row(i), zero, mod, ref, *truth, 2).value);
    d_l2.push_back(mc_depth(gen.sample.row(i), zero, l2, ref, *truth, 2).value);
  }
  const double rho_true = oracle::spearman(d_mod, d_l2);
  const bool identical = d_mod == d_l2;

  // Estimated system, N = 1000, one shared bootstrap reference. The algorithm
  // sees an observation only through its KL coefficients, and the L2 norm is
  // proportional to the modified norm in that coefficient form, so the L2 depth
  // scores the projected observation. The raw-function L2 depth, which adds the
  // truncation residual to the observation only, is reported alongside.
  const auto model = fit_model(gen.sample);
  DepthOptions o;
  o.seed = 3;
  const DepthScorer est_mod(model, gen.sample, Criterion::modified_rkhs(model.system, weights), model.center, o);
  const DepthScorer est_l2(model, gen.sample, l2, model.center, o);
  std::vector<double> dm;
  std::vector<double> dl;
  std::vector<double> dl_raw;
  for (std::size_t i = 0; i < 100; ++i) {
    const auto f = gen.sample.row(i);
    const auto projected = model.center + reconstruct(kl_project(f - model.center, *model.system), *model.system);
    dm.push_back(est_mod.score(f).value);
    dl.push_back(est_l2.score(projected).value);
    dl_raw.push_back(est_l2.score(f).value);
  }
  const double rho_est = oracle::spearman(dm, dl);
  const double rho_raw = oracle::spearman(dm, dl_raw);

  const bool pass = worst_ratio <= 0.005 && identical && rho_true == 1.0 && rho_est >= 0.99;
  return {pass, fmt("max |ratio/pi^2 - 1| = %.2e (<= 5e-3), true-system depths identical = %s, Spearman = %.6f (== 1), "
                    "estimated C = %zu Spearman = %.4f (>= 0.99; raw-function L2 %.4f)",
                    worst_ratio, identical ? "yes" : "no", rho_true, model.system->count(), rho_est, rho_raw)};
}

// 2. RKHS norm under the true basis equals the squared L2 norm of f'.
Outcome derivative_identity() {
  const Grid g = Grid::unit(2001);
  const auto sys = sim::brownian_bridge_system(g, 50);
  CounterRng rng(17, 0);
  double worst = 0.0;
  for (int k = 0; k < 20; ++k) {
    const int top = 3 + k % 8;  // band limit within the retained modes
    std::vector<double> c(50, 0.0);
    for (int p = 0; p < top; ++p) c[static_cast<std::size_t>(p)] = rng.normal() / (1.0 + p);
    const auto f = reconstruct(c, sys);
    const double rk = rkhs_norm_sq(kl_project(f, sys), sys);
    const double d2 = std::pow(lp_norm(derivative(f, 1), 2.0), 2);
    worst = std::max(worst, std::abs(rk / d2 - 1.0));
  }
  return {worst <= 0.02, fmt("max relative gap over 20 functions = %.2e (<= 2e-2)", worst)};
}

// 3. Squared RKHS norms of a P = 10 Fourier GP follow chi2(10).
Outcome chi_square_fit() {
  const auto gen = sim::fourier_gp_sample(sim::FourierKind::with_constant, 10, sim::CoefficientLaw::decaying(), 500,
                                          Grid::unit(101), 5);
  const auto model = fit_model(gen.sample);
  std::vector<double> norms;
  for (Eigen::Index i = 0; i < model.coefficients.coeffs.rows(); ++i) {
    const auto row = model.coefficients.coeffs.row(i);
    norms.push_back(rkhs_norm_sq(std::span<const double>(row.data(), static_cast<std::size_t>(row.size())), *model.system));
  }
  const double ks = oracle::ks_distance(norms, [](double x) { return oracle::chi2_cdf_even(x, 10); });
  return {ks <= 0.08 && model.system->count() == 10,
          fmt("C = %zu (== 10), KS distance to chi2(10) = %.4f (<= 0.08)", model.system->count(), ks)};
}

// 4. Planted outliers of the Fourier design, a_p = 1/p against constant-one weights.
Outcome fourier_outliers() {
  int good_seeds = 0;
  int recall_inv = 0;
  int recall_one = 0;
  double accuracy = 0.0;
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const auto mix = sim::fourier_outlier_mixture(100, 45, 5, 3.0, Grid::unit(201), seed);
    DepthOptions o;
    o.seed = sim::sub_seed(seed, 9);
    for (int constant = 0; constant < 2; ++constant) {
      const auto rep = detect_outliers(
          mix.sample,
          [&](const FunctionalModel& m) {
            return constant ? Criterion::modified_rkhs(m.system, WeightSequence::constant_one(), true)
                            : Criterion::modified_rkhs(m.system, WeightSequence::inverse_p());
          },
          o, 0.1);
      std::vector<bool> flag(50, false);
      for (auto i : rep.outliers) flag[i] = true;
      int tp = 0;
      int correct = 0;
      for (std::size_t i = 0; i < 50; ++i) {
        tp += flag[i] && mix.outlier[i];
        correct += flag[i] == mix.outlier[i];
      }
      if (constant) {
        recall_one += tp;
      } else {
        recall_inv += tp;
        accuracy += correct / 50.0 / 20.0;
        if (tp == 5 && correct >= 48) ++good_seeds;  // 48/50 = 96% >= 95%
      }
    }
  }
  const bool pass = good_seeds >= 18 && recall_one < recall_inv;
  return {pass, fmt("seeds with all 5 flagged and accuracy >= 95%% = %d/20 (>= 18), mean accuracy %.3f, "
                    "recall a_p = 1/p %.2f vs constant-one %.2f (strictly lower)",
                    good_seeds, accuracy, recall_inv / 100.0, recall_one / 100.0)};
}

// 5. Bivariate normal: Monte Carlo against the closed form, and Monte Carlo
// against the sample average.
Outcome mahalanobis_depth() {
  Eigen::Vector2d mu(0.0, 0.0);
  Eigen::Matrix2d sigma;
  sigma << 1.0, 1.0 / 3.0, 1.0 / 3.0, 0.25;

  auto fitted = [](const RowMatrix& x) {
    const Eigen::VectorXd mean = x.colwise().mean().transpose();
    const RowMatrix c = x.rowwise() - mean.transpose();
    return std::pair<Eigen::VectorXd, Eigen::MatrixXd>(mean, c.transpose() * c / static_cast<double>(x.rows()));
  };

  const RowMatrix x = sim::mvn_sample(mu, sigma, 50, 6);
  const auto [mean, cov] = fitted(x);
  const auto crit = Criterion::mahalanobis(cov);
  const RowMatrix ref = multivariate_reference(x, mean, cov, Sampler::gaussian, 5000, 7);
  double worst = 0.0;
  for (Eigen::Index i = 0; i < 50; ++i) {
    const Eigen::RowVectorXd q = x.row(i);
    const std::span<const double> qs(q.data(), 2);
    const std::span<const double> ms(mean.data(), 2);
    worst = std::max(worst, std::abs(mc_depth(qs, ms, crit, ref, 7).value -
                                     mahalanobis_depth_closed_form(qs, ms, cov).value));
  }

  // Errors against the true-model depth at 50 fixed query points.
  const RowMatrix queries = sim::mvn_sample(mu, sigma, 50, 8);
  std::vector<double> err_sa;
  std::vector<double> err_mc;
  for (std::uint64_t rep = 0; rep < 100; ++rep) {
    const RowMatrix s = sim::mvn_sample(mu, sigma, 50, sim::sub_seed(100, rep));
    const auto [m, c] = fitted(s);
    const auto cr = Criterion::mahalanobis(c);
    const RowMatrix r = multivariate_reference(s, m, c, Sampler::gaussian, 5000, sim::sub_seed(200, rep));
    for (Eigen::Index i = 0; i < 50; ++i) {
      const Eigen::RowVectorXd q = queries.row(i);
      const std::span<const double> qs(q.data(), 2);
      const std::span<const double> ms(m.data(), 2);
      const double truth = mahalanobis_depth_closed_form(qs, std::span<const double>(mu.data(), 2), sigma).value;
      err_sa.push_back(std::abs(sample_average_depth(qs, ms, cr, s).value - truth));
      err_mc.push_back(std::abs(mc_depth(qs, ms, cr, r, rep).value - truth));
    }
  }
  const double med_sa = oracle::median(err_sa);
  const double med_mc = oracle::median(err_mc);
  return {worst <= 0.02 && med_sa > med_mc,
          fmt("max |MC - closed form| = %.4f (<= 0.02), median error sample-average %.4f > MC %.4f", worst, med_sa,
              med_mc)};
}

// 6. The estimated modified norm of a fixed function converges as n grows.
Outcome consistency() {
  const Grid g = Grid::unit(101);
  const auto truth = share(sim::brownian_bridge_system(g, 99));
  std::vector<double> c(99, 0.0);
  c[0] = 0.25;
  c[1] = -0.1;
  c[2] = 0.05;
  const auto f_obs = reconstruct(c, *truth);
  const auto weights = WeightSequence::inverse_p();
  const double target = modified_norm_sq(kl_project(f_obs, *truth), *truth, weights);

  std::vector<double> medians;
  for (std::size_t n : {50u, 200u, 800u}) {
    std::vector<double> err;
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
      const auto s = sim::brownian_bridge_laplace_sample(g, n, 1000, sim::sub_seed(seed, n)).sample;
      const auto model = fit_model(s);
      const double est = modified_norm_sq(kl_project(f_obs - model.center, *model.system), *model.system, weights);
      err.push_back(std::abs(est - target));
    }
    medians.push_back(oracle::median(err));
  }
  const bool pass = medians[1] < medians[0] && medians[2] < medians[1];
  return {pass, fmt("median |estimate - truth| at n = 50, 200, 800: %.4f, %.4f, %.4f (strictly decreasing)", medians[0],
                    medians[1], medians[2])};
}

// 7. Closed-form halfspace depth degenerates as the dimension grows.
Outcome degeneracy() {
  const Grid g = Grid::unit(201);
  const auto basis = sim::brownian_bridge_system(g, 80);
  std::vector<double> medians;
  for (std::size_t P : {5u, 20u, 80u}) {
    std::vector<double> lambda(P);
    for (std::size_t p = 0; p < P; ++p) lambda[p] = 1.0 / static_cast<double>((p + 1) * (p + 1));
    const EigenSystem sys(g, lambda, basis.eigenfunctions().topRows(static_cast<Eigen::Index>(P)));
    const auto zero = GridFunction::zeros(g);
    std::vector<double> d;
    for (std::uint64_t seed = 0; seed < 50; ++seed) {
      const auto f = sim::gp_sample(sys, 1, seed).row(0);
      d.push_back(halfspace_depth_closed_form(f, zero, sys).value);
    }
    medians.push_back(oracle::median(d));
  }
  const bool pass = medians[1] < medians[0] && medians[2] < medians[1] && medians[2] < 0.01;
  return {pass, fmt("median depth at P = 5, 20, 80: %.3e, %.3e, %.3e (decreasing, last < 0.01)", medians[0], medians[1],
                    medians[2])};
}

// 8. Depth axioms: linear invariance, maximality, ray monotonicity and
// vanishing at infinity.
Outcome axioms() {
  std::vector<std::string> failures;
  const Grid g = Grid::unit(51);
  const auto sample = sim::brownian_bridge_laplace_sample(g, 60, 200, 21).sample;
  const auto h = GridFunction::sample(g, [](double t) { return std::cos(2.0 * t) + t * t; });
  constexpr std::size_t N = 1000;
  const double mc_tol = 2.0 / std::sqrt(static_cast<double>(N));

  using Make = std::function<Criterion(const FunctionalModel&)>;
  struct Case {
    std::string name;
    Make make;
    bool closed;
  };
  const std::vector<Case> cases{
      {"lp(2)", [](const FunctionalModel&) { return Criterion::lp(2); }, false},
      {"derivative-lp(1,2)", [](const FunctionalModel&) { return Criterion::derivative_lp(1, 2); }, false},
      {"modified-rkhs",
       [](const FunctionalModel& m) { return Criterion::modified_rkhs(m.system, WeightSequence::inverse_p()); }, false},
      {"rkhs", [](const FunctionalModel& m) { return Criterion::rkhs(m.system); }, true},
  };

  auto scorer = [&](const FunctionalSample& s, const Case& c, Estimator e) {
    const FunctionalModel model = fit_model(s);
    DepthOptions o;
    o.estimator = e;
    o.N = N;
    o.seed = 5;
    return DepthScorer(model, s, c.make(model), model.center, o);
  };

  for (const auto& c : cases) {
    std::vector<Estimator> estimators{Estimator::monte_carlo};
    if (c.closed) estimators.push_back(Estimator::closed_form);
    for (Estimator e : estimators) {
      const std::string tag = c.name + "/" + to_string(e);
      const auto base = scorer(sample, c, e);
      const auto d0 = values_of(base.score_all(sample));

      // P-1: a f + h against {a f_i + h}, same seed.
      for (double a : {-2.0, 0.5, 3.0}) {
        RowMatrix v = a * sample.values();
        for (Eigen::Index i = 0; i < v.rows(); ++i) {
          for (Eigen::Index k = 0; k < v.cols(); ++k) v(i, k) += h[static_cast<std::size_t>(k)];
        }
        const FunctionalSample moved(g, v);
        const auto d1 = values_of(scorer(moved, c, e).score_all(moved));
        double gap = 0.0;
        for (std::size_t i = 0; i < d0.size(); ++i) gap = std::max(gap, std::abs(d1[i] - d0[i]));
        // Monte Carlo indicators must match exactly; closed forms up to rounding.
        if (gap > (e == Estimator::closed_form ? 1e-9 : 0.0)) failures.push_back(fmt("P-1 %s a=%g gap %.2e", tag.c_str(), a, gap));
      }
      // P-2: the center is deepest.
      const double top = base.score(base.center()).value;
      if (top < *std::max_element(d0.begin(), d0.end())) failures.push_back("P-2 " + tag);
      // P-3: along the ray from the center.
      for (std::size_t i = 0; i < 10; ++i) {
        const auto f = sample.row(i);
        double prev = 2.0;
        for (int k = 1; k <= 9; ++k) {
          const double alpha = 0.1 * k;
          const double d = base.score(base.center() + alpha * (f - base.center())).value;
          const double slack = e == Estimator::closed_form ? 0.0 : mc_tol;
          if (d > prev + slack) failures.push_back(fmt("P-3 %s row %zu alpha %.1f", tag.c_str(), i, alpha));
          prev = d;
        }
      }
      // P-4: far away means zero depth.
      for (std::size_t i = 0; i < 10; ++i) {
        const double d = base.score(1e3 * sample.row(i)).value;
        if (d > 1e-6) failures.push_back(fmt("P-4 %s row %zu depth %.2e", tag.c_str(), i, d));
      }
    }
  }

  // Sample average joins the Monte Carlo estimator for maximality.
  for (const auto& c : cases) {
    const auto sa = scorer(sample, c, Estimator::sample_average);
    const auto d = values_of(sa.score_all(sample));
    if (sa.score(sa.center()).value < *std::max_element(d.begin(), d.end())) failures.push_back("P-2 " + c.name + "/sample-average");
  }

  // Mahalanobis on R^2.
  {
    Eigen::Matrix2d sigma;
    sigma << 1.0, 1.0 / 3.0, 1.0 / 3.0, 0.25;
    const RowMatrix x = sim::mvn_sample(Eigen::Vector2d(0, 0), sigma, 50, 3);
    const Eigen::Vector2d shift(0.7, -1.2);
    auto depths = [&](const RowMatrix& pts, bool closed) {
      const Eigen::VectorXd mean = pts.colwise().mean().transpose();
      const RowMatrix c = pts.rowwise() - mean.transpose();
      const Eigen::MatrixXd cov = c.transpose() * c / 50.0;
      const auto crit = Criterion::mahalanobis(cov);
      const RowMatrix ref = multivariate_reference(pts, mean, cov, Sampler::bootstrap, N, 5);
      std::vector<double> out;
      auto score = [&](const Eigen::Vector2d& q) {
        const std::span<const double> qs(q.data(), 2);
        const std::span<const double> ms(mean.data(), 2);
        return closed ? mahalanobis_depth_closed_form(qs, ms, cov).value : mc_depth(qs, ms, crit, ref, 5).value;
      };
      for (Eigen::Index i = 0; i < pts.rows(); ++i) out.push_back(score(pts.row(i).transpose()));
      out.push_back(score(mean));
      for (Eigen::Index i = 0; i < 10; ++i) {
        for (int k = 1; k <= 9; ++k) out.push_back(score(mean + 0.1 * k * (pts.row(i).transpose() - mean)));
        out.push_back(score(1e3 * pts.row(i).transpose()));
      }
      return out;
    };
    for (bool closed : {false, true}) {
      const std::string tag = closed ? "mahalanobis/closed-form" : "mahalanobis/monte-carlo";
      const auto d0 = depths(x, closed);
      for (double a : {-2.0, 0.5, 3.0}) {
        const RowMatrix moved = (a * x).rowwise() + shift.transpose();
        const auto d1 = depths(moved, closed);
        double gap = 0.0;
        for (std::size_t i = 0; i < 50; ++i) gap = std::max(gap, std::abs(d1[i] - d0[i]));
        if (gap > (closed ? 1e-9 : 0.0)) failures.push_back(fmt("P-1 %s a=%g gap %.2e", tag.c_str(), a, gap));
      }
      if (d0[50] < *std::max_element(d0.begin(), d0.begin() + 50)) failures.push_back("P-2 " + tag);
      for (std::size_t i = 0; i < 10; ++i) {
        const std::size_t at = 51 + i * 10;
        for (int k = 1; k < 9; ++k) {
          if (d0[at + k] > d0[at + k - 1] + (closed ? 0.0 : mc_tol)) failures.push_back(fmt("P-3 %s row %zu", tag.c_str(), i));
        }
        if (d0[at + 9] > 1e-6) failures.push_back(fmt("P-4 %s row %zu", tag.c_str(), i));
      }
    }
  }

  std::string detail = failures.empty() ? "P-1..P-4 hold for lp(2), derivative-lp(1,2), modified-rkhs, rkhs (closed form) "
                                          "and mahalanobis under every applicable estimator"
                                        : fmt("%zu violations, first: %s", failures.size(), failures.front().c_str());
  return {failures.empty(), detail};
}

// 9. Matern mixture: the rough Matern-1/2 path stands out under the derivative
// norm but hides under the L2 norm.
Outcome matern_interloper() {
  const Grid g = Grid::unit(101);
  const auto smooth_k = sim::matern_kernel_matrix(g, 1.5, 1.0);
  const auto rough_k = sim::matern_kernel_matrix(g, 0.5, 1.0);
  int lowest = 0;
  int top5 = 0;
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    RowMatrix v(30, 101);
    v.topRows(29) = sim::gp_sample(smooth_k, 29, sim::sub_seed(seed, 1)).values();
    v.row(29) = sim::gp_sample(rough_k, 1, sim::sub_seed(seed, 2)).values().row(0);
    const FunctionalSample s(g, v);
    const auto zero = GridFunction::zeros(g);
    std::vector<double> dd;
    std::vector<double> ld;
    for (std::size_t i = 0; i < 30; ++i) {
      dd.push_back(sample_average_depth(s.row(i), zero, Criterion::derivative_lp(1, 2), s).value);
      ld.push_back(sample_average_depth(s.row(i), zero, Criterion::lp(2), s).value);
    }
    if (argmin(dd) == 29) ++lowest;
    int deeper = 0;
    for (std::size_t i = 0; i < 29; ++i) deeper += ld[i] > ld[29];
    if (deeper < 5) ++top5;
  }
  return {lowest >= 16 && top5 >= 16,
          fmt("lowest derivative-norm depth in %d/20 seeds (>= 16), top 5 by L2 depth in %d/20 seeds (>= 16)", lowest,
              top5)};
}

// 10. Warped two-bump design: warping depths around the Karcher template.
Outcome warped_bumps() {
  int noiseless = 0;
  int noisy = 0;
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    for (bool with_noise : {false, true}) {
      const auto w = sim::two_bump_warped_sample(21, seed, with_noise);
      const auto k = karcher_mean(w.sample);
      const auto crit = with_noise ? Criterion::warp_fisher_rao() : Criterion::warp_l2();
      const auto zeta = sample_criterion_values(crit, w.sample, k.template_function);
      std::vector<double> depth;
      for (double z : zeta) depth.push_back(depth_from_values(z, zeta));
      if (with_noise) {
        noisy += argmin(depth) == w.middle && std::count(depth.begin(), depth.end(), depth[w.middle]) == 1;
      } else {
        noiseless += argmax(depth) == w.middle && std::count(depth.begin(), depth.end(), depth[w.middle]) == 1;
      }
    }
  }
  return {noiseless >= 16 && noisy >= 16,
          fmt("noiseless middle deepest under warp-L2 in %d/20 seeds (>= 16), noisy middle shallowest under "
              "Fisher-Rao in %d/20 seeds (>= 16)",
              noiseless, noisy)};
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria{
      {"modified-norm proportionality", proportionality},
      {"derivative identity", derivative_identity},
      {"chi-square fit", chi_square_fit},
      {"Fourier outlier detection", fourier_outliers},
      {"Mahalanobis depth estimators", mahalanobis_depth},
      {"modified-norm consistency", consistency},
      {"halfspace degeneracy", degeneracy},
      {"depth axioms", axioms},
      {"Matern interloper", matern_interloper},
      {"warped two-bump functions", warped_bumps},
  };
  int failed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    const auto start = std::chrono::steady_clock::now();
    Outcome r;
    try {
      r = criteria[i].second();
    } catch (const std::exception& e) {
      r = {false, std::string("exception: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    std::printf("%s %zu %s: %s [%.1fs]\n", r.pass ? "PASS" : "FAIL", i + 1, criteria[i].first.c_str(), r.detail.c_str(),
                secs);
    std::fflush(stdout);
    failed += !r.pass;
  }
  std::printf("%d of %zu criteria passed\n", static_cast<int>(criteria.size()) - failed, criteria.size());
  return failed == 0 ? 0 : 1;
}
