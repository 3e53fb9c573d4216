#include "cli.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <iostream>
#include <numbers>
#include <optional>
#include <sstream>

#include "CLI11.hpp"
#include "fdepth/depth.hpp"
#include "fdepth/io.hpp"
#include "fdepth/simgen.hpp"
#include "fdepth/warping.hpp"

namespace fdepth::cli {

namespace {

using nlohmann::json;

struct FitArgs {
  std::string input;
  std::string out;
  std::optional<double> delta;
  bool no_center = false;
  bool multivariate = false;
};

struct ScoreArgs {
  std::string model;
  std::string query;
  std::string criterion;
  std::string weights = "inverse-p";
  std::string estimator = "monte-carlo";
  std::string sampler = "bootstrap";
  std::string closed_form = "chi-square";
  std::string fc;
  std::string plot;
  std::string out;
  double p = 2.0;
  int r = 1;
  std::size_t N = kDefaultMonteCarloSize;
  std::uint64_t seed = 0;
  double alpha = 0.05;
  bool allow_divergent = false;
};

struct SimulateArgs {
  std::string preset;
  std::uint64_t seed = 0;
  std::string out;
};

struct AlignArgs {
  std::string input;
  std::string out_template;
  std::string out_warpings;
  int max_iter = 20;
};

struct Scored {
  std::vector<DepthResult> results;
  std::string criterion;
  std::optional<std::string> weights;
  std::optional<double> delta;
  std::size_t N = 0;
};

int exit_code(ErrorKind kind) {
  // Numerical breakdowns (for example a zero eigenvalue inside an RKHS norm)
  // are reported as degenerate models.
  return kind == ErrorKind::numerical ? static_cast<int>(ErrorKind::degenerate_model) : static_cast<int>(kind);
}

void write_text(const std::string& path, const std::string& text, std::ostream& fallback) {
  if (path.empty()) {
    fallback << text;
    return;
  }
  std::ofstream f(path);
  if (!f) throw Error(ErrorKind::input_format, "cannot write " + path);
  f << text;
}

// ---------------------------------------------------------------- fit

int cmd_fit(const FitArgs& a, std::ostream& out) {
  const io::Dataset data = io::read_dataset(std::filesystem::path(a.input));
  io::StoredModel stored;
  if (a.multivariate) {
    stored = io::make_multivariate_model(data);
  } else {
    FitOptions opts;
    opts.delta = a.delta;
    opts.center = !a.no_center;
    stored = io::make_functional_model(data, opts);
  }
  io::save_model(a.out, stored);
  json summary{{"model", a.out}, {"kind", a.multivariate ? "multivariate" : "functional"}, {"n", data.size()}};
  if (!a.multivariate) {
    const auto& sys = *stored.model->system;
    summary["C"] = sys.count();
    summary["delta"] = sys.delta();
    summary["leading_eigenvalue"] = sys.eigenvalue(0);
  }
  out << summary.dump() << '\n';
  return 0;
}

// ---------------------------------------------------------------- depth

Criterion functional_criterion(const ScoreArgs& a, const FunctionalModel& model, std::string& name) {
  name = a.criterion.empty() ? "modified-rkhs" : a.criterion;
  if (name == "lp") return Criterion::lp(a.p);
  if (name == "derivative-lp") return Criterion::derivative_lp(a.r, a.p);
  if (name == "modified-rkhs") {
    return Criterion::modified_rkhs(model.system, WeightSequence::parse(a.weights), a.allow_divergent);
  }
  if (name == "rkhs") {
    if (!a.allow_divergent) {
      throw Error(ErrorKind::invalid_config,
                  "the unweighted RKHS norm diverges on infinite-dimensional data; pass --allow-divergent");
    }
    return Criterion::rkhs(model.system);
  }
  if (name == "warp-l2") return Criterion::warp_l2();
  if (name == "warp-fisher-rao") return Criterion::warp_fisher_rao();
  throw Error(ErrorKind::invalid_config, "criterion '" + name + "' does not apply to functional models");
}

GridFunction functional_center(const ScoreArgs& a, const Criterion& crit, const io::StoredModel& stored) {
  const FunctionalSample training = stored.training.sample();
  const Grid& grid = stored.model->system->grid();
  std::string fc = a.fc;
  if (fc.empty()) fc = crit.is_warping() ? "template" : "mean";
  if (fc == "mean") return training.mean();
  if (fc == "zero") return GridFunction::zeros(grid);
  if (fc == "template") return karcher_mean(training).template_function;
  const io::Dataset d = io::read_dataset(std::filesystem::path(fc));
  const FunctionalSample s = d.sample();
  require_same_grid(s.grid(), grid);
  return s.row(0);
}

Scored score_functional(const ScoreArgs& a, const io::StoredModel& stored, const io::Dataset& query) {
  const FunctionalModel& model = *stored.model;
  const FunctionalSample queries = query.sample();
  require_same_grid(queries.grid(), model.system->grid());

  Scored s;
  const Criterion crit = functional_criterion(a, model, s.criterion);
  if (std::holds_alternative<criterion::ModifiedRkhs>(crit.spec())) s.weights = a.weights;
  s.delta = model.system->delta();

  DepthOptions opts;
  opts.estimator = parse_estimator(a.estimator);
  opts.sampler = parse_sampler(a.sampler);
  opts.N = a.N;
  opts.seed = a.seed;
  if (a.closed_form == "halfspace") {
    opts.closed_form = ClosedForm::halfspace;
  } else if (a.closed_form != "chi-square") {
    throw Error(ErrorKind::invalid_config, "unknown closed form '" + a.closed_form + "'");
  }
  const FunctionalSample training = stored.training.sample();
  const DepthScorer scorer(model, training, crit, functional_center(a, crit, stored), opts);
  s.results = scorer.score_all(queries);
  s.N = scorer.options().N;
  return s;
}

Scored score_multivariate(const ScoreArgs& a, const io::StoredModel& stored, const io::Dataset& query) {
  const auto d = stored.mean.size();
  if (query.values.cols() != d) throw Error(ErrorKind::grid_mismatch, "query dimension differs from the model");
  Scored s;
  s.criterion = a.criterion.empty() ? "mahalanobis" : a.criterion;
  Criterion crit = s.criterion == "mahalanobis" ? Criterion::mahalanobis(stored.covariance)
                   : s.criterion == "lp"       ? Criterion::lp(a.p)
                                               : throw Error(ErrorKind::invalid_config,
                                                             "criterion '" + s.criterion +
                                                                 "' does not apply to multivariate models");
  Eigen::VectorXd center = stored.mean;
  if (a.fc == "zero") {
    center.setZero();
  } else if (!a.fc.empty() && a.fc != "mean") {
    throw Error(ErrorKind::invalid_config, "multivariate centers are 'mean' or 'zero'");
  }
  const std::span<const double> c(center.data(), static_cast<std::size_t>(d));
  const Estimator est = parse_estimator(a.estimator);
  RowMatrix reference;
  if (est == Estimator::monte_carlo) {
    reference = multivariate_reference(stored.training.values, stored.mean, stored.covariance,
                                       parse_sampler(a.sampler), a.N, a.seed);
    s.N = a.N;
  } else if (est == Estimator::sample_average) {
    s.N = static_cast<std::size_t>(stored.training.values.rows());
  } else if (s.criterion != "mahalanobis") {
    throw Error(ErrorKind::invalid_config, "closed-form depth needs the Mahalanobis criterion");
  }
  for (Eigen::Index i = 0; i < query.values.rows(); ++i) {
    const std::span<const double> x(query.values.row(i).data(), static_cast<std::size_t>(d));
    switch (est) {
      case Estimator::monte_carlo:
        s.results.push_back(mc_depth(x, c, crit, reference, a.seed));
        break;
      case Estimator::sample_average:
        s.results.push_back(sample_average_depth(x, c, crit, stored.training.values));
        break;
      case Estimator::closed_form:
        s.results.push_back(mahalanobis_depth_closed_form(x, c, stored.covariance));
        break;
    }
  }
  return s;
}

void write_plot(const std::string& path, const io::Dataset& query, const std::vector<DepthResult>& results) {
  std::ofstream f(path);
  if (!f) throw Error(ErrorKind::input_format, "cannot write " + path);
  f << "id,t,value,depth\n";
  for (std::size_t i = 0; i < query.size(); ++i) {
    for (std::size_t k = 0; k < query.points.size(); ++k) {
      f << query.ids[i] << ',' << io::format_double(query.points[k]) << ','
        << io::format_double(query.values(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(k))) << ','
        << io::format_double(results[i].value) << '\n';
    }
  }
}

int cmd_score(const ScoreArgs& a, bool outliers_mode, std::ostream& out) {
  if (!(a.alpha >= 0.0 && a.alpha <= 1.0)) throw Error(ErrorKind::invalid_config, "--alpha must lie in [0, 1]");
  const io::StoredModel stored = io::load_model(a.model);
  const io::Dataset query = a.query.empty() ? stored.training : io::read_dataset(std::filesystem::path(a.query));
  const Scored s = stored.kind == io::StoredModel::Kind::functional ? score_functional(a, stored, query)
                                                                    : score_multivariate(a, stored, query);
  json report;
  report["criterion"] = s.criterion;
  report["estimator"] = a.estimator == "mc" ? "monte-carlo" : a.estimator;
  report["N"] = s.N;
  report["seed"] = a.seed;
  report["delta"] = s.delta ? json(*s.delta) : json(nullptr);
  report["weights"] = s.weights ? json(*s.weights) : json(nullptr);
  report["alpha"] = a.alpha;
  auto rows = json::array();
  auto flagged = json::array();
  for (std::size_t i = 0; i < s.results.size(); ++i) {
    // alpha = 1 closes the region from above: every observation is flagged.
    const bool outlier = s.results[i].value < a.alpha || a.alpha >= 1.0;
    rows.push_back({{"id", query.ids[i]},
                    {"depth", s.results[i].value},
                    {"criterion_value", s.results[i].criterion_value},
                    {"outlier", outlier}});
    if (outlier) flagged.push_back(query.ids[i]);
  }
  report["results"] = std::move(rows);
  if (outliers_mode) report["outliers"] = std::move(flagged);
  if (!a.plot.empty()) write_plot(a.plot, query, s.results);
  write_text(a.out, report.dump(2) + "\n", out);
  return 0;
}

// ---------------------------------------------------------------- simulate

int cmd_simulate(const SimulateArgs& a, std::ostream& out) {
  json meta{{"preset", a.preset}, {"seed", a.seed}};
  io::Dataset data;
  std::vector<std::string> flagged;
  const auto seed = a.seed;
  if (a.preset == "sim1") {
    const Grid grid = Grid::unit(101);
    const auto smooth = sim::gp_sample(sim::matern_kernel_matrix(grid, 1.5, 1.0), 29, sim::sub_seed(seed, 1));
    const auto rough = sim::gp_sample(sim::matern_kernel_matrix(grid, 0.5, 1.0), 1, sim::sub_seed(seed, 2));
    RowMatrix values(30, static_cast<Eigen::Index>(grid.size()));
    values.topRows(29) = smooth.values();
    values.row(29) = rough.values().row(0);
    data = io::make_dataset(grid.points(), values);
    flagged.push_back("29");
    meta["description"] = "29 Matern-3/2 paths and one Matern-1/2 path (l = 1)";
  } else if (a.preset == "sim2") {
    const auto w = sim::two_bump_warped_sample(21, seed, true);
    data = io::make_dataset(w.sample);
    flagged.push_back(std::to_string(w.middle));
    meta["description"] = "warped two-bump functions on [-3, 3]; the middle row carries white noise";
    meta["shifts"] = w.shifts;
  } else if (a.preset == "sim3") {
    const auto g = sim::brownian_bridge_laplace_sample(Grid::unit(101), 100, 1000, seed);
    data = io::make_dataset(g.sample);
    meta["description"] = "Brownian-bridge basis with Laplace coefficients, 1000 terms";
  } else if (a.preset == "sim4") {
    const auto mix = sim::fourier_outlier_mixture(100, 45, 5, 3.0, Grid::unit(201), seed);
    data = io::make_dataset(mix.sample);
    for (std::size_t i = 0; i < mix.outlier.size(); ++i) {
      if (mix.outlier[i]) flagged.push_back(std::to_string(i));
    }
    meta["description"] = "Fourier GP, P = 100: 45 inliers (variance 1) and 5 outliers (variance 3)";
  } else if (a.preset == "sim5") {
    const auto g = sim::fourier_gp_sample(sim::FourierKind::with_constant, 10, sim::CoefficientLaw::decaying(), 500,
                                          Grid::unit(101), seed);
    data = io::make_dataset(g.sample);
    meta["description"] = "Fourier GP, P = 10, variances ((P - p + 1) / P)^2";
  } else if (a.preset == "sim6") {
    Eigen::Vector2d mu(0.0, 0.0);
    Eigen::Matrix2d sigma;
    sigma << 1.0, 1.0 / 3.0, 1.0 / 3.0, 0.25;
    data = io::make_dataset({1.0, 2.0}, sim::mvn_sample(mu, sigma, 50, seed));
    meta["description"] = "bivariate normal, n = 50; fit with --multivariate";
  } else {
    throw Error(ErrorKind::invalid_config, "unknown preset '" + a.preset + "'");
  }
  meta["n"] = data.size();
  meta["m"] = data.points.size();
  meta["flagged"] = flagged;
  const std::string csv = a.out + ".csv";
  io::write_dataset(std::filesystem::path(csv), data);
  write_text(a.out + ".json", meta.dump(2) + "\n", out);
  out << csv << '\n';
  return 0;
}

// ---------------------------------------------------------------- align

int cmd_align(const AlignArgs& a, std::ostream& out) {
  const io::Dataset data = io::read_dataset(std::filesystem::path(a.input));
  if (data.size() < 2) throw Error(ErrorKind::input_format, "alignment needs at least 2 rows");
  const FunctionalSample sample = data.sample();
  KarcherOptions opts;
  opts.max_iter = a.max_iter;
  const KarcherResult k = karcher_mean(sample, opts);

  if (!a.out_template.empty()) {
    RowMatrix t(1, static_cast<Eigen::Index>(sample.grid().size()));
    for (std::size_t j = 0; j < sample.grid().size(); ++j) t(0, static_cast<Eigen::Index>(j)) = k.template_function[j];
    io::write_dataset(std::filesystem::path(a.out_template), io::make_dataset(data.points, t, {"template"}));
  }
  const Grid& g = sample.grid();
  auto summary = json::array();
  RowMatrix warps(static_cast<Eigen::Index>(data.size()), static_cast<Eigen::Index>(g.size()));
  for (std::size_t i = 0; i < data.size(); ++i) {
    for (std::size_t j = 0; j < g.size(); ++j) {
      warps(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) =
          g.t0() + (g.t1() - g.t0()) * k.warpings[i][j];
    }
    summary.push_back({{"id", data.ids[i]},
                       {"warp_l2", warp_l2_distance(k.warpings[i])},
                       {"fisher_rao", fisher_rao_distance(k.warpings[i])}});
  }
  if (!a.out_warpings.empty()) {
    io::write_dataset(std::filesystem::path(a.out_warpings), io::make_dataset(data.points, warps, data.ids));
  }
  json report{{"iterations", k.iterations}, {"converged", k.converged}, {"warpings", summary}};
  out << report.dump(2) << '\n';
  return 0;
}

void add_score_options(CLI::App* cmd, ScoreArgs& a) {
  cmd->add_option("--model", a.model, "model file written by `fit`")->required();
  cmd->add_option("--query", a.query, "CSV of functions to score (default: the training rows)");
  cmd->add_option("--criterion", a.criterion,
                  "lp | derivative-lp | modified-rkhs | rkhs | warp-l2 | warp-fisher-rao | mahalanobis");
  cmd->add_option("--p", a.p, "Lp exponent");
  cmd->add_option("--r", a.r, "derivative order (1 or 2)");
  cmd->add_option("--weights", a.weights, "one | inverse-p | inverse-sqrt-log | power:<s>");
  cmd->add_option("--estimator", a.estimator, "monte-carlo | sample-average | closed-form");
  cmd->add_option("--sampler", a.sampler, "bootstrap | gaussian");
  cmd->add_option("--closed-form", a.closed_form, "chi-square | halfspace");
  cmd->add_option("--N", a.N, "Monte Carlo reference size");
  cmd->add_option("--seed", a.seed, "master seed");
  cmd->add_option("--fc", a.fc, "center: mean | zero | template | <csv>");
  cmd->add_option("--alpha", a.alpha, "depth threshold for the outlier flag");
  cmd->add_option("--plot", a.plot, "long-format CSV (id,t,value,depth) for plotting");
  cmd->add_option("--out", a.out, "write the report here instead of stdout");
  cmd->add_flag("--allow-divergent", a.allow_divergent, "accept the unweighted RKHS norm (finite-dimensional data)");
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  kernels::configure_threads();

  CLI::App app("Norm-based statistical depth for functional and multivariate data", "fdepth");
  app.require_subcommand(1);

  FitArgs fit;
  auto* fit_cmd = app.add_subcommand("fit", "estimate the covariance eigensystem of a dataset");
  fit_cmd->add_option("input", fit.input, "dataset CSV")->required();
  fit_cmd->add_option("-o,--out", fit.out, "model JSON")->required();
  fit_cmd->add_option("--delta", fit.delta, "eigenvalue cutoff (default min(lambda_1, lambda_1 / (sqrt(n) log n)))");
  fit_cmd->add_flag("--no-center,!--center", fit.no_center, "skip mean removal");
  fit_cmd->add_flag("--multivariate", fit.multivariate, "treat columns as coordinates in R^d");

  ScoreArgs depth;
  auto* depth_cmd = app.add_subcommand("depth", "score functions against a fitted model");
  add_score_options(depth_cmd, depth);

  ScoreArgs outl;
  auto* outl_cmd = app.add_subcommand("outliers", "flag functions whose depth falls below alpha");
  add_score_options(outl_cmd, outl);

  SimulateArgs simulate;
  auto* sim_cmd = app.add_subcommand("simulate", "write a simulation design as CSV plus metadata JSON");
  sim_cmd->add_option("--preset", simulate.preset, "sim1 .. sim6")->required();
  sim_cmd->add_option("--seed", simulate.seed, "master seed");
  sim_cmd->add_option("--out", simulate.out, "output prefix (<out>.csv, <out>.json)")->required();

  AlignArgs align;
  auto* align_cmd = app.add_subcommand("align", "Karcher-mean alignment in SRVF space");
  align_cmd->add_option("input", align.input, "dataset CSV")->required();
  align_cmd->add_option("--out-template", align.out_template, "CSV for the template");
  align_cmd->add_option("--out-warpings", align.out_warpings, "CSV for the warping functions");
  align_cmd->add_option("--max-iter", align.max_iter, "Karcher iterations");

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) {
      out << app.help();
      return 0;
    }
    err << "fdepth: " << e.what() << '\n';
    return static_cast<int>(ErrorKind::invalid_config);
  }

  try {
    if (*fit_cmd) return cmd_fit(fit, out);
    if (*depth_cmd) return cmd_score(depth, false, out);
    if (*outl_cmd) return cmd_score(outl, true, out);
    if (*sim_cmd) return cmd_simulate(simulate, out);
    if (*align_cmd) return cmd_align(align, out);
  } catch (const Error& e) {
    err << "fdepth: " << e.what() << '\n';
    return exit_code(e.kind());
  } catch (const std::exception& e) {
    err << "fdepth: " << e.what() << '\n';
    return static_cast<int>(ErrorKind::input_format);
  }
  return static_cast<int>(ErrorKind::invalid_config);
}

}  // namespace fdepth::cli
