#include "fdepth/io.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

namespace fdepth::io {

namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.remove_suffix(1);
  return s;
}

std::vector<std::string_view> split(std::string_view line) {
  std::vector<std::string_view> cells;
  std::size_t start = 0;
  while (true) {
    const auto pos = line.find(',', start);
    cells.push_back(trim(line.substr(start, pos == std::string_view::npos ? std::string_view::npos : pos - start)));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return cells;
}

[[noreturn]] void fail(const std::string& source, std::size_t line, const std::string& what) {
  std::ostringstream os;
  os << source << ":" << line << ": " << what;
  throw Error(ErrorKind::input_format, os.str());
}

double parse_number(std::string_view cell, const std::string& source, std::size_t line) {
  if (!cell.empty() && cell.front() == '+') cell.remove_prefix(1);
  double v = 0.0;
  const auto [ptr, ec] = std::from_chars(cell.data(), cell.data() + cell.size(), v);
  if (ec != std::errc() || ptr != cell.data() + cell.size() || !std::isfinite(v)) {
    fail(source, line, "not a finite number: '" + std::string(cell) + "'");
  }
  return v;
}

std::vector<double> row_of(const RowMatrix& x, Eigen::Index i) {
  return std::vector<double>(x.row(i).data(), x.row(i).data() + x.cols());
}

RowMatrix matrix_from_json(const nlohmann::json& rows, Eigen::Index cols) {
  RowMatrix out(static_cast<Eigen::Index>(rows.size()), cols);
  for (std::size_t i = 0; i < rows.size(); ++i) {
    const auto& r = rows[i];
    if (static_cast<Eigen::Index>(r.size()) != cols) throw Error(ErrorKind::input_format, "ragged matrix in model file");
    for (Eigen::Index k = 0; k < cols; ++k) out(static_cast<Eigen::Index>(i), k) = r[static_cast<std::size_t>(k)].get<double>();
  }
  return out;
}

nlohmann::json matrix_to_json(const RowMatrix& x) {
  auto rows = nlohmann::json::array();
  for (Eigen::Index i = 0; i < x.rows(); ++i) rows.push_back(row_of(x, i));
  return rows;
}

}  // namespace

std::string format_double(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

Grid Dataset::grid() const {
  const std::size_t m = points.size();
  if (m < 3) throw Error(ErrorKind::input_format, "a grid needs at least 3 points");
  const Grid g(points.front(), points.back(), m);
  const double h = g.step();
  for (std::size_t k = 1; k < m; ++k) {
    if (std::abs((points[k] - points[k - 1]) - h) > 1e-9 * std::abs(h)) {
      throw Error(ErrorKind::input_format, "grid spacing is not uniform at column " + std::to_string(k + 1));
    }
  }
  return g;
}

Dataset read_dataset(std::istream& in, const std::string& source) {
  Dataset data;
  std::string line;
  std::size_t lineno = 0;
  std::vector<std::vector<double>> rows;
  while (std::getline(in, line)) {
    ++lineno;
    if (trim(line).empty()) continue;
    const auto cells = split(line);
    if (data.points.empty()) {
      if (cells.front() != "t") fail(source, lineno, "header must start with 't'");
      if (cells.size() < 2) fail(source, lineno, "header has no grid points");
      for (std::size_t k = 1; k < cells.size(); ++k) data.points.push_back(parse_number(cells[k], source, lineno));
      for (std::size_t k = 1; k < data.points.size(); ++k) {
        if (!(data.points[k] > data.points[k - 1])) fail(source, lineno, "grid points must be strictly increasing");
      }
      continue;
    }
    if (cells.size() != data.points.size() + 1) {
      std::ostringstream os;
      os << "expected " << data.points.size() + 1 << " cells, found " << cells.size();
      fail(source, lineno, os.str());
    }
    if (cells.front().empty()) fail(source, lineno, "empty id");
    data.ids.emplace_back(cells.front());
    std::vector<double> values;
    values.reserve(data.points.size());
    for (std::size_t k = 1; k < cells.size(); ++k) values.push_back(parse_number(cells[k], source, lineno));
    rows.push_back(std::move(values));
  }
  if (data.points.empty()) fail(source, lineno, "missing header");
  if (rows.empty()) fail(source, lineno, "no observations");
  data.values.resize(static_cast<Eigen::Index>(rows.size()), static_cast<Eigen::Index>(data.points.size()));
  for (std::size_t i = 0; i < rows.size(); ++i) {
    for (std::size_t k = 0; k < rows[i].size(); ++k) {
      data.values(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(k)) = rows[i][k];
    }
  }
  return data;
}

Dataset read_dataset(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::input_format, "cannot open " + path.string());
  return read_dataset(in, path.string());
}

void write_dataset(std::ostream& out, const Dataset& data) {
  out << 't';
  for (double t : data.points) out << ',' << format_double(t);
  out << '\n';
  for (std::size_t i = 0; i < data.ids.size(); ++i) {
    out << data.ids[i];
    for (Eigen::Index k = 0; k < data.values.cols(); ++k) {
      out << ',' << format_double(data.values(static_cast<Eigen::Index>(i), k));
    }
    out << '\n';
  }
}

void write_dataset(const std::filesystem::path& path, const Dataset& data) {
  std::ofstream out(path);
  if (!out) throw Error(ErrorKind::input_format, "cannot write " + path.string());
  write_dataset(out, data);
}

Dataset make_dataset(std::vector<double> points, const RowMatrix& values, std::vector<std::string> ids) {
  if (ids.empty()) {
    for (Eigen::Index i = 0; i < values.rows(); ++i) ids.push_back(std::to_string(i));
  }
  if (static_cast<Eigen::Index>(ids.size()) != values.rows() ||
      static_cast<Eigen::Index>(points.size()) != values.cols()) {
    throw Error(ErrorKind::invalid_config, "dataset ids, points and values disagree in shape");
  }
  return Dataset{std::move(points), std::move(ids), values};
}

Dataset make_dataset(const FunctionalSample& sample, std::vector<std::string> ids) {
  return make_dataset(sample.grid().points(), sample.values(), std::move(ids));
}

StoredModel make_functional_model(const Dataset& training, const FitOptions& options, kernels::Exec exec) {
  StoredModel out;
  out.kind = StoredModel::Kind::functional;
  out.training = training;
  out.model = std::make_shared<FunctionalModel>(fit_model(training.sample(), options, exec));
  return out;
}

StoredModel make_multivariate_model(const Dataset& training) {
  const auto n = training.values.rows();
  if (n < 2) throw Error(ErrorKind::input_format, "multivariate fit needs n >= 2");
  StoredModel out;
  out.kind = StoredModel::Kind::multivariate;
  out.training = training;
  out.mean = training.values.colwise().mean().transpose();
  RowMatrix centered = training.values;
  centered.rowwise() -= out.mean.transpose();
  out.covariance = (centered.transpose() * centered) / static_cast<double>(n);
  return out;
}

nlohmann::json to_json(const StoredModel& stored) {
  nlohmann::json j;
  j["format"] = "fdepth-model";
  j["version"] = 1;
  j["ids"] = stored.training.ids;
  j["points"] = stored.training.points;
  j["training"] = matrix_to_json(stored.training.values);
  if (stored.kind == StoredModel::Kind::multivariate) {
    j["kind"] = "multivariate";
    j["mean"] = std::vector<double>(stored.mean.data(), stored.mean.data() + stored.mean.size());
    RowMatrix cov = stored.covariance;
    j["covariance"] = matrix_to_json(cov);
    return j;
  }
  const FunctionalModel& m = *stored.model;
  const EigenSystem& sys = *m.system;
  j["kind"] = "functional";
  j["grid"] = {{"t0", sys.grid().t0()}, {"t1", sys.grid().t1()}, {"m", sys.grid().size()}};
  j["centered"] = m.centered;
  j["mean"] = std::vector<double>(m.center.values().begin(), m.center.values().end());
  j["delta"] = sys.delta();
  j["raw_count"] = sys.raw_count();
  j["eigenvalues"] = sys.eigenvalues();
  j["eigenfunctions"] = matrix_to_json(sys.eigenfunctions());
  j["coefficients"] = matrix_to_json(m.coefficients.coeffs);
  return j;
}

StoredModel model_from_json(const nlohmann::json& j) {
  try {
    if (j.at("format").get<std::string>() != "fdepth-model") throw Error(ErrorKind::input_format, "not a model file");
    StoredModel out;
    const auto points = j.at("points").get<std::vector<double>>();
    const auto cols = static_cast<Eigen::Index>(points.size());
    out.training = make_dataset(points, matrix_from_json(j.at("training"), cols),
                                j.at("ids").get<std::vector<std::string>>());
    const auto kind = j.at("kind").get<std::string>();
    if (kind == "multivariate") {
      out.kind = StoredModel::Kind::multivariate;
      const auto mean = j.at("mean").get<std::vector<double>>();
      out.mean = Eigen::Map<const Eigen::VectorXd>(mean.data(), static_cast<Eigen::Index>(mean.size()));
      out.covariance = matrix_from_json(j.at("covariance"), cols);
      return out;
    }
    if (kind != "functional") throw Error(ErrorKind::input_format, "unknown model kind '" + kind + "'");
    const auto& g = j.at("grid");
    const Grid grid(g.at("t0").get<double>(), g.at("t1").get<double>(), g.at("m").get<std::size_t>());
    const auto m = static_cast<Eigen::Index>(grid.size());
    auto eigenvalues = j.at("eigenvalues").get<std::vector<double>>();
    const auto c = static_cast<Eigen::Index>(eigenvalues.size());
    auto system = std::make_shared<const EigenSystem>(grid, std::move(eigenvalues),
                                                      matrix_from_json(j.at("eigenfunctions"), m),
                                                      j.at("delta").get<double>(), j.at("raw_count").get<std::size_t>());
    auto model = std::make_shared<FunctionalModel>(FunctionalModel{
        GridFunction(grid, j.at("mean").get<std::vector<double>>()), system,
        CoefficientMatrix{matrix_from_json(j.at("coefficients"), c), system}, j.at("centered").get<bool>(),
        out.training.size()});
    out.kind = StoredModel::Kind::functional;
    out.model = std::move(model);
    return out;
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorKind::input_format, std::string("malformed model file: ") + e.what());
  }
}

void save_model(const std::filesystem::path& path, const StoredModel& model) {
  std::ofstream out(path);
  if (!out) throw Error(ErrorKind::input_format, "cannot write " + path.string());
  out << to_json(model).dump(1) << '\n';
}

StoredModel load_model(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::input_format, "cannot open " + path.string());
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorKind::input_format, path.string() + ": " + e.what());
  }
  return model_from_json(j);
}

}  // namespace fdepth::io
