#pragma once

// CSV datasets and JSON model containers.
//
// Dataset CSV: first row "t,<t_0>,...,<t_{m-1}>", then one row per
// observation "<id>,<v_0>,...". Values are written with 17 significant digits.

#include <filesystem>
#include <iosfwd>
#include <memory>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "fdepth/core.hpp"
#include "fdepth/covkernel.hpp"
#include "json.hpp"

namespace fdepth::io {

struct Dataset {
  std::vector<double> points;  // header abscissae as parsed
  std::vector<std::string> ids;
  RowMatrix values;

  std::size_t size() const noexcept { return ids.size(); }
  /// Uniform grid spanned by the header; throws input_format when the
  /// spacing is not uniform within 1e-9 relative.
  Grid grid() const;
  FunctionalSample sample() const { return FunctionalSample(grid(), values); }
};

/// `source` labels error messages. Errors carry the 1-based line number.
Dataset read_dataset(std::istream& in, const std::string& source = "<input>");
Dataset read_dataset(const std::filesystem::path& path);

void write_dataset(std::ostream& out, const Dataset& data);
void write_dataset(const std::filesystem::path& path, const Dataset& data);

/// ids "0", "1", ... when `ids` is empty.
Dataset make_dataset(const FunctionalSample& sample, std::vector<std::string> ids = {});
Dataset make_dataset(std::vector<double> points, const RowMatrix& values, std::vector<std::string> ids = {});

std::string format_double(double v);

/// Serialized fit. Functional models carry the eigensystem and coefficients;
/// multivariate models carry the mean and covariance. Both keep the training
/// rows for the sample-average estimator and bootstrap resampling.
struct StoredModel {
  enum class Kind { functional, multivariate };
  Kind kind = Kind::functional;
  Dataset training;
  // functional
  std::shared_ptr<FunctionalModel> model;
  // multivariate
  Eigen::VectorXd mean;
  Eigen::MatrixXd covariance;
};

StoredModel make_functional_model(const Dataset& training, const FitOptions& options,
                                  kernels::Exec exec = kernels::Exec::parallel);
/// Sample mean and (1/n) covariance of the rows.
StoredModel make_multivariate_model(const Dataset& training);

nlohmann::json to_json(const StoredModel& model);
StoredModel model_from_json(const nlohmann::json& j);

void save_model(const std::filesystem::path& path, const StoredModel& model);
StoredModel load_model(const std::filesystem::path& path);

}  // namespace fdepth::io
