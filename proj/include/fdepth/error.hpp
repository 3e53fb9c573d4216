#pragma once

#include <stdexcept>
#include <string>

namespace fdepth {

/// Failure categories. The numeric values double as CLI exit codes.
enum class ErrorKind {
  input_format = 2,
  degenerate_model = 3,
  grid_mismatch = 4,
  invalid_config = 5,
  numerical = 6,
};

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what) : std::runtime_error(what), kind_(kind) {}
  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

}  // namespace fdepth
