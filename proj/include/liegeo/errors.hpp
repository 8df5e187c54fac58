#pragma once

#include <numeric>
#include <stdexcept>
#include <string>
#include <vector>

namespace liegeo {

/// Base class for every error raised by this library.
class Error : public std::runtime_error {
public:
  explicit Error(const std::string& what_arg) : std::runtime_error(what_arg) {}
};

/// Structure construction failed: degenerate or incompatible input data.
class BuildError : public Error {
public:
  BuildError(const std::string& what_arg, double max_violation)
      : Error(what_arg), max_violation_(max_violation) {}
  double max_violation() const { return max_violation_; }

private:
  double max_violation_;
};

/// Raised by operations whose hypotheses require an Einstein metric.
class NotEinsteinError : public Error {
public:
  using Error::Error;
};

/// Document loading failure. Carries every issue found, not just the first.
class DocumentError : public Error {
public:
  explicit DocumentError(std::vector<std::string> issues)
      : Error(join(issues)), issues_(std::move(issues)) {}
  const std::vector<std::string>& issues() const { return issues_; }

private:
  static std::string join(const std::vector<std::string>& issues) {
    std::string all;
    for (const auto& issue : issues) {
      if (!all.empty()) all += "; ";
      all += issue;
    }
    return all.empty() ? std::string("document error") : all;
  }
  std::vector<std::string> issues_;
};

}  // namespace liegeo
