#pragma once

#include <Eigen/Dense>

#include "liegeo/errors.hpp"

namespace liegeo {

/// Symmetric bilinear form on the chosen basis. Most operations require it to
/// be positive definite; callers that accept arbitrary candidates check
/// positive_definite() before use.
class Metric {
public:
  /// Identity metric on a 1-dimensional space; placeholder for late-filled fields.
  Metric() : Metric(Eigen::MatrixXd::Identity(1, 1)) {}
  explicit Metric(Eigen::MatrixXd matrix);
  static Metric identity(int dimension);

  int dimension() const { return static_cast<int>(matrix_.rows()); }
  const Eigen::MatrixXd& matrix() const { return matrix_; }

  /// Inverse matrix; only meaningful when positive definite.
  const Eigen::MatrixXd& inverse() const { return inverse_; }
  double determinant() const { return determinant_; }
  double min_eigenvalue() const { return min_eigenvalue_; }
  bool positive_definite(double tol = 0.0) const { return min_eigenvalue_ > tol; }

private:
  Eigen::MatrixXd matrix_;
  Eigen::MatrixXd inverse_;
  double determinant_ = 0.0;
  double min_eigenvalue_ = 0.0;
};

}  // namespace liegeo
