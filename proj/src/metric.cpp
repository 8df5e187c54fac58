#include "liegeo/metric.hpp"

namespace liegeo {

Metric::Metric(Eigen::MatrixXd matrix) : matrix_(std::move(matrix)) {
  if (matrix_.rows() != matrix_.cols() || matrix_.rows() < 1) {
    throw Error("Metric: matrix must be square and non-empty");
  }
  double asym = (matrix_ - matrix_.transpose()).cwiseAbs().maxCoeff();
  double scale = std::max(1.0, matrix_.cwiseAbs().maxCoeff());
  if (asym > 1e-12 * scale) {
    throw Error("Metric: matrix must be symmetric");
  }
  matrix_ = 0.5 * (matrix_ + matrix_.transpose().eval());
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(matrix_);
  min_eigenvalue_ = eig.eigenvalues().minCoeff();
  determinant_ = matrix_.determinant();
  if (min_eigenvalue_ > 0.0) {
    inverse_ = matrix_.inverse();
  } else {
    inverse_ = Eigen::MatrixXd::Zero(matrix_.rows(), matrix_.cols());
  }
}

Metric Metric::identity(int dimension) {
  return Metric(Eigen::MatrixXd::Identity(dimension, dimension));
}

}  // namespace liegeo
