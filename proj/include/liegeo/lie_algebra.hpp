#pragma once

#include <vector>

#include <Eigen/Dense>

#include "liegeo/exterior.hpp"

namespace liegeo {

/// Lie algebra presented by its structure equations: the 2-forms de^k with
/// de^k(e_i, e_j) = -c^k_ij, so that [e_i, e_j] = sum_k c^k_ij e_k.
class LieAlgebra {
public:
  LieAlgebra(int dimension, std::vector<KForm> differentials);
  static LieAlgebra abelian(int dimension);

  int dimension() const { return dimension_; }

  /// de^{k+1} for 0-based k.
  const KForm& differential(int k) const { return differentials_.at(k); }
  const std::vector<KForm>& differentials() const { return differentials_; }

  /// c^k_ij with 0-based indices; antisymmetric in (i, j).
  double structure_constant(int k, int i, int j) const {
    return constants_[(static_cast<std::size_t>(k) * dimension_ + i) * dimension_ + j];
  }

  Eigen::VectorXd bracket(const Eigen::VectorXd& x, const Eigen::VectorXd& y) const;

  /// Chevalley-Eilenberg differential of an invariant k-form.
  KForm ce_differential(const KForm& a) const;

  /// tr(ad_{e_i}) for each basis direction.
  Eigen::VectorXd ad_traces() const;
  bool is_unimodular(double tol = 1e-9) const;

  /// Same algebra presented on the basis b_i = new_basis.col(i).
  LieAlgebra change_basis(const Eigen::MatrixXd& new_basis) const;

private:
  int dimension_;
  std::vector<KForm> differentials_;
  std::vector<double> constants_;  // c^k_ij, flattened
};

struct ValidationReport {
  double max_d_squared = 0.0;
  double tolerance = 0.0;
  bool passed = false;
};

/// Checks d∘d = 0 on every basis 1-form (equivalent to the Jacobi identity).
ValidationReport validate(const LieAlgebra& algebra, double tol = 1e-9);

}  // namespace liegeo
