#include "liegeo/lie_algebra.hpp"

#include <algorithm>
#include <cmath>

namespace liegeo {

LieAlgebra::LieAlgebra(int dimension, std::vector<KForm> differentials)
    : dimension_(dimension), differentials_(std::move(differentials)) {
  if (dimension < 1) throw Error("LieAlgebra: dimension must be positive");
  if (static_cast<int>(differentials_.size()) != dimension) {
    throw Error("LieAlgebra: need one structure 2-form per basis direction");
  }
  for (const KForm& d : differentials_) {
    if (d.degree() != 2 || d.dimension() != dimension) {
      throw Error("LieAlgebra: structure forms must be 2-forms of matching dimension");
    }
  }
  std::size_t n = static_cast<std::size_t>(dimension);
  constants_.assign(n * n * n, 0.0);
  for (int k = 0; k < dimension; ++k) {
    for (const auto& [mask, value] : differentials_[k].terms()) {
      std::vector<int> ij = mask_to_indices(mask);
      int i = ij[0] - 1;
      int j = ij[1] - 1;
      constants_[(static_cast<std::size_t>(k) * n + i) * n + j] = -value;
      constants_[(static_cast<std::size_t>(k) * n + j) * n + i] = value;
    }
  }
}

LieAlgebra LieAlgebra::abelian(int dimension) {
  std::vector<KForm> diffs(dimension, KForm(2, dimension));
  return LieAlgebra(dimension, std::move(diffs));
}

Eigen::VectorXd LieAlgebra::bracket(const Eigen::VectorXd& x, const Eigen::VectorXd& y) const {
  if (x.size() != dimension_ || y.size() != dimension_) {
    throw Error("bracket: dimension mismatch");
  }
  Eigen::VectorXd out = Eigen::VectorXd::Zero(dimension_);
  for (int k = 0; k < dimension_; ++k) {
    double sum = 0.0;
    for (const auto& [mask, value] : differentials_[k].terms()) {
      std::vector<int> ij = mask_to_indices(mask);
      int i = ij[0] - 1;
      int j = ij[1] - 1;
      sum -= value * (x(i) * y(j) - x(j) * y(i));
    }
    out(k) = sum;
  }
  return out;
}

KForm LieAlgebra::ce_differential(const KForm& a) const {
  int k = a.degree();
  KForm out(k + 1, dimension_);
  if (k + 1 > dimension_) return out;
  if (k == 0) return out;
  for (std::uint32_t target : basis_masks(dimension_, k + 1)) {
    std::vector<int> t = mask_to_indices(target);
    double value = 0.0;
    std::vector<int> rest(k - 1);
    for (int a_pos = 0; a_pos < k + 1; ++a_pos) {
      for (int b_pos = a_pos + 1; b_pos < k + 1; ++b_pos) {
        int r = 0;
        for (int q = 0; q < k + 1; ++q) {
          if (q != a_pos && q != b_pos) rest[r++] = t[q];
        }
        double pair_sign = ((a_pos + b_pos) % 2 == 0) ? 1.0 : -1.0;
        for (int m = 0; m < dimension_; ++m) {
          double c = structure_constant(m, t[a_pos] - 1, t[b_pos] - 1);
          if (c == 0.0) continue;
          std::vector<int> args;
          args.reserve(k);
          args.push_back(m + 1);
          args.insert(args.end(), rest.begin(), rest.end());
          value += pair_sign * c * a.component(args);
        }
      }
    }
    if (value != 0.0) out.set(target, value);
  }
  return out;
}

Eigen::VectorXd LieAlgebra::ad_traces() const {
  Eigen::VectorXd out = Eigen::VectorXd::Zero(dimension_);
  for (int i = 0; i < dimension_; ++i) {
    double trace = 0.0;
    for (int k = 0; k < dimension_; ++k) {
      trace += structure_constant(k, i, k);
    }
    out(i) = trace;
  }
  return out;
}

bool LieAlgebra::is_unimodular(double tol) const {
  return ad_traces().cwiseAbs().maxCoeff() <= tol;
}

LieAlgebra LieAlgebra::change_basis(const Eigen::MatrixXd& new_basis) const {
  if (new_basis.rows() != dimension_ || new_basis.cols() != dimension_) {
    throw Error("change_basis: matrix shape mismatch");
  }
  Eigen::MatrixXd inv = new_basis.inverse();
  std::vector<KForm> ndiff;
  ndiff.reserve(dimension_);
  for (int k = 0; k < dimension_; ++k) {
    KForm combined(2, dimension_);
    for (int m = 0; m < dimension_; ++m) {
      double w = inv(k, m);
      if (w == 0.0) continue;
      combined += w * differentials_[m];
    }
    ndiff.push_back(pullback(combined, new_basis).pruned(0.0));
  }
  return LieAlgebra(dimension_, std::move(ndiff));
}

ValidationReport validate(const LieAlgebra& algebra, double tol) {
  ValidationReport report;
  report.tolerance = tol;
  for (int k = 0; k < algebra.dimension(); ++k) {
    KForm dd = algebra.ce_differential(algebra.differential(k));
    report.max_d_squared = std::max(report.max_d_squared, dd.max_abs());
  }
  report.passed = report.max_d_squared <= tol;
  return report;
}

}  // namespace liegeo
