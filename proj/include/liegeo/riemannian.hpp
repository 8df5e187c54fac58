#pragma once

#include <optional>
#include <vector>

#include <Eigen/Dense>

#include "liegeo/lie_algebra.hpp"
#include "liegeo/metric.hpp"

namespace liegeo {

/// Levi-Civita connection of a left-invariant metric, expressed in the
/// Gram-Schmidt-orthonormalized frame of that metric. Every derived quantity
/// (curvature, covariant derivatives, Laplacians) is reported in this frame,
/// where the metric is the identity.
struct ConnectionData {
  LieAlgebra algebra;   // original presentation
  Metric metric;
  Eigen::MatrixXd frame;       // columns: frame vectors in the input basis
  Eigen::MatrixXd frame_inv;   // frame^{-1}
  LieAlgebra framed;           // structure equations in the orthonormal frame
  /// gamma[i](k, j) = Gamma^k_ij = <nabla_{f_i} f_j, f_k>, so gamma[i] * v is
  /// the frame-component vector nabla_{f_i} v for constant-component v.
  std::vector<Eigen::MatrixXd> gamma;
  double compatibility_defect = 0.0;  // max |Gamma^k_ij + Gamma^j_ik|
  double torsion_defect = 0.0;        // max |Gamma^k_ij - Gamma^k_ji - b^k_ij|

  int dimension() const { return metric.dimension(); }
  KForm to_frame(const KForm& a) const { return pullback(a, frame); }
  KForm from_frame(const KForm& a) const { return pullback(a, frame_inv); }
  Eigen::VectorXd vector_to_frame(const Eigen::VectorXd& v) const { return frame_inv * v; }
  Eigen::VectorXd vector_from_frame(const Eigen::VectorXd& v) const { return frame * v; }
  /// Frame representation F^{-1} M F of an endomorphism given in the input basis.
  Eigen::MatrixXd endomorphism_to_frame(const Eigen::MatrixXd& m) const {
    return frame_inv * m * frame;
  }
};

ConnectionData levi_civita(const LieAlgebra& algebra, const Metric& metric);

/// Curvature tensor R(X,Y)Z = nabla_X nabla_Y Z - nabla_Y nabla_X Z -
/// nabla_[X,Y] Z in the orthonormal frame; entry(i,j,k,l) = <R(f_i,f_j)f_l, f_k>.
struct CurvatureData {
  int dimension = 0;
  std::vector<double> r;  // flattened n^4
  Eigen::MatrixXd ricci;  // ric(X,Y) = sum_i <R(f_i,X)Y, f_i>
  double scalar = 0.0;
  double einstein_deviation = 0.0;  // max |ric - (s/n) id|

  double entry(int i, int j, int k, int l) const {
    return r[((static_cast<std::size_t>(i) * dimension + j) * dimension + k) * dimension + l];
  }
};

CurvatureData curvature(const ConnectionData& conn);

/// tau = s/n when the metric is Einstein at the given tolerance.
std::optional<double> einstein_check(const CurvatureData& curv, double tol = 1e-9);

/// nabla_{f_i} a for each frame direction i; forms in frame components.
std::vector<KForm> covariant_derivative(const ConnectionData& conn, const KForm& a);
KForm covariant_derivative_along(const ConnectionData& conn, int i, const KForm& a);
/// |nabla a|^2 = sum_i |nabla_{f_i} a|^2.
double covariant_norm_sq(const ConnectionData& conn, const KForm& a);

/// Rough Laplacian nabla* nabla via the frame formula
/// nabla*(e^i ⊗ beta) = -sum_j <f_j, nabla_{f_j} f_i> beta - nabla_{f_i} beta.
KForm rough_laplacian(const ConnectionData& conn, const KForm& a);

/// Codifferential delta a = -sum_j f_j ⌟ nabla_{f_j} a.
KForm codifferential(const ConnectionData& conn, const KForm& a);
/// Codifferential through the Hodge star, delta = (-1)^{n(k+1)+1} * d * ;
/// used to cross-validate the frame formula.
KForm codifferential_via_hodge(const ConnectionData& conn, const KForm& a);

/// Hodge Laplacian d delta + delta d.
KForm hodge_laplacian(const ConnectionData& conn, const KForm& a);

/// Curvature action on a form as a derivation:
/// (R(X,Y) a)(Z_1,...,Z_k) = -sum_m a(Z_1,...,R(X,Y)Z_m,...,Z_k).
KForm curvature_action(const ConnectionData& conn, const CurvatureData& curv,
                       int h, int k, const KForm& a);

/// Curvature term of the Weitzenboeck identity,
/// -sum_{h,k} e^h ^ (f_k ⌟ R(f_h,f_k) a).
KForm weitzenboeck_curvature_term(const ConnectionData& conn,
                                  const CurvatureData& curv, const KForm& a);

/// Max-abs residual of (d delta + delta d) a = curvature term + nabla*nabla a.
double weitzenboeck_residual(const ConnectionData& conn, const CurvatureData& curv,
                             const KForm& a);

/// Orthonormal basis of the space of parallel k-forms, found as the kernel of
/// the stacked covariant-derivative matrix; singular values below
/// rel_tol * sigma_max count as zero.
std::vector<KForm> parallel_forms(const ConnectionData& conn, int degree,
                                  double rel_tol = 1e-8);

struct KillingReport {
  Eigen::MatrixXd symmetrized;  // S(X,Y) = (<nabla_X v, Y> + <nabla_Y v, X>)/2
  double norm_sq = 0.0;         // |S|^2 (Frobenius, squared)
  bool killing = false;
};

/// Killing test for a vector field given in input-basis coordinates.
KillingReport killing_check(const ConnectionData& conn, const Eigen::VectorXd& v,
                            double tol = 1e-9);

}  // namespace liegeo
