#include "liegeo/almost_kahler.hpp"

#include <algorithm>
#include <cmath>
#include <functional>

namespace liegeo {

namespace {

Eigen::VectorXd form_components(const KForm& a) {
  Eigen::VectorXd v = Eigen::VectorXd::Zero(a.dimension());
  for (const auto& [mask, value] : a.terms()) {
    v(mask_to_indices(mask)[0] - 1) = value;
  }
  return v;
}

Eigen::MatrixXd two_form_matrix(const KForm& a) {
  int n = a.dimension();
  Eigen::MatrixXd m = Eigen::MatrixXd::Zero(n, n);
  for (const auto& [mask, value] : a.terms()) {
    std::vector<int> ij = mask_to_indices(mask);
    m(ij[0] - 1, ij[1] - 1) = value;
    m(ij[1] - 1, ij[0] - 1) = -value;
  }
  return m;
}

KForm antisymmetric_to_form(const Eigen::MatrixXd& m) {
  int n = static_cast<int>(m.rows());
  KForm out(2, n);
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      double value = 0.5 * (m(i, j) - m(j, i));
      if (value != 0.0) out.set(1u << i | 1u << j, value);
    }
  }
  return out;
}

/// Same form viewed in a larger space, index i of the source becoming
/// index i + offset.
KForm embed_form(const KForm& a, int new_dimension, int offset) {
  KForm out(a.degree(), new_dimension);
  for (const auto& [mask, value] : a.terms()) {
    out.set(mask << offset, value);
  }
  return out;
}

std::vector<KForm> direct_sum_differentials(const LieAlgebra& a, const LieAlgebra& b) {
  int da = a.dimension();
  int db = b.dimension();
  std::vector<KForm> diffs;
  diffs.reserve(da + db);
  for (int k = 0; k < da; ++k) {
    diffs.push_back(embed_form(a.differential(k), da + db, 0));
  }
  for (int k = 0; k < db; ++k) {
    diffs.push_back(embed_form(b.differential(k), da + db, da));
  }
  return diffs;
}

Eigen::VectorXd apply_operator(const Eigen::MatrixXd& op,
                               const std::vector<std::uint32_t>& masks,
                               const KForm& a) {
  Eigen::VectorXd coeffs(masks.size());
  for (std::size_t c = 0; c < masks.size(); ++c) coeffs(c) = a.coefficient(masks[c]);
  return op * coeffs;
}

KForm vector_to_form(const Eigen::VectorXd& coeffs,
                     const std::vector<std::uint32_t>& masks, int degree, int dim) {
  KForm out(degree, dim);
  for (std::size_t c = 0; c < masks.size(); ++c) {
    if (coeffs(c) != 0.0) out.set(masks[c], coeffs(c));
  }
  return out;
}

/// Matrix of a linear map on 2-forms given by its action on coefficient
/// matrices, in the increasing-pair basis.
Eigen::MatrixXd two_form_operator(int dim,
                                  const std::function<Eigen::MatrixXd(const Eigen::MatrixXd&)>& act) {
  std::vector<std::uint32_t> masks = basis_masks(dim, 2);
  int m = static_cast<int>(masks.size());
  Eigen::MatrixXd out(m, m);
  for (int c = 0; c < m; ++c) {
    KForm basis(2, dim);
    basis.set(masks[c], 1.0);
    Eigen::MatrixXd image = act(two_form_matrix(basis));
    KForm image_form = antisymmetric_to_form(image);
    for (int r = 0; r < m; ++r) out(r, c) = image_form.coefficient(masks[r]);
  }
  return out;
}

}  // namespace

AlmostHermitianStructure make_hermitian(const LieAlgebra& algebra, const Metric& metric,
                                        const Eigen::MatrixXd& j, const KForm& omega,
                                        double tol) {
  int dim = algebra.dimension();
  if (metric.dimension() != dim || omega.dimension() != dim ||
      j.rows() != dim || j.cols() != dim) {
    throw Error("make_hermitian: dimension mismatch");
  }
  if (dim % 2 != 0) {
    throw BuildError("make_hermitian: dimension must be even", 0.0);
  }
  if (omega.degree() != 2) {
    throw Error("make_hermitian: omega must be a 2-form");
  }
  if (!metric.positive_definite()) {
    throw BuildError("make_hermitian: metric is not positive definite",
                     -metric.min_eigenvalue());
  }
  const Eigen::MatrixXd& g = metric.matrix();
  Eigen::MatrixXd identity = Eigen::MatrixXd::Identity(dim, dim);
  double defect = 0.0;
  defect = std::max(defect, (j * j + identity).cwiseAbs().maxCoeff());
  defect = std::max(defect, (j.transpose() * g * j - g).cwiseAbs().maxCoeff());
  defect = std::max(defect,
                    (two_form_matrix(omega) - j.transpose() * g).cwiseAbs().maxCoeff());
  if (defect > tol) {
    throw BuildError("make_hermitian: compatibility identities fail", defect);
  }
  return AlmostHermitianStructure{algebra, metric, j, omega, std::monostate{}, defect};
}

AlmostHermitianStructure product_with_circle(const AlmostContactStructure& s,
                                             double tol) {
  int dim = s.algebra.dimension();
  int product_dim = dim + 1;

  std::vector<KForm> diffs;
  diffs.reserve(product_dim);
  for (int k = 0; k < dim; ++k) {
    diffs.push_back(embed_form(s.algebra.differential(k), product_dim, 0));
  }
  diffs.push_back(KForm(2, product_dim));
  LieAlgebra algebra(product_dim, std::move(diffs));

  Eigen::MatrixXd g = Eigen::MatrixXd::Identity(product_dim, product_dim);
  g.topLeftCorner(dim, dim) = s.metric.matrix();
  Metric metric(g);

  Eigen::VectorXd a = form_components(s.alpha);
  Eigen::MatrixXd j = Eigen::MatrixXd::Zero(product_dim, product_dim);
  j.topLeftCorner(dim, dim) = s.phi;
  j.topRightCorner(dim, 1) = -s.xi;
  j.bottomLeftCorner(1, dim) = a.transpose();

  KForm alpha = embed_form(s.alpha, product_dim, 0);
  KForm theta = KForm::basis(product_dim, {product_dim});
  KForm omega = embed_form(s.omega, product_dim, 0) + wedge(alpha, theta);

  AlmostHermitianStructure out = make_hermitian(algebra, metric, j, omega, tol);
  Eigen::VectorXd xi = Eigen::VectorXd::Zero(product_dim);
  xi.head(dim) = s.xi;
  out.origin = CircleProductData{alpha, theta, xi, s.n};
  return out;
}

AlmostHermitianStructure product_double(const AlmostContactStructure& a,
                                        const AlmostContactStructure& b,
                                        double tol) {
  int da = a.algebra.dimension();
  int db = b.algebra.dimension();
  int dim = da + db;

  LieAlgebra algebra(dim, direct_sum_differentials(a.algebra, b.algebra));

  Eigen::MatrixXd g = Eigen::MatrixXd::Zero(dim, dim);
  g.topLeftCorner(da, da) = a.metric.matrix();
  g.bottomRightCorner(db, db) = b.metric.matrix();
  Metric metric(g);

  Eigen::VectorXd alpha_a = form_components(a.alpha);
  Eigen::VectorXd alpha_b = form_components(b.alpha);
  Eigen::MatrixXd j = Eigen::MatrixXd::Zero(dim, dim);
  j.topLeftCorner(da, da) = a.phi;
  j.topRightCorner(da, db) = -a.xi * alpha_b.transpose();
  j.bottomLeftCorner(db, da) = b.xi * alpha_a.transpose();
  j.bottomRightCorner(db, db) = b.phi;

  KForm omega = embed_form(a.omega, dim, 0) + embed_form(b.omega, dim, da) +
                wedge(embed_form(a.alpha, dim, 0), embed_form(b.alpha, dim, da));

  AlmostHermitianStructure out = make_hermitian(algebra, metric, j, omega, tol);
  out.origin = DoubleProductData{da, db};
  return out;
}

TypeSplit two_form_type_split(const KForm& beta, const Eigen::MatrixXd& j) {
  KForm invariant = 0.5 * (beta + pullback(beta, j));
  return TypeSplit{invariant, beta - invariant};
}

Eigen::MatrixXd curvature_operator_matrix(const CurvatureData& curv) {
  int n = curv.dimension;
  std::vector<std::uint32_t> masks = basis_masks(n, 2);
  int m = static_cast<int>(masks.size());
  Eigen::MatrixXd out(m, m);
  for (int row = 0; row < m; ++row) {
    std::vector<int> ij = mask_to_indices(masks[row]);
    for (int col = 0; col < m; ++col) {
      std::vector<int> kl = mask_to_indices(masks[col]);
      out(row, col) = curv.entry(kl[0] - 1, kl[1] - 1, ij[1] - 1, ij[0] - 1);
    }
  }
  return out;
}

Eigen::MatrixXd anti_invariant_projector(const Eigen::MatrixXd& j, int dimension) {
  std::vector<std::uint32_t> masks = basis_masks(dimension, 2);
  int m = static_cast<int>(masks.size());
  Eigen::MatrixXd out(m, m);
  for (int c = 0; c < m; ++c) {
    KForm basis(2, dimension);
    basis.set(masks[c], 1.0);
    KForm anti = two_form_type_split(basis, j).anti_invariant;
    for (int r = 0; r < m; ++r) out(r, c) = anti.coefficient(masks[r]);
  }
  return out;
}

Eigen::MatrixXd two_form_complex_structure(const Eigen::MatrixXd& j, int dimension) {
  return two_form_operator(dimension, [&j](const Eigen::MatrixXd& b) {
    return 0.5 * (j * b - b * j);
  });
}

OperatorSplit split_on_anti_invariant(const Eigen::MatrixXd& op,
                                      const Eigen::MatrixXd& j, int dimension) {
  Eigen::MatrixXd projector = anti_invariant_projector(j, dimension);
  Eigen::MatrixXd induced = two_form_complex_structure(j, dimension);
  OperatorSplit out;
  out.compressed = projector * op * projector;
  Eigen::MatrixXd conjugated = induced * out.compressed * induced;
  out.commuting = 0.5 * (out.compressed - conjugated);
  out.anticommuting = 0.5 * (out.compressed + conjugated);
  out.commuting_norm_sq = out.commuting.squaredNorm();
  out.anticommuting_norm_sq = out.anticommuting.squaredNorm();
  return out;
}

CurvatureOperatorSplit curvature_operator_split(const CurvatureData& curv,
                                                const Eigen::MatrixXd& j_frame) {
  CurvatureOperatorSplit out;
  out.matrix = curvature_operator_matrix(curv);
  out.selfadjoint_defect = (out.matrix - out.matrix.transpose()).cwiseAbs().maxCoeff();
  out.split = split_on_anti_invariant(out.matrix, j_frame, curv.dimension);
  out.r_prime_norm_sq = out.split.anticommuting_norm_sq;
  out.r_second_norm_sq = out.split.commuting_norm_sq;
  return out;
}

AlmostKahlerAnalysis analyze(const AlmostHermitianStructure& structure,
                             const ConnectionData& conn, const CurvatureData& curv) {
  int dim = conn.dimension();
  Eigen::MatrixXd j = conn.endomorphism_to_frame(structure.complex_structure);
  KForm omega = conn.to_frame(structure.kahler_form);

  AlmostKahlerAnalysis out;
  out.d_omega_max = conn.framed.ce_differential(omega).max_abs();
  out.delta_omega_max = codifferential(conn, omega).max_abs();

  std::vector<KForm> grad = covariant_derivative(conn, omega);
  Eigen::MatrixXd gram(dim, dim);
  for (int a = 0; a < dim; ++a) {
    for (int b = a; b < dim; ++b) {
      gram(a, b) = frame_form_inner(grad[a], grad[b]);
      gram(b, a) = gram(a, b);
    }
  }
  out.grad_omega_sq = gram.trace();

  const Eigen::MatrixXd& ric = curv.ricci;
  out.ric_prime = 0.5 * (ric + j.transpose() * ric * j);
  out.ric_second = ric - out.ric_prime;
  Eigen::MatrixXd rho_h_matrix = j.transpose() * out.ric_prime;
  out.rho_h = antisymmetric_to_form(rho_h_matrix);

  Eigen::MatrixXd rho_star_raw = Eigen::MatrixXd::Zero(dim, dim);
  for (int a = 0; a < dim; ++a) {
    for (int b = 0; b < dim; ++b) {
      double sum = 0.0;
      for (int p = 0; p < dim; ++p) {
        for (int l = 0; l < dim; ++l) {
          double w = j(l, p);
          if (w != 0.0) sum += w * curv.entry(a, p, b, l);
        }
      }
      rho_star_raw(a, b) = sum;
    }
  }
  out.rho_star_h = antisymmetric_to_form(rho_star_raw);
  out.rho_star_h_antisym_defect =
      (rho_star_raw + rho_star_raw.transpose()).cwiseAbs().maxCoeff();

  out.s = 2.0 * frame_form_inner(out.rho_h, omega);
  out.s_star = 2.0 * frame_form_inner(out.rho_star_h, omega);
  out.scalar_consistency = std::abs(out.s - curv.scalar);
  out.scalar_gap_residual = std::abs(out.s_star - out.s - out.grad_omega_sq);

  Eigen::MatrixXd phi_matrix = j.transpose() * gram;
  out.phi_form = antisymmetric_to_form(phi_matrix);
  out.phi_antisymmetry_defect = (phi_matrix + phi_matrix.transpose()).cwiseAbs().maxCoeff();
  out.j_invariance_defect = (j.transpose() * gram * j - gram).cwiseAbs().maxCoeff();
  out.phi_pairing_residual =
      std::abs(frame_form_inner(omega, out.phi_form) - 0.5 * out.grad_omega_sq);

  std::vector<std::uint32_t> masks = basis_masks(dim, 2);
  CurvatureOperatorSplit split = curvature_operator_split(curv, j);
  Eigen::VectorXd rt_omega = apply_operator(split.matrix, masks, omega);
  KForm rt_omega_form = vector_to_form(rt_omega, masks, 2, dim);
  out.rtilde_omega_defect = max_abs_diff(rt_omega_form, -1.0 * out.rho_star_h);
  out.r_prime_norm_sq = split.r_prime_norm_sq;
  out.r_second_norm_sq = split.r_second_norm_sq;
  return out;
}

CircleProductChecks circle_product_checks(const AlmostHermitianStructure& structure,
                                          const ConnectionData& conn,
                                          const CurvatureData& curv,
                                          const AlmostKahlerAnalysis& analysis) {
  const CircleProductData* data = std::get_if<CircleProductData>(&structure.origin);
  if (data == nullptr) {
    throw Error("circle_product_checks: structure is not a circle product");
  }
  int n = data->factor_n;

  Eigen::VectorXd xi = conn.vector_to_frame(data->xi);
  KForm alpha = conn.to_frame(data->alpha);
  KForm theta = conn.to_frame(data->theta);
  KForm omega = conn.to_frame(structure.kahler_form);
  Eigen::VectorXd a = form_components(alpha);
  Eigen::VectorXd t = form_components(theta);

  CircleProductChecks out;
  out.tau = xi.dot(curv.ricci * xi);

  Eigen::MatrixXd ric_second_target =
      0.5 * out.tau * (a * a.transpose() - t * t.transpose());
  out.ric_second_residual =
      (analysis.ric_second - ric_second_target).cwiseAbs().maxCoeff();

  KForm rho_h_target = out.tau * (omega - 0.5 * wedge(alpha, theta));
  out.rho_h_residual = max_abs_diff(analysis.rho_h, rho_h_target);

  out.phi_xi_max = interior(xi, analysis.phi_form).max_abs();

  KForm omega_factor = omega - wedge(alpha, theta);
  double grad_factor = covariant_norm_sq(conn, omega_factor);
  double grad_alpha = covariant_norm_sq(conn, alpha);
  out.grad_split_residual =
      std::abs(analysis.grad_omega_sq - grad_factor - grad_alpha);

  out.s_relation_residual = std::abs(analysis.s - (2.0 * n + 1.0) * out.tau);

  out.r_second_lower_bound = out.tau * out.tau / (16.0 * n);
  out.r_second_bound_holds =
      analysis.r_second_norm_sq >= out.r_second_lower_bound - 1e-12;
  return out;
}

}  // namespace liegeo
