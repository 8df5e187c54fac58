#include "liegeo/riemannian.hpp"

#include <algorithm>
#include <cmath>

namespace liegeo {

namespace {

Eigen::VectorXd unit_vector(int dimension, int i) {
  Eigen::VectorXd v = Eigen::VectorXd::Zero(dimension);
  v(i) = 1.0;
  return v;
}

}  // namespace

ConnectionData levi_civita(const LieAlgebra& algebra, const Metric& metric) {
  if (algebra.dimension() != metric.dimension()) {
    throw Error("levi_civita: algebra and metric dimensions differ");
  }
  if (!metric.positive_definite()) {
    throw Error("levi_civita: metric is not positive definite");
  }
  int n = algebra.dimension();
  Eigen::LLT<Eigen::MatrixXd> llt(metric.matrix());
  if (llt.info() != Eigen::Success) {
    throw Error("levi_civita: Cholesky factorization failed");
  }
  Eigen::MatrixXd lower = llt.matrixL();
  Eigen::MatrixXd frame = lower.transpose()
                              .triangularView<Eigen::Upper>()
                              .solve(Eigen::MatrixXd::Identity(n, n));
  Eigen::MatrixXd frame_inv = lower.transpose();

  LieAlgebra framed = algebra.change_basis(frame);

  std::vector<Eigen::MatrixXd> gamma(n, Eigen::MatrixXd::Zero(n, n));
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      for (int k = 0; k < n; ++k) {
        gamma[i](k, j) = 0.5 * (framed.structure_constant(k, i, j) -
                                framed.structure_constant(i, j, k) +
                                framed.structure_constant(j, k, i));
      }
    }
  }

  double compat = 0.0;
  double torsion = 0.0;
  for (int i = 0; i < n; ++i) {
    compat = std::max(compat, (gamma[i] + gamma[i].transpose()).cwiseAbs().maxCoeff());
    for (int j = 0; j < n; ++j) {
      for (int k = 0; k < n; ++k) {
        torsion = std::max(torsion, std::abs(gamma[i](k, j) - gamma[j](k, i) -
                                             framed.structure_constant(k, i, j)));
      }
    }
  }

  return ConnectionData{algebra,          metric,  frame, frame_inv,
                        std::move(framed), std::move(gamma), compat, torsion};
}

CurvatureData curvature(const ConnectionData& conn) {
  int n = conn.dimension();
  CurvatureData data;
  data.dimension = n;
  data.r.assign(static_cast<std::size_t>(n) * n * n * n, 0.0);
  auto idx = [n](int i, int j, int k, int l) {
    return ((static_cast<std::size_t>(i) * n + j) * n + k) * n + l;
  };
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      Eigen::MatrixXd ij = conn.gamma[i] * conn.gamma[j] - conn.gamma[j] * conn.gamma[i];
      for (int p = 0; p < n; ++p) {
        double b = conn.framed.structure_constant(p, i, j);
        if (b != 0.0) ij -= b * conn.gamma[p];
      }
      for (int l = 0; l < n; ++l) {
        for (int k = 0; k < n; ++k) {
          data.r[idx(i, j, k, l)] = ij(k, l);
        }
      }
    }
  }
  data.ricci = Eigen::MatrixXd::Zero(n, n);
  for (int a = 0; a < n; ++a) {
    for (int b = 0; b < n; ++b) {
      double sum = 0.0;
      for (int i = 0; i < n; ++i) sum += data.r[idx(i, a, i, b)];
      data.ricci(a, b) = sum;
    }
  }
  data.scalar = data.ricci.trace();
  Eigen::MatrixXd deviation =
      data.ricci - (data.scalar / n) * Eigen::MatrixXd::Identity(n, n);
  data.einstein_deviation = deviation.cwiseAbs().maxCoeff();
  return data;
}

std::optional<double> einstein_check(const CurvatureData& curv, double tol) {
  if (curv.einstein_deviation > tol) return std::nullopt;
  return curv.scalar / curv.dimension;
}

KForm covariant_derivative_along(const ConnectionData& conn, int i, const KForm& a) {
  int n = conn.dimension();
  int k = a.degree();
  KForm out(k, n);
  if (k == 0) return out;
  for (std::uint32_t target : basis_masks(n, k)) {
    std::vector<int> t = mask_to_indices(target);
    double value = 0.0;
    std::vector<int> args(t);
    for (int m = 0; m < k; ++m) {
      int original = t[m];
      for (int p = 0; p < n; ++p) {
        double g = conn.gamma[i](p, original - 1);
        if (g == 0.0) continue;
        args[m] = p + 1;
        value -= g * a.component(args);
      }
      args[m] = original;
    }
    if (value != 0.0) out.set(target, value);
  }
  return out;
}

std::vector<KForm> covariant_derivative(const ConnectionData& conn, const KForm& a) {
  std::vector<KForm> out;
  out.reserve(conn.dimension());
  for (int i = 0; i < conn.dimension(); ++i) {
    out.push_back(covariant_derivative_along(conn, i, a));
  }
  return out;
}

double covariant_norm_sq(const ConnectionData& conn, const KForm& a) {
  double total = 0.0;
  for (int i = 0; i < conn.dimension(); ++i) {
    KForm da = covariant_derivative_along(conn, i, a);
    total += frame_form_inner(da, da);
  }
  return total;
}

KForm rough_laplacian(const ConnectionData& conn, const KForm& a) {
  int n = conn.dimension();
  KForm out(a.degree(), n);
  for (int i = 0; i < n; ++i) {
    KForm da = covariant_derivative_along(conn, i, a);
    double divergence = 0.0;
    for (int j = 0; j < n; ++j) divergence += conn.gamma[j](j, i);
    if (divergence != 0.0) out -= divergence * da;
    out -= covariant_derivative_along(conn, i, da);
  }
  return out;
}

KForm codifferential(const ConnectionData& conn, const KForm& a) {
  int n = conn.dimension();
  if (a.degree() == 0) return KForm(0, n);
  KForm out(a.degree() - 1, n);
  for (int j = 0; j < n; ++j) {
    out -= interior(unit_vector(n, j), covariant_derivative_along(conn, j, a));
  }
  return out;
}

KForm codifferential_via_hodge(const ConnectionData& conn, const KForm& a) {
  int n = conn.dimension();
  int k = a.degree();
  if (k == 0) return KForm(0, n);
  Metric id = Metric::identity(n);
  KForm starred = hodge_star(a, id);
  KForm d_starred = conn.framed.ce_differential(starred);
  KForm back = hodge_star(d_starred, id);
  int exponent = n * (k + 1) + 1;
  double sign = (exponent % 2 == 0) ? 1.0 : -1.0;
  return sign * back;
}

KForm hodge_laplacian(const ConnectionData& conn, const KForm& a) {
  KForm delta_d = codifferential(conn, conn.framed.ce_differential(a));
  if (a.degree() == 0) return delta_d;
  KForm d_delta = conn.framed.ce_differential(codifferential(conn, a));
  return d_delta + delta_d;
}

KForm curvature_action(const ConnectionData& conn, const CurvatureData& curv,
                       int h, int k, const KForm& a) {
  int n = conn.dimension();
  int deg = a.degree();
  KForm out(deg, n);
  if (deg == 0) return out;
  for (std::uint32_t target : basis_masks(n, deg)) {
    std::vector<int> t = mask_to_indices(target);
    double value = 0.0;
    std::vector<int> args(t);
    for (int m = 0; m < deg; ++m) {
      int original = t[m];
      for (int q = 0; q < n; ++q) {
        double r = curv.entry(h, k, q, original - 1);
        if (r == 0.0) continue;
        args[m] = q + 1;
        value -= r * a.component(args);
      }
      args[m] = original;
    }
    if (value != 0.0) out.set(target, value);
  }
  return out;
}

KForm weitzenboeck_curvature_term(const ConnectionData& conn,
                                  const CurvatureData& curv, const KForm& a) {
  int n = conn.dimension();
  KForm out(a.degree(), n);
  if (a.degree() == 0) return out;
  for (int h = 0; h < n; ++h) {
    KForm basis_h = KForm::basis(n, {h + 1});
    for (int k = 0; k < n; ++k) {
      KForm action = curvature_action(conn, curv, h, k, a);
      out -= wedge(basis_h, interior(unit_vector(n, k), action));
    }
  }
  return out;
}

double weitzenboeck_residual(const ConnectionData& conn, const CurvatureData& curv,
                             const KForm& a) {
  KForm lhs = hodge_laplacian(conn, a);
  KForm rhs = rough_laplacian(conn, a) + weitzenboeck_curvature_term(conn, curv, a);
  return max_abs_diff(lhs, rhs);
}

std::vector<KForm> parallel_forms(const ConnectionData& conn, int degree,
                                  double rel_tol) {
  int n = conn.dimension();
  std::vector<std::uint32_t> masks = basis_masks(n, degree);
  int cols = static_cast<int>(masks.size());
  if (cols == 0) return {};
  Eigen::MatrixXd stacked(static_cast<Eigen::Index>(n) * cols, cols);
  for (int c = 0; c < cols; ++c) {
    KForm basis_form(degree, n);
    basis_form.set(masks[c], 1.0);
    for (int i = 0; i < n; ++i) {
      KForm da = covariant_derivative_along(conn, i, basis_form);
      for (int row = 0; row < cols; ++row) {
        stacked(static_cast<Eigen::Index>(i) * cols + row, c) = da.coefficient(masks[row]);
      }
    }
  }
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(stacked, Eigen::ComputeFullV);
  const Eigen::VectorXd& sv = svd.singularValues();
  double sigma_max = sv.size() > 0 ? sv(0) : 0.0;
  std::vector<KForm> out;
  for (int c = 0; c < cols; ++c) {
    double sigma = c < sv.size() ? sv(c) : 0.0;
    if (sigma_max > 0.0 && sigma > rel_tol * sigma_max) continue;
    KForm form(degree, n);
    for (int row = 0; row < cols; ++row) {
      double value = svd.matrixV()(row, c);
      if (value != 0.0) form.set(masks[row], value);
    }
    out.push_back(std::move(form));
  }
  return out;
}

KillingReport killing_check(const ConnectionData& conn, const Eigen::VectorXd& v,
                            double tol) {
  int n = conn.dimension();
  if (v.size() != n) throw Error("killing_check: dimension mismatch");
  Eigen::VectorXd u = conn.vector_to_frame(v);
  Eigen::MatrixXd m(n, n);
  for (int j = 0; j < n; ++j) {
    m.col(j) = conn.gamma[j] * u;
  }
  KillingReport report;
  report.symmetrized = 0.5 * (m + m.transpose());
  report.norm_sq = report.symmetrized.squaredNorm();
  report.killing = report.symmetrized.cwiseAbs().maxCoeff() <= tol;
  return report;
}

}  // namespace liegeo
