#include "liegeo/almost_contact.hpp"

#include <algorithm>
#include <cmath>

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

}  // namespace

AlmostContactStructure build_structure(const LieAlgebra& algebra, const Metric& metric,
                                       const KForm& alpha, const KForm& omega,
                                       double tol) {
  int dim = algebra.dimension();
  if (metric.dimension() != dim || alpha.dimension() != dim || omega.dimension() != dim) {
    throw Error("build_structure: dimension mismatch");
  }
  if (dim % 2 == 0) {
    throw BuildError("build_structure: dimension must be odd", 0.0);
  }
  if (alpha.degree() != 1 || omega.degree() != 2) {
    throw Error("build_structure: alpha must be a 1-form and omega a 2-form");
  }
  if (!metric.positive_definite()) {
    throw BuildError("build_structure: metric is not positive definite",
                     -metric.min_eigenvalue());
  }
  int n = dim / 2;

  KForm volume = alpha;
  for (int p = 0; p < n; ++p) volume = wedge(volume, omega);
  double volume_size = volume.max_abs();
  if (volume_size <= tol) {
    throw BuildError("build_structure: alpha ^ omega^n vanishes", volume_size);
  }

  Eigen::VectorXd a = form_components(alpha);
  Eigen::MatrixXd w = two_form_matrix(omega);

  Eigen::MatrixXd system(dim + 1, dim);
  system.topRows(dim) = w.transpose();
  system.bottomRows(1) = a.transpose();
  Eigen::VectorXd rhs = Eigen::VectorXd::Zero(dim + 1);
  rhs(dim) = 1.0;
  Eigen::VectorXd xi = system.colPivHouseholderQr().solve(rhs);
  double xi_residual = (system * xi - rhs).cwiseAbs().maxCoeff();
  if (xi_residual > tol) {
    throw BuildError("build_structure: no Reeb vector solves alpha(xi) = 1, xi -| omega = 0",
                     xi_residual);
  }

  Eigen::MatrixXd phi = -metric.inverse() * w;

  const Eigen::MatrixXd& g = metric.matrix();
  Eigen::MatrixXd identity = Eigen::MatrixXd::Identity(dim, dim);
  double defect = 0.0;
  defect = std::max(defect,
                    (phi * phi + identity - xi * a.transpose()).cwiseAbs().maxCoeff());
  defect = std::max(defect,
                    (phi.transpose() * g * phi - g + a * a.transpose()).cwiseAbs().maxCoeff());
  defect = std::max(defect, (a.transpose() * phi).cwiseAbs().maxCoeff());
  defect = std::max(defect, (phi * xi).cwiseAbs().maxCoeff());
  defect = std::max(defect, std::abs(a.dot(xi) - 1.0));
  if (defect > tol) {
    throw BuildError("build_structure: compatibility identities fail", defect);
  }

  return AlmostContactStructure{algebra, metric, alpha, omega, xi, phi, n, defect};
}

std::string to_string(ContactClass c) {
  switch (c) {
    case ContactClass::AlmostContactMetric: return "almost-contact-metric";
    case ContactClass::AlmostCokahler: return "almost-cokahler";
    case ContactClass::Cokahler: return "cokahler";
  }
  return "unknown";
}

ContactClass classify(const AlmostContactStructure& s, const ConnectionData& conn,
                      double tol) {
  double d_alpha = s.algebra.ce_differential(s.alpha).max_abs();
  double d_omega = s.algebra.ce_differential(s.omega).max_abs();
  if (std::max(d_alpha, d_omega) > tol) return ContactClass::AlmostContactMetric;
  double grad = 0.0;
  KForm alpha_f = conn.to_frame(s.alpha);
  KForm omega_f = conn.to_frame(s.omega);
  for (int i = 0; i < conn.dimension(); ++i) {
    grad = std::max(grad, covariant_derivative_along(conn, i, alpha_f).max_abs());
    grad = std::max(grad, covariant_derivative_along(conn, i, omega_f).max_abs());
  }
  return grad > tol ? ContactClass::AlmostCokahler : ContactClass::Cokahler;
}

StarRicciData star_ricci(const AlmostContactStructure& s, const ConnectionData& conn,
                         const CurvatureData& curv) {
  int dim = conn.dimension();
  Eigen::MatrixXd phi_frame = conn.endomorphism_to_frame(s.phi);
  Eigen::MatrixXd raw = Eigen::MatrixXd::Zero(dim, dim);
  for (int a = 0; a < dim; ++a) {
    for (int b = 0; b < dim; ++b) {
      double sum = 0.0;
      for (int j = 0; j < dim; ++j) {
        for (int l = 0; l < dim; ++l) {
          double p = phi_frame(l, j);
          if (p != 0.0) sum += p * curv.entry(a, j, b, l);
        }
      }
      raw(a, b) = sum;
    }
  }
  StarRicciData data;
  data.rho_star_raw = raw;
  data.rho_star = antisymmetric_to_form(raw);
  data.antisymmetry_defect = (raw + raw.transpose()).cwiseAbs().maxCoeff();
  KForm omega_frame = conn.to_frame(s.omega);
  data.ric_star = raw * two_form_matrix(omega_frame);
  data.tau_star = frame_form_inner(omega_frame, data.rho_star) / s.n;
  return data;
}

RoughLaplacianIdentity rough_laplacian_identities(const AlmostContactStructure& s,
                                                  const ConnectionData& conn,
                                                  const CurvatureData& curv,
                                                  double tol) {
  std::optional<double> tau = einstein_check(curv, tol);
  if (!tau) {
    throw NotEinsteinError("rough_laplacian_identities: metric is not Einstein");
  }
  StarRicciData star = star_ricci(s, conn, curv);
  KForm alpha_f = conn.to_frame(s.alpha);
  KForm omega_f = conn.to_frame(s.omega);
  RoughLaplacianIdentity out;
  out.tau = *tau;
  out.alpha_residual = max_abs_diff(rough_laplacian(conn, alpha_f), -*tau * alpha_f);
  out.omega_residual = max_abs_diff(rough_laplacian(conn, omega_f),
                                    2.0 * (star.rho_star - *tau * omega_f));
  out.passed = std::max(out.alpha_residual, out.omega_residual) <= tol;
  return out;
}

NormIdentityReport norm_identities(const AlmostContactStructure& s,
                                   const ConnectionData& conn, const CurvatureData& curv,
                                   double tol) {
  std::optional<double> tau = einstein_check(curv, tol);
  if (!tau) {
    throw NotEinsteinError("norm_identities: metric is not Einstein");
  }
  StarRicciData star = star_ricci(s, conn, curv);
  NormIdentityReport out;
  out.minus_tau = -*tau;
  out.grad_alpha_sq = covariant_norm_sq(conn, conn.to_frame(s.alpha));
  out.two_n_gap = 2.0 * s.n * (star.tau_star - *tau);
  out.grad_omega_sq = covariant_norm_sq(conn, conn.to_frame(s.omega));
  out.equalities_hold = std::abs(out.grad_alpha_sq - out.minus_tau) <= tol &&
                        std::abs(out.grad_omega_sq - out.two_n_gap) <= tol;
  out.inequalities_hold = out.grad_alpha_sq >= -tol &&
                          out.grad_alpha_sq <= out.grad_omega_sq + tol;
  return out;
}

RatioBounds ratio_interval(double tau, double tau_star, int n) {
  RatioBounds out;
  out.lower = 1.0 / (2.0 * n);
  double discriminant = 16.0 * n * n - 8.0 * n - 14.0;
  if (discriminant >= 0.0) {
    out.upper = (4.0 * n - 1.0 + std::sqrt(discriminant)) / (10.0 * n);
    out.upper_real = true;
  }
  if (tau == 0.0) {
    out.status = RatioBounds::Status::TauZero;
    out.in_interval = true;
    out.note = "tau = 0: the structure is cokahler and the ratio is undefined";
    return out;
  }
  if (tau > 0.0) {
    out.status = RatioBounds::Status::TauPositive;
    out.ratio = (tau - tau_star) / tau;
    out.in_interval = false;
    out.note = "tau > 0 is incompatible with an Einstein almost-cokahler structure";
    return out;
  }
  out.status = RatioBounds::Status::TauNegative;
  out.ratio = (tau - tau_star) / tau;
  constexpr double slack = 1e-12;
  bool above = out.ratio >= out.lower - slack;
  bool below = !out.upper || out.ratio <= *out.upper + slack;
  out.in_interval = above && below;
  if (!out.upper_real) {
    out.note = "upper endpoint is not real for this n; only the lower bound applies";
  }
  return out;
}

ContactCurvatureReport contact_report(const AlmostContactStructure& s,
                                      const ConnectionData& conn,
                                      const CurvatureData& curv, double tol) {
  ContactCurvatureReport out;
  out.classification = classify(s, conn, tol);
  std::optional<double> tau = einstein_check(curv, tol);
  out.tau = tau;
  out.star = star_ricci(s, conn, curv);
  out.grad_alpha_sq = covariant_norm_sq(conn, conn.to_frame(s.alpha));
  out.grad_omega_sq = covariant_norm_sq(conn, conn.to_frame(s.omega));
  if (tau && std::abs(*tau) > tol) {
    out.ratio = (*tau - out.star.tau_star) / *tau;
  }
  if (tau && out.classification != ContactClass::AlmostContactMetric) {
    out.norms = norm_identities(s, conn, curv, tol);
    double clipped = std::abs(*tau) <= tol ? 0.0 : *tau;
    out.bounds = ratio_interval(clipped, out.star.tau_star, s.n);
  }
  return out;
}

}  // namespace liegeo
