#pragma once

#include <optional>
#include <string>

#include <Eigen/Dense>

#include "liegeo/riemannian.hpp"

namespace liegeo {

/// Almost contact metric structure (alpha, omega, g) on a (2n+1)-dimensional
/// algebra: alpha the contact-type 1-form, omega the fundamental 2-form,
/// xi the Reeb vector (alpha(xi) = 1, xi ⌟ omega = 0) and phi the endomorphism
/// with omega(X,Y) = g(phi X, Y), phi xi = 0.
struct AlmostContactStructure {
  LieAlgebra algebra;
  Metric metric;
  KForm alpha;
  KForm omega;
  Eigen::VectorXd xi;
  Eigen::MatrixXd phi;
  int n = 0;  // dimension = 2n + 1
  double compatibility_defect = 0.0;
};

/// Builds and verifies the structure tensors. Throws BuildError when
/// alpha ^ omega^n vanishes or the compatibility identities fail.
AlmostContactStructure build_structure(const LieAlgebra& algebra, const Metric& metric,
                                       const KForm& alpha, const KForm& omega,
                                       double tol = 1e-9);

enum class ContactClass {
  AlmostContactMetric,  // compatible but d alpha or d omega nonzero
  AlmostCokahler,       // d alpha = 0 and d omega = 0
  Cokahler,             // additionally nabla alpha = 0 and nabla omega = 0
};

std::string to_string(ContactClass c);

ContactClass classify(const AlmostContactStructure& s, const ConnectionData& conn,
                      double tol = 1e-9);

/// Star Ricci data: rho*(X,Y) = sum_i <R(X, h_i) phi h_i, Y> over an
/// orthonormal frame h_i of ker alpha (phi xi = 0 makes the xi term vanish),
/// ric*(X,Y) = omega(sum_i R(X,h_i) phi h_i, Y), tau* = <omega, rho*>/n.
struct StarRicciData {
  Eigen::MatrixXd rho_star_raw;    // frame components, before antisymmetrizing
  KForm rho_star;                  // antisymmetric part as a 2-form (frame)
  Eigen::MatrixXd ric_star;        // frame components
  double tau_star = 0.0;
  double antisymmetry_defect = 0.0;  // max |rho*(X,Y) + rho*(Y,X)|
};

StarRicciData star_ricci(const AlmostContactStructure& s, const ConnectionData& conn,
                         const CurvatureData& curv);

/// Residuals of nabla*nabla alpha = -tau alpha and
/// nabla*nabla omega = 2(rho* - tau omega) on an Einstein input.
/// Throws NotEinsteinError when the metric is not Einstein at tol.
struct RoughLaplacianIdentity {
  double tau = 0.0;
  double alpha_residual = 0.0;
  double omega_residual = 0.0;
  bool passed = false;
};

RoughLaplacianIdentity rough_laplacian_identities(const AlmostContactStructure& s,
                                                  const ConnectionData& conn,
                                                  const CurvatureData& curv,
                                                  double tol = 1e-9);

/// Pointwise norm identities on an Einstein almost-cokahler input:
/// |nabla alpha|^2 = -tau, |nabla omega|^2 = 2n(tau* - tau), and
/// 0 <= |nabla alpha|^2 <= |nabla omega|^2.
struct NormIdentityReport {
  double minus_tau = 0.0;
  double grad_alpha_sq = 0.0;
  double two_n_gap = 0.0;  // 2n (tau* - tau)
  double grad_omega_sq = 0.0;
  bool equalities_hold = false;
  bool inequalities_hold = false;
};

NormIdentityReport norm_identities(const AlmostContactStructure& s,
                                   const ConnectionData& conn, const CurvatureData& curv,
                                   double tol = 1e-9);

/// Interval constraint on the ratio (tau - tau*)/tau for an Einstein
/// almost-cokahler structure with tau < 0: the ratio lies in
/// [1/(2n), (4n - 1 + sqrt(16n^2 - 8n - 14)) / (10n)].
/// tau = 0 routes to the cokahler case; tau > 0 is flagged as contradictory.
struct RatioBounds {
  enum class Status { TauNegative, TauZero, TauPositive };
  Status status = Status::TauNegative;
  double ratio = 0.0;
  double lower = 0.0;
  std::optional<double> upper;  // empty when 16n^2 - 8n - 14 < 0 (n = 1)
  bool upper_real = false;
  bool in_interval = false;
  std::string note;
};

RatioBounds ratio_interval(double tau, double tau_star, int n);

/// Bundle of the contact-side curvature quantities for reporting.
struct ContactCurvatureReport {
  ContactClass classification = ContactClass::AlmostContactMetric;
  std::optional<double> tau;
  StarRicciData star;
  double grad_alpha_sq = 0.0;
  double grad_omega_sq = 0.0;
  std::optional<double> ratio;  // (tau - tau*)/tau when tau exists and is nonzero
  std::optional<NormIdentityReport> norms;
  std::optional<RatioBounds> bounds;
};

ContactCurvatureReport contact_report(const AlmostContactStructure& s,
                                      const ConnectionData& conn,
                                      const CurvatureData& curv, double tol = 1e-9);

}  // namespace liegeo
