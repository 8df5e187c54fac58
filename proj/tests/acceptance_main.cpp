// Acceptance gate: end-to-end checks of the reference example and the
// randomized invariants, one PASS/FAIL line per criterion, exit 1 on any
// failure. Tolerances are pinned inline next to each check.

#include <algorithm>
#include <cmath>
#include <iostream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "liegeo/almost_contact.hpp"
#include "liegeo/almost_kahler.hpp"
#include "liegeo/einstein_search.hpp"
#include "liegeo/exterior.hpp"
#include "liegeo/lie_algebra.hpp"
#include "liegeo/metric.hpp"
#include "liegeo/riemannian.hpp"
#include "test_support.hpp"

using namespace liegeo;
namespace support = liegeo::testing;

namespace {

int failures = 0;

void report(int criterion, bool ok, const std::string& detail) {
  std::cout << (ok ? "PASS" : "FAIL") << " criterion " << criterion << ": " << detail
            << "\n";
  if (!ok) ++failures;
}

std::string num(double value) {
  std::ostringstream out;
  out.precision(6);
  out << value;
  return out.str();
}

struct ReferenceBundle {
  AlmostContactStructure s;
  ConnectionData conn;
  CurvatureData curv;
};

ReferenceBundle reference_bundle() {
  LieAlgebra algebra = support::reference_algebra();
  Metric metric = Metric::identity(5);
  AlmostContactStructure s = build_structure(algebra, metric,
                                             support::reference_alpha(),
                                             support::reference_omega());
  ConnectionData conn = levi_civita(algebra, metric);
  CurvatureData curv = curvature(conn);
  return {std::move(s), std::move(conn), std::move(curv)};
}

void criterion_1_reference_curvature(const ReferenceBundle& ref) {
  double tau = ref.curv.scalar / 5.0;
  bool tau_ok = std::abs(tau + 1.5) <= 1e-9;
  Eigen::MatrixXd deviation =
      ref.curv.ricci + 1.5 * Eigen::MatrixXd::Identity(5, 5);
  bool einstein_ok = deviation.cwiseAbs().maxCoeff() <= 1e-9;

  StarRicciData star = star_ricci(ref.s, ref.conn, ref.curv);
  KForm rho_expected(2, 5);
  rho_expected.set({1, 2}, -0.75).set({3, 4}, -1.5);
  bool rho_ok = max_abs_diff(star.rho_star, rho_expected) <= 1e-9;
  bool tau_star_ok = std::abs(star.tau_star + 1.125) <= 1e-9;

  double ratio = (tau - star.tau_star) / tau;
  bool ratio_ok = std::abs(ratio - 0.25) <= 1e-9;

  ContactClass cls = classify(ref.s, ref.conn);
  bool class_ok = cls == ContactClass::AlmostCokahler;

  bool parallel_ok = parallel_forms(ref.conn, 2).empty();
  Eigen::VectorXd traces = support::reference_algebra().ad_traces();
  bool trace_ok = std::abs(traces(3) - 2.0) <= 1e-9 &&
                  !support::reference_algebra().is_unimodular();

  bool ok = tau_ok && einstein_ok && rho_ok && tau_star_ok && ratio_ok && class_ok &&
            parallel_ok && trace_ok;
  report(1, ok,
         "reference example: tau = " + num(tau) +
             ", max |ric + (3/2) g| = " + num(deviation.cwiseAbs().maxCoeff()) +
             ", tau* = " + num(star.tau_star) + ", ratio = " + num(ratio) +
             ", class = " + to_string(cls) +
             ", parallel 2-forms = " + std::to_string(parallel_forms(ref.conn, 2).size()) +
             ", tr ad_e4 = " + num(traces(3)));
}

void criterion_2_rough_laplacians(const ReferenceBundle& ref) {
  RoughLaplacianIdentity identity =
      rough_laplacian_identities(ref.s, ref.conn, ref.curv);
  KForm lap_alpha = rough_laplacian(ref.conn, ref.conn.to_frame(ref.s.alpha));
  KForm lap_omega = rough_laplacian(ref.conn, ref.conn.to_frame(ref.s.omega));
  double alpha_value = max_abs_diff(lap_alpha, 1.5 * KForm::basis(5, {5}));
  double omega_value = max_abs_diff(lap_omega, 1.5 * KForm::basis(5, {1, 2}));
  bool ok = identity.passed && identity.alpha_residual <= 1e-9 &&
            identity.omega_residual <= 1e-9 && alpha_value <= 1e-9 &&
            omega_value <= 1e-9;
  report(2, ok,
         "rough laplacian identities: |L alpha + tau alpha| = " +
             num(identity.alpha_residual) + ", |L omega - 2(rho* - tau omega)| = " +
             num(identity.omega_residual) + ", |L alpha - (3/2) e^5| = " +
             num(alpha_value) + ", |L omega - (3/2) e^12| = " + num(omega_value));
}

void criterion_3_norm_identities(const ReferenceBundle& ref) {
  NormIdentityReport norms = norm_identities(ref.s, ref.conn, ref.curv);
  bool ok = std::abs(norms.grad_alpha_sq - 1.5) <= 1e-9 &&
            std::abs(norms.minus_tau - 1.5) <= 1e-9 &&
            std::abs(norms.grad_omega_sq - 1.5) <= 1e-9 &&
            std::abs(norms.two_n_gap - 1.5) <= 1e-9 && norms.equalities_hold &&
            norms.inequalities_hold;
  report(3, ok,
         "norm identities: |grad alpha|^2 = " + num(norms.grad_alpha_sq) +
             " vs -tau = " + num(norms.minus_tau) + ", |grad omega|^2 = " +
             num(norms.grad_omega_sq) + " vs 2n(tau* - tau) = " + num(norms.two_n_gap) +
             ", chain 0 <= -tau <= 2n(tau* - tau) " +
             (norms.inequalities_hold ? "holds" : "fails"));
}

void criterion_4_ratio_interval(const ReferenceBundle& ref) {
  StarRicciData star = star_ricci(ref.s, ref.conn, ref.curv);
  double tau = ref.curv.scalar / 5.0;
  RatioBounds bounds = ratio_interval(tau, star.tau_star, 2);
  double upper_expected = (7.0 + std::sqrt(34.0)) / 20.0;
  bool ok = bounds.status == RatioBounds::Status::TauNegative && bounds.in_interval &&
            std::abs(bounds.lower - 0.25) <= 1e-12 && bounds.upper &&
            std::abs(*bounds.upper - upper_expected) <= 1e-12 &&
            std::abs(bounds.ratio - bounds.lower) <= 1e-12;
  report(4, ok,
         "ratio interval: ratio = " + num(bounds.ratio) + " in [" + num(bounds.lower) +
             ", " + (bounds.upper ? num(*bounds.upper) : "n/a") +
             "], lower endpoint attained to " +
             num(std::abs(bounds.ratio - bounds.lower)));
}

void criterion_5_double_product(const ReferenceBundle& ref) {
  AlmostHermitianStructure product = product_double(ref.s, ref.s);
  ConnectionData conn = levi_civita(product.algebra, product.metric);
  CurvatureData curv = curvature(conn);
  AlmostKahlerAnalysis analysis = analyze(product, conn, curv);
  bool ok = std::abs(analysis.s + 15.0) <= 1e-9 &&
            std::abs(analysis.s_star + 9.0) <= 1e-9 &&
            std::abs(analysis.grad_omega_sq - 6.0) <= 1e-9 &&
            analysis.scalar_gap_residual <= 1e-9;
  report(5, ok,
         "double product: s = " + num(analysis.s) + ", s* = " + num(analysis.s_star) +
             ", |grad Omega|^2 = " + num(analysis.grad_omega_sq) +
             ", |s* - s - |grad Omega|^2| = " + num(analysis.scalar_gap_residual));
}

void criterion_6_circle_product(const ReferenceBundle& ref) {
  AlmostHermitianStructure product = product_with_circle(ref.s);
  ConnectionData conn = levi_civita(product.algebra, product.metric);
  CurvatureData curv = curvature(conn);
  AlmostKahlerAnalysis analysis = analyze(product, conn, curv);
  CircleProductChecks checks = circle_product_checks(product, conn, curv, analysis);
  double pairing =
      frame_form_inner(conn.to_frame(product.kahler_form), analysis.phi_form);
  bool ok = std::abs(analysis.s + 7.5) <= 1e-9 &&
            checks.ric_second_residual <= 1e-10 && checks.rho_h_residual <= 1e-9 &&
            std::abs(pairing - 1.5) <= 1e-9 && checks.phi_xi_max <= 1e-10 &&
            checks.r_second_bound_holds &&
            std::abs(checks.r_second_lower_bound - 9.0 / 128.0) <= 1e-12 &&
            analysis.r_second_norm_sq >= 9.0 / 128.0;
  report(6, ok,
         "circle product: s = " + num(analysis.s) + ", ric'' residual = " +
             num(checks.ric_second_residual) + ", rho_h residual = " +
             num(checks.rho_h_residual) + ", <Omega, phi> = " + num(pairing) +
             ", max |phi(xi,.)| = " + num(checks.phi_xi_max) + ", |R''|^2 = " +
             num(analysis.r_second_norm_sq) + " >= " +
             num(checks.r_second_lower_bound));
}

void criterion_7_random_invariants() {
  std::mt19937_64 rng(2026);
  std::uniform_int_distribution<int> degree_pick(1, 3);
  int samples = 0;
  double max_symmetry = 0.0;
  double max_weitzenboeck = 0.0;
  double max_hodge = 0.0;
  double max_dd = 0.0;
  for (int dim = 3; dim <= 6; ++dim) {
    for (int rep = 0; rep < 50; ++rep) {
      LieAlgebra algebra = support::random_algebra(rng, dim);
      Metric metric = support::random_metric(rng, dim);
      max_dd = std::max(max_dd, validate(algebra).max_d_squared);

      ConnectionData conn = levi_civita(algebra, metric);
      CurvatureData curv = curvature(conn);
      for (int i = 0; i < dim; ++i)
        for (int j = 0; j < dim; ++j)
          for (int k = 0; k < dim; ++k)
            for (int l = 0; l < dim; ++l) {
              double r = curv.entry(i, j, k, l);
              max_symmetry = std::max(max_symmetry,
                                      std::abs(r + curv.entry(j, i, k, l)));
              max_symmetry = std::max(max_symmetry,
                                      std::abs(r + curv.entry(i, j, l, k)));
              max_symmetry = std::max(max_symmetry,
                                      std::abs(r - curv.entry(k, l, i, j)));
              double bianchi = curv.entry(i, j, k, l) + curv.entry(j, k, i, l) +
                               curv.entry(k, i, j, l);
              max_symmetry = std::max(max_symmetry, std::abs(bianchi));
            }

      for (int degree = 1; degree <= 2; ++degree) {
        KForm a = support::random_form(rng, degree, dim);
        max_weitzenboeck =
            std::max(max_weitzenboeck, weitzenboeck_residual(conn, curv, a));
      }

      int degree = std::min(degree_pick(rng), dim - 1);
      KForm a = support::random_form(rng, degree, dim);
      KForm b = support::random_form(rng, degree, dim);
      KForm lhs = wedge(a, hodge_star(b, metric));
      KForm rhs = form_inner(a, b, metric) * volume_form(metric);
      max_hodge = std::max(max_hodge, max_abs_diff(lhs, rhs));
      ++samples;
    }
  }

  double max_j_invariance = 0.0;
  double max_d_omega = 0.0;
  std::mt19937_64 product_rng(2027);
  for (int trial = 0; trial < 10; ++trial) {
    support::CokahlerSample sample =
        support::random_cokahler(product_rng, 1 + trial % 2);
    AlmostContactStructure s =
        build_structure(sample.algebra, sample.metric, sample.alpha, sample.omega);
    AlmostHermitianStructure product =
        trial % 3 == 0 ? product_double(s, s) : product_with_circle(s);
    ConnectionData conn = levi_civita(product.algebra, product.metric);
    CurvatureData curv = curvature(conn);
    AlmostKahlerAnalysis analysis = analyze(product, conn, curv);
    max_j_invariance = std::max(max_j_invariance, analysis.j_invariance_defect);
    max_d_omega = std::max(max_d_omega, analysis.d_omega_max);
  }

  bool ok = samples >= 200 && max_dd <= 1e-12 && max_symmetry <= 1e-10 &&
            max_weitzenboeck <= 1e-8 && max_hodge <= 1e-12 &&
            max_j_invariance <= 1e-9 && max_d_omega <= 1e-10;
  report(7, ok,
         std::to_string(samples) + " random algebras (dims 3-6): max |d(d e^k)| = " +
             num(max_dd) + ", max curvature symmetry defect = " + num(max_symmetry) +
             ", max weitzenboeck residual = " + num(max_weitzenboeck) +
             ", max hodge pairing defect = " + num(max_hodge) +
             "; 10 products: max J-invariance defect = " + num(max_j_invariance));
}

void criterion_8_synthetic_blocks() {
  std::mt19937_64 rng(31);
  std::uniform_real_distribution<double> unit(-1.0, 1.0);
  double max_quarter = 0.0;
  double max_eighth = 0.0;
  for (int trial = 0; trial < 20; ++trial) {
    const int dim = (trial % 2 == 0) ? 6 : 4;
    const int h = dim - 2;
    Eigen::MatrixXd j = Eigen::MatrixXd::Zero(dim, dim);
    for (int i = 0; i + 1 < dim; i += 2) {
      j(i + 1, i) = 1.0;
      j(i, i + 1) = -1.0;
    }
    KForm alpha = KForm::basis(dim, {dim - 1});
    KForm theta = KForm::basis(dim, {dim});

    Eigen::MatrixXd c(h, h);
    for (int r = 0; r < h; ++r)
      for (int s = 0; s < h; ++s) c(r, s) = unit(rng);
    c = 0.5 * (c + c.transpose()).eval();

    std::vector<std::uint32_t> masks = basis_masks(dim, 2);
    const int m = static_cast<int>(masks.size());
    auto form_vector = [&masks, m](const KForm& a) {
      Eigen::VectorXd v = Eigen::VectorXd::Zero(m);
      for (int idx = 0; idx < m; ++idx) v(idx) = a.coefficient(masks[idx]);
      return v;
    };

    std::vector<Eigen::VectorXd> a_vec(h), v_vec(h);
    for (int i = 0; i < h; ++i) {
      a_vec[i] = form_vector(wedge(alpha, KForm::basis(dim, {i + 1})));
      KForm je(1, dim);
      for (int k = 0; k < dim; ++k)
        if (j(k, i) != 0.0) je.set(1u << k, j(k, i));
      v_vec[i] =
          form_vector(wedge(alpha, KForm::basis(dim, {i + 1})) - wedge(theta, je));
    }

    Eigen::MatrixXd block = Eigen::MatrixXd::Zero(m, m);
    for (int r = 0; r < h; ++r)
      for (int s = 0; s < h; ++s) block += c(r, s) * a_vec[r] * a_vec[s].transpose();

    OperatorSplit split = split_on_anti_invariant(block, j, dim);
    Eigen::MatrixXd jj = two_form_complex_structure(j, dim);
    Eigen::MatrixXd quarter = Eigen::MatrixXd::Zero(m, m);
    Eigen::MatrixXd eighth = Eigen::MatrixXd::Zero(m, m);
    for (int r = 0; r < h; ++r)
      for (int s = 0; s < h; ++s) {
        quarter += 0.25 * c(r, s) * v_vec[r] * v_vec[s].transpose();
        Eigen::VectorXd wr = jj * v_vec[r];
        Eigen::VectorXd ws = jj * v_vec[s];
        eighth += 0.125 * c(r, s) *
                  (v_vec[r] * v_vec[s].transpose() + wr * ws.transpose());
      }
    max_quarter =
        std::max(max_quarter, (split.compressed - quarter).cwiseAbs().maxCoeff());
    max_eighth =
        std::max(max_eighth, (split.commuting - eighth).cwiseAbs().maxCoeff());
  }
  bool ok = max_quarter <= 1e-12 && max_eighth <= 1e-12;
  report(8, ok,
         "synthetic curvature blocks (20 trials): max |compression - quarter formula| = " +
             num(max_quarter) + ", max |commuting part - eighth formula| = " +
             num(max_eighth));
}

void criterion_9_search() {
  LieAlgebra algebra = support::reference_algebra();
  MetricParameterization family(FamilyKind::Diagonal, 5);
  SearchConfig config;
  config.starts = 8;
  config.seed = 1;
  config.start_spread = 0.1;
  std::vector<SearchResult> results = multi_start(algebra, family, config);
  int converged = 0;
  const SearchResult* best = &results.front();
  for (const SearchResult& result : results) {
    if (result.residual <= 1e-8 && result.iterations <= 2000) ++converged;
    if (result.residual < best->residual) best = &result;
  }
  // the identity metric is not an isolated minimizer: the scaling symmetry
  // e -> (p e_1, p e_2, p^2 e_3, e_4, e_5) of the algebra generates a curve
  // of unit-determinant Einstein metrics through it, so the search is judged
  // against that curve rather than the single point
  double gap = support::reference_scaling_orbit_gap(best->metric.matrix());
  bool ok = converged >= 7 && best->residual <= 1e-8 && gap <= 1e-4;
  report(9, ok,
         "einstein search (8 starts, +-10%): " + std::to_string(converged) +
             "/8 converged to residual <= 1e-8, best residual = " +
             num(best->residual) +
             ", gap to the identity's scaling-symmetry curve = " + num(gap));
}

void criterion_10_killing(const ReferenceBundle& ref) {
  std::mt19937_64 rng(61);
  int confirmed = 0;
  bool implication_ok = true;
  double max_grad_alpha = 0.0;
  for (int trial = 0; trial < 10; ++trial) {
    support::CokahlerSample sample = support::random_cokahler(rng, 1 + trial % 2, true);
    AlmostContactStructure s =
        build_structure(sample.algebra, sample.metric, sample.alpha, sample.omega);
    ConnectionData conn = levi_civita(sample.algebra, sample.metric);
    KillingReport killing = killing_check(conn, s.xi);
    if (!killing.killing) {
      implication_ok = false;
      continue;
    }
    double grad_alpha = covariant_norm_sq(conn, conn.to_frame(s.alpha));
    max_grad_alpha = std::max(max_grad_alpha, grad_alpha);
    if (grad_alpha > 1e-9) implication_ok = false;
    ++confirmed;
  }

  KillingReport reference_killing = killing_check(ref.conn, ref.s.xi);
  bool reference_ok = !reference_killing.killing &&
                      std::abs(reference_killing.norm_sq - 1.5) <= 1e-9;

  bool ok = implication_ok && confirmed == 10 && reference_ok;
  report(10, ok,
         "killing reeb fields: " + std::to_string(confirmed) +
             "/10 isometric samples have |grad alpha|^2 <= 1e-9 (max " +
             num(max_grad_alpha) + "); reference field is not killing, |S|^2 = " +
             num(reference_killing.norm_sq));
}

}  // namespace

int main() {
  ReferenceBundle ref = reference_bundle();
  criterion_1_reference_curvature(ref);
  criterion_2_rough_laplacians(ref);
  criterion_3_norm_identities(ref);
  criterion_4_ratio_interval(ref);
  criterion_5_double_product(ref);
  criterion_6_circle_product(ref);
  criterion_7_random_invariants();
  criterion_8_synthetic_blocks();
  criterion_9_search();
  criterion_10_killing(ref);
  if (failures == 0) {
    std::cout << "all criteria passed\n";
    return 0;
  }
  std::cout << failures << " criteria failed\n";
  return 1;
}
