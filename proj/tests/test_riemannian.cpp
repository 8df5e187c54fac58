#include <doctest.h>

#include <cmath>
#include <random>

#include "liegeo/riemannian.hpp"
#include "test_support.hpp"

using namespace liegeo;
namespace support = liegeo::testing;

namespace {

ConnectionData reference_connection() {
  return levi_civita(support::reference_algebra(), Metric::identity(5));
}

}  // namespace

TEST_CASE("levi-civita on the reference algebra, identity metric") {
  ConnectionData conn = reference_connection();
  CHECK((conn.frame - Eigen::MatrixXd::Identity(5, 5)).norm() < 1e-12);
  CHECK(conn.compatibility_defect < 1e-12);
  CHECK(conn.torsion_defect < 1e-12);

  // Koszul by hand: Gamma^4_11 = 1/2, Gamma^5_12 = sqrt(3)/2, nabla_{e1} e1 = e4/2
  CHECK(conn.gamma[0](3, 0) == doctest::Approx(0.5));
  CHECK(conn.gamma[0](4, 1) == doctest::Approx(std::sqrt(3.0) / 2.0));
  Eigen::VectorXd d11 = conn.gamma[0] * Eigen::VectorXd::Unit(5, 0);
  CHECK((d11 - 0.5 * Eigen::VectorXd::Unit(5, 3)).norm() < 1e-12);
}

TEST_CASE("reference metric is einstein with tau = -3/2") {
  ConnectionData conn = reference_connection();
  CurvatureData curv = curvature(conn);
  CHECK((curv.ricci + 1.5 * Eigen::MatrixXd::Identity(5, 5)).norm() < 1e-12);
  CHECK(curv.scalar == doctest::Approx(-7.5).epsilon(1e-12));
  CHECK(curv.einstein_deviation < 1e-12);
  auto tau = einstein_check(curv);
  REQUIRE(tau.has_value());
  CHECK(*tau == doctest::Approx(-1.5).epsilon(1e-12));
}

TEST_CASE("einstein check fails on the heisenberg sum") {
  ConnectionData conn =
      levi_civita(support::heisenberg_plus_flat(5), Metric::identity(5));
  CurvatureData curv = curvature(conn);
  CHECK_FALSE(einstein_check(curv).has_value());
  // ric = diag(-1/2, -1/2, 1/2, 0, 0) in this presentation
  Eigen::VectorXd diag(5);
  diag << -0.5, -0.5, 0.5, 0.0, 0.0;
  CHECK((curv.ricci - Eigen::MatrixXd(diag.asDiagonal())).norm() < 1e-12);
}

TEST_CASE("connection is metric and torsion free on random data") {
  std::mt19937_64 rng(61);
  for (int trial = 0; trial < 10; ++trial) {
    int dim = 3 + (trial % 4);
    LieAlgebra g = support::random_algebra(rng, dim);
    Metric metric = support::random_metric(rng, dim);
    ConnectionData conn = levi_civita(g, metric);
    CHECK(conn.compatibility_defect < 1e-12);
    CHECK(conn.torsion_defect < 1e-12);
    CHECK((conn.frame.transpose() * metric.matrix() * conn.frame -
           Eigen::MatrixXd::Identity(dim, dim))
              .norm() < 1e-10);
  }
}

TEST_CASE("curvature has all tensor symmetries and first bianchi") {
  std::mt19937_64 rng(67);
  for (int trial = 0; trial < 10; ++trial) {
    int dim = 3 + (trial % 4);
    LieAlgebra g = support::random_algebra(rng, dim);
    ConnectionData conn = levi_civita(g, support::random_metric(rng, dim));
    CurvatureData curv = curvature(conn);
    double defect = 0.0;
    for (int i = 0; i < dim; ++i)
      for (int j = 0; j < dim; ++j)
        for (int k = 0; k < dim; ++k)
          for (int l = 0; l < dim; ++l) {
            double r = curv.entry(i, j, k, l);
            defect = std::max(defect, std::abs(r + curv.entry(j, i, k, l)));
            defect = std::max(defect, std::abs(r + curv.entry(i, j, l, k)));
            defect = std::max(defect, std::abs(r - curv.entry(k, l, i, j)));
            double bianchi = r + curv.entry(j, k, i, l) + curv.entry(k, i, j, l);
            defect = std::max(defect, std::abs(bianchi));
          }
    CHECK(defect < 1e-10);
    CHECK((curv.ricci - curv.ricci.transpose()).norm() < 1e-10);
    CHECK(curv.scalar == doctest::Approx(curv.ricci.trace()).epsilon(1e-10));
  }
}

TEST_CASE("covariant derivative is compatible with wedge and inner product") {
  std::mt19937_64 rng(71);
  for (int trial = 0; trial < 6; ++trial) {
    int dim = 4 + (trial % 3);
    LieAlgebra g = support::random_algebra(rng, dim);
    ConnectionData conn = levi_civita(g, support::random_metric(rng, dim));
    KForm a = support::random_form(rng, 1, dim);
    KForm b = support::random_form(rng, 2, dim);
    KForm af = conn.to_frame(a);
    KForm bf = conn.to_frame(b);
    for (int i = 0; i < dim; ++i) {
      KForm da = covariant_derivative_along(conn, i, af);
      KForm db = covariant_derivative_along(conn, i, bf);
      // Leibniz over the wedge
      KForm lhs = covariant_derivative_along(conn, i, wedge(af, bf));
      CHECK(max_abs_diff(lhs, wedge(da, bf) + wedge(af, db)) < 1e-11);
    }
    // invariant scalars are constant: <nabla_i b, b'> + <b, nabla_i b'> = 0
    KForm b2 = conn.to_frame(support::random_form(rng, 2, dim));
    for (int i = 0; i < dim; ++i) {
      double sum = frame_form_inner(covariant_derivative_along(conn, i, bf), b2) +
                   frame_form_inner(bf, covariant_derivative_along(conn, i, b2));
      CHECK(std::abs(sum) < 1e-11);
    }
  }
}

TEST_CASE("torsion-free connection reconstructs the differential") {
  // d a = sum_i e^i ^ nabla_{f_i} a in an orthonormal frame
  std::mt19937_64 rng(73);
  for (int trial = 0; trial < 8; ++trial) {
    int dim = 3 + (trial % 4);
    LieAlgebra g = support::random_algebra(rng, dim);
    ConnectionData conn = levi_civita(g, support::random_metric(rng, dim));
    for (int deg = 1; deg <= 2; ++deg) {
      KForm a = conn.to_frame(support::random_form(rng, deg, dim));
      KForm reconstructed(deg + 1, dim);
      for (int i = 0; i < dim; ++i) {
        reconstructed += wedge(KForm::basis(dim, {i + 1}),
                               covariant_derivative_along(conn, i, a));
      }
      CHECK(max_abs_diff(conn.framed.ce_differential(a), reconstructed) < 1e-11);
    }
  }
}

TEST_CASE("codifferential agrees with its hodge star form") {
  std::mt19937_64 rng(79);
  for (int trial = 0; trial < 8; ++trial) {
    int dim = 3 + (trial % 4);
    LieAlgebra g = support::random_algebra(rng, dim);
    ConnectionData conn = levi_civita(g, support::random_metric(rng, dim));
    for (int deg = 1; deg <= 3 && deg <= dim; ++deg) {
      KForm a = conn.to_frame(support::random_form(rng, deg, dim));
      CHECK(max_abs_diff(codifferential(conn, a), codifferential_via_hodge(conn, a)) <
            1e-11);
    }
  }
}

TEST_CASE("weitzenboeck identity closes on random inputs") {
  std::mt19937_64 rng(83);
  for (int trial = 0; trial < 8; ++trial) {
    int dim = 3 + (trial % 4);
    LieAlgebra g = support::random_algebra(rng, dim);
    ConnectionData conn = levi_civita(g, support::random_metric(rng, dim));
    CurvatureData curv = curvature(conn);
    for (int deg = 1; deg <= 2; ++deg) {
      KForm a = conn.to_frame(support::random_form(rng, deg, dim));
      CHECK(weitzenboeck_residual(conn, curv, a) < 1e-8);
    }
  }
}

TEST_CASE("weitzenboeck curvature term reduces to ricci on one-forms") {
  std::mt19937_64 rng(89);
  for (int trial = 0; trial < 6; ++trial) {
    int dim = 3 + (trial % 4);
    LieAlgebra g = support::random_algebra(rng, dim);
    ConnectionData conn = levi_civita(g, support::random_metric(rng, dim));
    CurvatureData curv = curvature(conn);
    KForm a = conn.to_frame(support::random_form(rng, 1, dim));
    Eigen::VectorXd coeffs(dim);
    for (int i = 0; i < dim; ++i) coeffs(i) = a.coefficient(1u << i);
    Eigen::VectorXd ric_a = curv.ricci * coeffs;
    KForm expected(1, dim);
    for (int i = 0; i < dim; ++i) expected.set(1u << i, ric_a(i));
    CHECK(max_abs_diff(weitzenboeck_curvature_term(conn, curv, a), expected) < 1e-10);
  }
}

TEST_CASE("rough laplacian on the reference structure forms") {
  ConnectionData conn = reference_connection();
  KForm alpha = conn.to_frame(support::reference_alpha());
  KForm omega = conn.to_frame(support::reference_omega());
  // nabla*nabla alpha = (3/2) e^5 and nabla*nabla omega = (3/2) e^12
  CHECK(max_abs_diff(rough_laplacian(conn, alpha), 1.5 * KForm::basis(5, {5})) < 1e-12);
  CHECK(max_abs_diff(rough_laplacian(conn, omega), 1.5 * KForm::basis(5, {1, 2})) <
        1e-12);
  CHECK(covariant_norm_sq(conn, alpha) == doctest::Approx(1.5).epsilon(1e-12));
  CHECK(covariant_norm_sq(conn, omega) == doctest::Approx(1.5).epsilon(1e-12));
}

TEST_CASE("parallel forms on flat and curved examples") {
  LieAlgebra flat = LieAlgebra::abelian(4);
  ConnectionData conn = levi_civita(flat, Metric::identity(4));
  CHECK(parallel_forms(conn, 1).size() == 4);
  CHECK(parallel_forms(conn, 2).size() == 6);

  ConnectionData ref = reference_connection();
  CHECK(parallel_forms(ref, 1).empty());
  CHECK(parallel_forms(ref, 2).empty());

  // every parallel form is closed and coclosed
  std::mt19937_64 rng(97);
  LieAlgebra g = support::heisenberg_plus_flat(5);
  ConnectionData hconn = levi_civita(g, support::random_metric(rng, 5));
  for (const KForm& p : parallel_forms(hconn, 1)) {
    CHECK(hconn.framed.ce_differential(p).max_abs() < 1e-8);
    CHECK(codifferential(hconn, p).max_abs() < 1e-8);
  }
}

TEST_CASE("killing test on reference and abelian data") {
  ConnectionData conn = reference_connection();
  KillingReport report = killing_check(conn, Eigen::VectorXd::Unit(5, 4));
  CHECK_FALSE(report.killing);
  CHECK(report.norm_sq == doctest::Approx(1.5).epsilon(1e-12));

  ConnectionData flat = levi_civita(LieAlgebra::abelian(4), Metric::identity(4));
  KillingReport ok = killing_check(flat, Eigen::VectorXd::Ones(4));
  CHECK(ok.killing);
  CHECK(ok.norm_sq < 1e-15);
}

TEST_CASE("hodge laplacian of closed and coclosed forms is the weitzenboeck sum") {
  ConnectionData conn = reference_connection();
  CurvatureData curv = curvature(conn);
  KForm alpha = conn.to_frame(support::reference_alpha());
  // alpha closed and coclosed: Delta alpha = nabla*nabla alpha + Ric(alpha)
  CHECK(conn.framed.ce_differential(alpha).max_abs() < 1e-12);
  CHECK(codifferential(conn, alpha).max_abs() < 1e-12);
  KForm delta = hodge_laplacian(conn, alpha);
  KForm sum = rough_laplacian(conn, alpha) + weitzenboeck_curvature_term(conn, curv, alpha);
  CHECK(max_abs_diff(delta, sum) < 1e-11);
  // numerically: Delta alpha = (3/2 - 3/2) e^5 = 0 since Ric = -(3/2) id
  CHECK(delta.max_abs() < 1e-11);
}
