#include <doctest.h>

#include <cmath>
#include <random>

#include "liegeo/lie_algebra.hpp"
#include "test_support.hpp"

using namespace liegeo;
namespace support = liegeo::testing;

TEST_CASE("structure constants follow de^k(e_i,e_j) = -c^k_ij") {
  LieAlgebra heis = support::heisenberg_plus_flat(3);
  // de^3 = e^12, so c^3_12 = -1 and [e_1, e_2] = -e_3
  CHECK(heis.structure_constant(2, 0, 1) == doctest::Approx(-1.0));
  CHECK(heis.structure_constant(2, 1, 0) == doctest::Approx(1.0));
  Eigen::VectorXd x = Eigen::VectorXd::Unit(3, 0);
  Eigen::VectorXd y = Eigen::VectorXd::Unit(3, 1);
  Eigen::VectorXd b = heis.bracket(x, y);
  CHECK((b + Eigen::VectorXd::Unit(3, 2)).norm() < 1e-14);
  CHECK(heis.bracket(y, x).isApprox(-b, 1e-14));
}

TEST_CASE("reference algebra brackets and traces") {
  LieAlgebra g = support::reference_algebra();
  Eigen::VectorXd e1 = Eigen::VectorXd::Unit(5, 0);
  Eigen::VectorXd e2 = Eigen::VectorXd::Unit(5, 1);
  Eigen::VectorXd e3 = Eigen::VectorXd::Unit(5, 2);
  CHECK((g.bracket(e1, e2) + e3).norm() < 1e-14);

  Eigen::VectorXd traces = g.ad_traces();
  Eigen::VectorXd expected(5);
  expected << 0, 0, 0, 2, 0;
  CHECK((traces - expected).norm() < 1e-12);
  CHECK_FALSE(g.is_unimodular());
  CHECK(validate(g).passed);
  CHECK(validate(g).max_d_squared < 1e-14);
}

TEST_CASE("ad traces match brackets directly") {
  std::mt19937_64 rng(41);
  for (int trial = 0; trial < 6; ++trial) {
    int dim = 3 + (trial % 4);
    LieAlgebra g = support::random_algebra(rng, dim);
    Eigen::VectorXd traces = g.ad_traces();
    for (int i = 0; i < dim; ++i) {
      double tr = 0.0;
      for (int j = 0; j < dim; ++j)
        tr += g.bracket(Eigen::VectorXd::Unit(dim, i),
                        Eigen::VectorXd::Unit(dim, j))(j);
      CHECK(traces(i) == doctest::Approx(tr).epsilon(1e-12));
    }
  }
}

TEST_CASE("chevalley-eilenberg differential extends the structure equations") {
  std::mt19937_64 rng(43);
  for (int trial = 0; trial < 6; ++trial) {
    int dim = 3 + (trial % 4);
    LieAlgebra g = support::random_algebra(rng, dim);
    for (int k = 0; k < dim; ++k) {
      KForm ek = KForm::basis(dim, {k + 1});
      CHECK(max_abs_diff(g.ce_differential(ek), g.differential(k)) < 1e-12);
    }
  }
}

TEST_CASE("differential is a graded derivation with d^2 = 0") {
  std::mt19937_64 rng(47);
  for (int trial = 0; trial < 8; ++trial) {
    int dim = 4 + (trial % 3);
    LieAlgebra g = support::random_algebra(rng, dim);
    for (int k = 1; k <= 2; ++k) {
      KForm a = support::random_form(rng, k, dim);
      KForm b = support::random_form(rng, 1, dim);
      KForm lhs = g.ce_differential(wedge(a, b));
      double sign = (k % 2 == 0) ? 1.0 : -1.0;
      KForm rhs = wedge(g.ce_differential(a), b) + sign * wedge(a, g.ce_differential(b));
      CHECK(max_abs_diff(lhs, rhs) < 1e-12);
      CHECK(g.ce_differential(g.ce_differential(a)).max_abs() < 1e-12);
    }
  }
}

TEST_CASE("reference structure forms are closed") {
  LieAlgebra g = support::reference_algebra();
  CHECK(g.ce_differential(support::reference_alpha()).max_abs() < 1e-15);
  CHECK(g.ce_differential(support::reference_omega()).max_abs() < 1e-15);
}

TEST_CASE("validate rejects structure equations violating jacobi") {
  // de^1 = e^12, de^2 = e^13 gives d(de^2) = e^123 != 0
  std::vector<KForm> diff(3, KForm(2, 3));
  diff[0].set({1, 2}, 1.0);
  diff[1].set({1, 3}, 1.0);
  LieAlgebra bad(3, std::move(diff));
  ValidationReport report = validate(bad);
  CHECK_FALSE(report.passed);
  CHECK(report.max_d_squared == doctest::Approx(1.0));
}

TEST_CASE("change of basis transports brackets and differentials") {
  std::mt19937_64 rng(53);
  for (int trial = 0; trial < 6; ++trial) {
    int dim = 3 + (trial % 4);
    LieAlgebra g = support::random_algebra(rng, dim);
    Eigen::MatrixXd t = support::random_basis_change(rng, dim);
    LieAlgebra h = g.change_basis(t);
    CHECK(validate(h).passed);

    // [x, y]_new = T^{-1} [T x, T y]_old
    std::uniform_real_distribution<double> unit(-1.0, 1.0);
    Eigen::VectorXd x(dim), y(dim);
    for (int i = 0; i < dim; ++i) {
      x(i) = unit(rng);
      y(i) = unit(rng);
    }
    Eigen::VectorXd lhs = h.bracket(x, y);
    Eigen::VectorXd rhs = t.inverse() * g.bracket(t * x, t * y);
    CHECK((lhs - rhs).norm() < 1e-10);

    // d commutes with pullback
    KForm a = support::random_form(rng, 1, dim);
    CHECK(max_abs_diff(h.ce_differential(pullback(a, t)),
                       pullback(g.ce_differential(a), t)) < 1e-10);

    // unimodularity is basis independent
    CHECK(g.is_unimodular() == h.is_unimodular());
  }
}

TEST_CASE("abelian algebra has vanishing everything") {
  LieAlgebra g = LieAlgebra::abelian(4);
  CHECK(g.is_unimodular());
  CHECK(g.ad_traces().norm() == 0.0);
  std::mt19937_64 rng(59);
  KForm a = support::random_form(rng, 2, 4);
  CHECK(g.ce_differential(a).max_abs() == 0.0);
  Eigen::VectorXd x = Eigen::VectorXd::Random(4), y = Eigen::VectorXd::Random(4);
  CHECK(g.bracket(x, y).norm() == 0.0);
}

TEST_CASE("differential list must match the dimension") {
  std::vector<KForm> wrong_count(3, KForm(2, 4));
  CHECK_THROWS_AS(LieAlgebra(4, std::move(wrong_count)), Error);
  std::vector<KForm> wrong_degree(3, KForm(1, 3));
  CHECK_THROWS_AS(LieAlgebra(3, std::move(wrong_degree)), Error);
}
