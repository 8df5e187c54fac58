#pragma once

#include <cstdint>
#include <initializer_list>
#include <map>
#include <span>
#include <vector>

#include <Eigen/Dense>

#include "liegeo/metric.hpp"

namespace liegeo {

/// Orientation of the ordered coframe e^1 ^ ... ^ e^n; +1 by default.
struct Orientation {
  int sign = +1;
};

/// Invariant k-form stored on strictly increasing index tuples, encoded as
/// bitmasks (bit i-1 set means index i participates). Zero coefficients may
/// be stored or omitted; all queries treat missing entries as zero.
class KForm {
public:
  /// Zero 0-form on a 1-dimensional space; placeholder for late-filled fields.
  KForm() : degree_(0), dimension_(1) {}
  KForm(int degree, int dimension);

  static KForm scalar(int dimension, double value);
  /// Basis monomial e^{i1...ik} with strictly increasing 1-based indices.
  static KForm basis(int dimension, std::initializer_list<int> indices);

  int degree() const { return degree_; }
  int dimension() const { return dimension_; }

  double coefficient(std::uint32_t mask) const;
  double coefficient(std::span<const int> indices) const;
  KForm& set(std::uint32_t mask, double value);
  KForm& set(std::initializer_list<int> indices, double value);
  KForm& add(std::uint32_t mask, double value);

  /// Value on basis vectors in any order (1-based indices), with the sign of
  /// the sorting permutation applied; zero when an index repeats.
  double component(std::span<const int> indices) const;

  const std::map<std::uint32_t, double>& terms() const { return terms_; }

  KForm& operator+=(const KForm& other);
  KForm& operator-=(const KForm& other);
  KForm& operator*=(double scale);

  double max_abs() const;
  bool near_zero(double tol) const { return max_abs() <= tol; }
  /// Copy with entries of magnitude <= tol removed.
  KForm pruned(double tol = 0.0) const;

private:
  void check_mask(std::uint32_t mask) const;
  int degree_;
  int dimension_;
  std::map<std::uint32_t, double> terms_;
};

KForm operator+(KForm a, const KForm& b);
KForm operator-(KForm a, const KForm& b);
KForm operator*(double scale, KForm a);
KForm operator*(KForm a, double scale);
KForm operator-(KForm a);

bool approx_equal(const KForm& a, const KForm& b, double tol = 1e-9);
double max_abs_diff(const KForm& a, const KForm& b);

/// All strictly increasing index tuples of the given degree, as masks, in a
/// fixed canonical order (lexicographic on tuples). This order indexes the
/// coefficient vectors used by the operator-valued routines.
std::vector<std::uint32_t> basis_masks(int dimension, int degree);

/// Sign of e^A ^ e^B relative to the increasing merge; 0 when A and B overlap.
int wedge_sign(std::uint32_t a, std::uint32_t b);

std::vector<int> mask_to_indices(std::uint32_t mask);
std::uint32_t indices_to_mask(std::span<const int> indices, int dimension);

KForm wedge(const KForm& a, const KForm& b);

/// Interior product v ⌟ a (contraction in the first slot).
KForm interior(const Eigen::VectorXd& v, const KForm& a);

/// Inner product of two k-forms with the determinant normalization:
/// <e^{i1..ik}, e^{j1..jk}> = det(g^{-1}[I,J]), so an orthonormal coframe's
/// increasing monomials are orthonormal.
double form_inner(const KForm& a, const KForm& b, const Metric& metric);

/// Fast path of form_inner for an orthonormal coframe (identity metric).
double frame_form_inner(const KForm& a, const KForm& b);

KForm volume_form(const Metric& metric, Orientation orientation = {});

/// Hodge star fixed by a ^ (*b) = <a,b> vol.
KForm hodge_star(const KForm& a, const Metric& metric, Orientation orientation = {});

/// Components of a in the basis b_i = m.col(i):
/// pullback(a, m)(v1,...,vk) = a(m v1, ..., m vk).
KForm pullback(const KForm& a, const Eigen::MatrixXd& m);

}  // namespace liegeo
