#include "liegeo/exterior.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <string>

namespace liegeo {

namespace {

int popcount(std::uint32_t mask) { return std::popcount(mask); }

void check_same_shape(const KForm& a, const KForm& b, const char* op) {
  if (a.degree() != b.degree() || a.dimension() != b.dimension()) {
    throw Error(std::string(op) + ": degree/dimension mismatch");
  }
}

Eigen::MatrixXd minor_matrix(const Eigen::MatrixXd& m, const std::vector<int>& rows,
                             const std::vector<int>& cols) {
  Eigen::MatrixXd sub(rows.size(), cols.size());
  for (std::size_t r = 0; r < rows.size(); ++r) {
    for (std::size_t c = 0; c < cols.size(); ++c) {
      sub(r, c) = m(rows[r] - 1, cols[c] - 1);
    }
  }
  return sub;
}

double minor_det(const Eigen::MatrixXd& m, const std::vector<int>& rows,
                 const std::vector<int>& cols) {
  if (rows.empty()) return 1.0;
  if (rows.size() == 1) return m(rows[0] - 1, cols[0] - 1);
  if (rows.size() == 2) {
    return m(rows[0] - 1, cols[0] - 1) * m(rows[1] - 1, cols[1] - 1) -
           m(rows[0] - 1, cols[1] - 1) * m(rows[1] - 1, cols[0] - 1);
  }
  return minor_matrix(m, rows, cols).determinant();
}

void require_positive_definite(const Metric& metric, const char* op) {
  if (!metric.positive_definite()) {
    throw Error(std::string(op) + ": metric is not positive definite");
  }
}

}  // namespace

KForm::KForm(int degree, int dimension) : degree_(degree), dimension_(dimension) {
  if (degree < 0 || dimension < 1 || dimension > 32) {
    throw Error("KForm: degree must be >= 0 and dimension in 1..32");
  }
}

KForm KForm::scalar(int dimension, double value) {
  KForm f(0, dimension);
  f.set(static_cast<std::uint32_t>(0), value);
  return f;
}

KForm KForm::basis(int dimension, std::initializer_list<int> indices) {
  std::vector<int> idx(indices);
  KForm f(static_cast<int>(idx.size()), dimension);
  f.set(indices_to_mask(idx, dimension), 1.0);
  return f;
}

void KForm::check_mask(std::uint32_t mask) const {
  if (popcount(mask) != degree_) {
    throw Error("KForm: index tuple size does not match the degree");
  }
  if (dimension_ < 32 && (mask >> dimension_) != 0) {
    throw Error("KForm: index out of range");
  }
}

double KForm::coefficient(std::uint32_t mask) const {
  check_mask(mask);
  auto it = terms_.find(mask);
  return it == terms_.end() ? 0.0 : it->second;
}

double KForm::coefficient(std::span<const int> indices) const {
  return coefficient(indices_to_mask(indices, dimension_));
}

KForm& KForm::set(std::uint32_t mask, double value) {
  check_mask(mask);
  terms_[mask] = value;
  return *this;
}

KForm& KForm::set(std::initializer_list<int> indices, double value) {
  std::vector<int> idx(indices);
  return set(indices_to_mask(idx, dimension_), value);
}

KForm& KForm::add(std::uint32_t mask, double value) {
  check_mask(mask);
  terms_[mask] += value;
  return *this;
}

double KForm::component(std::span<const int> indices) const {
  if (static_cast<int>(indices.size()) != degree_) {
    throw Error("KForm: argument count does not match the degree");
  }
  std::vector<int> idx(indices.begin(), indices.end());
  int sign = 1;
  for (std::size_t i = 1; i < idx.size(); ++i) {
    int value = idx[i];
    std::size_t j = i;
    while (j > 0 && idx[j - 1] > value) {
      idx[j] = idx[j - 1];
      sign = -sign;
      --j;
    }
    idx[j] = value;
  }
  for (std::size_t i = 1; i < idx.size(); ++i) {
    if (idx[i] == idx[i - 1]) return 0.0;
  }
  std::uint32_t mask = indices_to_mask(idx, dimension_);
  auto it = terms_.find(mask);
  return it == terms_.end() ? 0.0 : sign * it->second;
}

KForm& KForm::operator+=(const KForm& other) {
  check_same_shape(*this, other, "operator+");
  for (const auto& [mask, value] : other.terms_) terms_[mask] += value;
  return *this;
}

KForm& KForm::operator-=(const KForm& other) {
  check_same_shape(*this, other, "operator-");
  for (const auto& [mask, value] : other.terms_) terms_[mask] -= value;
  return *this;
}

KForm& KForm::operator*=(double scale) {
  for (auto& [mask, value] : terms_) value *= scale;
  return *this;
}

double KForm::max_abs() const {
  double best = 0.0;
  for (const auto& [mask, value] : terms_) best = std::max(best, std::abs(value));
  return best;
}

KForm KForm::pruned(double tol) const {
  KForm out(degree_, dimension_);
  for (const auto& [mask, value] : terms_) {
    if (std::abs(value) > tol) out.terms_[mask] = value;
  }
  return out;
}

KForm operator+(KForm a, const KForm& b) { return a += b; }
KForm operator-(KForm a, const KForm& b) { return a -= b; }
KForm operator*(double scale, KForm a) { return a *= scale; }
KForm operator*(KForm a, double scale) { return a *= scale; }
KForm operator-(KForm a) { return a *= -1.0; }

bool approx_equal(const KForm& a, const KForm& b, double tol) {
  return max_abs_diff(a, b) <= tol;
}

double max_abs_diff(const KForm& a, const KForm& b) {
  check_same_shape(a, b, "max_abs_diff");
  double best = 0.0;
  for (const auto& [mask, value] : a.terms()) {
    best = std::max(best, std::abs(value - b.coefficient(mask)));
  }
  for (const auto& [mask, value] : b.terms()) {
    best = std::max(best, std::abs(value - a.coefficient(mask)));
  }
  return best;
}

std::vector<std::uint32_t> basis_masks(int dimension, int degree) {
  std::vector<std::uint32_t> out;
  if (degree < 0 || degree > dimension) return out;
  std::vector<int> idx(degree);
  for (int i = 0; i < degree; ++i) idx[i] = i + 1;
  while (true) {
    std::uint32_t mask = 0;
    for (int v : idx) mask |= 1u << (v - 1);
    out.push_back(mask);
    int pos = degree - 1;
    while (pos >= 0 && idx[pos] == dimension - (degree - 1 - pos)) --pos;
    if (pos < 0) break;
    ++idx[pos];
    for (int q = pos + 1; q < degree; ++q) idx[q] = idx[q - 1] + 1;
  }
  if (degree == 0) out = {0u};
  return out;
}

int wedge_sign(std::uint32_t a, std::uint32_t b) {
  if ((a & b) != 0) return 0;
  int inversions = 0;
  std::uint32_t rest = b;
  while (rest != 0) {
    int j = std::countr_zero(rest);
    inversions += popcount(a >> (j + 1));
    rest &= rest - 1;
  }
  return (inversions % 2 == 0) ? 1 : -1;
}

std::vector<int> mask_to_indices(std::uint32_t mask) {
  std::vector<int> out;
  while (mask != 0) {
    int j = std::countr_zero(mask);
    out.push_back(j + 1);
    mask &= mask - 1;
  }
  return out;
}

std::uint32_t indices_to_mask(std::span<const int> indices, int dimension) {
  std::uint32_t mask = 0;
  int previous = 0;
  for (int v : indices) {
    if (v <= previous) throw Error("index tuple must be strictly increasing");
    if (v < 1 || v > dimension) throw Error("index out of range");
    mask |= 1u << (v - 1);
    previous = v;
  }
  return mask;
}

KForm wedge(const KForm& a, const KForm& b) {
  if (a.dimension() != b.dimension()) throw Error("wedge: dimension mismatch");
  KForm out(a.degree() + b.degree(), a.dimension());
  for (const auto& [ma, va] : a.terms()) {
    if (va == 0.0) continue;
    for (const auto& [mb, vb] : b.terms()) {
      int sign = wedge_sign(ma, mb);
      if (sign == 0 || vb == 0.0) continue;
      out.add(ma | mb, sign * va * vb);
    }
  }
  return out;
}

KForm interior(const Eigen::VectorXd& v, const KForm& a) {
  if (v.size() != a.dimension()) throw Error("interior: dimension mismatch");
  if (a.degree() < 1) throw Error("interior: degree must be at least 1");
  KForm out(a.degree() - 1, a.dimension());
  for (const auto& [mask, value] : a.terms()) {
    if (value == 0.0) continue;
    std::uint32_t rest = mask;
    int position = 0;
    while (rest != 0) {
      int j = std::countr_zero(rest);
      double coeff = v(j);
      if (coeff != 0.0) {
        double sign = (position % 2 == 0) ? 1.0 : -1.0;
        out.add(mask & ~(1u << j), sign * coeff * value);
      }
      rest &= rest - 1;
      ++position;
    }
  }
  return out;
}

double form_inner(const KForm& a, const KForm& b, const Metric& metric) {
  check_same_shape(a, b, "form_inner");
  if (a.dimension() != metric.dimension()) throw Error("form_inner: dimension mismatch");
  require_positive_definite(metric, "form_inner");
  const Eigen::MatrixXd& ginv = metric.inverse();
  double total = 0.0;
  for (const auto& [ma, va] : a.terms()) {
    if (va == 0.0) continue;
    std::vector<int> rows = mask_to_indices(ma);
    for (const auto& [mb, vb] : b.terms()) {
      if (vb == 0.0) continue;
      total += va * vb * minor_det(ginv, rows, mask_to_indices(mb));
    }
  }
  return total;
}

double frame_form_inner(const KForm& a, const KForm& b) {
  check_same_shape(a, b, "form_inner");
  double total = 0.0;
  for (const auto& [mask, value] : a.terms()) {
    if (value == 0.0) continue;
    total += value * b.coefficient(mask);
  }
  return total;
}

KForm volume_form(const Metric& metric, Orientation orientation) {
  require_positive_definite(metric, "volume_form");
  int n = metric.dimension();
  KForm vol(n, n);
  std::uint32_t top = (n == 32) ? ~0u : ((1u << n) - 1);
  vol.set(top, orientation.sign * std::sqrt(metric.determinant()));
  return vol;
}

KForm hodge_star(const KForm& a, const Metric& metric, Orientation orientation) {
  if (a.dimension() != metric.dimension()) throw Error("hodge_star: dimension mismatch");
  require_positive_definite(metric, "hodge_star");
  int n = a.dimension();
  int k = a.degree();
  if (k > n) throw Error("hodge_star: degree exceeds dimension");
  double scale = orientation.sign * std::sqrt(metric.determinant());
  const Eigen::MatrixXd& ginv = metric.inverse();
  std::uint32_t top = (n == 32) ? ~0u : ((1u << n) - 1);
  KForm out(n - k, n);
  for (std::uint32_t u : basis_masks(n, k)) {
    std::vector<int> rows = mask_to_indices(u);
    double ip = 0.0;
    for (const auto& [mb, vb] : a.terms()) {
      if (vb == 0.0) continue;
      ip += vb * minor_det(ginv, rows, mask_to_indices(mb));
    }
    if (ip == 0.0) continue;
    std::uint32_t complement = top & ~u;
    out.add(complement, wedge_sign(u, complement) * ip * scale);
  }
  return out;
}

KForm pullback(const KForm& a, const Eigen::MatrixXd& m) {
  int n = a.dimension();
  if (m.rows() != n || m.cols() != n) throw Error("pullback: matrix shape mismatch");
  int k = a.degree();
  KForm out(k, n);
  if (k > n) return out;
  for (std::uint32_t target : basis_masks(n, k)) {
    std::vector<int> cols = mask_to_indices(target);
    double value = 0.0;
    for (const auto& [source, coeff] : a.terms()) {
      if (coeff == 0.0) continue;
      value += coeff * minor_det(m, mask_to_indices(source), cols);
    }
    if (value != 0.0) out.set(target, value);
  }
  return out;
}

}  // namespace liegeo
