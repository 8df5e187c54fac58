#pragma once

#include <cstdint>
#include <optional>
#include <random>
#include <vector>

#include <Eigen/Dense>

#include "liegeo/almost_contact.hpp"
#include "liegeo/riemannian.hpp"

namespace liegeo {

enum class FamilyKind {
  Diagonal,        // g = diag(exp p_1, ..., exp p_n)
  FullTriangular,  // g = L^T L, L upper triangular, diag L = exp(p), off-diag free
};

/// Smooth parameterization of a family of positive-definite metrics. Every
/// parameter vector maps to a positive-definite metric; normalize() fixes the
/// det = 1 gauge by shifting the log-diagonal entries.
class MetricParameterization {
public:
  MetricParameterization(FamilyKind kind, int dimension);

  FamilyKind kind() const { return kind_; }
  int dimension() const { return dimension_; }
  int parameter_count() const;

  Metric to_metric(const Eigen::VectorXd& params) const;
  Eigen::VectorXd identity_params() const;
  Eigen::VectorXd normalize(const Eigen::VectorXd& params) const;

  /// Identity perturbed entry-wise by the given relative amount (diagonal
  /// entries within [1-rel, 1+rel], triangular off-diagonals within ±rel).
  Eigen::VectorXd random_start(std::mt19937_64& rng, double rel = 0.1) const;

private:
  FamilyKind kind_;
  int dimension_;
};

/// Squared Frobenius deviation |ric - (s/n) g|^2 in the orthonormal frame.
double einstein_residual(const LieAlgebra& algebra, const Metric& metric);

struct SearchConfig {
  int max_iterations = 2000;
  double fd_relative_step = 1e-6;
  double armijo_c = 1e-4;
  double backtrack_factor = 0.5;
  int max_backtracks = 60;
  double residual_tol = 1e-10;
  double gradient_tol = 1e-8;
  std::uint64_t seed = 0;
  int starts = 8;
  double start_spread = 0.1;
};

enum class SearchStatus { ConvergedResidual, ConvergedGradient, MaxIterations, Stalled };

std::string to_string(SearchStatus status);

struct SearchResult {
  Eigen::VectorXd params;
  Metric metric;                // det-normalized
  double residual = 0.0;
  int iterations = 0;
  SearchStatus status = SearchStatus::MaxIterations;
  std::vector<double> trace;    // residual after each accepted step
};

/// Projected gradient descent (central finite differences, Armijo
/// backtracking) on the det = 1 slice of the family. A supplied initial point
/// overrides the randomized start.
SearchResult minimize(const LieAlgebra& algebra, const MetricParameterization& family,
                      const SearchConfig& config,
                      std::optional<Eigen::VectorXd> initial = std::nullopt);

/// Independent restarts from randomized starts; results in run order.
std::vector<SearchResult> multi_start(const LieAlgebra& algebra,
                                      const MetricParameterization& family,
                                      const SearchConfig& config);

/// Full verification bundle for a candidate metric: Einstein deviation plus,
/// when contact data is supplied, the classification and bound reports.
struct CandidateReport {
  std::optional<double> tau;
  double einstein_deviation = 0.0;
  double residual = 0.0;
  Eigen::VectorXd ad_traces;
  bool unimodular = false;
  int parallel_one_forms = 0;
  int parallel_two_forms = 0;
  std::optional<ContactCurvatureReport> contact;
  std::optional<KillingReport> reeb_killing;
};

CandidateReport verify_candidate(const LieAlgebra& algebra, const Metric& metric,
                                 double tol = 1e-9,
                                 const std::optional<KForm>& alpha = std::nullopt,
                                 const std::optional<KForm>& omega = std::nullopt);

}  // namespace liegeo
