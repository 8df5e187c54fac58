#include "liegeo/einstein_search.hpp"

#include <algorithm>
#include <cmath>

namespace liegeo {

MetricParameterization::MetricParameterization(FamilyKind kind, int dimension)
    : kind_(kind), dimension_(dimension) {
  if (dimension < 1) throw Error("MetricParameterization: dimension must be positive");
}

int MetricParameterization::parameter_count() const {
  if (kind_ == FamilyKind::Diagonal) return dimension_;
  return dimension_ + dimension_ * (dimension_ - 1) / 2;
}

Metric MetricParameterization::to_metric(const Eigen::VectorXd& params) const {
  if (params.size() != parameter_count()) {
    throw Error("to_metric: wrong parameter count");
  }
  int n = dimension_;
  if (kind_ == FamilyKind::Diagonal) {
    return Metric(params.array().exp().matrix().asDiagonal());
  }
  Eigen::MatrixXd upper = Eigen::MatrixXd::Zero(n, n);
  int next = n;
  for (int i = 0; i < n; ++i) {
    upper(i, i) = std::exp(params(i));
    for (int j = i + 1; j < n; ++j) upper(i, j) = params(next++);
  }
  return Metric(upper.transpose() * upper);
}

Eigen::VectorXd MetricParameterization::identity_params() const {
  return Eigen::VectorXd::Zero(parameter_count());
}

Eigen::VectorXd MetricParameterization::normalize(const Eigen::VectorXd& params) const {
  Eigen::VectorXd out = params;
  double mean = out.head(dimension_).mean();
  out.head(dimension_).array() -= mean;
  return out;
}

Eigen::VectorXd MetricParameterization::random_start(std::mt19937_64& rng,
                                                     double rel) const {
  std::uniform_real_distribution<double> diagonal(1.0 - rel, 1.0 + rel);
  std::uniform_real_distribution<double> off(-rel, rel);
  Eigen::VectorXd params = identity_params();
  for (int i = 0; i < dimension_; ++i) params(i) = std::log(diagonal(rng));
  for (int i = dimension_; i < parameter_count(); ++i) params(i) = off(rng);
  return params;
}

double einstein_residual(const LieAlgebra& algebra, const Metric& metric) {
  ConnectionData conn = levi_civita(algebra, metric);
  CurvatureData curv = curvature(conn);
  int n = curv.dimension;
  Eigen::MatrixXd deviation =
      curv.ricci - (curv.scalar / n) * Eigen::MatrixXd::Identity(n, n);
  return deviation.squaredNorm();
}

std::string to_string(SearchStatus status) {
  switch (status) {
    case SearchStatus::ConvergedResidual: return "converged-residual";
    case SearchStatus::ConvergedGradient: return "converged-gradient";
    case SearchStatus::MaxIterations: return "max-iterations";
    case SearchStatus::Stalled: return "stalled";
  }
  return "unknown";
}

namespace {

double objective(const LieAlgebra& algebra, const MetricParameterization& family,
                 const Eigen::VectorXd& params) {
  return einstein_residual(algebra, family.to_metric(params));
}

Eigen::VectorXd projected_gradient(const LieAlgebra& algebra,
                                   const MetricParameterization& family,
                                   const Eigen::VectorXd& params, double fd_rel) {
  int count = family.parameter_count();
  Eigen::VectorXd grad(count);
  Eigen::VectorXd probe = params;
  for (int i = 0; i < count; ++i) {
    double h = fd_rel * (1.0 + std::abs(params(i)));
    probe(i) = params(i) + h;
    double up = objective(algebra, family, probe);
    probe(i) = params(i) - h;
    double down = objective(algebra, family, probe);
    probe(i) = params(i);
    grad(i) = (up - down) / (2.0 * h);
  }
  double mean = grad.head(family.dimension()).mean();
  grad.head(family.dimension()).array() -= mean;
  return grad;
}

}  // namespace

SearchResult minimize(const LieAlgebra& algebra, const MetricParameterization& family,
                      const SearchConfig& config,
                      std::optional<Eigen::VectorXd> initial) {
  Eigen::VectorXd params;
  if (initial) {
    params = *initial;
  } else {
    std::mt19937_64 rng(config.seed);
    params = family.random_start(rng, config.start_spread);
  }
  params = family.normalize(params);

  SearchResult result;
  result.status = SearchStatus::MaxIterations;
  double value = objective(algebra, family, params);
  result.trace.push_back(value);
  double last_step = 1.0;

  int iteration = 0;
  for (; iteration < config.max_iterations; ++iteration) {
    if (value <= config.residual_tol) {
      result.status = SearchStatus::ConvergedResidual;
      break;
    }
    Eigen::VectorXd grad =
        projected_gradient(algebra, family, params, config.fd_relative_step);
    double grad_norm = grad.norm();
    if (grad_norm <= config.gradient_tol) {
      result.status = SearchStatus::ConvergedGradient;
      break;
    }
    double step = std::min(1.0, 2.0 * last_step);
    double target_slope = config.armijo_c * grad.squaredNorm();
    bool accepted = false;
    for (int back = 0; back < config.max_backtracks; ++back) {
      Eigen::VectorXd trial = family.normalize(params - step * grad);
      double trial_value = objective(algebra, family, trial);
      if (trial_value <= value - step * target_slope) {
        params = trial;
        value = trial_value;
        last_step = step;
        accepted = true;
        break;
      }
      step *= config.backtrack_factor;
    }
    if (!accepted) {
      result.status = SearchStatus::Stalled;
      break;
    }
    result.trace.push_back(value);
  }
  if (result.status == SearchStatus::MaxIterations && value <= config.residual_tol) {
    result.status = SearchStatus::ConvergedResidual;
  }

  result.params = params;
  result.metric = family.to_metric(params);
  result.residual = value;
  result.iterations = iteration;
  return result;
}

std::vector<SearchResult> multi_start(const LieAlgebra& algebra,
                                      const MetricParameterization& family,
                                      const SearchConfig& config) {
  std::mt19937_64 rng(config.seed);
  std::vector<SearchResult> results;
  results.reserve(config.starts);
  for (int s = 0; s < config.starts; ++s) {
    Eigen::VectorXd start = family.random_start(rng, config.start_spread);
    results.push_back(minimize(algebra, family, config, start));
  }
  return results;
}

CandidateReport verify_candidate(const LieAlgebra& algebra, const Metric& metric,
                                 double tol, const std::optional<KForm>& alpha,
                                 const std::optional<KForm>& omega) {
  ConnectionData conn = levi_civita(algebra, metric);
  CurvatureData curv = curvature(conn);
  CandidateReport report;
  report.tau = einstein_check(curv, tol);
  report.einstein_deviation = curv.einstein_deviation;
  int n = curv.dimension;
  report.residual =
      (curv.ricci - (curv.scalar / n) * Eigen::MatrixXd::Identity(n, n)).squaredNorm();
  report.ad_traces = algebra.ad_traces();
  report.unimodular = algebra.is_unimodular(tol);
  report.parallel_one_forms = static_cast<int>(parallel_forms(conn, 1).size());
  report.parallel_two_forms = static_cast<int>(parallel_forms(conn, 2).size());
  if (alpha && omega) {
    try {
      AlmostContactStructure s = build_structure(algebra, metric, *alpha, *omega, tol);
      report.contact = contact_report(s, conn, curv, tol);
      report.reeb_killing = killing_check(conn, s.xi, tol);
    } catch (const BuildError&) {
      // candidate metric is not compatible with the supplied pair; the
      // contact section stays empty
    }
  }
  return report;
}

}  // namespace liegeo
