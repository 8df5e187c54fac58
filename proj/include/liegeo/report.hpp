#pragma once

#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "liegeo/almost_kahler.hpp"
#include "liegeo/document.hpp"
#include "liegeo/einstein_search.hpp"

namespace liegeo {

struct ProductSummary {
  std::string kind;  // "circle" or "double"
  int dimension = 0;
  double s = 0.0;
  double s_star = 0.0;
  double grad_omega_sq = 0.0;
  double scalar_gap_residual = 0.0;
  double phi_pairing_residual = 0.0;
  double j_invariance_defect = 0.0;
  double rtilde_omega_defect = 0.0;
  double r_prime_norm_sq = 0.0;
  double r_second_norm_sq = 0.0;
  std::optional<CircleProductChecks> circle;
};

struct SearchSummary {
  std::string family;
  int starts = 0;
  std::vector<SearchResult> runs;
  int best_index = -1;
  Eigen::MatrixXd best_metric;
  std::optional<CandidateReport> best_verified;
};

/// Everything a subcommand may report. Sections left empty are not emitted.
struct Report {
  std::string name;
  int dimension = 0;
  double tolerance = 0.0;
  ValidationReport validation;
  Eigen::VectorXd ad_traces;
  bool unimodular = false;
  std::optional<double> scalar;
  std::optional<double> tau;
  std::optional<double> einstein_deviation;
  std::optional<std::string> classification;
  std::optional<ContactCurvatureReport> contact;
  std::optional<RoughLaplacianIdentity> laplacian_identities;
  std::optional<double> weitzenboeck_alpha;
  std::optional<double> weitzenboeck_omega;
  std::optional<KillingReport> reeb_killing;
  std::optional<int> parallel_one_forms;
  std::optional<int> parallel_two_forms;
  std::vector<ProductSummary> products;
  std::optional<SearchSummary> search;
};

/// Full analysis pipeline on a loaded document: validation, curvature,
/// classification, identity residuals, bound checks, parallel forms and (when
/// contact data is present) both product summaries.
Report analyze_document(const LoadedDocument& doc, double tol);

/// Lighter bundles for the other subcommands.
Report validate_report(const LoadedDocument& doc, double tol);
Report classify_report(const LoadedDocument& doc, double tol);
Report verify_report(const LoadedDocument& doc, double tol);
Report product_report(const LoadedDocument& doc, double tol, bool with_circle);
Report search_report(const LoadedDocument& doc, double tol, FamilyKind family,
                     int starts, std::uint64_t seed);

ProductSummary summarize_product(const AlmostHermitianStructure& structure,
                                 const std::string& kind, double tol);

void print_text(const Report& report, std::ostream& out);
/// Stable key order, floats rounded to 12 significant digits.
std::string to_json_text(const Report& report);

/// Rounds through a 12-significant-digit decimal representation so that
/// repeated runs print identical bytes.
double round12(double value);

}  // namespace liegeo
