#include "liegeo/report.hpp"

#include <cstdio>
#include <cstdlib>
#include <iomanip>
#include <sstream>

#include <json.hpp>

namespace liegeo {

namespace {

using ordered_json = nlohmann::ordered_json;

std::string status_name(RatioBounds::Status status) {
  switch (status) {
    case RatioBounds::Status::TauNegative: return "tau-negative";
    case RatioBounds::Status::TauZero: return "tau-zero";
    case RatioBounds::Status::TauPositive: return "tau-positive";
  }
  return "unknown";
}

ordered_json vector_json(const Eigen::VectorXd& v) {
  ordered_json out = ordered_json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) out.push_back(round12(v(i)));
  return out;
}

ordered_json matrix_json(const Eigen::MatrixXd& m) {
  ordered_json out = ordered_json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    ordered_json row = ordered_json::array();
    for (Eigen::Index j = 0; j < m.cols(); ++j) row.push_back(round12(m(i, j)));
    out.push_back(std::move(row));
  }
  return out;
}

ordered_json form_json(const KForm& a) {
  ordered_json out = ordered_json::array();
  for (const auto& [mask, value] : a.terms()) {
    if (value == 0.0) continue;
    ordered_json entry;
    entry["monomial"] = mask_to_indices(mask);
    entry["value"] = round12(value);
    out.push_back(std::move(entry));
  }
  return out;
}

ordered_json bounds_json(const RatioBounds& bounds) {
  ordered_json out;
  out["status"] = status_name(bounds.status);
  out["ratio"] = round12(bounds.ratio);
  out["lower"] = round12(bounds.lower);
  if (bounds.upper) out["upper"] = round12(*bounds.upper);
  out["upper_real"] = bounds.upper_real;
  out["in_interval"] = bounds.in_interval;
  if (!bounds.note.empty()) out["note"] = bounds.note;
  return out;
}

ordered_json contact_json(const ContactCurvatureReport& contact) {
  ordered_json out;
  out["classification"] = to_string(contact.classification);
  if (contact.tau) out["tau"] = round12(*contact.tau);
  out["tau_star"] = round12(contact.star.tau_star);
  out["rho_star"] = form_json(contact.star.rho_star);
  out["rho_star_antisymmetry_defect"] = round12(contact.star.antisymmetry_defect);
  out["grad_alpha_sq"] = round12(contact.grad_alpha_sq);
  out["grad_omega_sq"] = round12(contact.grad_omega_sq);
  if (contact.ratio) out["ratio"] = round12(*contact.ratio);
  if (contact.norms) {
    ordered_json norms;
    norms["minus_tau"] = round12(contact.norms->minus_tau);
    norms["grad_alpha_sq"] = round12(contact.norms->grad_alpha_sq);
    norms["two_n_gap"] = round12(contact.norms->two_n_gap);
    norms["grad_omega_sq"] = round12(contact.norms->grad_omega_sq);
    norms["equalities_hold"] = contact.norms->equalities_hold;
    norms["inequalities_hold"] = contact.norms->inequalities_hold;
    out["norm_identities"] = std::move(norms);
  }
  if (contact.bounds) out["ratio_interval"] = bounds_json(*contact.bounds);
  return out;
}

ordered_json product_json(const ProductSummary& product) {
  ordered_json out;
  out["kind"] = product.kind;
  out["dimension"] = product.dimension;
  out["s"] = round12(product.s);
  out["s_star"] = round12(product.s_star);
  out["grad_omega_sq"] = round12(product.grad_omega_sq);
  out["scalar_gap_residual"] = round12(product.scalar_gap_residual);
  out["phi_pairing_residual"] = round12(product.phi_pairing_residual);
  out["j_invariance_defect"] = round12(product.j_invariance_defect);
  out["rtilde_omega_defect"] = round12(product.rtilde_omega_defect);
  out["r_prime_norm_sq"] = round12(product.r_prime_norm_sq);
  out["r_second_norm_sq"] = round12(product.r_second_norm_sq);
  if (product.circle) {
    ordered_json circle;
    circle["tau"] = round12(product.circle->tau);
    circle["ric_second_residual"] = round12(product.circle->ric_second_residual);
    circle["rho_h_residual"] = round12(product.circle->rho_h_residual);
    circle["phi_xi_max"] = round12(product.circle->phi_xi_max);
    circle["grad_split_residual"] = round12(product.circle->grad_split_residual);
    circle["s_relation_residual"] = round12(product.circle->s_relation_residual);
    circle["r_second_lower_bound"] = round12(product.circle->r_second_lower_bound);
    circle["r_second_bound_holds"] = product.circle->r_second_bound_holds;
    out["circle_checks"] = std::move(circle);
  }
  return out;
}

ordered_json search_json(const SearchSummary& search) {
  ordered_json out;
  out["family"] = search.family;
  out["starts"] = search.starts;
  ordered_json runs = ordered_json::array();
  for (const SearchResult& run : search.runs) {
    ordered_json entry;
    entry["residual"] = round12(run.residual);
    entry["iterations"] = run.iterations;
    entry["status"] = to_string(run.status);
    runs.push_back(std::move(entry));
  }
  out["runs"] = std::move(runs);
  out["best_index"] = search.best_index;
  if (search.best_index >= 0) {
    out["best_residual"] = round12(search.runs[search.best_index].residual);
    out["best_metric"] = matrix_json(search.best_metric);
  }
  if (search.best_verified) {
    ordered_json verified;
    if (search.best_verified->tau) verified["tau"] = round12(*search.best_verified->tau);
    verified["einstein_deviation"] = round12(search.best_verified->einstein_deviation);
    verified["residual"] = round12(search.best_verified->residual);
    verified["unimodular"] = search.best_verified->unimodular;
    out["best_verified"] = std::move(verified);
  }
  return out;
}

void print_form(std::ostream& out, const KForm& a) {
  bool first = true;
  for (const auto& [mask, value] : a.terms()) {
    if (value == 0.0) continue;
    if (!first) out << " + ";
    first = false;
    out << round12(value) << "*e^{";
    for (int index : mask_to_indices(mask)) out << index;
    out << "}";
  }
  if (first) out << "0";
}

}  // namespace

double round12(double value) {
  char buffer[64];
  std::snprintf(buffer, sizeof buffer, "%.12g", value);
  return std::strtod(buffer, nullptr);
}

ProductSummary summarize_product(const AlmostHermitianStructure& structure,
                                 const std::string& kind, double tol) {
  ConnectionData conn = levi_civita(structure.algebra, structure.metric);
  CurvatureData curv = curvature(conn);
  AlmostKahlerAnalysis analysis = analyze(structure, conn, curv);
  ProductSummary out;
  out.kind = kind;
  out.dimension = structure.algebra.dimension();
  out.s = analysis.s;
  out.s_star = analysis.s_star;
  out.grad_omega_sq = analysis.grad_omega_sq;
  out.scalar_gap_residual = analysis.scalar_gap_residual;
  out.phi_pairing_residual = analysis.phi_pairing_residual;
  out.j_invariance_defect = analysis.j_invariance_defect;
  out.rtilde_omega_defect = analysis.rtilde_omega_defect;
  out.r_prime_norm_sq = analysis.r_prime_norm_sq;
  out.r_second_norm_sq = analysis.r_second_norm_sq;
  if (std::holds_alternative<CircleProductData>(structure.origin)) {
    out.circle = circle_product_checks(structure, conn, curv, analysis);
  }
  (void)tol;
  return out;
}

Report validate_report(const LoadedDocument& doc, double tol) {
  Report report;
  report.name = doc.document.name;
  report.dimension = doc.algebra.dimension();
  report.tolerance = tol;
  report.validation = validate(doc.algebra, tol);
  report.ad_traces = doc.algebra.ad_traces();
  report.unimodular = doc.algebra.is_unimodular(tol);
  return report;
}

Report analyze_document(const LoadedDocument& doc, double tol) {
  Report report = validate_report(doc, tol);
  ConnectionData conn = levi_civita(doc.algebra, doc.metric);
  CurvatureData curv = curvature(conn);
  report.scalar = curv.scalar;
  report.einstein_deviation = curv.einstein_deviation;
  report.tau = einstein_check(curv, tol);
  report.parallel_one_forms = static_cast<int>(parallel_forms(conn, 1).size());
  report.parallel_two_forms = static_cast<int>(parallel_forms(conn, 2).size());
  if (doc.alpha && doc.omega) {
    AlmostContactStructure s =
        build_structure(doc.algebra, doc.metric, *doc.alpha, *doc.omega, tol);
    report.classification = to_string(classify(s, conn, tol));
    report.contact = contact_report(s, conn, curv, tol);
    if (report.tau) {
      report.laplacian_identities = rough_laplacian_identities(s, conn, curv, tol);
    }
    report.weitzenboeck_alpha = weitzenboeck_residual(conn, curv, conn.to_frame(*doc.alpha));
    report.weitzenboeck_omega = weitzenboeck_residual(conn, curv, conn.to_frame(*doc.omega));
    report.reeb_killing = killing_check(conn, s.xi, tol);
    report.products.push_back(
        summarize_product(product_with_circle(s, tol), "circle", tol));
    report.products.push_back(summarize_product(product_double(s, s, tol), "double", tol));
  }
  return report;
}

Report classify_report(const LoadedDocument& doc, double tol) {
  Report report = validate_report(doc, tol);
  if (!doc.alpha || !doc.omega) {
    throw Error("classify: the document carries no alpha/omega pair");
  }
  ConnectionData conn = levi_civita(doc.algebra, doc.metric);
  AlmostContactStructure s =
      build_structure(doc.algebra, doc.metric, *doc.alpha, *doc.omega, tol);
  report.classification = to_string(classify(s, conn, tol));
  return report;
}

Report verify_report(const LoadedDocument& doc, double tol) {
  Report report = validate_report(doc, tol);
  CandidateReport candidate =
      verify_candidate(doc.algebra, doc.metric, tol, doc.alpha, doc.omega);
  report.tau = candidate.tau;
  report.einstein_deviation = candidate.einstein_deviation;
  report.parallel_one_forms = candidate.parallel_one_forms;
  report.parallel_two_forms = candidate.parallel_two_forms;
  if (candidate.contact) {
    report.classification = to_string(candidate.contact->classification);
    report.contact = candidate.contact;
    report.reeb_killing = candidate.reeb_killing;
  }
  return report;
}

Report product_report(const LoadedDocument& doc, double tol, bool with_circle) {
  Report report = validate_report(doc, tol);
  if (!doc.alpha || !doc.omega) {
    throw Error("product: the document carries no alpha/omega pair");
  }
  AlmostContactStructure s =
      build_structure(doc.algebra, doc.metric, *doc.alpha, *doc.omega, tol);
  if (with_circle) {
    report.products.push_back(
        summarize_product(product_with_circle(s, tol), "circle", tol));
  } else {
    report.products.push_back(summarize_product(product_double(s, s, tol), "double", tol));
  }
  return report;
}

Report search_report(const LoadedDocument& doc, double tol, FamilyKind family,
                     int starts, std::uint64_t seed) {
  Report report = validate_report(doc, tol);
  MetricParameterization parameterization(family, doc.algebra.dimension());
  SearchConfig config;
  config.starts = starts;
  config.seed = seed;
  SearchSummary summary;
  summary.family = family == FamilyKind::Diagonal ? "diag" : "full";
  summary.starts = starts;
  summary.runs = multi_start(doc.algebra, parameterization, config);
  for (std::size_t i = 0; i < summary.runs.size(); ++i) {
    if (summary.best_index < 0 ||
        summary.runs[i].residual < summary.runs[summary.best_index].residual) {
      summary.best_index = static_cast<int>(i);
    }
  }
  if (summary.best_index >= 0) {
    const SearchResult& best = summary.runs[summary.best_index];
    summary.best_metric = best.metric.matrix();
    summary.best_verified =
        verify_candidate(doc.algebra, best.metric, tol, doc.alpha, doc.omega);
  }
  report.search = std::move(summary);
  return report;
}

void print_text(const Report& report, std::ostream& out) {
  out << "name: " << report.name << "\n";
  out << "dimension: " << report.dimension << "\n";
  out << "tolerance: " << report.tolerance << "\n";
  out << "conventions: de^k(e_i,e_j) = -c^k_ij; ric(X,Y) = sum_i <R(f_i,X)Y, f_i>; "
         "orientation e^1..e^n = +1; Rt(Omega) = -rho*_h on 2-forms\n";
  out << "validation: " << (report.validation.passed ? "passed" : "FAILED")
      << " (max |d(d e^k)| = " << round12(report.validation.max_d_squared) << ")\n";
  if (report.ad_traces.size() > 0) {
    out << "ad traces:";
    for (Eigen::Index i = 0; i < report.ad_traces.size(); ++i) {
      out << " " << round12(report.ad_traces(i));
    }
    out << "\n";
  }
  out << "unimodular: " << (report.unimodular ? "yes" : "no") << "\n";
  if (report.scalar) out << "scalar curvature: " << round12(*report.scalar) << "\n";
  if (report.einstein_deviation) {
    out << "einstein deviation: " << round12(*report.einstein_deviation) << "\n";
  }
  if (report.tau) {
    out << "tau: " << round12(*report.tau) << " (Einstein)\n";
  } else if (report.einstein_deviation) {
    out << "tau: metric is not Einstein at this tolerance\n";
  }
  if (report.classification) out << "classification: " << *report.classification << "\n";
  if (report.contact) {
    const ContactCurvatureReport& contact = *report.contact;
    out << "tau_star: " << round12(contact.star.tau_star) << "\n";
    out << "rho_star: ";
    print_form(out, contact.star.rho_star);
    out << "\n";
    out << "|grad alpha|^2: " << round12(contact.grad_alpha_sq) << "\n";
    out << "|grad omega|^2: " << round12(contact.grad_omega_sq) << "\n";
    if (contact.ratio) {
      out << "ratio (tau - tau*)/tau: " << round12(*contact.ratio) << "\n";
    }
    if (contact.norms) {
      out << "norm identities: |grad alpha|^2 = " << round12(contact.norms->grad_alpha_sq)
          << " vs -tau = " << round12(contact.norms->minus_tau)
          << ", |grad omega|^2 = " << round12(contact.norms->grad_omega_sq)
          << " vs 2n(tau* - tau) = " << round12(contact.norms->two_n_gap) << " ("
          << (contact.norms->equalities_hold ? "hold" : "FAIL") << ")\n";
    }
    if (contact.bounds) {
      out << "ratio interval: [" << round12(contact.bounds->lower) << ", ";
      if (contact.bounds->upper) {
        out << round12(*contact.bounds->upper);
      } else {
        out << "n/a";
      }
      out << "] status " << status_name(contact.bounds->status) << " "
          << (contact.bounds->in_interval ? "inside" : "OUTSIDE") << "\n";
    }
  }
  if (report.laplacian_identities) {
    out << "rough laplacian identities: alpha residual "
        << round12(report.laplacian_identities->alpha_residual) << ", omega residual "
        << round12(report.laplacian_identities->omega_residual) << " ("
        << (report.laplacian_identities->passed ? "passed" : "FAILED") << ")\n";
  }
  if (report.weitzenboeck_alpha) {
    out << "weitzenboeck residual (alpha): " << round12(*report.weitzenboeck_alpha) << "\n";
  }
  if (report.weitzenboeck_omega) {
    out << "weitzenboeck residual (omega): " << round12(*report.weitzenboeck_omega) << "\n";
  }
  if (report.reeb_killing) {
    out << "reeb killing: |S|^2 = " << round12(report.reeb_killing->norm_sq) << " ("
        << (report.reeb_killing->killing ? "killing" : "not killing") << ")\n";
  }
  if (report.parallel_one_forms) {
    out << "parallel 1-forms: " << *report.parallel_one_forms << "\n";
  }
  if (report.parallel_two_forms) {
    out << "parallel 2-forms: " << *report.parallel_two_forms << "\n";
  }
  for (const ProductSummary& product : report.products) {
    out << "product (" << product.kind << ", dim " << product.dimension
        << "): s = " << round12(product.s) << ", s* = " << round12(product.s_star)
        << ", |grad Omega|^2 = " << round12(product.grad_omega_sq)
        << ", scalar gap residual = " << round12(product.scalar_gap_residual)
        << ", |R'|^2 = " << round12(product.r_prime_norm_sq)
        << ", |R''|^2 = " << round12(product.r_second_norm_sq) << "\n";
    if (product.circle) {
      out << "  circle checks: tau = " << round12(product.circle->tau)
          << ", ric'' residual = " << round12(product.circle->ric_second_residual)
          << ", rho_h residual = " << round12(product.circle->rho_h_residual)
          << ", |R''|^2 bound = " << round12(product.circle->r_second_lower_bound) << " ("
          << (product.circle->r_second_bound_holds ? "holds" : "FAILS") << ")\n";
    }
  }
  if (report.search) {
    const SearchSummary& search = *report.search;
    out << "search (" << search.family << ", " << search.starts << " starts):\n";
    for (std::size_t i = 0; i < search.runs.size(); ++i) {
      const SearchResult& run = search.runs[i];
      out << "  start " << i << ": residual " << round12(run.residual) << " after "
          << run.iterations << " iterations (" << to_string(run.status) << ")\n";
    }
    if (search.best_index >= 0) {
      out << "  best: start " << search.best_index << ", residual "
          << round12(search.runs[search.best_index].residual) << "\n";
      if (search.best_verified && search.best_verified->tau) {
        out << "  best tau: " << round12(*search.best_verified->tau) << "\n";
      }
    }
  }
}

std::string to_json_text(const Report& report) {
  ordered_json root;
  root["name"] = report.name;
  root["dimension"] = report.dimension;
  root["tolerance"] = round12(report.tolerance);
  ordered_json conventions;
  conventions["differential"] = "de^k(e_i,e_j) = -c^k_ij";
  conventions["ricci"] = "ric(X,Y) = sum_i <R(f_i,X)Y, f_i>";
  conventions["orientation"] = "e^1..e^n positive";
  conventions["curvature_operator"] = "Rt(Omega) = -rho*_h on 2-forms";
  root["conventions"] = std::move(conventions);
  ordered_json validation;
  validation["max_d_squared"] = round12(report.validation.max_d_squared);
  validation["tolerance"] = round12(report.validation.tolerance);
  validation["passed"] = report.validation.passed;
  root["validation"] = std::move(validation);
  if (report.ad_traces.size() > 0) root["ad_traces"] = vector_json(report.ad_traces);
  root["unimodular"] = report.unimodular;
  if (report.scalar) root["scalar"] = round12(*report.scalar);
  if (report.einstein_deviation) {
    root["einstein_deviation"] = round12(*report.einstein_deviation);
  }
  if (report.tau) root["tau"] = round12(*report.tau);
  if (report.classification) root["classification"] = *report.classification;
  if (report.contact) root["contact"] = contact_json(*report.contact);
  if (report.laplacian_identities) {
    ordered_json identities;
    identities["tau"] = round12(report.laplacian_identities->tau);
    identities["alpha_residual"] = round12(report.laplacian_identities->alpha_residual);
    identities["omega_residual"] = round12(report.laplacian_identities->omega_residual);
    identities["passed"] = report.laplacian_identities->passed;
    root["laplacian_identities"] = std::move(identities);
  }
  if (report.weitzenboeck_alpha) {
    root["weitzenboeck_alpha"] = round12(*report.weitzenboeck_alpha);
  }
  if (report.weitzenboeck_omega) {
    root["weitzenboeck_omega"] = round12(*report.weitzenboeck_omega);
  }
  if (report.reeb_killing) {
    ordered_json killing;
    killing["norm_sq"] = round12(report.reeb_killing->norm_sq);
    killing["killing"] = report.reeb_killing->killing;
    root["reeb_killing"] = std::move(killing);
  }
  if (report.parallel_one_forms) root["parallel_one_forms"] = *report.parallel_one_forms;
  if (report.parallel_two_forms) root["parallel_two_forms"] = *report.parallel_two_forms;
  if (!report.products.empty()) {
    ordered_json products = ordered_json::array();
    for (const ProductSummary& product : report.products) {
      products.push_back(product_json(product));
    }
    root["products"] = std::move(products);
  }
  if (report.search) root["search"] = search_json(*report.search);
  return root.dump(2) + "\n";
}

}  // namespace liegeo
