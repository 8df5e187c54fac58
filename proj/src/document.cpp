#include "liegeo/document.hpp"

#include <cctype>
#include <cmath>
#include <fstream>
#include <sstream>

#include <json.hpp>

namespace liegeo {

namespace {

using ordered_json = nlohmann::ordered_json;

struct CoefficientParser {
  const std::string& text;
  std::size_t pos = 0;

  [[noreturn]] void fail(const std::string& message) const {
    throw Error("coefficient \"" + text + "\": " + message + " at position " +
                std::to_string(pos));
  }

  void skip_space() {
    while (pos < text.size() && text[pos] == ' ') ++pos;
  }

  bool consume(char c) {
    skip_space();
    if (pos < text.size() && text[pos] == c) {
      ++pos;
      return true;
    }
    return false;
  }

  bool at_sqrt() {
    skip_space();
    return text.compare(pos, 5, "sqrt(") == 0;
  }

  double parse_uint() {
    skip_space();
    if (pos >= text.size() || !std::isdigit(static_cast<unsigned char>(text[pos]))) {
      fail("expected an unsigned integer");
    }
    double value = 0.0;
    while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos]))) {
      value = value * 10.0 + (text[pos] - '0');
      ++pos;
    }
    return value;
  }

  double parse_factor() {
    if (at_sqrt()) {
      pos += 5;
      double radicand = parse_uint();
      if (!consume(')')) fail("expected ')'");
      return std::sqrt(radicand);
    }
    return parse_uint();
  }

  double parse_term() {
    bool negative = consume('-');
    double value = parse_factor();
    while (true) {
      if (consume('*')) {
        value *= parse_factor();
      } else if (consume('/')) {
        std::size_t at = pos;
        double divisor = parse_factor();
        if (divisor == 0.0) {
          pos = at;
          fail("division by zero");
        }
        value /= divisor;
      } else if (at_sqrt()) {
        value *= parse_factor();
      } else {
        break;
      }
    }
    return negative ? -value : value;
  }

  double parse() {
    double value = parse_term();
    while (true) {
      if (consume('+')) {
        value += parse_term();
      } else if (consume('-')) {
        value -= parse_term();
      } else {
        break;
      }
    }
    skip_space();
    if (pos != text.size()) fail("unexpected character");
    return value;
  }
};

/// Structural pass: pulls one {coeff, monomial} term out of a JSON entry,
/// recording issues instead of throwing.
std::optional<MonomialTerm> read_term(const ordered_json& entry, int dimension,
                                      const std::string& where,
                                      std::vector<std::string>& issues) {
  if (!entry.is_object() || !entry.contains("coeff") || !entry.contains("monomial")) {
    issues.push_back(where + ": each term needs \"coeff\" and \"monomial\"");
    return std::nullopt;
  }
  if (!entry["coeff"].is_string()) {
    issues.push_back(where + ": coeff must be a string");
    return std::nullopt;
  }
  const ordered_json& monomial = entry["monomial"];
  if (!monomial.is_array() || monomial.size() != 2 ||
      !monomial[0].is_number_integer() || !monomial[1].is_number_integer()) {
    issues.push_back(where + ": monomial must be a pair of integers");
    return std::nullopt;
  }
  MonomialTerm term{entry["coeff"].get<std::string>(), monomial[0].get<int>(),
                    monomial[1].get<int>()};
  bool ok = true;
  if (term.i < 1 || term.i > dimension || term.j < 1 || term.j > dimension) {
    issues.push_back(where + ": index out of range in monomial [" +
                     std::to_string(term.i) + ", " + std::to_string(term.j) + "]");
    ok = false;
  }
  if (term.i == term.j) {
    issues.push_back(where + ": degenerate monomial [" + std::to_string(term.i) + ", " +
                     std::to_string(term.j) + "]");
    ok = false;
  } else if (term.i > term.j) {
    issues.push_back(where + ": non-antisymmetric monomial [" + std::to_string(term.i) +
                     ", " + std::to_string(term.j) + "] (indices must increase)");
    ok = false;
  }
  try {
    parse_coefficient(term.coeff);
  } catch (const Error& e) {
    issues.push_back(where + ": " + e.what());
    ok = false;
  }
  return ok ? std::optional<MonomialTerm>(term) : std::nullopt;
}

double evaluate_checked(const std::string& text, const std::string& where,
                        std::vector<std::string>& issues) {
  try {
    return parse_coefficient(text);
  } catch (const Error& e) {
    issues.push_back(where + ": " + e.what());
    return 0.0;
  }
}

}  // namespace

double parse_coefficient(const std::string& text) {
  CoefficientParser parser{text};
  return parser.parse();
}

LoadedDocument parse_document(const std::string& json_text, double tol) {
  std::vector<std::string> issues;
  ordered_json root;
  try {
    root = ordered_json::parse(json_text);
  } catch (const nlohmann::json::exception& e) {
    throw DocumentError({std::string("malformed syntax: ") + e.what()});
  }
  if (!root.is_object()) {
    throw DocumentError({"document root must be an object"});
  }

  AlgebraDocument doc;
  if (root.contains("name")) {
    if (root["name"].is_string()) {
      doc.name = root["name"].get<std::string>();
    } else {
      issues.push_back("name must be a string");
    }
  }

  if (!root.contains("dimension") || !root["dimension"].is_number_integer()) {
    issues.push_back("dimension must be an integer");
    throw DocumentError(issues);
  }
  int dim = root["dimension"].get<int>();
  if (dim < 1 || dim > 16) {
    issues.push_back("dimension must lie in 1..16");
    throw DocumentError(issues);
  }
  doc.dimension = dim;
  doc.differential.assign(dim, {});

  if (root.contains("differential")) {
    const ordered_json& differential = root["differential"];
    if (!differential.is_object()) {
      issues.push_back("differential must map \"e<k>\" to term lists");
    } else {
      for (const auto& [key, value] : differential.items()) {
        int k = 0;
        if (key.size() >= 2 && key[0] == 'e') {
          try {
            k = std::stoi(key.substr(1));
          } catch (...) {
            k = 0;
          }
        }
        if (k < 1 || k > dim) {
          issues.push_back("differential: unknown key \"" + key + "\"");
          continue;
        }
        if (!value.is_array()) {
          issues.push_back("differential " + key + ": must be a list of terms");
          continue;
        }
        for (const ordered_json& entry : value) {
          std::optional<MonomialTerm> term =
              read_term(entry, dim, "differential " + key, issues);
          if (term) doc.differential[k - 1].push_back(*term);
        }
      }
    }
  }

  if (root.contains("metric") && root["metric"].is_string()) {
    if (root["metric"].get<std::string>() == "identity") {
      doc.metric = IdentityMetricTag{};
    } else {
      issues.push_back("metric: the only string form is \"identity\"");
    }
  } else if (root.contains("metric")) {
    const ordered_json& metric = root["metric"];
    std::vector<std::vector<std::string>> rows;
    bool shape_ok = metric.is_array() && static_cast<int>(metric.size()) == dim;
    if (shape_ok) {
      for (const ordered_json& row : metric) {
        if (!row.is_array() || static_cast<int>(row.size()) != dim) {
          shape_ok = false;
          break;
        }
        std::vector<std::string> entries;
        for (const ordered_json& cell : row) {
          if (!cell.is_string()) {
            shape_ok = false;
            break;
          }
          entries.push_back(cell.get<std::string>());
        }
        rows.push_back(std::move(entries));
      }
    }
    if (!shape_ok) {
      issues.push_back("metric: must be \"identity\" or a " + std::to_string(dim) + "x" +
                       std::to_string(dim) + " matrix of coefficient strings");
    } else {
      doc.metric = std::move(rows);
    }
  } else {
    issues.push_back("metric is required");
  }

  if (root.contains("alpha")) {
    const ordered_json& alpha = root["alpha"];
    if (!alpha.is_array() || static_cast<int>(alpha.size()) != dim) {
      issues.push_back("alpha: must be a vector of " + std::to_string(dim) +
                       " coefficient strings");
    } else {
      std::vector<std::string> entries;
      bool ok = true;
      for (const ordered_json& cell : alpha) {
        if (!cell.is_string()) {
          issues.push_back("alpha: entries must be coefficient strings");
          ok = false;
          break;
        }
        entries.push_back(cell.get<std::string>());
      }
      if (ok) doc.alpha = std::move(entries);
    }
  }

  if (root.contains("omega")) {
    const ordered_json& omega = root["omega"];
    if (!omega.is_array()) {
      issues.push_back("omega: must be a list of terms");
    } else {
      std::vector<MonomialTerm> terms;
      for (const ordered_json& entry : omega) {
        std::optional<MonomialTerm> term = read_term(entry, dim, "omega", issues);
        if (term) terms.push_back(*term);
      }
      doc.omega = std::move(terms);
    }
  }

  if (root.contains("orientation")) {
    if (!root["orientation"].is_number_integer() ||
        (root["orientation"].get<int>() != 1 && root["orientation"].get<int>() != -1)) {
      issues.push_back("orientation: must be 1 or -1");
    } else {
      doc.orientation = root["orientation"].get<int>();
    }
  }

  if (!issues.empty()) throw DocumentError(issues);

  std::vector<KForm> differentials(dim, KForm(2, dim));
  for (int k = 0; k < dim; ++k) {
    for (const MonomialTerm& term : doc.differential[k]) {
      double value = evaluate_checked(term.coeff, "differential e" + std::to_string(k + 1),
                                      issues);
      differentials[k].add(indices_to_mask(std::vector<int>{term.i, term.j}, dim), value);
    }
  }

  Eigen::MatrixXd g = Eigen::MatrixXd::Identity(dim, dim);
  if (const auto* rows = std::get_if<std::vector<std::vector<std::string>>>(&doc.metric)) {
    for (int i = 0; i < dim; ++i) {
      for (int j = 0; j < dim; ++j) {
        g(i, j) = evaluate_checked((*rows)[i][j], "metric[" + std::to_string(i) + "][" +
                                                      std::to_string(j) + "]",
                                   issues);
      }
    }
    double scale = std::max(1.0, g.cwiseAbs().maxCoeff());
    if ((g - g.transpose()).cwiseAbs().maxCoeff() > 1e-12 * scale) {
      issues.push_back("metric is not symmetric");
    } else {
      Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(g);
      if (eig.eigenvalues().minCoeff() <= 0.0) {
        issues.push_back("metric is not positive definite");
      }
    }
  }

  std::optional<KForm> alpha;
  if (doc.alpha) {
    KForm form(1, dim);
    for (int i = 0; i < dim; ++i) {
      double value = evaluate_checked((*doc.alpha)[i], "alpha[" + std::to_string(i) + "]",
                                      issues);
      if (value != 0.0) form.set(1u << i, value);
    }
    alpha = std::move(form);
  }

  std::optional<KForm> omega;
  if (doc.omega) {
    KForm form(2, dim);
    for (const MonomialTerm& term : *doc.omega) {
      double value = evaluate_checked(term.coeff, "omega", issues);
      form.add(indices_to_mask(std::vector<int>{term.i, term.j}, dim), value);
    }
    omega = std::move(form);
  }

  if (!issues.empty()) throw DocumentError(issues);

  LieAlgebra algebra(dim, std::move(differentials));
  ValidationReport validation = validate(algebra, tol);
  if (!validation.passed) {
    std::ostringstream message;
    message << "structure equations violate d(d e^k) = 0 (max residual "
            << validation.max_d_squared << ")";
    issues.push_back(message.str());
    throw DocumentError(issues);
  }

  Orientation orientation{doc.orientation};
  return LoadedDocument{std::move(doc), std::move(algebra), Metric(g),
                        std::move(alpha), std::move(omega), orientation};
}

LoadedDocument load_document(const std::filesystem::path& path, double tol) {
  std::ifstream in(path);
  if (!in) {
    throw DocumentError({"cannot read file: " + path.string()});
  }
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return parse_document(buffer.str(), tol);
}

std::string serialize_document(const AlgebraDocument& doc) {
  ordered_json root;
  root["name"] = doc.name;
  root["dimension"] = doc.dimension;
  ordered_json differential = ordered_json::object();
  for (int k = 0; k < doc.dimension; ++k) {
    ordered_json terms = ordered_json::array();
    for (const MonomialTerm& term : doc.differential[k]) {
      terms.push_back({{"coeff", term.coeff}, {"monomial", {term.i, term.j}}});
    }
    differential["e" + std::to_string(k + 1)] = std::move(terms);
  }
  root["differential"] = std::move(differential);
  if (std::holds_alternative<IdentityMetricTag>(doc.metric)) {
    root["metric"] = "identity";
  } else {
    root["metric"] = std::get<std::vector<std::vector<std::string>>>(doc.metric);
  }
  if (doc.alpha) root["alpha"] = *doc.alpha;
  if (doc.omega) {
    ordered_json terms = ordered_json::array();
    for (const MonomialTerm& term : *doc.omega) {
      terms.push_back({{"coeff", term.coeff}, {"monomial", {term.i, term.j}}});
    }
    root["omega"] = std::move(terms);
  }
  root["orientation"] = doc.orientation;
  return root.dump(2) + "\n";
}

}  // namespace liegeo
