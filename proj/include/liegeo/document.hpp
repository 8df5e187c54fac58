#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "liegeo/exterior.hpp"
#include "liegeo/lie_algebra.hpp"
#include "liegeo/metric.hpp"

namespace liegeo {

/// Exact coefficient grammar:
///   COEFF  := TERM (('+'|'-') TERM)*
///   TERM   := ['-'] FACTOR (('*'|'/') FACTOR)*
///   FACTOR := 'sqrt' '(' UINT ')' | UINT
/// so "sqrt(3)/2", "1/2*sqrt(3)" and "-1/2" all parse, and evaluate
/// left-to-right. Throws Error with the character position on bad input.
double parse_coefficient(const std::string& text);

struct MonomialTerm {
  std::string coeff;  // source string, kept verbatim for round-trips
  int i = 0;          // 1-based, i < j
  int j = 0;
};

struct IdentityMetricTag {};

/// In-memory form of the algebra document. Coefficients stay as source
/// strings so that serialization round-trips exactly.
struct AlgebraDocument {
  std::string name;
  int dimension = 0;
  std::vector<std::vector<MonomialTerm>> differential;  // per basis index
  std::variant<IdentityMetricTag, std::vector<std::vector<std::string>>> metric;
  std::optional<std::vector<std::string>> alpha;
  std::optional<std::vector<MonomialTerm>> omega;
  int orientation = +1;
};

/// Evaluated document: the algebra, metric and optional structure forms.
struct LoadedDocument {
  AlgebraDocument document;
  LieAlgebra algebra;
  Metric metric;
  std::optional<KForm> alpha;
  std::optional<KForm> omega;
  Orientation orientation;
};

/// Parses JSON text into a document, evaluating and validating everything
/// (grammar, index ranges, metric positivity, d∘d = 0). All violations are
/// aggregated into a single DocumentError.
LoadedDocument parse_document(const std::string& json_text, double tol = 1e-9);

/// parse_document on the contents of a file.
LoadedDocument load_document(const std::filesystem::path& path, double tol = 1e-9);

/// JSON serialization preserving the original coefficient strings.
std::string serialize_document(const AlgebraDocument& doc);

}  // namespace liegeo
