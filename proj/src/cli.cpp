#include "liegeo/cli.hpp"

#include <CLI11.hpp>

#include "liegeo/document.hpp"
#include "liegeo/report.hpp"

namespace liegeo {

int run_command(const std::vector<std::string>& args, std::ostream& out,
                std::ostream& err) {
  CLI::App app{"left-invariant geometry of Lie algebras from structure equations"};
  app.require_subcommand(1);
  app.fallthrough();

  double tolerance = 1e-9;
  std::string format = "text";
  std::uint64_t seed = 0;
  app.add_option("--tolerance", tolerance, "numerical tolerance")
      ->capture_default_str();
  app.add_option("--format", format, "output format")
      ->check(CLI::IsMember({"text", "json"}))
      ->capture_default_str();
  app.add_option("--seed", seed, "random seed for the search")->capture_default_str();

  std::string path;
  auto add_subcommand = [&app, &path](const std::string& name,
                                      const std::string& description) {
    CLI::App* sub = app.add_subcommand(name, description);
    sub->add_option("document", path, "algebra document (JSON)")->required();
    return sub;
  };

  CLI::App* validate_cmd =
      add_subcommand("validate", "check the structure equations and metric");
  CLI::App* analyze_cmd =
      add_subcommand("analyze", "full curvature, classification and identity report");
  CLI::App* classify_cmd =
      add_subcommand("classify", "classify the (alpha, omega, g) structure");
  CLI::App* product_cmd =
      add_subcommand("product", "analyze an even-dimensional product structure");
  bool with_circle = false;
  bool square = false;
  product_cmd->add_flag("--with-circle", with_circle, "product with a flat circle");
  product_cmd->add_flag("--square", square, "product of the structure with itself");
  CLI::App* search_cmd =
      add_subcommand("search", "numerically search the family for an Einstein metric");
  std::string family = "diag";
  int seeds = 8;
  search_cmd->add_option("--family", family, "metric family")
      ->check(CLI::IsMember({"diag", "full"}))
      ->capture_default_str();
  search_cmd->add_option("--seeds", seeds, "number of random starts")
      ->capture_default_str();
  CLI::App* verify_cmd =
      add_subcommand("verify", "verify the document metric as an Einstein candidate");

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) {
      out << app.help();
      return 0;
    }
    err << e.what() << "\n\n" << app.help();
    return 2;
  }

  if (*product_cmd && with_circle == square) {
    err << "product requires exactly one of --with-circle or --square\n";
    return 2;
  }

  try {
    LoadedDocument doc = load_document(path, tolerance);
    Report report;
    int exit_code = 0;
    if (*validate_cmd) {
      report = validate_report(doc, tolerance);
    } else if (*analyze_cmd) {
      report = analyze_document(doc, tolerance);
    } else if (*classify_cmd) {
      report = classify_report(doc, tolerance);
    } else if (*product_cmd) {
      report = product_report(doc, tolerance, with_circle);
    } else if (*search_cmd) {
      FamilyKind kind = family == "diag" ? FamilyKind::Diagonal : FamilyKind::FullTriangular;
      report = search_report(doc, tolerance, kind, seeds, seed);
    } else if (*verify_cmd) {
      report = verify_report(doc, tolerance);
      if (!report.tau) exit_code = 1;
    }
    if (format == "json") {
      out << to_json_text(report);
    } else {
      print_text(report, out);
    }
    return exit_code;
  } catch (const DocumentError& e) {
    for (const std::string& issue : e.issues()) {
      err << "error: " << issue << "\n";
    }
    return 1;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  }
}

}  // namespace liegeo
