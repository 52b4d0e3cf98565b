// Command-line front end: reads an input document, runs the pipeline and
// prints the report.

#include <fstream>
#include <iostream>
#include <iterator>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "oreform/oreform.hpp"

using namespace oreform;

namespace {

std::string read_all(const std::string& path) {
  if (path == "-") return {std::istreambuf_iterator<char>(std::cin), std::istreambuf_iterator<char>()};
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot read " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Fraction-free diagonal and Jacobson forms of matrices over Ore algebras"};
  std::string input, output, format = "text", algebra, field, strategy, tiebreak, matrix, vars, op, q;
  bool jacobson = false, normalize = false, timings = false;
  std::optional<std::uint64_t> seed;
  std::optional<std::size_t> max_iter;
  app.add_option("input", input, "Input document ('-' for stdin)");
  app.add_option("--matrix", matrix, "Matrix text, overrides the document's matrix");
  app.add_option("--algebra", algebra, "weyl | shift | difference | qweyl | qdifference | custom");
  app.add_option("--field", field, "QQ or GF(p)");
  app.add_option("--vars", vars, "Comma-separated base variables");
  app.add_option("--operator", op, "Name of the Ore variable");
  app.add_option("--q", q, "Value of q for the q-algebras");
  app.add_option("--strategy", strategy, "polynomial | rational | both");
  app.add_flag("--jacobson", jacobson, "Strengthen the diagonal form to a Jacobson form");
  app.add_flag("--normalize", normalize, "Also print the rational normalization of D");
  app.add_option("--seed", seed, "Seed for the cyclic vector probe");
  app.add_option("--max-iter", max_iter, "Iteration cap of the diagonalization");
  app.add_option("--order-tiebreak", tiebreak, "grevlex | lex");
  app.add_option("--output", output, "Write the report to this file");
  app.add_option("--format", format, "text | json")->check(CLI::IsMember({"text", "json"}));
  app.add_flag("--timings", timings, "Include wall-clock times (reports are then not byte-stable)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e);
    return rc == 0 ? 0 : 2;
  }

  try {
    InputDocument doc;
    if (!input.empty()) {
      doc = parse_document(read_all(input));
    } else if (matrix.empty()) {
      throw ParseError("no input document and no --matrix given", 0);
    }
    if (!matrix.empty()) doc.matrix = matrix;
    if (!algebra.empty()) doc.algebra = algebra;
    if (!field.empty()) doc.field = field;
    if (!vars.empty()) doc.vars = detail::split_list(vars);
    if (!op.empty()) doc.op = op;
    if (!q.empty()) doc.q = q;
    if (!strategy.empty()) doc.strategy = parse_strategy(strategy);
    if (!tiebreak.empty()) doc.tiebreak = parse_tiebreak(tiebreak);
    if (jacobson) doc.jacobson = true;
    if (normalize) doc.normalize = true;
    if (timings) doc.timings = true;
    if (seed) doc.seed = *seed;
    if (max_iter) doc.max_iterations = *max_iter;

    Report rep = run_pipeline(doc);
    std::string text = emit_report(rep, format == "json" ? ReportFormat::Json : ReportFormat::Text);
    if (output.empty()) {
      std::cout << text;
    } else {
      std::ofstream out(output);
      if (!out) throw std::runtime_error("cannot write " + output);
      out << text;
    }
    if (!rep.ok()) {
      for (const auto& f : rep.failures) std::cerr << "verification failed: " << f << "\n";
      return 5;
    }
    return 0;
  } catch (const OreError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return exit_code(e.kind());
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}
