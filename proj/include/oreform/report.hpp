#pragma once

#include <algorithm>
#include <cctype>
#include <cstdint>
#include <iomanip>
#include <optional>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "oreform/diagonalize.hpp"
#include "oreform/format.hpp"
#include "oreform/jacobson.hpp"
#include "oreform/parser.hpp"
#include "oreform/rational.hpp"

namespace oreform {

enum class Strategy { Polynomial, Rational, Both };

inline std::string strategy_name(Strategy s) {
  switch (s) {
    case Strategy::Polynomial: return "polynomial";
    case Strategy::Rational: return "rational";
    case Strategy::Both: return "both";
  }
  return "?";
}

/// Parsed input file. Lines are "key: value"; '#' starts a comment; the
/// matrix value may span lines until its brackets balance.
struct InputDocument {
  std::string algebra = "weyl";
  std::string field = "QQ";
  std::vector<std::string> vars{"x"};
  std::string op = "d";
  std::optional<std::string> q;
  std::optional<std::string> main_var;
  std::vector<std::pair<std::string, std::string>> sigma, delta;  // custom images
  std::string matrix;
  TieBreak tiebreak = TieBreak::Grevlex;
  bool normalize = false;
  Strategy strategy = Strategy::Polynomial;
  bool jacobson = false;
  std::uint64_t seed = 1;
  std::size_t max_iterations = 100;
  bool timings = false;
};

namespace detail {

inline std::string trim(std::string_view s) {
  std::size_t b = 0, e = s.size();
  while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
  while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
  return std::string(s.substr(b, e - b));
}

inline std::string lower(std::string s) {
  for (auto& c : s) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  return s;
}

inline std::vector<std::string> split_list(const std::string& s) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : s) {
    if (c == ',' || std::isspace(static_cast<unsigned char>(c))) {
      if (!cur.empty()) out.push_back(cur);
      cur.clear();
    } else {
      cur += c;
    }
  }
  if (!cur.empty()) out.push_back(cur);
  return out;
}

inline bool parse_flag(const std::string& v, std::size_t pos) {
  std::string s = lower(v);
  if (s == "on" || s == "true" || s == "yes" || s == "1") return true;
  if (s == "off" || s == "false" || s == "no" || s == "0") return false;
  throw ParseError("expected on/off, got '" + v + "'", pos);
}

inline int bracket_depth(const std::string& s) {
  int d = 0;
  for (char c : s) d += c == '[' ? 1 : c == ']' ? -1 : 0;
  return d;
}

inline std::uint64_t parse_unsigned(const std::string& v, std::size_t pos) {
  if (v.empty() || !std::all_of(v.begin(), v.end(), [](char c) { return std::isdigit(static_cast<unsigned char>(c)); }))
    throw ParseError("expected a non-negative integer, got '" + v + "'", pos);
  return std::stoull(v);
}

}  // namespace detail

inline Strategy parse_strategy(const std::string& v) {
  std::string s = detail::lower(v);
  if (s == "polynomial") return Strategy::Polynomial;
  if (s == "rational") return Strategy::Rational;
  if (s == "both") return Strategy::Both;
  throw ParseError("unknown strategy '" + v + "'", 0);
}

inline TieBreak parse_tiebreak(const std::string& v) {
  std::string s = detail::lower(v);
  if (s == "grevlex") return TieBreak::Grevlex;
  if (s == "lex") return TieBreak::Lex;
  throw ParseError("unknown order tie-break '" + v + "'", 0);
}

inline Field parse_field(const std::string& v) {
  std::string s = detail::lower(detail::trim(v));
  if (s == "qq" || s == "q" || s == "0" || s == "rationals") return Field::rationals();
  std::string digits = s;
  if (s.rfind("gf(", 0) == 0 && s.back() == ')') digits = s.substr(3, s.size() - 4);
  else if (s.rfind("gf", 0) == 0) digits = s.substr(2);
  try {
    return Field::prime(detail::parse_unsigned(digits, 0));
  } catch (const ParseError&) {
    throw ParseError("unknown field '" + v + "'", 0);
  } catch (const DomainError& e) {
    throw ValidationError(ValidationError::Reason::Unsupported, e.what());
  }
}

inline InputDocument parse_document(std::string_view text) {
  InputDocument doc;
  bool have_matrix = false;
  std::size_t offset = 0;
  std::istringstream in{std::string(text)};
  std::string line;
  bool in_matrix = false;
  while (std::getline(in, line)) {
    const std::size_t pos = offset;
    offset += line.size() + 1;
    if (auto h = line.find('#'); h != std::string::npos) line.erase(h);
    if (in_matrix) {
      doc.matrix += ' ' + detail::trim(line);
      in_matrix = detail::bracket_depth(doc.matrix) > 0;
      continue;
    }
    std::string t = detail::trim(line);
    if (t.empty()) continue;
    auto colon = t.find(':');
    if (colon == std::string::npos) throw ParseError("expected 'key: value'", pos);
    std::string key = detail::lower(detail::trim(t.substr(0, colon)));
    std::string value = detail::trim(t.substr(colon + 1));
    if (key == "matrix") {
      doc.matrix = value;
      have_matrix = true;
      in_matrix = value.empty() || detail::bracket_depth(value) > 0;
    } else if (key == "algebra") {
      doc.algebra = detail::lower(value);
    } else if (key == "field") {
      doc.field = value;
    } else if (key == "vars" || key == "variables") {
      doc.vars = detail::split_list(value);
    } else if (key == "operator") {
      doc.op = value;
    } else if (key == "q") {
      doc.q = value;
    } else if (key == "main") {
      doc.main_var = value;
    } else if (key == "sigma" || key == "delta") {
      auto arrow = value.find("->");
      if (arrow == std::string::npos) throw ParseError(key + " expects 'var -> image'", pos);
      auto& dst = key == "sigma" ? doc.sigma : doc.delta;
      dst.emplace_back(detail::trim(value.substr(0, arrow)), detail::trim(value.substr(arrow + 2)));
    } else if (key == "order" || key == "order-tiebreak") {
      doc.tiebreak = parse_tiebreak(value);
    } else if (key == "normalize") {
      doc.normalize = detail::parse_flag(value, pos);
    } else if (key == "strategy") {
      doc.strategy = parse_strategy(value);
    } else if (key == "jacobson") {
      doc.jacobson = detail::parse_flag(value, pos);
    } else if (key == "seed") {
      doc.seed = detail::parse_unsigned(value, pos);
    } else if (key == "max-iter" || key == "max_iter") {
      doc.max_iterations = detail::parse_unsigned(value, pos);
    } else if (key == "timings") {
      doc.timings = detail::parse_flag(value, pos);
    } else {
      throw ParseError("unknown key '" + key + "'", pos);
    }
  }
  if (!have_matrix || detail::trim(doc.matrix).empty()) throw ParseError("document has no matrix", offset);
  if (in_matrix) throw ParseError("unbalanced brackets in matrix", offset);
  return doc;
}

inline Preset parse_preset(const std::string& v) {
  std::string s = detail::lower(v);
  if (s == "weyl") return Preset::Weyl;
  if (s == "shift") return Preset::Shift;
  if (s == "difference") return Preset::Difference;
  if (s == "qweyl" || s == "q-weyl") return Preset::QWeyl;
  if (s == "qdifference" || s == "q-difference") return Preset::QDifference;
  if (s == "custom" || s == "commutative") return Preset::Custom;
  throw ParseError("unknown algebra '" + v + "'", 0);
}

inline Scalar parse_scalar(const std::string& v, Field f) {
  try {
    Scalar s(v);
    s.canonicalize();
    return f.reduce(s);
  } catch (const std::invalid_argument&) {
    throw ParseError("expected a rational number, got '" + v + "'", 0);
  }
}

/// Builds and validates the algebra described by the document.
inline AlgebraPtr build_algebra(const InputDocument& doc) {
  Field f = parse_field(doc.field);
  Preset preset = parse_preset(doc.algebra);
  if (doc.vars.empty()) throw ParseError("no base variables", 0);
  std::optional<std::size_t> main;
  if (doc.main_var) {
    auto it = std::find(doc.vars.begin(), doc.vars.end(), *doc.main_var);
    if (it == doc.vars.end()) throw ParseError("main variable '" + *doc.main_var + "' is not declared", 0);
    main = static_cast<std::size_t>(it - doc.vars.begin());
  }
  std::optional<Scalar> q;
  if (doc.q) q = parse_scalar(*doc.q, f);
  AlgebraSpec spec = preset_spec(preset, f, doc.vars, doc.op, main, q);
  spec.tiebreak = doc.tiebreak;
  if (!doc.sigma.empty() || !doc.delta.empty()) {
    if (preset != Preset::Custom) throw ParseError("sigma/delta images need 'algebra: custom'", 0);
    // Images are read in the commutative ring with the same names.
    AlgebraPtr plain = make_algebra(preset_spec(Preset::Custom, f, doc.vars, doc.op));
    auto index_of = [&](const std::string& v) {
      auto it = std::find(doc.vars.begin(), doc.vars.end(), v);
      if (it == doc.vars.end()) throw ParseError("unknown variable '" + v + "'", 0);
      return static_cast<std::size_t>(it - doc.vars.begin());
    };
    auto base_image = [&](const std::string& s) {
      OrePoly p = parse_polynomial(s, plain);
      if (!p.is_base()) throw ParseError("image '" + s + "' involves the operator", 0);
      return p.to_base();
    };
    for (const auto& [v, img] : doc.sigma) {
      const std::size_t i = index_of(v);
      BasePoly b = base_image(img);
      Scalar u(0), c(0);
      for (const auto& t : b.terms()) {
        unsigned deg = total_degree(t.exp, b.nvars());
        if (deg == 0) c = t.coeff;
        else if (deg == 1 && t.exp[i] == 1) u = t.coeff;
        else
          throw ValidationError(ValidationError::Reason::Unsupported,
                                "sigma(" + v + ") must have the form u*" + v + " + v", i);
      }
      spec.endo.u[i] = u;
      spec.endo.v[i] = c;
    }
    for (const auto& [v, img] : doc.delta) spec.deriv.images[index_of(v)] = base_image(img);
  }
  return make_algebra(std::move(spec));
}

struct PolynomialRun {
  DiagResult result;
  VerifyReport verify;
  UnimodularityResult u_rstar, v_rstar;
  std::vector<LeftFraction> normalized;
};

struct RationalRun {
  std::optional<RatDiagResult> result;
  std::optional<std::string> skipped;  // reason when the strategy does not apply
  bool identity = false;
};

struct JacobsonRun {
  RatMatrix input;
  JacobsonResult result;
  CyclicProbe probe;
};

struct Report {
  InputDocument doc;
  AlgebraPtr algebra;
  FractionMatrix input;
  std::optional<PolynomialRun> polynomial;
  std::optional<RationalRun> rational;
  std::optional<JacobsonRun> jacobson;
  std::vector<std::string> failures;

  bool ok() const { return failures.empty(); }
};

/// Runs the requested strategies and checks every identity before returning.
inline Report run_pipeline(const InputDocument& doc) {
  Report rep;
  rep.doc = doc;
  rep.algebra = build_algebra(doc);
  rep.input = parse_matrix(doc.matrix, rep.algebra);
  DiagOptions opts;
  opts.max_iterations = doc.max_iterations;

  const bool poly = doc.strategy != Strategy::Rational;
  const bool rat = doc.strategy != Strategy::Polynomial;
  if (poly) {
    PolynomialRun run;
    run.result = diagonalize(rep.input, opts);
    run.verify = verify_decomposition(rep.input, run.result);
    run.u_rstar = is_unimodular_over_rstar(run.result.U);
    run.v_rstar = is_unimodular_over_rstar(run.result.V);
    if (doc.normalize) run.normalized = normalize_diagonal(run.result.D);
    for (const auto& f : run.verify.failures) rep.failures.push_back("polynomial: " + f);
    rep.polynomial = std::move(run);
  }
  if (rat) {
    RationalRun run;
    if (rep.algebra->nvars() != 1) {
      run.skipped = "rational coefficients need exactly one base variable";
      if (!poly) throw DomainError(*run.skipped);
    } else {
      run.result = diagonalize_rational(rep.input, opts);
      run.identity = run.result->U * RatMatrix::from(rep.input) * run.result->V == run.result->D;
      if (!run.identity) rep.failures.push_back("rational: U * M * V != D");
      if (rep.polynomial) {
        long a = 0, b = 0;
        for (long d : diagonal_degrees(run.result->D)) a += d;
        for (long d : rep.polynomial->verify.degrees) b += d;
        if (a != b)
          rep.failures.push_back("degree sums differ: rational " + std::to_string(a) + ", polynomial " +
                                 std::to_string(b));
      }
    }
    rep.rational = std::move(run);
  }
  if (doc.jacobson) {
    detail::require_simple(*rep.algebra);
    JacobsonRun run;
    RatMatrix D = rep.rational && rep.rational->result ? rep.rational->result->D : RatMatrix::from(rep.polynomial->result.D);
    // Zero entries (rank deficiency) stay out of the strengthening.
    std::size_t rank = 0;
    while (rank < std::min(D.rows(), D.cols()) && !D(rank, rank).is_zero()) ++rank;
    if (rank == 0) throw DomainError("the diagonal form has no nonzero entry");
    RatMatrix sq(rep.algebra, rank, rank);
    for (std::size_t k = 0; k < rank; ++k) sq(k, k) = D(k, k);
    run.input = sq;
    run.result = strengthen_diagonal(sq);
    if (run.result.U * sq * run.result.V != run.result.D) rep.failures.push_back("jacobson: U' * D * V' != J");
    run.probe = cyclic_vector_probe(sq, doc.seed);
    if (run.probe.certificate && run.probe.c.degree() != run.result.D(rank - 1, rank - 1).degree())
      rep.failures.push_back("cyclic vector certificate disagrees with the Jacobson degree");
    rep.jacobson = std::move(run);
  }
  return rep;
}

// ---------------------------------------------------------------------------
// Output

namespace detail {

using Json = nlohmann::ordered_json;

inline Json exps_json(const Exponents& e, std::size_t n) {
  Json a = Json::array();
  for (std::size_t i = 0; i < n; ++i) a.push_back(e[i]);
  return a;
}

inline Json terms_json(const OrePoly& p) {
  Json a = Json::array();
  const std::size_t n = p.algebra()->nvars();
  for (auto it = p.terms().rbegin(); it != p.terms().rend(); ++it)
    a.push_back(Json::array({exps_json(it->exp, n), it->dpow, it->coeff.get_num().get_str(), it->coeff.get_den().get_str()}));
  return a;
}

inline Json base_json(const BasePoly& b) {
  Json a = Json::array();
  for (auto it = b.terms().rbegin(); it != b.terms().rend(); ++it)
    a.push_back(Json::array({exps_json(it->exp, b.nvars()), 0, it->coeff.get_num().get_str(), it->coeff.get_den().get_str()}));
  return a;
}

/// Polynomial entries are term arrays; entries with a base denominator are
/// {"den": terms, "num": terms}.
inline Json entry_json(const LeftFraction& f) {
  if (f.den.is_constant()) {
    const Field fl = f.num.algebra()->field();
    return terms_json(f.num.scaled(fl.inv(f.den.leading().coeff)));
  }
  Json o = Json::object();
  o["den"] = base_json(f.den);
  o["num"] = terms_json(f.num);
  return o;
}

inline Json matrix_json(const OreMatrix& m) {
  Json rows = Json::array();
  for (std::size_t i = 0; i < m.rows(); ++i) {
    Json r = Json::array();
    for (std::size_t j = 0; j < m.cols(); ++j) r.push_back(terms_json(m(i, j)));
    rows.push_back(r);
  }
  return rows;
}

inline Json matrix_json(const RatMatrix& m) {
  Json rows = Json::array();
  for (std::size_t i = 0; i < m.rows(); ++i) {
    Json r = Json::array();
    for (std::size_t j = 0; j < m.cols(); ++j) r.push_back(entry_json(m(i, j).to_fraction()));
    rows.push_back(r);
  }
  return rows;
}

inline Json matrix_json(const FractionMatrix& m) {
  Json rows = Json::array();
  for (std::size_t i = 0; i < m.rows; ++i) {
    Json r = Json::array();
    for (std::size_t j = 0; j < m.cols; ++j) r.push_back(entry_json(m.at(i, j)));
    rows.push_back(r);
  }
  return rows;
}

inline std::vector<std::string> matrix_strings(const RatMatrix& m) {
  std::vector<std::string> out;
  for (std::size_t i = 0; i < m.rows(); ++i) {
    std::string row = "[";
    for (std::size_t j = 0; j < m.cols(); ++j) row += (j ? ", " : "") + to_string(m(i, j));
    out.push_back(row + "]");
  }
  return out;
}

inline std::vector<std::string> matrix_strings(const OreMatrix& m) {
  std::vector<std::string> out;
  for (std::size_t i = 0; i < m.rows(); ++i) {
    std::string row = "[";
    for (std::size_t j = 0; j < m.cols(); ++j) row += (j ? ", " : "") + to_string(m(i, j));
    out.push_back(row + "]");
  }
  return out;
}

inline std::vector<std::string> matrix_strings(const FractionMatrix& m) {
  std::vector<std::string> out;
  for (std::size_t i = 0; i < m.rows; ++i) {
    std::string row = "[";
    for (std::size_t j = 0; j < m.cols; ++j) row += (j ? ", " : "") + to_string(m.at(i, j));
    out.push_back(row + "]");
  }
  return out;
}

template <class M>
Json matrix_block(const M& m) {
  Json o = Json::object();
  o["pretty"] = matrix_strings(m);
  o["entries"] = matrix_json(m);
  return o;
}

inline Json stats_json(const RunStats& s, bool timings) {
  Json o = Json::object();
  Json it = Json::array();
  for (const auto& st : s.iterations)
    it.push_back(Json{{"iteration", st.iteration},
                      {"gb_size", st.gb_size},
                      {"max_degree", st.max_degree},
                      {"max_terms", st.max_terms},
                      {"max_bits", st.max_bits}});
  o["iterations"] = it;
  if (timings) o["wall_seconds"] = s.wall_seconds;
  return o;
}

inline Json algebra_json(const AlgebraPtr& a) {
  const AlgebraSpec& s = a->spec();
  Json o = Json::object();
  o["preset"] = preset_name(s.preset);
  o["field"] = s.field.name();
  o["vars"] = s.vars;
  o["operator"] = s.op;
  o["main"] = s.vars[s.main_var];
  if (s.q) o["q"] = s.q->get_str();
  o["order_tiebreak"] = s.tiebreak == TieBreak::Lex ? "lex" : "grevlex";
  return o;
}

inline std::string degrees_string(const std::vector<long>& d) {
  std::string s = "{";
  for (std::size_t i = 0; i < d.size(); ++i) s += (i ? ", " : "") + std::to_string(d[i]);
  return s + "}";
}

}  // namespace detail

enum class ReportFormat { Text, Json };

inline std::string emit_json(const Report& r) {
  using detail::Json;
  const bool tm = r.doc.timings;
  Json o = Json::object();
  o["algebra"] = detail::algebra_json(r.algebra);
  o["strategy"] = strategy_name(r.doc.strategy);
  o["input"] = detail::matrix_block(r.input);
  if (r.polynomial) {
    const auto& p = *r.polynomial;
    Json b = Json::object();
    b["iterations"] = p.result.iterations;
    b["side_swap"] = side_swap_name(p.result.side_swap);
    b["D"] = detail::matrix_block(p.result.D);
    b["U"] = detail::matrix_block(p.result.U);
    b["V"] = detail::matrix_block(p.result.V);
    b["T"] = detail::matrix_block(p.result.T);
    b["scale"] = Json{{"pretty", to_string(p.result.scale, r.algebra->spec())},
                      {"entry", detail::base_json(p.result.scale)}};
    b["degrees"] = p.verify.degrees;
    b["verification"] = Json{{"identity", p.verify.identity},
                             {"diagonal", p.verify.diagonal},
                             {"u_unimodular_over_r", p.verify.u_unimodular_over_r},
                             {"v_unimodular_over_r", p.verify.v_unimodular_over_r}};
    Json u = Json{{"unimodular", p.u_rstar.unimodular}};
    if (p.u_rstar.inverse) u["inverse"] = detail::matrix_block(*p.u_rstar.inverse);
    Json v = Json{{"unimodular", p.v_rstar.unimodular}};
    if (p.v_rstar.inverse) v["inverse"] = detail::matrix_block(*p.v_rstar.inverse);
    b["unimodular_over_rstar"] = Json{{"U", u}, {"V", v}};
    if (r.doc.normalize) {
      Json n = Json::array();
      for (const auto& f : p.normalized) n.push_back(Json{{"pretty", to_string(f)}, {"entry", detail::entry_json(f)}});
      b["normalized_diagonal"] = n;
    }
    b["stats"] = detail::stats_json(p.result.stats, tm);
    o["polynomial"] = b;
  }
  if (r.rational) {
    Json b = Json::object();
    if (r.rational->skipped) {
      b["skipped"] = *r.rational->skipped;
    } else {
      const auto& q = *r.rational->result;
      b["iterations"] = q.iterations;
      b["side_swap"] = side_swap_name(q.side_swap);
      b["D"] = detail::matrix_block(q.D);
      b["U"] = detail::matrix_block(q.U);
      b["V"] = detail::matrix_block(q.V);
      b["degrees"] = diagonal_degrees(q.D);
      b["verification"] = Json{{"identity", r.rational->identity}};
      b["stats"] = detail::stats_json(q.stats, tm);
    }
    o["rational"] = b;
  }
  if (r.jacobson) {
    const auto& j = *r.jacobson;
    Json b = Json::object();
    b["input"] = detail::matrix_block(j.input);
    b["J"] = detail::matrix_block(j.result.D);
    b["U'"] = detail::matrix_block(j.result.U);
    b["V'"] = detail::matrix_block(j.result.V);
    b["degree_sum"] = j.result.degree_sum;
    b["certificate"] = j.result.certificate;
    Json tr = Json::array();
    for (const auto& st : j.result.trace) {
      Json t = Json{{"pair", {st.first, st.second}}, {"before", st.before}, {"after", st.after}};
      if (st.exponent) t["exponent"] = *st.exponent;
      t["remainder_degree"] = st.remainder_degree;
      tr.push_back(t);
    }
    b["trace"] = tr;
    Json probe = Json::object();
    probe["seed"] = r.doc.seed;
    Json ps = Json::array();
    for (const auto& p : j.probe.probe) ps.push_back(to_string(p));
    probe["probe"] = ps;
    probe["c"] = to_string(j.probe.c);
    probe["degree"] = j.probe.c.degree();
    probe["certificate"] = j.probe.certificate;
    b["cyclic_vector_probe"] = probe;
    o["jacobson"] = b;
  }
  o["ok"] = r.ok();
  o["failures"] = r.failures;
  return o.dump(2) + "\n";
}

inline std::string emit_text(const Report& r) {
  std::ostringstream os;
  const AlgebraSpec& s = r.algebra->spec();
  auto block = [&](const std::string& name, const std::vector<std::string>& rows) {
    os << "  " << name << " =\n";
    for (const auto& row : rows) os << "    " << row << "\n";
  };
  auto stats = [&](const RunStats& st) {
    os << "  stats (iteration, gb size, max degree, max terms, max bits):\n";
    for (const auto& it : st.iterations)
      os << "    " << it.iteration << "  " << it.gb_size << "  " << it.max_degree << "  " << it.max_terms << "  "
         << it.max_bits << "\n";
    if (r.doc.timings) os << "  wall time: " << std::fixed << std::setprecision(3) << st.wall_seconds << " s\n";
  };
  os << "algebra: " << preset_name(s.preset) << " over " << s.field.name() << ", variables";
  for (const auto& v : s.vars) os << " " << v;
  os << ", operator " << s.op << "\n";
  os << "input:\n";
  for (const auto& row : detail::matrix_strings(r.input)) os << "  " << row << "\n";
  if (r.polynomial) {
    const auto& p = *r.polynomial;
    os << "\npolynomial strategy: " << p.result.iterations << " iterations, side swap "
       << side_swap_name(p.result.side_swap) << "\n";
    block("D", detail::matrix_strings(p.result.D));
    block("U", detail::matrix_strings(p.result.U));
    block("V", detail::matrix_strings(p.result.V));
    if (p.result.T != OreMatrix::identity(r.algebra, p.result.T.rows())) block("T", detail::matrix_strings(p.result.T));
    if (!p.result.scale.is_constant()) os << "  scale = " << to_string(p.result.scale, s) << "\n";
    os << "  degrees: " << detail::degrees_string(p.verify.degrees) << "\n";
    os << "  identity: " << (p.verify.identity ? "ok" : "FAILED") << "\n";
    os << "  U unimodular over R: " << (p.verify.u_unimodular_over_r ? "yes" : "no") << "\n";
    os << "  V unimodular over R: " << (p.verify.v_unimodular_over_r ? "yes" : "no") << "\n";
    os << "  U unimodular over R*: " << (p.u_rstar.unimodular ? "yes" : "no") << "\n";
    os << "  V unimodular over R*: " << (p.v_rstar.unimodular ? "yes" : "no") << "\n";
    if (p.v_rstar.inverse) block("V^-1", detail::matrix_strings(*p.v_rstar.inverse));
    if (r.doc.normalize) {
      os << "  normalized diagonal:\n";
      for (const auto& f : p.normalized) os << "    " << to_string(f) << "\n";
    }
    stats(p.result.stats);
  }
  if (r.rational) {
    if (r.rational->skipped) {
      os << "\nrational strategy: skipped (" << *r.rational->skipped << ")\n";
    } else {
      const auto& q = *r.rational->result;
      os << "\nrational strategy: " << q.iterations << " iterations, side swap " << side_swap_name(q.side_swap)
         << "\n";
      block("D", detail::matrix_strings(q.D));
      block("U", detail::matrix_strings(q.U));
      block("V", detail::matrix_strings(q.V));
      os << "  degrees: " << detail::degrees_string(diagonal_degrees(q.D)) << "\n";
      os << "  identity: " << (r.rational->identity ? "ok" : "FAILED") << "\n";
      stats(q.stats);
    }
  }
  if (r.jacobson) {
    const auto& j = *r.jacobson;
    os << "\njacobson form:\n";
    block("J", detail::matrix_strings(j.result.D));
    block("U'", detail::matrix_strings(j.result.U));
    block("V'", detail::matrix_strings(j.result.V));
    os << "  degree sum " << j.result.degree_sum << ", certificate " << (j.result.certificate ? "ok" : "FAILED")
       << ", " << j.result.trace.size() << " rounds\n";
    os << "  cyclic vector probe (seed " << r.doc.seed << "): c of degree " << j.probe.c.degree() << ", "
       << (j.probe.certificate ? "certified" : "not certified, retry with another seed") << "\n";
  }
  os << "\nresult: " << (r.ok() ? "ok" : "FAILED") << "\n";
  for (const auto& f : r.failures) os << "  " << f << "\n";
  return os.str();
}

inline std::string emit_report(const Report& r, ReportFormat f) {
  return f == ReportFormat::Json ? emit_json(r) : emit_text(r);
}

/// Exit codes of the command-line tool.
inline int exit_code(ErrorKind k) {
  switch (k) {
    case ErrorKind::Parse: return 2;
    case ErrorKind::Validate: return 3;
    case ErrorKind::IterationCap: return 4;
    case ErrorKind::Verify: return 5;
    case ErrorKind::NotSimple: return 6;
    case ErrorKind::Domain:
    case ErrorKind::Internal: return 1;
  }
  return 1;
}

}  // namespace oreform
