#pragma once

#include <cctype>
#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "oreform/algebra.hpp"
#include "oreform/coeff_core.hpp"
#include "oreform/errors.hpp"
#include "oreform/matrix.hpp"
#include "oreform/ore_poly.hpp"
#include "oreform/upoly.hpp"

namespace oreform {

namespace detail {

/// (q^-1) * p with q a nonzero base polynomial.
struct Frac {
  BasePoly den;
  OrePoly num;
};

class FracArith {
 public:
  explicit FracArith(AlgebraPtr a) : a_(std::move(a)), one_(BasePoly::one(a_->field(), a_->nvars())) {}

  Frac constant(const Scalar& c) const { return {one_, OrePoly::constant(a_, c)}; }
  Frac poly(OrePoly p) const { return {one_, std::move(p)}; }

  Frac add(const Frac& x, const Frac& y) const {
    if (x.den == y.den) return reduce({x.den, x.num + y.num});
    auto [l, cx, cy] = common(x.den, y.den);
    return reduce({l, x.num.mul_base_left(cx) + y.num.mul_base_left(cy)});
  }

  Frac neg(const Frac& x) const { return {x.den, -x.num}; }

  Frac mul(const Frac& x, const Frac& y) const {
    // x.den^-1 * (x.num * y.den^-1) * y.num
    Frac mid = right_divide_by_base(x.num, y.den);
    return reduce({mid.den * x.den, mid.num * y.num});
  }

  /// x / y; y must not involve the Ore variable.
  Frac div(const Frac& x, const Frac& y) const {
    if (y.num.is_zero()) throw DomainError("division by zero");
    BasePoly b = y.num.to_base();
    // y^-1 = b^-1 * y.den
    Frac mid = right_divide_by_base(x.num, b);
    return reduce({mid.den * x.den, mid.num * OrePoly::from_base(a_, y.den)});
  }

  const AlgebraPtr& algebra() const { return a_; }

  /// f * q^-1 as a left fraction.
  Frac right_divide_by_base(const OrePoly& f, const BasePoly& q) const {
    if (q.is_zero()) throw DomainError("zero denominator");
    if (q.is_constant()) return {one_, f.scaled(a_->field().inv(q.leading().coeff))};
    // powers[b] = d^b * q^-1 as a left fraction
    std::vector<Frac> powers{{q, OrePoly::one(a_)}};
    auto power = [&](std::uint32_t b) -> const Frac& {
      while (powers.size() <= b) {
        const Frac& prev = powers.back();
        // d * Q^-1 P = (sigma(Q) Q)^-1 (Q d - delta(Q)) P
        BasePoly sq = apply_endomorphism(a_->spec().endo, prev.den);
        BasePoly dq = apply_derivation(a_->spec().endo, a_->spec().deriv, prev.den);
        OrePoly lead = OrePoly::from_base(a_, prev.den) * OrePoly::op(a_) - OrePoly::from_base(a_, dq);
        powers.push_back(reduce({sq * prev.den, lead * prev.num}));
      }
      return powers[b];
    };
    Frac acc{one_, OrePoly(a_)};
    for (const auto& t : f.terms()) {
      const Frac& pb = power(t.dpow);
      BasePoly xc = BasePoly::monomial(a_->field(), a_->nvars(), t.exp, t.coeff);
      acc = add(acc, {pb.den, pb.num.mul_base_left(xc)});
    }
    return acc;
  }

  /// Cancels common factors between the denominator and all coefficients.
  Frac reduce(Frac x) const {
    if (x.num.is_zero()) return {one_, OrePoly(a_)};
    const Field f = a_->field();
    if (x.den.is_constant()) return {one_, x.num.scaled(f.inv(x.den.leading().coeff))};
    if (a_->nvars() == 1) {
      UPoly g = UPoly::from_base(x.den);
      std::uint32_t maxd = x.num.leading().dpow;
      for (std::uint32_t k = 0; k <= maxd && !g.is_constant(); ++k) {
        BasePoly c = x.num.coefficient_of(k);
        if (!c.is_zero()) g = gcd(g, UPoly::from_base(c));
      }
      if (!g.is_constant()) {
        BasePoly gb = g.to_base();
        x.den = *x.den.divide_exact(gb);
        x.num = *divide_by_base(x.num, gb);
      }
    } else if (auto all = divide_by_base(x.num, x.den)) {
      return {one_, *all};
    }
    Scalar lc = x.den.leading().coeff;
    return {x.den.scaled(f.inv(lc)), x.num.scaled(f.inv(lc))};
  }

 private:
  struct Common {
    BasePoly l, cx, cy;
  };

  Common common(const BasePoly& p, const BasePoly& q) const {
    if (auto c = p.divide_exact(q)) return {p, one_, *c};
    if (auto c = q.divide_exact(p)) return {q, *c, one_};
    if (a_->nvars() == 1) {
      BasePoly l = lcm(UPoly::from_base(p), UPoly::from_base(q)).to_base().scaled(p.leading().coeff);
      return {l, *l.divide_exact(p), *l.divide_exact(q)};
    }
    return {p * q, q, p};
  }

  AlgebraPtr a_;
  BasePoly one_;
};

class ExprParser {
 public:
  ExprParser(std::string_view text, AlgebraPtr a) : s_(text), arith_(std::move(a)) {}

  Frac parse_expression_only() {
    Frac f = expr();
    skip_ws();
    if (pos_ != s_.size()) error("unexpected '" + std::string(1, s_[pos_]) + "'");
    return f;
  }

  std::vector<std::vector<Frac>> parse_matrix_only() {
    std::vector<std::vector<Frac>> rows;
    expect('[', "expected '[' to open the matrix");
    skip_ws();
    if (peek() == ']') error("empty matrix");
    do {
      rows.push_back(row());
      if (rows.back().size() != rows.front().size()) error("rows have different lengths");
    } while (accept(','));
    expect(']', "expected ']' to close the matrix");
    skip_ws();
    if (pos_ != s_.size()) error("trailing input after the matrix");
    return rows;
  }

 private:
  [[noreturn]] void error(const std::string& what) const { throw ParseError(what, pos_); }

  void skip_ws() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }
  char peek() {
    skip_ws();
    return pos_ < s_.size() ? s_[pos_] : '\0';
  }
  bool accept(char c) {
    if (peek() != c) return false;
    ++pos_;
    return true;
  }
  void expect(char c, const std::string& what) {
    if (!accept(c)) error(what);
  }

  std::vector<Frac> row() {
    expect('[', "expected '[' to open a row");
    if (peek() == ']') error("empty row");
    std::vector<Frac> r;
    do r.push_back(expr());
    while (accept(','));
    expect(']', "expected ']' to close a row");
    return r;
  }

  Frac expr() {
    Frac acc = arith_.constant(Scalar(0));
    bool first = true;
    for (;;) {
      char c = peek();
      bool negate = false;
      if (c == '+' || c == '-') {
        ++pos_;
        negate = c == '-';
      } else if (!first) {
        break;
      }
      Frac t = term();
      acc = arith_.add(acc, negate ? arith_.neg(t) : t);
      first = false;
    }
    return acc;
  }

  static bool starts_atom(char c) {
    return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '(';
  }

  Frac term() {
    Frac acc = factor();
    for (;;) {
      char c = peek();
      if (c == '*') {
        ++pos_;
        acc = arith_.mul(acc, factor());
      } else if (c == '/') {
        ++pos_;
        std::size_t at = pos_;
        Frac d = factor();
        if (!d.num.is_base()) {
          pos_ = at;
          error("the Ore variable " + arith_.algebra()->spec().op + " cannot appear in a denominator");
        }
        if (d.num.is_zero()) {
          pos_ = at;
          error("division by zero");
        }
        acc = arith_.div(acc, d);
      } else if (starts_atom(c)) {
        acc = arith_.mul(acc, factor());
      } else {
        return acc;
      }
    }
  }

  Frac factor() {
    char c = peek();
    if (c == '-') {
      ++pos_;
      return arith_.neg(factor());
    }
    if (c == '+') {
      ++pos_;
      return factor();
    }
    Frac base = atom();
    if (accept('^')) {
      skip_ws();
      std::size_t start = pos_;
      while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
      if (start == pos_) error("expected a natural number exponent");
      unsigned long e = std::stoul(std::string(s_.substr(start, pos_ - start)));
      if (e > 1000) error("exponent too large");
      Frac r = arith_.constant(Scalar(1));
      for (unsigned long k = 0; k < e; ++k) r = arith_.mul(r, base);
      return r;
    }
    return base;
  }

  Frac atom() {
    char c = peek();
    if (c == '(') {
      ++pos_;
      Frac f = expr();
      expect(')', "expected ')'");
      return f;
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      std::size_t start = pos_;
      while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
      mpz_class z(std::string(s_.substr(start, pos_ - start)));
      return arith_.constant(arith_.algebra()->field().reduce(Scalar(z)));
    }
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      std::size_t start = pos_;
      while (pos_ < s_.size() && (std::isalnum(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '_')) ++pos_;
      std::string name(s_.substr(start, pos_ - start));
      const auto& spec = arith_.algebra()->spec();
      if (name == spec.op) return arith_.poly(OrePoly::op(arith_.algebra()));
      for (std::size_t i = 0; i < spec.vars.size(); ++i)
        if (spec.vars[i] == name) return arith_.poly(OrePoly::variable(arith_.algebra(), i));
      pos_ = start;
      error("unknown variable '" + name + "'");
    }
    if (c == '\0') error("unexpected end of input");
    error("unexpected '" + std::string(1, c) + "'");
  }

  std::string_view s_;
  std::size_t pos_ = 0;
  FracArith arith_;
};

}  // namespace detail

/// Parses an expression; the result is a left fraction den^-1 * num.
inline LeftFraction parse_expression(std::string_view text, const AlgebraPtr& a) {
  detail::Frac f = detail::ExprParser(text, a).parse_expression_only();
  return {std::move(f.den), std::move(f.num)};
}

/// Parses an expression that must be a polynomial in R*.
inline OrePoly parse_polynomial(std::string_view text, const AlgebraPtr& a) {
  LeftFraction f = parse_expression(text, a);
  if (!f.den.is_constant()) throw ParseError("expression has a non-constant denominator", 0);
  return f.num.scaled(a->field().inv(f.den.leading().coeff));
}

/// Parses "[[e, e], [e, e]]" into a matrix whose entries may be fractions.
inline FractionMatrix parse_matrix(std::string_view text, const AlgebraPtr& a) {
  auto rows = detail::ExprParser(text, a).parse_matrix_only();
  FractionMatrix m{a, rows.size(), rows.front().size(), {}};
  for (auto& r : rows)
    for (auto& e : r) m.entries.push_back({std::move(e.den), std::move(e.num)});
  return m;
}

inline OreMatrix parse_polynomial_matrix(std::string_view text, const AlgebraPtr& a) {
  FractionMatrix f = parse_matrix(text, a);
  if (!f.is_polynomial()) throw ParseError("matrix has non-constant denominators", 0);
  OreMatrix m(a, f.rows, f.cols);
  for (std::size_t i = 0; i < f.rows; ++i)
    for (std::size_t j = 0; j < f.cols; ++j) {
      const auto& e = f.at(i, j);
      m(i, j) = e.num.scaled(a->field().inv(e.den.leading().coeff));
    }
  return m;
}

}  // namespace oreform
