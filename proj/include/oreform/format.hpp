#pragma once

#include <cstddef>
#include <sstream>
#include <string>

#include "oreform/matrix.hpp"
#include "oreform/ore_poly.hpp"

namespace oreform {

namespace detail {

inline std::string monomial_string(const AlgebraSpec& s, const Exponents& e, std::uint32_t dpow) {
  std::string out;
  auto factor = [&](const std::string& name, unsigned p) {
    if (p == 0) return;
    if (!out.empty()) out += '*';
    out += name;
    if (p > 1) out += '^' + std::to_string(p);
  };
  // Largest variable first.
  for (std::size_t i = s.vars.size(); i-- > 0;) factor(s.vars[i], e[i]);
  factor(s.op, dpow);
  return out;
}

inline std::string base_term_sequence(const AlgebraSpec& s, const std::vector<OreTerm>& desc) {
  std::string out;
  for (const auto& t : desc) {
    Scalar c = t.coeff;
    bool neg = sgn(c) < 0;
    if (neg) c = -c;
    std::string mono = monomial_string(s, t.exp, t.dpow);
    std::string body;
    if (mono.empty()) body = c.get_str();
    else if (c == 1) body = mono;
    else body = c.get_str() + "*" + mono;
    if (out.empty()) out = neg ? "-" + body : body;
    else out += (neg ? "-" : "+") + body;
  }
  return out.empty() ? "0" : out;
}

}  // namespace detail

/// Terms in descending order, e.g. "x^2*d^2+2*x*d-1".
inline std::string to_string(const OrePoly& p) {
  if (p.is_zero()) return "0";
  std::vector<OreTerm> desc(p.terms().rbegin(), p.terms().rend());
  return detail::base_term_sequence(p.algebra()->spec(), desc);
}

inline std::string to_string(const BasePoly& b, const AlgebraSpec& s) {
  std::vector<OreTerm> t;
  for (const auto& bt : b.terms()) t.push_back({bt.exp, 0, bt.coeff});
  std::sort(t.begin(), t.end(), [&](const OreTerm& x, const OreTerm& y) {
    return compare_exponents(x.exp, y.exp, s.nvars(), s.tiebreak) > 0;
  });
  return detail::base_term_sequence(s, t);
}

/// den^-1 * num; plain polynomial text when the denominator is 1.
inline std::string to_string(const LeftFraction& f) {
  const AlgebraSpec& s = f.num.algebra()->spec();
  if (f.den.is_one()) return to_string(f.num);
  if (!f.num.is_zero() && f.num.is_constant() && f.num.leading().coeff == 1) return "1/(" + to_string(f.den, s) + ")";
  return "1/(" + to_string(f.den, s) + ")*(" + to_string(f.num) + ")";
}

inline std::string to_string(const OreMatrix& m) {
  std::ostringstream os;
  os << '[';
  for (std::size_t i = 0; i < m.rows(); ++i) {
    if (i) os << ",\n ";
    os << '[';
    for (std::size_t j = 0; j < m.cols(); ++j) {
      if (j) os << ", ";
      os << to_string(m(i, j));
    }
    os << ']';
  }
  os << ']';
  return os.str();
}

}  // namespace oreform
