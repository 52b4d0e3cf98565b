#pragma once

#include <ostream>
#include <random>
#include <string>
#include <vector>

#include "oreform/oreform.hpp"

namespace testutil {

using namespace oreform;

inline AlgebraPtr weyl(const std::string& x = "x", const std::string& d = "d", Field f = Field::rationals()) {
  return make_algebra(preset_spec(Preset::Weyl, f, {x}, d));
}

inline AlgebraPtr shift(const std::string& t = "t", const std::string& s = "S") {
  return make_algebra(preset_spec(Preset::Shift, Field::rationals(), {t}, s));
}

inline AlgebraPtr difference(const std::string& x = "x", const std::string& d = "D") {
  return make_algebra(preset_spec(Preset::Difference, Field::rationals(), {x}, d));
}

inline AlgebraPtr qweyl(long q) {
  return make_algebra(preset_spec(Preset::QWeyl, Field::rationals(), {"x"}, "d", std::nullopt, Scalar(q)));
}

/// Parses one expression in the given algebra (must be polynomial).
inline OrePoly P(const AlgebraPtr& a, const std::string& s) { return parse_polynomial(s, a); }

inline OreMatrix Mx(const AlgebraPtr& a, const std::string& s) { return parse_polynomial_matrix(s, a); }

/// Random element with d-degree <= maxdeg and base degrees <= maxbase
/// (maxbase < 0: same as maxdeg).
inline OrePoly random_poly(std::mt19937_64& rng, const AlgebraPtr& a, unsigned maxdeg, int nterms, int cmax = 5,
                           int maxbase = -1) {
  std::uniform_int_distribution<int> c(-cmax, cmax), d(0, static_cast<int>(maxdeg)),
      b(0, maxbase < 0 ? static_cast<int>(maxdeg) : maxbase);
  std::vector<OreTerm> t;
  for (int k = 0; k < nterms; ++k) {
    Exponents e{};
    for (std::size_t i = 0; i < a->nvars(); ++i) e[i] = static_cast<std::uint16_t>(b(rng));
    t.push_back({e, static_cast<std::uint32_t>(d(rng)), a->field().from_int(c(rng))});
  }
  return OrePoly::from_terms(a, std::move(t));
}

/// True when a = c * b for some nonzero scalar c.
inline bool same_up_to_scalar(const OrePoly& a, const OrePoly& b) {
  if (a.is_zero() || b.is_zero()) return a.is_zero() && b.is_zero();
  return a.monic() == b.monic();
}

/// Each row of a equals a nonzero scalar times the same row of b.
inline bool rows_up_to_scalar(const OreMatrix& a, const OreMatrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) return false;
  for (std::size_t i = 0; i < a.rows(); ++i) {
    Scalar ratio;
    bool have = false;
    for (std::size_t j = 0; j < a.cols(); ++j) {
      const OrePoly &x = a(i, j), &y = b(i, j);
      if (x.is_zero() != y.is_zero()) return false;
      if (x.is_zero()) continue;
      Scalar r = x.leading().coeff / y.leading().coeff;
      if (have && r != ratio) return false;
      ratio = r;
      have = true;
      if (x != y.scaled(r)) return false;
    }
  }
  return true;
}

inline bool cols_up_to_scalar(const OreMatrix& a, const OreMatrix& b) {
  return rows_up_to_scalar(a.transposed(), b.transposed());
}

}  // namespace testutil

namespace oreform {

inline void PrintTo(const OrePoly& p, std::ostream* os) { *os << to_string(p); }
inline void PrintTo(const OreMatrix& m, std::ostream* os) { *os << to_string(m); }

}  // namespace oreform
