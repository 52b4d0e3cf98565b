#pragma once

// Independent oracles shared by the unit tests and the acceptance binary.

#include <optional>
#include <random>
#include <vector>

#include "oreform/oreform.hpp"

namespace testutil {

using namespace oreform;

enum class Action { Derivative, Shift, Difference };

inline UPoly apply_op(Action a, const UPoly& p) {
  const Field f = p.field();
  switch (a) {
    case Action::Derivative: {
      std::vector<Scalar> c;
      for (std::size_t i = 1; i < p.coeffs().size(); ++i) c.push_back(p.coeffs()[i] * Scalar(static_cast<long>(i)));
      return UPoly(f, c);
    }
    case Action::Shift:
      return p.compose_affine(Scalar(1), Scalar(1));
    case Action::Difference:
      return p.compose_affine(Scalar(1), Scalar(1)) - p;
  }
  return p;
}

/// f acting on p as an operator on K[x].
inline UPoly act(Action a, const OrePoly& f, const UPoly& p) {
  std::vector<UPoly> pw{p};
  UPoly out(p.field());
  for (const auto& t : f.terms()) {
    while (pw.size() <= t.dpow) pw.push_back(apply_op(a, pw.back()));
    std::vector<Scalar> mono(t.exp[0] + 1, Scalar(0));
    mono.back() = t.coeff;
    out = out + UPoly(p.field(), mono) * pw[t.dpow];
  }
  return out;
}

inline UPoly random_upoly(std::mt19937_64& rng, unsigned deg) {
  std::uniform_int_distribution<int> c(-6, 6);
  std::vector<Scalar> v;
  for (unsigned i = 0; i <= deg; ++i) v.push_back(Scalar(c(rng)));
  return UPoly(Field::rationals(), v);
}

// Degree of the monic generator of {c : c * p_i in R m_i for all i}, by
// searching for the first K(x)-linear dependency among the remainders of
// d^k * p_i modulo m_i.
inline long annihilator_degree_oracle(const RatMatrix& D, const std::vector<RatOrePoly>& probe) {
  const AlgebraPtr& a = D.algebra();
  const std::size_t n = probe.size();
  std::size_t dim = 0;
  for (std::size_t i = 0; i < n; ++i) dim += static_cast<std::size_t>(D(i, i).degree());
  std::vector<std::vector<RatFunc>> basis;  // echelon rows
  std::vector<std::size_t> pivots;
  for (long k = 0;; ++k) {
    std::vector<RatFunc> v;
    for (std::size_t i = 0; i < n; ++i) {
      RatOrePoly r = right_divide(RatOrePoly::op(a, static_cast<std::size_t>(k)) * probe[i], D(i, i)).second;
      for (long j = 0; j < D(i, i).degree(); ++j) v.push_back(r.coefficient(static_cast<std::size_t>(j)));
    }
    for (std::size_t b = 0; b < basis.size(); ++b) {
      RatFunc f = v[pivots[b]];
      if (f.is_zero()) continue;
      for (std::size_t j = 0; j < dim; ++j) v[j] = v[j] - f * basis[b][j];
    }
    std::optional<std::size_t> piv;
    for (std::size_t j = 0; j < dim && !piv; ++j)
      if (!v[j].is_zero()) piv = j;
    if (!piv) return k;
    RatFunc inv = v[*piv].inv();
    for (auto& e : v) e = inv * e;
    for (std::size_t b = 0; b < basis.size(); ++b) {
      RatFunc f = basis[b][*piv];
      if (f.is_zero()) continue;
      for (std::size_t j = 0; j < dim; ++j) basis[b][j] = basis[b][j] - f * v[j];
    }
    basis.push_back(v);
    pivots.push_back(*piv);
  }
}

}  // namespace testutil
