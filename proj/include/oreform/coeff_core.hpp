#pragma once

#include <cstddef>
#include <map>
#include <vector>

#include "oreform/base_poly.hpp"
#include "oreform/errors.hpp"
#include "oreform/field.hpp"
#include "oreform/upoly.hpp"

namespace oreform {

/// Diagonal affine endomorphism sigma(x_i) = u_i * x_i + v_i of K[x_1..x_n].
struct EndoSpec {
  std::vector<Scalar> u;
  std::vector<Scalar> v;

  static EndoSpec identity(std::size_t n) {
    return EndoSpec{std::vector<Scalar>(n, Scalar(1)), std::vector<Scalar>(n, Scalar(0))};
  }

  std::size_t nvars() const noexcept { return u.size(); }

  bool is_identity() const {
    for (std::size_t i = 0; i < u.size(); ++i)
      if (u[i] != 1 || v[i] != 0) return false;
    return true;
  }

  /// sigma(x_i) as a base polynomial.
  BasePoly image(Field f, std::size_t i) const {
    return BasePoly::variable(f, nvars(), i).scaled(u[i]) + BasePoly::constant(f, nvars(), v[i]);
  }

  /// The inverse map x_i -> (x_i - v_i) / u_i.
  EndoSpec inverse(Field f) const {
    EndoSpec r;
    for (std::size_t i = 0; i < u.size(); ++i) {
      if (is_zero(u[i])) throw DomainError("sigma is not invertible");
      Scalar ui = f.inv(u[i]);
      r.u.push_back(ui);
      r.v.push_back(f.neg(f.mul(v[i], ui)));
    }
    return r;
  }

  friend bool operator==(const EndoSpec&, const EndoSpec&) = default;
};

/// Images delta(x_i) of a sigma-derivation on the generators.
struct DerivSpec {
  std::vector<BasePoly> images;

  static DerivSpec zero(Field f, std::size_t n) {
    return DerivSpec{std::vector<BasePoly>(n, BasePoly(f, n))};
  }

  bool is_zero() const {
    for (const auto& p : images)
      if (!p.is_zero()) return false;
    return true;
  }

  friend bool operator==(const DerivSpec&, const DerivSpec&) = default;
};

inline void check_endo_arity(const EndoSpec& spec, const BasePoly& p) {
  if (spec.u.size() != p.nvars() || spec.v.size() != p.nvars())
    throw DomainError("sigma is defined on " + std::to_string(spec.u.size()) +
                      " variables but the polynomial has " + std::to_string(p.nvars()));
}

/// sigma(p): substitutes x_i -> u_i x_i + v_i.
inline BasePoly apply_endomorphism(const EndoSpec& spec, const BasePoly& p) {
  check_endo_arity(spec, p);
  const Field f = p.field();
  const std::size_t n = p.nvars();
  if (spec.is_identity()) return p;
  std::vector<std::vector<BasePoly>> powers(n);
  auto power = [&](std::size_t i, unsigned e) -> const BasePoly& {
    auto& tab = powers[i];
    if (tab.empty()) tab.push_back(BasePoly::one(f, n));
    while (tab.size() <= e) tab.push_back(tab.back() * spec.image(f, i));
    return tab[e];
  };
  BasePoly out(f, n);
  for (const auto& t : p.terms()) {
    BasePoly term = BasePoly::constant(f, n, t.coeff);
    for (std::size_t i = 0; i < n; ++i)
      if (t.exp[i] != 0) term *= power(i, t.exp[i]);
    out += term;
  }
  return out;
}

/// Checks the pairwise compatibility delta(x_i)(sigma(x_j) - x_j) = delta(x_j)(sigma(x_i) - x_i).
/// Returns the first offending pair, or {n, n} when compatible.
inline std::pair<std::size_t, std::size_t> find_incompatible_derivation(Field f, const EndoSpec& endo,
                                                                        const DerivSpec& deriv) {
  const std::size_t n = endo.nvars();
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) {
      BasePoly xi = BasePoly::variable(f, n, i), xj = BasePoly::variable(f, n, j);
      BasePoly lhs = deriv.images[i] * (endo.image(f, j) - xj);
      BasePoly rhs = deriv.images[j] * (endo.image(f, i) - xi);
      if (lhs != rhs) return {i, j};
    }
  return {n, n};
}

/// delta(p) for the unique skew-Leibniz extension of the generator images:
/// delta(x_i m) = sigma(x_i) delta(m) + delta(x_i) m.
inline BasePoly apply_derivation(const EndoSpec& endo, const DerivSpec& deriv, const BasePoly& p) {
  check_endo_arity(endo, p);
  const Field f = p.field();
  const std::size_t n = p.nvars();
  if (deriv.images.size() != n) throw DomainError("delta arity does not match the polynomial");
  if (find_incompatible_derivation(f, endo, deriv).first != n)
    throw ValidationError(ValidationError::Reason::IncompatibleDerivation,
                          "delta images violate the skew-Leibniz compatibility condition");
  if (deriv.is_zero()) return BasePoly(f, n);

  std::map<Exponents, BasePoly> memo;
  auto mono = [&](auto&& self, const Exponents& e) -> BasePoly {
    if (total_degree(e, n) == 0) return BasePoly(f, n);
    if (auto it = memo.find(e); it != memo.end()) return it->second;
    std::size_t i = 0;
    while (e[i] == 0) ++i;
    Exponents rest = e;
    --rest[i];
    BasePoly rest_poly = BasePoly::monomial(f, n, rest, Scalar(1));
    BasePoly r = endo.image(f, i) * self(self, rest) + deriv.images[i] * rest_poly;
    memo.emplace(e, r);
    return r;
  };
  BasePoly out(f, n);
  for (const auto& t : p.terms()) out += mono(mono, t.exp).scaled(t.coeff);
  return out;
}

enum class DenominatorStrategy { Product, Lcm };

/// A nonzero polynomial divisible by every input. The product strategy
/// multiplies the distinct monic denominators; Lcm needs a single variable.
inline BasePoly common_denominator(const std::vector<BasePoly>& dens,
                                   DenominatorStrategy strategy = DenominatorStrategy::Product) {
  if (dens.empty()) throw DomainError("common denominator of an empty set");
  const Field f = dens.front().field();
  const std::size_t n = dens.front().nvars();
  for (const auto& d : dens)
    if (d.is_zero()) throw DomainError("zero denominator");

  if (strategy == DenominatorStrategy::Lcm) {
    if (n != 1) throw DomainError("lcm strategy needs exactly one base variable");
    UPoly acc = UPoly::constant(f, Scalar(1));
    for (const auto& d : dens) acc = lcm(acc, UPoly::from_base(d));
    return acc.to_base();
  }

  std::vector<BasePoly> distinct;
  for (const auto& d : dens) {
    if (d.is_constant()) continue;
    BasePoly m = d.monic();
    bool seen = false;
    for (const auto& e : distinct) seen = seen || e == m;
    if (!seen) distinct.push_back(std::move(m));
  }
  BasePoly out = BasePoly::one(f, n);
  for (const auto& d : distinct) out *= d;
  return out;
}

}  // namespace oreform
