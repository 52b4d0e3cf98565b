#pragma once

#include <cstddef>
#include <string>
#include <utility>
#include <vector>

#include "oreform/algebra.hpp"
#include "oreform/errors.hpp"
#include "oreform/matrix.hpp"
#include "oreform/ore_poly.hpp"

namespace oreform {

namespace detail {

inline OrePoly involution_var(const AlgebraPtr& a, std::size_t i) {
  return OrePoly::from_terms(a, a->spec().involution->var_images.at(i));
}

inline OrePoly involution_op(const AlgebraPtr& a) { return OrePoly::from_terms(a, a->spec().involution->op_image); }

}  // namespace detail

/// theta(f) for the algebra's involution: theta(x^a d^b) = theta(d)^b theta(x)^a.
inline OrePoly apply_theta(const OrePoly& f) {
  if (f.is_zero()) return f;
  const AlgebraPtr& a = f.algebra();
  if (!a->has_involution()) throw ValidationError(ValidationError::Reason::BadInvolution, "algebra has no involution");
  const std::size_t n = a->nvars();
  std::vector<OrePoly> tx;
  for (std::size_t i = 0; i < n; ++i) tx.push_back(detail::involution_var(a, i));
  const OrePoly td = detail::involution_op(a);
  std::vector<std::vector<OrePoly>> xpow(n), dpow(1);
  auto power = [](std::vector<OrePoly>& tab, const OrePoly& base, std::size_t e) -> const OrePoly& {
    if (tab.empty()) tab.push_back(OrePoly::one(base.algebra()));
    while (tab.size() <= e) tab.push_back(tab.back() * base);
    return tab[e];
  };
  OrePoly out(a);
  for (const auto& t : f.terms()) {
    OrePoly x = OrePoly::constant(a, t.coeff);
    for (std::size_t i = 0; i < n; ++i)
      if (t.exp[i] != 0) x = x * power(xpow[i], tx[i], t.exp[i]);
    out += power(dpow[0], td, t.dpow) * x;
  }
  return out;
}

/// Checks that the stored images define an involutive anti-automorphism.
inline void validate_involution(const AlgebraPtr& a) {
  if (!a->has_involution()) return;
  const auto& inv = *a->spec().involution;
  const std::size_t n = a->nvars();
  const auto& names = a->spec().vars;
  auto fail = [&](const std::string& what, std::size_t i, std::size_t j) {
    throw ValidationError(ValidationError::Reason::BadInvolution, "involution: " + what, i, j);
  };
  if (inv.var_images.size() != n) fail("expected one image per base variable", n, n);
  for (std::size_t i = 0; i < n; ++i) {
    for (const auto& t : inv.var_images[i])
      if (t.dpow > 1 || total_degree(t.exp, n) > 1) fail("image of " + names[i] + " is not linear", i, n);
  }
  for (const auto& t : inv.op_image)
    if (t.dpow > 1 || total_degree(t.exp, n) > 1) fail("image of " + a->spec().op + " is not linear", n, n);

  const OrePoly d = OrePoly::op(a);
  const OrePoly td = detail::involution_op(a);
  if (td.is_zero()) fail("image of " + a->spec().op + " is zero", n, n);
  for (std::size_t i = 0; i < n; ++i) {
    const OrePoly x = OrePoly::variable(a, i);
    const OrePoly tx = detail::involution_var(a, i);
    if (apply_theta(tx) != x) fail("theta^2 != id on " + names[i], i, i);
    for (std::size_t j = i + 1; j < n; ++j) {
      const OrePoly ty = detail::involution_var(a, j);
      if (tx * ty != ty * tx) fail("images of " + names[i] + " and " + names[j] + " do not commute", i, j);
    }
    // theta(d x) must equal theta(x) theta(d).
    if (apply_theta(d * x) != tx * td) fail("relation for " + names[i] + " is not reversed", i, n);
  }
  if (apply_theta(td) != d) fail("theta^2 != id on " + a->spec().op, n, n);
}

/// Builds and fully validates an algebra, including its involution.
inline AlgebraPtr make_algebra(AlgebraSpec spec) {
  AlgebraPtr a = OreAlgebra::create(std::move(spec));
  validate_involution(a);
  return a;
}

/// M -> theta(M)^T.
inline OreMatrix apply_involution(const OreMatrix& m) {
  if (!m.algebra()->has_involution())
    throw ValidationError(ValidationError::Reason::BadInvolution, "no involution available for this algebra");
  OreMatrix r(m.algebra(), m.cols(), m.rows());
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) r(j, i) = apply_theta(m(i, j));
  return r;
}

/// Re-reads f (normal form in its algebra) as an element of the opposite algebra.
inline OrePoly to_opposite(const OrePoly& f, const AlgebraPtr& op) {
  const Field fld = op->field();
  std::vector<OreTerm> out;
  for (const auto& t : f.terms())
    for (const auto& e : op->expansion(t.dpow, t.exp)) out.push_back({e.exp, e.dpow, fld.mul(t.coeff, e.coeff)});
  return OrePoly::from_terms(op, std::move(out));
}

/// Transposes M and moves it to the opposite algebra.
inline std::pair<AlgebraPtr, OreMatrix> opposite_transport(const OreMatrix& m) {
  AlgebraPtr op = m.algebra()->opposite();
  OreMatrix r(op, m.cols(), m.rows());
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) r(j, i) = to_opposite(m(i, j), op);
  return {op, r};
}

enum class SideSwap { Involution, Opposite };

inline std::string side_swap_name(SideSwap s) { return s == SideSwap::Involution ? "involution" : "opposite"; }

/// The mechanism used for left/right swaps: the involution when known.
inline SideSwap side_swap_for(const OreAlgebra& a) {
  return a.has_involution() ? SideSwap::Involution : SideSwap::Opposite;
}

/// theta~ : swaps the side of a matrix with the chosen mechanism.
inline OreMatrix side_swap(const OreMatrix& m, SideSwap s) {
  return s == SideSwap::Involution ? apply_involution(m) : opposite_transport(m).second;
}

}  // namespace oreform
