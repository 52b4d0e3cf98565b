#pragma once

#include <algorithm>
#include <cstddef>
#include <optional>
#include <utility>
#include <vector>

#include "oreform/base_poly.hpp"
#include "oreform/errors.hpp"
#include "oreform/field.hpp"

namespace oreform {

/// Dense univariate polynomial over K, coefficients stored low to high.
/// The coefficient vector never ends in a zero.
class UPoly {
 public:
  UPoly() = default;
  explicit UPoly(Field f) : field_(f) {}
  UPoly(Field f, std::vector<Scalar> coeffs) : field_(f), c_(std::move(coeffs)) {
    for (auto& v : c_) v = field_.reduce(v);
    trim();
  }

  static UPoly constant(Field f, const Scalar& v) { return UPoly(f, {v}); }
  static UPoly x(Field f) { return UPoly(f, {Scalar(0), Scalar(1)}); }

  static UPoly from_base(const BasePoly& p) {
    if (p.nvars() != 1) throw DomainError("univariate conversion needs exactly one base variable");
    UPoly r(p.field());
    for (const auto& t : p.terms()) {
      std::size_t e = t.exp[0];
      if (r.c_.size() <= e) r.c_.resize(e + 1, Scalar(0));
      r.c_[e] = t.coeff;
    }
    r.trim();
    return r;
  }

  BasePoly to_base() const {
    std::vector<BaseTerm> terms;
    for (std::size_t i = 0; i < c_.size(); ++i) {
      if (oreform::is_zero(c_[i])) continue;
      Exponents e{};
      e[0] = static_cast<std::uint16_t>(i);
      terms.push_back({e, c_[i]});
    }
    return BasePoly::from_terms(field_, 1, std::move(terms));
  }

  Field field() const noexcept { return field_; }
  const std::vector<Scalar>& coeffs() const noexcept { return c_; }
  bool is_zero() const noexcept { return c_.empty(); }
  bool is_constant() const noexcept { return c_.size() <= 1; }
  bool is_one() const { return c_.size() == 1 && c_[0] == 1; }
  /// Degree; the zero polynomial reports -1.
  long degree() const noexcept { return static_cast<long>(c_.size()) - 1; }
  const Scalar& lc() const {
    if (c_.empty()) throw DomainError("leading coefficient of zero polynomial");
    return c_.back();
  }

  UPoly operator-() const {
    UPoly r = *this;
    for (auto& v : r.c_) v = field_.neg(v);
    return r;
  }

  UPoly operator+(const UPoly& o) const {
    UPoly r(field_);
    r.c_.resize(std::max(c_.size(), o.c_.size()), Scalar(0));
    for (std::size_t i = 0; i < r.c_.size(); ++i) {
      const Scalar a = i < c_.size() ? c_[i] : Scalar(0);
      const Scalar b = i < o.c_.size() ? o.c_[i] : Scalar(0);
      r.c_[i] = field_.add(a, b);
    }
    r.trim();
    return r;
  }

  UPoly operator-(const UPoly& o) const { return *this + (-o); }

  UPoly operator*(const UPoly& o) const {
    if (is_zero() || o.is_zero()) return UPoly(field_);
    UPoly r(field_);
    r.c_.assign(c_.size() + o.c_.size() - 1, Scalar(0));
    for (std::size_t i = 0; i < c_.size(); ++i) {
      if (oreform::is_zero(c_[i])) continue;
      for (std::size_t j = 0; j < o.c_.size(); ++j)
        r.c_[i + j] = field_.add(r.c_[i + j], field_.mul(c_[i], o.c_[j]));
    }
    r.trim();
    return r;
  }

  UPoly scaled(const Scalar& s) const {
    UPoly r = *this;
    for (auto& v : r.c_) v = field_.mul(v, s);
    r.trim();
    return r;
  }

  UPoly monic() const { return is_zero() ? *this : scaled(field_.inv(lc())); }

  bool operator==(const UPoly& o) const { return c_ == o.c_; }
  bool operator!=(const UPoly& o) const { return !(*this == o); }

  /// Euclidean division: *this = q * d + r with deg r < deg d.
  std::pair<UPoly, UPoly> divmod(const UPoly& d) const {
    if (d.is_zero()) throw DomainError("polynomial division by zero");
    UPoly q(field_), r = *this;
    if (r.degree() < d.degree()) return {q, r};
    q.c_.assign(static_cast<std::size_t>(r.degree() - d.degree() + 1), Scalar(0));
    const Scalar inv = field_.inv(d.lc());
    while (!r.is_zero() && r.degree() >= d.degree()) {
      const std::size_t shift = static_cast<std::size_t>(r.degree() - d.degree());
      const Scalar f = field_.mul(r.lc(), inv);
      q.c_[shift] = f;
      for (std::size_t j = 0; j < d.c_.size(); ++j)
        r.c_[shift + j] = field_.sub(r.c_[shift + j], field_.mul(f, d.c_[j]));
      r.trim();
    }
    q.trim();
    return {q, r};
  }

  /// Composition with an affine map: p(u*x + v).
  UPoly compose_affine(const Scalar& u, const Scalar& v) const {
    UPoly lin(field_, {v, u});
    UPoly r(field_);
    for (std::size_t i = c_.size(); i-- > 0;) r = r * lin + constant(field_, c_[i]);
    return r;
  }

 private:
  void trim() {
    while (!c_.empty() && oreform::is_zero(c_.back())) c_.pop_back();
  }

  Field field_;
  std::vector<Scalar> c_;
};

namespace detail {

/// Dense integer polynomial, low to high, no trailing zeros.
using ZPoly = std::vector<mpz_class>;

inline void ztrim(ZPoly& p) {
  while (!p.empty() && p.back() == 0) p.pop_back();
}

inline mpz_class zcontent(const ZPoly& p) {
  mpz_class g = 0;
  for (const auto& c : p) {
    mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), c.get_mpz_t());
    if (g == 1) break;
  }
  return g;
}

/// Primitive part with positive leading coefficient.
inline void zprimitive(ZPoly& p) {
  ztrim(p);
  if (p.empty()) return;
  mpz_class g = zcontent(p);
  if (p.back() < 0) g = -g;
  if (g != 1)
    for (auto& c : p) mpz_divexact(c.get_mpz_t(), c.get_mpz_t(), g.get_mpz_t());
}

inline ZPoly to_zpoly(const UPoly& p) {
  mpz_class l = 1;
  for (const auto& c : p.coeffs()) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), c.get_den().get_mpz_t());
  ZPoly z;
  z.reserve(p.coeffs().size());
  for (const auto& c : p.coeffs()) z.push_back(c.get_num() * (l / c.get_den()));
  zprimitive(z);
  return z;
}

/// True when d divides a in Z[x].
inline bool zdivides(const ZPoly& d, ZPoly a) {
  const std::size_t n = d.size();
  mpz_class q, r;
  while (a.size() >= n) {
    mpz_fdiv_qr(q.get_mpz_t(), r.get_mpz_t(), a.back().get_mpz_t(), d.back().get_mpz_t());
    if (r != 0) return false;
    const std::size_t shift = a.size() - n;
    for (std::size_t j = 0; j < n; ++j) a[shift + j] -= q * d[j];
    ztrim(a);
  }
  return a.empty();
}

inline mpz_class zmaxnorm(const ZPoly& p) {
  mpz_class m = 0;
  for (const auto& c : p)
    if (abs(c) > m) m = abs(c);
  return m;
}

/// Heuristic gcd: evaluate at a large integer, take the integer gcd and read
/// the answer back in the symmetric xi-adic expansion.
inline std::optional<ZPoly> zgcd_heuristic(const ZPoly& a, const ZPoly& b) {
  mpz_class xi = 2 * std::min(zmaxnorm(a), zmaxnorm(b)) + 29;
  for (int attempt = 0; attempt < 6; ++attempt) {
    auto eval = [&](const ZPoly& p) {
      mpz_class v = 0;
      for (std::size_t i = p.size(); i-- > 0;) v = v * xi + p[i];
      return v;
    };
    mpz_class h;
    mpz_class ea = eval(a), eb = eval(b);
    mpz_gcd(h.get_mpz_t(), ea.get_mpz_t(), eb.get_mpz_t());
    ZPoly g;
    const mpz_class half = xi / 2;
    while (h != 0) {
      mpz_class c;
      mpz_fdiv_r(c.get_mpz_t(), h.get_mpz_t(), xi.get_mpz_t());
      if (c > half) c -= xi;
      g.push_back(c);
      h = (h - c) / xi;
    }
    zprimitive(g);
    if (!g.empty() && zdivides(g, a) && zdivides(g, b)) return g;
    xi = xi * 73794 / 27011;
  }
  return std::nullopt;
}

/// Primitive remainder sequence.
inline ZPoly zgcd_prs(ZPoly a, ZPoly b) {
  if (a.size() < b.size()) std::swap(a, b);
  while (!b.empty()) {
    // pseudo-remainder of a by b
    const std::size_t n = b.size();
    while (a.size() >= n) {
      const mpz_class la = a.back(), lb = b.back();
      const std::size_t shift = a.size() - n;
      for (auto& c : a) c *= lb;
      for (std::size_t j = 0; j < n; ++j) a[shift + j] -= la * b[j];
      ztrim(a);
      zprimitive(a);
    }
    std::swap(a, b);
  }
  zprimitive(a);
  return a;
}

}  // namespace detail

/// Monic greatest common divisor (zero only when both inputs are zero).
inline UPoly gcd(UPoly a, UPoly b) {
  if (a.is_zero()) return b.monic();
  if (b.is_zero()) return a.monic();
  const Field f = a.field();
  if (a.is_constant() || b.is_constant()) return UPoly::constant(f, Scalar(1));
  if (f.is_rational()) {
    detail::ZPoly za = detail::to_zpoly(a), zb = detail::to_zpoly(b);
    std::optional<detail::ZPoly> g = detail::zgcd_heuristic(za, zb);
    if (!g) g = detail::zgcd_prs(std::move(za), std::move(zb));
    std::vector<Scalar> c;
    c.reserve(g->size());
    for (auto& z : *g) c.emplace_back(z);
    return UPoly(f, std::move(c)).monic();
  }
  while (!b.is_zero()) {
    UPoly r = a.divmod(b).second.monic();
    a = std::move(b);
    b = std::move(r);
  }
  return a.monic();
}

inline UPoly lcm(const UPoly& a, const UPoly& b) {
  if (a.is_zero() || b.is_zero()) return UPoly(a.field());
  return (a * b).divmod(gcd(a, b)).first.monic();
}

}  // namespace oreform
