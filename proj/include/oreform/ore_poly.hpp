#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <memory>
#include <optional>
#include <utility>
#include <vector>

#include "oreform/algebra.hpp"
#include "oreform/base_poly.hpp"
#include "oreform/errors.hpp"
#include "oreform/field.hpp"

namespace oreform {

/// The degree of the zero polynomial; compares below every natural number.
inline constexpr long kMinusInfinity = std::numeric_limits<long>::min();

/// Element sum c * x^a * d^b of R* in x-left normal form.
///
/// Terms are sorted ascending under the d-elimination order of the owning
/// algebra, so the leading term is terms().back(). A default-constructed
/// OrePoly is a zero without an algebra and adopts the algebra of whatever it
/// is combined with.
class OrePoly {
 public:
  OrePoly() = default;
  explicit OrePoly(AlgebraPtr alg) : alg_(std::move(alg)) {}

  static OrePoly constant(AlgebraPtr a, const Scalar& c) { return monomial(std::move(a), Exponents{}, 0, c); }
  static OrePoly one(AlgebraPtr a) { return constant(std::move(a), Scalar(1)); }
  static OrePoly variable(AlgebraPtr a, std::size_t i) {
    if (i >= a->nvars()) throw DomainError("variable index out of range");
    return monomial(std::move(a), unit_exponent(i), 0, Scalar(1));
  }
  static OrePoly op(AlgebraPtr a, std::uint32_t power = 1) {
    return monomial(std::move(a), Exponents{}, power, Scalar(1));
  }
  static OrePoly monomial(AlgebraPtr a, const Exponents& e, std::uint32_t dpow, const Scalar& c) {
    OrePoly p(a);
    Scalar r = a->field().reduce(c);
    if (!oreform::is_zero(r)) p.terms_.push_back({e, dpow, std::move(r)});
    return p;
  }
  static OrePoly from_base(AlgebraPtr a, const BasePoly& b) {
    std::vector<OreTerm> t;
    t.reserve(b.size());
    for (const auto& bt : b.terms()) t.push_back({bt.exp, 0, bt.coeff});
    return from_terms(std::move(a), std::move(t));
  }
  static OrePoly from_terms(AlgebraPtr a, std::vector<OreTerm> terms) {
    a->normalize(terms);
    OrePoly p(std::move(a));
    p.terms_ = std::move(terms);
    return p;
  }

  const AlgebraPtr& algebra() const noexcept { return alg_; }
  const std::vector<OreTerm>& terms() const noexcept { return terms_; }
  std::size_t size() const noexcept { return terms_.size(); }
  bool is_zero() const noexcept { return terms_.empty(); }

  const OreTerm& leading() const {
    if (terms_.empty()) throw DomainError("leading term of zero polynomial");
    return terms_.back();
  }

  /// d-weighted degree; kMinusInfinity for zero.
  long degree() const noexcept { return terms_.empty() ? kMinusInfinity : static_cast<long>(terms_.back().dpow); }

  /// True when no term carries d (an element of the base ring).
  bool is_base() const noexcept { return terms_.empty() || terms_.back().dpow == 0; }

  bool is_constant() const noexcept {
    return terms_.empty() ||
           (terms_.size() == 1 && terms_[0].dpow == 0 && total_degree(terms_[0].exp, kMaxVars) == 0);
  }

  /// Coefficient of d^k as a base polynomial.
  BasePoly coefficient_of(std::uint32_t k) const {
    std::vector<BaseTerm> bt;
    for (const auto& t : terms_)
      if (t.dpow == k) bt.push_back({t.exp, t.coeff});
    return BasePoly::from_terms(alg_->field(), alg_->nvars(), std::move(bt));
  }

  BasePoly to_base() const {
    if (!is_base()) throw DomainError("polynomial involves the Ore variable");
    return coefficient_of(0);
  }

  OrePoly operator-() const {
    OrePoly r = *this;
    if (alg_)
      for (auto& t : r.terms_) t.coeff = alg_->field().neg(t.coeff);
    return r;
  }

  OrePoly operator+(const OrePoly& o) const { return combine(o, false); }
  OrePoly operator-(const OrePoly& o) const { return combine(o, true); }

  /// Ring product in R*: d^b x^a is rewritten with the cached expansions.
  OrePoly operator*(const OrePoly& o) const {
    const AlgebraPtr& a = check(o);
    if (is_zero() || o.is_zero()) return OrePoly(a);
    const Field f = a->field();
    std::vector<OreTerm> out;
    if (is_base() || (o.is_base() && a->spec().endo.is_identity() && a->spec().deriv.is_zero())) {
      out.reserve(terms_.size() * o.terms_.size());
      for (const auto& s : terms_)
        for (const auto& t : o.terms_)
          out.push_back({exponents_add(s.exp, t.exp), s.dpow + t.dpow, f.mul(s.coeff, t.coeff)});
      return from_terms(a, std::move(out));
    }
    for (const auto& s : terms_)
      for (const auto& t : o.terms_) {
        Scalar c = f.mul(s.coeff, t.coeff);
        for (const auto& e : a->expansion(s.dpow, t.exp))
          out.push_back({exponents_add(s.exp, e.exp), e.dpow + t.dpow, f.mul(c, e.coeff)});
      }
    return from_terms(a, std::move(out));
  }

  OrePoly& operator+=(const OrePoly& o) { return *this = *this + o; }
  OrePoly& operator-=(const OrePoly& o) { return *this = *this - o; }
  OrePoly& operator*=(const OrePoly& o) { return *this = *this * o; }

  OrePoly scaled(const Scalar& c) const {
    if (!alg_) return *this;
    const Field f = alg_->field();
    Scalar r = f.reduce(c);
    if (oreform::is_zero(r)) return OrePoly(alg_);
    OrePoly p = *this;
    if (f.is_rational() && r.get_den() == 1) {
      for (auto& t : p.terms_) {
        if (t.coeff.get_den() == 1) mpz_mul(t.coeff.get_num_mpz_t(), t.coeff.get_num_mpz_t(), r.get_num_mpz_t());
        else t.coeff = f.mul(t.coeff, r);
      }
      return p;
    }
    for (auto& t : p.terms_) t.coeff = f.mul(t.coeff, r);
    return p;
  }

  /// b * f for a base polynomial b (no rewriting needed: b sits left of every term).
  OrePoly mul_base_left(const BasePoly& b) const {
    if (is_zero() || b.is_zero()) return OrePoly(alg_);
    const Field f = alg_->field();
    std::vector<OreTerm> out;
    out.reserve(terms_.size() * b.size());
    for (const auto& bt : b.terms())
      for (const auto& t : terms_) out.push_back({exponents_add(bt.exp, t.exp), t.dpow, f.mul(bt.coeff, t.coeff)});
    return from_terms(alg_, std::move(out));
  }

  /// Scales so that the leading coefficient is 1.
  OrePoly monic() const {
    if (is_zero()) return *this;
    return scaled(alg_->field().inv(leading().coeff));
  }

  bool operator==(const OrePoly& o) const {
    if (terms_.size() != o.terms_.size()) return false;
    for (std::size_t i = 0; i < terms_.size(); ++i) {
      const auto& a = terms_[i];
      const auto& b = o.terms_[i];
      if (a.dpow != b.dpow || a.exp != b.exp || a.coeff != b.coeff) return false;
    }
    return true;
  }
  bool operator!=(const OrePoly& o) const { return !(*this == o); }

  /// Largest integer bit length after clearing denominators and content.
  std::size_t coeff_bits() const {
    if (is_zero()) return 0;
    std::vector<BaseTerm> bt;
    bt.reserve(terms_.size());
    for (const auto& t : terms_) bt.push_back({Exponents{}, t.coeff});
    // Exponents are irrelevant here; keep the terms apart by index.
    for (std::size_t i = 0; i < bt.size(); ++i) bt[i].exp[0] = static_cast<std::uint16_t>(i);
    return BasePoly::from_terms(alg_->field(), 1, std::move(bt)).primitive_bits();
  }

 private:
  const AlgebraPtr& check(const OrePoly& o) const {
    if (!alg_) {
      if (!o.alg_) throw DomainError("arithmetic on polynomials without an algebra");
      return o.alg_;
    }
    if (o.alg_ && o.alg_ != alg_ && !alg_->same_ring(*o.alg_))
      throw DomainError("Ore polynomials over different algebras");
    return alg_;
  }

  OrePoly combine(const OrePoly& o, bool subtract) const {
    const AlgebraPtr& a = check(o);
    const Field f = a->field();
    OrePoly r(a);
    r.terms_.reserve(terms_.size() + o.terms_.size());
    std::size_t i = 0, j = 0;
    auto other = [&](const OreTerm& t) { r.terms_.push_back({t.exp, t.dpow, subtract ? f.neg(t.coeff) : t.coeff}); };
    while (i < terms_.size() || j < o.terms_.size()) {
      if (j == o.terms_.size()) {
        r.terms_.push_back(terms_[i++]);
      } else if (i == terms_.size()) {
        other(o.terms_[j++]);
      } else {
        int c = a->compare(terms_[i], o.terms_[j]);
        if (c < 0) {
          r.terms_.push_back(terms_[i++]);
        } else if (c > 0) {
          other(o.terms_[j++]);
        } else {
          Scalar s = subtract ? f.sub(terms_[i].coeff, o.terms_[j].coeff) : f.add(terms_[i].coeff, o.terms_[j].coeff);
          if (!oreform::is_zero(s)) r.terms_.push_back({terms_[i].exp, terms_[i].dpow, std::move(s)});
          ++i;
          ++j;
        }
      }
    }
    return r;
  }

  AlgebraPtr alg_;
  std::vector<OreTerm> terms_;
};

/// Leading monomial (coefficient 1), leading coefficient and d-degree.
struct LeadingData {
  Exponents exp{};
  std::uint32_t dpow = 0;
  Scalar lc;
  long degree = 0;
};

inline LeadingData leading_data(const OrePoly& f) {
  if (f.is_zero()) throw DomainError("leading data of the zero polynomial");
  const OreTerm& t = f.leading();
  return {t.exp, t.dpow, t.coeff, static_cast<long>(t.dpow)};
}

inline OrePoly ore_mul(const OrePoly& f, const OrePoly& g) { return f * g; }

/// g^-1 * f when every d-coefficient of f is divisible by g.
inline std::optional<OrePoly> divide_by_base(const OrePoly& f, const BasePoly& g) {
  if (f.is_zero()) return f;
  std::vector<OreTerm> out;
  for (std::uint32_t k = 0; k <= f.leading().dpow; ++k) {
    BasePoly c = f.coefficient_of(k);
    if (c.is_zero()) continue;
    auto q = c.divide_exact(g);
    if (!q) return std::nullopt;
    for (const auto& t : q->terms()) out.push_back({t.exp, k, t.coeff});
  }
  return OrePoly::from_terms(f.algebra(), std::move(out));
}

}  // namespace oreform
