#pragma once

#include <algorithm>
#include <array>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "oreform/errors.hpp"
#include "oreform/field.hpp"

namespace oreform {

/// Upper bound on the number of commutative base variables x_1..x_n.
inline constexpr std::size_t kMaxVars = 8;

/// Dense exponent vector; entries beyond the ring's variable count stay zero.
using Exponents = std::array<std::uint16_t, kMaxVars>;

/// Tie-break between base monomials of equal Ore degree. Variables are ranked
/// x_n > ... > x_1, i.e. the last declared variable is the largest.
enum class TieBreak { Grevlex, Lex };

inline unsigned total_degree(const Exponents& e, std::size_t n) {
  unsigned d = 0;
  for (std::size_t i = 0; i < n; ++i) d += e[i];
  return d;
}

/// Three-way comparison of base monomials: negative, zero or positive.
inline int compare_exponents(const Exponents& a, const Exponents& b, std::size_t n,
                             TieBreak tb = TieBreak::Grevlex) {
  if (tb == TieBreak::Grevlex) {
    unsigned da = total_degree(a, n), db = total_degree(b, n);
    if (da != db) return da < db ? -1 : 1;
    // Reverse lexicographic: the smallest variable x_1 decides first, and a
    // smaller exponent there means a larger monomial.
    for (std::size_t i = 0; i < n; ++i)
      if (a[i] != b[i]) return a[i] < b[i] ? 1 : -1;
    return 0;
  }
  for (std::size_t i = n; i-- > 0;)
    if (a[i] != b[i]) return a[i] < b[i] ? -1 : 1;
  return 0;
}

inline bool exponents_divide(const Exponents& a, const Exponents& b, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i)
    if (a[i] > b[i]) return false;
  return true;
}

inline Exponents exponents_add(const Exponents& a, const Exponents& b) {
  Exponents r{};
  for (std::size_t i = 0; i < kMaxVars; ++i) r[i] = static_cast<std::uint16_t>(a[i] + b[i]);
  return r;
}

inline Exponents exponents_sub(const Exponents& a, const Exponents& b) {
  Exponents r{};
  for (std::size_t i = 0; i < kMaxVars; ++i) r[i] = static_cast<std::uint16_t>(a[i] - b[i]);
  return r;
}

inline Exponents exponents_lcm(const Exponents& a, const Exponents& b) {
  Exponents r{};
  for (std::size_t i = 0; i < kMaxVars; ++i) r[i] = std::max(a[i], b[i]);
  return r;
}

inline Exponents unit_exponent(std::size_t i) {
  Exponents e{};
  e[i] = 1;
  return e;
}

struct BaseTerm {
  Exponents exp{};
  Scalar coeff;
};

/// Element of the commutative base ring K[x_1..x_n].
///
/// Terms are kept sorted ascending under graded reverse lexicographic order,
/// so the leading term is terms().back(). No stored coefficient is zero.
class BasePoly {
 public:
  BasePoly() = default;
  BasePoly(Field field, std::size_t nvars) : field_(field), nvars_(nvars) {
    if (nvars > kMaxVars)
      throw DomainError("at most " + std::to_string(kMaxVars) + " base variables are supported");
  }

  static BasePoly constant(Field f, std::size_t n, const Scalar& c) {
    return monomial(f, n, Exponents{}, c);
  }

  static BasePoly one(Field f, std::size_t n) { return constant(f, n, Scalar(1)); }

  static BasePoly variable(Field f, std::size_t n, std::size_t i) {
    if (i >= n) throw DomainError("variable index out of range");
    return monomial(f, n, unit_exponent(i), Scalar(1));
  }

  static BasePoly monomial(Field f, std::size_t n, const Exponents& e, const Scalar& c) {
    BasePoly p(f, n);
    Scalar r = f.reduce(c);
    if (!oreform::is_zero(r)) p.terms_.push_back({e, std::move(r)});
    return p;
  }

  /// Builds a polynomial from unsorted terms, merging duplicates.
  static BasePoly from_terms(Field f, std::size_t n, std::vector<BaseTerm> terms) {
    BasePoly p(f, n);
    p.terms_ = std::move(terms);
    p.canonicalize();
    return p;
  }

  Field field() const noexcept { return field_; }
  std::size_t nvars() const noexcept { return nvars_; }
  const std::vector<BaseTerm>& terms() const noexcept { return terms_; }
  std::size_t size() const noexcept { return terms_.size(); }

  bool is_zero() const noexcept { return terms_.empty(); }
  bool is_constant() const noexcept {
    return terms_.empty() || (terms_.size() == 1 && oreform::total_degree(terms_[0].exp, nvars_) == 0);
  }
  bool is_one() const { return is_constant() && !is_zero() && terms_[0].coeff == 1; }

  const BaseTerm& leading() const {
    if (terms_.empty()) throw DomainError("leading term of zero polynomial");
    return terms_.back();
  }

  unsigned total_degree() const { return terms_.empty() ? 0 : oreform::total_degree(leading().exp, nvars_); }

  unsigned degree_in(std::size_t i) const {
    unsigned d = 0;
    for (const auto& t : terms_) d = std::max<unsigned>(d, t.exp[i]);
    return d;
  }

  Scalar coefficient(const Exponents& e) const {
    for (const auto& t : terms_)
      if (t.exp == e) return t.coeff;
    return Scalar(0);
  }

  BasePoly operator-() const {
    BasePoly r = *this;
    for (auto& t : r.terms_) t.coeff = field_.neg(t.coeff);
    return r;
  }

  BasePoly operator+(const BasePoly& o) const { return combine(o, false); }
  BasePoly operator-(const BasePoly& o) const { return combine(o, true); }

  BasePoly operator*(const BasePoly& o) const {
    check_compatible(o);
    if (is_zero() || o.is_zero()) return BasePoly(field_, nvars_);
    std::vector<BaseTerm> out;
    out.reserve(terms_.size() * o.terms_.size());
    for (const auto& a : terms_)
      for (const auto& b : o.terms_) out.push_back({exponents_add(a.exp, b.exp), field_.mul(a.coeff, b.coeff)});
    return from_terms(field_, nvars_, std::move(out));
  }

  BasePoly& operator+=(const BasePoly& o) { return *this = *this + o; }
  BasePoly& operator-=(const BasePoly& o) { return *this = *this - o; }
  BasePoly& operator*=(const BasePoly& o) { return *this = *this * o; }

  BasePoly scaled(const Scalar& c) const {
    Scalar r = field_.reduce(c);
    if (oreform::is_zero(r)) return BasePoly(field_, nvars_);
    BasePoly p = *this;
    for (auto& t : p.terms_) t.coeff = field_.mul(t.coeff, r);
    return p;
  }

  BasePoly mul_monomial(const Exponents& e) const {
    BasePoly p = *this;
    for (auto& t : p.terms_) t.exp = exponents_add(t.exp, e);
    return p;
  }

  BasePoly pow(unsigned e) const {
    BasePoly r = one(field_, nvars_), b = *this;
    while (e != 0) {
      if (e & 1U) r *= b;
      e >>= 1;
      if (e != 0) b *= b;
    }
    return r;
  }

  /// Leading coefficient scaled to 1.
  BasePoly monic() const {
    if (is_zero()) return *this;
    return scaled(field_.inv(leading().coeff));
  }

  /// Exact quotient *this / d, or nullopt when d does not divide *this.
  std::optional<BasePoly> divide_exact(const BasePoly& d) const {
    check_compatible(d);
    if (d.is_zero()) throw DomainError("division by the zero polynomial");
    BasePoly q(field_, nvars_), r = *this;
    const BaseTerm& ld = d.leading();
    Scalar inv_lc = field_.inv(ld.coeff);
    std::vector<BaseTerm> qterms;
    while (!r.is_zero()) {
      const BaseTerm& lr = r.leading();
      if (!exponents_divide(ld.exp, lr.exp, nvars_)) return std::nullopt;
      BaseTerm t{exponents_sub(lr.exp, ld.exp), field_.mul(lr.coeff, inv_lc)};
      r -= d.mul_monomial(t.exp).scaled(t.coeff);
      qterms.push_back(std::move(t));
    }
    return from_terms(field_, nvars_, std::move(qterms));
  }

  bool operator==(const BasePoly& o) const {
    if (nvars_ != o.nvars_ || terms_.size() != o.terms_.size()) return false;
    for (std::size_t i = 0; i < terms_.size(); ++i)
      if (terms_[i].exp != o.terms_[i].exp || terms_[i].coeff != o.terms_[i].coeff) return false;
    return true;
  }
  bool operator!=(const BasePoly& o) const { return !(*this == o); }

  /// Largest bit length among integer coefficients after clearing
  /// denominators and removing the integer content.
  std::size_t primitive_bits() const {
    if (is_zero()) return 0;
    if (!field_.is_rational()) {
      std::size_t b = 0;
      for (const auto& t : terms_) b = std::max(b, scalar_bits(t.coeff));
      return b;
    }
    mpz_class l = 1, g = 0;
    for (const auto& t : terms_) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), t.coeff.get_den().get_mpz_t());
    std::vector<mpz_class> ints;
    for (const auto& t : terms_) {
      mpz_class v = t.coeff.get_num() * (l / t.coeff.get_den());
      mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), v.get_mpz_t());
      ints.push_back(std::move(v));
    }
    std::size_t b = 0;
    for (auto& v : ints) {
      v /= g;
      b = std::max<std::size_t>(b, mpz_sizeinbase(v.get_mpz_t(), 2));
    }
    return b;
  }

 private:
  void check_compatible(const BasePoly& o) const {
    if (nvars_ != o.nvars_ || !(field_ == o.field_))
      throw DomainError("base polynomials over different rings");
  }

  BasePoly combine(const BasePoly& o, bool subtract) const {
    check_compatible(o);
    BasePoly r(field_, nvars_);
    r.terms_.reserve(terms_.size() + o.terms_.size());
    std::size_t i = 0, j = 0;
    auto take_other = [&](const BaseTerm& t) {
      r.terms_.push_back({t.exp, subtract ? field_.neg(t.coeff) : t.coeff});
    };
    while (i < terms_.size() || j < o.terms_.size()) {
      if (j == o.terms_.size()) {
        r.terms_.push_back(terms_[i++]);
      } else if (i == terms_.size()) {
        take_other(o.terms_[j++]);
      } else {
        int c = compare_exponents(terms_[i].exp, o.terms_[j].exp, nvars_);
        if (c < 0) {
          r.terms_.push_back(terms_[i++]);
        } else if (c > 0) {
          take_other(o.terms_[j++]);
        } else {
          Scalar s = subtract ? field_.sub(terms_[i].coeff, o.terms_[j].coeff)
                              : field_.add(terms_[i].coeff, o.terms_[j].coeff);
          if (!oreform::is_zero(s)) r.terms_.push_back({terms_[i].exp, std::move(s)});
          ++i;
          ++j;
        }
      }
    }
    return r;
  }

  void canonicalize() {
    const std::size_t n = nvars_;
    std::sort(terms_.begin(), terms_.end(), [n](const BaseTerm& a, const BaseTerm& b) {
      return compare_exponents(a.exp, b.exp, n) < 0;
    });
    std::vector<BaseTerm> out;
    out.reserve(terms_.size());
    for (auto& t : terms_) {
      if (!field_.is_rational()) t.coeff = field_.reduce(t.coeff);
      if (!out.empty() && out.back().exp == t.exp) {
        out.back().coeff = field_.add(out.back().coeff, t.coeff);
      } else {
        if (!out.empty() && oreform::is_zero(out.back().coeff)) out.pop_back();
        out.push_back({t.exp, std::move(t.coeff)});
      }
    }
    if (!out.empty() && oreform::is_zero(out.back().coeff)) out.pop_back();
    terms_ = std::move(out);
  }

  Field field_;
  std::size_t nvars_ = 0;
  std::vector<BaseTerm> terms_;
};

}  // namespace oreform
