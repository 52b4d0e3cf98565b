#pragma once

#include <algorithm>
#include <cstddef>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "oreform/coeff_core.hpp"
#include "oreform/errors.hpp"
#include "oreform/format.hpp"
#include "oreform/involution.hpp"
#include "oreform/matrix.hpp"
#include "oreform/parser.hpp"
#include "oreform/upoly.hpp"

namespace oreform {

/// Element of K(x): num / den with den monic and gcd(num, den) = 1.
class RatFunc {
 public:
  RatFunc() = default;
  explicit RatFunc(Field f) : num_(f), den_(UPoly::constant(f, Scalar(1))) {}
  RatFunc(UPoly num, UPoly den) : num_(std::move(num)), den_(std::move(den)) { normalize(); }

  static RatFunc constant(Field f, const Scalar& c) { return RatFunc(UPoly::constant(f, c), UPoly::constant(f, Scalar(1))); }
  static RatFunc poly(const UPoly& p) { return RatFunc(p, UPoly::constant(p.field(), Scalar(1))); }

  Field field() const { return num_.field(); }
  const UPoly& num() const noexcept { return num_; }
  const UPoly& den() const noexcept { return den_; }
  bool is_zero() const noexcept { return num_.is_zero(); }
  bool is_one() const { return num_.is_one() && den_.is_one(); }
  bool is_polynomial() const { return den_.is_one(); }

  RatFunc operator+(const RatFunc& o) const {
    if (den_ == o.den_) return RatFunc(num_ + o.num_, den_);
    return RatFunc(num_ * o.den_ + o.num_ * den_, den_ * o.den_);
  }
  RatFunc operator-() const { return RatFunc(-num_, den_); }
  RatFunc operator-(const RatFunc& o) const { return *this + (-o); }
  RatFunc operator*(const RatFunc& o) const {
    if (is_zero() || o.is_zero()) return RatFunc(field());
    return RatFunc(num_ * o.num_, den_ * o.den_);
  }
  RatFunc inv() const {
    if (is_zero()) throw DomainError("inverse of zero rational function");
    return RatFunc(den_, num_);
  }
  RatFunc operator/(const RatFunc& o) const { return *this * o.inv(); }

  bool operator==(const RatFunc& o) const { return num_ == o.num_ && den_ == o.den_; }
  bool operator!=(const RatFunc& o) const { return !(*this == o); }

 private:
  void normalize() {
    if (den_.is_zero()) throw DomainError("zero denominator");
    if (num_.is_zero()) {
      den_ = UPoly::constant(num_.field(), Scalar(1));
      return;
    }
    UPoly g = gcd(num_, den_);
    if (!g.is_one()) {
      num_ = num_.divmod(g).first;
      den_ = den_.divmod(g).first;
    }
    Scalar c = den_.lc();
    if (c != 1) {
      Scalar ci = den_.field().inv(c);
      num_ = num_.scaled(ci);
      den_ = den_.scaled(ci);
    }
  }

  UPoly num_, den_;
};

namespace detail {

inline void require_univariate(const OreAlgebra& a) {
  if (a.nvars() != 1) throw DomainError("rational coefficients need exactly one base variable");
}

inline UPoly endo_apply(const EndoSpec& e, const UPoly& p) { return p.compose_affine(e.u[0], e.v[0]); }

inline std::size_t ratfunc_bits(const RatFunc& r) {
  std::size_t b = 0;
  for (const UPoly* p : {&r.num(), &r.den()})
    for (const auto& c : p->coeffs()) b = std::max(b, scalar_bits(c));
  return b;
}

}  // namespace detail

inline RatFunc rat_sigma(const AlgebraSpec& s, const RatFunc& r) {
  if (s.nvars() != 1) throw DomainError("rational coefficients need exactly one base variable");
  return RatFunc(detail::endo_apply(s.endo, r.num()), detail::endo_apply(s.endo, r.den()));
}

inline RatFunc rat_sigma_inverse(const AlgebraSpec& s, const RatFunc& r) {
  EndoSpec inv = s.endo.inverse(s.field);
  return RatFunc(detail::endo_apply(inv, r.num()), detail::endo_apply(inv, r.den()));
}

/// sigma and delta on K(x), via the quotient rule
/// delta(p/q) = (delta(p) q - delta(q) p) / (sigma(q) q).
inline std::pair<RatFunc, RatFunc> rat_sigma_delta(const AlgebraSpec& s, const RatFunc& r) {
  if (s.nvars() != 1) throw DomainError("rational coefficients need exactly one base variable");
  RatFunc sig = rat_sigma(s, r);
  if (r.is_zero()) return {sig, r};
  auto d = [&](const UPoly& p) { return UPoly::from_base(apply_derivation(s.endo, s.deriv, p.to_base())); };
  const UPoly& p = r.num();
  const UPoly& q = r.den();
  UPoly top = d(p) * q - d(q) * p;
  UPoly bottom = detail::endo_apply(s.endo, q) * q;
  return {sig, RatFunc(top, bottom)};
}

/// Element of K(x)[d; sigma, delta]; coefficient k belongs to d^k.
class RatOrePoly {
 public:
  RatOrePoly() = default;
  explicit RatOrePoly(AlgebraPtr a) : alg_(std::move(a)) { detail::require_univariate(*alg_); }
  RatOrePoly(AlgebraPtr a, std::vector<RatFunc> c) : alg_(std::move(a)), c_(std::move(c)) {
    detail::require_univariate(*alg_);
    trim();
  }

  static RatOrePoly constant(const AlgebraPtr& a, const RatFunc& r) { return RatOrePoly(a, {r}); }
  static RatOrePoly one(const AlgebraPtr& a) { return constant(a, RatFunc::constant(a->field(), Scalar(1))); }
  static RatOrePoly op(const AlgebraPtr& a, std::size_t k = 1) {
    std::vector<RatFunc> c(k + 1, RatFunc(a->field()));
    c[k] = RatFunc::constant(a->field(), Scalar(1));
    return RatOrePoly(a, std::move(c));
  }
  static RatOrePoly variable(const AlgebraPtr& a) { return constant(a, RatFunc::poly(UPoly::x(a->field()))); }

  static RatOrePoly from_ore(const OrePoly& f) {
    RatOrePoly r(f.algebra());
    if (f.is_zero()) return r;
    r.c_.assign(static_cast<std::size_t>(f.degree()) + 1, RatFunc(f.algebra()->field()));
    for (std::size_t k = 0; k < r.c_.size(); ++k)
      r.c_[k] = RatFunc::poly(UPoly::from_base(f.coefficient_of(static_cast<std::uint32_t>(k))));
    r.trim();
    return r;
  }

  static RatOrePoly from_fraction(const LeftFraction& f) {
    RatOrePoly r = from_ore(f.num);
    return r.left_scaled(RatFunc::poly(UPoly::from_base(f.den)).inv());
  }

  const AlgebraPtr& algebra() const noexcept { return alg_; }
  const std::vector<RatFunc>& coeffs() const noexcept { return c_; }
  bool is_zero() const noexcept { return c_.empty(); }
  long degree() const noexcept { return c_.empty() ? kMinusInfinity : static_cast<long>(c_.size()) - 1; }
  const RatFunc& lc() const {
    if (c_.empty()) throw DomainError("leading coefficient of zero");
    return c_.back();
  }
  RatFunc coefficient(std::size_t k) const { return k < c_.size() ? c_[k] : RatFunc(alg_->field()); }
  bool is_unit() const { return c_.size() == 1; }
  bool is_one() const { return c_.size() == 1 && c_[0].is_one(); }

  RatOrePoly operator+(const RatOrePoly& o) const {
    if (!alg_) return o;
    if (!o.alg_) return *this;
    std::vector<RatFunc> r(std::max(c_.size(), o.c_.size()), RatFunc(alg_->field()));
    for (std::size_t k = 0; k < r.size(); ++k) r[k] = coefficient(k) + o.coefficient(k);
    return RatOrePoly(alg_, std::move(r));
  }
  RatOrePoly operator-() const {
    RatOrePoly r = *this;
    for (auto& c : r.c_) c = -c;
    return r;
  }
  RatOrePoly operator-(const RatOrePoly& o) const { return *this + (-o); }

  /// r * f for r in K(x): coefficients sit left of d.
  RatOrePoly left_scaled(const RatFunc& r) const {
    RatOrePoly out = *this;
    for (auto& c : out.c_) c = r * c;
    out.trim();
    return out;
  }

  /// d * f, one step of the commutation rule.
  RatOrePoly op_times() const {
    const AlgebraSpec& s = alg_->spec();
    std::vector<RatFunc> r(c_.size() + 1, RatFunc(alg_->field()));
    for (std::size_t k = 0; k < c_.size(); ++k) {
      auto [sg, dl] = rat_sigma_delta(s, c_[k]);
      r[k + 1] = r[k + 1] + sg;
      r[k] = r[k] + dl;
    }
    return RatOrePoly(alg_, std::move(r));
  }

  RatOrePoly operator*(const RatOrePoly& o) const {
    if (!alg_ || !o.alg_) return RatOrePoly(alg_ ? alg_ : o.alg_);
    if (!alg_->same_ring(*o.alg_)) throw DomainError("operands belong to different algebras");
    if (is_zero() || o.is_zero()) return RatOrePoly(alg_);
    // (A^-1 N)(B^-1 P) through polynomial arithmetic
    detail::FracArith ar(alg_);
    LeftFraction x = to_fraction(), y = o.to_fraction();
    detail::Frac r = ar.mul({x.den, x.num}, {y.den, y.num});
    return from_fraction({r.den, r.num});
  }

  /// Product by repeated commutation of d past K(x); reference for operator*.
  RatOrePoly mul_by_commutation(const RatOrePoly& o) const {
    if (!alg_ || !o.alg_) return RatOrePoly(alg_ ? alg_ : o.alg_);
    RatOrePoly out(alg_);
    RatOrePoly cur = o;
    for (std::size_t k = 0; k < c_.size(); ++k) {
      if (k > 0) cur = cur.op_times();
      if (!c_[k].is_zero()) out = out + cur.left_scaled(c_[k]);
    }
    return out;
  }

  RatOrePoly monic() const { return is_zero() ? *this : left_scaled(lc().inv()); }

  bool operator==(const RatOrePoly& o) const { return c_ == o.c_; }
  bool operator!=(const RatOrePoly& o) const { return !(*this == o); }

  std::size_t bits() const {
    std::size_t b = 0;
    for (const auto& c : c_) b = std::max(b, detail::ratfunc_bits(c));
    return b;
  }

  std::size_t terms() const {
    std::size_t n = 0;
    for (const auto& c : c_)
      if (!c.is_zero()) ++n;
    return n;
  }

  /// den^-1 * num with num polynomial and den the monic lcm of the denominators.
  LeftFraction to_fraction() const {
    const Field f = alg_->field();
    UPoly den = UPoly::constant(f, Scalar(1));
    for (const auto& c : c_) den = lcm(den, c.den());
    std::vector<OreTerm> t;
    for (std::size_t k = 0; k < c_.size(); ++k) {
      UPoly p = c_[k].num() * den.divmod(c_[k].den()).first;
      for (std::size_t e = 0; e < p.coeffs().size(); ++e) {
        if (oreform::is_zero(p.coeffs()[e])) continue;
        Exponents x{};
        x[0] = static_cast<std::uint16_t>(e);
        t.push_back({x, static_cast<std::uint32_t>(k), p.coeffs()[e]});
      }
    }
    return {den.to_base(), OrePoly::from_terms(alg_, std::move(t))};
  }

 private:
  void trim() {
    while (!c_.empty() && c_.back().is_zero()) c_.pop_back();
  }

  AlgebraPtr alg_;
  std::vector<RatFunc> c_;
};

inline std::string to_string(const RatOrePoly& p) { return to_string(p.to_fraction()); }

/// b = q * a + r with deg r < deg a.
inline std::pair<RatOrePoly, RatOrePoly> right_divide(const RatOrePoly& b, const RatOrePoly& a) {
  if (a.is_zero()) throw DomainError("division by zero");
  const AlgebraPtr& alg = a.algebra();
  const AlgebraSpec& s = alg->spec();
  RatOrePoly q(alg), r = b.algebra() ? b : RatOrePoly(alg);
  const long n = a.degree();
  while (!r.is_zero() && r.degree() >= n) {
    const std::size_t k = static_cast<std::size_t>(r.degree() - n);
    RatFunc lca = a.lc();
    for (std::size_t i = 0; i < k; ++i) lca = rat_sigma(s, lca);
    RatOrePoly t = RatOrePoly::op(alg, k).left_scaled(r.lc() / lca);
    long before = r.degree();
    r = r - t * a;
    q = q + t;
    if (r.degree() >= before) throw InternalError("right division did not lower the degree");
  }
  return {q, r};
}

/// b = a * q + r with deg r < deg a.
inline std::pair<RatOrePoly, RatOrePoly> left_divide(const RatOrePoly& b, const RatOrePoly& a) {
  if (a.is_zero()) throw DomainError("division by zero");
  const AlgebraPtr& alg = a.algebra();
  const AlgebraSpec& s = alg->spec();
  RatOrePoly q(alg), r = b.algebra() ? b : RatOrePoly(alg);
  const long n = a.degree();
  while (!r.is_zero() && r.degree() >= n) {
    const std::size_t k = static_cast<std::size_t>(r.degree() - n);
    RatFunc c = r.lc() / a.lc();
    for (long i = 0; i < n; ++i) c = rat_sigma_inverse(s, c);
    RatOrePoly t = RatOrePoly::op(alg, k).left_scaled(c);
    long before = r.degree();
    r = r - a * t;
    q = q + t;
    if (r.degree() >= before) throw InternalError("left division did not lower the degree");
  }
  return {q, r};
}

struct GcdLclm {
  RatOrePoly gcd;   // monic right gcd
  RatOrePoly s, t;  // gcd = s*a + t*b
  RatOrePoly lclm;  // monic least common left multiple
  RatOrePoly u, w;  // lclm = u*a = w*b
};

/// Extended right Euclidean algorithm.
inline GcdLclm gcd_lclm(const RatOrePoly& a, const RatOrePoly& b) {
  if (a.is_zero() && b.is_zero()) throw DomainError("gcd of two zero elements");
  const AlgebraPtr& alg = a.algebra() ? a.algebra() : b.algebra();
  RatOrePoly A = a.algebra() ? a : RatOrePoly(alg), B = b.algebra() ? b : RatOrePoly(alg);
  RatOrePoly r0 = A, r1 = B;
  RatOrePoly s0 = RatOrePoly::one(alg), s1(alg), t0(alg), t1 = RatOrePoly::one(alg);
  while (!r1.is_zero()) {
    auto [q, r] = right_divide(r0, r1);
    RatOrePoly s2 = s0 - q * s1, t2 = t0 - q * t1;
    r0 = std::move(r1);
    r1 = std::move(r);
    s0 = std::move(s1);
    s1 = std::move(s2);
    t0 = std::move(t1);
    t1 = std::move(t2);
  }
  GcdLclm out;
  RatFunc c = r0.lc().inv();
  out.gcd = r0.left_scaled(c);
  out.s = s0.left_scaled(c);
  out.t = t0.left_scaled(c);
  // s1*a + t1*b = 0 and s1*a is the lclm up to a unit.
  if (A.is_zero() || B.is_zero()) {
    out.lclm = RatOrePoly(alg);
    out.u = RatOrePoly(alg);
    out.w = RatOrePoly(alg);
    return out;
  }
  RatOrePoly l = s1 * A;
  RatFunc lc = l.lc().inv();
  out.lclm = l.left_scaled(lc);
  out.u = s1.left_scaled(lc);
  out.w = (-t1).left_scaled(lc);
  return out;
}

/// Matrix over K(x)[d].
class RatMatrix {
 public:
  RatMatrix() = default;
  RatMatrix(AlgebraPtr a, std::size_t rows, std::size_t cols)
      : alg_(std::move(a)), rows_(rows), cols_(cols), e_(rows * cols, RatOrePoly(alg_)) {}

  static RatMatrix identity(const AlgebraPtr& a, std::size_t n) {
    RatMatrix m(a, n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = RatOrePoly::one(a);
    return m;
  }

  static RatMatrix from(const OreMatrix& m) {
    RatMatrix r(m.algebra(), m.rows(), m.cols());
    for (std::size_t i = 0; i < m.rows(); ++i)
      for (std::size_t j = 0; j < m.cols(); ++j) r(i, j) = RatOrePoly::from_ore(m(i, j));
    return r;
  }

  static RatMatrix from(const FractionMatrix& m) {
    RatMatrix r(m.alg, m.rows, m.cols);
    for (std::size_t i = 0; i < m.rows; ++i)
      for (std::size_t j = 0; j < m.cols; ++j) r(i, j) = RatOrePoly::from_fraction(m.at(i, j));
    return r;
  }

  const AlgebraPtr& algebra() const noexcept { return alg_; }
  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  RatOrePoly& operator()(std::size_t i, std::size_t j) { return e_[i * cols_ + j]; }
  const RatOrePoly& operator()(std::size_t i, std::size_t j) const { return e_[i * cols_ + j]; }

  RatMatrix operator*(const RatMatrix& o) const {
    if (cols_ != o.rows_) throw DomainError("matrix dimensions do not match");
    RatMatrix r(alg_, rows_, o.cols_);
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t k = 0; k < cols_; ++k) {
        const RatOrePoly& a = (*this)(i, k);
        if (a.is_zero()) continue;
        for (std::size_t j = 0; j < o.cols_; ++j)
          if (!o(k, j).is_zero()) r(i, j) = r(i, j) + a * o(k, j);
      }
    return r;
  }

  bool operator==(const RatMatrix& o) const { return rows_ == o.rows_ && cols_ == o.cols_ && e_ == o.e_; }
  bool operator!=(const RatMatrix& o) const { return !(*this == o); }

  bool is_diagonal() const {
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < cols_; ++j)
        if (i != j && !(*this)(i, j).is_zero()) return false;
    return true;
  }

  bool is_generalized_diagonal() const {
    std::vector<char> col(cols_, 0);
    for (std::size_t i = 0; i < rows_; ++i) {
      int n = 0;
      for (std::size_t j = 0; j < cols_; ++j)
        if (!(*this)(i, j).is_zero()) {
          if (++n > 1 || col[j]) return false;
          col[j] = 1;
        }
    }
    return true;
  }

  FractionMatrix to_fractions() const {
    FractionMatrix f;
    f.alg = alg_;
    f.rows = rows_;
    f.cols = cols_;
    for (const auto& e : e_) f.entries.push_back(e.to_fraction());
    return f;
  }

 private:
  AlgebraPtr alg_;
  std::size_t rows_ = 0, cols_ = 0;
  std::vector<RatOrePoly> e_;
};

/// theta on K(x)[d]; needs theta(x) free of d. theta(A^-1 N) = theta(N) theta(A)^-1.
inline RatOrePoly apply_theta(const RatOrePoly& f) {
  const AlgebraPtr& a = f.algebra();
  if (!a->has_involution()) throw ValidationError(ValidationError::Reason::BadInvolution, "no involution available");
  if (detail::involution_var(a, 0).degree() > 0)
    throw ValidationError(ValidationError::Reason::Unsupported,
                          "involution mixing the base variable with the operator has no rational extension");
  if (f.is_zero()) return f;
  LeftFraction x = f.to_fraction();
  BasePoly den = oreform::apply_theta(OrePoly::from_base(a, x.den)).to_base();
  detail::Frac r = detail::FracArith(a).right_divide_by_base(oreform::apply_theta(x.num), den);
  return RatOrePoly::from_fraction({r.den, r.num});
}

/// The same element read in the opposite algebra: A^-1 N becomes N * A^-1 there.
inline RatOrePoly to_opposite(const RatOrePoly& f, const AlgebraPtr& op) {
  if (f.is_zero()) return RatOrePoly(op);
  LeftFraction x = f.to_fraction();
  detail::Frac r = detail::FracArith(op).right_divide_by_base(oreform::to_opposite(x.num, op), x.den);
  return RatOrePoly::from_fraction({r.den, r.num});
}

inline RatMatrix side_swap(const RatMatrix& m, SideSwap s) {
  AlgebraPtr target = s == SideSwap::Involution ? m.algebra() : m.algebra()->opposite();
  RatMatrix r(target, m.cols(), m.rows());
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j)
      r(j, i) = s == SideSwap::Involution ? apply_theta(m(i, j)) : to_opposite(m(i, j), target);
  return r;
}

/// Echelon form over the PID R: per position from the highest down, the
/// monic right gcd of the column, with earlier pivots reduced against it.
struct RatEchelon {
  std::vector<std::size_t> positions;
  std::vector<std::vector<RatOrePoly>> rows, cofactors;
  std::vector<std::vector<RatOrePoly>> kernel;
};

inline RatEchelon rational_echelon(const RatMatrix& M) {
  const AlgebraPtr& a = M.algebra();
  const std::size_t r = M.rows(), c = M.cols();
  struct Row {
    std::vector<RatOrePoly> m, u;
  };
  std::vector<Row> work(r);
  for (std::size_t i = 0; i < r; ++i) {
    work[i].m.assign(c, RatOrePoly(a));
    for (std::size_t j = 0; j < c; ++j) work[i].m[j] = M(i, j);
    work[i].u.assign(r, RatOrePoly(a));
    work[i].u[i] = RatOrePoly::one(a);
  }
  auto sub = [](Row& x, const RatOrePoly& q, const Row& p) {
    for (std::size_t j = 0; j < x.m.size(); ++j)
      if (!p.m[j].is_zero()) x.m[j] = x.m[j] - q * p.m[j];
    for (std::size_t j = 0; j < x.u.size(); ++j)
      if (!p.u[j].is_zero()) x.u[j] = x.u[j] - q * p.u[j];
  };
  std::vector<char> active(r, 1);
  std::vector<std::pair<std::size_t, Row>> pivots;  // descending positions
  for (std::size_t col = c; col-- > 0;) {
    for (;;) {
      std::optional<std::size_t> p;
      std::size_t nonzero = 0;
      for (std::size_t i = 0; i < r; ++i) {
        if (!active[i] || work[i].m[col].is_zero()) continue;
        ++nonzero;
        if (!p || work[i].m[col].degree() < work[*p].m[col].degree()) p = i;
      }
      if (!p) break;
      if (nonzero == 1) {
        Row& pr = work[*p];
        RatFunc inv = pr.m[col].lc().inv();
        for (auto& e : pr.m) e = e.left_scaled(inv);
        for (auto& e : pr.u) e = e.left_scaled(inv);
        for (auto& [pos, prow] : pivots) {
          (void)pos;
          if (prow.m[col].is_zero()) continue;
          RatOrePoly q = right_divide(prow.m[col], pr.m[col]).first;
          if (!q.is_zero()) sub(prow, q, pr);
        }
        pivots.push_back({col, pr});
        active[*p] = 0;
        break;
      }
      for (std::size_t i = 0; i < r; ++i) {
        if (i == *p || !active[i] || work[i].m[col].is_zero()) continue;
        RatOrePoly q = right_divide(work[i].m[col], work[*p].m[col]).first;
        sub(work[i], q, work[*p]);
      }
    }
  }
  RatEchelon out;
  for (std::size_t k = pivots.size(); k-- > 0;) {
    out.positions.push_back(pivots[k].first);
    out.rows.push_back(pivots[k].second.m);
    out.cofactors.push_back(pivots[k].second.u);
  }
  for (std::size_t i = 0; i < r; ++i)
    if (active[i]) out.kernel.push_back(work[i].u);
  return out;
}

namespace detail {

/// Scales g and u by one common unit of K(x) so that every entry becomes a
/// polynomial and the entries share no content. The row space is unchanged.
inline void make_rows_primitive(std::vector<RatOrePoly>& g, std::vector<RatOrePoly>& u) {
  std::optional<UPoly> den, content;
  for (const auto* row : {&g, &u})
    for (const auto& f : *row)
      for (const auto& c : f.coeffs())
        if (!c.is_zero()) den = den ? lcm(*den, c.den()) : c.den();
  if (!den) return;
  const Field fl = den->field();
  std::vector<UPoly> nums;
  for (const auto* row : {&g, &u})
    for (const auto& f : *row)
      for (const auto& c : f.coeffs())
        if (!c.is_zero()) {
          UPoly n = c.num() * den->divmod(c.den()).first;
          content = content ? gcd(*content, n) : n.monic();
          nums.push_back(std::move(n));
        }
  // rational scalar making the integer coefficients coprime
  Scalar scale(1);
  if (fl.is_rational()) {
    mpz_class l = 1, gnum = 0;
    for (const auto& n : nums) {
      UPoly q = n.divmod(*content).first;
      for (const auto& c : q.coeffs()) {
        if (c == 0) continue;
        mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), c.get_den().get_mpz_t());
        mpz_gcd(gnum.get_mpz_t(), gnum.get_mpz_t(), c.get_num().get_mpz_t());
      }
    }
    scale = Scalar(l, gnum == 0 ? mpz_class(1) : gnum);
    scale.canonicalize();
  }
  RatFunc unit = RatFunc(den->scaled(scale), *content);
  for (auto* row : {&g, &u})
    for (auto& f : *row) f = f.left_scaled(unit);
}

}  // namespace detail

}  // namespace oreform
