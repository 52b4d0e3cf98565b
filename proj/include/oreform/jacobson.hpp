#pragma once

#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "oreform/diagonalize.hpp"
#include "oreform/errors.hpp"
#include "oreform/rational.hpp"

namespace oreform {

struct ShiftExponent {
  std::size_t i = 0;
  RatOrePoly a, b;  // m1 * x^i = a * m2 + b
};

struct JacobsonStep {
  std::size_t first = 0, second = 0;  // positions of the pair
  std::optional<std::size_t> exponent;
  long remainder_degree = kMinusInfinity;
  long before = 0, after = 0;  // degree of the smaller entry
};

struct JacobsonResult {
  RatMatrix U, V, D;  // U * input * V = D
  std::vector<JacobsonStep> trace;
  long degree_sum = 0;
  bool certificate = false;  // deg of last nonzero entry equals degree_sum
  bool complete = true;      // false only in best-effort mode without progress
};

struct JacobsonOptions {
  /// Run on non-simple algebras too and stop when nothing changes.
  bool best_effort = false;
  std::size_t max_rounds = 1000;
};

inline bool is_simple_weyl(const OreAlgebra& a) {
  return a.spec().preset == Preset::Weyl && a.field().is_rational() && a.nvars() == 1;
}

namespace detail {

inline void require_simple(const OreAlgebra& a) {
  if (is_simple_weyl(a)) return;
  throw NotSimpleDomain("Jacobson form needs the rational Weyl algebra over a field of characteristic 0; " +
                        preset_name(a.spec().preset) +
                        " is not a simple domain (over the shift algebra Diag(s, s) is annihilated by the two-sided "
                        "ideal <s> and is not equivalent to any Diag(1, p))");
}

inline RatOrePoly x_power(const AlgebraPtr& a, std::size_t i) {
  std::vector<Scalar> c(i + 1, Scalar(0));
  c[i] = 1;
  return RatOrePoly::constant(a, RatFunc::poly(UPoly(a->field(), c)));
}

inline RatMatrix swap_mat(const AlgebraPtr& a, std::size_t n, std::size_t i, std::size_t j) {
  RatMatrix P = RatMatrix::identity(a, n);
  if (i == j) return P;
  P(i, i) = P(j, j) = RatOrePoly(a);
  P(i, j) = P(j, i) = RatOrePoly::one(a);
  return P;
}

inline RatMatrix embed(const RatMatrix& B, std::size_t n, std::size_t p, std::size_t q) {
  const AlgebraPtr& a = B.algebra();
  RatMatrix E = RatMatrix::identity(a, n);
  const std::size_t idx[2] = {p, q};
  for (std::size_t r = 0; r < 2; ++r)
    for (std::size_t c = 0; c < 2; ++c) E(idx[r], idx[c]) = B(r, c);
  return E;
}

inline RatMatrix ore_to_rat(const OreMatrix& M) { return RatMatrix::from(M); }

/// Diagonalizes the 2x2 block with the fraction-free pipeline:
/// (scale^-1 * U * T) * B * V = D.
inline RatDiagResult rediagonalize(const RatMatrix& B) {
  DiagResult r = diagonalize(B.to_fractions());
  const AlgebraPtr& a = B.algebra();
  RatDiagResult out;
  RatFunc inv = RatFunc::poly(UPoly::from_base(r.scale)).inv();
  RatMatrix U = ore_to_rat(r.U) * ore_to_rat(r.T);
  out.U = RatMatrix(a, U.rows(), U.cols());
  for (std::size_t i = 0; i < U.rows(); ++i)
    for (std::size_t j = 0; j < U.cols(); ++j) out.U(i, j) = U(i, j).left_scaled(inv);
  out.V = ore_to_rat(r.V);
  out.D = ore_to_rat(r.D);
  out.iterations = r.iterations;
  return out;
}

}  // namespace detail

/// Smallest i with a nonzero remainder of m1 * x^i modulo m2 on the right.
inline ShiftExponent find_shift_exponent(const RatOrePoly& m1, const RatOrePoly& m2) {
  if (m1.is_zero() || m2.is_zero()) throw DomainError("zero diagonal entry");
  if (m2.degree() <= 0) throw DomainError("the second entry is a unit");
  if (m2.degree() > m1.degree()) throw DomainError("the second entry must not have larger degree");
  const AlgebraPtr& a = m1.algebra();
  const std::size_t last = static_cast<std::size_t>(m1.degree() - m2.degree() + 1);
  RatOrePoly lhs = m1;
  RatOrePoly x = RatOrePoly::variable(a);
  for (std::size_t i = 0; i <= last; ++i) {
    if (i > 0) lhs = lhs * x;
    auto [q, r] = right_divide(lhs, m2);
    if (!r.is_zero()) return {i, q, r};
  }
  throw InternalError("no shift exponent found up to " + std::to_string(last));
}

/// Turns a diagonal matrix into Diag(1, ..., 1, m) by pairwise rounds.
inline JacobsonResult strengthen_diagonal(const RatMatrix& Din, const JacobsonOptions& opts = {}) {
  const AlgebraPtr& a = Din.algebra();
  if (!opts.best_effort) detail::require_simple(*a);
  if (!Din.is_diagonal()) throw DomainError("input must be diagonal");
  const std::size_t p = Din.rows(), q = Din.cols(), n = std::min(p, q);
  if (n == 0) throw DomainError("matrix must have positive dimensions");
  JacobsonResult res;
  res.U = RatMatrix::identity(a, p);
  res.V = RatMatrix::identity(a, q);
  RatMatrix D = Din;
  std::size_t rank = 0;
  for (std::size_t k = 0; k < n; ++k) {
    if (D(k, k).is_zero()) throw DomainError("zero diagonal entry");
    res.degree_sum += D(k, k).degree();
    ++rank;
  }
  // Left multiplication on rows p, q of U and D, right multiplication on columns of V and D.
  auto apply_left = [&](const RatMatrix& L) {
    res.U = L * res.U;
    D = L * D;
  };
  auto apply_right = [&](const RatMatrix& R) {
    res.V = res.V * R;
    D = D * R;
  };
  auto make_one = [&](std::size_t k) {
    RatMatrix L = RatMatrix::identity(a, p);
    L(k, k) = RatOrePoly::constant(a, D(k, k).lc().inv());
    apply_left(L);
  };

  std::size_t rounds = 0;
  for (std::size_t k = 0; k + 1 < rank; ++k) {
    const std::size_t i1 = k, i2 = k + 1;  // unit goes to i1
    for (;;) {
      if (++rounds > opts.max_rounds) throw IterationCapExceeded("Jacobson strengthening exceeded the round limit");
      const RatOrePoly &e1 = D(i1, i1), &e2 = D(i2, i2);
      if (e1.degree() == 0 || e2.degree() == 0) {
        if (e1.degree() != 0) {
          apply_left(detail::swap_mat(a, p, i1, i2));
          apply_right(detail::swap_mat(a, q, i1, i2));
        }
        make_one(i1);
        break;
      }
      // keep the larger degree at i1
      if (D(i1, i1).degree() < D(i2, i2).degree()) {
        apply_left(detail::swap_mat(a, p, i1, i2));
        apply_right(detail::swap_mat(a, q, i1, i2));
      }
      JacobsonStep st;
      st.first = i1;
      st.second = i2;
      st.before = D(i2, i2).degree();
      ShiftExponent se;
      try {
        se = find_shift_exponent(D(i1, i1), D(i2, i2));
      } catch (const InternalError&) {
        if (!opts.best_effort) throw;
        res.trace.push_back(st);
        res.complete = false;
        break;
      }
      st.exponent = se.i;
      st.remainder_degree = se.b.degree();
      RatMatrix L = RatMatrix::identity(a, p), R = RatMatrix::identity(a, q);
      L(i1, i2) = -se.a;
      R(i1, i2) = detail::x_power(a, se.i);
      apply_left(L);
      apply_right(R);
      // [[m1, b], [0, m2]] -> Diag(m1', m2')
      RatMatrix B(a, 2, 2);
      B(0, 0) = D(i1, i1);
      B(0, 1) = D(i1, i2);
      B(1, 1) = D(i2, i2);
      RatDiagResult rd = detail::rediagonalize(B);
      if (!(rd.D(0, 1).is_zero() && rd.D(1, 0).is_zero()) || rd.D(0, 0).is_zero() || rd.D(1, 1).is_zero())
        throw InternalError("re-diagonalization of the 2x2 block did not return a full diagonal");
      apply_left(detail::embed(rd.U, p, i1, i2));
      apply_right(detail::embed(rd.V, q, i1, i2));
      st.after = std::min(D(i1, i1).degree(), D(i2, i2).degree());
      res.trace.push_back(st);
      if (st.after >= st.before) {
        if (opts.best_effort) {
          res.complete = false;
          break;
        }
        throw InternalError("Jacobson round did not lower the degree");
      }
    }
  }
  if (rank > 0) make_one(rank - 1);
  res.D = D;
  if (res.U * Din * res.V != res.D) throw VerificationFailure("U' * D * V' differs from the strengthened diagonal");
  res.certificate = rank > 0 && D(rank - 1, rank - 1).degree() == res.degree_sum;
  for (std::size_t k = 0; k + 1 < rank; ++k) res.certificate = res.certificate && D(k, k).is_one();
  if (!res.certificate && !opts.best_effort) throw InternalError("Jacobson certificate failed");
  return res;
}

struct CyclicProbe {
  std::vector<RatOrePoly> probe;
  std::vector<RatOrePoly> annihilators;  // u_i with lclm(p_i, m_i) = u_i * p_i
  RatOrePoly c;
  long degree_sum = 0;
  bool certificate = false;
};

/// Random probe with deg p_i < deg m_i and integer coefficients in [-10, 10].
inline std::vector<RatOrePoly> random_probe(const RatMatrix& D, std::uint64_t seed) {
  const AlgebraPtr& a = D.algebra();
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<int> coef(-10, 10), xdeg(0, 2);
  std::vector<RatOrePoly> out;
  for (std::size_t k = 0; k < std::min(D.rows(), D.cols()); ++k) {
    const long dm = D(k, k).degree();
    std::vector<RatFunc> c;
    for (long j = 0; j < std::max(dm, 1L); ++j) {
      std::vector<Scalar> v(static_cast<std::size_t>(xdeg(rng)) + 1);
      for (auto& s : v) s = coef(rng);
      c.push_back(RatFunc::poly(UPoly(a->field(), v)));
    }
    if (dm <= 0) c.resize(1);
    RatOrePoly p(a, c);
    if (p.is_zero()) p = RatOrePoly::one(a);
    out.push_back(p);
  }
  return out;
}

/// Generator of the left annihilator of the probe vector in the module of D.
inline CyclicProbe cyclic_vector_probe(const RatMatrix& D, const std::vector<RatOrePoly>& probe) {
  const AlgebraPtr& a = D.algebra();
  detail::require_simple(*a);
  if (!D.is_diagonal()) throw DomainError("input must be diagonal");
  const std::size_t n = std::min(D.rows(), D.cols());
  if (probe.size() != n) throw DomainError("probe length must match the diagonal");
  CyclicProbe out;
  out.probe = probe;
  for (std::size_t k = 0; k < n; ++k) {
    const RatOrePoly& m = D(k, k);
    if (m.is_zero()) throw DomainError("zero diagonal entry");
    out.degree_sum += m.degree();
    RatOrePoly u;
    if (probe[k].is_zero() || m.degree() == 0) {
      u = RatOrePoly::one(a);
    } else {
      GcdLclm g = gcd_lclm(probe[k], m);
      u = g.u;  // lclm = u * p_k
    }
    out.annihilators.push_back(u);
  }
  RatOrePoly c = out.annihilators.front();
  for (std::size_t k = 1; k < n; ++k) c = gcd_lclm(c, out.annihilators[k]).lclm;
  out.c = c.monic();
  out.certificate = out.c.degree() == out.degree_sum;
  return out;
}

inline CyclicProbe cyclic_vector_probe(const RatMatrix& D, std::uint64_t seed) {
  return cyclic_vector_probe(D, random_probe(D, seed));
}

}  // namespace oreform
