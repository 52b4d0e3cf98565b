#pragma once

#include <algorithm>
#include <chrono>
#include <cstddef>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "oreform/coeff_core.hpp"
#include "oreform/errors.hpp"
#include "oreform/involution.hpp"
#include "oreform/matrix.hpp"
#include "oreform/module_gb.hpp"
#include "oreform/rat_ore.hpp"

namespace oreform {

struct IterationStats {
  std::size_t iteration = 0;
  std::size_t gb_size = 0;
  long max_degree = 0;
  std::size_t max_terms = 0;
  std::size_t max_bits = 0;
};

struct RunStats {
  std::vector<IterationStats> iterations;
  double wall_seconds = 0;
};

struct DiagOptions {
  std::size_t max_iterations = 100;
  GbOptions gb;
  /// Forces a side-swap mechanism; by default the involution is used when known.
  std::optional<SideSwap> side_swap;
  DenominatorStrategy denominators = DenominatorStrategy::Product;
  /// Divide out the base content shared by all diagonal entries (into U's denominator).
  bool strip_common_content = true;
};

/// scale^-1 * U * (T * M) * V = D with D diagonal and U, V, D, T over R*.
/// scale is 1 unless a common content was stripped from the diagonal.
struct DiagResult {
  OreMatrix U, V, D, T;
  BasePoly scale;
  /// T * M, the fraction-free input.
  OreMatrix cleared;
  std::size_t iterations = 0;
  SideSwap side_swap = SideSwap::Involution;
  RunStats stats;
};

/// T = Diag(common denominator of row i) and T * M, which is polynomial.
inline std::pair<OreMatrix, OreMatrix> clear_denominators(const FractionMatrix& M,
                                                          DenominatorStrategy strategy = DenominatorStrategy::Product) {
  const AlgebraPtr& a = M.alg;
  if (M.rows == 0 || M.cols == 0) throw DomainError("matrix must have positive dimensions");
  if (strategy == DenominatorStrategy::Lcm && a->nvars() != 1) strategy = DenominatorStrategy::Product;
  OreMatrix T(a, M.rows, M.rows), C(a, M.rows, M.cols);
  for (std::size_t i = 0; i < M.rows; ++i) {
    std::vector<BasePoly> dens;
    for (std::size_t j = 0; j < M.cols; ++j) {
      if (M.at(i, j).den.is_zero()) throw DomainError("zero denominator");
      dens.push_back(M.at(i, j).den);
    }
    BasePoly t = common_denominator(dens, strategy);
    T(i, i) = OrePoly::from_base(a, t);
    for (std::size_t j = 0; j < M.cols; ++j) {
      const LeftFraction& e = M.at(i, j);
      auto factor = t.divide_exact(e.den);
      if (!factor) throw InternalError("common denominator is not a multiple of an entry denominator");
      C(i, j) = e.num.mul_base_left(*factor);
    }
  }
  return {T, C};
}

namespace detail {

inline IterationStats iteration_stats(std::size_t i, const GBResult& g) {
  IterationStats s;
  s.iteration = i;
  s.gb_size = g.gb.size();
  s.max_degree = kMinusInfinity;
  auto visit = [&](const OrePoly& p) {
    s.max_degree = std::max(s.max_degree, p.degree());
    s.max_terms = std::max(s.max_terms, p.size());
    s.max_bits = std::max(s.max_bits, p.coeff_bits());
  };
  for (const auto& r : g.gb)
    for (const auto& p : r) visit(p);
  for (std::size_t r = 0; r < g.cofactors.rows(); ++r)
    for (std::size_t c = 0; c < g.cofactors.cols(); ++c) visit(g.cofactors(r, c));
  if (s.max_degree == kMinusInfinity) s.max_degree = 0;
  return s;
}

inline OreMatrix permutation(const AlgebraPtr& a, const std::vector<std::size_t>& perm, bool rows) {
  // rows: P with (P X) row k = X row perm[k]; otherwise (X P) column k = X column perm[k].
  OreMatrix P(a, perm.size(), perm.size());
  for (std::size_t k = 0; k < perm.size(); ++k) {
    if (rows) P(k, perm[k]) = OrePoly::one(a);
    else P(perm[k], k) = OrePoly::one(a);
  }
  return P;
}

/// Greatest common divisor of two base polynomials, monic. Exact for one
/// variable; with several variables only divisibility and monomial factors
/// are detected.
inline BasePoly base_gcd(const BasePoly& a, const BasePoly& b) {
  if (a.is_zero()) return b.monic();
  if (b.is_zero()) return a.monic();
  if (a.nvars() == 1) return gcd(UPoly::from_base(a), UPoly::from_base(b)).to_base();
  if (b.divide_exact(a)) return a.monic();
  if (a.divide_exact(b)) return b.monic();
  const std::size_t n = a.nvars();
  Exponents e = a.terms().front().exp;
  for (const BasePoly* p : {&a, &b})
    for (const auto& t : p->terms())
      for (std::size_t i = 0; i < n; ++i) e[i] = std::min(e[i], t.exp[i]);
  return BasePoly::monomial(a.field(), n, e, Scalar(1));
}

inline BasePoly common_content(const OreMatrix& D) {
  const AlgebraPtr& a = D.algebra();
  BasePoly c(a->field(), a->nvars());
  for (std::size_t k = 0; k < std::min(D.rows(), D.cols()); ++k) {
    const OrePoly& e = D(k, k);
    for (const auto& t : e.terms()) {
      if (c.is_one()) return c;
      c = base_gcd(c, e.coefficient_of(t.dpow));
    }
  }
  return c.is_zero() ? BasePoly::one(a->field(), a->nvars()) : c;
}

inline OreMatrix scale_left(const OreMatrix& M, const BasePoly& c) {
  if (c.is_zero() || c.is_one()) return M;
  OreMatrix out = M;
  for (std::size_t i = 0; i < M.rows(); ++i)
    for (std::size_t j = 0; j < M.cols(); ++j) out(i, j) = M(i, j).mul_base_left(c);
  return out;
}

}  // namespace detail

/// Fraction-free diagonalization: alternating Groebner bases with side swaps.
inline DiagResult diagonalize(const FractionMatrix& input, const DiagOptions& opts = {}) {
  auto start = std::chrono::steady_clock::now();
  const AlgebraPtr& a = input.alg;
  DiagResult res;
  std::tie(res.T, res.cleared) = clear_denominators(input, opts.denominators);
  if (res.cleared.is_zero()) throw DomainError("cannot diagonalize the zero matrix");
  res.side_swap = opts.side_swap.value_or(side_swap_for(*a));
  if (res.side_swap == SideSwap::Involution && !a->has_involution())
    throw ValidationError(ValidationError::Reason::BadInvolution, "no involution available for this algebra");

  const std::size_t p = input.rows, q = input.cols;
  OreMatrix U = OreMatrix::identity(a, p);
  OreMatrix V = OreMatrix::identity(a, q);
  OreMatrix Mi = res.cleared;
  std::size_t i = 0;
  do {
    ++i;
    if (i > opts.max_iterations)
      throw IterationCapExceeded("diagonalization did not finish within " + std::to_string(opts.max_iterations) +
                                 " iterations");
    const AlgebraPtr& ai = Mi.algebra();
    GBResult g = groebner_extended(Mi, opts.gb);
    GStar gs = select_gstar(g);
    std::vector<VecPoly> kernel = select_syzygy_star(g);
    const std::size_t r = Mi.rows(), c = Mi.cols();
    if (gs.rows.size() + kernel.size() != r)
      throw InternalError("selected rows and kernel basis do not add up to the row count");
    OreMatrix Ui(ai, r, r), G(ai, r, c);
    for (std::size_t k = 0; k < gs.rows.size(); ++k) {
      for (std::size_t j = 0; j < r; ++j) Ui(k, j) = gs.cofactor_rows[k][j];
      for (std::size_t j = 0; j < c; ++j) G(k, j) = gs.rows[k][j];
    }
    for (std::size_t k = 0; k < kernel.size(); ++k)
      for (std::size_t j = 0; j < r; ++j) Ui(gs.rows.size() + k, j) = kernel[k][j];
    res.stats.iterations.push_back(detail::iteration_stats(i, g));

    if (i % 2 == 1) U = Ui * U;
    else V = V * side_swap(Ui, res.side_swap);
    Mi = side_swap(G, res.side_swap);
  } while (!Mi.is_generalized_diagonal() || i % 2 == 1);
  res.iterations = i;

  // Move the nonzero entries onto the diagonal, zero rows and columns last.
  std::vector<std::size_t> rperm, cperm;
  std::vector<char> col_used(q, 0);
  for (std::size_t r = 0; r < p; ++r)
    for (std::size_t c = 0; c < q; ++c)
      if (!Mi(r, c).is_zero()) {
        rperm.push_back(r);
        cperm.push_back(c);
        col_used[c] = 1;
      }
  for (std::size_t r = 0; r < p; ++r)
    if (std::find(rperm.begin(), rperm.end(), r) == rperm.end()) rperm.push_back(r);
  for (std::size_t c = 0; c < q; ++c)
    if (!col_used[c]) cperm.push_back(c);
  OreMatrix Pr = detail::permutation(a, rperm, true), Pc = detail::permutation(a, cperm, false);
  res.U = Pr * U;
  res.V = V * Pc;
  res.D = Pr * Mi * Pc;
  res.scale = BasePoly::one(a->field(), a->nvars());
  if (opts.strip_common_content) {
    BasePoly c = detail::common_content(res.D);
    if (!c.is_constant()) {
      for (std::size_t k = 0; k < std::min(p, q); ++k) {
        auto e = divide_by_base(res.D(k, k), c);
        if (!e) throw InternalError("common content does not divide the diagonal");
        res.D(k, k) = *e;
      }
      res.scale = c;
    }
  }
  if (res.U * res.cleared * res.V != detail::scale_left(res.D, res.scale))
    throw VerificationFailure("U * (T * M) * V != D");
  res.stats.wall_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return res;
}

inline DiagResult diagonalize(const OreMatrix& M, const DiagOptions& opts = {}) {
  return diagonalize(FractionMatrix::from_polynomial(M), opts);
}

namespace detail {

/// Boxed rows of the Groebner basis of W occupy every position with d-free
/// diagonal entries.
inline bool unimodular_over_r_gb(const OreMatrix& W, const GbOptions& opts = {}) {
  if (W.rows() != W.cols()) return false;
  GBResult g = groebner_extended(W, opts);
  GStar gs = select_gstar(g);
  if (gs.rows.size() != W.cols()) return false;
  for (std::size_t k = 0; k < gs.rows.size(); ++k) {
    if (gs.positions[k] != k) return false;
    if (gs.rows[k][k].is_zero() || gs.rows[k][k].degree() != 0) return false;
  }
  return true;
}

/// Echelon form over K(x)[d] has a d-free pivot in every column.
inline bool unimodular_over_r_echelon(const OreMatrix& W) {
  if (W.rows() != W.cols()) return false;
  RatEchelon e = rational_echelon(RatMatrix::from(W));
  if (e.positions.size() != W.cols()) return false;
  for (std::size_t k = 0; k < e.rows.size(); ++k)
    if (e.rows[k][e.positions[k]].degree() != 0) return false;
  return true;
}

}  // namespace detail

/// True when W (square over R*) is invertible over R. With one base variable
/// this is decided over K(x)[d] directly.
inline bool is_unimodular_over_r(const OreMatrix& W, const GbOptions& opts = {}) {
  if (W.algebra()->nvars() == 1) return detail::unimodular_over_r_echelon(W);
  return detail::unimodular_over_r_gb(W, opts);
}

struct UnimodularityResult {
  bool unimodular = false;
  std::optional<OreMatrix> inverse;
};

/// Invertibility over R*: the reduced basis of the rows must be e_1..e_g; the
/// cofactors then form a left inverse.
inline UnimodularityResult is_unimodular_over_rstar(const OreMatrix& W, const GbOptions& opts = {}) {
  UnimodularityResult out;
  if (W.rows() != W.cols()) return out;
  const std::size_t g = W.cols();
  GBResult gb = groebner_extended(W, opts);
  if (gb.gb.size() != g) return out;
  for (std::size_t k = 0; k < g; ++k)
    for (std::size_t j = 0; j < g; ++j) {
      const OrePoly& e = gb.gb[k][j];
      if (j == k ? !(e.is_constant() && !e.is_zero() && e.leading().coeff == 1) : !e.is_zero()) return out;
    }
  out.unimodular = true;
  out.inverse = gb.cofactors;
  return out;
}

struct VerifyReport {
  bool identity = false;
  bool diagonal = false;
  bool polynomial = true;
  std::vector<long> degrees;
  long degree_sum = 0;
  std::optional<bool> degree_sum_matches;
  bool u_unimodular_over_r = false;
  bool v_unimodular_over_r = false;
  std::vector<std::string> failures;

  bool ok() const { return failures.empty(); }
};

/// d-degrees of the nonzero diagonal entries.
inline std::vector<long> diagonal_degrees(const OreMatrix& D) {
  std::vector<long> d;
  for (std::size_t k = 0; k < std::min(D.rows(), D.cols()); ++k)
    if (!D(k, k).is_zero()) d.push_back(D(k, k).degree());
  return d;
}

/// Re-checks a diagonalization: the identity, the shape, optional agreement of
/// degree sums with another diagonal form, and R-unimodularity of U and V.
inline VerifyReport verify_decomposition(const FractionMatrix& M, const DiagResult& r,
                                         std::optional<long> alternative_degree_sum = std::nullopt,
                                         bool certify_unimodular = true) {
  VerifyReport v;
  auto [T, C] = clear_denominators(M);
  (void)T;
  if (C != r.cleared) v.failures.push_back("T * M does not match the recorded fraction-free input");
  v.identity = r.U * r.cleared * r.V == detail::scale_left(r.D, r.scale);
  if (!v.identity) v.failures.push_back("U * (T * M) * V != D");
  v.diagonal = r.D.is_diagonal();
  if (!v.diagonal) v.failures.push_back("D is not diagonal");
  v.degrees = diagonal_degrees(r.D);
  for (long d : v.degrees) v.degree_sum += d;
  if (alternative_degree_sum) {
    v.degree_sum_matches = *alternative_degree_sum == v.degree_sum;
    if (!*v.degree_sum_matches)
      v.failures.push_back("degree sum " + std::to_string(v.degree_sum) + " differs from the alternative " +
                           std::to_string(*alternative_degree_sum));
  }
  if (certify_unimodular) {
    v.u_unimodular_over_r = is_unimodular_over_r(r.U);
    v.v_unimodular_over_r = is_unimodular_over_r(r.V);
    if (!v.u_unimodular_over_r) v.failures.push_back("U is not unimodular over R");
    if (!v.v_unimodular_over_r) v.failures.push_back("V is not unimodular over R");
  }
  return v;
}

inline VerifyReport verify_decomposition(const OreMatrix& M, const DiagResult& r,
                                         std::optional<long> alternative_degree_sum = std::nullopt,
                                         bool certify_unimodular = true) {
  return verify_decomposition(FractionMatrix::from_polynomial(M), r, alternative_degree_sum, certify_unimodular);
}

/// Rational form of the diagonal: each nonzero entry divided by the base
/// coefficient of its top d-power, units first, zero entries last.
inline std::vector<LeftFraction> normalize_diagonal(const OreMatrix& D) {
  const AlgebraPtr& a = D.algebra();
  std::vector<LeftFraction> units, rest, zeros;
  const std::size_t k = std::min(D.rows(), D.cols());
  for (std::size_t i = 0; i < k; ++i) {
    const OrePoly& e = D(i, i);
    if (e.is_zero()) {
      zeros.push_back({BasePoly::one(a->field(), a->nvars()), e});
      continue;
    }
    BasePoly lc = e.coefficient_of(e.leading().dpow);
    if (e.degree() == 0) {
      units.push_back({BasePoly::one(a->field(), a->nvars()), OrePoly::one(a)});
      continue;
    }
    Scalar c = lc.leading().coeff;
    BasePoly den = lc.scaled(a->field().inv(c));
    OrePoly num = e.scaled(a->field().inv(c));
    if (auto exact = divide_by_base(num, den)) rest.push_back({BasePoly::one(a->field(), a->nvars()), *exact});
    else rest.push_back({den, num});
  }
  units.insert(units.end(), rest.begin(), rest.end());
  units.insert(units.end(), zeros.begin(), zeros.end());
  return units;
}

}  // namespace oreform
