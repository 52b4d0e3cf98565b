#pragma once

#include <algorithm>
#include <chrono>
#include <cstddef>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "oreform/diagonalize.hpp"
#include "oreform/errors.hpp"
#include "oreform/format.hpp"
#include "oreform/involution.hpp"
#include "oreform/matrix.hpp"
#include "oreform/parser.hpp"
#include "oreform/rat_ore.hpp"
#include "oreform/upoly.hpp"

namespace oreform {

struct RatDiagResult {
  RatMatrix U, V, D;
  std::size_t iterations = 0;
  SideSwap side_swap = SideSwap::Involution;
  RunStats stats;
};

/// Diagonalization over K(x)[d] with the Euclidean echelon form in each step.
inline RatDiagResult diagonalize_rational(const RatMatrix& M, const DiagOptions& opts = {}) {
  auto start = std::chrono::steady_clock::now();
  const AlgebraPtr& a = M.algebra();
  detail::require_univariate(*a);
  if (M.rows() == 0 || M.cols() == 0) throw DomainError("matrix must have positive dimensions");
  RatDiagResult res;
  res.side_swap = opts.side_swap.value_or(side_swap_for(*a));
  if (res.side_swap == SideSwap::Involution && !a->has_involution())
    throw ValidationError(ValidationError::Reason::BadInvolution, "no involution available for this algebra");
  bool all_zero = true;
  for (std::size_t i = 0; i < M.rows(); ++i)
    for (std::size_t j = 0; j < M.cols(); ++j) all_zero = all_zero && M(i, j).is_zero();
  if (all_zero) throw DomainError("cannot diagonalize the zero matrix");

  const std::size_t p = M.rows(), q = M.cols();
  RatMatrix U = RatMatrix::identity(a, p), V = RatMatrix::identity(a, q), Mi = M;
  std::size_t i = 0;
  do {
    ++i;
    if (i > opts.max_iterations)
      throw IterationCapExceeded("diagonalization did not finish within " + std::to_string(opts.max_iterations) +
                                 " iterations");
    const AlgebraPtr& ai = Mi.algebra();
    const std::size_t r = Mi.rows(), c = Mi.cols();
    RatEchelon e = rational_echelon(Mi);
    for (std::size_t k = 0; k < e.rows.size(); ++k) detail::make_rows_primitive(e.rows[k], e.cofactors[k]);
    for (auto& z : e.kernel) {
      std::vector<RatOrePoly> none;
      detail::make_rows_primitive(z, none);
    }
    RatMatrix Ui(ai, r, r), G(ai, r, c);
    IterationStats st;
    st.iteration = i;
    st.gb_size = e.rows.size();
    st.max_degree = 0;
    auto visit = [&](const RatOrePoly& f) {
      st.max_degree = std::max(st.max_degree, f.degree());
      st.max_terms = std::max(st.max_terms, f.terms());
      st.max_bits = std::max(st.max_bits, f.bits());
    };
    for (std::size_t k = 0; k < e.rows.size(); ++k) {
      for (std::size_t j = 0; j < r; ++j) visit(Ui(k, j) = e.cofactors[k][j]);
      for (std::size_t j = 0; j < c; ++j) visit(G(k, j) = e.rows[k][j]);
    }
    for (std::size_t k = 0; k < e.kernel.size(); ++k)
      for (std::size_t j = 0; j < r; ++j) visit(Ui(e.rows.size() + k, j) = e.kernel[k][j]);
    res.stats.iterations.push_back(st);

    if (i % 2 == 1) U = Ui * U;
    else V = V * side_swap(Ui, res.side_swap);
    Mi = side_swap(G, res.side_swap);
  } while (!Mi.is_generalized_diagonal() || i % 2 == 1);
  res.iterations = i;

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
  res.U = RatMatrix(a, p, p);
  res.D = RatMatrix(a, p, q);
  res.V = RatMatrix(a, q, q);
  for (std::size_t k = 0; k < p; ++k) {
    RatFunc s = RatFunc::constant(a->field(), Scalar(1));
    if (k < rperm.size() && k < cperm.size() && k < std::min(p, q)) {
      const RatOrePoly& d = Mi(rperm[k], cperm[k]);
      if (!d.is_zero()) s = d.lc().inv();
    }
    for (std::size_t j = 0; j < p; ++j) res.U(k, j) = U(rperm[k], j).left_scaled(s);
    for (std::size_t j = 0; j < q; ++j) res.D(k, j) = Mi(rperm[k], cperm[j]).left_scaled(s);
  }
  for (std::size_t r = 0; r < q; ++r)
    for (std::size_t k = 0; k < q; ++k) res.V(r, k) = V(r, cperm[k]);
  if (res.U * M * res.V != res.D) throw VerificationFailure("U * M * V != D over K(x)[d]");
  res.stats.wall_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return res;
}

inline RatDiagResult diagonalize_rational(const FractionMatrix& M, const DiagOptions& opts = {}) {
  return diagonalize_rational(RatMatrix::from(M), opts);
}

inline RatDiagResult diagonalize_rational(const OreMatrix& M, const DiagOptions& opts = {}) {
  return diagonalize_rational(RatMatrix::from(M), opts);
}

inline std::vector<long> diagonal_degrees(const RatMatrix& D) {
  std::vector<long> d;
  for (std::size_t k = 0; k < std::min(D.rows(), D.cols()); ++k)
    if (!D(k, k).is_zero()) d.push_back(D(k, k).degree());
  return d;
}

}  // namespace oreform
