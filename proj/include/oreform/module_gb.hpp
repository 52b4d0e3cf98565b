#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "oreform/errors.hpp"
#include "oreform/matrix.hpp"
#include "oreform/ore_poly.hpp"

namespace oreform {

/// Row vector in R*^{1 x q}.
using VecPoly = std::vector<OrePoly>;

/// x^exp d^dpow e_pos.
struct ModuleMonomial {
  std::size_t pos = 0;
  Exponents exp{};
  std::uint32_t dpow = 0;
};

/// Position-over-term order: a higher position is larger; inside a position
/// d-degree decides, then the base tie-break.
class ModuleOrder {
 public:
  ModuleOrder(std::size_t rank, std::size_t nvars, TieBreak tb = TieBreak::Grevlex)
      : rank_(rank), nvars_(nvars), tb_(tb) {}

  std::size_t rank() const noexcept { return rank_; }
  std::size_t nvars() const noexcept { return nvars_; }
  TieBreak tiebreak() const noexcept { return tb_; }

  int compare(const ModuleMonomial& a, const ModuleMonomial& b) const {
    if (a.pos >= rank_ || b.pos >= rank_) throw DomainError("module monomial position out of range");
    if (a.pos != b.pos) return a.pos < b.pos ? -1 : 1;
    if (a.dpow != b.dpow) return a.dpow < b.dpow ? -1 : 1;
    return compare_exponents(a.exp, b.exp, nvars_, tb_);
  }

  static ModuleOrder for_algebra(const OreAlgebra& a, std::size_t rank) {
    return ModuleOrder(rank, a.nvars(), a.tiebreak());
  }

 private:
  std::size_t rank_;
  std::size_t nvars_;
  TieBreak tb_;
};

inline bool is_zero(const VecPoly& v) {
  for (const auto& p : v)
    if (!p.is_zero()) return false;
  return true;
}

/// Leading monomial of a nonzero vector (nullopt for zero).
inline std::optional<ModuleMonomial> leading_monomial(const VecPoly& v) {
  for (std::size_t k = v.size(); k-- > 0;)
    if (!v[k].is_zero()) return ModuleMonomial{k, v[k].leading().exp, v[k].leading().dpow};
  return std::nullopt;
}

inline bool monomial_divides(const ModuleMonomial& a, const ModuleMonomial& b, std::size_t n) {
  return a.pos == b.pos && a.dpow <= b.dpow && exponents_divide(a.exp, b.exp, n);
}

namespace detail {

inline VecPoly vec_scale(const VecPoly& v, const Scalar& c) {
  VecPoly r;
  r.reserve(v.size());
  for (const auto& p : v) r.push_back(p.scaled(c));
  return r;
}

/// (x^e d^k) * v, components at positions above `top` are known to be zero.
inline VecPoly vec_mul_monomial(const AlgebraPtr& a, const Exponents& e, std::uint32_t k, const Scalar& c,
                                const VecPoly& v) {
  OrePoly m = OrePoly::monomial(a, e, k, c);
  VecPoly r;
  r.reserve(v.size());
  for (const auto& p : v) r.push_back(p.is_zero() ? OrePoly(a) : m * p);
  return r;
}

inline void vec_sub_inplace(VecPoly& f, const VecPoly& g) {
  for (std::size_t k = 0; k < f.size(); ++k)
    if (!g[k].is_zero()) f[k] -= g[k];
}

/// Integral, content-free multiple of v with positive leading coefficient
/// (over a prime field: the monic multiple).
inline VecPoly make_primitive(const VecPoly& v) {
  auto lm = leading_monomial(v);
  if (!lm) return v;
  const Field& f = v[lm->pos].algebra()->field();
  if (!f.is_rational()) return vec_scale(v, f.inv(v[lm->pos].leading().coeff));
  mpz_class l = 1, g = 0;
  for (const auto& p : v)
    for (const auto& t : p.terms()) {
      mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), t.coeff.get_den_mpz_t());
      mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), t.coeff.get_num_mpz_t());
    }
  Scalar c(l, g);
  c.canonicalize();
  if (sgn(v[lm->pos].leading().coeff) < 0) c = -c;
  if (c == 1) return v;
  return vec_scale(v, c);
}

/// Working element of a Buchberger run.
struct GbElem {
  VecPoly v;
  ModuleMonomial lm;
};

/// Shared reduction engine: full (head and tail) left reduction against a
/// list of elements, largest reducible monomial first, smallest index first.
class Reducer {
 public:
  Reducer(AlgebraPtr a, const ModuleOrder& order) : a_(std::move(a)), order_(order), by_pos_(order.rank()) {}

  void add(const VecPoly& v, const ModuleMonomial& lm) {
    by_pos_[lm.pos].push_back(elems_.size());
    elems_.push_back({v, lm});
  }

  void replace(std::size_t i, const VecPoly& v) { elems_[i].v = v; }
  const GbElem& elem(std::size_t i) const { return elems_[i]; }
  std::size_t size() const { return elems_.size(); }

  /// Reduces f in place. When `cof` is given, cof[j] accumulates the
  /// multiplier of element j. Elements flagged in `skip` are not used.
  void reduce(VecPoly& f, std::vector<OrePoly>* cof = nullptr, const std::vector<char>* skip = nullptr,
              bool head_only = false) const {
    const std::size_t n = order_.nvars();
    // Without cofactors the scale of f is free, so rational runs avoid
    // denominators altogether.
    const bool ff = !cof && a_->field().is_rational();
    std::size_t steps = 0;
    struct Finish {
      bool on;
      VecPoly& f;
      ~Finish() {
        if (on) f = make_primitive(f);
      }
    } finish{ff, f};
    for (std::size_t pos = f.size(); pos-- > 0;) {
      if (by_pos_[pos].empty()) {
        if (head_only && !f[pos].is_zero()) return;
        continue;
      }
      std::optional<OreTerm> cursor;
      for (;;) {
        const auto& terms = f[pos].terms();
        std::size_t idx = terms.size();
        if (cursor) {
          idx = static_cast<std::size_t>(
              std::lower_bound(terms.begin(), terms.end(), *cursor,
                               [&](const OreTerm& x, const OreTerm& y) { return a_->compare(x, y) < 0; }) -
              terms.begin());
        }
        bool reduced = false;
        for (std::size_t k = idx; k-- > 0;) {
          const OreTerm& t = terms[k];
          ModuleMonomial m{pos, t.exp, t.dpow};
          std::optional<std::size_t> pick;
          for (std::size_t j : by_pos_[pos]) {
            if (skip && (*skip)[j]) continue;
            if (!monomial_divides(elems_[j].lm, m, n)) continue;
            pick = j;
            break;
          }
          if (pick) {
            const std::size_t j = *pick;
            const GbElem& g = elems_[j];
            Exponents e = exponents_sub(t.exp, g.lm.exp);
            std::uint32_t dk = t.dpow - g.lm.dpow;
            VecPoly prod = vec_mul_monomial(a_, e, dk, Scalar(1), g.v);
            const OreTerm& plt = prod[pos].leading();
            if (plt.dpow != t.dpow || plt.exp != t.exp) throw InternalError("leading monomial is not multiplicative");
            Scalar c = a_->field().div(t.coeff, plt.coeff);
            cursor = OreTerm{t.exp, t.dpow, Scalar(1)};
            if (ff && c.get_den() != 1) {
              // Stay integral: den * f - num * prod.
              f = vec_scale(f, Scalar(c.get_den()));
              vec_sub_inplace(f, vec_scale(prod, Scalar(c.get_num())));
              if (++steps % 8 == 0) f = make_primitive(f);
            } else {
              vec_sub_inplace(f, vec_scale(prod, c));
            }
            if (cof) (*cof)[j] += OrePoly::monomial(a_, e, dk, c);
            reduced = true;
            break;
          }
          if (reduced || head_only) break;
        }
        if (!reduced) break;
      }
      if (head_only && !f[pos].is_zero()) return;
    }
  }

 private:
  AlgebraPtr a_;
  ModuleOrder order_;
  std::vector<GbElem> elems_;
  std::vector<std::vector<std::size_t>> by_pos_;
};

inline VecPoly make_monic(const VecPoly& v, const AlgebraPtr& a) {
  auto lm = leading_monomial(v);
  if (!lm) return v;
  return vec_scale(v, a->field().inv(v[lm->pos].leading().coeff));
}

}  // namespace detail

/// Normal form of f modulo G and the multipliers c_k with f = r + sum c_k g_k.
inline std::pair<VecPoly, std::vector<OrePoly>> left_reduce(const VecPoly& f, const std::vector<VecPoly>& G,
                                                           const ModuleOrder& order) {
  if (f.size() != order.rank()) throw DomainError("vector length does not match the module rank");
  AlgebraPtr a;
  for (const auto& p : f)
    if (p.algebra()) a = p.algebra();
  for (const auto& g : G)
    for (const auto& p : g)
      if (!a && p.algebra()) a = p.algebra();
  if (!a) return {f, std::vector<OrePoly>(G.size())};
  detail::Reducer red(a, order);
  for (const auto& g : G) {
    if (g.size() != order.rank()) throw DomainError("vector length does not match the module rank");
    auto lm = leading_monomial(g);
    if (!lm) throw DomainError("cannot reduce by the zero vector");
    red.add(g, *lm);
  }
  VecPoly r = f;
  for (auto& p : r)
    if (!p.algebra()) p = OrePoly(a);
  std::vector<OrePoly> cof(G.size(), OrePoly(a));
  red.reduce(r, &cof);
  return {r, cof};
}

struct GbOptions {
  /// Guard on the number of S-pairs reduced in one run.
  std::size_t max_pairs = 200000;
};

/// Result of a Buchberger run on [Id | M].
struct GBResult {
  AlgebraPtr algebra;
  std::size_t rows = 0;  // s, number of input rows
  std::size_t rank = 0;  // q, number of columns of M
  /// Reduced Groebner basis of the row module, ascending by leading monomial.
  std::vector<VecPoly> gb;
  /// cofactors(i, k): coefficient of input row k in gb[i].
  OreMatrix cofactors;
  /// Reduced Groebner basis of the syzygy module, ascending.
  std::vector<VecPoly> syzygies;
  /// Input rows that were zero and left out of the run.
  std::vector<std::size_t> dropped_rows;
  std::size_t pairs_reduced = 0;
  std::size_t pairs_skipped = 0;

  /// Leading position of gb[i] in 0..rank-1.
  std::size_t lpos(std::size_t i) const { return leading_monomial(gb[i])->pos; }
};

/// Buchberger's algorithm on the extended matrix [Id_s | M] with the M block
/// in the dominant positions.
inline GBResult groebner_extended(const OreMatrix& M, const GbOptions& opts = {}) {
  const AlgebraPtr& a = M.algebra();
  const std::size_t s = M.rows(), q = M.cols();
  if (s == 0 || q == 0) throw DomainError("Groebner basis of an empty matrix");
  const std::size_t R = s + q;
  const ModuleOrder order = ModuleOrder::for_algebra(*a, R);
  const std::size_t n = a->nvars();

  GBResult res;
  res.algebra = a;
  res.rows = s;
  res.rank = q;

  detail::Reducer red(a, order);
  std::vector<detail::GbElem> work;

  struct Pair {
    std::size_t i, j;
    ModuleMonomial lcm;
  };
  std::vector<Pair> pending;
  std::vector<std::vector<char>> is_pending;

  auto add_elem = [&](VecPoly v) {
    auto lm = *leading_monomial(v);
    const std::size_t k = red.size();
    red.add(v, lm);
    for (auto& row : is_pending) row.push_back(0);
    is_pending.emplace_back(k + 1, 0);
    for (std::size_t i = 0; i < k; ++i) {
      const auto& o = red.elem(i).lm;
      if (o.pos != lm.pos) continue;
      ModuleMonomial l{lm.pos, exponents_lcm(o.exp, lm.exp), std::max(o.dpow, lm.dpow)};
      pending.push_back({i, k, l});
      is_pending[i][k] = is_pending[k][i] = 1;
    }
  };

  for (std::size_t i = 0; i < s; ++i) {
    VecPoly v(R, OrePoly(a));
    bool zero_row = true;
    for (std::size_t j = 0; j < q; ++j) {
      v[s + j] = M(i, j);
      zero_row = zero_row && M(i, j).is_zero();
    }
    v[i] = OrePoly::one(a);
    if (zero_row) res.dropped_rows.push_back(i);
    // Inputs enter reduced against what is already there.
    red.reduce(v);
    if (!is_zero(v)) add_elem(detail::make_primitive(v));
  }

  while (!pending.empty()) {
    auto best = std::min_element(pending.begin(), pending.end(), [&](const Pair& x, const Pair& y) {
      int c = order.compare(x.lcm, y.lcm);
      if (c != 0) return c < 0;
      return std::make_pair(x.j, x.i) < std::make_pair(y.j, y.i);
    });
    Pair p = *best;
    pending.erase(best);
    is_pending[p.i][p.j] = is_pending[p.j][p.i] = 0;

    // Chain criterion: some third element divides the lcm and both of its
    // pairs with i and j are already settled.
    bool skip = false;
    for (std::size_t k = 0; k < red.size() && !skip; ++k) {
      if (k == p.i || k == p.j) continue;
      const auto& lk = red.elem(k).lm;
      if (!monomial_divides(lk, p.lcm, n)) continue;
      if (!is_pending[p.i][k] && !is_pending[p.j][k]) skip = true;
    }
    if (skip) {
      ++res.pairs_skipped;
      continue;
    }
    if (++res.pairs_reduced > opts.max_pairs)
      throw IterationCapExceeded("Groebner basis computation exceeded " + std::to_string(opts.max_pairs) +
                                 " S-pairs");

    const auto& gi = red.elem(p.i);
    const auto& gj = red.elem(p.j);
    VecPoly si = detail::vec_mul_monomial(a, exponents_sub(p.lcm.exp, gi.lm.exp), p.lcm.dpow - gi.lm.dpow,
                                          Scalar(1), gi.v);
    VecPoly sj = detail::vec_mul_monomial(a, exponents_sub(p.lcm.exp, gj.lm.exp), p.lcm.dpow - gj.lm.dpow,
                                          Scalar(1), gj.v);
    Scalar c = a->field().div(si[p.lcm.pos].leading().coeff, sj[p.lcm.pos].leading().coeff);
    if (a->field().is_rational()) {
      si = detail::vec_scale(si, Scalar(c.get_den()));
      detail::vec_sub_inplace(si, detail::vec_scale(sj, Scalar(c.get_num())));
    } else {
      detail::vec_sub_inplace(si, detail::vec_scale(sj, c));
    }
    red.reduce(si);
    if (!is_zero(si)) add_elem(detail::make_primitive(si));
  }

  // Minimalize, then interreduce once.
  const std::size_t N = red.size();
  std::vector<char> dead(N, 0);
  for (std::size_t i = 0; i < N; ++i)
    for (std::size_t j = 0; j < N && !dead[i]; ++j) {
      if (i == j || dead[j]) continue;
      const auto& li = red.elem(i).lm;
      const auto& lj = red.elem(j).lm;
      if (monomial_divides(lj, li, n) && (order.compare(li, lj) != 0 || j < i)) dead[i] = 1;
    }
  for (std::size_t i = 0; i < N; ++i) {
    if (dead[i]) continue;
    std::vector<char> skip = dead;
    skip[i] = 1;
    VecPoly v = red.elem(i).v;
    red.reduce(v, nullptr, &skip);
    red.replace(i, detail::make_monic(v, a));
  }
  std::vector<std::size_t> alive;
  for (std::size_t i = 0; i < N; ++i)
    if (!dead[i]) alive.push_back(i);
  std::sort(alive.begin(), alive.end(),
            [&](std::size_t x, std::size_t y) { return order.compare(red.elem(x).lm, red.elem(y).lm) < 0; });

  std::vector<std::size_t> gb_idx;
  for (std::size_t i : alive) {
    const auto& e = red.elem(i);
    if (e.lm.pos >= s) {
      gb_idx.push_back(i);
      res.gb.emplace_back(e.v.begin() + static_cast<long>(s), e.v.end());
    } else {
      res.syzygies.emplace_back(e.v.begin(), e.v.begin() + static_cast<long>(s));
    }
  }
  res.cofactors = OreMatrix(a, std::max<std::size_t>(gb_idx.size(), 0), s);
  for (std::size_t r = 0; r < gb_idx.size(); ++r)
    for (std::size_t k = 0; k < s; ++k) res.cofactors(r, k) = red.elem(gb_idx[r]).v[k];
  return res;
}

/// Groebner basis of a list of row vectors (all of the same length).
inline GBResult groebner_extended(const std::vector<VecPoly>& rows, const GbOptions& opts = {}) {
  if (rows.empty() || rows.front().empty()) throw DomainError("Groebner basis of an empty row list");
  AlgebraPtr a;
  for (const auto& r : rows) {
    if (r.size() != rows.front().size()) throw DomainError("rows of inconsistent rank");
    for (const auto& p : r)
      if (p.algebra()) a = p.algebra();
  }
  if (!a) throw DomainError("rows carry no algebra");
  std::vector<std::vector<OrePoly>> m(rows.begin(), rows.end());
  return groebner_extended(OreMatrix::from_rows(a, m), opts);
}

/// Boxed rows: per occupied leading position the order-minimal element.
struct GStar {
  std::vector<VecPoly> rows;
  std::vector<std::vector<OrePoly>> cofactor_rows;
  std::vector<std::size_t> positions;
  std::vector<std::size_t> indices;  // into GBResult::gb
};

inline GStar select_gstar(const GBResult& r) {
  GStar g;
  const std::size_t n = r.algebra->nvars();
  for (std::size_t i = 0; i < r.gb.size(); ++i) {
    auto lm = *leading_monomial(r.gb[i]);
    for (std::size_t j = 0; j < r.gb.size(); ++j) {
      if (j == i) continue;
      auto lj = *leading_monomial(r.gb[j]);
      if (monomial_divides(lj, lm, n)) throw DomainError("select_gstar needs a reduced Groebner basis");
    }
    if (!g.positions.empty() && g.positions.back() == lm.pos) continue;
    if (!g.positions.empty() && g.positions.back() > lm.pos) throw DomainError("Groebner basis is not sorted");
    g.positions.push_back(lm.pos);
    g.indices.push_back(i);
    g.rows.push_back(r.gb[i]);
    g.cofactor_rows.push_back(r.cofactors.row(i));
  }
  return g;
}

/// Boxed elements of the syzygy basis (an R-basis of the left kernel).
inline std::vector<VecPoly> select_syzygy_star(const GBResult& r) {
  std::vector<VecPoly> out;
  std::optional<std::size_t> last;
  for (const auto& z : r.syzygies) {
    auto lm = *leading_monomial(z);
    if (last && *last == lm.pos) continue;
    last = lm.pos;
    out.push_back(z);
  }
  return out;
}

}  // namespace oreform
