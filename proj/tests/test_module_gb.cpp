#include <gtest/gtest.h>

#include <random>

#include "oreform/module_gb.hpp"
#include "test_util.hpp"

using namespace oreform;
using namespace testutil;

namespace {

ModuleMonomial mono(std::size_t pos, std::initializer_list<std::uint16_t> e, std::uint32_t d) {
  Exponents x{};
  std::size_t i = 0;
  for (auto v : e) x[i++] = v;
  return {pos, x, d};
}

VecPoly vec(const AlgebraPtr& a, std::initializer_list<const char*> xs) {
  VecPoly v;
  for (const char* s : xs) v.push_back(P(a, s));
  return v;
}

OreMatrix running_ex2(const AlgebraPtr& a) { return Mx(a, "[[d^2-1, d+1],[d^2+1, d-x]]"); }

OreMatrix gb_matrix(const GBResult& g) {
  std::vector<std::vector<OrePoly>> rows(g.gb.begin(), g.gb.end());
  return OreMatrix::from_rows(g.algebra, rows);
}

// Every structural identity a GB run must satisfy.
void check_gb_identities(const OreMatrix& M, const GBResult& g) {
  ASSERT_EQ(g.cofactors.rows(), g.gb.size());
  if (!g.gb.empty()) {
    EXPECT_EQ(g.cofactors * M, gb_matrix(g));
  }
  for (const auto& z : g.syzygies) {
    OreMatrix s = OreMatrix::from_rows(M.algebra(), {z});
    EXPECT_TRUE((s * M).is_zero());
  }
  ModuleOrder order = ModuleOrder::for_algebra(*M.algebra(), M.cols());
  const std::size_t n = M.algebra()->nvars();
  for (std::size_t i = 0; i < g.gb.size(); ++i) {
    auto li = *leading_monomial(g.gb[i]);
    EXPECT_EQ(g.gb[i][li.pos].leading().coeff, 1);
    if (i > 0) {
      EXPECT_LT(order.compare(*leading_monomial(g.gb[i - 1]), li), 0);
    }
    // Reduced: no leading monomial divides any monomial of another element.
    for (std::size_t j = 0; j < g.gb.size(); ++j) {
      if (i == j) continue;
      for (std::size_t pos = 0; pos < g.gb[j].size(); ++pos)
        for (const auto& t : g.gb[j][pos].terms())
          EXPECT_FALSE(monomial_divides(li, ModuleMonomial{pos, t.exp, t.dpow}, n));
    }
  }
}

}  // namespace

TEST(ModuleOrder, PositionDominates) {
  ModuleOrder o(2, 1);
  EXPECT_LT(o.compare(mono(0, {1}, 0), mono(1, {0}, 1)), 0);
  EXPECT_GT(o.compare(mono(1, {0}, 0), mono(0, {9}, 9)), 0);
}

TEST(ModuleOrder, OperatorEliminatesBase) {
  ModuleOrder o(1, 1);
  EXPECT_LT(o.compare(mono(0, {5}, 0), mono(0, {0}, 1)), 0);
}

TEST(ModuleOrder, GrevlexTieBreak) {
  // Variables (y, x): x is the largest.
  ModuleOrder o(1, 2);
  EXPECT_GT(o.compare(mono(0, {1, 2}, 0), mono(0, {2, 1}, 0)), 0);
  ModuleOrder lex(1, 2, TieBreak::Lex);
  EXPECT_GT(lex.compare(mono(0, {1, 2}, 0), mono(0, {2, 1}, 0)), 0);
  EXPECT_GT(o.compare(mono(0, {0, 2}, 0), mono(0, {1, 1}, 0)), 0);
}

TEST(ModuleOrder, RankMismatch) {
  ModuleOrder o(1, 1);
  EXPECT_THROW(o.compare(mono(0, {}, 0), mono(1, {}, 0)), DomainError);
}

TEST(LeftReduce, Examples) {
  auto a = weyl();
  ModuleOrder o(1, 1);
  auto [r, c] = left_reduce(vec(a, {"x*d+1"}), {vec(a, {"d"})}, o);
  EXPECT_EQ(r[0], P(a, "1"));
  EXPECT_EQ(c[0], P(a, "x"));

  auto [r2, c2] = left_reduce(vec(a, {"d^2-1"}), {vec(a, {"d-1"})}, o);
  EXPECT_TRUE(r2[0].is_zero());
  EXPECT_EQ(c2[0], P(a, "d+1"));
  EXPECT_EQ(c2[0] * P(a, "d-1"), P(a, "d^2-1"));
}

TEST(LeftReduce, PositionMismatchLeavesVector) {
  auto a = weyl();
  ModuleOrder o(2, 1);
  VecPoly f = vec(a, {"d", "0"});
  auto [r, c] = left_reduce(f, {vec(a, {"0", "d"})}, o);
  EXPECT_EQ(r, f);
  EXPECT_TRUE(c[0].is_zero());
}

TEST(LeftReduce, RemainderIsIrreducibleAndIdentityHolds) {
  std::mt19937_64 rng(21);
  auto a = weyl();
  ModuleOrder o(2, 1);
  for (int k = 0; k < 30; ++k) {
    VecPoly f{random_poly(rng, a, 3, 4), random_poly(rng, a, 3, 4)};
    std::vector<VecPoly> G{{P(a, "x*d+1"), P(a, "0")}, {P(a, "d"), P(a, "x^2*d")}};
    auto [r, c] = left_reduce(f, G, o);
    for (std::size_t pos = 0; pos < 2; ++pos) {
      OrePoly sum = r[pos];
      for (std::size_t j = 0; j < G.size(); ++j) sum = sum + c[j] * G[j][pos];
      EXPECT_EQ(sum, f[pos]);
      for (const auto& t : r[pos].terms())
        for (const auto& g : G)
          EXPECT_FALSE(monomial_divides(*leading_monomial(g), ModuleMonomial{pos, t.exp, t.dpow}, 1));
    }
  }
}

TEST(GroebnerExtended, RunningExampleMatchesPrintedBasis) {
  auto a = weyl();
  OreMatrix M = running_ex2(a);
  GBResult g = groebner_extended(M);
  ASSERT_EQ(g.gb.size(), 3u);
  EXPECT_TRUE(g.syzygies.empty());
  OreMatrix expect_gb = Mx(a,
                           "[[x^2*d^2+2*x*d^2+d^2+2*x*d+2*d-x^2-1, 0],"
                           "[x*d^3+d^3+x*d^2+5*d^2-x*d+3*d-x-1, 0],"
                           "[-x*d^2-d^2-2*d+x-1, 1]]");
  OreMatrix expect_cof = Mx(a,
                            "[[-x*d-d+x^2+x+1, x*d+d+x],"
                            "[-d^2+x*d-d+x+2, d^2+2*d+1],"
                            "[d-x, -d-1]]");
  // Compare each row [cofactor | gb] as one vector up to a scalar.
  OreMatrix got(a, 3, 4), want(a, 3, 4);
  for (std::size_t i = 0; i < 3; ++i)
    for (std::size_t j = 0; j < 2; ++j) {
      got(i, j) = g.cofactors(i, j);
      got(i, j + 2) = g.gb[i][j];
      want(i, j) = expect_cof(i, j);
      want(i, j + 2) = expect_gb(i, j);
    }
  EXPECT_TRUE(rows_up_to_scalar(got, want)) << to_string(got);
  check_gb_identities(M, g);
}

TEST(GroebnerExtended, IdentityRows) {
  auto a = weyl();
  OreMatrix I = OreMatrix::identity(a, 3);
  GBResult g = groebner_extended(I);
  EXPECT_EQ(gb_matrix(g), I);
  EXPECT_EQ(g.cofactors, I);
  EXPECT_TRUE(g.syzygies.empty());
}

TEST(GroebnerExtended, CommutatorGivesOne) {
  auto a = weyl();
  OreMatrix M = Mx(a, "[[d],[x]]");
  GBResult g = groebner_extended(M);
  ASSERT_EQ(g.gb.size(), 1u);
  EXPECT_EQ(g.gb[0][0], P(a, "1"));
  EXPECT_EQ(P(a, "d") * P(a, "x") - P(a, "x") * P(a, "d"), P(a, "1"));
  check_gb_identities(M, g);
  // The two rows are dependent: a nonzero syzygy module of rank one.
  EXPECT_FALSE(g.syzygies.empty());
  EXPECT_EQ(select_syzygy_star(g).size(), 1u);
}

TEST(GroebnerExtended, ZeroRowsAreReportedAndBecomeSyzygies) {
  auto a = weyl();
  OreMatrix M = Mx(a, "[[d, x],[0, 0]]");
  GBResult g = groebner_extended(M);
  EXPECT_EQ(g.dropped_rows, std::vector<std::size_t>{1});
  ASSERT_EQ(g.syzygies.size(), 1u);
  EXPECT_EQ(g.syzygies[0][1], P(a, "1"));
  check_gb_identities(M, g);
}

TEST(GroebnerExtended, PairLimitGuard) {
  auto a = weyl();
  GbOptions opts;
  opts.max_pairs = 0;
  EXPECT_THROW(groebner_extended(running_ex2(a), opts), IterationCapExceeded);
}

TEST(GroebnerExtended, InconsistentRanksRejected) {
  auto a = weyl();
  std::vector<VecPoly> rows{vec(a, {"d", "1"}), vec(a, {"x"})};
  EXPECT_THROW(groebner_extended(rows), DomainError);
}

TEST(SelectGStar, RunningExampleFirstStep) {
  auto a = weyl();
  GBResult g = groebner_extended(running_ex2(a));
  GStar s = select_gstar(g);
  ASSERT_EQ(s.rows.size(), 2u);
  EXPECT_EQ(s.positions, (std::vector<std::size_t>{0, 1}));
  EXPECT_EQ(s.indices, (std::vector<std::size_t>{0, 2}));
  EXPECT_EQ(s.rows[0][0].degree(), 2);
  EXPECT_EQ(s.rows[1][1], P(a, "1"));
}

TEST(SelectGStar, OneElementPerPositionSelectsAll) {
  auto a = weyl();
  GBResult g = groebner_extended(Mx(a, "[[d, 0],[x, 1]]"));
  GStar s = select_gstar(g);
  EXPECT_EQ(s.rows.size(), g.gb.size());
}

TEST(SelectGStar, RejectsNonReducedInput) {
  auto a = weyl();
  GBResult g = groebner_extended(Mx(a, "[[d, 0],[0, 1]]"));
  g.gb.insert(g.gb.begin() + 1, vec(a, {"x*d^2", "0"}));
  OreMatrix cof(a, g.cofactors.rows() + 1, g.cofactors.cols());
  g.cofactors = cof;
  EXPECT_THROW(select_gstar(g), DomainError);
}

TEST(GbProperties, RandomModules) {
  std::mt19937_64 rng(7);
  std::uniform_int_distribution<int> dims(2, 3);
  std::vector<AlgebraPtr> algs{weyl(), shift("x", "d"), difference("x", "d")};
  for (int k = 0; k < 50; ++k) {
    auto a = algs[static_cast<std::size_t>(k) % algs.size()];
    const std::size_t r = static_cast<std::size_t>(dims(rng)), c = static_cast<std::size_t>(dims(rng));
    OreMatrix M(a, r, c);
    for (std::size_t i = 0; i < r; ++i)
      for (std::size_t j = 0; j < c; ++j) M(i, j) = random_poly(rng, a, 2, 2, 3, 1);
    if (M.is_zero()) continue;
    GBResult g = groebner_extended(M);
    check_gb_identities(M, g);

    // Triangularity: nothing to the right of the leading position.
    for (const auto& row : g.gb) {
      auto lm = *leading_monomial(row);
      for (std::size_t j = lm.pos + 1; j < row.size(); ++j) EXPECT_TRUE(row[j].is_zero());
    }

    // Random R*-combinations of the inputs reduce to zero.
    ModuleOrder o = ModuleOrder::for_algebra(*a, c);
    for (int t = 0; t < 3; ++t) {
      VecPoly f(c, OrePoly(a));
      for (std::size_t i = 0; i < r; ++i) {
        OrePoly m = random_poly(rng, a, 2, 2, 3, 1);
        for (std::size_t j = 0; j < c; ++j) f[j] = f[j] + m * M(i, j);
      }
      auto [rem, cof] = left_reduce(f, g.gb, o);
      EXPECT_TRUE(is_zero(rem));
    }

    // Idempotence.
    if (!g.gb.empty()) {
      GBResult again = groebner_extended(gb_matrix(g));
      EXPECT_EQ(gb_matrix(again), gb_matrix(g));
    }
  }
}
