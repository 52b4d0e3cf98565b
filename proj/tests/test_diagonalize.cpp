#include <gtest/gtest.h>

#include <random>
#include <thread>

#include "oreform/diagonalize.hpp"
#include "test_util.hpp"

using namespace oreform;
using namespace testutil;

namespace {

const char* kRunning = "[[d^2-1, d+1],[d^2+1, d-x]]";

void expect_valid(const OreMatrix& M, const DiagResult& r) {
  VerifyReport v = verify_decomposition(M, r);
  EXPECT_TRUE(v.ok()) << (v.failures.empty() ? "" : v.failures.front());
  EXPECT_TRUE(r.D.is_diagonal());
}

}  // namespace

TEST(ClearDenominators, PolynomialInputUnchanged) {
  auto a = weyl();
  FractionMatrix F = FractionMatrix::from_polynomial(Mx(a, kRunning));
  auto [T, C] = clear_denominators(F);
  EXPECT_EQ(T, OreMatrix::identity(a, 2));
  EXPECT_EQ(C, Mx(a, kRunning));
}

TEST(ClearDenominators, SingleFraction) {
  auto a = weyl();
  auto [T, C] = clear_denominators(parse_matrix("[[1/x*d]]", a));
  EXPECT_EQ(T(0, 0), P(a, "x"));
  EXPECT_EQ(C(0, 0), P(a, "d"));
}

TEST(ClearDenominators, ProductOfRowDenominators) {
  auto a = weyl();
  auto [T, C] = clear_denominators(parse_matrix("[[1/x*d, 1/(x+1)]]", a));
  EXPECT_EQ(T(0, 0), P(a, "x^2+x"));
  EXPECT_EQ(C(0, 0), P(a, "x*d+d"));
  EXPECT_EQ(C(0, 1), P(a, "x"));
}

TEST(ClearDenominators, LcmStrategy) {
  auto a = weyl();
  auto [T, C] = clear_denominators(parse_matrix("[[1/x, 1/x^2]]", a), DenominatorStrategy::Lcm);
  EXPECT_EQ(T(0, 0), P(a, "x^2"));
  EXPECT_EQ(C(0, 0), P(a, "x"));
  EXPECT_EQ(C(0, 1), P(a, "1"));
}

TEST(Diagonalize, RunningExampleWeyl) {
  auto a = weyl();
  OreMatrix M = Mx(a, kRunning);
  DiagResult r = diagonalize(M);
  EXPECT_EQ(r.iterations, 2u);
  EXPECT_EQ(r.side_swap, SideSwap::Involution);
  EXPECT_TRUE(same_up_to_scalar(r.D(0, 0), P(a, "x^2*d^2+2*x*d^2+d^2+2*x*d+2*d-x^2-1")));
  EXPECT_TRUE(same_up_to_scalar(r.D(1, 1), P(a, "1")));
  EXPECT_TRUE(rows_up_to_scalar(r.U, Mx(a, "[[-x*d-d+x^2+x+1, x*d+d+x],[d-x, -d-1]]"))) << to_string(r.U);
  EXPECT_TRUE(cols_up_to_scalar(r.V, Mx(a, "[[1, 0],[(x+1)*d^2+2*d-x+1, 1]]"))) << to_string(r.V);
  EXPECT_EQ(r.U * M * r.V, r.D);
  expect_valid(M, r);
}

TEST(Diagonalize, RunningExampleShift) {
  auto a = shift();
  OreMatrix M = Mx(a, "[[S^2-1, S+1],[S^2+1, S-t]]");
  DiagResult r = diagonalize(M);
  EXPECT_TRUE(same_up_to_scalar(r.D(0, 0), P(a, "(t^2+3*t+2)*S^2+2*(t+1)*S-t^2-t+2")));
  EXPECT_TRUE(same_up_to_scalar(r.D(1, 1), P(a, "1")));
  EXPECT_TRUE(rows_up_to_scalar(r.U, Mx(a, "[[-t*S-S+t^2+2*t, t*S+S+t+2],[-S+t+1, S+1]]"))) << to_string(r.U);
  EXPECT_TRUE(cols_up_to_scalar(r.V, Mx(a, "[[1, 0],[-t*S^2-2*S^2-2*S+t, 1]]"))) << to_string(r.V);
  expect_valid(M, r);
}

TEST(Diagonalize, IdentityTakesTwoIterations) {
  auto a = weyl();
  OreMatrix I = OreMatrix::identity(a, 3);
  DiagResult r = diagonalize(I);
  EXPECT_EQ(r.iterations, 2u);
  EXPECT_EQ(r.D, I);
  EXPECT_EQ(r.U, I);
  EXPECT_EQ(r.V, I);
}

TEST(Diagonalize, ShiftDiagonalStays) {
  auto a = shift("t", "s");
  OreMatrix M = Mx(a, "[[s, 0],[0, s]]");
  DiagResult r = diagonalize(M);
  EXPECT_EQ(r.D, M);
}

TEST(Diagonalize, OppositeTransportAgreesOnRunningExample) {
  auto a = weyl();
  OreMatrix M = Mx(a, kRunning);
  DiagOptions o;
  o.side_swap = SideSwap::Opposite;
  DiagResult r = diagonalize(M, o);
  EXPECT_EQ(r.side_swap, SideSwap::Opposite);
  expect_valid(M, r);
  EXPECT_EQ(diagonal_degrees(r.D), (std::vector<long>{2, 0}));
}

TEST(Diagonalize, QAlgebraUsesOpposite) {
  auto a = qweyl(2);
  OreMatrix M = Mx(a, "[[d^2-1, d+1],[d^2+1, d-x]]");
  DiagResult r = diagonalize(M);
  EXPECT_EQ(r.side_swap, SideSwap::Opposite);
  expect_valid(M, r);
}

TEST(Diagonalize, FractionInput) {
  auto a = weyl();
  FractionMatrix F = parse_matrix("[[1/x*d, 1],[0, 1/(x+1)*d]]", a);
  DiagResult r = diagonalize(F);
  VerifyReport v = verify_decomposition(F, r);
  EXPECT_TRUE(v.ok());
  EXPECT_EQ(r.T(0, 0), P(a, "x"));
  EXPECT_EQ(r.T(1, 1), P(a, "x+1"));
}

TEST(Diagonalize, NonSquareAndRankDeficient) {
  auto a = weyl();
  for (const char* s : {"[[d, x, 1]]", "[[d],[x*d+1],[d^2]]", "[[d, d^2],[x*d, x*d^2]]", "[[d, 1],[0, 0]]"}) {
    OreMatrix M = Mx(a, s);
    DiagResult r = diagonalize(M);
    expect_valid(M, r);
    EXPECT_EQ(r.D.rows(), M.rows());
    EXPECT_EQ(r.D.cols(), M.cols());
    // Zero diagonal entries come last.
    bool seen_zero = false;
    for (std::size_t k = 0; k < std::min(M.rows(), M.cols()); ++k) {
      if (r.D(k, k).is_zero()) seen_zero = true;
      else EXPECT_FALSE(seen_zero) << s;
    }
  }
}

TEST(Diagonalize, ZeroMatrixRejected) {
  auto a = weyl();
  EXPECT_THROW(diagonalize(OreMatrix(a, 2, 2)), DomainError);
}

TEST(Diagonalize, IterationCap) {
  auto a = weyl();
  DiagOptions o;
  o.max_iterations = 1;
  EXPECT_THROW(diagonalize(Mx(a, kRunning), o), IterationCapExceeded);
}

TEST(Diagonalize, ThreeByThreeShape) {
  auto a = weyl("t");
  OreMatrix M = Mx(a, "[[d^2, d+1, 0],[d+1, 0, d^3-t^2*d],[2*d+1, d^3+d^2, d^2]]");
  DiagResult r = diagonalize(M);
  auto deg = diagonal_degrees(r.D);
  std::sort(deg.begin(), deg.end());
  EXPECT_EQ(deg, (std::vector<long>{0, 0, 8}));
  const OrePoly& g = r.D(0, 0);
  EXPECT_EQ(g.leading().dpow, 8u);
  EXPECT_EQ(g.leading().exp[0], 2);
  expect_valid(M, r);
}

TEST(Diagonalize, TwoVariableWeyl) {
  auto a = make_algebra(preset_spec(Preset::Weyl, Field::rationals(), {"y", "x"}, "d"));
  OreMatrix M = Mx(a, "[[y^2*d^2+d+1, 1],[x*d, x^2*d^2+d+y]]");
  DiagResult r = diagonalize(M);
  OrePoly g = P(a, "-y^2*x^2*d^4-x^2*d^3-x^2*d^2-y^2*d^3+x*d+(-y^3-1)*d^2+(-y-1)*d-y");
  EXPECT_TRUE(same_up_to_scalar(r.D(0, 0), g)) << to_string(r.D);
  EXPECT_TRUE(same_up_to_scalar(r.D(1, 1), P(a, "1")));
  expect_valid(M, r);
}

TEST(Diagonalize, CommutativeParametersLoseCommonContent) {
  auto a = make_algebra(preset_spec(Preset::Custom, Field::rationals(), {"l1", "l2", "g"}, "d"));
  OreMatrix M = Mx(a, "[[l1*d^2+g, 0, -g],[0, l2*d^2+g, -g]]");
  DiagResult r = diagonalize(M);
  expect_valid(M, r);
  EXPECT_EQ(r.scale, BasePoly::variable(a->field(), 3, 2));
  std::vector<OrePoly> diag{r.D(0, 0), r.D(1, 1)};
  OrePoly want = P(a, "g*l1-g*l2");
  EXPECT_TRUE((same_up_to_scalar(diag[0], want) && diag[1] == P(a, "1")) ||
              (same_up_to_scalar(diag[1], want) && diag[0] == P(a, "1")));
  for (std::size_t i = 0; i < 2; ++i) EXPECT_TRUE(r.D(i, 2).is_zero());

  DiagOptions keep;
  keep.strip_common_content = false;
  DiagResult raw = diagonalize(M, keep);
  EXPECT_TRUE(raw.scale.is_one());
  EXPECT_EQ(raw.U * M * raw.V, raw.D);
}

TEST(Diagonalize, Deterministic) {
  auto a = weyl();
  OreMatrix M = Mx(a, "[[x*d^2+1, d-x, 1],[d, x^2, d+1],[1, d, x]]");
  DiagResult r1 = diagonalize(M), r2 = diagonalize(M);
  EXPECT_EQ(r1.U, r2.U);
  EXPECT_EQ(r1.V, r2.V);
  EXPECT_EQ(r1.D, r2.D);
}

TEST(Diagonalize, ConcurrentRunsAgree) {
  auto a = weyl();
  OreMatrix M = Mx(a, kRunning);
  DiagResult ref = diagonalize(M);
  std::vector<DiagResult> out(4);
  std::vector<std::thread> ts;
  for (std::size_t k = 0; k < out.size(); ++k) ts.emplace_back([&, k] { out[k] = diagonalize(M); });
  for (auto& t : ts) t.join();
  for (const auto& r : out) EXPECT_EQ(r.D, ref.D);
}

TEST(Verify, RunningExampleAllChecksPass) {
  auto a = weyl();
  OreMatrix M = Mx(a, kRunning);
  DiagResult r = diagonalize(M);
  VerifyReport v = verify_decomposition(M, r, 2);
  EXPECT_TRUE(v.ok());
  EXPECT_EQ(v.degree_sum, 2);
  EXPECT_TRUE(v.u_unimodular_over_r);
  EXPECT_TRUE(v.v_unimodular_over_r);
}

TEST(Verify, TamperedUFails) {
  auto a = weyl();
  OreMatrix M = Mx(a, kRunning);
  DiagResult r = diagonalize(M);
  r.U(0, 0) = r.U(0, 0) + P(a, "1");
  VerifyReport v = verify_decomposition(M, r);
  EXPECT_FALSE(v.identity);
  EXPECT_FALSE(v.ok());
}

TEST(Verify, DegreeSumMismatchReported) {
  auto a = weyl();
  OreMatrix M = Mx(a, kRunning);
  VerifyReport v = verify_decomposition(M, diagonalize(M), 3);
  EXPECT_FALSE(*v.degree_sum_matches);
  EXPECT_FALSE(v.ok());
}

TEST(Unimodular, RunningExampleV) {
  auto a = weyl();
  DiagResult r = diagonalize(Mx(a, kRunning));
  UnimodularityResult u = is_unimodular_over_rstar(r.V);
  ASSERT_TRUE(u.unimodular);
  ASSERT_TRUE(u.inverse);
  EXPECT_EQ(*u.inverse * r.V, OreMatrix::identity(a, 2));
  EXPECT_EQ(r.V * *u.inverse, OreMatrix::identity(a, 2));
  OreMatrix printed = Mx(a, "[[1, 0],[-(x+1)*d^2+x-2*d-1, 1]]");
  EXPECT_EQ(printed * Mx(a, "[[1, 0],[(x+1)*d^2+2*d-x+1, 1]]"), OreMatrix::identity(a, 2));
  EXPECT_TRUE(cols_up_to_scalar(*u.inverse, printed) || rows_up_to_scalar(*u.inverse, printed));
}

TEST(Unimodular, RunningExampleUOnlyOverR) {
  auto a = weyl();
  DiagResult r = diagonalize(Mx(a, kRunning));
  EXPECT_FALSE(is_unimodular_over_rstar(r.U).unimodular);
  EXPECT_TRUE(is_unimodular_over_r(r.U));
  // U * Z has only base entries; its determinant-like obstruction is (x+1)^2.
  OreMatrix U = Mx(a, "[[-x*d-d+x^2+x+1, x*d+d+x],[d-x, -d-1]]");
  OreMatrix Z = Mx(a, "[[2*d+2, (x+1)*d+x-2],[2*(d-x), (x+1)*d-x^2-x-3]]");
  EXPECT_EQ(U * Z, Mx(a, "[[0, -4*x^2-8*x-4],[2, 5*x+5]]"));
}

TEST(Unimodular, IdentityAndSingular) {
  auto a = weyl();
  auto u = is_unimodular_over_rstar(OreMatrix::identity(a, 2));
  EXPECT_TRUE(u.unimodular);
  EXPECT_EQ(*u.inverse, OreMatrix::identity(a, 2));
  EXPECT_FALSE(is_unimodular_over_rstar(Mx(a, "[[d, 0],[0, 1]]")).unimodular);
  EXPECT_FALSE(is_unimodular_over_r(Mx(a, "[[d, 0],[0, 1]]")));
  EXPECT_TRUE(is_unimodular_over_r(Mx(a, "[[x, 0],[0, 1]]")));
  EXPECT_FALSE(is_unimodular_over_rstar(Mx(a, "[[x, 0],[0, 1]]")).unimodular);
}

TEST(Unimodular, EchelonAndBasisAgree) {
  std::mt19937_64 rng(31);
  for (auto a : {weyl(), shift("x", "d")}) {
    for (int k = 0; k < 12; ++k) {
      OreMatrix W(a, 2, 2);
      for (std::size_t i = 0; i < 2; ++i)
        for (std::size_t j = 0; j < 2; ++j) W(i, j) = random_poly(rng, a, 1, 2, 3, 1);
      EXPECT_EQ(detail::unimodular_over_r_echelon(W), detail::unimodular_over_r_gb(W)) << to_string(W);
    }
    // x-unit times elementary operations: invertible over R only.
    OreMatrix E = Mx(a, "[[x+1, 0],[0, 1]]") * Mx(a, "[[1, d^2+x],[0, 1]]") * Mx(a, "[[1, 0],[x*d, 1]]");
    EXPECT_TRUE(detail::unimodular_over_r_echelon(E));
    EXPECT_TRUE(detail::unimodular_over_r_gb(E));
    EXPECT_FALSE(is_unimodular_over_rstar(E).unimodular);
  }
}

TEST(NormalizeDiagonal, UnitsFirst) {
  auto a = weyl();
  auto n = normalize_diagonal(Mx(a, "[[x*d+1, 0],[0, x]]"));
  ASSERT_EQ(n.size(), 2u);
  EXPECT_TRUE(n[0].num.is_constant());
  EXPECT_EQ(n[1].den, BasePoly::variable(a->field(), 1, 0));
  EXPECT_EQ(n[1].num, P(a, "x*d+1"));
}

TEST(DiagProperties, RandomFullRankMatrices) {
  std::mt19937_64 rng(17);
  std::vector<AlgebraPtr> algs{weyl(), shift("x", "d"), difference("x", "d")};
  int done = 0;
  for (int k = 0; k < 40 && done < 20; ++k) {
    auto a = algs[static_cast<std::size_t>(k) % algs.size()];
    const std::size_t n = 2 + static_cast<std::size_t>(k % 2);
    OreMatrix M(a, n, n);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) M(i, j) = random_poly(rng, a, 1, 2, 3);
    DiagResult r;
    try {
      r = diagonalize(M);
    } catch (const IterationCapExceeded&) {
      ADD_FAILURE() << "iteration cap on " << to_string(M);
      continue;
    }
    expect_valid(M, r);
    EXPECT_LE(r.iterations, 100u);
    // The degree sum of the input rows bounds nothing, but theta keeps degrees.
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j)
        if (a->has_involution()) {
          EXPECT_EQ(apply_theta(M(i, j)).degree(), M(i, j).degree());
        }
    ++done;
  }
}
