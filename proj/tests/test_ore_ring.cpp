#include <gtest/gtest.h>

#include <random>
#include <thread>

#include "oreform/oreform.hpp"
#include "oracles.hpp"
#include "test_util.hpp"

using namespace oreform;
using namespace testutil;

TEST(ValidateAlgebra, WeylPresetIsValid) {
  AlgebraPtr a = weyl();
  EXPECT_TRUE(a->is_simple());
  EXPECT_TRUE(a->has_involution());
}

TEST(ValidateAlgebra, IncompatibleDerivationNamesPair) {
  const Field f = Field::rationals();
  AlgebraSpec s = preset_spec(Preset::Custom, f, {"x", "y"}, "d");
  s.endo.v[0] = 1;
  s.deriv.images[0] = BasePoly::variable(f, 2, 1);
  s.deriv.images[1] = BasePoly::one(f, 2);
  try {
    validate_algebra_spec(s);
    FAIL() << "expected IncompatibleDerivation";
  } catch (const ValidationError& e) {
    EXPECT_EQ(e.reason(), ValidationError::Reason::IncompatibleDerivation);
    EXPECT_EQ(e.variables(), std::make_pair(std::size_t{0}, std::size_t{1}));
    EXPECT_NE(std::string(e.what()).find("(x,y)"), std::string::npos);
  }
}

TEST(ValidateAlgebra, NonInvertibleSigma) {
  AlgebraSpec s = preset_spec(Preset::Custom, Field::rationals(), {"x"}, "d");
  s.endo.u[0] = 0;
  s.endo.v[0] = 1;
  try {
    validate_algebra_spec(s);
    FAIL() << "expected NonInvertibleSigma";
  } catch (const ValidationError& e) {
    EXPECT_EQ(e.reason(), ValidationError::Reason::NonInvertibleSigma);
    EXPECT_EQ(e.variables().first, 0U);
  }
}

TEST(ValidateAlgebra, SimplicityFlag) {
  EXPECT_FALSE(weyl("x", "d", Field::prime(5))->is_simple());
  EXPECT_FALSE(shift()->is_simple());
  EXPECT_FALSE(difference()->is_simple());
  EXPECT_FALSE(qweyl(2)->is_simple());
}

TEST(ValidateAlgebra, RejectsBrokenInvolution) {
  AlgebraSpec s = preset_spec(Preset::Weyl, Field::rationals(), {"x"}, "d");
  s.involution->op_image[0].coeff = 1;  // theta(d) = d reverses nothing
  EXPECT_THROW(make_algebra(s), ValidationError);
}

TEST(OreMul, WeylCommutation) {
  AlgebraPtr a = weyl();
  EXPECT_EQ(P(a, "d") * P(a, "x"), P(a, "x*d + 1"));
  EXPECT_EQ(to_string(P(a, "d") * P(a, "x")), "x*d+1");
}

TEST(OreMul, WeylSquares) {
  AlgebraPtr a = weyl();
  OrePoly lhs = P(a, "d^2") * P(a, "x^2");
  EXPECT_EQ(lhs, P(a, "x^2*d^2 + 4*x*d + 2"));
  // Operator action on x^m for m <= 4.
  for (unsigned m = 0; m <= 4; ++m) {
    std::vector<Scalar> c(m + 1, Scalar(0));
    c[m] = 1;
    UPoly p(Field::rationals(), c);
    UPoly direct = apply_op(Action::Derivative, apply_op(Action::Derivative, UPoly::x(Field::rationals()) *
                                                                                 UPoly::x(Field::rationals()) * p));
    EXPECT_EQ(act(Action::Derivative, lhs, p), direct);
  }
}

TEST(OreMul, OneIsNeutral) {
  std::mt19937_64 rng(1);
  for (AlgebraPtr a : {weyl(), shift(), qweyl(3)}) {
    for (int k = 0; k < 20; ++k) {
      OrePoly f = random_poly(rng, a, 3, 4);
      EXPECT_EQ(f * OrePoly::one(a), f);
      EXPECT_EQ(OrePoly::one(a) * f, f);
    }
  }
}

TEST(OreMul, OtherPresetRelations) {
  EXPECT_EQ(to_string(P(shift(), "S*t")), "t*S+S");
  EXPECT_EQ(to_string(P(difference(), "D*x")), "x*D+D+1");
  AlgebraPtr q = qweyl(2);
  EXPECT_EQ(P(q, "d*x"), P(q, "2*x*d + 1"));
  AlgebraPtr qd =
      make_algebra(preset_spec(Preset::QDifference, Field::rationals(), {"x"}, "d", std::nullopt, Scalar(3)));
  EXPECT_EQ(P(qd, "d*x"), P(qd, "3*x*d + 2*x"));
}

TEST(OreMul, MismatchedAlgebrasThrow) {
  EXPECT_THROW(P(weyl(), "d") * P(shift("x", "d"), "d"), DomainError);
}

TEST(LeadingData, Examples) {
  AlgebraPtr a = weyl();
  LeadingData l = leading_data(P(a, "x*d + 1"));
  EXPECT_EQ(l.dpow, 1U);
  EXPECT_EQ(l.exp[0], 1);
  EXPECT_EQ(l.degree, 1);
  l = leading_data(P(a, "d^3 + x^5*d^2"));
  EXPECT_EQ(l.dpow, 3U);
  EXPECT_EQ(l.exp[0], 0);
  EXPECT_EQ(l.degree, 3);
  l = leading_data(P(a, "x^2 + x"));
  EXPECT_EQ(l.exp[0], 2);
  EXPECT_EQ(l.degree, 0);
  EXPECT_THROW(leading_data(OrePoly(a)), DomainError);
  EXPECT_EQ(OrePoly(a).degree(), kMinusInfinity);
}

TEST(RingProperties, AssociativityAndDistributivity) {
  std::mt19937_64 rng(17);
  const Field f = Field::rationals();
  AlgebraSpec custom = preset_spec(Preset::Custom, f, {"y", "x"}, "d");
  custom.endo.u[1] = 2;
  custom.endo.v[1] = 1;
  custom.deriv.images[1] = BasePoly::variable(f, 2, 0);
  for (AlgebraPtr a : {weyl(), shift(), difference(), qweyl(2), make_algebra(custom)}) {
    for (int k = 0; k < 25; ++k) {
      OrePoly x = random_poly(rng, a, 3, 4), y = random_poly(rng, a, 3, 4), z = random_poly(rng, a, 3, 4);
      EXPECT_EQ((x * y) * z, x * (y * z));
      EXPECT_EQ(x * (y + z), x * y + x * z);
      EXPECT_EQ((x + y) * z, x * z + y * z);
      if (!x.is_zero() && !y.is_zero()) {
        EXPECT_EQ((x * y).degree(), x.degree() + y.degree());
      }
    }
  }
}

TEST(RingProperties, OperatorActionOracle) {
  std::mt19937_64 rng(23);
  std::vector<std::pair<AlgebraPtr, Action>> cases{
      {weyl(), Action::Derivative}, {shift("x", "S"), Action::Shift}, {difference(), Action::Difference}};
  for (auto& [a, act_kind] : cases) {
    for (int k = 0; k < 50; ++k) {
      OrePoly f = random_poly(rng, a, 3, 3), g = random_poly(rng, a, 3, 3);
      UPoly p = random_upoly(rng, 5);
      EXPECT_EQ(act(act_kind, f * g, p), act(act_kind, f, act(act_kind, g, p)));
    }
  }
}

TEST(Involution, WeylExamples) {
  AlgebraPtr a = weyl();
  EXPECT_EQ(apply_involution(Mx(a, "[[d]]")), Mx(a, "[[-d]]"));
  EXPECT_EQ(apply_involution(OreMatrix::identity(a, 3)), OreMatrix::identity(a, 3));
  EXPECT_EQ(apply_involution(Mx(a, "[[x*d]]")), Mx(a, "[[-x*d-1]]"));
  OreMatrix m = Mx(a, "[[d^2-1, d+1],[d^2+1, d-x]]");
  EXPECT_EQ(apply_involution(apply_involution(m)), m);
  EXPECT_EQ(apply_involution(m).rows(), 2U);
}

TEST(Involution, AntiAutomorphismOnRandomPairs) {
  std::mt19937_64 rng(29);
  for (AlgebraPtr a : {weyl(), shift(), difference()}) {
    for (int k = 0; k < 30; ++k) {
      OrePoly f = random_poly(rng, a, 3, 4), g = random_poly(rng, a, 3, 4);
      EXPECT_EQ(apply_theta(f * g), apply_theta(g) * apply_theta(f));
      EXPECT_EQ(apply_theta(apply_theta(f)), f);
      EXPECT_EQ(apply_theta(f).degree(), f.degree());
    }
  }
}

TEST(Involution, MissingForQAlgebras) {
  AlgebraPtr a = qweyl(2);
  EXPECT_FALSE(a->has_involution());
  EXPECT_THROW(apply_involution(Mx(a, "[[d]]")), ValidationError);
  EXPECT_EQ(side_swap_for(*a), SideSwap::Opposite);
}

TEST(Opposite, WeylRelationAndEntry) {
  AlgebraPtr a = weyl();
  auto [op, m] = opposite_transport(Mx(a, "[[x*d]]"));
  EXPECT_EQ(to_string(OrePoly::op(op) * OrePoly::variable(op, 0)), "x*d-1");
  EXPECT_EQ(to_string(m(0, 0)), "x*d-1");
}

TEST(Opposite, ShiftRelation) {
  AlgebraPtr a = shift();
  AlgebraPtr op = a->opposite();
  // S * t = (t - 1) S in the opposite ring.
  EXPECT_EQ(to_string(OrePoly::op(op) * OrePoly::variable(op, 0)), "t*S-S");
  // The difference algebra gives D * x = (x - 1) D - 1 there.
  AlgebraPtr dop = difference()->opposite();
  EXPECT_EQ(to_string(OrePoly::op(dop) * OrePoly::variable(dop, 0)), "x*D-D-1");
}

TEST(Opposite, StarIdentityOnRandomPairs) {
  std::mt19937_64 rng(31);
  for (AlgebraPtr a : {weyl(), shift(), difference(), qweyl(2)}) {
    AlgebraPtr op = a->opposite();
    for (int k = 0; k < 10; ++k) {
      OrePoly f = random_poly(rng, a, 2, 3), g = random_poly(rng, a, 2, 3);
      EXPECT_EQ(to_opposite(f, op) * to_opposite(g, op), to_opposite(g * f, op));
    }
  }
}

TEST(Opposite, ScalarAndRoundTrip) {
  std::mt19937_64 rng(37);
  AlgebraPtr a = qweyl(3);
  auto [op, s] = opposite_transport(Mx(a, "[[5]]"));
  EXPECT_EQ(s(0, 0), OrePoly::constant(op, Scalar(5)));
  OreMatrix m(a, 2, 3);
  for (std::size_t i = 0; i < 2; ++i)
    for (std::size_t j = 0; j < 3; ++j) m(i, j) = random_poly(rng, a, 3, 4);
  auto [op2, t] = opposite_transport(m);
  auto [back, u] = opposite_transport(t);
  EXPECT_EQ(back.get(), a.get());
  EXPECT_EQ(u, m);
  for (std::size_t i = 0; i < 2; ++i)
    for (std::size_t j = 0; j < 3; ++j) EXPECT_EQ(t(j, i).degree(), m(i, j).degree());
}

TEST(Concurrency, SharedAlgebraAcrossThreads) {
  AlgebraPtr a = weyl();
  OrePoly f = P(a, "x^3*d^4 + d^2 - x");
  OrePoly expected = f * f;
  AlgebraPtr fresh = weyl();
  OrePoly g = P(fresh, "x^3*d^4 + d^2 - x");
  std::vector<std::thread> ts;
  std::vector<int> ok(4, 0);
  for (int k = 0; k < 4; ++k) ts.emplace_back([&, k] { ok[k] = (g * g == expected); });
  for (auto& t : ts) t.join();
  for (int v : ok) EXPECT_EQ(v, 1);
}
