#include <gtest/gtest.h>

#include <random>

#include "oreform/coeff_core.hpp"
#include "test_util.hpp"

using namespace oreform;

namespace {

const Field QQ = Field::rationals();

BasePoly var(std::size_t n, std::size_t i) { return BasePoly::variable(QQ, n, i); }
BasePoly cst(std::size_t n, long c) { return BasePoly::constant(QQ, n, Scalar(c)); }

EndoSpec shift1() {
  EndoSpec e = EndoSpec::identity(1);
  e.v[0] = 1;
  return e;
}

BasePoly random_base(std::mt19937_64& rng, Field f, std::size_t n, unsigned maxdeg, int nterms) {
  std::uniform_int_distribution<int> c(-5, 5), d(0, static_cast<int>(maxdeg));
  std::vector<BaseTerm> t;
  for (int k = 0; k < nterms; ++k) {
    Exponents e{};
    for (std::size_t i = 0; i < n; ++i) e[i] = static_cast<std::uint16_t>(d(rng));
    t.push_back({e, f.from_int(c(rng))});
  }
  return BasePoly::from_terms(f, n, std::move(t));
}

}  // namespace

TEST(Scalar, RationalsStayReduced) {
  Scalar a(6, 4);
  a.canonicalize();
  EXPECT_EQ(a.get_num(), 3);
  EXPECT_EQ(a.get_den(), 2);
  Scalar b = QQ.mul(a, Scalar(4, 9));
  EXPECT_EQ(b, Scalar(2, 3));
  EXPECT_GT(b.get_den(), 0);
}

TEST(Scalar, PrimeFieldResidues) {
  Field f = Field::prime(7);
  EXPECT_EQ(f.reduce(Scalar(-1)), 6);
  EXPECT_EQ(f.reduce(Scalar(1, 3)), 5);
  EXPECT_EQ(f.mul(Scalar(3), f.inv(Scalar(3))), 1);
  EXPECT_THROW(Field::prime(9), DomainError);
  EXPECT_THROW(f.inv(Scalar(0)), DomainError);
}

TEST(Scalar, FieldAxiomsOnRandomTriples) {
  std::mt19937_64 rng(11);
  std::uniform_int_distribution<int> d(-50, 50);
  for (Field f : {QQ, Field::prime(101)}) {
    for (int k = 0; k < 200; ++k) {
      Scalar a = f.reduce(Scalar(d(rng), 1 + (d(rng) + 50) % 7));
      Scalar b = f.reduce(Scalar(d(rng)));
      Scalar c = f.reduce(Scalar(d(rng), 3));
      EXPECT_EQ(f.mul(a, f.add(b, c)), f.add(f.mul(a, b), f.mul(a, c)));
      EXPECT_EQ(f.add(f.add(a, b), c), f.add(a, f.add(b, c)));
      EXPECT_EQ(f.mul(f.mul(a, b), c), f.mul(a, f.mul(b, c)));
      if (!is_zero(a)) {
        EXPECT_EQ(f.mul(a, f.inv(a)), 1);
      }
      EXPECT_EQ(f.add(a, f.neg(a)), 0);
      if (!f.is_rational()) {
        for (const Scalar& v : {f.add(a, b), f.mul(a, c)}) {
          EXPECT_GE(v, 0);
          EXPECT_LT(v, 101);
        }
      }
    }
  }
}

TEST(ApplyEndomorphism, IdentityLeavesPolynomial) {
  BasePoly p = var(1, 0) * var(1, 0) + cst(1, 1);
  EXPECT_EQ(apply_endomorphism(EndoSpec::identity(1), p), p);
}

TEST(ApplyEndomorphism, ShiftSquare) {
  BasePoly t = var(1, 0);
  EXPECT_EQ(apply_endomorphism(shift1(), t * t), t * t + t.scaled(2) + cst(1, 1));
}

TEST(ApplyEndomorphism, QScaling) {
  EndoSpec e = EndoSpec::identity(1);
  e.u[0] = 2;
  BasePoly x = var(1, 0);
  EXPECT_EQ(apply_endomorphism(e, x.pow(3)), x.pow(3).scaled(8));
}

TEST(ApplyEndomorphism, ArityMismatch) {
  EXPECT_THROW(apply_endomorphism(EndoSpec::identity(2), var(1, 0)), DomainError);
}

TEST(ApplyDerivation, WeylIsOrdinaryDerivative) {
  DerivSpec d = DerivSpec::zero(QQ, 1);
  d.images[0] = cst(1, 1);
  BasePoly x = var(1, 0);
  EXPECT_EQ(apply_derivation(EndoSpec::identity(1), d, x.pow(3)), x.pow(2).scaled(3));
}

TEST(ApplyDerivation, DifferenceOperator) {
  DerivSpec d = DerivSpec::zero(QQ, 1);
  d.images[0] = cst(1, 1);
  BasePoly x = var(1, 0);
  EXPECT_EQ(apply_derivation(shift1(), d, x * x), x.scaled(2) + cst(1, 1));
}

TEST(ApplyDerivation, QWeylSquare) {
  EndoSpec e = EndoSpec::identity(1);
  e.u[0] = 2;
  DerivSpec d = DerivSpec::zero(QQ, 1);
  d.images[0] = cst(1, 1);
  BasePoly x = var(1, 0);
  EXPECT_EQ(apply_derivation(e, d, x * x), x.scaled(3));
}

TEST(ApplyDerivation, RejectsIncompatibleImages) {
  EndoSpec e = EndoSpec::identity(2);
  e.v[0] = 1;
  DerivSpec d = DerivSpec::zero(QQ, 2);
  d.images[0] = var(2, 1);
  d.images[1] = cst(2, 1);
  EXPECT_THROW(apply_derivation(e, d, var(2, 0)), ValidationError);
}

TEST(CommonDenominator, Examples) {
  EXPECT_EQ(common_denominator({cst(1, 1)}), cst(1, 1));
  BasePoly x = var(1, 0);
  EXPECT_EQ(common_denominator({x, x - cst(1, 1)}), x * x - x);
  EXPECT_EQ(common_denominator({x, x * x + x}, DenominatorStrategy::Lcm), x * x + x);
  EXPECT_THROW(common_denominator({x, BasePoly(QQ, 1)}), DomainError);
}

TEST(BaseProperties, EndomorphismIsMultiplicative) {
  std::mt19937_64 rng(3);
  EndoSpec e = EndoSpec::identity(2);
  e.u[1] = Scalar(3, 2);
  e.v[0] = -2;
  for (int k = 0; k < 50; ++k) {
    BasePoly p = random_base(rng, QQ, 2, 3, 4), q = random_base(rng, QQ, 2, 3, 4);
    EXPECT_EQ(apply_endomorphism(e, p * q), apply_endomorphism(e, p) * apply_endomorphism(e, q));
    EXPECT_EQ(apply_endomorphism(e, p + q), apply_endomorphism(e, p) + apply_endomorphism(e, q));
  }
}

TEST(BaseProperties, SkewLeibniz) {
  std::mt19937_64 rng(5);
  const std::size_t n = 2;
  // q-difference in x_2 with a central parameter x_1.
  EndoSpec e = EndoSpec::identity(n);
  e.u[1] = 3;
  DerivSpec d = DerivSpec::zero(QQ, n);
  d.images[1] = var(n, 1).scaled(2);
  for (Field f : {QQ, Field::prime(13)}) {
    EndoSpec ef = e;
    DerivSpec df = DerivSpec::zero(f, n);
    df.images[1] = BasePoly::variable(f, n, 1).scaled(2);
    for (int k = 0; k < 50; ++k) {
      BasePoly p = random_base(rng, f, n, 3, 3), q = random_base(rng, f, n, 3, 3);
      EXPECT_EQ(apply_derivation(ef, df, p * q),
                apply_endomorphism(ef, p) * apply_derivation(ef, df, q) + apply_derivation(ef, df, p) * q);
    }
  }
}

TEST(BaseProperties, CommonDenominatorDividesEveryInput) {
  std::mt19937_64 rng(9);
  for (int k = 0; k < 30; ++k) {
    std::vector<BasePoly> dens;
    for (int j = 0; j < 3; ++j) {
      BasePoly p = random_base(rng, QQ, 2, 2, 3);
      if (p.is_zero()) p = cst(2, 1);
      dens.push_back(p);
    }
    BasePoly c = common_denominator(dens);
    for (const auto& d : dens) EXPECT_TRUE(c.divide_exact(d).has_value());
  }
  for (int k = 0; k < 30; ++k) {
    std::vector<BasePoly> dens;
    for (int j = 0; j < 3; ++j) {
      BasePoly p = random_base(rng, QQ, 1, 4, 3);
      if (p.is_zero()) p = cst(1, 2);
      dens.push_back(p);
    }
    BasePoly c = common_denominator(dens, DenominatorStrategy::Lcm);
    for (const auto& d : dens) EXPECT_TRUE(UPoly::from_base(c).divmod(UPoly::from_base(d)).second.is_zero());
  }
}
