#include <gtest/gtest.h>

#include "superorbit/expression.hpp"
#include "test_support.hpp"

using namespace superorbit;

namespace {

AlgebraPtr theta_gamma() { return AlgebraBuilder().odd("theta").odd("gamma").build(); }

SuperElement P(const std::string& s, const AlgebraPtr& a) { return parse_expression(s, a); }

}  // namespace

TEST(Normalize, OddGeneratorsAnticommute) {
  auto A = theta_gamma();
  EXPECT_TRUE(P("theta*gamma + gamma*theta", A).is_zero());
}

TEST(Normalize, RelationsKillMonomials) {
  auto Q = AlgebraBuilder().even("eps").odd("theta").relation({{"eps", 2}}).relation({{"theta", 1}, {"eps", 1}}).build();
  EXPECT_TRUE(P("eps*eps", Q).is_zero());
  EXPECT_TRUE(P("theta*eps", Q).is_zero());
  EXPECT_FALSE(P("eps", Q).is_zero());
}

TEST(Normalize, TranspositionGivesSign) {
  auto A = AlgebraBuilder().odd("xi1").odd("xi2").build();
  EXPECT_EQ(P("xi2*xi1", A), -P("xi1*xi2", A));
}

TEST(Multiply, Expansion) {
  auto A = theta_gamma();
  EXPECT_EQ(P("(1+theta)*(1+gamma)", A), P("1 + theta + gamma + theta*gamma", A));
  EXPECT_TRUE(P("theta*gamma*theta", A).is_zero());
}

TEST(Multiply, EvenTimesOddOrderIndependent) {
  auto A = AlgebraBuilder().odd("theta").even("a").odd("b").build();
  EXPECT_EQ(P("b*theta", A), -P("theta*b", A));
  EXPECT_EQ(P("a*theta", A), P("theta*a", A));
}

TEST(Multiply, MatchesExteriorOracle) {
  std::mt19937_64 rng(3);
  auto G = testsupport::grassmann(5);
  for (int c = 0; c < 300; ++c) {
    auto a = testsupport::ext_random(5, rng), b = testsupport::ext_random(5, rng);
    ASSERT_EQ(testsupport::ext_to_element(a, G) * testsupport::ext_to_element(b, G),
              testsupport::ext_to_element(testsupport::ext_mul(a, b), G));
  }
}

TEST(Derivative, LeftDerivative) {
  auto A = theta_gamma();
  EXPECT_EQ(P("theta*gamma", A).derivative("theta"), P("gamma", A));
  EXPECT_EQ(P("theta*gamma", A).derivative("gamma"), P("-theta", A));
  // cross-check against Leibniz on theta * gamma
  SuperElement t = P("theta", A), g = P("gamma", A);
  EXPECT_EQ((t * g).derivative("gamma"), t.derivative("gamma") * g - t * g.derivative("gamma"));
}

TEST(Derivative, GroupLawCoordinate) {
  auto law = heisenberg::group_law(heisenberg::Row::parse("eoo"));
  EXPECT_EQ(law.mul.image("c").derivative("c1"), SuperElement::one(law.pair));
  EXPECT_EQ(law.mul.image("c").derivative("a1"), SuperElement::gen(law.pair, "b2"));
}

TEST(Exp, Nilpotent) {
  auto A = AlgebraBuilder().odd("theta").odd("c").build();
  EXPECT_EQ(P("i*theta*c", A).exp_nilpotent(), P("1 + i*theta*c", A));
  EXPECT_EQ(SuperElement::zero(A).exp_nilpotent(), SuperElement::one(A));
  auto G = testsupport::grassmann(4, "theta");
  EXPECT_EQ(P("theta1*theta2 + theta3*theta4", G).exp_nilpotent(),
            P("1 + theta1*theta2 + theta3*theta4 + theta1*theta2*theta3*theta4", G));
}

TEST(Exp, NotNilpotentThrows) {
  auto A = AlgebraBuilder().even("x").build();
  EXPECT_THROW(P("x", A).exp_nilpotent(), Error);
}

TEST(Twisted, FormalExponentials) {
  auto A = AlgebraBuilder().even("u").unit("u").even("c").build();
  SuperElement iuc = P("i*u*c", A);
  TwistedElement e(SuperElement::one(A), iuc), f(SuperElement::one(A), -iuc);
  EXPECT_EQ(e * f, TwistedElement(SuperElement::one(A)));
  EXPECT_EQ(e.derivative("c"), P("i*u", A) * e);
  EXPECT_TRUE(TwistedElement(SuperElement::zero(A), iuc).is_zero());
}

TEST(Twisted, DerivativeAgreesWithTruncatedSeries) {
  // in k[u, c]/(u^3) the exponential i*u*c is nilpotent and absorbed into the body
  auto T = AlgebraBuilder().even("u").even("c").truncate("u", 3).build();
  SuperElement iuc = P("i*u*c", T);
  TwistedElement e(SuperElement::one(T), iuc);
  EXPECT_TRUE(e.is_plain());
  EXPECT_EQ(e.to_plain(), iuc.exp_nilpotent());
  EXPECT_EQ(e.derivative("c").to_plain(), iuc.exp_nilpotent().derivative("c"));
  EXPECT_EQ(e.derivative("c").to_plain(), P("i*u", T) * iuc.exp_nilpotent());
}

TEST(Berezin, Calibration) {
  auto X = AlgebraBuilder().odd("xi").build();
  EXPECT_EQ(P("xi", X).berezin({"xi"}), SuperElement::one(X));
  EXPECT_TRUE(P("1", X).berezin({"xi"}).is_zero());
  auto Y = AlgebraBuilder().odd("xi1").odd("xi2").build();
  EXPECT_EQ(P("2 + 3*xi1 + 5*xi2 + 7*xi1*xi2", Y).berezin({"xi1", "xi2"}), P("7", Y));
  // order of integration variables matters by a sign
  auto S = AlgebraBuilder().odd("t").odd("s").build();
  EXPECT_EQ(P("s*t", S).berezin({"t", "s"}), P("-1", S));
}

TEST(Berezin, RejectsEvenVariable) {
  auto A = AlgebraBuilder().even("x").build();
  EXPECT_THROW(P("x", A).berezin({"x"}), Error);
}

TEST(Invert, Examples) {
  auto A = theta_gamma();
  EXPECT_EQ(P("1 + theta*gamma", A).invert(), P("1 - theta*gamma", A));
  EXPECT_EQ(P("2 + i*theta*gamma", A).invert(), P("1/2 - i/4*theta*gamma", A));
  EXPECT_EQ(P("2 + i*theta*gamma", A) * P("2 + i*theta*gamma", A).invert(), SuperElement::one(A));
  auto U = AlgebraBuilder().even("u").unit("u").build();
  EXPECT_EQ(P("u", U).invert(), P("u^-1", U));
  EXPECT_EQ(P("u", U) * P("u^-1", U), SuperElement::one(U));
}

TEST(Invert, NonInvertibleThrows) {
  auto A = theta_gamma();
  EXPECT_THROW(P("theta", A).invert(), Error);
  auto X = AlgebraBuilder().even("x").build();
  EXPECT_THROW(P("1 + x", X).invert(), Error);
}

TEST(Conjugate, Examples) {
  auto A = theta_gamma();
  EXPECT_EQ(P("i*theta", A).conjugate(), P("-i*theta", A));
  std::mt19937_64 rng(9);
  for (int c = 0; c < 50; ++c) {
    SuperElement e = random_element(A, rng);
    EXPECT_EQ(e.conjugate().conjugate(), e);
  }
  auto F = harmonic::odd_fourier(2);
  SuperElement s = P("theta1*xi1 + theta2*xi2", F.alg);
  EXPECT_EQ((s * -Scalar::i()).exp_nilpotent().conjugate(), (s * Scalar::i()).exp_nilpotent());
}

TEST(Parser, RoundTrip) {
  std::mt19937_64 rng(21);
  auto A = testsupport::mixed_algebra();
  for (int c = 0; c < 300; ++c) {
    SuperElement e = random_element(A, rng, 5, 2);
    ASSERT_EQ(P(e.to_string(), A), e) << e.to_string();
  }
  EXPECT_EQ(P("u^-2", A) * P("u^2", A), SuperElement::one(A));
}

TEST(Parser, Berezin) {
  auto S = AlgebraBuilder().odd("t").odd("s").even("x").build();
  EXPECT_EQ(P("D(t, s)(x*s*t)", S), P("-x", S));
  EXPECT_THROW(P("D(x)(x)", S), ParseError);
}

TEST(Parser, ErrorLocations) {
  auto A = theta_gamma();
  try {
    parse_expression("theta +\n  zeta", A);
    FAIL();
  } catch (const ParseError& e) {
    EXPECT_EQ(e.line(), 2);
    EXPECT_EQ(e.column(), 3);
  }
  EXPECT_THROW(P("theta / theta", A), ParseError);
  EXPECT_THROW(P("(theta", A), ParseError);
  EXPECT_THROW(P("theta $", A), ParseError);
}

TEST(Properties, KernelSuite) {
  std::mt19937_64 rng(1);
  auto f = testsupport::kernel_properties(rng, 200);
  EXPECT_EQ(f.supercommutativity, 0);
  EXPECT_EQ(f.associativity, 0);
  EXPECT_EQ(f.leibniz, 0);
  EXPECT_EQ(f.anticommutation, 0);
  EXPECT_EQ(f.exp_hom, 0);
  EXPECT_EQ(f.by_parts, 0);
}
