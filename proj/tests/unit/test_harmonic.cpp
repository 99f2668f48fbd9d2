#include <gtest/gtest.h>

#include "superorbit/expression.hpp"
#include "test_support.hpp"

using namespace superorbit;
using heisenberg::GroupPoint;
using heisenberg::Row;

namespace {

SuperElement P(const std::string& s, const AlgebraPtr& a) { return parse_expression(s, a); }

std::vector<SuperElement> monomials(const harmonic::OddFourier& F) {
  AlgebraBuilder b;
  for (const auto& s : F.xi) b.odd(s);
  MonomialBasis mb(b.build(), 0);
  std::vector<SuperElement> out;
  for (std::size_t i = 0; i < mb.size(); ++i) out.push_back(embed(mb.element(i), F.alg));
  return out;
}

// random function of xi only, with coefficients in Q[i]
SuperElement random_xi_function(const harmonic::OddFourier& F, std::mt19937_64& rng, std::optional<Parity> p = {}) {
  SuperElement f = SuperElement::zero(F.alg);
  for (const auto& m : monomials(F))
    if (!p || m.parity() == *p) f += m * random_scalar(rng);
  return f;
}

harmonic::PolarizedModule clifford() {
  auto T = AlgebraBuilder().even("u").unit("u").build();
  return harmonic::polarized_space(Row::parse("ooe"), SuperElement::gen(T, "u"));
}

harmonic::PolarizedModule odd_heisenberg() {
  auto T = AlgebraBuilder().odd("theta").build();
  return harmonic::polarized_space(Row::parse("eoo"), SuperElement::gen(T, "theta"));
}

}  // namespace

TEST(RegularAction, Translations) {
  auto F = harmonic::odd_fourier(1);
  SuperElement xi = P("xi1", F.alg), g = P("eta1", F.alg);
  EXPECT_EQ(harmonic::regular_action(F, {g}, xi), P("xi1 - eta1", F.alg));
  EXPECT_EQ(harmonic::regular_action(F, {SuperElement::zero(F.alg)}, xi), xi);
}

TEST(RegularAction, HeisenbergCoordinate) {
  Row r = Row::parse("eee");
  auto R = AlgebraBuilder().even("a").even("b").even("c").even("ap").even("bp").even("cp").build();
  GroupPoint g{P("ap", R), P("bp", R), P("cp", R), r};
  TwistedElement out = harmonic::pi_polarized(g, TwistedElement(P("c", R)));
  EXPECT_EQ(out, TwistedElement(P("c - cp + ap*bp - ap*b", R)));
}

TEST(Character, Multiplier) {
  auto F = harmonic::odd_fourier(1);
  EXPECT_EQ(harmonic::character_multiplier(F, {SuperElement::zero(F.alg)}), SuperElement::one(F.alg));
  EXPECT_EQ(harmonic::character_multiplier(F, {P("eta1", F.alg)}), P("1 + i*theta1*eta1", F.alg));
  auto G = harmonic::odd_fourier(3);
  auto eta = harmonic::gens(G, G.eta), xi = harmonic::gens(G, G.xi);
  std::vector<SuperElement> sum;
  for (int j = 0; j < 3; ++j) sum.push_back(eta[j] + xi[j]);
  EXPECT_EQ(harmonic::character_multiplier(G, eta) * harmonic::character_multiplier(G, xi),
            harmonic::character_multiplier(G, sum));
}

TEST(Character, ModuleRankAndSpecialVector) {
  for (int n = 1; n <= 3; ++n) {
    auto F = harmonic::odd_fourier(n);
    auto M = harmonic::character_module(F);
    EXPECT_EQ(M.rank, (orbit::SuperDim{1, 0})) << n;
    ASSERT_EQ(M.basis.size(), 1u);
    // the basis vector is a constant multiple of psi_0
    SuperElement psi0 = harmonic::special_vector(F), b = M.basis[0].body();
    Scalar c = b.constant_term();
    ASSERT_FALSE(c.is_zero());
    EXPECT_EQ(b, psi0 * c) << n;
    // scalar supertrace on a rank 1|0 module is the scalar itself
    auto T = harmonic::scalar_operator(M, P("1 + theta1", F.base));
    EXPECT_EQ(harmonic::supertrace(T), P("1 + theta1", F.base));
  }
}

TEST(PiOfFunction, OddLine) {
  auto F = harmonic::odd_fourier(1);
  EXPECT_TRUE(harmonic::pi_of_function(F, SuperElement::zero(F.alg)).is_zero());
  // int D(xi) (f0 + f1 xi)(1 + i theta xi) = f1 + i f0 int D(xi) theta xi = f1 - i f0 theta
  EXPECT_EQ(harmonic::pi_of_function(F, P("3 + 5*xi1", F.alg)), P("5 - 3*i*theta1", F.alg));
}

TEST(PiOfFunction, DeltaIsIdentity) {
  for (int n = 1; n <= 4; ++n) {
    auto F = harmonic::odd_fourier(n);
    EXPECT_EQ(harmonic::pi_of_function(F, harmonic::delta(F)), SuperElement::one(F.alg)) << n;
  }
}

TEST(FourierInversion, Examples) {
  auto F = harmonic::odd_fourier(1);
  auto id = harmonic::fourier_inversion(F, P("3 + 5*xi1", F.alg));
  EXPECT_EQ(id.lhs, P("-3*i", F.alg));
  EXPECT_TRUE(id.holds());
  EXPECT_TRUE(harmonic::fourier_inversion(F, P("5*xi1", F.alg)).lhs.is_zero());
  // n = 2: the constant (-1)^3 i^2 is 1
  auto G = harmonic::odd_fourier(2);
  EXPECT_EQ(harmonic::inversion_constant(2), Scalar(1));
  std::mt19937_64 rng(41);
  for (int c = 0; c < 10; ++c) {
    SuperElement f = random_xi_function(G, rng);
    auto id2 = harmonic::fourier_inversion(G, f);
    EXPECT_EQ(id2.lhs, SuperElement::constant(G.alg, f.constant_term()));
  }
}

TEST(FourierInversion, AllMonomials) {
  for (int n = 1; n <= 4; ++n) {
    auto F = harmonic::odd_fourier(n);
    for (const auto& m : monomials(F)) EXPECT_TRUE(harmonic::fourier_inversion(F, m).holds()) << n << " " << m.to_string();
  }
}

TEST(Plancherel, AllMonomialPairs) {
  for (int n = 1; n <= 3; ++n) {
    auto F = harmonic::odd_fourier(n);
    auto ms = monomials(F);
    for (const auto& f : ms)
      for (const auto& g : ms) EXPECT_TRUE(harmonic::plancherel(F, f, g).holds()) << n << " " << f.to_string() << ", " << g.to_string();
  }
}

TEST(Convolution, DeltaAndZero) {
  std::mt19937_64 rng(43);
  for (int n = 1; n <= 3; ++n) {
    auto F = harmonic::odd_fourier(n);
    SuperElement d = harmonic::delta(F);
    for (Parity p : {Parity::Even, Parity::Odd}) {
      SuperElement f = random_xi_function(F, rng, p);
      Scalar right = sign_scalar(n % 2 == 1 && p == Parity::Odd);  // (-1)^{n|f|}
      Scalar left = sign_scalar(n % 2 == 1);                        // (-1)^n
      EXPECT_EQ(harmonic::convolution(F, f, d), f * right) << n;
      EXPECT_EQ(harmonic::convolution(F, d, f), f * left) << n;
      EXPECT_TRUE(harmonic::convolution(F, f, SuperElement::zero(F.alg)).is_zero());
    }
  }
}

TEST(Convolution, AssociativeUpToSign) {
  std::mt19937_64 rng(47);
  for (int n = 1; n <= 3; ++n) {
    auto F = harmonic::odd_fourier(n);
    for (int c = 0; c < 6; ++c) {
      Parity pf = testsupport::random_parity(rng);
      SuperElement f = random_xi_function(F, rng, pf), g = random_xi_function(F, rng), h = random_xi_function(F, rng);
      Scalar s = sign_scalar(n % 2 == 1 && pf == Parity::Even);  // (-1)^{n(|f|+1)}
      EXPECT_EQ(harmonic::convolution(F, harmonic::convolution(F, f, g), h),
                harmonic::convolution(F, f, harmonic::convolution(F, g, h)) * s)
          << n;
    }
  }
}

TEST(Convolution, PiIsMultiplicative) {
  std::mt19937_64 rng(53);
  auto F = harmonic::odd_fourier(2);
  for (int c = 0; c < 10; ++c) {
    SuperElement f = random_xi_function(F, rng, Parity::Even), g = random_xi_function(F, rng, Parity::Even);
    EXPECT_EQ(harmonic::pi_of_function(F, harmonic::convolution(F, f, g)),
              harmonic::pi_of_function(F, f) * harmonic::pi_of_function(F, g));
  }
}

TEST(Polarized, CliffordModule) {
  auto M = clifford();
  EXPECT_EQ(M.rank, (orbit::SuperDim{1, 1}));
  EXPECT_TRUE(M.free);
  ASSERT_EQ(M.basis.size(), 2u);
  SuperElement iuc = P("i*u*c", M.ambient);
  EXPECT_EQ(M.basis[0], TwistedElement(SuperElement::one(M.ambient), iuc));
  EXPECT_EQ(M.basis[1], TwistedElement(P("b", M.ambient), iuc));
}

TEST(Polarized, OddHeisenbergModuleIsPlain) {
  auto M = odd_heisenberg();
  EXPECT_EQ(M.rank, (orbit::SuperDim{1, 1}));
  ASSERT_EQ(M.basis.size(), 2u);
  EXPECT_TRUE(M.basis[0].is_plain());
  EXPECT_EQ(M.basis[0].to_plain(), P("1 + i*theta*c", M.ambient));
  EXPECT_EQ(M.basis[1].to_plain(), P("b*(1 + i*theta*c)", M.ambient));
}

TEST(Polarized, AlternativePolarizationIsExploratory) {
  auto T = AlgebraBuilder().odd("theta").build();
  auto M = harmonic::polarized_space(Row::parse("eoo"), SuperElement::gen(T, "theta"), "yz");
  EXPECT_TRUE(M.exploratory);
  EXPECT_NE(M.rank, (orbit::SuperDim{1, 1}));
}

TEST(Polarized, PolarizationEquations) {
  for (auto M : {clifford(), odd_heisenberg()}) {
    Row r = Row::parse(M.family);
    auto f = heisenberg::invariant_fields(M.ambient, r);
    for (const auto& psi : M.basis) {
      EXPECT_TRUE(harmonic::apply_field(f.Rx, psi).is_zero());
      EXPECT_EQ(harmonic::apply_field(f.Rz, psi), (M.gamma * -Scalar::i()) * psi);
    }
  }
}

TEST(PiPolarized, IdentityAndCliffordFormula) {
  auto M = clifford();
  Row r = Row::parse("ooe");
  AlgebraPtr R = harmonic::rep_parameter_algebra(M);
  for (const auto& psi : M.basis) EXPECT_EQ(harmonic::pi_polarized(GroupPoint::identity(R, r), psi), harmonic::embed_twisted(psi, R));
  // coordinates a' = eta1, b' = eta2, c' = s1
  GroupPoint g{P("eta1", R), P("eta2", R), P("s1", R), r};
  TwistedElement got = harmonic::pi_polarized(g, M.basis[1]);
  TwistedElement want(P("b - eta2", R), P("i*u*(c - eta1*b + eta1*eta2 - s1)", R));
  EXPECT_EQ(got, want) << got.to_string();
}

TEST(PiPolarized, HomomorphismOnRandomPairs) {
  for (auto M : {clifford(), odd_heisenberg()}) {
    Row r = Row::parse(M.family);
    AlgebraPtr R = harmonic::rep_parameter_algebra(M);
    std::vector<std::string> params{"eta1", "eta2", "eta3", "eta4", "s1", "s2"};
    std::mt19937_64 rng(59);
    for (int c = 0; c < 10; ++c) {
      GroupPoint g1 = random_group_point(R, r, rng, params), g2 = random_group_point(R, r, rng, params);
      auto h = harmonic::homomorphism_check(M, g1, g2);
      EXPECT_TRUE(h.ok) << M.family << ": " << (h.failures.empty() ? "" : h.failures.front());
    }
  }
}

TEST(Dpi, FlowMatchesClosedFormAndBrackets) {
  for (auto M : {clifford(), odd_heisenberg()}) {
    Row r = Row::parse(M.family);
    std::array<harmonic::RepOperator, 3> D;
    for (int v = 0; v < 3; ++v) {
      D[v] = harmonic::dpi(M, r, v);
      EXPECT_EQ(D[v], harmonic::dpi_closed(M, r, v)) << M.family << v;
    }
    SuperElement ig = harmonic::base_gamma(M) * Scalar::i();
    EXPECT_EQ(D[2], harmonic::scalar_operator(M, ig));
    EXPECT_EQ(harmonic::super_bracket(D[0], D[1]), D[2]) << M.family;
    auto zero = harmonic::scalar_operator(M, SuperElement::zero(M.base));
    EXPECT_EQ(harmonic::super_bracket(D[2], D[0]), zero);
    EXPECT_EQ(harmonic::super_bracket(D[2], D[1]), zero);
  }
}

TEST(Dpi, BracketKind) {
  // Clifford: x, y odd so the bracket is an anticommutator; odd Heisenberg: x even
  auto C = clifford();
  auto X = harmonic::dpi(C, Row::parse("ooe"), 0), Y = harmonic::dpi(C, Row::parse("ooe"), 1);
  auto xy = harmonic::compose(X, Y), yx = harmonic::compose(Y, X);
  for (std::size_t i = 0; i < 2; ++i)
    for (std::size_t j = 0; j < 2; ++j) EXPECT_EQ(xy.m[i][j] + yx.m[i][j], harmonic::super_bracket(X, Y).m[i][j]);
  auto O = odd_heisenberg();
  auto X2 = harmonic::dpi(O, Row::parse("eoo"), 0), Y2 = harmonic::dpi(O, Row::parse("eoo"), 1);
  auto a = harmonic::compose(X2, Y2), b = harmonic::compose(Y2, X2);
  for (std::size_t i = 0; i < 2; ++i)
    for (std::size_t j = 0; j < 2; ++j) EXPECT_EQ(a.m[i][j] - b.m[i][j], harmonic::super_bracket(X2, Y2).m[i][j]);
}
