#include <gtest/gtest.h>

#include "superorbit/expression.hpp"
#include "test_support.hpp"

using namespace superorbit;
using heisenberg::GroupPoint;
using heisenberg::Row;

namespace {

AlgebraPtr params() {
  return AlgebraBuilder().odd("eta1").odd("eta2").odd("eta3").odd("eta4").even("s1").even("s2").build();
}

std::vector<std::string> param_names() { return {"eta1", "eta2", "eta3", "eta4", "s1", "s2"}; }

bool zero_field(const Derivation& d) {
  for (const Generator& g : d.source()->generators())
    if (!d.image(g.name).is_zero()) return false;
  return true;
}

}  // namespace

TEST(GroupLaw, CoordinateFormula) {
  auto law = heisenberg::group_law(Row::parse("eee"));
  auto g = [&](const std::string& n) { return SuperElement::gen(law.pair, n); };
  EXPECT_EQ(law.mul.image("a"), g("a1") + g("a2"));
  EXPECT_EQ(law.mul.image("b"), g("b1") + g("b2"));
  EXPECT_EQ(law.mul.image("c"), g("c1") + g("c2") + g("a1") * g("b2"));
}

TEST(GroupLaw, MatrixRouteIdentityInverse) {
  std::mt19937_64 rng(13);
  AlgebraPtr R = params();
  for (const Row& r : Row::all()) {
    GroupPoint e = GroupPoint::identity(R, r);
    for (int c = 0; c < 10; ++c) {
      GroupPoint g = random_group_point(R, r, rng, param_names()), h = random_group_point(R, r, rng, param_names());
      ASSERT_TRUE(g.valid());
      EXPECT_EQ((g * h).to_matrix(), g.to_matrix() * h.to_matrix()) << r.name();
      EXPECT_EQ(GroupPoint::from_matrix(g.to_matrix(), r), g);
      EXPECT_EQ(g * e, g);
      EXPECT_EQ(e * g, g);
      EXPECT_EQ(g * g.inverse(), e);
      EXPECT_EQ(g.inverse().inverse(), g);
      EXPECT_EQ(g.inverse().to_matrix(), g.to_matrix().inverse());
    }
    EXPECT_EQ(e.inverse(), e);
  }
}

TEST(GroupLaw, InverseFormula) {
  auto A = heisenberg::group_algebra(Row::parse("eee"));
  GroupPoint g{SuperElement::gen(A, "a"), SuperElement::gen(A, "b"), SuperElement::gen(A, "c"), Row::parse("eee")};
  GroupPoint inv = g.inverse();
  EXPECT_EQ(inv.a, parse_expression("-a", A));
  EXPECT_EQ(inv.b, parse_expression("-b", A));
  EXPECT_EQ(inv.c, parse_expression("-c + a*b", A));
}

TEST(InvariantFields, RightFieldImages) {
  auto ooe = Row::parse("ooe");
  auto A = heisenberg::group_algebra(ooe);
  auto F = heisenberg::invariant_fields(A, ooe);
  EXPECT_EQ(F.Ry.image("b"), SuperElement::one(A));
  EXPECT_EQ(F.Ry.image("c"), -SuperElement::gen(A, "a"));
  auto eee = Row::parse("eee");
  auto B = heisenberg::group_algebra(eee);
  auto G = heisenberg::invariant_fields(B, eee);
  EXPECT_EQ(G.Ry.image("c"), SuperElement::gen(B, "a"));
}

TEST(InvariantFields, BracketRelationsAllRows) {
  for (const Row& r : Row::all()) {
    auto A = heisenberg::group_algebra(r);
    auto F = heisenberg::invariant_fields(A, r);
    EXPECT_EQ(bracket(F.Rx, F.Ry), F.Rz) << r.name();
    EXPECT_EQ(bracket(F.Lx, F.Ly), Scalar(-1) * F.Lz) << r.name();
    const std::array<const Derivation*, 3> R{&F.Rx, &F.Ry, &F.Rz}, L{&F.Lx, &F.Ly, &F.Lz};
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j) {
        EXPECT_TRUE(zero_field(bracket(*R[i], *L[j]))) << r.name() << i << j;
        bool xy = (i == 0 && j == 1) || (i == 1 && j == 0);
        if (!xy) {
          EXPECT_TRUE(zero_field(bracket(*R[i], *R[j]))) << r.name() << i << j;
          EXPECT_TRUE(zero_field(bracket(*L[i], *L[j]))) << r.name() << i << j;
        }
      }
  }
}

TEST(InvariantFields, RightFieldsAreRightInvariant) {
  // R_v commutes with left translations: (1 x R_v) m# = m# R_v
  for (const Row& r : Row::all()) {
    auto law = heisenberg::group_law(r);
    auto F1 = heisenberg::invariant_fields(law.pair, r, "2");
    auto F = heisenberg::invariant_fields(law.single, r);
    for (auto [R2, R] : {std::pair{&F1.Rx, &F.Rx}, std::pair{&F1.Ry, &F.Ry}, std::pair{&F1.Rz, &F.Rz}})
      for (const char* gname : {"a", "b", "c"}) {
        SuperElement lhs = (*R2)(law.mul.image(gname));
        SuperElement rhs = law.mul(R->image(gname));
        EXPECT_EQ(lhs, rhs) << r.name() << " " << gname;
      }
  }
}

TEST(CoadjointMatrices, DisplayedEntries) {
  for (const Row& r : Row::all()) {
    ScalarMatrix z = heisenberg::ad_star_closed(r, 2);
    for (const auto& row : z)
      for (const auto& e : row) EXPECT_TRUE(e.is_zero());
    EXPECT_EQ(heisenberg::ad_star_closed(r, 0)[1][2], -sign_scalar(r.x == Parity::Odd && r.z == Parity::Odd));
    EXPECT_EQ(heisenberg::ad_star_closed(r, 1)[0][2], sign_scalar(r.y == Parity::Odd));
  }
}

TEST(CoadjointMatrices, FlowAndStructureConstantsAgree) {
  for (const Row& r : Row::all()) {
    auto g = heisenberg::lie_algebra(r);
    EXPECT_TRUE(g.validate().empty());
    for (int v = 0; v < 3; ++v) {
      EXPECT_EQ(heisenberg::ad_star_from_flow(r, v), heisenberg::ad_star_closed(r, v)) << r.name() << v;
      EXPECT_EQ(g.coadjoint_matrix(v), heisenberg::ad_star_closed(r, v)) << r.name() << v;
      EXPECT_EQ(heisenberg::ad_from_flow(r, v), g.adjoint_matrix(v)) << r.name() << v;
    }
  }
}

TEST(AdStar, ExplicitFormula) {
  AlgebraPtr R = params();
  std::mt19937_64 rng(17);
  for (const Row& r : Row::all()) {
    GroupPoint g = random_group_point(R, r, rng, param_names());
    SuperElement zeta = embed(random_element(R, rng, 2, 1, r.z), R);
    SuperElement zero = SuperElement::zero(R);
    heisenberg::Triple out = heisenberg::Ad_star(g, {zero, zero, zeta});
    bool sy = r.y == Parity::Odd && r.x == Parity::Even;
    EXPECT_EQ(out[0], g.entry_b() * zeta * sign_scalar(sy));
    EXPECT_EQ(out[1], -(g.entry_a() * zeta) * sign_scalar(r.x == Parity::Odd));
    EXPECT_EQ(out[2], zeta);
    heisenberg::Triple v{embed(random_element(R, rng, 2, 1, r.x), R), embed(random_element(R, rng, 2, 1, r.y), R),
                         zeta};
    EXPECT_EQ(heisenberg::Ad_star(GroupPoint::identity(R, r), v), v);
  }
}

TEST(AdStar, Homomorphism) {
  AlgebraPtr R = params();
  std::mt19937_64 rng(19);
  for (const Row& r : Row::all())
    for (int c = 0; c < 10; ++c) {
      GroupPoint g = random_group_point(R, r, rng, param_names()), h = random_group_point(R, r, rng, param_names());
      heisenberg::Triple v{embed(random_element(R, rng, 2, 1, r.x), R), embed(random_element(R, rng, 2, 1, r.y), R),
                           embed(random_element(R, rng, 2, 1, r.z), R)};
      EXPECT_EQ(heisenberg::Ad_star(g * h, v), heisenberg::Ad_star(g, heisenberg::Ad_star(h, v)));
      EXPECT_EQ(heisenberg::Ad(g * h, v), heisenberg::Ad(g, heisenberg::Ad(h, v)));
    }
}

TEST(AdStar, DualToAdOnEvenRow) {
  // <Ad*(g) f, v> = <f, Ad(g^-1) v> for the classical Heisenberg group
  Row r = Row::parse("eee");
  auto A = AlgebraBuilder().even("a").even("b").even("c").even("p").even("q").even("w").build();
  auto P = [&](const char* s) { return parse_expression(s, A); };
  GroupPoint g{P("a"), P("b"), P("c"), r};
  heisenberg::Triple f{P("p"), P("q"), P("w")};
  heisenberg::Triple af = heisenberg::Ad_star(g, f);
  for (int k = 0; k < 3; ++k) {
    heisenberg::Triple e{P("0"), P("0"), P("0")};
    e[k] = P("1");
    heisenberg::Triple w = heisenberg::Ad(g.inverse(), e);
    EXPECT_EQ(af[k], f[0] * w[0] + f[1] * w[1] + f[2] * w[2]) << k;
  }
}

TEST(CoadjointAction, MorphismIsAnAction) {
  for (const Row& r : Row::all()) {
    auto ca = heisenberg::coadjoint_action(r);
    EXPECT_TRUE(ca.action.check().empty()) << r.name();
    // at the identity the action is trivial
    std::map<std::string, SuperElement> kill;
    for (const Generator& g : ca.product->generators())
      kill.emplace(g.name, ca.dual->has(g.name) ? SuperElement::gen(ca.dual, g.name) : SuperElement::zero(ca.dual));
    AlgebraMorphism at_one(ca.product, ca.dual, kill);
    EXPECT_EQ(compose(at_one, ca.action), AlgebraMorphism::identity(ca.dual)) << r.name();
  }
}

TEST(Abelian, OddGroupLaw) {
  auto T = testsupport::grassmann(2, "theta");
  heisenberg::OddPoint g{SuperElement::gen(T, "theta1")}, h{SuperElement::gen(T, "theta2")};
  EXPECT_EQ(heisenberg::odd_mul(g, h)[0], parse_expression("theta1 + theta2", T));
  EXPECT_EQ(heisenberg::odd_inverse(g)[0], -SuperElement::gen(T, "theta1"));
  auto a = heisenberg::abelian_odd(3);
  EXPECT_EQ(a.dim(), 3u);
  EXPECT_EQ(a.odd_dim(), 3u);
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) EXPECT_TRUE(a.bracket(i, j).empty());
}
