#pragma once
// The four super Heisenberg groups (parity rows eee, ooe, eoo, oeo) and the odd
// abelian groups A^{0|n}.
//
// Group coordinates a, b, c have the parities of x, y, z; they multiply by
// (a1,b1,c1)(a2,b2,c2) = (a1+a2, b1+b2, c1+c2+a1*b2).  The matrix realisation
// [[1,a',c'],[0,1,b'],[0,0,1]] uses the entries a' = (-1)^{|x|} a, b' = (-1)^{|y|} b,
// c' = (-1)^{|z|} c.

#include <array>
#include <map>
#include <string>
#include <vector>

#include "derivation.hpp"
#include "lie_superalgebra.hpp"
#include "supermatrix.hpp"

namespace superorbit::heisenberg {

struct Row {
  Parity x = Parity::Even;
  Parity y = Parity::Even;
  Parity z = Parity::Even;

  static Row parse(const std::string& s) {
    if (s.size() != 3) throw Error("parity row must be one of eee, ooe, eoo, oeo");
    auto p = [&](char ch) {
      if (ch == 'e') return Parity::Even;
      if (ch == 'o') return Parity::Odd;
      throw Error("parity row must be one of eee, ooe, eoo, oeo");
    };
    Row r{p(s[0]), p(s[1]), p(s[2])};
    if (r.z != r.x + r.y) throw Error("parity row '" + s + "' violates |z| = |x| + |y|");
    return r;
  }
  std::string name() const {
    auto c = [](Parity q) { return q == Parity::Even ? 'e' : 'o'; };
    return std::string{c(x), c(y), c(z)};
  }
  static std::vector<Row> all() { return {parse("eee"), parse("ooe"), parse("eoo"), parse("oeo")}; }
  // (-1)^{|x||y|}
  Scalar sxy() const { return sign_scalar(koszul_negative(x, y)); }
  // matrix row/column parities
  std::vector<Parity> signature() const { return {x, Parity::Even, y}; }
};

inline LieSuperAlgebra lie_algebra(const Row& r) {
  LieSuperAlgebra g({"x", "y", "z"}, {r.x, r.y, r.z});
  g.set_bracket(0, 1, {{2, Scalar(1)}});
  return g;
}

// k[a,b,c] with the row's parities, optionally with a prefix/suffix for copies.
inline AlgebraBuilder& add_group_coordinates(AlgebraBuilder& b, const Row& r, const std::string& suffix = "") {
  b.add("a" + suffix, r.x).add("b" + suffix, r.y).add("c" + suffix, r.z);
  return b;
}
inline AlgebraPtr group_algebra(const Row& r) {
  AlgebraBuilder b;
  return add_group_coordinates(b, r).build();
}

// A point of G with values in some algebra R (coordinates, not matrix entries).
struct GroupPoint {
  SuperElement a, b, c;
  Row row;

  static GroupPoint identity(const AlgebraPtr& alg, const Row& r) {
    return {SuperElement::zero(alg), SuperElement::zero(alg), SuperElement::zero(alg), r};
  }
  static GroupPoint from_entries(const SuperElement& ea, const SuperElement& eb, const SuperElement& ec, const Row& r) {
    return {ea * entry_sign(r.x), eb * entry_sign(r.y), ec * entry_sign(r.z), r};
  }
  static Scalar entry_sign(Parity p) { return sign_scalar(p == Parity::Odd); }

  SuperElement entry_a() const { return a * entry_sign(row.x); }
  SuperElement entry_b() const { return b * entry_sign(row.y); }
  SuperElement entry_c() const { return c * entry_sign(row.z); }

  bool valid() const {
    auto ok = [](const SuperElement& e, Parity p) { return e.is_zero() || e.parity() == p; };
    return ok(a, row.x) && ok(b, row.y) && ok(c, row.z);
  }

  friend GroupPoint operator*(const GroupPoint& g, const GroupPoint& h) {
    return {g.a + h.a, g.b + h.b, g.c + h.c + g.a * h.b, g.row};
  }
  GroupPoint inverse() const { return {-a, -b, -c + a * b, row}; }
  friend bool operator==(const GroupPoint& g, const GroupPoint& h) {
    return g.a == h.a && g.b == h.b && g.c == h.c;
  }

  SuperMatrix to_matrix() const {
    const AlgebraPtr& alg = a.algebra();
    SuperMatrix m = SuperMatrix::identity(alg, row.signature());
    m.at(0, 1) = entry_a();
    m.at(0, 2) = entry_c();
    m.at(1, 2) = entry_b();
    return m;
  }
  static GroupPoint from_matrix(const SuperMatrix& m, const Row& r) {
    return from_entries(m.at(0, 1), m.at(1, 2), m.at(0, 2), r);
  }
};

// Right- and left-invariant vector fields on an algebra containing a, b, c.
struct InvariantFields {
  Derivation Rx, Ry, Rz, Lx, Ly, Lz;
};

inline InvariantFields invariant_fields(const AlgebraPtr& alg, const Row& r, const std::string& suffix = "") {
  const std::string a = "a" + suffix, b = "b" + suffix, c = "c" + suffix;
  SuperElement one = SuperElement::one(alg);
  SuperElement ea = SuperElement::gen(alg, a), eb = SuperElement::gen(alg, b);
  Scalar s = r.sxy();
  InvariantFields f;
  f.Rx = Derivation::vector_field(alg, r.x, {{a, one}});
  f.Ry = Derivation::vector_field(alg, r.y, {{b, one}, {c, ea * s}});
  f.Rz = Derivation::vector_field(alg, r.z, {{c, one * s}});
  f.Lx = Derivation::vector_field(alg, r.x, {{a, one}, {c, eb}});
  f.Ly = Derivation::vector_field(alg, r.y, {{b, one}});
  f.Lz = Derivation::vector_field(alg, r.z, {{c, one * s}});
  return f;
}

// Pullback along inversion: a -> -a, b -> -b, c -> -c + ab.
inline AlgebraMorphism inversion(const AlgebraPtr& alg, const std::string& suffix = "") {
  SuperElement a = SuperElement::gen(alg, "a" + suffix), b = SuperElement::gen(alg, "b" + suffix),
               c = SuperElement::gen(alg, "c" + suffix);
  return AlgebraMorphism::substitution(alg, alg, {{"a" + suffix, -a}, {"b" + suffix, -b}, {"c" + suffix, -c + a * b}});
}

// Left-invariant field from a right-invariant one: L = -i o R o i on generators.
inline Derivation left_from_right(const Derivation& R, const AlgebraMorphism& inv) {
  std::map<std::string, SuperElement> im;
  for (const Generator& g : R.source()->generators())
    im.emplace(g.name, -inv(R(inv(SuperElement::gen(R.source(), g.name)))));
  return Derivation::vector_field(R.source(), R.parity(), im);
}

// Displayed coadjoint matrices in the basis (x*, y*, z*).
inline ScalarMatrix ad_star_closed(const Row& r, int v) {
  ScalarMatrix m(3, ScalarVector(3, Scalar(0)));
  if (v == 0) m[1][2] = -sign_scalar(koszul_negative(r.x, r.z));
  if (v == 1) m[0][2] = sign_scalar(r.y == Parity::Odd);
  return m;
}

// Coefficients (xi, eta, zeta) of a covector / vector in the bases (x*,y*,z*) / (x,y,z).
using Triple = std::array<SuperElement, 3>;

// Ad*(g)(xi x* + eta y* + zeta z*), in matrix entries a', b'.
inline Triple Ad_star(const GroupPoint& g, const Triple& v) {
  const Row& r = g.row;
  Scalar sb = sign_scalar(r.y == Parity::Odd && r.x == Parity::Even);  // (-1)^{|y|(|x|+1)}
  Scalar sa = sign_scalar(r.x == Parity::Odd);
  return {v[0] + g.entry_b() * v[2] * sb, v[1] - g.entry_a() * v[2] * sa, v[2]};
}

// Ad(g)(xi x + eta y + zeta z).
inline Triple Ad(const GroupPoint& g, const Triple& v) {
  const Row& r = g.row;
  Scalar sx = sign_scalar(r.x == Parity::Odd);
  Scalar sxy = sign_scalar(r.x == Parity::Even && r.y == Parity::Odd);  // (-1)^{(|x|+1)|y|}
  return {v[0], v[1], v[2] + v[1] * g.entry_a() * sx - v[0] * g.entry_b() * sxy};
}

// Group point reached by the infinitesimal flow of R_v from the identity, with
// parameter t (coordinates = t * R_v(coordinate) at 1).
inline GroupPoint flow_point(const Row& r, int v, const SuperElement& t) {
  const AlgebraPtr& alg = t.algebra();
  GroupPoint g = GroupPoint::identity(alg, r);
  if (v == 0) g.a = t;
  if (v == 1) g.b = t;
  if (v == 2) g.c = t * r.sxy();
  return g;
}

// ad*(v) from the group action: entry [k][w] is the coefficient of k* in
// d/dt_w d/dt_v [(-1)^{|v||w|} Ad*(g(t_v)) (t_w w*)], g(t_v) the flow of R_v.
inline ScalarMatrix ad_star_from_flow(const Row& r, int v) {
  const std::array<Parity, 3> par{r.x, r.y, r.z};
  ScalarMatrix m(3, ScalarVector(3, Scalar(0)));
  for (int w = 0; w < 3; ++w) {
    AlgebraPtr alg = AlgebraBuilder().add("tv", par[v]).add("tw", par[w]).build();
    GroupPoint g = flow_point(r, v, SuperElement::gen(alg, "tv"));
    Triple cov{SuperElement::zero(alg), SuperElement::zero(alg), SuperElement::zero(alg)};
    cov[w] = SuperElement::gen(alg, "tw");
    Triple out = Ad_star(g, cov);
    Scalar sign = sign_scalar(koszul_negative(par[v], par[w]));
    for (int k = 0; k < 3; ++k) m[k][w] = (out[k] * sign).derivative("tv").derivative("tw").constant_term();
  }
  return m;
}

// ad(v) from the group: entry [k][w] is the coefficient of k in
// d/dt_w d/dt_v [(-1)^{|v||w|} Ad(g(t_v)) (t_w w)].
inline ScalarMatrix ad_from_flow(const Row& r, int v) {
  const std::array<Parity, 3> par{r.x, r.y, r.z};
  ScalarMatrix m(3, ScalarVector(3, Scalar(0)));
  for (int w = 0; w < 3; ++w) {
    AlgebraPtr alg = AlgebraBuilder().add("tv", par[v]).add("tw", par[w]).build();
    GroupPoint g = flow_point(r, v, SuperElement::gen(alg, "tv"));
    Triple vec{SuperElement::zero(alg), SuperElement::zero(alg), SuperElement::zero(alg)};
    vec[w] = SuperElement::gen(alg, "tw");
    Triple out = Ad(g, vec);
    Scalar sign = sign_scalar(koszul_negative(par[v], par[w]));
    for (int k = 0; k < 3; ++k) m[k][w] = (out[k] * sign).derivative("tv").derivative("tw").constant_term();
  }
  return m;
}

// Coadjoint action a# : O(g*) -> O(G x g*), coordinates x, y, z on g*.
struct CoadjointAction {
  AlgebraPtr dual;     // O(g*)
  AlgebraPtr product;  // O(G x g*)
  AlgebraMorphism action;
};

inline CoadjointAction coadjoint_action(const Row& r) {
  CoadjointAction ca;
  ca.dual = AlgebraBuilder().add("x", r.x).add("y", r.y).add("z", r.z).build();
  AlgebraBuilder pb;
  add_group_coordinates(pb, r);
  pb.add("x", r.x).add("y", r.y).add("z", r.z);
  ca.product = pb.build();
  const AlgebraPtr& P = ca.product;
  GroupPoint g{SuperElement::gen(P, "a"), SuperElement::gen(P, "b"), SuperElement::gen(P, "c"), r};
  Triple out = Ad_star(g, {SuperElement::gen(P, "x"), SuperElement::gen(P, "y"), SuperElement::gen(P, "z")});
  ca.action = AlgebraMorphism(ca.dual, P, {{"x", out[0]}, {"y", out[1]}, {"z", out[2]}});
  return ca;
}

// Group law m# : O(G) -> O(G x G) with copies suffixed 1 and 2.
struct GroupLaw {
  AlgebraPtr single;
  AlgebraPtr pair;
  AlgebraMorphism mul;
};

inline GroupLaw group_law(const Row& r) {
  GroupLaw gl;
  gl.single = group_algebra(r);
  AlgebraBuilder b;
  add_group_coordinates(b, r, "1");
  add_group_coordinates(b, r, "2");
  gl.pair = b.build();
  auto g = [&](const std::string& n) { return SuperElement::gen(gl.pair, n); };
  gl.mul = AlgebraMorphism(gl.single, gl.pair, {{"a", g("a1") + g("a2")}, {"b", g("b1") + g("b2")},
                                                {"c", g("c1") + g("c2") + g("a1") * g("b2")}});
  return gl;
}

// ---- A^{0|n} -------------------------------------------------------------

inline std::vector<std::string> odd_names(const std::string& stem, int n) {
  std::vector<std::string> v;
  for (int j = 1; j <= n; ++j) v.push_back(stem + std::to_string(j));
  return v;
}

inline LieSuperAlgebra abelian_odd(int n) {
  return LieSuperAlgebra(odd_names("e", n), std::vector<Parity>(n, Parity::Odd));
}

// Points of A^{0|n}: n odd elements; the group law is addition.
using OddPoint = std::vector<SuperElement>;
inline OddPoint odd_mul(const OddPoint& g, const OddPoint& h) {
  OddPoint out;
  for (std::size_t i = 0; i < g.size(); ++i) out.push_back(g[i] + h[i]);
  return out;
}
inline OddPoint odd_inverse(const OddPoint& g) {
  OddPoint out;
  for (const auto& e : g) out.push_back(-e);
  return out;
}

}  // namespace superorbit::heisenberg
