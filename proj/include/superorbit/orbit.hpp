#pragma once
// Constant rank of a coadjoint action at a T-valued functional, isotropy subalgebras,
// dimension bookkeeping, isotropy ideals and invariant subalgebras (equalisers).

#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "lie_superalgebra.hpp"
#include "module_linalg.hpp"
#include "morphism.hpp"

namespace superorbit::orbit {

// A classical point of T: values of the non-nilpotent even generators.
struct ClassicalPoint {
  std::string label;
  std::map<std::string, Scalar> values;
};

// Default: units at 1, free evens at 0 (the reduced point of a local base).
inline std::vector<ClassicalPoint> default_points(const AlgebraPresentation& t) {
  ClassicalPoint p{"t0", {}};
  for (std::size_t s = 0; s < t.even_count(); ++s) {
    const std::string& n = t.generator(t.even_generator(static_cast<int>(s))).name;
    if (t.is_unit(static_cast<int>(s))) p.values[n] = Scalar(1);
    else if (t.is_free_even(static_cast<int>(s))) p.values[n] = Scalar(0);
  }
  return {p};
}

struct SuperDim {
  long even = 0;
  long odd = 0;
  friend SuperDim operator+(SuperDim a, SuperDim b) { return {a.even + b.even, a.odd + b.odd}; }
  friend SuperDim operator-(SuperDim a, SuperDim b) { return {a.even - b.even, a.odd - b.odd}; }
  friend SuperDim operator*(long k, SuperDim a) { return {k * a.even, k * a.odd}; }
  friend bool operator==(const SuperDim&, const SuperDim&) = default;
  std::string to_string() const { return std::to_string(even) + "|" + std::to_string(odd); }
};

// Row j = basis element v_j, column a = coordinate x^a of g*;
// entry = (f# o ad*(v_j))(x^a) = -<f, [v_j, e_a]>.
struct FundamentalFieldMatrix {
  LieSuperAlgebra g;
  AlgebraPtr base;
  ElementMatrix entries;
};

inline FundamentalFieldMatrix fundamental_field_matrix(const LieSuperAlgebra& g, const Functional& f) {
  auto errs = f.check(g);
  if (!errs.empty()) throw Error(errs.front());
  FundamentalFieldMatrix m{g, f.base, {}};
  for (std::size_t j = 0; j < g.dim(); ++j) {
    ElementVector row;
    for (std::size_t a = 0; a < g.dim(); ++a) row.push_back(-f.pair(g.bracket(static_cast<int>(j), static_cast<int>(a))));
    m.entries.push_back(std::move(row));
  }
  return m;
}

inline ScalarMatrix evaluate_matrix(const ElementMatrix& m, const std::map<std::string, Scalar>& p) {
  ScalarMatrix out;
  for (const auto& row : m) {
    ScalarVector r;
    for (const auto& e : row) r.push_back(e.evaluate(p));
    out.push_back(std::move(r));
  }
  return out;
}

struct IsotropyAt {
  std::vector<ScalarVector> even;  // coefficient vectors over the basis of g
  std::vector<ScalarVector> odd;
  SuperDim dim() const { return {static_cast<long>(even.size()), static_cast<long>(odd.size())}; }
};

// Kernel of v -> a_v(x_0(t)), split by parity (the evaluated matrix is parity preserving).
inline IsotropyAt isotropy_subalgebra_at(const FundamentalFieldMatrix& M, const ClassicalPoint& t) {
  ScalarMatrix ev = evaluate_matrix(M.entries, t.values);
  std::size_t n = M.g.dim();
  IsotropyAt out;
  for (Parity p : {Parity::Even, Parity::Odd}) {
    std::vector<std::size_t> rows;
    for (std::size_t j = 0; j < n; ++j)
      if (M.g.parity(static_cast<int>(j)) == p) rows.push_back(j);
    ScalarMatrix sub;
    for (std::size_t j : rows) sub.push_back(ev[j]);
    for (const ScalarVector& k : left_nullspace(sub, n)) {
      ScalarVector full(n, Scalar(0));
      for (std::size_t i = 0; i < rows.size(); ++i) full[rows[i]] = k[i];
      (p == Parity::Even ? out.even : out.odd).push_back(std::move(full));
    }
  }
  return out;
}

struct RankAtPoint {
  ClassicalPoint point;
  std::size_t rank = 0;
  std::vector<std::size_t> witness;  // row indices independent at t
  SuperDim isotropy;                 // dim g_x(t)
  SuperDim orbit;                    // dim G - dim g_x(t)
  std::optional<bool> spans;         // witness rows span all rows over O(T); nullopt = undecidable
  std::vector<std::size_t> outside;  // rows not in the O(T)-span of the witness rows
  std::vector<ElementVector> coefficients;  // solved combinations, one per row (when spans)
};

struct RankReport {
  std::vector<RankAtPoint> points;
  bool constant_rank = false;
  std::vector<std::string> caveats;
};

inline SuperDim algebra_dim(const LieSuperAlgebra& g) {
  return {static_cast<long>(g.even_dim()), static_cast<long>(g.odd_dim())};
}

inline RankReport constant_rank_check(const FundamentalFieldMatrix& M, std::vector<ClassicalPoint> points = {}) {
  if (points.empty()) points = default_points(*M.base);
  RankReport rep;
  std::size_t n = M.g.dim();
  bool all = true, undecided = false;
  for (const ClassicalPoint& t : points) {
    RankAtPoint r;
    r.point = t;
    ScalarMatrix ev = evaluate_matrix(M.entries, t.values);
    ScalarMatrix acc;
    for (std::size_t j = 0; j < n; ++j) {
      acc.push_back(ev[j]);
      if (rank(acc) == acc.size()) r.witness.push_back(j);
      else acc.pop_back();
    }
    r.rank = r.witness.size();
    r.isotropy = isotropy_subalgebra_at(M, t).dim();
    r.orbit = algebra_dim(M.g) - r.isotropy;
    ElementMatrix W;
    for (std::size_t j : r.witness) W.push_back(M.entries[j]);
    try {
      bool ok = true;
      for (std::size_t j = 0; j < n; ++j) {
        auto c = module_solve_left(W, M.entries[j], M.base);
        if (!c) {
          ok = false;
          r.outside.push_back(j);
          r.coefficients.emplace_back();
        } else {
          r.coefficients.push_back(*c);
        }
      }
      r.spans = ok;
      if (!ok) all = false;
    } catch (const Error& e) {
      undecided = true;
      rep.caveats.push_back("point " + t.label + ": " + e.what());
    }
    rep.points.push_back(std::move(r));
  }
  if (!all) {
    rep.constant_rank = false;
  } else if (undecided) {
    throw Error("span test undecidable in this representation (base neither finite nor unit-reducible)");
  } else {
    rep.constant_rank = true;
  }
  rep.caveats.push_back("verdict is per connected component of T_0; points are checked independently");
  return rep;
}

// Dimension bookkeeping for the orbit map: dim G_x, dim R_x, dim G.x and the
// identity dim G.x = 2 dim G - dim R_x.
struct OrbitDimensions {
  SuperDim group;
  SuperDim isotropy;
  SuperDim orbit;
  SuperDim relation;  // dim R_x = dim G + dim G_x
  bool consistent = false;
};

inline std::vector<OrbitDimensions> orbit_dimensions(const RankReport& rep, SuperDim group) {
  if (!rep.constant_rank) throw Error("orbit dimensions need a constant-rank report");
  std::vector<OrbitDimensions> out;
  for (const RankAtPoint& p : rep.points) {
    OrbitDimensions d;
    d.group = group;
    d.isotropy = p.isotropy;
    d.orbit = group - p.isotropy;
    d.relation = group + p.isotropy;
    d.consistent = d.orbit == 2 * group - d.relation && d.orbit == p.orbit;
    out.push_back(d);
  }
  return out;
}

// ---- ideals ---------------------------------------------------------------

struct IdealPresentation {
  AlgebraPtr ambient;
  std::vector<SuperElement> generators;

  // Q[i]-spanning set of the ideal inside the cutoff space.
  std::vector<SuperElement> span(int cutoff) const {
    MonomialBasis mb(ambient, cutoff);
    std::vector<SuperElement> out;
    for (const SuperElement& g : generators)
      for (std::size_t i = 0; i < mb.size(); ++i) {
        SuperElement e = mb.element(i) * g;
        if (!e.is_zero()) out.push_back(std::move(e));
      }
    return out;
  }
  bool contains(const SuperElement& e, int cutoff = 3) const {
    if (e.is_zero()) return true;
    return element_in_span(span(cutoff), embed(e, ambient));
  }
  bool contains_all(const IdealPresentation& o, int cutoff = 3) const {
    auto s = span(cutoff);
    for (const SuperElement& g : o.generators)
      if (!g.is_zero() && !element_in_span(s, embed(g, ambient))) return false;
    return true;
  }
  bool equals(const IdealPresentation& o, int cutoff = 3) const {
    return contains_all(o, cutoff) && o.contains_all(*this, cutoff);
  }
  bool is_zero() const {
    for (const auto& g : generators)
      if (!g.is_zero()) return false;
    return true;
  }
  std::string to_string() const {
    std::string s = "(";
    bool first = true;
    for (const auto& g : generators) {
      s += (first ? "" : ", ") + g.to_string();
      first = false;
    }
    return s + ")";
  }
};

// Drop zeros and Q[i]-dependent generators; scale each to a leading coefficient 1.
inline IdealPresentation normalize_ideal(IdealPresentation I) {
  std::vector<SuperElement> nz;
  for (auto& g : I.generators)
    if (!g.is_zero()) nz.push_back(g);
  std::vector<SuperElement> out;
  for (std::size_t i : independent_subset(nz)) {
    SuperElement g = nz[i];
    Scalar lead = g.terms().rbegin()->second;
    out.push_back(g * lead.inverse());
  }
  I.generators = std::move(out);
  return I;
}

// Ideal of G_x in O(T x G): a_x#(y) - x_T#(y) over the coordinates y of X.
// `action` : O(X) -> O(G x X), `point` : O(X) -> O(T).
// O(T x G) for an action O(X) -> O(G x X) and a point O(X) -> O(T).
inline AlgebraPtr isotropy_ambient(const AlgebraMorphism& action, const AlgebraMorphism& point) {
  if (!same_algebra(action.source(), point.source())) throw Error("isotropy ideal: action and point disagree on X");
  const AlgebraPresentation& X = *action.source();
  std::set<std::string> group_names;
  for (const Generator& g : action.target()->generators())
    if (!X.has(g.name)) group_names.insert(g.name);
  for (const Generator& g : point.target()->generators())
    if (group_names.count(g.name)) throw Error("isotropy ideal: T and G share the generator '" + g.name + "'");
  return tensor(*point.target(), *restrict_presentation(*action.target(), group_names));
}

inline IdealPresentation isotropy_ideal(const AlgebraMorphism& action, const AlgebraMorphism& point) {
  AlgebraPtr ambient = isotropy_ambient(action, point);
  const AlgebraPresentation& X = *action.source();
  std::map<std::string, SuperElement> sub;
  for (const Generator& g : action.target()->generators()) {
    if (X.has(g.name)) sub.emplace(g.name, embed(point.image(g.name), ambient));
    else sub.emplace(g.name, SuperElement::gen(ambient, g.name));
  }
  AlgebraMorphism ax(action.target(), ambient, sub);
  IdealPresentation I{ambient, {}};
  for (const Generator& g : X.generators())
    I.generators.push_back(ax(action.image(g.name)) - embed(point.image(g.name), ambient));
  return normalize_ideal(I);
}

// ---- equalisers -------------------------------------------------------------

struct InvariantReport {
  std::vector<SuperElement> basis;      // reduced echelon basis of the equaliser
  bool multiplicatively_closed = false;
  std::size_t products_beyond_cutoff = 0;
  std::vector<std::string> missing_witnesses;  // requested elements outside the cutoff space
};

// The cutoff space of a source algebra; with body_constant, pure positive powers of free
// even generators (no nilpotent factor) are left out.
inline MonomialBasis cutoff_space(const AlgebraPtr& alg, int cutoff, bool body_constant = false) {
  MonomialBasis mb(alg, cutoff);
  if (!body_constant) return mb;
  std::vector<Monomial> keep;
  for (const Monomial& m : mb.monomials())
    if (m.is_one() || alg->nilpotent(m)) keep.push_back(m);
  return MonomialBasis(alg, keep);
}

inline std::vector<SuperElement> echelon_basis(const MonomialBasis& mb, const std::vector<ScalarVector>& vecs) {
  Echelon e = rref(vecs, mb.size());
  std::vector<SuperElement> out;
  for (const auto& r : e.rows) out.push_back(mb.from_coordinates(r));
  return out;
}

inline InvariantReport invariant_subalgebra(const AlgebraMorphism& s, const AlgebraMorphism& t, int cutoff = 3,
                                            const std::vector<SuperElement>& witnesses = {}) {
  if (!same_algebra(s.source(), t.source()) || !same_algebra(s.target(), t.target()))
    throw Error("invariant subalgebra: the two maps must share source and target");
  MonomialBasis mb(s.source(), cutoff);
  InvariantReport rep;
  for (const SuperElement& w : witnesses)
    if (!mb.coordinates(embed(w, s.source())))
      rep.missing_witnesses.push_back(w.to_string() + " is outside the degree cutoff " + std::to_string(cutoff));
  std::vector<SuperElement> diffs;
  for (std::size_t i = 0; i < mb.size(); ++i) diffs.push_back(s(mb.element(i)) - t(mb.element(i)));
  Coordinatized c = coordinatize(diffs);
  // columns = basis elements, rows = support monomials of the differences
  ScalarMatrix sys = transpose(c.rows, c.support.size());
  std::vector<ScalarVector> ker = c.support.empty() ? std::vector<ScalarVector>{} : nullspace(sys, mb.size());
  if (c.support.empty())
    for (std::size_t i = 0; i < mb.size(); ++i) {
      ScalarVector v(mb.size(), Scalar(0));
      v[i] = Scalar(1);
      ker.push_back(v);
    }
  rep.basis = echelon_basis(mb, ker);
  rep.multiplicatively_closed = true;
  std::vector<ScalarVector> span;
  for (const auto& b : rep.basis) span.push_back(*mb.coordinates(b));
  for (const auto& x : rep.basis)
    for (const auto& y : rep.basis) {
      auto p = mb.coordinates(x * y);
      if (!p) {
        ++rep.products_beyond_cutoff;
        continue;
      }
      if (!in_span(span, *p)) rep.multiplicatively_closed = false;
    }
  return rep;
}

struct QuotientCheck {
  bool injective = false;
  bool image_equals_invariants = false;
  bool ok() const { return injective && image_equals_invariants; }
  std::vector<SuperElement> image;
};

// Does pi# map the cutoff space of O(Q) isomorphically onto the span of the invariants?
inline QuotientCheck quotient_presentation_check(const AlgebraMorphism& pi, const std::vector<SuperElement>& invariants,
                                                 int cutoff = 3, bool body_constant = false) {
  MonomialBasis q = cutoff_space(pi.source(), cutoff, body_constant);
  QuotientCheck out;
  for (std::size_t i = 0; i < q.size(); ++i) out.image.push_back(pi(q.element(i)));
  std::vector<SuperElement> inv;
  for (const auto& e : invariants) inv.push_back(embed(e, pi.target()));
  std::vector<SuperElement> all = out.image;
  all.insert(all.end(), inv.begin(), inv.end());
  Coordinatized c = coordinatize(all);
  ScalarMatrix a(c.rows.begin(), c.rows.begin() + static_cast<long>(out.image.size()));
  ScalarMatrix b(c.rows.begin() + static_cast<long>(out.image.size()), c.rows.end());
  out.injective = rank(a) == out.image.size();
  out.image_equals_invariants = same_span(a, b);
  return out;
}

}  // namespace superorbit::orbit
