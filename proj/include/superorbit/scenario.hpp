#pragma once
// Scenario files: algebra, morphism, Lie superalgebra and functional declarations plus
// the checks to run on them. parse_scenario(print_scenario(s)) == s.
//
//   option cutoff = 3;
//   odd theta; even u; unit u;            top-level generators go to algebra "default"
//   algebra T { odd theta; relation theta*gamma; base theta; }
//   morphism x : X -> T { y -> 0; eta -> theta; }
//   lie g { even x; odd y; bracket x y = z; }   (lie g unchecked { ... } skips Jacobi)
//   heisenberg H ooe;   abelian A 3;
//   functional f : H over T { z = u; point p { u = 2; } expect constant_rank true; expect orbit_dim 0|2; }
//   isotropy I { action = a; point = x; expect = theta*gamma; }
//   invariants V { source = s; target = t; cutoff = 3; body_constant; witness = theta; expect = 1, theta; }
//   quotient Q { map = pi; invariants = V; body_constant; expect = true; }

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "expression.hpp"
#include "heisenberg.hpp"
#include "morphism.hpp"
#include "orbit.hpp"

namespace superorbit::scenario {

struct Loc {
  int line = 0, col = 0;
};

using Factors = std::vector<std::pair<std::string, int>>;

struct AlgebraDecl {
  std::string name;
  std::vector<Generator> gens;
  std::vector<std::string> units;
  std::vector<std::string> base;
  std::vector<Factors> relations;
  friend bool operator==(const AlgebraDecl&, const AlgebraDecl&) = default;
};

struct MorphismDecl {
  std::string name, source, target;
  std::vector<std::pair<std::string, SuperElement>> images;
  friend bool operator==(const MorphismDecl&, const MorphismDecl&) = default;
};

struct BracketDecl {
  std::string left, right;
  SuperElement value;  // linear in the basis names
  friend bool operator==(const BracketDecl&, const BracketDecl&) = default;
};

struct LieDecl {
  enum class Kind { Explicit, Heisenberg, Abelian };
  std::string name;
  Kind kind = Kind::Explicit;
  std::string row;  // Heisenberg
  int n = 0;        // Abelian
  bool unchecked = false;
  std::vector<std::pair<std::string, Parity>> basis;
  std::vector<BracketDecl> brackets;
  friend bool operator==(const LieDecl&, const LieDecl&) = default;
};

struct PointDecl {
  std::string label;
  std::vector<std::pair<std::string, Scalar>> values;
  friend bool operator==(const PointDecl&, const PointDecl&) = default;
};

struct FunctionalDecl {
  std::string name, lie, base;
  std::vector<std::pair<std::string, SuperElement>> coeffs;
  std::vector<PointDecl> points;
  std::optional<bool> expect_constant_rank;
  std::optional<orbit::SuperDim> expect_orbit_dim, expect_isotropy_dim;
  friend bool operator==(const FunctionalDecl&, const FunctionalDecl&) = default;
};

struct IsotropyDecl {
  std::string name, action, point;
  std::optional<std::vector<SuperElement>> expect;  // ideal generators in O(T x G)
  friend bool operator==(const IsotropyDecl&, const IsotropyDecl&) = default;
};

struct InvariantsDecl {
  std::string name, source, target;
  std::optional<int> cutoff;
  std::vector<SuperElement> witnesses;
  std::optional<std::vector<SuperElement>> expect;  // spanning set, in the source algebra
  friend bool operator==(const InvariantsDecl&, const InvariantsDecl&) = default;
};

struct QuotientDecl {
  std::string name, map, invariants;
  std::optional<int> cutoff;
  bool body_constant = false;
  std::optional<bool> expect;
  friend bool operator==(const QuotientDecl&, const QuotientDecl&) = default;
};

struct Scenario {
  std::optional<int> cutoff;
  std::vector<AlgebraDecl> algebras;
  std::vector<LieDecl> lies;
  std::vector<MorphismDecl> morphisms;
  std::vector<FunctionalDecl> functionals;
  std::vector<IsotropyDecl> isotropy;
  std::vector<InvariantsDecl> invariants;
  std::vector<QuotientDecl> quotients;

  // Resolved objects (not part of equality).
  std::map<std::string, AlgebraPtr> algebra;
  std::map<std::string, LieSuperAlgebra> lie;
  std::map<std::string, AlgebraMorphism> morphism;
  std::map<std::string, Functional> functional;
  std::map<std::string, AlgebraPtr> lie_space;  // basis names as generators, for bracket values

  bool empty() const {
    return !cutoff && algebras.empty() && lies.empty() && morphisms.empty() && functionals.empty() &&
           isotropy.empty() && invariants.empty() && quotients.empty();
  }
  int effective_cutoff(std::optional<int> override_value = std::nullopt, std::optional<int> local = std::nullopt) const {
    if (override_value) return *override_value;
    if (local) return *local;
    return cutoff.value_or(3);
  }

  friend bool operator==(const Scenario& a, const Scenario& b) {
    return a.cutoff == b.cutoff && a.algebras == b.algebras && a.lies == b.lies && a.morphisms == b.morphisms &&
           a.functionals == b.functionals && a.isotropy == b.isotropy && a.invariants == b.invariants &&
           a.quotients == b.quotients;
  }
};

inline AlgebraPtr build_algebra(const AlgebraDecl& d) {
  AlgebraBuilder b;
  for (const Generator& g : d.gens) b.add(g.name, g.parity);
  for (const auto& u : d.units) b.unit(u);
  for (const auto& n : d.base) b.base(n);
  for (const auto& r : d.relations) b.relation(r);
  return b.build();
}

inline AlgebraPtr lie_space_algebra(const LieDecl& d) {
  AlgebraBuilder b;
  for (const auto& [n, p] : d.basis) b.add(n, p);
  return b.build();
}

// ---- parser ----------------------------------------------------------------

class ScenarioParser {
 public:
  explicit ScenarioParser(std::string src) : src_(std::move(src)), ts_(tokenize(src_)) {}

  Scenario parse() {
    while (!ts_.at_end()) statement();
    finish_default();
    return std::move(s_);
  }

 private:
  static bool is_reserved(const std::string& n) {
    return n == "i" || n == "exp" || n == "D";
  }

  Token new_name(const std::string& what) {
    Token t = ts_.ident(what + " name");
    if (is_reserved(t.text)) ts_.fail_at(t, "'" + t.text + "' is reserved");
    return t;
  }

  void statement() {
    const Token& t = ts_.peek();
    if (t.kind != Tok::Ident) ts_.fail("expected a declaration");
    const std::string& w = t.text;
    if (w == "even" || w == "odd" || w == "unit" || w == "base" || w == "relation") {
      if (default_built_) ts_.fail("algebra 'default' is already in use and cannot be extended");
      if (!default_index_) {
        default_index_ = s_.algebras.size();
        s_.algebras.push_back(AlgebraDecl{"default", {}, {}, {}, {}});
      }
      generator_statement(s_.algebras[*default_index_]);
    } else if (w == "algebra") {
      algebra_block();
    } else if (w == "option") {
      ts_.next();
      Token k = ts_.ident("option");
      if (k.text != "cutoff") ts_.fail_at(k, "unknown option '" + k.text + "'");
      ts_.expect("=");
      Token at = ts_.peek();
      long v = ts_.integer();
      if (v < 0) ts_.fail_at(at, "cutoff must be non-negative");
      s_.cutoff = static_cast<int>(v);
      ts_.expect(";");
    } else if (w == "morphism") {
      morphism_block();
    } else if (w == "lie") {
      lie_block();
    } else if (w == "heisenberg") {
      ts_.next();
      Token n = new_name("Lie superalgebra");
      declare_lie(n);
      Token r = ts_.ident("parity row");
      LieDecl d;
      d.name = n.text;
      d.kind = LieDecl::Kind::Heisenberg;
      try {
        d.row = heisenberg::Row::parse(r.text).name();
      } catch (const Error& e) {
        ts_.fail_at(r, e.what());
      }
      ts_.expect(";");
      LieSuperAlgebra g = heisenberg::lie_algebra(heisenberg::Row::parse(d.row));
      for (std::size_t i = 0; i < g.dim(); ++i) d.basis.emplace_back(g.name(static_cast<int>(i)), g.parity(static_cast<int>(i)));
      s_.lie_space[d.name] = lie_space_algebra(d);
      s_.lie[d.name] = g;
      s_.lies.push_back(d);
    } else if (w == "abelian") {
      ts_.next();
      Token n = new_name("Lie superalgebra");
      declare_lie(n);
      Token at = ts_.peek();
      long k = ts_.integer();
      if (k < 1 || k > 12) ts_.fail_at(at, "abelian dimension must be between 1 and 12");
      ts_.expect(";");
      LieDecl d;
      d.name = n.text;
      d.kind = LieDecl::Kind::Abelian;
      d.n = static_cast<int>(k);
      LieSuperAlgebra g = heisenberg::abelian_odd(d.n);
      for (std::size_t i = 0; i < g.dim(); ++i) d.basis.emplace_back(g.name(static_cast<int>(i)), Parity::Odd);
      s_.lie_space[d.name] = lie_space_algebra(d);
      s_.lie[d.name] = g;
      s_.lies.push_back(d);
    } else if (w == "functional") {
      functional_block();
    } else if (w == "isotropy") {
      isotropy_block();
    } else if (w == "invariants") {
      invariants_block();
    } else if (w == "quotient") {
      quotient_block();
    } else {
      ts_.fail("unknown declaration");
    }
  }

  void generator_statement(AlgebraDecl& d) {
    Token kw = ts_.next();
    const std::string& w = kw.text;
    if (w == "relation") {
      Factors f;
      do {
        Token g = ts_.ident("generator");
        check_declared(d, g);
        int k = 1;
        if (ts_.accept("^")) {
          Token at = ts_.peek();
          long v = ts_.integer();
          if (v < 1) ts_.fail_at(at, "relation exponents must be positive");
          k = static_cast<int>(v);
        }
        f.emplace_back(g.text, k);
      } while (ts_.accept("*"));
      ts_.expect(";");
      d.relations.push_back(f);
      return;
    }
    do {
      Token g = ts_.ident("generator");
      if (w == "even" || w == "odd") {
        if (is_reserved(g.text)) ts_.fail_at(g, "'" + g.text + "' is reserved");
        Parity p = w == "even" ? Parity::Even : Parity::Odd;
        bool found = false;
        for (const Generator& x : d.gens)
          if (x.name == g.text) {
            if (x.parity != p) ts_.fail_at(g, "generator '" + g.text + "' declared with two parities");
            found = true;
          }
        if (!found) d.gens.push_back({g.text, p});
      } else {
        const Generator& x = check_declared(d, g);
        if (w == "unit") {
          if (x.parity != Parity::Even) ts_.fail_at(g, "odd generator '" + g.text + "' cannot be a unit");
          if (std::find(d.units.begin(), d.units.end(), g.text) == d.units.end()) d.units.push_back(g.text);
        } else if (std::find(d.base.begin(), d.base.end(), g.text) == d.base.end()) {
          d.base.push_back(g.text);
        }
      }
    } while (ts_.accept(","));
    ts_.expect(";");
  }

  const Generator& check_declared(const AlgebraDecl& d, const Token& g) {
    for (const Generator& x : d.gens)
      if (x.name == g.text) return x;
    ts_.fail_at(g, "undeclared generator '" + g.text + "'");
  }

  void algebra_block() {
    ts_.next();
    Token n = new_name("algebra");
    if (find_algebra_decl(n.text)) ts_.fail_at(n, "algebra '" + n.text + "' is already declared");
    AlgebraDecl d{n.text, {}, {}, {}, {}};
    ts_.expect("{");
    while (!ts_.accept("}")) {
      if (ts_.at_end()) ts_.fail("unterminated algebra block");
      const std::string& w = ts_.peek().text;
      if (w != "even" && w != "odd" && w != "unit" && w != "base" && w != "relation")
        ts_.fail("expected even, odd, unit, base or relation");
      generator_statement(d);
    }
    try {
      s_.algebra[d.name] = build_algebra(d);
    } catch (const Error& e) {
      ts_.fail_at(n, e.what());
    }
    s_.algebras.push_back(std::move(d));
  }

  const AlgebraDecl* find_algebra_decl(const std::string& n) const {
    for (const auto& a : s_.algebras)
      if (a.name == n) return &a;
    return nullptr;
  }

  void finish_default() {
    if (default_index_ && !default_built_) {
      const AlgebraDecl& d = s_.algebras[*default_index_];
      try {
        s_.algebra[d.name] = build_algebra(d);
      } catch (const Error& e) {
        throw ParseError(e.what(), 1, 1);
      }
      default_built_ = true;
    }
  }

  AlgebraPtr algebra_ref() {
    Token n = ts_.ident("algebra name");
    if (n.text == "default") finish_default();
    auto it = s_.algebra.find(n.text);
    if (it == s_.algebra.end()) ts_.fail_at(n, "undeclared algebra '" + n.text + "'");
    return it->second;
  }

  SuperElement expression(const AlgebraPtr& alg) {
    ExpressionParser p(ts_, alg);
    return p.sum();
  }

  void morphism_block() {
    ts_.next();
    Token n = new_name("morphism");
    if (s_.morphism.count(n.text)) ts_.fail_at(n, "morphism '" + n.text + "' is already declared");
    ts_.expect(":");
    Token src_tok = ts_.peek();
    AlgebraPtr src = algebra_ref();
    ts_.expect("->");
    Token tgt_tok = ts_.peek();
    AlgebraPtr tgt = algebra_ref();
    MorphismDecl d{n.text, src_tok.text, tgt_tok.text, {}};
    std::map<std::string, SuperElement> images;
    ts_.expect("{");
    while (!ts_.accept("}")) {
      if (ts_.at_end()) ts_.fail("unterminated morphism block");
      Token g = ts_.ident("source generator");
      if (!src->has(g.text)) ts_.fail_at(g, "undeclared generator '" + g.text + "' in algebra '" + d.source + "'");
      if (images.count(g.text)) ts_.fail_at(g, "second image for '" + g.text + "'");
      ts_.expect("->");
      Token at = ts_.peek();
      SuperElement e = expression(tgt);
      Parity want = src->parity(g.text);
      if (!e.is_zero() && e.parity() != want)
        ts_.fail_at(at, "parity mismatch: '" + g.text + "' is " + parity_name(want) + " but its image " +
                            e.to_string() + " is not");
      ts_.expect(";");
      images.emplace(g.text, e);
      d.images.emplace_back(g.text, e);
    }
    for (const Generator& g : src->generators())
      if (!images.count(g.name)) ts_.fail_at(n, "morphism '" + n.text + "' has no image for '" + g.name + "'");
    AlgebraMorphism m(src, tgt, images);
    auto errs = m.check();
    if (!errs.empty()) ts_.fail_at(n, "morphism '" + n.text + "' is not well defined: " + errs.front());
    s_.morphism[d.name] = m;
    s_.morphisms.push_back(std::move(d));
  }

  static std::string parity_name(Parity p) { return p == Parity::Even ? "even" : "odd"; }

  void declare_lie(const Token& n) {
    if (s_.lie.count(n.text)) ts_.fail_at(n, "Lie superalgebra '" + n.text + "' is already declared");
  }

  void lie_block() {
    ts_.next();
    Token n = new_name("Lie superalgebra");
    declare_lie(n);
    LieDecl d;
    d.name = n.text;
    d.unchecked = ts_.accept("unchecked");
    ts_.expect("{");
    AlgebraPtr space;
    while (!ts_.accept("}")) {
      if (ts_.at_end()) ts_.fail("unterminated lie block");
      Token kw = ts_.ident("even, odd or bracket");
      if (kw.text == "even" || kw.text == "odd") {
        if (space) ts_.fail_at(kw, "basis elements must be declared before brackets");
        do {
          Token b = ts_.ident("basis element");
          if (is_reserved(b.text)) ts_.fail_at(b, "'" + b.text + "' is reserved");
          for (const auto& [x, p] : d.basis)
            if (x == b.text) ts_.fail_at(b, "basis element '" + b.text + "' declared twice");
          d.basis.emplace_back(b.text, kw.text == "even" ? Parity::Even : Parity::Odd);
        } while (ts_.accept(","));
        ts_.expect(";");
      } else if (kw.text == "bracket") {
        if (!space) space = lie_space_algebra(d);
        Token l = ts_.ident("basis element"), r = ts_.ident("basis element");
        for (const Token* t : {&l, &r})
          if (!space->has(t->text)) ts_.fail_at(*t, "unknown basis element '" + t->text + "'");
        ts_.expect("=");
        Token at = ts_.peek();
        SuperElement v = expression(space);
        for (const auto& [m, c] : v.terms()) {
          int deg = std::popcount(m.odd);
          for (int e : m.even) deg += e;
          if (deg != 1) ts_.fail_at(at, "bracket value must be a linear combination of basis elements");
        }
        ts_.expect(";");
        d.brackets.push_back({l.text, r.text, v});
      } else {
        ts_.fail_at(kw, "expected even, odd or bracket");
      }
    }
    if (!space) space = lie_space_algebra(d);
    LieSuperAlgebra g = explicit_lie(d, space);
    auto errs = g.validate();
    if (d.unchecked) std::erase_if(errs, [](const std::string& e) { return e.rfind("Jacobi", 0) == 0; });
    if (!errs.empty()) ts_.fail_at(n, "Lie superalgebra '" + n.text + "' is invalid: " + errs.front());
    s_.lie_space[d.name] = space;
    s_.lie[d.name] = g;
    s_.lies.push_back(std::move(d));
  }

 public:
  static LieSuperAlgebra explicit_lie(const LieDecl& d, const AlgebraPtr& space) {
    std::vector<std::string> names;
    std::vector<Parity> ps;
    for (const auto& [x, p] : d.basis) {
      names.push_back(x);
      ps.push_back(p);
    }
    LieSuperAlgebra g(names, ps);
    for (const BracketDecl& b : d.brackets) {
      SparseVector v;
      for (const auto& [m, c] : b.value.terms()) {
        int idx = -1;
        for (std::size_t k = 0; k < names.size(); ++k)
          if (SuperElement::gen(space, names[k]).terms().begin()->first == m) idx = static_cast<int>(k);
        v[idx] = c;
      }
      g.set_bracket(g.index_of(b.left), g.index_of(b.right), v);
    }
    return g;
  }

 private:
  void functional_block() {
    ts_.next();
    Token n = new_name("functional");
    if (s_.functional.count(n.text)) ts_.fail_at(n, "functional '" + n.text + "' is already declared");
    ts_.expect(":");
    Token lt = ts_.ident("Lie superalgebra name");
    auto git = s_.lie.find(lt.text);
    if (git == s_.lie.end()) ts_.fail_at(lt, "undeclared Lie superalgebra '" + lt.text + "'");
    const LieSuperAlgebra& g = git->second;
    ts_.expect("over");
    Token bt = ts_.peek();
    AlgebraPtr base = algebra_ref();
    FunctionalDecl d;
    d.name = n.text;
    d.lie = lt.text;
    d.base = bt.text;
    Functional f{base, std::vector<SuperElement>(g.dim(), SuperElement::zero(base))};
    ts_.expect("{");
    while (!ts_.accept("}")) {
      if (ts_.at_end()) ts_.fail("unterminated functional block");
      if (ts_.is("point")) {
        d.points.push_back(point_block(base));
      } else if (ts_.accept("expect")) {
        Token k = ts_.ident("expectation");
        if (k.text == "constant_rank") {
          Token v = ts_.ident("true or false");
          if (v.text != "true" && v.text != "false") ts_.fail_at(v, "expected true or false");
          d.expect_constant_rank = v.text == "true";
        } else if (k.text == "orbit_dim" || k.text == "isotropy_dim") {
          long p = ts_.integer();
          ts_.expect("|");
          long q = ts_.integer();
          (k.text == "orbit_dim" ? d.expect_orbit_dim : d.expect_isotropy_dim) = orbit::SuperDim{p, q};
        } else {
          ts_.fail_at(k, "unknown expectation '" + k.text + "'");
        }
        ts_.expect(";");
      } else {
        Token b = ts_.ident("basis element");
        int idx = -1;
        for (std::size_t k = 0; k < g.dim(); ++k)
          if (g.name(static_cast<int>(k)) == b.text) idx = static_cast<int>(k);
        if (idx < 0) ts_.fail_at(b, "unknown basis element '" + b.text + "' of '" + lt.text + "'");
        ts_.expect("=");
        Token at = ts_.peek();
        SuperElement e = expression(base);
        if (!e.is_zero() && e.parity() != g.parity(idx))
          ts_.fail_at(at, "parity mismatch: the coefficient of " + b.text + " must be " +
                              parity_name(g.parity(idx)));
        ts_.expect(";");
        f.coeffs[idx] = e;
        d.coeffs.emplace_back(b.text, e);
      }
    }
    s_.functional[d.name] = f;
    s_.functionals.push_back(std::move(d));
  }

  PointDecl point_block(const AlgebraPtr& base) {
    ts_.expect("point");
    Token label = ts_.ident("point label");
    PointDecl p{label.text, {}};
    ts_.expect("{");
    while (!ts_.accept("}")) {
      if (ts_.at_end()) ts_.fail("unterminated point block");
      Token g = ts_.ident("even generator");
      if (!base->has(g.text)) ts_.fail_at(g, "undeclared generator '" + g.text + "'");
      if (base->parity(g.text) != Parity::Even) ts_.fail_at(g, "odd generators vanish at classical points");
      ts_.expect("=");
      Token at = ts_.peek();
      SuperElement v = expression(base);
      if (v.term_count() > 1 || (!v.is_zero() && !v.terms().begin()->first.is_one()))
        ts_.fail_at(at, "point values must be constants");
      Scalar c = v.constant_term();
      int idx = base->index_of(g.text);
      if (base->is_unit(base->slot(idx)) && c.is_zero()) ts_.fail_at(at, "unit '" + g.text + "' cannot vanish");
      ts_.expect(";");
      p.values.emplace_back(g.text, c);
    }
    return p;
  }

  const AlgebraMorphism& morphism_ref(std::string* name = nullptr) {
    Token t = ts_.ident("morphism name");
    auto it = s_.morphism.find(t.text);
    if (it == s_.morphism.end()) ts_.fail_at(t, "undeclared morphism '" + t.text + "'");
    if (name) *name = t.text;
    return it->second;
  }

  std::vector<SuperElement> expression_list(const AlgebraPtr& alg) {
    std::vector<SuperElement> out;
    do out.push_back(expression(alg));
    while (ts_.accept(","));
    return out;
  }

  std::optional<int> cutoff_value() {
    ts_.expect("=");
    Token at = ts_.peek();
    long v = ts_.integer();
    if (v < 0) ts_.fail_at(at, "cutoff must be non-negative");
    return static_cast<int>(v);
  }

  void isotropy_block() {
    ts_.next();
    Token n = new_name("isotropy check");
    IsotropyDecl d;
    d.name = n.text;
    const AlgebraMorphism* action = nullptr;
    const AlgebraMorphism* point = nullptr;
    std::optional<Token> expect_at;
    ts_.expect("{");
    while (!ts_.accept("}")) {
      if (ts_.at_end()) ts_.fail("unterminated isotropy block");
      Token k = ts_.ident("field");
      if (k.text == "action" || k.text == "point") {
        ts_.expect("=");
        (k.text == "action" ? action : point) = &morphism_ref(k.text == "action" ? &d.action : &d.point);
      } else if (k.text == "expect") {
        if (!action || !point) ts_.fail_at(k, "expect must follow action and point");
        AlgebraPtr ambient;
        try {
          ambient = orbit::isotropy_ambient(*action, *point);
        } catch (const Error& e) {
          ts_.fail_at(k, e.what());
        }
        ts_.expect("=");
        d.expect = expression_list(ambient);
      } else {
        ts_.fail_at(k, "unknown isotropy field '" + k.text + "'");
      }
      ts_.expect(";");
    }
    if (!action || !point) ts_.fail_at(n, "isotropy check '" + n.text + "' needs action and point");
    try {
      orbit::isotropy_ambient(*action, *point);
    } catch (const Error& e) {
      ts_.fail_at(n, e.what());
    }
    s_.isotropy.push_back(std::move(d));
  }

  void invariants_block() {
    ts_.next();
    Token n = new_name("invariants check");
    InvariantsDecl d;
    d.name = n.text;
    const AlgebraMorphism* s = nullptr;
    const AlgebraMorphism* t = nullptr;
    ts_.expect("{");
    while (!ts_.accept("}")) {
      if (ts_.at_end()) ts_.fail("unterminated invariants block");
      Token k = ts_.ident("field");
      if (k.text == "source" || k.text == "target") {
        ts_.expect("=");
        (k.text == "source" ? s : t) = &morphism_ref(k.text == "source" ? &d.source : &d.target);
      } else if (k.text == "cutoff") {
        d.cutoff = cutoff_value();
      } else if (k.text == "witness" || k.text == "expect") {
        if (!s) ts_.fail_at(k, k.text + " must follow source");
        ts_.expect("=");
        (k.text == "witness" ? d.witnesses : d.expect.emplace()) = expression_list(s->source());
      } else {
        ts_.fail_at(k, "unknown invariants field '" + k.text + "'");
      }
      ts_.expect(";");
    }
    if (!s || !t) ts_.fail_at(n, "invariants check '" + n.text + "' needs source and target");
    if (!same_algebra(s->source(), t->source()) || !same_algebra(s->target(), t->target()))
      ts_.fail_at(n, "source and target maps of '" + n.text + "' must share domain and codomain");
    s_.invariants.push_back(std::move(d));
  }

  void quotient_block() {
    ts_.next();
    Token n = new_name("quotient check");
    QuotientDecl d;
    d.name = n.text;
    ts_.expect("{");
    while (!ts_.accept("}")) {
      if (ts_.at_end()) ts_.fail("unterminated quotient block");
      Token k = ts_.ident("field");
      if (k.text == "map") {
        ts_.expect("=");
        morphism_ref(&d.map);
      } else if (k.text == "invariants") {
        ts_.expect("=");
        Token r = ts_.ident("invariants check name");
        bool found = false;
        for (const auto& iv : s_.invariants) found = found || iv.name == r.text;
        if (!found) ts_.fail_at(r, "undeclared invariants check '" + r.text + "'");
        d.invariants = r.text;
      } else if (k.text == "cutoff") {
        d.cutoff = cutoff_value();
      } else if (k.text == "body_constant") {
        d.body_constant = true;
      } else if (k.text == "expect") {
        ts_.expect("=");
        Token v = ts_.ident("true or false");
        if (v.text != "true" && v.text != "false") ts_.fail_at(v, "expected true or false");
        d.expect = v.text == "true";
      } else {
        ts_.fail_at(k, "unknown quotient field '" + k.text + "'");
      }
      ts_.expect(";");
    }
    if (d.map.empty() || d.invariants.empty()) ts_.fail_at(n, "quotient check '" + n.text + "' needs map and invariants");
    const InvariantsDecl* iv = nullptr;
    for (const auto& x : s_.invariants)
      if (x.name == d.invariants) iv = &x;
    if (!same_algebra(s_.morphism.at(d.map).target(), s_.morphism.at(iv->source).source()))
      ts_.fail_at(n, "the quotient map must land in the source algebra of the invariants");
    s_.quotients.push_back(std::move(d));
  }

  std::string src_;
  TokenStream ts_;
  Scenario s_;
  std::optional<std::size_t> default_index_;
  bool default_built_ = false;
};

inline Scenario parse_scenario(const std::string& text) { return ScenarioParser(text).parse(); }

// ---- printer ----------------------------------------------------------------

inline std::string print_factors(const Factors& f) {
  std::string s;
  for (const auto& [n, k] : f) {
    if (!s.empty()) s += "*";
    s += k == 1 ? n : n + "^" + std::to_string(k);
  }
  return s;
}

inline std::string join_elements(const std::vector<SuperElement>& v) {
  std::string s;
  for (const auto& e : v) s += (s.empty() ? "" : ", ") + e.to_string();
  return s;
}

inline std::string print_scenario(const Scenario& s) {
  std::string o;
  if (s.cutoff) o += "option cutoff = " + std::to_string(*s.cutoff) + ";\n";
  for (const AlgebraDecl& a : s.algebras) {
    o += "algebra " + a.name + " {\n";
    for (const Generator& g : a.gens) o += std::string("  ") + (g.parity == Parity::Even ? "even " : "odd ") + g.name + ";\n";
    for (const auto& u : a.units) o += "  unit " + u + ";\n";
    for (const auto& b : a.base) o += "  base " + b + ";\n";
    for (const auto& r : a.relations) o += "  relation " + print_factors(r) + ";\n";
    o += "}\n";
  }
  for (const LieDecl& l : s.lies) {
    if (l.kind == LieDecl::Kind::Heisenberg) {
      o += "heisenberg " + l.name + " " + l.row + ";\n";
    } else if (l.kind == LieDecl::Kind::Abelian) {
      o += "abelian " + l.name + " " + std::to_string(l.n) + ";\n";
    } else {
      o += "lie " + l.name + (l.unchecked ? " unchecked" : "") + " {\n";
      for (const auto& [n, p] : l.basis) o += std::string("  ") + (p == Parity::Even ? "even " : "odd ") + n + ";\n";
      for (const auto& b : l.brackets) o += "  bracket " + b.left + " " + b.right + " = " + b.value.to_string() + ";\n";
      o += "}\n";
    }
  }
  for (const MorphismDecl& m : s.morphisms) {
    o += "morphism " + m.name + " : " + m.source + " -> " + m.target + " {\n";
    for (const auto& [g, e] : m.images) o += "  " + g + " -> " + e.to_string() + ";\n";
    o += "}\n";
  }
  for (const FunctionalDecl& f : s.functionals) {
    o += "functional " + f.name + " : " + f.lie + " over " + f.base + " {\n";
    for (const auto& [b, e] : f.coeffs) o += "  " + b + " = " + e.to_string() + ";\n";
    for (const auto& p : f.points) {
      o += "  point " + p.label + " {";
      for (const auto& [g, v] : p.values) o += " " + g + " = " + v.to_string() + ";";
      o += " }\n";
    }
    if (f.expect_constant_rank) o += std::string("  expect constant_rank ") + (*f.expect_constant_rank ? "true" : "false") + ";\n";
    if (f.expect_orbit_dim) o += "  expect orbit_dim " + f.expect_orbit_dim->to_string() + ";\n";
    if (f.expect_isotropy_dim) o += "  expect isotropy_dim " + f.expect_isotropy_dim->to_string() + ";\n";
    o += "}\n";
  }
  for (const IsotropyDecl& d : s.isotropy) {
    o += "isotropy " + d.name + " {\n  action = " + d.action + ";\n  point = " + d.point + ";\n";
    if (d.expect) o += "  expect = " + join_elements(*d.expect) + ";\n";
    o += "}\n";
  }
  for (const InvariantsDecl& d : s.invariants) {
    o += "invariants " + d.name + " {\n  source = " + d.source + ";\n  target = " + d.target + ";\n";
    if (d.cutoff) o += "  cutoff = " + std::to_string(*d.cutoff) + ";\n";
    if (!d.witnesses.empty()) o += "  witness = " + join_elements(d.witnesses) + ";\n";
    if (d.expect) o += "  expect = " + join_elements(*d.expect) + ";\n";
    o += "}\n";
  }
  for (const QuotientDecl& d : s.quotients) {
    o += "quotient " + d.name + " {\n  map = " + d.map + ";\n  invariants = " + d.invariants + ";\n";
    if (d.cutoff) o += "  cutoff = " + std::to_string(*d.cutoff) + ";\n";
    if (d.body_constant) o += "  body_constant;\n";
    if (d.expect) o += std::string("  expect = ") + (*d.expect ? "true" : "false") + ";\n";
    o += "}\n";
  }
  return o;
}

// Classical points of a functional: declared ones, or the default point of its base.
inline std::vector<orbit::ClassicalPoint> classical_points(const Scenario& s, const FunctionalDecl& f) {
  const AlgebraPtr& base = s.algebra.at(f.base);
  if (f.points.empty()) return orbit::default_points(*base);
  std::vector<orbit::ClassicalPoint> out;
  for (const PointDecl& p : f.points) {
    orbit::ClassicalPoint c = orbit::default_points(*base).front();
    c.label = p.label;
    for (const auto& [g, v] : p.values) c.values[g] = v;
    out.push_back(c);
  }
  return out;
}

}  // namespace superorbit::scenario
