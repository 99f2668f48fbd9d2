#pragma once
// Tangent vectors along morphisms (graded derivations), brackets, dual-number flows,
// Jacobians at classical points and the de Rham action of A^{0|1}.

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "linalg.hpp"
#include "morphism.hpp"

namespace superorbit {

class Derivation {
 public:
  Derivation() = default;
  // v : O(Y) -> O(X) along phi : O(Y) -> O(X); images are v(y^a) for every generator y^a.
  Derivation(AlgebraMorphism along, Parity parity, const std::map<std::string, SuperElement>& images)
      : along_(std::move(along)), parity_(parity) {
    const AlgebraPtr& src = along_.source();
    for (const Generator& g : src->generators()) {
      auto it = images.find(g.name);
      SuperElement img = it == images.end() ? SuperElement::zero(along_.target()) : embed(it->second, along_.target());
      if (!img.is_zero() && img.parity() != (g.parity + parity_))
        throw Error("derivation: image of '" + g.name + "' has the wrong parity");
      images_.push_back(std::move(img));
    }
    for (const auto& [n, e] : images)
      if (!src->has(n)) throw Error("derivation: '" + n + "' is not a generator");
    // vector fields over T kill the base functions
    for (const std::string& n : src->base_generators())
      if (!image(n).is_zero()) throw Error("derivation: base function '" + n + "' is not annihilated");
  }

  // Vector field on a single space (along the identity).
  static Derivation vector_field(const AlgebraPtr& a, Parity p, const std::map<std::string, SuperElement>& images) {
    return Derivation(AlgebraMorphism::identity(a), p, images);
  }
  // d/d(name) as a vector field.
  static Derivation partial(const AlgebraPtr& a, const std::string& name) {
    return vector_field(a, a->parity(name), {{name, SuperElement::one(a)}});
  }

  Parity parity() const { return parity_; }
  const AlgebraMorphism& along() const { return along_; }
  const AlgebraPtr& source() const { return along_.source(); }
  const AlgebraPtr& target() const { return along_.target(); }
  const SuperElement& image(const std::string& name) const { return images_.at(source()->index_of(name)); }

  // v(f) = sum_a v(y^a) phi(d f / d y^a)
  SuperElement operator()(const SuperElement& f) const {
    SuperElement out(target());
    for (const Generator& g : source()->generators()) {
      const SuperElement& vy = images_[source()->index_of(g.name)];
      if (vy.is_zero()) continue;
      SuperElement d = f.derivative(g.name);
      if (d.is_zero()) continue;
      out += vy * along_(d);
    }
    return out;
  }

  // Relations of the source must be sent to zero.
  std::vector<std::string> check() const {
    std::vector<std::string> errs;
    const AlgebraPresentation& src = *source();
    auto apply_formal = [&](const Monomial& r) {
      SuperElement out(target());
      for (std::size_t s = 0; s < r.even.size(); ++s) {
        int k = r.even[s];
        if (k == 0) continue;
        int idx = src.even_generator(static_cast<int>(s));
        Monomial d = r;
        d.even[s] -= 1;
        SuperElement t = images_[idx] * along_.apply_monomial(d);
        t *= Scalar(static_cast<long>(k));
        out += t;
      }
      for (std::uint64_t b = r.odd; b; b &= b - 1) {
        int s = std::countr_zero(b);
        std::uint64_t bitmask = std::uint64_t{1} << s;
        Monomial d = r;
        d.odd &= ~bitmask;
        SuperElement t = images_[src.odd_generator(s)] * along_.apply_monomial(d);
        if (std::popcount(r.odd & (bitmask - 1)) & 1) t = -t;
        out += t;
      }
      return out;
    };
    for (std::size_t s = 0; s < src.even_count(); ++s) {
      if (int t = src.truncation(static_cast<int>(s)); t != 0) {
        Monomial r = src.one();
        r.even[s] = t;
        if (!apply_formal(r).is_zero())
          errs.push_back("truncation of '" + src.generator(src.even_generator(static_cast<int>(s))).name +
                         "' is not preserved");
      }
    }
    for (const Monomial& r : src.relations())
      if (!apply_formal(r).is_zero()) errs.push_back("a relation is not preserved");
    return errs;
  }

  friend bool operator==(const Derivation& a, const Derivation& b) {
    return a.parity_ == b.parity_ && a.along_ == b.along_ && a.images_ == b.images_;
  }

  std::string to_string() const {
    std::string s = std::string(parity_name(parity_)) + " derivation {";
    for (std::size_t i = 0; i < images_.size(); ++i)
      s += " " + source()->generator(static_cast<int>(i)).name + " -> " + images_[i].to_string() + ";";
    return s + " }";
  }

 private:
  AlgebraMorphism along_;
  Parity parity_ = Parity::Even;
  std::vector<SuperElement> images_;
};

// Super commutator of two vector fields on the same space.
inline Derivation bracket(const Derivation& u, const Derivation& v) {
  if (!same_algebra(u.source(), v.source()) || !same_algebra(u.source(), u.target()) ||
      !same_algebra(v.source(), v.target()))
    throw Error("bracket: both arguments must be vector fields on one space");
  std::map<std::string, SuperElement> im;
  bool neg = koszul_negative(u.parity(), v.parity());
  for (const Generator& g : u.source()->generators()) {
    SuperElement a = u(v.image(g.name));
    SuperElement b = v(u.image(g.name));
    im.emplace(g.name, neg ? a + b : a - b);
  }
  return Derivation::vector_field(u.source(), u.parity() + v.parity(), im);
}

inline Derivation operator+(const Derivation& u, const Derivation& v) {
  if (u.parity() != v.parity() || !(u.along() == v.along())) throw Error("sum of incompatible derivations");
  std::map<std::string, SuperElement> im;
  for (const Generator& g : u.source()->generators()) im.emplace(g.name, u.image(g.name) + v.image(g.name));
  return Derivation(u.along(), u.parity(), im);
}
inline Derivation operator*(const SuperElement& f, const Derivation& v) {
  std::map<std::string, SuperElement> im;
  Parity p = f.parity().value_or(Parity::Even);
  if (!f.is_homogeneous()) throw Error("coefficient of a derivation must be homogeneous");
  for (const Generator& g : v.source()->generators()) im.emplace(g.name, f * v.image(g.name));
  return Derivation(v.along(), v.parity() + p, im);
}
inline Derivation operator*(const Scalar& c, const Derivation& v) {
  return SuperElement::constant(v.target(), c) * v;
}

// X[tau|vartheta] with tau^2 = tau*vartheta = 0.
struct DualNumbers {
  AlgebraPtr algebra;
  std::string tau;
  std::string theta;
};

inline DualNumbers dual_numbers(const AlgebraPresentation& x) {
  DualNumbers d;
  d.tau = fresh_name(x, "tau");
  d.theta = fresh_name(x, "vartheta");
  d.algebra = AlgebraBuilder::from(x).even(d.tau).odd(d.theta).truncate(d.tau, 2).relation({{d.tau, 1}, {d.theta, 1}}).build();
  return d;
}

struct InfinitesimalFlow {
  DualNumbers dual;
  AlgebraMorphism morphism;  // O(Y) -> O(X)[tau|vartheta]
};

// y -> phi(y) + tau v(y) (v even) or phi(y) + vartheta v(y) (v odd).
inline InfinitesimalFlow infinitesimal_flow(const Derivation& v) {
  DualNumbers d = dual_numbers(*v.target());
  const std::string& param = v.parity() == Parity::Even ? d.tau : d.theta;
  SuperElement t = SuperElement::gen(d.algebra, param);
  std::map<std::string, SuperElement> im;
  for (const Generator& g : v.source()->generators())
    im.emplace(g.name, embed(v.along().image(g.name), d.algebra) + t * embed(v.image(g.name), d.algebra));
  return {d, AlgebraMorphism(v.source(), d.algebra, im)};
}

// Kill the dual-number parameters.
inline AlgebraMorphism restrict_to_zero(const DualNumbers& d, const AlgebraPtr& x) {
  std::map<std::string, SuperElement> im;
  for (const Generator& g : d.algebra->generators()) {
    if (g.name == d.tau || g.name == d.theta) im.emplace(g.name, SuperElement::zero(x));
    else im.emplace(g.name, SuperElement::gen(x, g.name));
  }
  return AlgebraMorphism(d.algebra, x, im);
}

// Inverse direction: the tangent vector encoded by a flow (coefficient of tau or vartheta).
inline Derivation derivation_from_flow(const InfinitesimalFlow& f, const AlgebraPtr& x, Parity p) {
  const std::string& param = p == Parity::Even ? f.dual.tau : f.dual.theta;
  AlgebraMorphism r = restrict_to_zero(f.dual, x);
  std::map<std::string, SuperElement> im, base;
  for (const Generator& g : f.morphism.source()->generators()) {
    const SuperElement& img = f.morphism.image(g.name);
    im.emplace(g.name, r(img.derivative(param)));
    base.emplace(g.name, r(img));
  }
  return Derivation(AlgebraMorphism(f.morphism.source(), x, base), p, im);
}

// Jacobian of phi : O(Y) -> O(X) at a classical point p of X:
// J[a][b] = d phi(y^a) / d x^b evaluated at p.
inline ScalarMatrix tangent_map_at(const AlgebraMorphism& phi, const std::map<std::string, Scalar>& p) {
  const auto& ys = phi.source()->generators();
  const auto& xs = phi.target()->generators();
  ScalarMatrix j(ys.size(), ScalarVector(xs.size(), Scalar(0)));
  for (std::size_t a = 0; a < ys.size(); ++a)
    for (std::size_t b = 0; b < xs.size(); ++b)
      j[a][b] = phi.image(ys[a].name).derivative(xs[b].name).evaluate(p);
  return j;
}

// Image of a classical point under the space map dual to phi.
inline std::map<std::string, Scalar> map_point(const AlgebraMorphism& phi, const std::map<std::string, Scalar>& p) {
  std::map<std::string, Scalar> out;
  for (const Generator& g : phi.source()->generators())
    if (g.parity == Parity::Even) out[g.name] = phi.image(g.name).evaluate(p);
  return out;
}

inline ScalarMatrix matmul(const ScalarMatrix& a, const ScalarMatrix& b, std::size_t inner) {
  std::size_t cols = b.empty() ? 0 : b.front().size();
  ScalarMatrix c(a.size(), ScalarVector(cols, Scalar(0)));
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t k = 0; k < inner; ++k)
      if (!a[i][k].is_zero())
        for (std::size_t j = 0; j < cols; ++j) c[i][j] += a[i][k] * b[k][j];
  return c;
}

// Differential forms on A^k: even x1..xk, odd dx1..dxk.
struct FormAlgebra {
  AlgebraPtr algebra;
  std::vector<std::string> coords;
  std::vector<std::string> differentials;
};

inline FormAlgebra form_algebra(const std::vector<std::string>& coords) {
  FormAlgebra f;
  AlgebraBuilder b;
  for (const auto& c : coords) b.even(c);
  for (const auto& c : coords) b.odd("d" + c);
  f.algebra = b.build();
  f.coords = coords;
  for (const auto& c : coords) f.differentials.push_back("d" + c);
  return f;
}

// The de Rham differential as an odd vector field: x -> dx, dx -> 0.
inline Derivation de_rham_differential(const FormAlgebra& f) {
  std::map<std::string, SuperElement> im;
  for (std::size_t i = 0; i < f.coords.size(); ++i)
    im.emplace(f.coords[i], SuperElement::gen(f.algebra, f.differentials[i]));
  return Derivation::vector_field(f.algebra, Parity::Odd, im);
}

struct DeRhamAction {
  AlgebraPtr extended;  // forms with an extra odd coordinate
  std::string tau;
  AlgebraMorphism action;  // omega -> omega + tau d omega
};

inline DeRhamAction de_rham_action(const FormAlgebra& f) {
  DeRhamAction a;
  a.tau = fresh_name(*f.algebra, "tau");
  a.extended = AlgebraBuilder::from(*f.algebra).odd(a.tau).build();
  Derivation d = de_rham_differential(f);
  SuperElement t = SuperElement::gen(a.extended, a.tau);
  std::map<std::string, SuperElement> im;
  for (const Generator& g : f.algebra->generators()) {
    SuperElement x = SuperElement::gen(f.algebra, g.name);
    im.emplace(g.name, embed(x, a.extended) + t * embed(d(x), a.extended));
  }
  a.action = AlgebraMorphism(f.algebra, a.extended, im);
  return a;
}

}  // namespace superorbit
