#pragma once
// Morphisms of superspaces, stored dually as algebra maps O(Y) -> O(X) given by
// generator images.  compose is substitution.

#include <map>
#include <string>
#include <vector>

#include "element.hpp"

namespace superorbit {

class AlgebraMorphism {
 public:
  AlgebraMorphism() = default;
  // images must cover every generator of the source; they live in the target.
  AlgebraMorphism(AlgebraPtr source, AlgebraPtr target, std::map<std::string, SuperElement> images)
      : source_(std::move(source)), target_(std::move(target)) {
    for (const Generator& g : source_->generators()) {
      auto it = images.find(g.name);
      if (it == images.end()) throw Error("morphism: no image for generator '" + g.name + "'");
      images_.push_back(embed(it->second, target_));
    }
    for (const auto& [n, e] : images)
      if (!source_->has(n)) throw Error("morphism: '" + n + "' is not a source generator");
  }

  static AlgebraMorphism identity(const AlgebraPtr& a) {
    std::map<std::string, SuperElement> im;
    for (const Generator& g : a->generators()) im.emplace(g.name, SuperElement::gen(a, g.name));
    return AlgebraMorphism(a, a, im);
  }
  // Inclusion of a sub-presentation (every generator of `from` exists in `to`).
  static AlgebraMorphism inclusion(const AlgebraPtr& from, const AlgebraPtr& to) {
    std::map<std::string, SuperElement> im;
    for (const Generator& g : from->generators()) im.emplace(g.name, SuperElement::gen(to, g.name));
    return AlgebraMorphism(from, to, im);
  }
  // Identity on shared generators, given overrides for some of them.
  static AlgebraMorphism substitution(const AlgebraPtr& from, const AlgebraPtr& to,
                                      const std::map<std::string, SuperElement>& overrides) {
    std::map<std::string, SuperElement> im;
    for (const Generator& g : from->generators()) {
      auto it = overrides.find(g.name);
      im.emplace(g.name, it != overrides.end() ? it->second : SuperElement::gen(to, g.name));
    }
    return AlgebraMorphism(from, to, im);
  }

  const AlgebraPtr& source() const { return source_; }
  const AlgebraPtr& target() const { return target_; }
  const SuperElement& image(const std::string& name) const { return images_.at(source_->index_of(name)); }
  const std::vector<SuperElement>& images() const { return images_; }

  SuperElement apply_monomial(const Monomial& m) const {
    SuperElement out = SuperElement::one(target_);
    for (std::size_t s = 0; s < m.even.size(); ++s) {
      int k = m.even[s];
      if (k == 0) continue;
      const SuperElement& img = images_[source_->even_generator(static_cast<int>(s))];
      out = out * (k > 0 ? img.pow(k) : img.invert().pow(-k));
    }
    for (std::uint64_t b = m.odd; b; b &= b - 1) out = out * images_[source_->odd_generator(std::countr_zero(b))];
    return out;
  }

  SuperElement operator()(const SuperElement& e) const {
    if (!same_algebra(e.algebra(), source_)) throw Error("morphism applied to an element of another algebra");
    SuperElement out(target_);
    for (const auto& [m, c] : e.terms()) {
      SuperElement t = apply_monomial(m);
      t *= c;
      out += t;
    }
    return out;
  }

  // Problems that make this not a well-defined even algebra map (empty if fine).
  std::vector<std::string> check() const {
    std::vector<std::string> errs;
    for (std::size_t i = 0; i < images_.size(); ++i) {
      const Generator& g = source_->generator(static_cast<int>(i));
      const SuperElement& img = images_[i];
      if (!img.is_zero() && img.parity() != g.parity)
        errs.push_back("image of '" + g.name + "' has the wrong parity");
    }
    for (std::size_t s = 0; s < source_->even_count(); ++s) {
      int idx = source_->even_generator(static_cast<int>(s));
      const std::string& n = source_->generator(idx).name;
      if (int t = source_->truncation(static_cast<int>(s)); t != 0 && !images_[idx].pow(t).is_zero())
        errs.push_back("truncation of '" + n + "' is not respected");
      if (source_->is_unit(static_cast<int>(s)) && !images_[idx].is_invertible())
        errs.push_back("unit '" + n + "' is sent to a non-invertible element");
    }
    for (const Monomial& r : source_->relations())
      if (!apply_monomial(r).is_zero()) errs.push_back("a relation is not respected");
    return errs;
  }
  bool well_defined() const { return check().empty(); }

  friend bool operator==(const AlgebraMorphism& a, const AlgebraMorphism& b) {
    return same_algebra(a.source_, b.source_) && same_algebra(a.target_, b.target_) && a.images_ == b.images_;
  }

  std::string to_string() const {
    std::string s = "morphism {";
    for (std::size_t i = 0; i < images_.size(); ++i)
      s += " " + source_->generator(static_cast<int>(i)).name + " -> " + images_[i].to_string() + ";";
    return s + " }";
  }

 private:
  AlgebraPtr source_;
  AlgebraPtr target_;
  std::vector<SuperElement> images_;
};

// f o g: apply g first, then f (target of g = source of f).
inline AlgebraMorphism compose(const AlgebraMorphism& f, const AlgebraMorphism& g) {
  if (!same_algebra(g.target(), f.source())) throw Error("compose: target of g is not the source of f");
  std::map<std::string, SuperElement> im;
  for (const Generator& gen : g.source()->generators()) im.emplace(gen.name, f(g.image(gen.name)));
  return AlgebraMorphism(g.source(), f.target(), im);
}

}  // namespace superorbit
