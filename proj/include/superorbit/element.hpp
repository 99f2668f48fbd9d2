#pragma once
// Elements of a presented supercommutative algebra in normal form.

#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "presentation.hpp"
#include "scalar.hpp"

namespace superorbit {

class SuperElement {
 public:
  using Terms = std::map<Monomial, Scalar>;

  SuperElement() = default;
  explicit SuperElement(AlgebraPtr alg) : alg_(std::move(alg)) {}
  SuperElement(AlgebraPtr alg, const Scalar& c) : alg_(std::move(alg)) {
    if (!c.is_zero()) terms_.emplace(alg_->one(), c);
  }

  static SuperElement zero(const AlgebraPtr& a) { return SuperElement(a); }
  static SuperElement one(const AlgebraPtr& a) { return SuperElement(a, Scalar(1)); }
  static SuperElement constant(const AlgebraPtr& a, const Scalar& c) { return SuperElement(a, c); }
  static SuperElement gen(const AlgebraPtr& a, const std::string& name, int power = 1) {
    return monomial(a, a->generator_monomial(a->index_of(name), power));
  }
  static SuperElement monomial(const AlgebraPtr& a, const Monomial& m, const Scalar& c = Scalar(1)) {
    SuperElement e(a);
    if (!c.is_zero() && !a->vanishes(m)) e.terms_.emplace(m, c);
    return e;
  }

  const AlgebraPtr& algebra() const { return alg_; }
  const Terms& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  std::size_t term_count() const { return terms_.size(); }

  Scalar coefficient(const Monomial& m) const {
    auto it = terms_.find(m);
    return it == terms_.end() ? Scalar(0) : it->second;
  }
  Scalar constant_term() const { return alg_ ? coefficient(alg_->one()) : Scalar(0); }

  // Parity if homogeneous (zero counts as even).
  std::optional<Parity> parity() const {
    std::optional<Parity> p;
    for (const auto& [m, c] : terms_) {
      if (!p) p = m.parity();
      else if (*p != m.parity()) return std::nullopt;
    }
    return p ? p : std::optional<Parity>(Parity::Even);
  }
  bool is_homogeneous() const { return parity().has_value(); }
  bool is_even() const { return parity() == Parity::Even; }
  bool is_odd() const { return is_zero() || parity() == Parity::Odd; }

  SuperElement part(Parity p) const {
    SuperElement out(alg_);
    for (const auto& [m, c] : terms_)
      if (m.parity() == p) out.terms_.emplace(m, c);
    return out;
  }

  void add_term(const Monomial& m, const Scalar& c) {
    if (c.is_zero() || alg_->vanishes(m)) return;
    auto [it, inserted] = terms_.emplace(m, c);
    if (!inserted) {
      it->second += c;
      if (it->second.is_zero()) terms_.erase(it);
    }
  }

  SuperElement operator-() const {
    SuperElement out(*this);
    for (auto& [m, c] : out.terms_) c = -c;
    return out;
  }
  SuperElement& operator+=(const SuperElement& o) {
    adopt(o);
    for (const auto& [m, c] : o.terms_) add_term(m, c);
    return *this;
  }
  SuperElement& operator-=(const SuperElement& o) {
    adopt(o);
    for (const auto& [m, c] : o.terms_) add_term(m, -c);
    return *this;
  }
  SuperElement& operator*=(const Scalar& s) {
    if (s.is_zero()) {
      terms_.clear();
      return *this;
    }
    for (auto& [m, c] : terms_) c *= s;
    return *this;
  }

  friend SuperElement operator+(SuperElement a, const SuperElement& b) { return a += b; }
  friend SuperElement operator-(SuperElement a, const SuperElement& b) { return a -= b; }
  friend SuperElement operator*(SuperElement a, const Scalar& s) { return a *= s; }
  friend SuperElement operator*(const Scalar& s, SuperElement a) { return a *= s; }
  friend SuperElement operator*(const SuperElement& a, const SuperElement& b) { return multiply(a, b); }
  SuperElement& operator*=(const SuperElement& o) { return *this = multiply(*this, o); }

  friend bool operator==(const SuperElement& a, const SuperElement& b) {
    if (a.terms_ != b.terms_) return false;
    if (a.terms_.empty()) return true;
    return same_algebra(a.alg_, b.alg_);
  }
  friend bool operator!=(const SuperElement& a, const SuperElement& b) { return !(a == b); }

  // Product of two normal-form monomials: sign (true = negative) or nullopt if zero.
  static std::optional<std::pair<Monomial, bool>> mul_monomials(const AlgebraPresentation& alg, const Monomial& a,
                                                                 const Monomial& b) {
    if (a.odd & b.odd) return std::nullopt;
    int swaps = 0;
    std::uint64_t rest = b.odd;
    while (rest) {
      int j = std::countr_zero(rest);
      rest &= rest - 1;
      std::uint64_t above = j >= 63 ? 0 : (a.odd >> (j + 1));
      swaps += std::popcount(above);
    }
    Monomial m{a.even, a.odd | b.odd};
    for (std::size_t s = 0; s < m.even.size(); ++s) m.even[s] += b.even[s];
    if (alg.vanishes(m)) return std::nullopt;
    return std::make_pair(std::move(m), (swaps & 1) != 0);
  }

  static SuperElement multiply(const SuperElement& a, const SuperElement& b) {
    const AlgebraPtr& alg = a.alg_ ? a.alg_ : b.alg_;
    if (a.alg_ && b.alg_ && !same_algebra(a.alg_, b.alg_)) throw Error("product of elements of different algebras");
    SuperElement out(alg);
    if (a.is_zero() || b.is_zero()) return out;
    for (const auto& [ma, ca] : a.terms_) {
      for (const auto& [mb, cb] : b.terms_) {
        auto r = mul_monomials(*alg, ma, mb);
        if (!r) continue;
        Scalar c = ca * cb;
        if (r->second) c = -c;
        out.add_term(r->first, c);
      }
    }
    return out;
  }

  SuperElement pow(int k) const {
    if (k < 0) return invert().pow(-k);
    SuperElement out = one(alg_);
    for (int i = 0; i < k; ++i) out *= *this;
    return out;
  }

  // Left derivative: even generators differentiate as usual; an odd generator is first
  // moved to the front (collecting Koszul signs) and then removed.
  SuperElement derivative(const std::string& name) const {
    int idx = alg_->index_of(name);
    int s = alg_->slot(idx);
    SuperElement out(alg_);
    if (alg_->generator(idx).parity == Parity::Even) {
      for (const auto& [m, c] : terms_) {
        int k = m.even[s];
        if (k == 0) continue;
        Monomial d = m;
        d.even[s] -= 1;
        out.add_term(d, c * Scalar(static_cast<long>(k)));
      }
    } else {
      std::uint64_t b = std::uint64_t{1} << s;
      for (const auto& [m, c] : terms_) {
        if (!(m.odd & b)) continue;
        Monomial d = m;
        d.odd &= ~b;
        bool neg = std::popcount(m.odd & (b - 1)) & 1;
        out.add_term(d, neg ? -c : c);
      }
    }
    return out;
  }

  // Drop every nilpotent monomial.
  SuperElement body() const {
    SuperElement out(alg_);
    for (const auto& [m, c] : terms_)
      if (!alg_->nilpotent(m)) out.terms_.emplace(m, c);
    return out;
  }
  bool is_nilpotent() const {
    for (const auto& [m, c] : terms_)
      if (!alg_->nilpotent(m)) return false;
    return true;
  }

  SuperElement conjugate() const {
    SuperElement out(*this);
    for (auto& [m, c] : out.terms_) c = c.conj();
    return out;
  }

  // Finite exponential series of an even nilpotent element.
  SuperElement exp_nilpotent() const {
    if (!is_even()) throw Error("exp of a non-even element");
    if (!is_nilpotent()) throw Error("exp of a non-nilpotent element: " + to_string());
    SuperElement sum = one(alg_);
    SuperElement term = one(alg_);
    for (long k = 1; k < 100000; ++k) {
      term = term * (*this) * Scalar::frac(1, k);
      if (term.is_zero()) return sum;
      sum += term;
    }
    throw Error("exp series did not terminate");
  }

  // Inverse: the non-nilpotent part must be c * (Laurent monomial in units).
  SuperElement invert() const {
    SuperElement head(alg_);
    SuperElement tail(alg_);
    for (const auto& [m, c] : terms_) {
      if (alg_->nilpotent(m)) tail.terms_.emplace(m, c);
      else head.terms_.emplace(m, c);
    }
    if (head.terms_.size() != 1 || !alg_->only_units(head.terms_.begin()->first))
      throw Error("element is not invertible: " + to_string());
    const auto& [hm, hc] = *head.terms_.begin();
    Monomial inv_m = hm;
    for (int& e : inv_m.even) e = -e;
    SuperElement head_inv = monomial(alg_, inv_m, hc.inverse());
    SuperElement x = head_inv * tail;  // nilpotent
    SuperElement sum = one(alg_);
    SuperElement term = one(alg_);
    for (int k = 1; k < 100000; ++k) {
      term = -(term * x);
      if (term.is_zero()) return sum * head_inv;
      sum += term;
    }
    throw Error("inverse series did not terminate");
  }
  bool is_invertible() const {
    int heads = 0;
    for (const auto& [m, c] : terms_) {
      if (alg_->nilpotent(m)) continue;
      if (!alg_->only_units(m)) return false;
      ++heads;
    }
    return heads == 1;
  }

  // Berezin integral over the listed odd generators: a term is written as
  // c * xi^1 ... xi^n * rest (integration variables at the front, in the given order)
  // and mapped to berezin_sign(n) * c * rest.
  SuperElement berezin(const std::vector<std::string>& vars) const {
    std::vector<int> slots;
    std::uint64_t mask = 0;
    for (const std::string& v : vars) {
      int idx = alg_->index_of(v);
      if (alg_->generator(idx).parity != Parity::Odd) throw Error("Berezin variable '" + v + "' is not odd");
      int s = alg_->slot(idx);
      if (mask >> s & 1) throw Error("repeated Berezin variable '" + v + "'");
      mask |= std::uint64_t{1} << s;
      slots.push_back(s);
    }
    const bool sn_negative = berezin_sign(static_cast<int>(vars.size())) < 0;
    SuperElement out(alg_);
    for (const auto& [m, c] : terms_) {
      if ((m.odd & mask) != mask) continue;
      // sequence: vars in given order, then remaining odd slots ascending
      std::vector<int> seq = slots;
      std::uint64_t rest = m.odd & ~mask;
      for (std::uint64_t r = rest; r; r &= r - 1) seq.push_back(std::countr_zero(r));
      int inv = 0;
      for (std::size_t p = 0; p < seq.size(); ++p)
        for (std::size_t q = p + 1; q < seq.size(); ++q)
          if (seq[p] > seq[q]) ++inv;
      Monomial r = m;
      r.odd = rest;
      bool neg = ((inv & 1) != 0) != sn_negative;
      out.add_term(r, neg ? -c : c);
    }
    return out;
  }

  // Per-n sign of the Berezin integral, frozen after calibration at n = 1, 2 (see tests).
  static int berezin_sign(int /*n*/) { return 1; }

  // Value at a classical point: odd and truncated generators are sent to 0, the listed
  // even generators to the given scalars (units must get nonzero values).
  Scalar evaluate(const std::map<std::string, Scalar>& point) const {
    std::vector<std::optional<Scalar>> vals(alg_->even_count());
    for (std::size_t s = 0; s < alg_->even_count(); ++s) {
      const std::string& n = alg_->generator(alg_->even_generator(static_cast<int>(s))).name;
      auto it = point.find(n);
      if (it != point.end()) {
        if (alg_->truncation(static_cast<int>(s)) != 0 && !it->second.is_zero())
          throw Error("nilpotent generator '" + n + "' evaluated at a nonzero value");
        if (alg_->is_unit(static_cast<int>(s)) && it->second.is_zero())
          throw Error("unit '" + n + "' evaluated at 0");
        vals[s] = it->second;
      }
    }
    Scalar total(0);
    for (const auto& [m, c] : terms_) {
      if (alg_->nilpotent(m)) continue;
      Scalar v = c;
      for (std::size_t s = 0; s < m.even.size(); ++s) {
        int k = m.even[s];
        if (k == 0) continue;
        if (!vals[s]) {
          throw Error("classical point does not fix generator '" +
                      alg_->generator(alg_->even_generator(static_cast<int>(s))).name + "'");
        }
        Scalar base = k > 0 ? *vals[s] : vals[s]->inverse();
        for (int j = 0; j < (k > 0 ? k : -k); ++j) v *= base;
      }
      total += v;
    }
    return total;
  }

  // Monomial of one presentation rewritten in another that contains all its generators;
  // the flag is the Koszul sign from reordering the odd factors.
  static std::pair<Monomial, bool> translate(const AlgebraPresentation& from, const AlgebraPresentation& to,
                                             const Monomial& m) {
    Monomial r = to.one();
    for (std::size_t s = 0; s < m.even.size(); ++s) {
      if (m.even[s] == 0) continue;
      int idx = to.index_of(from.generator(from.even_generator(static_cast<int>(s))).name);
      if (to.generator(idx).parity != Parity::Even) throw Error("parity mismatch while embedding");
      r.even[to.slot(idx)] = m.even[s];
    }
    std::vector<int> target_slots;
    for (std::uint64_t b = m.odd; b; b &= b - 1) {
      int idx = to.index_of(from.generator(from.odd_generator(std::countr_zero(b))).name);
      if (to.generator(idx).parity != Parity::Odd) throw Error("parity mismatch while embedding");
      target_slots.push_back(to.slot(idx));
      r.odd |= std::uint64_t{1} << to.slot(idx);
    }
    int inv = 0;
    for (std::size_t p = 0; p < target_slots.size(); ++p)
      for (std::size_t q = p + 1; q < target_slots.size(); ++q)
        if (target_slots[p] > target_slots[q]) ++inv;
    return {r, (inv & 1) != 0};
  }

  std::string to_string() const;

 private:
  void adopt(const SuperElement& o) {
    if (!alg_) alg_ = o.alg_;
    else if (o.alg_ && !same_algebra(alg_, o.alg_)) throw Error("sum of elements of different algebras");
  }

  AlgebraPtr alg_;
  Terms terms_;
};

inline std::string monomial_to_string(const AlgebraPresentation& alg, const Monomial& m) {
  std::string s;
  auto append = [&](const std::string& f) {
    if (!s.empty()) s += "*";
    s += f;
  };
  for (std::size_t k = 0; k < m.even.size(); ++k) {
    int e = m.even[k];
    if (e == 0) continue;
    std::string n = alg.generator(alg.even_generator(static_cast<int>(k))).name;
    append(e == 1 ? n : n + "^" + std::to_string(e));
  }
  for (std::uint64_t b = m.odd; b; b &= b - 1)
    append(alg.generator(alg.odd_generator(std::countr_zero(b))).name);
  return s;
}

inline std::string SuperElement::to_string() const {
  if (terms_.empty()) return "0";
  std::string out;
  bool first = true;
  for (const auto& [m, c] : terms_) {
    std::string mono = monomial_to_string(*alg_, m);
    std::string coef;
    bool negative = false;
    if (c.is_real()) {
      negative = sgn(c.re()) < 0;
      Rational a = abs(c.re());
      coef = a == 1 && !mono.empty() ? "" : rational_to_string(a);
    } else if (sgn(c.re()) == 0) {
      negative = sgn(c.im()) < 0;
      Rational a = abs(c.im());
      coef = a == 1 ? "i" : rational_to_string(a) + "*i";
    } else {
      coef = c.to_string();
    }
    std::string t = coef;
    if (!mono.empty()) t = coef.empty() ? mono : coef + "*" + mono;
    if (first) out += negative ? "-" + t : t;
    else out += (negative ? " - " : " + ") + t;
    first = false;
  }
  return out;
}

inline std::ostream& operator<<(std::ostream& os, const SuperElement& e) { return os << e.to_string(); }

// Same element viewed in an algebra containing all of its generators.
inline SuperElement embed(const SuperElement& e, const AlgebraPtr& target) {
  SuperElement out(target);
  if (same_algebra(e.algebra(), target)) {
    for (const auto& [m, c] : e.terms()) out.add_term(m, c);
    return out;
  }
  for (const auto& [m, c] : e.terms()) {
    auto [r, neg] = SuperElement::translate(*e.algebra(), *target, m);
    out.add_term(r, neg ? -c : c);
  }
  return out;
}

}  // namespace superorbit
