#pragma once
// Finitely presented supercommutative algebras over Q[i]: generators with parity,
// monomial relations, nilpotent truncations of even generators and Laurent units.

#include <algorithm>
#include <bit>
#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace superorbit {

enum class Parity : std::uint8_t { Even = 0, Odd = 1 };

inline Parity operator+(Parity a, Parity b) {
  return static_cast<Parity>(static_cast<int>(a) ^ static_cast<int>(b));
}
inline int bit(Parity p) { return static_cast<int>(p); }
inline Parity parity_of(int k) { return (k & 1) ? Parity::Odd : Parity::Even; }
// (-1)^{|a||b|}
inline bool koszul_negative(Parity a, Parity b) { return a == Parity::Odd && b == Parity::Odd; }
inline const char* parity_name(Parity p) { return p == Parity::Even ? "even" : "odd"; }

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct Generator {
  std::string name;
  Parity parity = Parity::Even;
  friend bool operator==(const Generator&, const Generator&) = default;
};

// Even exponents are indexed by even slot, the odd part is a bitmask over odd slots.
struct Monomial {
  std::vector<int> even;
  std::uint64_t odd = 0;

  int odd_degree() const { return std::popcount(odd); }
  Parity parity() const { return parity_of(odd_degree()); }
  bool is_one() const {
    return odd == 0 && std::all_of(even.begin(), even.end(), [](int e) { return e == 0; });
  }
  friend bool operator==(const Monomial&, const Monomial&) = default;
  friend bool operator<(const Monomial& a, const Monomial& b) {
    if (a.even != b.even) return a.even < b.even;
    return a.odd < b.odd;
  }
};

class AlgebraPresentation;
using AlgebraPtr = std::shared_ptr<const AlgebraPresentation>;

class AlgebraPresentation {
 public:
  const std::vector<Generator>& generators() const { return gens_; }
  std::size_t size() const { return gens_.size(); }
  std::size_t even_count() const { return even_gens_.size(); }
  std::size_t odd_count() const { return odd_gens_.size(); }

  bool has(const std::string& name) const { return index_.count(name) != 0; }
  int index_of(const std::string& name) const {
    auto it = index_.find(name);
    if (it == index_.end()) throw Error("unknown generator '" + name + "'");
    return it->second;
  }
  const Generator& generator(int idx) const { return gens_.at(idx); }
  Parity parity(const std::string& name) const { return gens_[index_of(name)].parity; }
  int slot(int idx) const { return slot_.at(idx); }
  int even_generator(int slot) const { return even_gens_.at(slot); }
  int odd_generator(int slot) const { return odd_gens_.at(slot); }

  // 0 means no truncation; N means g^N = 0
  int truncation(int even_slot) const { return truncation_.at(even_slot); }
  bool is_unit(int even_slot) const { return unit_.at(even_slot); }
  bool is_base(const std::string& name) const { return base_.count(name) != 0; }
  const std::set<std::string>& base_generators() const { return base_; }
  const std::vector<Monomial>& relations() const { return relations_; }

  // Even generators that are neither truncated nor units: polynomial directions.
  bool is_free_even(int even_slot) const { return truncation_[even_slot] == 0 && !unit_[even_slot]; }

  // Every generator nilpotent (no free evens, no units): finite dimensional over Q[i].
  bool finite_dimensional() const {
    for (std::size_t s = 0; s < even_gens_.size(); ++s)
      if (truncation_[s] == 0) return false;
    return true;
  }

  Monomial one() const { return Monomial{std::vector<int>(even_gens_.size(), 0), 0}; }

  Monomial generator_monomial(int idx, int power = 1) const {
    Monomial m = one();
    const Generator& g = gens_.at(idx);
    if (g.parity == Parity::Odd) {
      if (power != 1) throw Error("odd generator '" + g.name + "' raised to power " + std::to_string(power));
      m.odd = std::uint64_t{1} << slot_[idx];
    } else {
      if (power < 0 && !unit_[slot_[idx]])
        throw Error("negative power of non-unit generator '" + g.name + "'");
      m.even[slot_[idx]] = power;
    }
    return m;
  }

  // Is the (formal) monomial zero in the algebra?
  bool vanishes(const Monomial& m) const {
    for (std::size_t s = 0; s < m.even.size(); ++s) {
      if (truncation_[s] != 0 && m.even[s] >= truncation_[s]) return true;
    }
    for (const Monomial& r : relations_)
      if (divides(r, m)) return true;
    return false;
  }

  // Some power of m vanishes.
  bool nilpotent(const Monomial& m) const {
    if (m.odd != 0) return true;
    for (std::size_t s = 0; s < m.even.size(); ++s)
      if (m.even[s] > 0 && truncation_[s] != 0) return true;
    for (const Monomial& r : relations_) {
      if (r.odd != 0) continue;
      bool inside = true;
      for (std::size_t s = 0; s < r.even.size(); ++s)
        if (r.even[s] > 0 && m.even[s] <= 0) inside = false;
      if (inside) return true;
    }
    return false;
  }

  bool only_units(const Monomial& m) const {
    if (m.odd != 0) return false;
    for (std::size_t s = 0; s < m.even.size(); ++s)
      if (m.even[s] != 0 && !unit_[s]) return false;
    return true;
  }

  friend bool operator==(const AlgebraPresentation& a, const AlgebraPresentation& b) {
    return a.gens_ == b.gens_ && a.truncation_ == b.truncation_ && a.unit_ == b.unit_ &&
           a.relations_ == b.relations_ && a.base_ == b.base_;
  }

 private:
  friend class AlgebraBuilder;

  bool divides(const Monomial& r, const Monomial& m) const {
    if ((r.odd & ~m.odd) != 0) return false;
    for (std::size_t s = 0; s < r.even.size(); ++s) {
      if (unit_[s]) continue;
      if (m.even[s] < r.even[s]) return false;
    }
    return true;
  }

  std::vector<Generator> gens_;
  std::map<std::string, int> index_;
  std::vector<int> slot_;
  std::vector<int> even_gens_;
  std::vector<int> odd_gens_;
  std::vector<int> truncation_;
  std::vector<bool> unit_;
  std::vector<Monomial> relations_;
  std::set<std::string> base_;
};

inline bool same_algebra(const AlgebraPtr& a, const AlgebraPtr& b) {
  return a == b || (a && b && *a == *b);
}

class AlgebraBuilder {
 public:
  AlgebraBuilder() = default;

  // Start from an existing presentation (to extend it).
  static AlgebraBuilder from(const AlgebraPresentation& a) {
    AlgebraBuilder b;
    for (const Generator& g : a.generators()) b.add(g.name, g.parity);
    for (std::size_t s = 0; s < a.even_count(); ++s) {
      const std::string& n = a.generator(a.even_generator(static_cast<int>(s))).name;
      if (a.truncation(static_cast<int>(s)) != 0) b.truncate(n, a.truncation(static_cast<int>(s)));
      if (a.is_unit(static_cast<int>(s))) b.unit(n);
    }
    for (const Monomial& r : a.relations()) b.relations_.push_back(b.named(a, r));
    for (const std::string& n : a.base_generators()) b.base(n);
    return b;
  }

  AlgebraBuilder& add(const std::string& name, Parity p) {
    if (name.empty()) throw Error("empty generator name");
    for (auto& g : gens_) {
      if (g.name == name) {
        if (g.parity != p) throw Error("generator '" + name + "' declared with two parities");
        return *this;
      }
    }
    gens_.push_back({name, p});
    return *this;
  }
  AlgebraBuilder& even(const std::string& name) { return add(name, Parity::Even); }
  AlgebraBuilder& odd(const std::string& name) { return add(name, Parity::Odd); }

  AlgebraBuilder& truncate(const std::string& name, int n) {
    if (n < 1) throw Error("truncation order must be positive");
    auto it = truncations_.find(name);
    truncations_[name] = it == truncations_.end() ? n : std::min(it->second, n);
    return *this;
  }
  AlgebraBuilder& unit(const std::string& name) {
    units_.insert(name);
    return *this;
  }
  AlgebraBuilder& base(const std::string& name) {
    base_.insert(name);
    return *this;
  }
  // Monomial relation given as (generator, power) factors.
  AlgebraBuilder& relation(std::vector<std::pair<std::string, int>> factors) {
    relations_.push_back(std::move(factors));
    return *this;
  }

  AlgebraPtr build() const {
    auto a = std::make_shared<AlgebraPresentation>();
    a->gens_ = gens_;
    for (std::size_t i = 0; i < gens_.size(); ++i) {
      a->index_[gens_[i].name] = static_cast<int>(i);
      if (gens_[i].parity == Parity::Even) {
        a->slot_.push_back(static_cast<int>(a->even_gens_.size()));
        a->even_gens_.push_back(static_cast<int>(i));
      } else {
        a->slot_.push_back(static_cast<int>(a->odd_gens_.size()));
        a->odd_gens_.push_back(static_cast<int>(i));
      }
    }
    if (a->odd_gens_.size() > 63) throw Error("at most 63 odd generators are supported");
    a->truncation_.assign(a->even_gens_.size(), 0);
    a->unit_.assign(a->even_gens_.size(), false);
    for (const auto& [n, k] : truncations_) {
      int idx = a->index_of(n);
      if (gens_[idx].parity != Parity::Even) throw Error("truncation of odd generator '" + n + "'");
      a->truncation_[a->slot_[idx]] = k;
    }
    for (const std::string& n : units_) {
      int idx = a->index_of(n);
      if (gens_[idx].parity != Parity::Even) throw Error("odd generator '" + n + "' cannot be a unit");
      if (a->truncation_[a->slot_[idx]] != 0) throw Error("generator '" + n + "' is both truncated and a unit");
      a->unit_[a->slot_[idx]] = true;
    }
    for (const std::string& n : base_) a->index_of(n);
    a->base_ = base_;

    std::vector<Monomial> rels;
    for (const auto& factors : relations_) {
      Monomial m = a->one();
      for (const auto& [n, k] : factors) {
        int idx = a->index_of(n);
        if (k < 1) throw Error("relation exponents must be positive");
        if (gens_[idx].parity == Parity::Odd) {
          if (k > 1) continue;  // already zero
          m.odd |= std::uint64_t{1} << a->slot_[idx];
        } else if (!a->unit_[a->slot_[idx]]) {
          m.even[a->slot_[idx]] += k;
        }
      }
      if (m.is_one()) throw Error("relation makes the algebra zero");
      // single even generator power: record as truncation
      int support = 0, last = -1;
      for (std::size_t s = 0; s < m.even.size(); ++s)
        if (m.even[s] > 0) ++support, last = static_cast<int>(s);
      if (m.odd == 0 && support == 1) {
        int& t = a->truncation_[last];
        t = t == 0 ? m.even[last] : std::min(t, m.even[last]);
        continue;
      }
      rels.push_back(m);
    }
    std::sort(rels.begin(), rels.end());
    rels.erase(std::unique(rels.begin(), rels.end()), rels.end());
    a->relations_ = std::move(rels);
    return a;
  }

 private:
  std::vector<std::pair<std::string, int>> named(const AlgebraPresentation& a, const Monomial& m) const {
    std::vector<std::pair<std::string, int>> out;
    for (std::size_t s = 0; s < m.even.size(); ++s)
      if (m.even[s] > 0) out.emplace_back(a.generator(a.even_generator(static_cast<int>(s))).name, m.even[s]);
    for (std::size_t s = 0; s < a.odd_count(); ++s)
      if (m.odd >> s & 1) out.emplace_back(a.generator(a.odd_generator(static_cast<int>(s))).name, 1);
    return out;
  }

  std::vector<Generator> gens_;
  std::map<std::string, int> truncations_;
  std::set<std::string> units_;
  std::set<std::string> base_;
  std::vector<std::vector<std::pair<std::string, int>>> relations_;
};

// Coproduct of two presentations; generators with the same name are identified.
inline AlgebraPtr tensor(const AlgebraPresentation& a, const AlgebraPresentation& b) {
  AlgebraBuilder out = AlgebraBuilder::from(a);
  for (const Generator& g : b.generators()) {
    if (a.has(g.name) && a.parity(g.name) != g.parity)
      throw Error("generator '" + g.name + "' has different parities in tensor factors");
    out.add(g.name, g.parity);
  }
  for (std::size_t s = 0; s < b.even_count(); ++s) {
    const std::string& n = b.generator(b.even_generator(static_cast<int>(s))).name;
    if (b.truncation(static_cast<int>(s)) != 0) out.truncate(n, b.truncation(static_cast<int>(s)));
    if (b.is_unit(static_cast<int>(s))) out.unit(n);
  }
  for (const Monomial& r : b.relations()) {
    std::vector<std::pair<std::string, int>> f;
    for (std::size_t s = 0; s < r.even.size(); ++s)
      if (r.even[s] > 0) f.emplace_back(b.generator(b.even_generator(static_cast<int>(s))).name, r.even[s]);
    for (std::size_t s = 0; s < b.odd_count(); ++s)
      if (r.odd >> s & 1) f.emplace_back(b.generator(b.odd_generator(static_cast<int>(s))).name, 1);
    out.relation(f);
  }
  for (const std::string& n : b.base_generators()) out.base(n);
  return out.build();
}

// The sub-presentation on the kept generators; relations touching dropped ones are discarded.
inline AlgebraPtr restrict_presentation(const AlgebraPresentation& a, const std::set<std::string>& keep) {
  AlgebraBuilder b;
  for (const Generator& g : a.generators())
    if (keep.count(g.name)) b.add(g.name, g.parity);
  for (std::size_t s = 0; s < a.even_count(); ++s) {
    const std::string& n = a.generator(a.even_generator(static_cast<int>(s))).name;
    if (!keep.count(n)) continue;
    if (a.truncation(static_cast<int>(s)) != 0) b.truncate(n, a.truncation(static_cast<int>(s)));
    if (a.is_unit(static_cast<int>(s))) b.unit(n);
  }
  for (const Monomial& r : a.relations()) {
    std::vector<std::pair<std::string, int>> f;
    bool inside = true;
    for (std::size_t s = 0; s < r.even.size(); ++s)
      if (r.even[s] > 0) {
        const std::string& n = a.generator(a.even_generator(static_cast<int>(s))).name;
        inside = inside && keep.count(n);
        f.emplace_back(n, r.even[s]);
      }
    for (std::size_t s = 0; s < a.odd_count(); ++s)
      if (r.odd >> s & 1) {
        const std::string& n = a.generator(a.odd_generator(static_cast<int>(s))).name;
        inside = inside && keep.count(n);
        f.emplace_back(n, 1);
      }
    if (inside) b.relation(f);
  }
  for (const std::string& n : a.base_generators())
    if (keep.count(n)) b.base(n);
  return b.build();
}

// A name not used by the algebra, built from a preferred stem.
inline std::string fresh_name(const AlgebraPresentation& a, const std::string& stem) {
  std::string n = stem;
  while (a.has(n)) n += "_";
  return n;
}

}  // namespace superorbit
