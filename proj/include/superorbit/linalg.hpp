#pragma once
// Exact linear algebra over Q[i] and finite monomial bases of presented algebras.

#include <map>
#include <optional>
#include <vector>

#include "element.hpp"

namespace superorbit {

using ScalarVector = std::vector<Scalar>;
using ScalarMatrix = std::vector<ScalarVector>;

struct Echelon {
  ScalarMatrix rows;        // reduced row echelon form
  std::vector<int> pivots;  // pivot column of each nonzero row
};

inline Echelon rref(ScalarMatrix m, std::size_t cols) {
  Echelon e;
  std::size_t r = 0;
  for (std::size_t c = 0; c < cols && r < m.size(); ++c) {
    std::size_t p = r;
    while (p < m.size() && m[p][c].is_zero()) ++p;
    if (p == m.size()) continue;
    std::swap(m[p], m[r]);
    Scalar inv = m[r][c].inverse();
    for (auto& x : m[r]) x *= inv;
    for (std::size_t k = 0; k < m.size(); ++k) {
      if (k == r || m[k][c].is_zero()) continue;
      Scalar f = m[k][c];
      for (std::size_t j = c; j < cols; ++j)
        if (!m[r][j].is_zero()) m[k][j] -= f * m[r][j];
    }
    e.pivots.push_back(static_cast<int>(c));
    ++r;
  }
  m.resize(r);
  e.rows = std::move(m);
  return e;
}

inline std::size_t matrix_cols(const ScalarMatrix& m, std::size_t fallback = 0) {
  return m.empty() ? fallback : m.front().size();
}

inline std::size_t rank(const ScalarMatrix& m) { return rref(m, matrix_cols(m)).pivots.size(); }

// Basis of {x : m x = 0}.
inline std::vector<ScalarVector> nullspace(const ScalarMatrix& m, std::size_t cols) {
  Echelon e = rref(m, cols);
  std::vector<bool> is_pivot(cols, false);
  for (int p : e.pivots) is_pivot[p] = true;
  std::vector<ScalarVector> out;
  for (std::size_t f = 0; f < cols; ++f) {
    if (is_pivot[f]) continue;
    ScalarVector v(cols, Scalar(0));
    v[f] = Scalar(1);
    for (std::size_t r = 0; r < e.pivots.size(); ++r) v[e.pivots[r]] = -e.rows[r][f];
    out.push_back(std::move(v));
  }
  return out;
}

inline ScalarMatrix transpose(const ScalarMatrix& m, std::size_t cols) {
  ScalarMatrix t(cols, ScalarVector(m.size()));
  for (std::size_t i = 0; i < m.size(); ++i)
    for (std::size_t j = 0; j < cols; ++j) t[j][i] = m[i][j];
  return t;
}

// Basis of {y : y^T m = 0}, i.e. linear relations among the rows.
inline std::vector<ScalarVector> left_nullspace(const ScalarMatrix& m, std::size_t cols) {
  return nullspace(transpose(m, cols), m.size());
}

// Some x with m x = b, if any.
inline std::optional<ScalarVector> solve(const ScalarMatrix& m, const ScalarVector& b, std::size_t cols) {
  ScalarMatrix aug = m;
  for (std::size_t i = 0; i < aug.size(); ++i) aug[i].push_back(b[i]);
  Echelon e = rref(aug, cols + 1);
  ScalarVector x(cols, Scalar(0));
  for (std::size_t r = 0; r < e.pivots.size(); ++r) {
    if (e.pivots[r] == static_cast<int>(cols)) return std::nullopt;
    x[e.pivots[r]] = e.rows[r][cols];
  }
  return x;
}

// Is v in the row span of the given vectors?
inline bool in_span(const std::vector<ScalarVector>& rows, const ScalarVector& v) {
  if (rows.empty()) {
    for (const auto& x : v)
      if (!x.is_zero()) return false;
    return true;
  }
  return solve(transpose(rows, v.size()), v, rows.size()).has_value();
}

inline bool same_span(const std::vector<ScalarVector>& a, const std::vector<ScalarVector>& b) {
  for (const auto& v : a)
    if (!in_span(b, v)) return false;
  for (const auto& v : b)
    if (!in_span(a, v)) return false;
  return true;
}

// Finite list of normal-form monomials: truncated evens below their order, units with
// |exponent| <= cutoff, free evens of total degree <= cutoff, all odd subsets.
class MonomialBasis {
 public:
  MonomialBasis() = default;
  MonomialBasis(const AlgebraPtr& alg, int cutoff) : alg_(alg), budget_limit_(cutoff) {
    Monomial m = alg->one();
    fill(m, 0, cutoff);
  }
  explicit MonomialBasis(const AlgebraPtr& alg, std::vector<Monomial> monos) : alg_(alg) {
    for (auto& m : monos) push(m);
  }

  const AlgebraPtr& algebra() const { return alg_; }
  std::size_t size() const { return monos_.size(); }
  const Monomial& operator[](std::size_t i) const { return monos_[i]; }
  const std::vector<Monomial>& monomials() const { return monos_; }
  SuperElement element(std::size_t i) const { return SuperElement::monomial(alg_, monos_[i]); }

  std::optional<std::size_t> index(const Monomial& m) const {
    auto it = index_.find(m);
    if (it == index_.end()) return std::nullopt;
    return it->second;
  }
  // Coordinates of e; nullopt if e leaves the basis.
  std::optional<ScalarVector> coordinates(const SuperElement& e) const {
    ScalarVector v(monos_.size(), Scalar(0));
    for (const auto& [m, c] : e.terms()) {
      auto i = index(m);
      if (!i) return std::nullopt;
      v[*i] = c;
    }
    return v;
  }
  SuperElement from_coordinates(const ScalarVector& v) const {
    SuperElement e(alg_);
    for (std::size_t i = 0; i < v.size(); ++i)
      if (!v[i].is_zero()) e.add_term(monos_[i], v[i]);
    return e;
  }

 private:
  void push(const Monomial& m) {
    if (alg_->vanishes(m) || index_.count(m)) return;
    index_[m] = monos_.size();
    monos_.push_back(m);
  }
  void fill(Monomial& m, std::size_t slot, int budget) {
    if (slot == m.even.size()) {
      std::uint64_t n = alg_->odd_count();
      for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << n); ++mask) {
        Monomial x = m;
        x.odd = mask;
        push(x);
      }
      return;
    }
    int s = static_cast<int>(slot);
    int t = alg_->truncation(s);
    if (t != 0) {
      for (int k = 0; k < t; ++k) {
        m.even[slot] = k;
        fill(m, slot + 1, budget);
      }
    } else if (alg_->is_unit(s)) {
      for (int k = -budget_limit_; k <= budget_limit_; ++k) {
        m.even[slot] = k;
        fill(m, slot + 1, budget);
      }
    } else {
      for (int k = 0; k <= budget; ++k) {
        m.even[slot] = k;
        fill(m, slot + 1, budget - k);
      }
    }
    m.even[slot] = 0;
  }

  AlgebraPtr alg_;
  std::vector<Monomial> monos_;
  std::map<Monomial, std::size_t> index_;
  int budget_limit_ = 0;

};

// Coordinates of many elements over the union of their supports.
struct Coordinatized {
  std::vector<Monomial> support;
  ScalarMatrix rows;  // one row per input element
};

inline Coordinatized coordinatize(const std::vector<SuperElement>& elems) {
  std::map<Monomial, std::size_t> idx;
  for (const auto& e : elems)
    for (const auto& [m, c] : e.terms()) idx.emplace(m, 0);
  Coordinatized out;
  for (auto& [m, i] : idx) {
    i = out.support.size();
    out.support.push_back(m);
  }
  for (const auto& e : elems) {
    ScalarVector v(out.support.size(), Scalar(0));
    for (const auto& [m, c] : e.terms()) v[idx[m]] = c;
    out.rows.push_back(std::move(v));
  }
  return out;
}

// Is target a Q[i]-linear combination of the given elements?
inline bool element_in_span(const std::vector<SuperElement>& span, const SuperElement& target) {
  std::vector<SuperElement> all = span;
  all.push_back(target);
  Coordinatized c = coordinatize(all);
  ScalarVector t = c.rows.back();
  c.rows.pop_back();
  return in_span(c.rows, t);
}

// A maximal linearly independent subset (indices) of the given elements.
inline std::vector<std::size_t> independent_subset(const std::vector<SuperElement>& elems) {
  Coordinatized c = coordinatize(elems);
  std::vector<std::size_t> keep;
  ScalarMatrix acc;
  for (std::size_t i = 0; i < c.rows.size(); ++i) {
    acc.push_back(c.rows[i]);
    if (rank(acc) == acc.size()) keep.push_back(i);
    else acc.pop_back();
  }
  return keep;
}

}  // namespace superorbit
