#pragma once
// Linear algebra for row vectors with entries in a presented algebra O(T), acting from the left.
// First choice: elimination with invertible pivots (exact whenever the matrix has locally
// constant rank).  Fallback when O(T) is finite dimensional: plain Q[i]-linear algebra on
// its monomial basis.

#include <optional>
#include <vector>

#include "linalg.hpp"

namespace superorbit {

using ElementVector = std::vector<SuperElement>;
using ElementMatrix = std::vector<ElementVector>;

inline ElementMatrix element_identity(const AlgebraPtr& a, std::size_t n) {
  ElementMatrix m(n, ElementVector(n, SuperElement::zero(a)));
  for (std::size_t i = 0; i < n; ++i) m[i][i] = SuperElement::one(a);
  return m;
}

inline ElementVector row_times(const ElementVector& row, const ElementMatrix& m, const AlgebraPtr& a) {
  std::size_t cols = m.empty() ? 0 : m.front().size();
  ElementVector out(cols, SuperElement::zero(a));
  for (std::size_t k = 0; k < row.size(); ++k) {
    if (row[k].is_zero()) continue;
    for (std::size_t j = 0; j < cols; ++j) out[j] += row[k] * m[k][j];
  }
  return out;
}

inline bool is_zero_vector(const ElementVector& v) {
  for (const auto& e : v)
    if (!e.is_zero()) return false;
  return true;
}

// P * B * Q = diag(1,...,1,0,...,0) with exactly zero remainder, or failure.
struct UnitReduction {
  bool ok = false;
  std::size_t rank = 0;
  ElementMatrix P;  // rows x rows
  ElementMatrix Q;  // cols x cols
};

inline UnitReduction unit_reduce(const ElementMatrix& B, std::size_t cols, const AlgebraPtr& a) {
  std::size_t rows = B.size();
  ElementMatrix m = B;
  UnitReduction r;
  r.P = element_identity(a, rows);
  r.Q = element_identity(a, cols);
  std::size_t k = 0;
  while (k < rows && k < cols) {
    std::size_t pi = rows, pj = cols;
    for (std::size_t i = k; i < rows && pi == rows; ++i)
      for (std::size_t j = k; j < cols; ++j)
        if (m[i][j].is_invertible()) {
          pi = i;
          pj = j;
          break;
        }
    if (pi == rows) break;
    std::swap(m[pi], m[k]);
    std::swap(r.P[pi], r.P[k]);
    for (auto& row : m) std::swap(row[pj], row[k]);
    for (auto& row : r.Q) std::swap(row[pj], row[k]);
    SuperElement inv = m[k][k].invert();
    for (auto& x : m[k]) x = inv * x;
    for (auto& x : r.P[k]) x = inv * x;
    for (std::size_t i = 0; i < rows; ++i) {
      if (i == k || m[i][k].is_zero()) continue;
      SuperElement f = m[i][k];
      for (std::size_t j = 0; j < cols; ++j) m[i][j] -= f * m[k][j];
      for (std::size_t j = 0; j < rows; ++j) r.P[i][j] -= f * r.P[k][j];
    }
    for (std::size_t j = 0; j < cols; ++j) {
      if (j == k || m[k][j].is_zero()) continue;
      SuperElement f = m[k][j];
      for (std::size_t i = 0; i < rows; ++i) m[i][j] -= m[i][k] * f;
      for (std::size_t i = 0; i < cols; ++i) r.Q[i][j] -= r.Q[i][k] * f;
    }
    ++k;
  }
  r.rank = k;
  r.ok = true;
  for (std::size_t i = k; i < rows; ++i)
    for (std::size_t j = k; j < cols; ++j)
      if (!m[i][j].is_zero()) r.ok = false;
  return r;
}

// Q[i]-coordinates of row vectors over a finite-dimensional O(T).
struct FlatRows {
  MonomialBasis basis;
  std::size_t cols = 0;
  ScalarVector flatten(const ElementVector& v) const {
    ScalarVector out;
    out.reserve(cols * basis.size());
    for (const auto& e : v) {
      auto c = basis.coordinates(e);
      if (!c) throw Error("element outside the monomial basis");
      out.insert(out.end(), c->begin(), c->end());
    }
    return out;
  }
  ElementVector unflatten(const ScalarVector& v) const {
    ElementVector out;
    for (std::size_t j = 0; j < cols; ++j) {
      ScalarVector part(v.begin() + static_cast<long>(j * basis.size()),
                        v.begin() + static_cast<long>((j + 1) * basis.size()));
      out.push_back(basis.from_coordinates(part));
    }
    return out;
  }
};

// Q[i]-spanning set of the O(T)-span of the given rows (finite-dimensional O(T) only).
inline std::vector<ScalarVector> flat_module_span(const FlatRows& f, const std::vector<ElementVector>& rows) {
  std::vector<ScalarVector> out;
  for (const auto& r : rows)
    for (std::size_t m = 0; m < f.basis.size(); ++m) {
      SuperElement t = f.basis.element(m);
      ElementVector tr;
      for (const auto& e : r) tr.push_back(t * e);
      out.push_back(f.flatten(tr));
    }
  return out;
}

// Some c with c * W = target (c a row over O(T)), or nullopt if none exists.
// Throws if neither method can decide.
inline std::optional<ElementVector> module_solve_left(const ElementMatrix& W, const ElementVector& target,
                                                      const AlgebraPtr& a) {
  std::size_t cols = target.size();
  if (W.empty()) {
    if (is_zero_vector(target)) return ElementVector{};
    return std::nullopt;
  }
  UnitReduction u = unit_reduce(W, cols, a);
  if (u.ok) {
    // c W = t  <=>  (c P^-1) D = t Q
    ElementVector tq = row_times(target, u.Q, a);
    for (std::size_t j = u.rank; j < cols; ++j)
      if (!tq[j].is_zero()) return std::nullopt;
    ElementVector d(W.size(), SuperElement::zero(a));
    for (std::size_t j = 0; j < u.rank; ++j) d[j] = tq[j];
    ElementVector c = row_times(d, u.P, a);
    if (row_times(c, W, a) != target) throw Error("module_solve_left: verification failed");
    return c;
  }
  if (!a->finite_dimensional())
    throw Error("span test undecidable in this representation (base not finite and no unit pivots)");
  FlatRows f{MonomialBasis(a, 0), cols};
  std::vector<ScalarVector> span = flat_module_span(f, W);
  ScalarVector t = f.flatten(target);
  if (!in_span(span, t)) return std::nullopt;
  // recover coefficients: solve over the product basis
  ScalarMatrix sys = transpose(span, t.size());
  auto x = solve(sys, t, span.size());
  ElementVector c(W.size(), SuperElement::zero(a));
  for (std::size_t r = 0; r < W.size(); ++r)
    for (std::size_t m = 0; m < f.basis.size(); ++m) {
      const Scalar& s = (*x)[r * f.basis.size() + m];
      if (!s.is_zero()) c[r] += f.basis.element(m) * s;
    }
  return c;
}

// Generators of {w : w * B = 0}.
inline std::vector<ElementVector> module_left_kernel(const ElementMatrix& B, std::size_t cols, const AlgebraPtr& a) {
  UnitReduction u = unit_reduce(B, cols, a);
  if (u.ok) {
    std::vector<ElementVector> out;
    for (std::size_t i = u.rank; i < B.size(); ++i) out.push_back(u.P[i]);
    return out;
  }
  if (!a->finite_dimensional()) throw Error("kernel undecidable in this representation");
  if (B.empty()) return {};
  // Q[i]-linear: unknowns are the coefficients of each w_j on the basis of O(T)
  MonomialBasis basis(a, 0);
  FlatRows out_shape{basis, cols};
  std::size_t n = B.size() * basis.size();
  std::vector<ScalarVector> columns;  // image of each unknown
  for (std::size_t j = 0; j < B.size(); ++j)
    for (std::size_t m = 0; m < basis.size(); ++m) {
      ElementVector img;
      for (std::size_t l = 0; l < cols; ++l) img.push_back(basis.element(m) * B[j][l]);
      columns.push_back(out_shape.flatten(img));
    }
  ScalarMatrix sys = transpose(columns, cols * basis.size());
  FlatRows in_shape{basis, B.size()};
  std::vector<ElementVector> out;
  for (const auto& v : nullspace(sys, n)) out.push_back(in_shape.unflatten(v));
  return out;
}

// Is every row of `a_rows` in the O(T)-span of `b_rows`?
inline bool module_contains_all(const std::vector<ElementVector>& b_rows, const std::vector<ElementVector>& a_rows,
                                const AlgebraPtr& alg) {
  for (const auto& r : a_rows)
    if (!module_solve_left(b_rows, r, alg)) return false;
  return true;
}

}  // namespace superorbit
