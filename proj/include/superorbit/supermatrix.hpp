#pragma once
// Supermatrices with entries in a presented algebra; GL(m|n) points.

#include <string>
#include <vector>

#include "element.hpp"

namespace superorbit {

class SuperMatrix {
 public:
  SuperMatrix() = default;
  SuperMatrix(AlgebraPtr alg, std::vector<Parity> rows, std::vector<Parity> cols)
      : alg_(std::move(alg)), rows_(std::move(rows)), cols_(std::move(cols)) {
    entries_.assign(rows_.size(), std::vector<SuperElement>(cols_.size(), SuperElement::zero(alg_)));
  }

  static SuperMatrix identity(const AlgebraPtr& alg, const std::vector<Parity>& sig) {
    SuperMatrix m(alg, sig, sig);
    for (std::size_t i = 0; i < sig.size(); ++i) m.at(i, i) = SuperElement::one(alg);
    return m;
  }
  // Standard GL(m|n) signature: m even rows then n odd rows.
  static std::vector<Parity> signature(int m, int n) {
    std::vector<Parity> s(m, Parity::Even);
    s.insert(s.end(), n, Parity::Odd);
    return s;
  }

  const AlgebraPtr& algebra() const { return alg_; }
  std::size_t rows() const { return rows_.size(); }
  std::size_t cols() const { return cols_.size(); }
  const std::vector<Parity>& row_parities() const { return rows_; }
  const std::vector<Parity>& col_parities() const { return cols_; }
  SuperElement& at(std::size_t i, std::size_t j) { return entries_[i][j]; }
  const SuperElement& at(std::size_t i, std::size_t j) const { return entries_[i][j]; }

  // Even supermatrix: entry (i,j) has parity |i| + |j|.
  bool is_even() const {
    for (std::size_t i = 0; i < rows(); ++i)
      for (std::size_t j = 0; j < cols(); ++j) {
        const SuperElement& e = entries_[i][j];
        if (!e.is_zero() && e.parity() != (rows_[i] + cols_[j])) return false;
      }
    return true;
  }

  friend SuperMatrix operator*(const SuperMatrix& a, const SuperMatrix& b) {
    if (a.cols_ != b.rows_) throw Error("supermatrix product: incompatible parity formats");
    SuperMatrix c(a.alg_, a.rows_, b.cols_);
    for (std::size_t i = 0; i < a.rows(); ++i)
      for (std::size_t k = 0; k < a.cols(); ++k) {
        if (a.entries_[i][k].is_zero()) continue;
        for (std::size_t j = 0; j < b.cols(); ++j) c.entries_[i][j] += a.entries_[i][k] * b.entries_[k][j];
      }
    return c;
  }
  friend bool operator==(const SuperMatrix& a, const SuperMatrix& b) {
    return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.entries_ == b.entries_;
  }

  // Gauss-Jordan with invertible pivots; throws if the reduction is singular.
  SuperMatrix inverse() const {
    if (rows() != cols() || rows_ != cols_) throw Error("inverse of a non-square supermatrix");
    if (!is_even()) throw Error("inverse of a non-even supermatrix");
    std::size_t n = rows();
    std::vector<std::vector<SuperElement>> a = entries_;
    SuperMatrix inv = identity(alg_, rows_);
    auto& b = inv.entries_;
    for (std::size_t c = 0; c < n; ++c) {
      std::size_t p = c;
      while (p < n && !a[p][c].is_invertible()) ++p;
      if (p == n) throw Error("supermatrix is not invertible (singular reduction)");
      std::swap(a[p], a[c]);
      std::swap(b[p], b[c]);
      SuperElement piv = a[c][c].invert();
      for (std::size_t j = 0; j < n; ++j) {
        a[c][j] = piv * a[c][j];
        b[c][j] = piv * b[c][j];
      }
      for (std::size_t r = 0; r < n; ++r) {
        if (r == c || a[r][c].is_zero()) continue;
        SuperElement f = a[r][c];
        for (std::size_t j = 0; j < n; ++j) {
          a[r][j] -= f * a[c][j];
          b[r][j] -= f * b[c][j];
        }
      }
    }
    return inv;
  }

  std::string to_string() const {
    std::string s = "[";
    for (std::size_t i = 0; i < rows(); ++i) {
      s += i ? "; " : "";
      for (std::size_t j = 0; j < cols(); ++j) s += (j ? ", " : "") + entries_[i][j].to_string();
    }
    return s + "]";
  }

 private:
  AlgebraPtr alg_;
  std::vector<Parity> rows_;
  std::vector<Parity> cols_;
  std::vector<std::vector<SuperElement>> entries_;
};

}  // namespace superorbit
