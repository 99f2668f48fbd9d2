#pragma once
// Finite-dimensional Lie superalgebras given by structure constants, and even
// T-points of the dual (functionals with coefficients in O(T)).

#include <map>
#include <string>
#include <vector>

#include "linalg.hpp"

namespace superorbit {

using SparseVector = std::map<int, Scalar>;

class LieSuperAlgebra {
 public:
  LieSuperAlgebra() = default;
  LieSuperAlgebra(std::vector<std::string> names, std::vector<Parity> parities)
      : names_(std::move(names)), parities_(std::move(parities)) {
    if (names_.size() != parities_.size()) throw Error("Lie superalgebra: names and parities differ in length");
    c_.assign(names_.size(), std::vector<SparseVector>(names_.size()));
  }

  std::size_t dim() const { return names_.size(); }
  std::size_t even_dim() const { return count(Parity::Even); }
  std::size_t odd_dim() const { return count(Parity::Odd); }
  const std::vector<std::string>& names() const { return names_; }
  const std::string& name(int i) const { return names_.at(i); }
  Parity parity(int i) const { return parities_.at(i); }
  const std::vector<Parity>& parities() const { return parities_; }
  int index_of(const std::string& n) const {
    for (std::size_t i = 0; i < names_.size(); ++i)
      if (names_[i] == n) return static_cast<int>(i);
    throw Error("unknown basis element '" + n + "'");
  }

  // [e_i, e_j] = value; also sets [e_j, e_i] = -(-1)^{|i||j|} value.
  void set_bracket(int i, int j, const SparseVector& value) {
    set_raw(i, j, value);
    if (i != j) {
      SparseVector neg;
      bool sign = koszul_negative(parities_[i], parities_[j]);
      for (const auto& [k, c] : value) neg[k] = sign ? c : -c;
      set_raw(j, i, neg);
    }
  }
  // Single constant, no symmetrisation (used to build corrupted algebras).
  void set_constant(int i, int j, int k, const Scalar& c) {
    if (c.is_zero()) c_[i][j].erase(k);
    else c_[i][j][k] = c;
  }
  const SparseVector& bracket(int i, int j) const { return c_.at(i).at(j); }
  Scalar constant(int i, int j, int k) const {
    auto it = c_[i][j].find(k);
    return it == c_[i][j].end() ? Scalar(0) : it->second;
  }

  SparseVector bracket(int i, const SparseVector& v) const {
    SparseVector out;
    for (const auto& [j, cj] : v)
      for (const auto& [k, ck] : c_[i][j]) accumulate(out, k, cj * ck);
    return out;
  }

  // Problems with parity, super-antisymmetry or the super Jacobi identity.
  std::vector<std::string> validate() const {
    std::vector<std::string> errs;
    std::size_t n = dim();
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) {
        for (const auto& [k, c] : c_[i][j])
          if (parities_[k] != parities_[i] + parities_[j])
            errs.push_back("[" + names_[i] + "," + names_[j] + "] has a component of the wrong parity");
        bool sign = koszul_negative(parities_[i], parities_[j]);
        for (std::size_t k = 0; k < n; ++k) {
          Scalar a = constant(static_cast<int>(i), static_cast<int>(j), static_cast<int>(k));
          Scalar b = constant(static_cast<int>(j), static_cast<int>(i), static_cast<int>(k));
          if (a != (sign ? b : -b)) {
            errs.push_back("[" + names_[i] + "," + names_[j] + "] is not super-antisymmetric");
            break;
          }
        }
      }
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j)
        for (std::size_t k = 0; k < n; ++k)
          if (!jacobiator(static_cast<int>(i), static_cast<int>(j), static_cast<int>(k)).empty())
            errs.push_back("Jacobi fails on (" + names_[i] + "," + names_[j] + "," + names_[k] + ")");
    return errs;
  }
  bool is_valid() const { return validate().empty(); }

  // (-1)^{|i||k|}[i,[j,k]] + (-1)^{|j||i|}[j,[k,i]] + (-1)^{|k||j|}[k,[i,j]]
  SparseVector jacobiator(int i, int j, int k) const {
    SparseVector out;
    auto add = [&](int a, int b, int c, bool neg) {
      for (const auto& [l, v] : bracket(a, bracket(b, c))) accumulate(out, l, neg ? -v : v);
    };
    add(i, j, k, koszul_negative(parities_[i], parities_[k]));
    add(j, k, i, koszul_negative(parities_[j], parities_[i]));
    add(k, i, j, koszul_negative(parities_[k], parities_[j]));
    return out;
  }

  // ad(e_v) in the basis: column j holds [e_v, e_j].
  ScalarMatrix adjoint_matrix(int v) const {
    ScalarMatrix m(dim(), ScalarVector(dim(), Scalar(0)));
    for (std::size_t j = 0; j < dim(); ++j)
      for (const auto& [k, c] : c_[v][j]) m[k][j] = c;
    return m;
  }
  // ad*(e_v) in the dual basis: (ad*(v) mu)(u) = -(-1)^{|v||mu|} mu([v,u]).
  ScalarMatrix coadjoint_matrix(int v) const {
    ScalarMatrix m(dim(), ScalarVector(dim(), Scalar(0)));
    for (std::size_t i = 0; i < dim(); ++i)
      for (const auto& [j, c] : c_[v][i]) {
        bool sign = koszul_negative(parities_[v], parities_[j]);
        m[i][j] = sign ? c : -c;
      }
    return m;
  }

 private:
  static void accumulate(SparseVector& v, int k, const Scalar& c) {
    Scalar& x = v[k];
    x += c;
    if (x.is_zero()) v.erase(k);
  }
  void set_raw(int i, int j, const SparseVector& value) {
    c_.at(i).at(j).clear();
    for (const auto& [k, c] : value)
      if (!c.is_zero()) c_[i][j][k] = c;
  }
  std::size_t count(Parity p) const {
    std::size_t n = 0;
    for (Parity q : parities_) n += q == p;
    return n;
  }

  std::vector<std::string> names_;
  std::vector<Parity> parities_;
  std::vector<std::vector<SparseVector>> c_;
};

// Even T-point of g*: f_k = <f, e_k> in O(T), of parity |e_k|.
struct Functional {
  AlgebraPtr base;
  std::vector<SuperElement> coeffs;

  std::vector<std::string> check(const LieSuperAlgebra& g) const {
    std::vector<std::string> errs;
    if (coeffs.size() != g.dim()) errs.push_back("functional has the wrong number of coefficients");
    for (std::size_t k = 0; k < coeffs.size() && k < g.dim(); ++k)
      if (!coeffs[k].is_zero() && coeffs[k].parity() != g.parity(static_cast<int>(k)))
        errs.push_back("coefficient of " + g.name(static_cast<int>(k)) + " has the wrong parity");
    return errs;
  }
  // <f, sum c_k e_k> with scalar c_k
  SuperElement pair(const SparseVector& v) const {
    SuperElement out = SuperElement::zero(base);
    for (const auto& [k, c] : v) out += coeffs[k] * c;
    return out;
  }
};

}  // namespace superorbit
