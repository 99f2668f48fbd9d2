#pragma once
// The KKS form Omega_f(v, w) = <f, [v, w]> at a T-valued functional.

#include <string>
#include <vector>

#include "orbit.hpp"

namespace superorbit::kks {

// A vector of g with O(T) coefficients: sum_i v^i e_i.
using TVector = std::vector<SuperElement>;

// <f, [v, w]> = sum v^i (-1)^{|e_i||w^j|} w^j c^k_ij f_k
inline SuperElement kks_pairing(const LieSuperAlgebra& g, const Functional& f, const TVector& v, const TVector& w) {
  SuperElement out = SuperElement::zero(f.base);
  for (std::size_t i = 0; i < g.dim(); ++i) {
    if (v[i].is_zero()) continue;
    for (std::size_t j = 0; j < g.dim(); ++j) {
      if (w[j].is_zero()) continue;
      SuperElement pair = f.pair(g.bracket(static_cast<int>(i), static_cast<int>(j)));
      if (pair.is_zero()) continue;
      for (Parity p : {Parity::Even, Parity::Odd}) {
        SuperElement wp = w[j].part(p);
        if (wp.is_zero()) continue;
        SuperElement t = v[i] * wp * pair;
        if (koszul_negative(g.parity(static_cast<int>(i)), p)) out -= t;
        else out += t;
      }
    }
  }
  return out;
}

inline TVector basis_vector(const LieSuperAlgebra& g, const AlgebraPtr& base, std::size_t i) {
  TVector v(g.dim(), SuperElement::zero(base));
  v[i] = SuperElement::one(base);
  return v;
}

struct KKSMatrix {
  LieSuperAlgebra g;
  AlgebraPtr base;
  ElementMatrix entries;  // entries[i][j] = Omega_f(e_i, e_j)
};

inline KKSMatrix kks_matrix(const LieSuperAlgebra& g, const Functional& f) {
  auto errs = f.check(g);
  if (!errs.empty()) throw Error(errs.front());
  KKSMatrix m{g, f.base, {}};
  for (std::size_t i = 0; i < g.dim(); ++i) {
    ElementVector row;
    for (std::size_t j = 0; j < g.dim(); ++j)
      row.push_back(kks_pairing(g, f, basis_vector(g, f.base, i), basis_vector(g, f.base, j)));
    m.entries.push_back(std::move(row));
  }
  return m;
}

// Omega_ij = -(-1)^{|i||j|} Omega_ji
inline bool is_super_skew(const KKSMatrix& m) {
  for (std::size_t i = 0; i < m.g.dim(); ++i)
    for (std::size_t j = 0; j < m.g.dim(); ++j) {
      bool neg = koszul_negative(m.g.parity(static_cast<int>(i)), m.g.parity(static_cast<int>(j)));
      if (m.entries[i][j] != (neg ? m.entries[j][i] : -m.entries[j][i])) return false;
    }
  return true;
}

// Every nonzero entry has parity |e_i| + |e_j|.
inline bool is_even_form(const KKSMatrix& m) {
  for (std::size_t i = 0; i < m.g.dim(); ++i)
    for (std::size_t j = 0; j < m.g.dim(); ++j) {
      const SuperElement& e = m.entries[i][j];
      if (e.is_zero()) continue;
      if (e.parity() != m.g.parity(static_cast<int>(i)) + m.g.parity(static_cast<int>(j))) return false;
    }
  return true;
}

// Radical {w : Omega(e_i, w) = 0 for all i} as left O(T)-row vectors:
// Omega(e_i, w^j e_j) = (-1)^{|e_i||w^j|} w^j Omega_ij, and for homogeneous w the
// sign is (-1)^{|e_i||e_j|}; so w B = 0 with B_ji = (-1)^{|e_i||e_j|} Omega_ij.
inline ElementMatrix radical_system(const KKSMatrix& m) {
  std::size_t n = m.g.dim();
  ElementMatrix b(n, ElementVector(n, SuperElement::zero(m.base)));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      bool neg = koszul_negative(m.g.parity(static_cast<int>(i)), m.g.parity(static_cast<int>(j)));
      b[j][i] = neg ? -m.entries[i][j] : m.entries[i][j];
    }
  return b;
}

inline std::vector<ElementVector> kernel(const KKSMatrix& m) {
  return module_left_kernel(radical_system(m), m.g.dim(), m.base);
}

struct KernelCheck {
  bool ok = false;
  std::vector<ElementVector> kernel;
};

// Radical of Omega_f equals the O(T)-span of the isotropy vectors (constant rank only).
inline KernelCheck kernel_check(const KKSMatrix& m, const std::vector<ElementVector>& iso,
                                const orbit::RankReport& rank) {
  if (!rank.constant_rank) throw Error("kernel check needs a constant-rank functional");
  KernelCheck out;
  out.kernel = kernel(m);
  ElementMatrix b = radical_system(m);
  bool iso_in_kernel = true;
  for (const auto& v : iso)
    if (!is_zero_vector(row_times(v, b, m.base))) iso_in_kernel = false;
  out.ok = iso_in_kernel && module_contains_all(iso, out.kernel, m.base);
  return out;
}

// Isotropy vectors over O(T) from the fundamental field matrix: generators of its left kernel.
inline std::vector<ElementVector> isotropy_module(const orbit::FundamentalFieldMatrix& f) {
  return module_left_kernel(f.entries, f.g.dim(), f.base);
}

// Chevalley-Eilenberg differential of a 2-cochain omega (values in O(T)):
// d omega(u,v,w) = -omega([u,v],w) + (-1)^{|v||w|} omega([u,w],v) - (-1)^{|u|(|v|+|w|)} omega([v,w],u)
inline SuperElement ce_differential(const LieSuperAlgebra& g, const ElementMatrix& omega, int u, int v, int w,
                                    const AlgebraPtr& base) {
  auto eval = [&](const SparseVector& x, int y) {
    SuperElement s = SuperElement::zero(base);
    for (const auto& [k, c] : x) s += omega[k][y] * c;
    return s;
  };
  Parity pu = g.parity(u), pv = g.parity(v), pw = g.parity(w);
  SuperElement out = -eval(g.bracket(u, v), w);
  SuperElement t2 = eval(g.bracket(u, w), v);
  out += koszul_negative(pv, pw) ? -t2 : t2;
  SuperElement t3 = eval(g.bracket(v, w), u);
  out += koszul_negative(pu, pv + pw) ? t3 : -t3;
  return out;
}

struct ClosednessReport {
  bool ok = false;
  bool exact = false;  // Omega = -df for the 1-cochain f
  std::vector<std::string> failures;
};

inline ClosednessReport closedness_check(const LieSuperAlgebra& g, const Functional& f) {
  KKSMatrix m = kks_matrix(g, f);
  ClosednessReport rep;
  // df(v, w) = -f([v, w])
  rep.exact = true;
  for (std::size_t i = 0; i < g.dim(); ++i)
    for (std::size_t j = 0; j < g.dim(); ++j)
      if (-f.pair(g.bracket(static_cast<int>(i), static_cast<int>(j))) != -m.entries[i][j]) rep.exact = false;
  for (std::size_t u = 0; u < g.dim(); ++u)
    for (std::size_t v = 0; v < g.dim(); ++v)
      for (std::size_t w = 0; w < g.dim(); ++w) {
        SuperElement d = ce_differential(g, m.entries, static_cast<int>(u), static_cast<int>(v),
                                         static_cast<int>(w), f.base);
        if (!d.is_zero())
          rep.failures.push_back("(" + g.name(static_cast<int>(u)) + "," + g.name(static_cast<int>(v)) + "," +
                                 g.name(static_cast<int>(w)) + "): " + d.to_string());
      }
  rep.ok = rep.failures.empty() && rep.exact;
  return rep;
}

}  // namespace superorbit::kks
