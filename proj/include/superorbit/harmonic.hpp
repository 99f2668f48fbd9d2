#pragma once
// Representations over T: the left-regular action, the A^{0|n} character family with
// its Fourier and Plancherel identities, and polarized modules for the Heisenberg rows.

#include <functional>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "heisenberg.hpp"
#include "module_linalg.hpp"
#include "orbit.hpp"
#include "twisted.hpp"

namespace superorbit::harmonic {

// ---- helpers on twisted elements ---------------------------------------------

inline TwistedElement embed_twisted(const TwistedElement& t, const AlgebraPtr& target) {
  return TwistedElement(embed(t.body(), target), embed(t.exponent(), target));
}

// Apply a substitution to body and exponent.
inline TwistedElement pull(const AlgebraMorphism& phi, const TwistedElement& t) {
  return TwistedElement(phi(embed(t.body(), phi.source())), phi(embed(t.exponent(), phi.source())));
}

// v(psi) = sum_g v(g) d psi / d g for a vector field v on one space.
inline TwistedElement apply_field(const Derivation& v, const TwistedElement& psi) {
  TwistedElement out(SuperElement::zero(psi.algebra()), psi.exponent());
  for (const Generator& g : v.source()->generators()) {
    const SuperElement& vg = v.image(g.name);
    if (vg.is_zero()) continue;
    TwistedElement d = psi.derivative(g.name);
    if (d.is_zero()) continue;
    out = out + vg * d;
  }
  return out;
}

// e = sum_m t_m * m with t_m in O(T) (written on the left) and m a monomial in the
// remaining generators.  Keys are ambient monomials with all T-exponents zero.
inline std::map<Monomial, SuperElement> split_coefficients(const SuperElement& e, const AlgebraPtr& base) {
  const AlgebraPresentation& amb = *e.algebra();
  std::uint64_t base_odd = 0;
  std::vector<bool> base_even(amb.even_count(), false);
  for (const Generator& g : base->generators()) {
    int idx = amb.index_of(g.name);
    if (g.parity == Parity::Odd) base_odd |= std::uint64_t{1} << amb.slot(idx);
    else base_even[amb.slot(idx)] = true;
  }
  std::map<Monomial, SuperElement> out;
  for (const auto& [m, c] : e.terms()) {
    Monomial tm = amb.one(), gm = amb.one();
    for (std::size_t s = 0; s < m.even.size(); ++s) (base_even[s] ? tm : gm).even[s] = m.even[s];
    tm.odd = m.odd & base_odd;
    gm.odd = m.odd & ~base_odd;
    auto prod = SuperElement::mul_monomials(amb, tm, gm);
    bool neg = prod && prod->second;
    auto [bt, neg2] = SuperElement::translate(amb, *base, tm);
    auto it = out.try_emplace(gm, SuperElement::zero(base)).first;
    it->second.add_term(bt, (neg != neg2) ? -c : c);
  }
  for (auto it = out.begin(); it != out.end();)
    it = it->second.is_zero() ? out.erase(it) : std::next(it);
  return out;
}

// Rows of O(T)-coefficients over a shared column set of monomials.
struct SplitRows {
  std::vector<Monomial> columns;
  ElementMatrix rows;
};

inline SplitRows split_rows(const std::vector<SuperElement>& elems, const AlgebraPtr& base) {
  std::vector<std::map<Monomial, SuperElement>> parts;
  std::map<Monomial, std::size_t> idx;
  for (const auto& e : elems) {
    parts.push_back(split_coefficients(e, base));
    for (const auto& [m, t] : parts.back()) idx.emplace(m, 0);
  }
  SplitRows out;
  for (auto& [m, i] : idx) {
    i = out.columns.size();
    out.columns.push_back(m);
  }
  for (const auto& p : parts) {
    ElementVector row(out.columns.size(), SuperElement::zero(base));
    for (const auto& [m, t] : p) row[idx[m]] = t;
    out.rows.push_back(std::move(row));
  }
  return out;
}

// Row echelon form over O(T) using invertible pivots only, with pivots scaled to 1.
inline ElementMatrix module_echelon(ElementMatrix rows, std::size_t cols, const AlgebraPtr& base) {
  std::size_t r = 0;
  for (std::size_t c = 0; c < cols && r < rows.size(); ++c) {
    std::size_t p = r;
    while (p < rows.size() && !rows[p][c].is_invertible()) ++p;
    if (p == rows.size()) continue;
    std::swap(rows[p], rows[r]);
    SuperElement inv = rows[r][c].invert();
    for (auto& x : rows[r]) x = inv * x;
    for (std::size_t k = 0; k < rows.size(); ++k) {
      if (k == r || rows[k][c].is_zero()) continue;
      SuperElement f = rows[k][c];
      for (std::size_t j = 0; j < cols; ++j) rows[k][j] -= f * rows[r][j];
    }
    ++r;
  }
  ElementMatrix out;
  for (auto& row : rows)
    if (!is_zero_vector(row)) out.push_back(std::move(row));
  (void)base;
  return out;
}

inline Scalar pow_minus_one(long k) { return sign_scalar((k & 1) != 0); }

// ---- A^{0|n} ------------------------------------------------------------------

// Functions on G = A^{0|n} (xi), a second copy (eta) for convolutions and group
// parameters, and the T-coordinates theta of the functional.
struct OddFourier {
  int n = 0;
  AlgebraPtr alg;
  AlgebraPtr base;  // Lambda[theta]
  std::vector<std::string> theta, xi, eta;
};

inline OddFourier odd_fourier(int n) {
  if (n < 1 || n > 12) throw Error("n must be between 1 and 12");
  OddFourier f;
  f.n = n;
  f.theta = heisenberg::odd_names("theta", n);
  f.xi = heisenberg::odd_names("xi", n);
  f.eta = heisenberg::odd_names("eta", n);
  AlgebraBuilder b, t;
  for (const auto& s : f.theta) b.odd(s), t.odd(s);
  for (const auto& s : f.xi) b.odd(s);
  for (const auto& s : f.eta) b.odd(s);
  f.alg = b.build();
  f.base = t.build();
  return f;
}

inline SuperElement gens_sum(const OddFourier& F, const std::vector<std::string>& left,
                             const std::vector<SuperElement>& right) {
  SuperElement s = SuperElement::zero(F.alg);
  for (int j = 0; j < F.n; ++j) s += SuperElement::gen(F.alg, left[j]) * embed(right[j], F.alg);
  return s;
}

inline std::vector<SuperElement> gens(const OddFourier& F, const std::vector<std::string>& names) {
  std::vector<SuperElement> v;
  for (const auto& s : names) v.push_back(SuperElement::gen(F.alg, s));
  return v;
}

// e^{i <theta, g>} = exp(i sum theta_j g^j)
inline SuperElement character_multiplier(const OddFourier& F, const std::vector<SuperElement>& g) {
  return (gens_sum(F, F.theta, g) * Scalar::i()).exp_nilpotent();
}

// pi(f) = int D(xi) f(xi) e^{i <theta, xi>}
inline SuperElement pi_of_function(const OddFourier& F, const SuperElement& f) {
  return (embed(f, F.alg) * character_multiplier(F, gens(F, F.xi))).berezin(F.xi);
}

// (-1)^{n(n+1)/2} i^n
inline Scalar inversion_constant(int n) { return pow_minus_one(static_cast<long>(n) * (n + 1) / 2) * Scalar::i_pow(n); }

inline AlgebraMorphism substitute_xi(const OddFourier& F, const std::vector<SuperElement>& images) {
  std::map<std::string, SuperElement> im;
  for (int j = 0; j < F.n; ++j) im.emplace(F.xi[j], images[j]);
  return AlgebraMorphism::substitution(F.alg, F.alg, im);
}

struct Identity {
  SuperElement lhs, rhs;
  SuperElement discrepancy() const { return lhs - rhs; }
  bool holds() const { return lhs == rhs; }
};

// int D(theta) str pi(f)  vs  (-1)^{n(n+1)/2} i^n f_0(0)
inline Identity fourier_inversion(const OddFourier& F, const SuperElement& f) {
  Identity id;
  id.lhs = pi_of_function(F, f).berezin(F.theta);
  std::vector<SuperElement> zeros(F.n, SuperElement::zero(F.alg));
  id.rhs = substitute_xi(F, zeros)(embed(f, F.alg)) * inversion_constant(F.n);
  return id;
}

// (f * g)(xi) = int D(eta) f(xi - eta) g(eta)
inline SuperElement convolution(const OddFourier& F, const SuperElement& f, const SuperElement& g) {
  std::vector<SuperElement> shifted, etas = gens(F, F.eta);
  for (int j = 0; j < F.n; ++j) shifted.push_back(SuperElement::gen(F.alg, F.xi[j]) - etas[j]);
  SuperElement fs = substitute_xi(F, shifted)(embed(f, F.alg));
  SuperElement ge = substitute_xi(F, etas)(embed(g, F.alg));
  return (fs * ge).berezin(F.eta);
}

// f* = i#(conj f), i the group inversion xi -> -xi
inline SuperElement adjoint_star(const OddFourier& F, const SuperElement& f) {
  std::vector<SuperElement> neg;
  for (const auto& x : gens(F, F.xi)) neg.push_back(-x);
  return substitute_xi(F, neg)(embed(f, F.alg).conjugate());
}

// Dirac delta xi^1 ... xi^n
inline SuperElement delta(const OddFourier& F) {
  SuperElement d = SuperElement::one(F.alg);
  for (const auto& x : gens(F, F.xi)) d *= x;
  return d;
}

// int D(theta) str(pi(f)^dagger pi(g)) = int D(theta) pi(f* * g)
//   vs (-1)^{n(n+1)/2} i^n int D(xi) conj(f) g
inline Identity plancherel(const OddFourier& F, const SuperElement& f, const SuperElement& g) {
  Identity id;
  id.lhs = pi_of_function(F, convolution(F, adjoint_star(F, f), g)).berezin(F.theta);
  id.rhs = (embed(f, F.alg).conjugate() * embed(g, F.alg)).berezin(F.xi) * inversion_constant(F.n);
  return id;
}

// lambda(g) psi = psi(g^{-1} xi) = psi(xi - g)
inline SuperElement regular_action(const OddFourier& F, const std::vector<SuperElement>& g, const SuperElement& psi) {
  std::vector<SuperElement> im;
  for (int j = 0; j < F.n; ++j) im.push_back(SuperElement::gen(F.alg, F.xi[j]) - embed(g[j], F.alg));
  return substitute_xi(F, im)(embed(psi, F.alg));
}

// psi_0 = e^{-i <theta, xi>}
inline SuperElement special_vector(const OddFourier& F) {
  return (gens_sum(F, F.theta, gens(F, F.xi)) * -Scalar::i()).exp_nilpotent();
}

// ---- polarized modules ----------------------------------------------------------

struct PolarizedModule {
  std::string family;  // row name or "A0|n"
  AlgebraPtr ambient;  // O(T) tensor O(G)
  AlgebraPtr base;     // O(T)
  SuperElement gamma;
  SuperElement exponent;
  std::vector<TwistedElement> basis;
  std::vector<Parity> parities;
  orbit::SuperDim rank;
  bool free = false;
  bool exploratory = false;
};

// Coefficients of psi over the module basis (left O(T)-coefficients), if it lies in the span.
inline std::optional<ElementVector> module_coordinates(const PolarizedModule& M, const TwistedElement& psi) {
  TwistedElement p = embed_twisted(psi, M.ambient);
  if (p.is_zero()) return ElementVector(M.basis.size(), SuperElement::zero(M.base));
  for (const auto& b : M.basis)
    if (b.exponent() != p.exponent()) return std::nullopt;
  std::vector<SuperElement> all;
  for (const auto& b : M.basis) all.push_back(b.body());
  all.push_back(p.body());
  SplitRows s = split_rows(all, M.base);
  ElementVector target = s.rows.back();
  s.rows.pop_back();
  return module_solve_left(s.rows, target, M.base);
}

struct EquationSystem {
  AlgebraPtr ambient;
  AlgebraPtr base;
  std::set<std::string> group;        // generators of G inside the ambient
  std::vector<Derivation> fields;     // R_v for v in the polarization
  std::vector<SuperElement> values;   // <f, v>
  SuperElement exponent;              // E in psi = phi e^E
  int cutoff = 3;
};

// sum_v  body of (R_v(phi e^E) + i <f,v> phi e^E), one block per v.
inline std::vector<SuperElement> equation_images(const EquationSystem& S, const SuperElement& phi) {
  std::vector<SuperElement> out;
  TwistedElement psi(phi, S.exponent);
  for (std::size_t k = 0; k < S.fields.size(); ++k) {
    TwistedElement r = apply_field(S.fields[k], psi) + TwistedElement(S.values[k] * Scalar::i() * psi.body(), psi.exponent());
    out.push_back(r.body());
  }
  return out;
}

inline std::vector<SuperElement> group_candidates(const EquationSystem& S, Parity p) {
  AlgebraPtr G = restrict_presentation(*S.ambient, S.group);
  MonomialBasis mb(G, S.cutoff);
  std::vector<SuperElement> out;
  for (std::size_t i = 0; i < mb.size(); ++i) {
    if (mb[i].parity() != p) continue;
    out.push_back(embed(mb.element(i), S.ambient));
  }
  return out;
}

inline PolarizedModule solve_polarized(const EquationSystem& S) {
  PolarizedModule M;
  M.ambient = S.ambient;
  M.base = S.base;
  TwistedElement probe(SuperElement::one(S.ambient), S.exponent);
  M.exponent = probe.exponent();
  const std::size_t blocks = S.fields.size();
  std::size_t total_qdim = 0;
  long qdim_kernel = 0;
  for (Parity p : {Parity::Even, Parity::Odd}) {
    if (S.base->finite_dimensional()) {
      // Q[i]-linear algebra on (T-monomial) x (G-monomial) candidates.
      MonomialBasis tb(S.base, 0);
      total_qdim = tb.size();
      std::vector<SuperElement> cands;
      std::vector<bool> fibre;
      for (Parity q : {Parity::Even, Parity::Odd})
        for (const SuperElement& g : group_candidates(S, q))
          for (std::size_t t = 0; t < tb.size(); ++t) {
            if (tb[t].parity() + q != p) continue;
            cands.push_back(embed(tb.element(t), S.ambient) * g);
            fibre.push_back(tb[t].is_one());
          }
      std::vector<SuperElement> images;
      for (const auto& c : cands) {
        auto im = equation_images(S, c);
        images.insert(images.end(), im.begin(), im.end());
      }
      // unknown j contributes images[j*blocks + k] to block k: stack the blocks.
      Coordinatized cz = coordinatize(images);
      std::size_t width = cz.support.size();
      ScalarMatrix cols;  // one column vector per candidate, length blocks*width
      for (std::size_t j = 0; j < cands.size(); ++j) {
        ScalarVector v;
        for (std::size_t k = 0; k < blocks; ++k) {
          const auto& row = cz.rows[j * blocks + k];
          v.insert(v.end(), row.begin(), row.end());
        }
        cols.push_back(std::move(v));
      }
      std::vector<ScalarVector> ker;
      if (blocks * width == 0) {
        for (std::size_t j = 0; j < cands.size(); ++j) {
          ScalarVector e(cands.size(), Scalar(0));
          e[j] = Scalar(1);
          ker.push_back(e);
        }
      } else {
        ker = nullspace(transpose(cols, blocks * width), cands.size());
      }
      qdim_kernel += static_cast<long>(ker.size());
      Echelon e = rref(ker, cands.size());
      for (std::size_t r = 0; r < e.rows.size(); ++r) {
        if (!fibre[e.pivots[r]]) continue;  // generated from fibre pivots (Nakayama)
        SuperElement phi = SuperElement::zero(S.ambient);
        for (std::size_t j = 0; j < cands.size(); ++j)
          if (!e.rows[r][j].is_zero()) phi += cands[j] * e.rows[r][j];
        M.basis.emplace_back(phi, S.exponent);
        M.parities.push_back(p);
      }
    } else {
      // O(T)-linear: requires an even base so that every R_v is O(T)-linear.
      if (S.base->odd_count() != 0) throw Error("polarized space: odd generators in an infinite base are not supported");
      std::vector<SuperElement> cands = group_candidates(S, p);
      if (cands.empty()) continue;
      std::vector<SuperElement> images;
      for (const auto& c : cands) {
        auto im = equation_images(S, c);
        images.insert(images.end(), im.begin(), im.end());
      }
      SplitRows sr = split_rows(images, S.base);
      std::size_t width = sr.columns.size();
      ElementMatrix B;
      for (std::size_t j = 0; j < cands.size(); ++j) {
        ElementVector row;
        for (std::size_t k = 0; k < blocks; ++k) row.insert(row.end(), sr.rows[j * blocks + k].begin(), sr.rows[j * blocks + k].end());
        B.push_back(std::move(row));
      }
      std::vector<ElementVector> ker;
      if (blocks * width == 0) ker = element_identity(S.base, cands.size());
      else ker = module_left_kernel(B, blocks * width, S.base);
      ElementMatrix ech = module_echelon(ker, cands.size(), S.base);
      // fibre rank at the reduced point must match the number of generators
      orbit::ClassicalPoint pt = orbit::default_points(*S.base).front();
      ScalarMatrix fib = orbit::evaluate_matrix(ech, pt.values);
      if (rank(fib) != ech.size()) throw Error("polarized space: kernel is not free over the base");
      for (const auto& row : ech) {
        SuperElement phi = SuperElement::zero(S.ambient);
        for (std::size_t j = 0; j < cands.size(); ++j)
          if (!row[j].is_zero()) phi += embed(row[j], S.ambient) * cands[j];
        M.basis.emplace_back(phi, S.exponent);
        M.parities.push_back(p);
      }
    }
  }
  for (Parity p : M.parities) (p == Parity::Even ? M.rank.even : M.rank.odd) += 1;
  if (S.base->finite_dimensional())
    M.free = qdim_kernel == static_cast<long>(M.basis.size() * total_qdim);
  else
    M.free = true;
  return M;
}

// Heisenberg rows: ambient O(T) tensor k[a,b,c]; psi = phi e^{i gamma c}.
inline AlgebraPtr heisenberg_ambient(const AlgebraPresentation& base, const heisenberg::Row& row) {
  return tensor(base, *heisenberg::group_algebra(row));
}

inline PolarizedModule polarized_space(const heisenberg::Row& row, const SuperElement& gamma,
                                       const std::string& polarization = "xz", int cutoff = 3) {
  const AlgebraPtr& base = gamma.algebra();
  if (!gamma.is_zero() && gamma.parity() != row.z) throw Error("gamma must have the parity of z");
  AlgebraPtr amb = heisenberg_ambient(*base, row);
  SuperElement g = embed(gamma, amb);
  auto R = heisenberg::invariant_fields(amb, row);
  EquationSystem S;
  S.ambient = amb;
  S.base = base;
  S.group = {"a", "b", "c"};
  S.exponent = g * SuperElement::gen(amb, "c") * Scalar::i();
  S.cutoff = cutoff;
  SuperElement zero = SuperElement::zero(amb);
  if (polarization == "xz") {
    S.fields = {R.Rx, R.Rz};
  } else if (polarization == "yz") {
    S.fields = {R.Ry, R.Rz};
  } else {
    throw Error("polarization must be xz or yz");
  }
  S.values = {zero, g};
  PolarizedModule M = solve_polarized(S);
  M.family = row.name();
  M.gamma = g;
  M.exploratory = polarization != "xz";
  return M;
}

// Solutions of lambda(g) psi = e^{i<theta,g>} psi at a generic odd point g (eta).
inline PolarizedModule character_module(const OddFourier& F) {
  PolarizedModule M;
  M.family = "A0|" + std::to_string(F.n);
  M.ambient = F.alg;
  M.base = F.base;
  M.exponent = SuperElement::zero(F.alg);
  M.gamma = SuperElement::zero(F.alg);
  std::vector<SuperElement> g = gens(F, F.eta);
  SuperElement mult = character_multiplier(F, g);
  AlgebraBuilder xb;
  for (const auto& s : F.xi) xb.odd(s);
  MonomialBasis xs(xb.build(), 0), ts(F.base, 0);
  for (Parity p : {Parity::Even, Parity::Odd}) {
    std::vector<SuperElement> cands;
    std::vector<bool> fibre;
    for (std::size_t x = 0; x < xs.size(); ++x)
      for (std::size_t t = 0; t < ts.size(); ++t) {
        if (xs[x].parity() + ts[t].parity() != p) continue;
        cands.push_back(embed(ts.element(t), F.alg) * embed(xs.element(x), F.alg));
        fibre.push_back(ts[t].is_one());
      }
    std::vector<SuperElement> images;
    for (const auto& c : cands) images.push_back(regular_action(F, g, c) - mult * c);
    Coordinatized cz = coordinatize(images);
    std::vector<ScalarVector> ker;
    if (cz.support.empty()) {
      for (std::size_t j = 0; j < cands.size(); ++j) {
        ScalarVector e(cands.size(), Scalar(0));
        e[j] = Scalar(1);
        ker.push_back(e);
      }
    } else {
      ker = nullspace(transpose(cz.rows, cz.support.size()), cands.size());
    }
    Echelon e = rref(ker, cands.size());
    for (std::size_t r = 0; r < e.rows.size(); ++r) {
      if (!fibre[e.pivots[r]]) continue;
      SuperElement phi = SuperElement::zero(F.alg);
      for (std::size_t j = 0; j < cands.size(); ++j)
        if (!e.rows[r][j].is_zero()) phi += cands[j] * e.rows[r][j];
      M.basis.emplace_back(phi);
      M.parities.push_back(p);
      (p == Parity::Even ? M.rank.even : M.rank.odd) += 1;
    }
    M.free = true;
  }
  return M;
}

// ---- the Heisenberg action on polarized sections ----------------------------------

// lambda(g) psi = psi(g^{-1} h), h = (a, b, c); the point g lives in an algebra R that
// contains a, b, c.
inline TwistedElement pi_polarized(const heisenberg::GroupPoint& g, const TwistedElement& psi) {
  const AlgebraPtr& R = g.a.algebra();
  heisenberg::GroupPoint h{SuperElement::gen(R, "a"), SuperElement::gen(R, "b"), SuperElement::gen(R, "c"), g.row};
  heisenberg::GroupPoint k = g.inverse() * h;
  AlgebraMorphism phi = AlgebraMorphism::substitution(R, R, {{"a", k.a}, {"b", k.b}, {"c", k.c}});
  return pull(phi, embed_twisted(psi, R));
}

// O(T) tensor O(G) tensor k[s1..|eta1..]: room for test points of G with auxiliary parameters.
inline AlgebraPtr rep_parameter_algebra(const PolarizedModule& M, int odd = 4, int even = 2) {
  AlgebraBuilder aux;
  for (const auto& n : heisenberg::odd_names("eta", odd)) aux.odd(n);
  for (const auto& n : heisenberg::odd_names("s", even)) aux.even(n);
  return tensor(*M.ambient, *aux.build());
}

struct HomomorphismCheck {
  bool ok = true;
  std::vector<std::string> failures;  // "basis j: lhs != rhs"
};

// pi(g1 g2) psi == pi(g1) pi(g2) psi on every basis vector of M.
inline HomomorphismCheck homomorphism_check(const PolarizedModule& M, const heisenberg::GroupPoint& g1,
                                            const heisenberg::GroupPoint& g2) {
  HomomorphismCheck out;
  for (std::size_t j = 0; j < M.basis.size(); ++j) {
    TwistedElement lhs = pi_polarized(g1 * g2, M.basis[j]);
    TwistedElement rhs = pi_polarized(g1, pi_polarized(g2, M.basis[j]));
    if (lhs != rhs) {
      out.ok = false;
      out.failures.push_back("basis " + std::to_string(j) + ": " + lhs.to_string() + " != " + rhs.to_string());
    }
  }
  return out;
}

// ---- operators on a polarized module --------------------------------------------

// Matrix over O(T) with left coefficients: A(e_j) = sum_i A_ij e_i.
struct RepOperator {
  AlgebraPtr base;
  Parity parity = Parity::Even;
  std::vector<Parity> basis_parities;
  ElementMatrix m;

  friend bool operator==(const RepOperator& a, const RepOperator& b) { return a.m == b.m; }
  std::string to_string() const {
    std::string s = "[";
    for (std::size_t i = 0; i < m.size(); ++i) {
      s += i ? "; " : "";
      for (std::size_t j = 0; j < m[i].size(); ++j) s += (j ? ", " : "") + m[i][j].to_string();
    }
    return s + "]";
  }
};

inline RepOperator operator_matrix(const PolarizedModule& M, Parity parity,
                                   const std::function<TwistedElement(const TwistedElement&)>& op) {
  RepOperator A{M.base, parity, M.parities, {}};
  std::size_t n = M.basis.size();
  A.m.assign(n, ElementVector(n, SuperElement::zero(M.base)));
  for (std::size_t j = 0; j < n; ++j) {
    auto c = module_coordinates(M, op(M.basis[j]));
    if (!c) throw Error("operator does not preserve the module");
    for (std::size_t i = 0; i < n; ++i) A.m[i][j] = (*c)[i];
  }
  return A;
}

// (XY)(e_j) = X(sum_k Y_kj e_k) = sum_k (-1)^{|X||Y_kj|} Y_kj sum_i X_ik e_i
inline RepOperator compose(const RepOperator& X, const RepOperator& Y) {
  std::size_t n = X.m.size();
  RepOperator out{X.base, X.parity + Y.parity, X.basis_parities, ElementMatrix(n, ElementVector(n, SuperElement::zero(X.base)))};
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      for (std::size_t k = 0; k < n; ++k)
        for (Parity p : {Parity::Even, Parity::Odd}) {
          SuperElement y = Y.m[k][j].part(p);
          if (y.is_zero()) continue;
          SuperElement t = y * X.m[i][k];
          out.m[i][j] += koszul_negative(X.parity, p) ? -t : t;
        }
  return out;
}

inline RepOperator super_bracket(const RepOperator& X, const RepOperator& Y) {
  RepOperator xy = compose(X, Y), yx = compose(Y, X);
  bool anti = koszul_negative(X.parity, Y.parity);
  for (std::size_t i = 0; i < xy.m.size(); ++i)
    for (std::size_t j = 0; j < xy.m.size(); ++j) xy.m[i][j] = anti ? xy.m[i][j] + yx.m[i][j] : xy.m[i][j] - yx.m[i][j];
  return xy;
}

inline RepOperator scalar_operator(const PolarizedModule& M, const SuperElement& s) {
  Parity p = s.parity().value_or(Parity::Even);
  RepOperator A{M.base, p, M.parities, ElementMatrix(M.basis.size(), ElementVector(M.basis.size(), SuperElement::zero(M.base)))};
  for (std::size_t i = 0; i < M.basis.size(); ++i) A.m[i][i] = s;
  return A;
}

// str A = sum over even basis vectors minus sum over odd ones.
inline SuperElement supertrace(const RepOperator& A) {
  SuperElement s = SuperElement::zero(A.base);
  for (std::size_t i = 0; i < A.m.size(); ++i) s += A.basis_parities[i] == Parity::Even ? A.m[i][i] : -A.m[i][i];
  return s;
}

inline SuperElement base_gamma(const PolarizedModule& M) {
  auto parts = split_coefficients(M.gamma, M.base);
  if (parts.size() > 1) throw Error("gamma must be a function on T");
  return parts.empty() ? SuperElement::zero(M.base) : parts.begin()->second;
}

// Closed forms: d pi(x) = -i gamma b, d pi(y) = -d/db, d pi(z) = i gamma.
inline RepOperator dpi_closed(const PolarizedModule& M, const heisenberg::Row& row, int v) {
  const SuperElement& g = M.gamma;
  Parity par = v == 0 ? row.x : v == 1 ? row.y : row.z;
  SuperElement b = SuperElement::gen(M.ambient, "b");
  return operator_matrix(M, par, [&](const TwistedElement& psi) {
    if (v == 0) return (g * b * -Scalar::i()) * psi;
    if (v == 1) {
      TwistedElement d = psi.derivative("b");
      return TwistedElement(-d.body(), d.exponent());
    }
    return (g * Scalar::i()) * psi;
  });
}

// d pi(v) psi = d/dt pi(exp of the R_v flow with parameter t) psi at t = 0, t a dual
// number of the parity of v (left derivative).
inline TwistedElement dpi_flow(const heisenberg::Row& row, int v, const TwistedElement& psi) {
  const AlgebraPtr& amb = psi.algebra();
  DualNumbers d = dual_numbers(*amb);
  Parity par = v == 0 ? row.x : v == 1 ? row.y : row.z;
  const std::string& param = par == Parity::Even ? d.tau : d.theta;
  heisenberg::GroupPoint g = heisenberg::flow_point(row, v, SuperElement::gen(d.algebra, param));
  TwistedElement moved = pi_polarized(g, psi);
  return pull(restrict_to_zero(d, amb), moved.derivative(param));
}

inline RepOperator dpi(const PolarizedModule& M, const heisenberg::Row& row, int v) {
  Parity par = v == 0 ? row.x : v == 1 ? row.y : row.z;
  return operator_matrix(M, par, [&](const TwistedElement& psi) { return dpi_flow(row, v, psi); });
}

}  // namespace superorbit::harmonic
