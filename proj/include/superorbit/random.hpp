#pragma once
// Seeded random elements and GL(m|n) points for property sweeps.

#include <random>
#include <vector>

#include "heisenberg.hpp"
#include "linalg.hpp"
#include "supermatrix.hpp"

namespace superorbit {

using Rng = std::mt19937_64;

inline Scalar random_scalar(Rng& rng, int range = 3) {
  std::uniform_int_distribution<int> d(-range, range);
  std::uniform_int_distribution<int> den(1, 3);
  return Scalar(make_rational(d(rng), den(rng)), make_rational(d(rng), den(rng)));
}

// Random element with up to `terms` monomials from the cutoff basis; parity filter optional.
inline SuperElement random_element(const AlgebraPtr& alg, Rng& rng, int terms = 4, int cutoff = 2,
                                   std::optional<Parity> parity = std::nullopt) {
  MonomialBasis mb(alg, cutoff);
  std::vector<std::size_t> pool;
  for (std::size_t i = 0; i < mb.size(); ++i)
    if (!parity || mb[i].parity() == *parity) pool.push_back(i);
  SuperElement e = SuperElement::zero(alg);
  if (pool.empty()) return e;
  std::uniform_int_distribution<std::size_t> pick(0, pool.size() - 1);
  for (int t = 0; t < terms; ++t) e += mb.element(pool[pick(rng)]) * random_scalar(rng);
  return e;
}

// Nilpotent even (or odd) element: no constant term and no pure body monomials.
inline SuperElement random_nilpotent(const AlgebraPtr& alg, Rng& rng, Parity parity, int terms = 3) {
  SuperElement e = random_element(alg, rng, terms, 1, parity);
  SuperElement out = SuperElement::zero(alg);
  for (const auto& [m, c] : e.terms())
    if (alg->nilpotent(m)) out.add_term(m, c);
  return out;
}

// An invertible even supermatrix over a Grassmann algebra: unitriangular body blocks
// scaled by nonzero rationals, plus nilpotent even entries and odd off-diagonal entries.
inline SuperMatrix random_gl_point(const AlgebraPtr& alg, int m, int n, Rng& rng) {
  auto sig = SuperMatrix::signature(m, n);
  SuperMatrix g(alg, sig, sig);
  std::uniform_int_distribution<int> nz(1, 3);
  for (std::size_t i = 0; i < sig.size(); ++i)
    for (std::size_t j = 0; j < sig.size(); ++j) {
      Parity p = sig[i] + sig[j];
      SuperElement e = random_nilpotent(alg, rng, p);
      if (p == Parity::Even) {
        bool same_block = sig[i] == sig[j];
        if (i == j) e += SuperElement::constant(alg, Scalar(nz(rng)));
        else if (same_block && i < j) e += SuperElement::constant(alg, random_scalar(rng));
      }
      g.at(i, j) = e;
    }
  return g;
}

// Heisenberg point whose coordinates are random polynomials (degree <= 1 in the even
// parameters) in the named auxiliary generators of R.
inline heisenberg::GroupPoint random_group_point(const AlgebraPtr& R, const heisenberg::Row& row, Rng& rng,
                                                 const std::vector<std::string>& params) {
  AlgebraPtr aux = restrict_presentation(*R, std::set<std::string>(params.begin(), params.end()));
  auto coord = [&](Parity p) { return embed(random_element(aux, rng, 4, 1, p), R); };
  return {coord(row.x), coord(row.y), coord(row.z), row};
}

}  // namespace superorbit
