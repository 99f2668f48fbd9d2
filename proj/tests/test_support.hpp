#pragma once
// Shared helpers for the unit and acceptance suites: seeded generators, an independent
// exterior-algebra oracle and random Jacobi-valid Lie superalgebras.

#include <map>
#include <random>
#include <string>
#include <vector>

#include "superorbit/harmonic.hpp"
#include "superorbit/kks.hpp"
#include "superorbit/random.hpp"

namespace testsupport {

using namespace superorbit;

inline AlgebraPtr grassmann(int n, const std::string& stem = "t") {
  AlgebraBuilder b;
  for (const auto& s : heisenberg::odd_names(stem, n)) b.odd(s);
  return b.build();
}

// Mixed test algebra: two free even, one unit and three odd generators.
inline AlgebraPtr mixed_algebra() {
  return AlgebraBuilder().even("x").even("y").even("u").unit("u").odd("t1").odd("t2").odd("t3").build();
}

// ---- exterior algebra oracle ---------------------------------------------------------
// Elements are maps from bitmasks (bit k = generator k, factors in increasing order) to
// scalars. The product sign counts inversions directly; nothing is shared with the library.

using Ext = std::map<std::uint64_t, Scalar>;

inline Ext ext_mul(const Ext& a, const Ext& b) {
  Ext out;
  for (const auto& [ma, ca] : a)
    for (const auto& [mb, cb] : b) {
      if (ma & mb) continue;
      int inv = 0;
      for (int i = 0; i < 64; ++i)
        if (ma >> i & 1) inv += std::popcount(mb & ((std::uint64_t{1} << i) - 1));
      Scalar c = ca * cb;
      if (inv % 2) c = -c;
      out[ma | mb] += c;
      if (out[ma | mb].is_zero()) out.erase(ma | mb);
    }
  return out;
}

inline Ext ext_random(int n, std::mt19937_64& rng, int terms = 4) {
  std::uniform_int_distribution<std::uint64_t> mask(0, (std::uint64_t{1} << n) - 1);
  Ext e;
  for (int t = 0; t < terms; ++t) {
    e[mask(rng)] += random_scalar(rng);
  }
  std::erase_if(e, [](const auto& kv) { return kv.second.is_zero(); });
  return e;
}

// Build the library element by multiplying generators in increasing order.
inline SuperElement ext_to_element(const Ext& e, const AlgebraPtr& alg, const std::string& stem = "t") {
  SuperElement out = SuperElement::zero(alg);
  for (const auto& [m, c] : e) {
    SuperElement term = SuperElement::constant(alg, c);
    for (int i = 0; i < 64; ++i)
      if (m >> i & 1) term = term * SuperElement::gen(alg, stem + std::to_string(i + 1));
    out += term;
  }
  return out;
}

// ---- random Lie superalgebras ----------------------------------------------------------
// Homogeneous strictly upper triangular matrices in gl(3|2) generate a nilpotent Lie
// superalgebra under the supercommutator; the closure is finite and satisfies Jacobi.

using Mat = std::vector<std::vector<Scalar>>;
constexpr int kGlEven = 3, kGlOdd = 2, kGlDim = kGlEven + kGlOdd;

inline Parity gl_row_parity(int i) { return i < kGlEven ? Parity::Even : Parity::Odd; }

inline Mat mat_zero() { return Mat(kGlDim, std::vector<Scalar>(kGlDim, Scalar(0))); }

inline Mat mat_mul(const Mat& a, const Mat& b) {
  Mat c = mat_zero();
  for (int i = 0; i < kGlDim; ++i)
    for (int k = 0; k < kGlDim; ++k)
      if (!a[i][k].is_zero())
        for (int j = 0; j < kGlDim; ++j) c[i][j] += a[i][k] * b[k][j];
  return c;
}

inline Mat supercommutator(const Mat& a, Parity pa, const Mat& b, Parity pb) {
  Mat ab = mat_mul(a, b), ba = mat_mul(b, a);
  bool both_odd = pa == Parity::Odd && pb == Parity::Odd;
  for (int i = 0; i < kGlDim; ++i)
    for (int j = 0; j < kGlDim; ++j) ab[i][j] = both_odd ? ab[i][j] + ba[i][j] : ab[i][j] - ba[i][j];
  return ab;
}

inline ScalarVector flatten(const Mat& m) {
  ScalarVector v;
  for (const auto& r : m) v.insert(v.end(), r.begin(), r.end());
  return v;
}

inline Mat random_upper(std::mt19937_64& rng, Parity p) {
  Mat m = mat_zero();
  std::uniform_int_distribution<int> keep(0, 2);
  for (int i = 0; i < kGlDim; ++i)
    for (int j = i + 1; j < kGlDim; ++j)
      if (gl_row_parity(i) + gl_row_parity(j) == p && keep(rng) != 0) m[i][j] = Scalar(std::uniform_int_distribution<int>(-2, 2)(rng));
  return m;
}

struct RandomLie {
  LieSuperAlgebra g;
  std::vector<Mat> basis;
};

inline RandomLie random_lie(std::mt19937_64& rng) {
  std::vector<Mat> mats;
  std::vector<Parity> ps;
  auto independent = [&](const Mat& m, Parity p) {
    std::vector<ScalarVector> rows;
    for (std::size_t i = 0; i < mats.size(); ++i)
      if (ps[i] == p) rows.push_back(flatten(mats[i]));
    ScalarVector v = flatten(m);
    bool zero = std::all_of(v.begin(), v.end(), [](const Scalar& s) { return s.is_zero(); });
    return !zero && !in_span(rows, v);
  };
  for (Parity p : {Parity::Even, Parity::Even, Parity::Odd, Parity::Odd}) {
    Mat m = random_upper(rng, p);
    if (independent(m, p)) {
      mats.push_back(m);
      ps.push_back(p);
    }
  }
  for (bool grew = true; grew;) {
    grew = false;
    for (std::size_t i = 0; i < mats.size() && !grew; ++i)
      for (std::size_t j = i; j < mats.size() && !grew; ++j) {
        Parity p = ps[i] + ps[j];
        Mat c = supercommutator(mats[i], ps[i], mats[j], ps[j]);
        if (independent(c, p)) {
          mats.push_back(c);
          ps.push_back(p);
          grew = true;
        }
      }
  }
  std::vector<std::string> names;
  for (std::size_t i = 0; i < mats.size(); ++i) names.push_back("e" + std::to_string(i + 1));
  LieSuperAlgebra g(names, ps);
  // express [e_i, e_j] in the basis: columns of the system are the flattened basis matrices
  ScalarMatrix cols;
  for (const auto& m : mats) cols.push_back(flatten(m));
  ScalarMatrix system = transpose(cols, kGlDim * kGlDim);
  for (std::size_t i = 0; i < mats.size(); ++i)
    for (std::size_t j = i; j < mats.size(); ++j) {
      auto x = solve(system, flatten(supercommutator(mats[i], ps[i], mats[j], ps[j])), mats.size());
      if (!x) throw Error("random_lie: bracket left the span");
      SparseVector v;
      for (std::size_t k = 0; k < x->size(); ++k)
        if (!(*x)[k].is_zero()) v[static_cast<int>(k)] = (*x)[k];
      g.set_bracket(static_cast<int>(i), static_cast<int>(j), v);
    }
  return {g, mats};
}

// A constant functional (even coefficients only) over the unit line k[u, 1/u].
inline Functional random_constant_functional(const LieSuperAlgebra& g, std::mt19937_64& rng) {
  AlgebraPtr base = AlgebraBuilder().even("u").unit("u").build();
  std::vector<SuperElement> c;
  for (std::size_t i = 0; i < g.dim(); ++i)
    c.push_back(g.parity(static_cast<int>(i)) == Parity::Even ? SuperElement::constant(base, random_scalar(rng))
                                                               : SuperElement::zero(base));
  return {base, c};
}

// ---- algebra kernel properties -----------------------------------------------------------

struct PropertyFailures {
  int supercommutativity = 0, associativity = 0, leibniz = 0, anticommutation = 0, exp_hom = 0, by_parts = 0;
  int total() const { return supercommutativity + associativity + leibniz + anticommutation + exp_hom + by_parts; }
};

inline Parity random_parity(std::mt19937_64& rng) {
  return std::uniform_int_distribution<int>(0, 1)(rng) ? Parity::Odd : Parity::Even;
}

inline PropertyFailures kernel_properties(std::mt19937_64& rng, int cases) {
  PropertyFailures f;
  AlgebraPtr A = mixed_algebra();
  AlgebraPtr G = grassmann(4);
  const std::vector<std::string> odd{"t1", "t2", "t3"}, even{"x", "y", "u"};
  std::uniform_int_distribution<std::size_t> pick3(0, 2);
  for (int c = 0; c < cases; ++c) {
    Parity pa = random_parity(rng), pb = random_parity(rng);
    SuperElement a = random_element(A, rng, 4, 2, pa), b = random_element(A, rng, 4, 2, pb),
                 e = random_element(A, rng, 3, 1);
    bool both_odd = pa == Parity::Odd && pb == Parity::Odd;
    if (a * b != (both_odd ? -(b * a) : b * a)) ++f.supercommutativity;
    if ((a * b) * e != a * (b * e)) ++f.associativity;
    // left derivative: d(ab) = d(a) b + (-1)^{|d||a|} a d(b)
    const std::string& t = odd[pick3(rng)];
    const std::string& x = even[pick3(rng)];
    SuperElement sa = pa == Parity::Odd ? -a : a;
    bool lodd = (a * b).derivative(t) != a.derivative(t) * b + sa * b.derivative(t);
    bool leven = (a * b).derivative(x) != a.derivative(x) * b + a * b.derivative(x);
    if (lodd || leven) ++f.leibniz;
    const std::string& s = odd[pick3(rng)];
    bool anti = e.derivative(t).derivative(s) != -e.derivative(s).derivative(t);
    bool mixed = e.derivative(t).derivative(x) != e.derivative(x).derivative(t);
    if (anti || mixed) ++f.anticommutation;
    // exp(n1 + n2) = exp(n1) exp(n2) for even nilpotents
    SuperElement n1 = random_nilpotent(A, rng, Parity::Even), n2 = random_nilpotent(A, rng, Parity::Even);
    if ((n1 + n2).exp_nilpotent() != n1.exp_nilpotent() * n2.exp_nilpotent()) ++f.exp_hom;
    // integral of a total derivative vanishes
    SuperElement g = random_element(G, rng, 6, 0);
    std::uniform_int_distribution<int> k(1, 4);
    std::string v = "t" + std::to_string(k(rng));
    if (!g.derivative(v).berezin({"t1", "t2", "t3", "t4"}).is_zero() || !g.derivative(v).berezin({v}).is_zero())
      ++f.by_parts;
  }
  return f;
}

}  // namespace testsupport
