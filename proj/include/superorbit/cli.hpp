#pragma once
// Report builders behind the command-line tool. Each command fills a Report of named
// checks; every check carries a verdict and the symbolic discrepancy ("0" on pass).

#include <chrono>
#include <functional>
#include <string>
#include <vector>

#include <json.hpp>

#include "harmonic.hpp"
#include "kks.hpp"
#include "random.hpp"
#include "scenario.hpp"

namespace superorbit::cli {

using json = nlohmann::json;

// Bad invocation or a scenario without the sections a command needs (exit code 2).
class UsageError : public Error {
 public:
  using Error::Error;
};

struct Report {
  std::string command;
  json checks = json::array();
  json info = json::object();

  void add(const std::string& name, bool ok, const std::string& discrepancy, json details = json::object()) {
    json c = {{"name", name}, {"verdict", ok ? "pass" : "fail"}, {"discrepancy", discrepancy}};
    if (!details.empty()) c["details"] = std::move(details);
    checks.push_back(std::move(c));
  }
  bool pass() const {
    for (const auto& c : checks)
      if (c["verdict"] != "pass") return false;
    return true;
  }
  json to_json(double ms) const {
    return {{"command", command}, {"verdict", pass() ? "pass" : "fail"}, {"checks", checks},
            {"info", info},       {"timing_ms", ms}};
  }
  std::string to_text() const {
    std::string s;
    for (const auto& c : checks) {
      s += (c["verdict"] == "pass" ? "PASS " : "FAIL ") + c["name"].get<std::string>();
      if (c["verdict"] != "pass") s += ": " + c["discrepancy"].get<std::string>();
      s += "\n";
    }
    s += std::string(pass() ? "all checks passed" : "some checks failed") + " (" + std::to_string(checks.size()) +
         " checks)\n";
    return s;
  }
};

// ---- serialisation helpers ----------------------------------------------------

inline json parities_json(const std::vector<Parity>& ps) {
  json a = json::array();
  for (Parity p : ps) a.push_back(parity_name(p));
  return a;
}

inline json matrix_json(const ScalarMatrix& m, const std::vector<Parity>& rows, const std::vector<Parity>& cols) {
  json e = json::array();
  for (const auto& r : m) {
    json row = json::array();
    for (const auto& x : r) row.push_back(x.to_string());
    e.push_back(row);
  }
  return {{"signature", {{"rows", parities_json(rows)}, {"cols", parities_json(cols)}}}, {"entries", e}};
}

inline json matrix_json(const ElementMatrix& m, const std::vector<Parity>& rows, const std::vector<Parity>& cols) {
  json e = json::array();
  for (const auto& r : m) {
    json row = json::array();
    for (const auto& x : r) row.push_back(x.to_string());
    e.push_back(row);
  }
  return {{"signature", {{"rows", parities_json(rows)}, {"cols", parities_json(cols)}}}, {"entries", e}};
}

inline json elements_json(const std::vector<SuperElement>& v) {
  json a = json::array();
  for (const auto& e : v) a.push_back(e.to_string());
  return a;
}

// Entry-wise difference of two scalar matrices, "0" when equal.
inline std::string matrix_discrepancy(const ScalarMatrix& a, const ScalarMatrix& b) {
  std::string s;
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < a[i].size(); ++j)
      if (a[i][j] != b[i][j])
        s += (s.empty() ? "" : "; ") + std::string("[") + std::to_string(i) + "][" + std::to_string(j) +
             "]: " + (a[i][j] - b[i][j]).to_string();
  return s.empty() ? "0" : s;
}

// Sum of c_k e_k as text, for vectors of g.
inline std::string lie_vector_string(const LieSuperAlgebra& g, const ScalarVector& v) {
  AlgebraBuilder b;
  for (std::size_t i = 0; i < g.dim(); ++i) b.add(g.name(static_cast<int>(i)), g.parity(static_cast<int>(i)));
  AlgebraPtr space = b.build();
  SuperElement e = SuperElement::zero(space);
  for (std::size_t i = 0; i < v.size(); ++i) e += SuperElement::gen(space, g.name(static_cast<int>(i))) * v[i];
  return e.to_string();
}

inline std::string module_vector_string(const LieSuperAlgebra& g, const ElementVector& v) {
  std::string s;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (v[i].is_zero()) continue;
    s += (s.empty() ? "" : " + ") + std::string("(") + v[i].to_string() + ")*" + g.name(static_cast<int>(i));
  }
  return s.empty() ? "0" : s;
}

// ---- heisenberg ----------------------------------------------------------------

inline std::vector<heisenberg::Row> rows_for(const std::string& parity) {
  if (parity.empty()) return heisenberg::Row::all();
  try {
    return {heisenberg::Row::parse(parity)};
  } catch (const Error& e) {
    throw UsageError(std::string("--parity: ") + e.what());
  }
}

// Difference of the images of two fields on every generator; "0" when they agree.
inline std::string field_discrepancy(const AlgebraPtr& alg, const Derivation& u,
                                     const std::map<std::string, SuperElement>& expected) {
  std::string s;
  for (const Generator& g : alg->generators()) {
    SuperElement d = u.image(g.name) - expected.at(g.name);
    if (!d.is_zero()) s += (s.empty() ? "" : "; ") + g.name + ": " + d.to_string();
  }
  return s.empty() ? "0" : s;
}

inline void heisenberg_fields(Report& rep, const heisenberg::Row& r) {
  AlgebraPtr alg = heisenberg::group_algebra(r);
  LieSuperAlgebra g = heisenberg::lie_algebra(r);
  heisenberg::InvariantFields f = heisenberg::invariant_fields(alg, r);
  const std::array<const Derivation*, 3> R{&f.Rx, &f.Ry, &f.Rz}, L{&f.Lx, &f.Ly, &f.Lz};
  const std::string tag = r.name() + ": ";
  json images;
  for (int i = 0; i < 3; ++i) {
    images["R_" + g.name(i)] = R[i]->to_string();
    images["L_" + g.name(i)] = L[i]->to_string();
  }
  rep.info[r.name()]["fields"] = images;
  auto expected = [&](const std::array<const Derivation*, 3>& F, int i, int j, const Scalar& sign) {
    std::map<std::string, SuperElement> im;
    for (const Generator& x : alg->generators()) {
      SuperElement e = SuperElement::zero(alg);
      for (const auto& [k, c] : g.bracket(i, j)) e += (*F[k]).image(x.name) * (c * sign);
      im.emplace(x.name, e);
    }
    return im;
  };
  auto zero = [&] {
    std::map<std::string, SuperElement> im;
    for (const Generator& x : alg->generators()) im.emplace(x.name, SuperElement::zero(alg));
    return im;
  };
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) {
      const std::string ni = g.name(i), nj = g.name(j);
      std::string dr = field_discrepancy(alg, bracket(*R[i], *R[j]), expected(R, i, j, Scalar(1)));
      rep.add(tag + "[R_" + ni + ",R_" + nj + "]", dr == "0", dr);
      std::string dl = field_discrepancy(alg, bracket(*L[i], *L[j]), expected(L, i, j, Scalar(-1)));
      rep.add(tag + "[L_" + ni + ",L_" + nj + "]", dl == "0", dl);
      std::string dm = field_discrepancy(alg, bracket(*R[i], *L[j]), zero());
      rep.add(tag + "[R_" + ni + ",L_" + nj + "]", dm == "0", dm);
    }
}

inline void heisenberg_coadjoint(Report& rep, const heisenberg::Row& r) {
  LieSuperAlgebra g = heisenberg::lie_algebra(r);
  std::vector<Parity> sig{r.x, r.y, r.z};
  const std::string tag = r.name() + ": ";
  for (int v = 0; v < 3; ++v) {
    ScalarMatrix closed = heisenberg::ad_star_closed(r, v);
    ScalarMatrix flow = heisenberg::ad_star_from_flow(r, v);
    ScalarMatrix sc = g.coadjoint_matrix(v);
    rep.info[r.name()]["ad*(" + g.name(v) + ")"] = matrix_json(closed, sig, sig);
    std::string d1 = matrix_discrepancy(flow, closed);
    rep.add(tag + "d/dt Ad*(flow of " + g.name(v) + ") = ad*(" + g.name(v) + ")", d1 == "0", d1);
    std::string d2 = matrix_discrepancy(sc, closed);
    rep.add(tag + "structure constants give ad*(" + g.name(v) + ")", d2 == "0", d2);
    std::string d3 = matrix_discrepancy(heisenberg::ad_from_flow(r, v), g.adjoint_matrix(v));
    rep.add(tag + "d/dt Ad(flow of " + g.name(v) + ") = ad(" + g.name(v) + ")", d3 == "0", d3);
  }
}

inline AlgebraPtr parameter_algebra(int odd = 4, int even = 2) {
  AlgebraBuilder b;
  for (const auto& n : heisenberg::odd_names("eta", odd)) b.odd(n);
  for (const auto& n : heisenberg::odd_names("s", even)) b.even(n);
  return b.build();
}

inline std::vector<std::string> parameter_names(const AlgebraPtr& alg) {
  std::vector<std::string> out;
  for (const Generator& g : alg->generators()) out.push_back(g.name);
  return out;
}

inline void heisenberg_group(Report& rep, const heisenberg::Row& r, Rng& rng, int trials) {
  using heisenberg::GroupPoint;
  AlgebraPtr R = parameter_algebra();
  auto params = parameter_names(R);
  const std::string tag = r.name() + ": ";
  int law = 0, assoc = 0, inv = 0, unit = 0, adstar = 0, adstar_one = 0;
  std::string first;
  auto note = [&](int& counter, const std::string& what) {
    if (counter++ == 0 && first.empty()) first = what;
  };
  for (int t = 0; t < trials; ++t) {
    GroupPoint g1 = random_group_point(R, r, rng, params), g2 = random_group_point(R, r, rng, params),
               g3 = random_group_point(R, r, rng, params);
    GroupPoint e = GroupPoint::identity(R, r);
    if ((g1 * g2).to_matrix() != g1.to_matrix() * g2.to_matrix()) note(law, "matrix route differs");
    if ((g1 * g2) * g3 != g1 * (g2 * g3)) note(assoc, "associativity");
    if (g1 * g1.inverse() != e || g1.inverse() * g1 != e) note(inv, "inverse");
    if (g1 * e != g1 || e * g1 != g1) note(unit, "identity");
    heisenberg::Triple v{embed(random_element(R, rng, 3, 1, r.x), R), embed(random_element(R, rng, 3, 1, r.y), R),
                         embed(random_element(R, rng, 3, 1, r.z), R)};
    heisenberg::Triple lhs = heisenberg::Ad_star(g1 * g2, v), rhs = heisenberg::Ad_star(g1, heisenberg::Ad_star(g2, v));
    if (lhs != rhs) note(adstar, "Ad*(g1 g2) - Ad*(g1) Ad*(g2) on z*: " + (lhs[0] - rhs[0]).to_string());
    if (heisenberg::Ad_star(e, v) != v) note(adstar_one, "Ad*(1)");
  }
  auto add = [&](const std::string& name, int bad) {
    rep.add(tag + name + " (" + std::to_string(trials) + " random points)", bad == 0,
            bad == 0 ? "0" : std::to_string(bad) + " failures");
  };
  add("coordinate product = matrix product", law);
  add("associativity", assoc);
  add("two-sided inverse", inv);
  add("identity", unit);
  add("Ad*(g1 g2) = Ad*(g1) Ad*(g2)", adstar);
  add("Ad*(1) = id", adstar_one);
  if (!first.empty()) rep.info[r.name()]["first_failure"] = first;
}

// ---- orbit / kks on scenarios -----------------------------------------------------

inline void require(bool ok, const std::string& what) {
  if (!ok) throw UsageError("scenario has no " + what);
}

inline json rank_json(const LieSuperAlgebra& g, const orbit::RankReport& rr) {
  json pts = json::array();
  for (const auto& p : rr.points) {
    json w = json::array(), out = json::array(), values = json::object();
    for (std::size_t i : p.witness) w.push_back(g.name(static_cast<int>(i)));
    for (std::size_t i : p.outside) out.push_back(g.name(static_cast<int>(i)));
    for (const auto& [n, v] : p.point.values) values[n] = v.to_string();
    json spans = p.spans ? json(*p.spans) : json(nullptr);
    pts.push_back({{"label", p.point.label},
                   {"values", values},
                   {"rank", p.rank},
                   {"witness", w},
                   {"isotropy_dim", p.isotropy.to_string()},
                   {"orbit_dim", p.orbit.to_string()},
                   {"spans", spans},
                   {"outside", out}});
  }
  return {{"constant_rank", rr.constant_rank}, {"points", pts}, {"caveats", rr.caveats}};
}

inline void orbit_check_rank(Report& rep, const scenario::Scenario& s) {
  require(!s.functionals.empty(), "functional declarations");
  for (const auto& fd : s.functionals) {
    const LieSuperAlgebra& g = s.lie.at(fd.lie);
    orbit::FundamentalFieldMatrix M = orbit::fundamental_field_matrix(g, s.functional.at(fd.name));
    orbit::RankReport rr = orbit::constant_rank_check(M, scenario::classical_points(s, fd));
    json d = rank_json(g, rr);
    d["fundamental_field_matrix"] = matrix_json(M.entries, g.parities(), g.parities());
    bool ok = fd.expect_constant_rank ? rr.constant_rank == *fd.expect_constant_rank : rr.constant_rank;
    std::string why = rr.constant_rank ? "constant rank" : "not constant rank";
    if (rr.constant_rank) {
      json dims = json::array();
      for (const auto& od : orbit::orbit_dimensions(rr, orbit::algebra_dim(g))) {
        dims.push_back({{"group", od.group.to_string()},
                        {"isotropy", od.isotropy.to_string()},
                        {"orbit", od.orbit.to_string()},
                        {"relation", od.relation.to_string()},
                        {"consistent", od.consistent}});
        ok = ok && od.consistent;
        if (fd.expect_orbit_dim && !(od.orbit == *fd.expect_orbit_dim)) {
          ok = false;
          why += "; orbit " + od.orbit.to_string() + " expected " + fd.expect_orbit_dim->to_string();
        }
        if (fd.expect_isotropy_dim && !(od.isotropy == *fd.expect_isotropy_dim)) {
          ok = false;
          why += "; isotropy " + od.isotropy.to_string() + " expected " + fd.expect_isotropy_dim->to_string();
        }
      }
      d["dimensions"] = dims;
    } else if (fd.expect_orbit_dim || fd.expect_isotropy_dim) {
      ok = false;
      why += "; dimension expectations need constant rank";
    }
    if (fd.expect_constant_rank) d["expected_constant_rank"] = *fd.expect_constant_rank;
    d["verdict_reason"] = why;
    rep.add("rank " + fd.name, ok, ok ? "0" : why, d);
  }
}

inline void orbit_isotropy(Report& rep, const scenario::Scenario& s, int cutoff) {
  require(!s.isotropy.empty() || !s.functionals.empty(), "isotropy checks or functionals");
  for (const auto& d : s.isotropy) {
    orbit::IdealPresentation I = orbit::isotropy_ideal(s.morphism.at(d.action), s.morphism.at(d.point));
    json det = {{"ideal", I.to_string()}, {"ambient_cutoff", cutoff}};
    bool ok = true;
    std::string disc = "0";
    if (d.expect) {
      orbit::IdealPresentation E{I.ambient, *d.expect};
      det["expected"] = E.to_string();
      bool sub = E.contains_all(I, cutoff), sup = I.contains_all(E, cutoff);
      ok = sub && sup;
      if (!ok) disc = std::string(sub ? "" : "computed ideal is larger; ") + (sup ? "" : "computed ideal is smaller");
    }
    rep.add("isotropy ideal " + d.name, ok, disc, det);
  }
  for (const auto& fd : s.functionals) {
    const LieSuperAlgebra& g = s.lie.at(fd.lie);
    orbit::FundamentalFieldMatrix M = orbit::fundamental_field_matrix(g, s.functional.at(fd.name));
    bool ok = true;
    std::string disc = "0";
    json pts = json::array();
    for (const auto& t : scenario::classical_points(s, fd)) {
      orbit::IsotropyAt iso = orbit::isotropy_subalgebra_at(M, t);
      json ev = json::array(), od = json::array();
      for (const auto& v : iso.even) ev.push_back(lie_vector_string(g, v));
      for (const auto& v : iso.odd) od.push_back(lie_vector_string(g, v));
      pts.push_back({{"label", t.label}, {"even", ev}, {"odd", od}, {"dim", iso.dim().to_string()}});
      if (fd.expect_isotropy_dim && !(iso.dim() == *fd.expect_isotropy_dim)) {
        ok = false;
        disc = t.label + ": dim " + iso.dim().to_string() + " expected " + fd.expect_isotropy_dim->to_string();
      }
    }
    rep.add("isotropy subalgebra " + fd.name, ok, disc, {{"points", pts}});
  }
}

struct InvariantsResult {
  orbit::InvariantReport report;
  int cutoff = 3;
};

inline InvariantsResult compute_invariants(const scenario::Scenario& s, const scenario::InvariantsDecl& d,
                                           std::optional<int> cutoff_override) {
  int cutoff = s.effective_cutoff(cutoff_override, d.cutoff);
  return {orbit::invariant_subalgebra(s.morphism.at(d.source), s.morphism.at(d.target), cutoff, d.witnesses), cutoff};
}

inline void orbit_invariants(Report& rep, const scenario::Scenario& s, std::optional<int> cutoff_override) {
  require(!s.invariants.empty(), "invariants checks");
  for (const auto& d : s.invariants) {
    InvariantsResult r = compute_invariants(s, d, cutoff_override);
    json det = {{"basis", elements_json(r.report.basis)},
                {"cutoff", r.cutoff},
                {"multiplicatively_closed", r.report.multiplicatively_closed},
                {"products_beyond_cutoff", r.report.products_beyond_cutoff},
                {"missing_witnesses", r.report.missing_witnesses}};
    bool ok = r.report.multiplicatively_closed && r.report.missing_witnesses.empty();
    std::string disc = "0";
    if (!r.report.missing_witnesses.empty()) disc = r.report.missing_witnesses.front();
    if (d.expect) {
      det["expected"] = elements_json(*d.expect);
      std::vector<SuperElement> all = r.report.basis;
      all.insert(all.end(), d.expect->begin(), d.expect->end());
      Coordinatized c = coordinatize(all);
      ScalarMatrix a(c.rows.begin(), c.rows.begin() + static_cast<long>(r.report.basis.size()));
      ScalarMatrix b(c.rows.begin() + static_cast<long>(r.report.basis.size()), c.rows.end());
      if (!same_span(a, b)) {
        ok = false;
        disc = "computed span differs from the expected span";
      }
    }
    rep.add("invariants " + d.name, ok, disc, det);
  }
}

inline void orbit_quotient(Report& rep, const scenario::Scenario& s, std::optional<int> cutoff_override) {
  require(!s.quotients.empty(), "quotient checks");
  for (const auto& d : s.quotients) {
    const scenario::InvariantsDecl* iv = nullptr;
    for (const auto& x : s.invariants)
      if (x.name == d.invariants) iv = &x;
    InvariantsResult r = compute_invariants(s, *iv, cutoff_override);
    int cutoff = s.effective_cutoff(cutoff_override, d.cutoff);
    orbit::QuotientCheck q =
        orbit::quotient_presentation_check(s.morphism.at(d.map), r.report.basis, cutoff, d.body_constant);
    bool expected = d.expect.value_or(true);
    json det = {{"injective", q.injective},
                {"image_equals_invariants", q.image_equals_invariants},
                {"image", elements_json(q.image)},
                {"invariants", elements_json(r.report.basis)},
                {"cutoff", cutoff},
                {"body_constant", d.body_constant},
                {"expected", expected}};
    std::string disc = "0";
    if (q.ok() != expected)
      disc = !q.injective ? "map is not injective on the cutoff space" : "image differs from the invariants";
    rep.add("quotient " + d.name, q.ok() == expected, disc, det);
  }
}

inline void kks_matrix_cmd(Report& rep, const scenario::Scenario& s) {
  require(!s.functionals.empty(), "functional declarations");
  for (const auto& fd : s.functionals) {
    const LieSuperAlgebra& g = s.lie.at(fd.lie);
    kks::KKSMatrix m = kks::kks_matrix(g, s.functional.at(fd.name));
    bool skew = kks::is_super_skew(m), even = kks::is_even_form(m);
    rep.add("kks " + fd.name + " super-skew", skew, skew ? "0" : "Omega_ij + (-1)^{|i||j|} Omega_ji != 0",
            {{"matrix", matrix_json(m.entries, g.parities(), g.parities())}});
    rep.add("kks " + fd.name + " even", even, even ? "0" : "an entry has the wrong parity");
  }
}

inline void kks_kernel_cmd(Report& rep, const scenario::Scenario& s) {
  require(!s.functionals.empty(), "functional declarations");
  for (const auto& fd : s.functionals) {
    const LieSuperAlgebra& g = s.lie.at(fd.lie);
    const Functional& f = s.functional.at(fd.name);
    orbit::FundamentalFieldMatrix M = orbit::fundamental_field_matrix(g, f);
    auto points = scenario::classical_points(s, fd);
    orbit::RankReport rr = orbit::constant_rank_check(M, points);
    if (!rr.constant_rank) {
      rep.add("kernel " + fd.name, false, "not constant rank: the kernel comparison needs constant rank");
      continue;
    }
    kks::KKSMatrix m = kks::kks_matrix(g, f);
    auto iso = kks::isotropy_module(M);
    kks::KernelCheck kc = kks::kernel_check(m, iso, rr);
    json ker = json::array(), isoj = json::array();
    for (const auto& v : kc.kernel) ker.push_back(module_vector_string(g, v));
    for (const auto& v : iso) isoj.push_back(module_vector_string(g, v));
    rep.add("kernel " + fd.name + " = isotropy", kc.ok, kc.ok ? "0" : "radical and isotropy differ",
            {{"kernel", ker}, {"isotropy", isoj}});
    // pointwise: the evaluated radical has the dimension of g_x(t)
    for (const auto& t : points) {
      ScalarMatrix b = orbit::evaluate_matrix(kks::radical_system(m), t.values);
      orbit::SuperDim kd{0, 0};
      for (Parity p : {Parity::Even, Parity::Odd}) {
        ScalarMatrix sub;
        for (std::size_t j = 0; j < g.dim(); ++j)
          if (g.parity(static_cast<int>(j)) == p) sub.push_back(b[j]);
        long k = static_cast<long>(left_nullspace(sub, g.dim()).size());
        (p == Parity::Even ? kd.even : kd.odd) = k;
      }
      orbit::SuperDim id = orbit::isotropy_subalgebra_at(M, t).dim();
      bool ok = kd == id;
      rep.add("kernel " + fd.name + " at " + t.label, ok,
              ok ? "0" : "radical " + kd.to_string() + " vs isotropy " + id.to_string());
    }
  }
}

inline void kks_closed_cmd(Report& rep, const scenario::Scenario& s) {
  require(!s.functionals.empty(), "functional declarations");
  for (const auto& fd : s.functionals) {
    const LieSuperAlgebra& g = s.lie.at(fd.lie);
    kks::ClosednessReport c = kks::closedness_check(g, s.functional.at(fd.name));
    std::string disc = c.failures.empty() ? (c.exact ? "0" : "Omega != -df") : c.failures.front();
    rep.add("closed " + fd.name, c.ok, disc,
            {{"exact", c.exact}, {"failing_triples", c.failures.size()}});
  }
}

// ---- plancherel -----------------------------------------------------------------

inline std::vector<SuperElement> xi_monomials(const harmonic::OddFourier& F) {
  AlgebraBuilder b;
  for (const auto& s : F.xi) b.odd(s);
  MonomialBasis mb(b.build(), 0);
  std::vector<SuperElement> out;
  for (std::size_t i = 0; i < mb.size(); ++i) out.push_back(embed(mb.element(i), F.alg));
  return out;
}

inline void plancherel_cmd(Report& rep, int n, bool inversion, bool planch) {
  if (n < 1 || n > 6) throw UsageError("--n must be between 1 and 6");
  harmonic::OddFourier F = harmonic::odd_fourier(n);
  auto basis = xi_monomials(F);
  rep.info["n"] = n;
  rep.info["constant"] = harmonic::inversion_constant(n).to_string();
  rep.info["berezin"] = "D(xi1,...,xin) moves xi1...xin to the front in this order and reads the coefficient";
  if (inversion) {
    int bad = 0;
    std::string disc = "0";
    for (const auto& f : basis) {
      harmonic::Identity id = harmonic::fourier_inversion(F, f);
      if (!id.holds() && bad++ == 0) disc = f.to_string() + ": " + id.discrepancy().to_string();
    }
    rep.add("Fourier inversion on " + std::to_string(basis.size()) + " monomials", bad == 0, disc);
  }
  if (planch) {
    int bad = 0;
    std::string disc = "0";
    for (const auto& f : basis)
      for (const auto& g : basis) {
        harmonic::Identity id = harmonic::plancherel(F, f, g);
        if (!id.holds() && bad++ == 0) disc = f.to_string() + ", " + g.to_string() + ": " + id.discrepancy().to_string();
      }
    rep.add("Plancherel on " + std::to_string(basis.size() * basis.size()) + " monomial pairs", bad == 0, disc);
  }
}

// ---- rep ----------------------------------------------------------------------------

struct RepFamily {
  heisenberg::Row row;
  AlgebraPtr base;
  SuperElement gamma;
};

inline RepFamily rep_family(const std::string& name) {
  if (name == "clifford") {
    AlgebraPtr T = AlgebraBuilder().even("u").unit("u").build();
    return {heisenberg::Row::parse("ooe"), T, SuperElement::gen(T, "u")};
  }
  if (name == "odd-heisenberg") {
    AlgebraPtr T = AlgebraBuilder().odd("theta").build();
    return {heisenberg::Row::parse("eoo"), T, SuperElement::gen(T, "theta")};
  }
  throw UsageError("unknown family '" + name + "' (clifford or odd-heisenberg)");
}

inline json operator_json(const harmonic::RepOperator& A) {
  return matrix_json(A.m, A.basis_parities, A.basis_parities);
}

// R_v psi + i <f, v> psi on each basis vector, for v in the polarization {x, z}.
inline std::string polarization_residual(const harmonic::PolarizedModule& M, const heisenberg::Row& row) {
  heisenberg::InvariantFields f = heisenberg::invariant_fields(M.ambient, row);
  SuperElement gamma = embed(M.gamma, M.ambient);
  for (std::size_t j = 0; j < M.basis.size(); ++j) {
    const TwistedElement& psi = M.basis[j];
    TwistedElement rx = harmonic::apply_field(f.Rx, psi);
    if (!rx.is_zero()) return "R_x on basis " + std::to_string(j) + ": " + rx.to_string();
    TwistedElement rz = harmonic::apply_field(f.Rz, psi) + (gamma * Scalar::i()) * psi;
    if (!rz.is_zero()) return "R_z + i gamma on basis " + std::to_string(j) + ": " + rz.to_string();
  }
  return "0";
}

inline void rep_cmd(Report& rep, const std::string& family, const std::string& action, bool verify, Rng& rng,
                    int trials) {
  RepFamily fam = rep_family(family);
  harmonic::PolarizedModule M = harmonic::polarized_space(fam.row, fam.gamma);
  json basis = json::array();
  for (const auto& b : M.basis) basis.push_back(b.to_string());
  rep.info["family"] = family;
  rep.info["row"] = fam.row.name();
  rep.info["rank"] = M.rank.to_string();
  rep.info["free"] = M.free;
  rep.info["basis"] = basis;
  rep.info["basis_parities"] = parities_json(M.parities);

  std::string pr = polarization_residual(M, fam.row);
  rep.add("polarization equations", pr == "0", pr);

  const char* names[3] = {"x", "y", "z"};
  std::array<harmonic::RepOperator, 3> D;
  for (int v = 0; v < 3; ++v) {
    D[v] = harmonic::dpi(M, fam.row, v);
    harmonic::RepOperator C = harmonic::dpi_closed(M, fam.row, v);
    rep.info["dpi"][names[v]] = operator_json(D[v]);
    bool ok = D[v] == C;
    rep.add(std::string("dpi(") + names[v] + ") from dual numbers = closed form", ok,
            ok ? "0" : D[v].to_string() + " vs " + C.to_string());
  }
  harmonic::RepOperator br = harmonic::super_bracket(D[0], D[1]);
  bool bok = br == D[2];
  rep.add("[dpi(x), dpi(y)] = dpi(z)", bok, bok ? "0" : br.to_string() + " vs " + D[2].to_string());

  AlgebraPtr R = harmonic::rep_parameter_algebra(M);
  std::vector<std::string> params;
  for (const auto& n : heisenberg::odd_names("eta", 4)) params.push_back(n);
  for (const auto& n : heisenberg::odd_names("s", 2)) params.push_back(n);

  std::optional<heisenberg::GroupPoint> given;
  if (!action.empty()) {
    std::vector<SuperElement> coords;
    try {
      TokenStream ts(tokenize(action));
      ExpressionParser p(ts, R);
      do coords.push_back(p.sum());
      while (ts.accept(","));
      if (!ts.at_end()) ts.fail("unexpected trailing input");
    } catch (const ParseError& e) {
      throw UsageError(std::string("--action: ") + e.what());
    }
    if (coords.size() != 3) throw UsageError("--action needs three coordinates a, b, c");
    given = heisenberg::GroupPoint{coords[0], coords[1], coords[2], fam.row};
    if (!given->valid()) throw UsageError("--action: coordinate parities must be (" + fam.row.name() + ")");
    json images = json::array();
    for (const auto& b : M.basis) images.push_back(harmonic::pi_polarized(*given, b).to_string());
    rep.info["action"] = {{"point", {coords[0].to_string(), coords[1].to_string(), coords[2].to_string()}},
                          {"images", images}};
  }
  if (verify) {
    int bad = 0;
    std::string disc = "0";
    for (int t = 0; t < trials; ++t) {
      heisenberg::GroupPoint g1 = given && t == 0 ? *given : random_group_point(R, fam.row, rng, params);
      heisenberg::GroupPoint g2 = random_group_point(R, fam.row, rng, params);
      harmonic::HomomorphismCheck h = harmonic::homomorphism_check(M, g1, g2);
      if (!h.ok && bad++ == 0) disc = h.failures.front();
    }
    rep.add("pi(g1 g2) = pi(g1) pi(g2) on " + std::to_string(trials) + " random pairs", bad == 0, disc);
  }
}

// ---- gl -------------------------------------------------------------------------------

inline void gl_cmd(Report& rep, int m, int n, Rng& rng, int trials) {
  if (m < 0 || n < 0 || m + n < 1 || m + n > 4) throw UsageError("--m and --n must give 1 <= m + n <= 4");
  AlgebraPtr R = AlgebraBuilder().odd("e1").odd("e2").odd("e3").odd("e4").build();
  auto sig = SuperMatrix::signature(m, n);
  SuperMatrix one = SuperMatrix::identity(R, sig);
  int assoc = 0, unit = 0, inv = 0, even = 0;
  for (int t = 0; t < trials; ++t) {
    SuperMatrix a = random_gl_point(R, m, n, rng), b = random_gl_point(R, m, n, rng), c = random_gl_point(R, m, n, rng);
    if ((a * b) * c != a * (b * c)) ++assoc;
    if (a * one != a || one * a != a) ++unit;
    SuperMatrix ai = a.inverse();
    if (a * ai != one || ai * a != one) ++inv;
    if (!(a * b).is_even() || !ai.is_even()) ++even;
  }
  std::string tag = "GL(" + std::to_string(m) + "|" + std::to_string(n) + ") ";
  auto add = [&](const std::string& what, int bad) {
    rep.add(tag + what + " (" + std::to_string(trials) + " random points)", bad == 0,
            bad == 0 ? "0" : std::to_string(bad) + " failures");
  };
  add("associativity", assoc);
  add("identity", unit);
  add("two-sided inverse", inv);
  add("closure under product and inverse", even);
  rep.info["test_algebra"] = "Grassmann algebra on e1..e4";
}

// ---- forms -----------------------------------------------------------------------------

inline void forms_cmd(Report& rep, int k, Rng& rng, int trials) {
  if (k < 1 || k > 6) throw UsageError("--k must be between 1 and 6");
  FormAlgebra F = form_algebra(heisenberg::odd_names("x", k));
  Derivation d = de_rham_differential(F);
  DeRhamAction act = de_rham_action(F);
  // a#(omega) = omega + tau d omega, evaluated on fixed examples
  auto x = [&](int i) { return SuperElement::gen(F.algebra, F.coords[i]); };
  auto dx = [&](int i) { return SuperElement::gen(F.algebra, F.differentials[i]); };
  SuperElement tau = SuperElement::gen(act.extended, act.tau);
  auto ext = [&](const SuperElement& e) { return embed(e, act.extended); };
  std::vector<std::pair<std::string, std::pair<SuperElement, SuperElement>>> examples{
      {"a#(x1) = x1 + tau dx1", {act.action(x(0)), ext(x(0)) + tau * ext(dx(0))}},
      {"a#(dx1) = dx1", {act.action(dx(0)), ext(dx(0))}}};
  if (k >= 2)
    examples.push_back({"a#(x1 dx2) = x1 dx2 + tau dx1 dx2",
                        {act.action(x(0) * dx(1)), ext(x(0) * dx(1)) + tau * ext(dx(0) * dx(1))}});
  for (const auto& [name, lr] : examples) {
    SuperElement diff = lr.first - lr.second;
    rep.add(name, diff.is_zero(), diff.to_string());
  }
  // action axioms with two odd parameters
  AlgebraPtr two = AlgebraBuilder::from(*F.algebra).odd("tau1").odd("tau2").build();
  SuperElement t1 = SuperElement::gen(two, "tau1"), t2 = SuperElement::gen(two, "tau2");
  std::map<std::string, SuperElement> first, second;
  for (std::size_t i = 0; i < F.coords.size(); ++i) {
    first.emplace(F.coords[i], SuperElement::gen(two, F.coords[i]) + t1 * SuperElement::gen(two, F.differentials[i]));
    second.emplace(F.coords[i], SuperElement::gen(two, F.coords[i]) + t2 * SuperElement::gen(two, F.differentials[i]));
  }
  AlgebraMorphism a1 = AlgebraMorphism::substitution(two, two, first);
  AlgebraMorphism a2 = AlgebraMorphism::substitution(F.algebra, two, second);
  int dd = 0, axiom = 0, unit = 0;
  std::string disc_dd = "0", disc_ax = "0";
  AlgebraMorphism kill = AlgebraMorphism::substitution(act.extended, F.algebra, {{act.tau, SuperElement::zero(F.algebra)}});
  for (int t = 0; t < trials; ++t) {
    SuperElement w = random_element(F.algebra, rng, 5, 2);
    SuperElement d2 = d(d(w));
    if (!d2.is_zero() && dd++ == 0) disc_dd = w.to_string() + ": " + d2.to_string();
    SuperElement dw = embed(d(w), two);
    SuperElement lhs = embed(w, two) + (t1 + t2) * dw;
    SuperElement rhs = a1(a2(w));
    if (lhs != rhs && axiom++ == 0) disc_ax = w.to_string() + ": " + (lhs - rhs).to_string();
    if (kill(act.action(w)) != w) ++unit;
  }
  std::string n = " (" + std::to_string(trials) + " random forms)";
  rep.add("d^2 = 0" + n, dd == 0, disc_dd);
  rep.add("a(tau1 + tau2) = a(tau1) a(tau2)" + n, axiom == 0, disc_ax);
  rep.add("a(0) = id" + n, unit == 0, unit == 0 ? "0" : std::to_string(unit) + " failures");
  rep.info["slice"] = "t = 0: the dilation factor exp(n t) is not modelled";
}

inline double elapsed_ms(std::chrono::steady_clock::time_point start) {
  return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
}

// JSON without the timing field, for golden comparisons.
inline json strip_timing(json j) {
  j.erase("timing_ms");
  return j;
}

}  // namespace superorbit::cli
