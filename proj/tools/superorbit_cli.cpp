// superorbit: command-line front end. Exit codes: 0 all checks pass, 1 a check failed,
// 2 usage or input error.

#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "superorbit/cli.hpp"

using namespace superorbit;
using cli::Report;

namespace {

scenario::Scenario load(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw cli::UsageError("cannot read scenario '" + path + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  try {
    return scenario::parse_scenario(ss.str());
  } catch (const ParseError& e) {
    throw cli::UsageError(path + ":" + e.what());
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Symbolic checks for coadjoint orbits of Lie supergroups"};
  app.require_subcommand(1);
  bool as_json = false;
  app.add_flag("--json", as_json, "print a JSON report instead of text");
  app.fallthrough();

  Report rep;
  std::function<void()> run;

  // heisenberg
  auto* heis = app.add_subcommand("heisenberg", "Heisenberg family checks");
  std::string parity;
  int h_trials = 10;
  std::uint64_t seed = 1;
  heis->add_option("--parity", parity, "row: eee, ooe, eoo or oeo (default all)");
  heis->add_option("--trials", h_trials, "random points for the group check")->check(CLI::Range(1, 1000));
  heis->add_option("--seed", seed, "random seed");
  heis->require_subcommand(1);
  heis->add_subcommand("fields", "invariant vector field brackets")->callback([&] {
    run = [&] {
      rep.command = "heisenberg fields";
      for (const auto& r : cli::rows_for(parity)) cli::heisenberg_fields(rep, r);
    };
  });
  heis->add_subcommand("coadjoint", "ad* by flow, closed form and structure constants")->callback([&] {
    run = [&] {
      rep.command = "heisenberg coadjoint";
      for (const auto& r : cli::rows_for(parity)) cli::heisenberg_coadjoint(rep, r);
    };
  });
  heis->add_subcommand("group", "group axioms on random points")->callback([&] {
    run = [&] {
      rep.command = "heisenberg group";
      Rng rng(seed);
      for (const auto& r : cli::rows_for(parity)) cli::heisenberg_group(rep, r, rng, h_trials);
    };
  });

  // orbit
  auto* orb = app.add_subcommand("orbit", "orbit checks on a scenario file");
  orb->require_subcommand(1);
  std::string scn;
  std::optional<int> cutoff;
  auto scenario_cmd = [&](CLI::App* parent, const std::string& name, const std::string& help,
                          std::function<void(const scenario::Scenario&)> body) {
    auto* c = parent->add_subcommand(name, help);
    c->add_option("scenario", scn, "scenario file")->required();
    c->callback([&, name, parent, body] {
      run = [&, name, parent, body] {
        rep.command = parent->get_name() + " " + name;
        body(load(scn));
      };
    });
    return c;
  };
  orb->add_option("--degree-cutoff", cutoff, "override the scenario degree cutoff")->check(CLI::Range(0, 12));
  scenario_cmd(orb, "check-rank", "constant rank of the fundamental field matrix",
               [&](const scenario::Scenario& s) { cli::orbit_check_rank(rep, s); });
  scenario_cmd(orb, "isotropy", "isotropy ideals and isotropy subalgebras", [&](const scenario::Scenario& s) {
    cli::orbit_isotropy(rep, s, s.effective_cutoff(cutoff, std::nullopt));
  });
  scenario_cmd(orb, "invariants", "invariant subalgebras up to the cutoff",
               [&](const scenario::Scenario& s) { cli::orbit_invariants(rep, s, cutoff); });
  scenario_cmd(orb, "quotient-check", "presentation of the orbit algebra",
               [&](const scenario::Scenario& s) { cli::orbit_quotient(rep, s, cutoff); });

  // kks
  auto* kk = app.add_subcommand("kks", "KKS form checks on a scenario file");
  kk->require_subcommand(1);
  scenario_cmd(kk, "matrix", "the form Omega_ij = f([e_i, e_j])",
               [&](const scenario::Scenario& s) { cli::kks_matrix_cmd(rep, s); });
  scenario_cmd(kk, "kernel", "radical against the isotropy module",
               [&](const scenario::Scenario& s) { cli::kks_kernel_cmd(rep, s); });
  scenario_cmd(kk, "closed", "Chevalley-Eilenberg closedness",
               [&](const scenario::Scenario& s) { cli::kks_closed_cmd(rep, s); });

  // plancherel
  auto* pl = app.add_subcommand("plancherel", "odd Fourier transform identities on A^{0|n}");
  int pn = 2;
  bool inv = false, planch = false;
  pl->add_option("--n", pn, "odd dimension")->required();
  pl->add_flag("--check-inversion", inv);
  pl->add_flag("--check-plancherel", planch);
  pl->callback([&] {
    run = [&] {
      rep.command = "plancherel";
      if (!inv && !planch) inv = planch = true;
      cli::plancherel_cmd(rep, pn, inv, planch);
    };
  });

  // rep
  auto* rp = app.add_subcommand("rep", "polarized representation of a Heisenberg family");
  std::string family, action;
  bool verify = false;
  int r_trials = 20;
  rp->add_option("family", family, "clifford or odd-heisenberg")->required();
  rp->add_option("--action", action, "group point \"a, b, c\" in eta1..eta4, s1, s2");
  rp->add_flag("--verify", verify, "check the homomorphism property on random pairs");
  rp->add_option("--trials", r_trials)->check(CLI::Range(1, 1000));
  rp->add_option("--seed", seed);
  rp->callback([&] {
    run = [&] {
      rep.command = "rep " + family;
      Rng rng(seed);
      cli::rep_cmd(rep, family, action, verify, rng, r_trials);
    };
  });

  // gl
  auto* gl = app.add_subcommand("gl", "GL(m|n) group axioms on random points");
  int gm = 1, gn = 1, g_trials = 20;
  gl->add_option("--m", gm)->required();
  gl->add_option("--n", gn)->required();
  gl->add_option("--trials", g_trials)->check(CLI::Range(1, 1000));
  gl->add_option("--seed", seed);
  gl->callback([&] {
    run = [&] {
      rep.command = "gl";
      Rng rng(seed);
      cli::gl_cmd(rep, gm, gn, rng, g_trials);
    };
  });

  // forms
  auto* fm = app.add_subcommand("forms", "de Rham differential and the odd line action");
  int fk = 2, f_trials = 20;
  fm->add_option("--k", fk)->required();
  fm->add_option("--trials", f_trials)->check(CLI::Range(1, 1000));
  fm->add_option("--seed", seed);
  fm->callback([&] {
    run = [&] {
      rep.command = "forms";
      Rng rng(seed);
      cli::forms_cmd(rep, fk, rng, f_trials);
    };
  });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  auto start = std::chrono::steady_clock::now();
  try {
    run();
  } catch (const cli::UsageError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const ParseError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  if (as_json)
    std::cout << rep.to_json(cli::elapsed_ms(start)).dump(2) << "\n";
  else
    std::cout << rep.to_text();
  return rep.pass() ? 0 : 1;
}
