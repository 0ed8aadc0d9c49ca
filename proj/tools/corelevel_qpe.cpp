// Copyright 2026 The corelevel-qpe Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// corelevel-qpe: command-line entry point.
//
// Exit codes: 0 success, 2 configuration or input error, 3 numerical error.

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "clqpe/error.hpp"
#include "clqpe/fcidump.hpp"
#include "clqpe/fermion.hpp"
#include "clqpe/harness.hpp"
#include "clqpe/pauli.hpp"
#include "clqpe/sector.hpp"

namespace {

using namespace clqpe;

void print_line(const char* fmt, auto... args) {
  char buf[512];
  std::snprintf(buf, sizeof buf, fmt, args...);
  std::cout << buf << '\n';
}

int cmd_validate(const std::string& path) {
  const IntegralSet ints = read_fcidump(path);
  const int docc = ints.n_beta();
  print_line("orbitals      %d", ints.n_orbitals);
  print_line("electrons     %d (ms2 %d)", ints.n_electrons, ints.ms2);
  std::string sym;
  for (int s : ints.orbital_irreps) sym += std::to_string(s) + " ";
  print_line("orbsym        %s", sym.empty() ? "(none)" : sym.c_str());
  print_line("core energy   %.12f", ints.core_energy);
  const auto rep = check_symmetry(ints);
  print_line("max |h_pq - h_qp|           %.3e", rep.max_one_body_asymmetry);
  if (rep.has_orbsym) print_line("max symmetry-forbidden      %.3e", rep.max_symmetry_breaking);
  if (ints.ms2 == 0) {
    print_line("reference energy %.12f", hf_energy(ints, docc));
    const auto oe = compute_orbital_energies(ints, docc);
    for (std::size_t p = 0; p < oe.computed.size(); ++p) {
      if (oe.from_file)
        print_line("  eps[%zu] %16.10f  (file %16.10f)", p + 1, oe.computed[p], (*oe.from_file)[p]);
      else
        print_line("  eps[%zu] %16.10f", p + 1, oe.computed[p]);
    }
    if (oe.from_file) print_line("max orbital-energy deviation %.3e", oe.max_deviation);
  }
  print_line("checksum      %s", integral_checksum(ints).c_str());
  return 0;
}

int cmd_compile(const std::string& path, const std::string& out, double bound_delta) {
  const IntegralSet ints = read_fcidump(path);
  const FermionTermSum ferm = expand_to_spin_orbitals(ints);
  const PauliSum h = jordan_wigner(ferm);
  const auto groups = group_hermitian_terms(ferm);
  print_line("qubits            %d", h.n_qubits());
  print_line("pauli terms       %zu (+ identity %.12f)", h.size(), h.identity_offset());
  print_line("hermitian groups  %zu (predicted strings %zu)", groups.size(), predicted_pauli_term_count(groups));
  if (bound_delta > 0.0) {
    const auto b = trotter_error_bound(h, bound_delta);
    print_line("trotter bound     %.6e at delta %.4g (%s)", b.bound, bound_delta, b.exact ? "exact" : "sampled");
  }
  if (!out.empty()) {
    std::ofstream f(out, std::ios::binary);
    if (!f) throw ConfigError("cannot write " + out);
    write_pauli_sum(h, f);
  }
  return 0;
}

int cmd_fci(const std::string& path, int nstates, bool show_s2, std::optional<int> irrep, bool dense, int leading) {
  const IntegralSet ints = read_fcidump(path);
  std::optional<int> label;
  if (irrep) {
    if (*irrep < 1 || *irrep > 8) throw ConfigError("--irrep takes a 1-based FCIDUMP irrep label (1..8)");
    label = *irrep - 1;
  }
  auto basis = std::make_shared<const SectorBasis>(
      enumerate_basis(ints.n_orbitals, ints.n_alpha(), ints.n_beta(), 5'000'000, label, ints.orbital_irreps));
  if (basis->size() == 0) throw ConfigError("the selected sector is empty");
  const auto h = build_sector_hamiltonian(ints, basis);
  FciOptions opt;
  opt.force_dense = dense;
  opt.n_leading = leading;
  const auto sol = fci_solve(h, std::min<int>(nstates, static_cast<int>(basis->size())), opt);
  print_line("sector dimension %zu", basis->size());
  for (Eigen::Index k = 0; k < sol.eigenvalues.size(); ++k) {
    const double omega = (sol.eigenvalues(k) - sol.eigenvalues(0)) * kHartreeToEv;
    if (show_s2)
      print_line("%3ld  E = %18.10f  dE = %10.4f eV  <S^2> = %.6f", static_cast<long>(k), sol.eigenvalues(k), omega,
                 sol.s2[static_cast<std::size_t>(k)]);
    else
      print_line("%3ld  E = %18.10f  dE = %10.4f eV", static_cast<long>(k), sol.eigenvalues(k), omega);
    for (const auto& w : sol.leading[static_cast<std::size_t>(k)])
      print_line("       %+.6f  %s", w.coefficient, excitation_label(w.det, basis->n_alpha(), basis->n_beta()).c_str());
  }
  return 0;
}

nlohmann::json load_json(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw ConfigError("cannot open " + path);
  try {
    return nlohmann::json::parse(f);
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError(path + ": " + e.what());
  }
}

void print_clusters(const nlohmann::json& run, std::size_t top) {
  const auto& clusters = run.at("clusters");
  const double n = static_cast<double>(run.at("samples").size());
  for (std::size_t k = 0; k < std::min(top, clusters.size()); ++k) {
    const auto& c = clusters[k];
    std::string fci;
    if (!c.at("fci").is_null()) {
      char buf[96];
      std::snprintf(buf, sizeof buf, "  FCI %.6f <S^2>=%.3f", c["fci"]["energy"].get<double>(),
                    c["fci"]["s2"].get<double>());
      fci = buf;
    }
    print_line("  #%zu  n=%4zu (%5.1f%%)  E = %.6f +- %.6f%s", k, c["count"].get<std::size_t>(),
               100.0 * c["count"].get<double>() / n, c["mean"].get<double>(), c["std"].get<double>(), fci.c_str());
  }
}

StateCluster cluster_from_json(const nlohmann::json& c) {
  StateCluster s;
  s.mean = c.at("mean").get<double>();
  s.std = c.at("std").get<double>();
  s.members = c.at("members").get<std::vector<std::size_t>>();
  if (!c.at("fci").is_null()) {
    FciAssignment a;
    a.energy = c["fci"]["energy"].get<double>();
    a.s2 = c["fci"]["s2"].get<double>();
    s.fci = a;
  }
  return s;
}

int cmd_report(const std::string& ground_path, const std::string& excited_path, double min_fraction) {
  const auto g = load_json(ground_path);
  const auto e = load_json(excited_path);
  try {
    if (g.at("clusters").empty()) throw ConfigError("ground run has no clusters");
    const StateCluster ground = cluster_from_json(g["clusters"][0]);
    std::vector<StateCluster> excited;
    const double n = static_cast<double>(e.at("samples").size());
    for (const auto& c : e.at("clusters")) {
      if (c.at("count").get<double>() / n >= min_fraction) excited.push_back(cluster_from_json(c));
    }
    print_line("ground  %.6f +- %.6f Hartree (n=%zu)", ground.mean, ground.std, ground.count());
    print_line("%-12s %-22s %-20s %s", "cluster", "E (Hartree)", "omega (eV)", "FCI omega (eV)");
    const auto lines = excitation_report(ground, excited);
    for (std::size_t k = 0; k < lines.size(); ++k) {
      const auto& l = lines[k];
      char fci[32] = "-";
      if (l.fci_omega_ev) std::snprintf(fci, sizeof fci, "%.2f", *l.fci_omega_ev);
      print_line("#%-3zu n=%-6zu %.6f +- %.6f   %8.2f +- %.2f     %s", k, l.count, l.energy, l.std, l.omega_ev,
                 l.omega_uncertainty_ev, fci);
    }
  } catch (const nlohmann::json::exception& x) {
    throw ConfigError(std::string("malformed run file: ") + x.what());
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Core-level quantum phase estimation simulator"};
  app.require_subcommand(1);

  std::string fcidump_path;
  auto* validate = app.add_subcommand("validate", "Parse an FCIDUMP and report integrity checks");
  validate->add_option("fcidump", fcidump_path, "FCIDUMP file")->required();

  std::string compile_out;
  double bound_delta = 0.0;
  auto* compile = app.add_subcommand("compile", "Jordan-Wigner compile to a Pauli sum");
  compile->add_option("fcidump", fcidump_path, "FCIDUMP file")->required();
  compile->add_option("--out", compile_out, "Write the Pauli sum here");
  compile->add_option("--trotter-bound", bound_delta, "Report the first-order Trotter bound at this delta");

  int nstates = 4, leading = 4;
  bool show_s2 = false, dense = false;
  std::optional<int> irrep;
  auto* fci = app.add_subcommand("fci", "Full CI eigenpairs of the (n_alpha, n_beta) sector");
  fci->add_option("fcidump", fcidump_path, "FCIDUMP file")->required();
  fci->add_option("--nstates", nstates, "Number of lowest states")->check(CLI::PositiveNumber);
  fci->add_flag("--s2", show_s2, "Print <S^2>");
  fci->add_option("--irrep", irrep, "Restrict to determinants of this 1-based irrep label");
  fci->add_flag("--dense", dense, "Force the dense eigensolver");
  fci->add_option("--leading", leading, "Leading determinants per state");

  ExperimentConfig cfg;
  std::string config_path, backend, estimator, window;
  auto* run = app.add_subcommand("run", "Sample phase-estimation energies");
  run->add_option("--config", config_path, "JSON config; flags override its fields");
  run->add_option("--fcidump", cfg.fcidump, "FCIDUMP file");
  run->add_option("--backend", backend, "trotter | exact");
  run->add_option("--estimator", estimator, "qpe | rpe");
  run->add_option("--delta", cfg.delta, "Time step (1/Hartree)");
  run->add_option("--bits", cfg.bits, "Ancilla bits (QPE) or bits of precision (RPE)");
  run->add_option("--shots", cfg.shots, "Independent estimations");
  run->add_option("--initial", cfg.initial, "Initial-state spec, e.g. '1.0 exc:1a->6a'");
  run->add_option("--seed", cfg.seed, "Master seed");
  run->add_option("--window", window, "Decoding window LO,HI in Hartree");
  run->add_option("--e-shift", cfg.e_shift, "Energy shift (default: reference energy)");
  run->add_option("--rpe-reps", cfg.rpe_repetitions, "Constant RPE repetitions per stage and basis");
  run->add_option("--trotter-order", cfg.trotter_order, "lexicographic | grouped");
  run->add_option("--threads", cfg.threads, "Worker threads (default CORELEVEL_QPE_THREADS)");
  run->add_option("--out", cfg.out, "Output JSON path (CSV written alongside)");

  std::string ground_path, excited_path;
  double min_fraction = 0.05;
  auto* report = app.add_subcommand("report", "Excitation energies from a ground run and an excited run");
  report->add_option("--ground", ground_path, "Run JSON of the reference guess")->required();
  report->add_option("--excited", excited_path, "Run JSON of the excited guess")->required();
  report->add_option("--min-fraction", min_fraction, "Report clusters holding at least this share of shots");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (*validate) return cmd_validate(fcidump_path);
    if (*compile) return cmd_compile(fcidump_path, compile_out, bound_delta);
    if (*fci) return cmd_fci(fcidump_path, nstates, show_s2, irrep, dense, leading);
    if (*report) return cmd_report(ground_path, excited_path, min_fraction);
    if (*run) {
      ExperimentConfig merged = config_path.empty() ? ExperimentConfig{} : ExperimentConfig::from_json(load_json(config_path));
      auto given = [&](const char* flag) { return run->count(flag) > 0; };
      if (given("--fcidump")) merged.fcidump = cfg.fcidump;
      if (given("--backend")) merged.backend = parse_backend(backend);
      if (given("--estimator")) merged.estimator = parse_estimator(estimator);
      if (given("--delta")) merged.delta = cfg.delta;
      if (given("--bits")) merged.bits = cfg.bits;
      if (given("--shots")) merged.shots = cfg.shots;
      if (given("--initial")) merged.initial = cfg.initial;
      if (given("--seed")) merged.seed = cfg.seed;
      if (given("--e-shift")) merged.e_shift = cfg.e_shift;
      if (given("--rpe-reps")) merged.rpe_repetitions = cfg.rpe_repetitions;
      if (given("--trotter-order")) merged.trotter_order = cfg.trotter_order;
      if (given("--threads")) merged.threads = cfg.threads;
      if (given("--out")) merged.out = cfg.out;
      if (given("--window")) {
        double lo = 0.0, hi = 0.0;
        char tail = 0;
        if (std::sscanf(window.c_str(), "%lf,%lf%c", &lo, &hi, &tail) != 2)
          throw ConfigError("--window expects LO,HI");
        merged.window = std::pair{lo, hi};
      }
      if (merged.out.empty()) throw ConfigError("--out is required");
      const auto result = run_experiment(merged);
      write_outputs(result);
      const auto j = to_json(result);
      print_line("%d shots, e_shift %.6f, window [%.3f, %.3f)", merged.shots, result.e_shift, result.window.first,
                 result.window.second);
      print_clusters(j, 5);
      return 0;
    }
  } catch (const NumericalError& e) {
    std::cerr << "numerical error: " << e.what() << '\n';
    return 3;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  }
  return 0;
}
