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

#include "clqpe/harness.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <exception>
#include <fstream>
#include <numbers>
#include <numeric>
#include <sstream>
#include <thread>

#include "clqpe/error.hpp"
#include "clqpe/fermion.hpp"
#include "clqpe/sector.hpp"

namespace clqpe {

namespace {

std::string trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r\n");
  return std::string(s.substr(b, e - b + 1));
}

std::vector<std::string> split(std::string_view s, char sep) {
  std::vector<std::string> out;
  std::size_t start = 0;
  while (true) {
    const auto pos = s.find(sep, start);
    out.push_back(trim(s.substr(start, pos == std::string_view::npos ? std::string_view::npos : pos - start)));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return out;
}

int parse_orbital(const std::string& tok, int n_orbitals, const std::string& context) {
  char* end = nullptr;
  const long v = std::strtol(tok.c_str(), &end, 10);
  if (tok.empty() || end == tok.c_str() || *end != '\0') throw DomainError("bad orbital index '" + tok + "' in " + context);
  if (v < 1 || v > n_orbitals)
    throw IndexError("orbital " + std::to_string(v) + " outside 1.." + std::to_string(n_orbitals) + " in " + context);
  return static_cast<int>(v - 1);
}

// "6a" -> (5, alpha)
std::pair<int, bool> parse_spin_orbital(std::string tok, int n_orbitals, const std::string& context) {
  if (tok.size() < 2) throw DomainError("bad spin orbital '" + tok + "' in " + context);
  const char spin = tok.back();
  if (spin != 'a' && spin != 'b') throw DomainError("spin orbital '" + tok + "' must end in a or b");
  tok.pop_back();
  return {parse_orbital(tok, n_orbitals, context), spin == 'a'};
}

std::vector<int> parse_occupation_list(const std::string& s, int n_orbitals, const std::string& context) {
  std::vector<int> out;
  if (trim(s).empty()) return out;
  for (const auto& tok : split(s, ',')) out.push_back(parse_orbital(tok, n_orbitals, context));
  return out;
}

double to_ev(double hartree) { return hartree * kHartreeToEv; }

}  // namespace

WeightedDeterminantState parse_initial_state(const std::string& spec, int n_orbitals, int n_alpha, int n_beta) {
  const Determinant ref = Determinant::reference(n_alpha, n_beta);
  std::vector<WeightedDeterminantState::Term> terms;
  for (const auto& raw : split(spec, ';')) {
    if (raw.empty()) continue;
    double coef = 1.0;
    std::string body = raw;
    {
      char* end = nullptr;
      const double v = std::strtod(raw.c_str(), &end);
      if (end != raw.c_str()) {
        coef = v;
        body = trim(std::string_view(end));
      }
    }
    Determinant det = ref;
    if (body == "ref") {
    } else if (body.rfind("exc:", 0) == 0) {
      for (const auto& ex : split(std::string_view(body).substr(4), ',')) {
        const auto arrow = ex.find("->");
        if (arrow == std::string::npos) throw DomainError("excitation '" + ex + "' lacks '->'");
        const auto [from, from_alpha] = parse_spin_orbital(trim(ex.substr(0, arrow)), n_orbitals, raw);
        const auto [to, to_alpha] = parse_spin_orbital(trim(ex.substr(arrow + 2)), n_orbitals, raw);
        if (from_alpha != to_alpha) throw DomainError("excitation '" + ex + "' flips spin");
        std::uint64_t& mask = from_alpha ? det.alpha : det.beta;
        if (!(mask >> from & 1u)) throw DomainError("excitation '" + ex + "' removes from an unoccupied orbital");
        mask &= ~(std::uint64_t{1} << from);
        if (mask >> to & 1u) throw DomainError("excitation '" + ex + "' adds to an occupied orbital");
        mask |= std::uint64_t{1} << to;
      }
    } else if (body.rfind("occ:", 0) == 0) {
      const auto parts = split(std::string_view(body).substr(4), '|');
      if (parts.size() != 2) throw DomainError("occupation '" + body + "' must read occ:<alpha>|<beta>");
      det = Determinant::from_lists(parse_occupation_list(parts[0], n_orbitals, raw),
                                    parse_occupation_list(parts[1], n_orbitals, raw));
    } else {
      throw DomainError("unrecognized initial-state term '" + raw + "'");
    }
    terms.emplace_back(coef, det);
  }
  if (terms.empty()) throw DomainError("initial-state spec is empty");
  for (const auto& [c, det] : terms) {
    if (det.n_alpha() != terms.front().second.n_alpha() || det.n_beta() != terms.front().second.n_beta())
      throw DomainError("initial-state determinants differ in (n_alpha, n_beta)");
  }
  return WeightedDeterminantState::normalized(std::move(terms));
}

std::string excitation_label(const Determinant& det, int n_alpha, int n_beta) {
  const Determinant ref = Determinant::reference(n_alpha, n_beta);
  std::string holes, parts;
  auto add = [](std::string& s, std::uint64_t mask, bool beta) {
    for (; mask; mask &= mask - 1) {
      if (!s.empty()) s += ' ';
      s += std::to_string(std::countr_zero(mask) + 1);
      if (beta) s += 'b';
    }
  };
  add(holes, ref.alpha & ~det.alpha, false);
  add(holes, ref.beta & ~det.beta, true);
  add(parts, det.alpha & ~ref.alpha, false);
  add(parts, det.beta & ~ref.beta, true);
  if (holes.empty() && parts.empty()) return "Phi_0";
  return "Phi_{" + holes + "}^{" + parts + "}";
}

nlohmann::json ExperimentConfig::to_json() const {
  nlohmann::json j;
  j["fcidump"] = fcidump;
  j["backend"] = to_string(backend);
  j["estimator"] = to_string(estimator);
  j["delta"] = delta;
  j["bits"] = bits;
  j["shots"] = shots;
  j["initial"] = initial;
  j["e_shift"] = e_shift ? nlohmann::json(*e_shift) : nlohmann::json(nullptr);
  j["window"] = window ? nlohmann::json::array({window->first, window->second}) : nlohmann::json(nullptr);
  j["seed"] = seed;
  j["rpe_repetitions"] = rpe_repetitions ? nlohmann::json(*rpe_repetitions) : nlohmann::json(nullptr);
  j["trotter_order"] = trotter_order;
  j["cluster_tolerance"] = cluster_tolerance;
  j["fci_oracle"] = fci_oracle;
  j["orbital_names"] = orbital_names;
  j["out"] = out;
  return j;
}

ExperimentConfig ExperimentConfig::from_json(const nlohmann::json& j) {
  if (!j.is_object()) throw ConfigError("config must be a JSON object");
  ExperimentConfig c;
  try {
    for (const auto& [key, v] : j.items()) {
      if (key == "fcidump") c.fcidump = v.get<std::string>();
      else if (key == "backend") c.backend = parse_backend(v.get<std::string>());
      else if (key == "estimator") c.estimator = parse_estimator(v.get<std::string>());
      else if (key == "delta") c.delta = v.get<double>();
      else if (key == "bits") c.bits = v.get<int>();
      else if (key == "shots") c.shots = v.get<int>();
      else if (key == "initial") c.initial = v.get<std::string>();
      else if (key == "e_shift") c.e_shift = v.is_null() ? std::nullopt : std::optional<double>(v.get<double>());
      else if (key == "window") {
        if (v.is_null()) c.window.reset();
        else if (!v.is_array() || v.size() != 2) throw ConfigError("window must be [lo, hi]");
        else c.window = std::pair{v[0].get<double>(), v[1].get<double>()};
      } else if (key == "seed") c.seed = v.get<std::uint64_t>();
      else if (key == "rpe_repetitions") c.rpe_repetitions = v.is_null() ? std::nullopt : std::optional<int>(v.get<int>());
      else if (key == "trotter_order") c.trotter_order = v.get<std::string>();
      else if (key == "cluster_tolerance") c.cluster_tolerance = v.get<double>();
      else if (key == "fci_oracle") c.fci_oracle = v.get<bool>();
      else if (key == "orbital_names") c.orbital_names = v.get<std::vector<std::string>>();
      else if (key == "out") c.out = v.get<std::string>();
      else if (key == "threads") c.threads = v.get<int>();
      else throw ConfigError("unknown config key '" + key + "'");
    }
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError(std::string("config type error: ") + e.what());
  }
  return c;
}

void ExperimentConfig::validate() const {
  if (fcidump.empty()) throw ConfigError("fcidump path is required");
  if (!(delta > 0.0) || !std::isfinite(delta)) throw ConfigError("delta must be positive");
  if (bits < 1) throw ConfigError("bits must be at least 1");
  if (shots < 1) throw ConfigError("shots must be at least 1");
  if (!(cluster_tolerance > 0.0)) throw ConfigError("cluster_tolerance must be positive");
  if (window && !(window->second > window->first)) throw ConfigError("window must satisfy lo < hi");
  if (rpe_repetitions && *rpe_repetitions < 1) throw ConfigError("rpe_repetitions must be at least 1");
  if (trotter_order != "lexicographic" && trotter_order != "grouped")
    throw ConfigError("trotter_order must be lexicographic or grouped");
  if (threads < 0) throw ConfigError("threads must be non-negative");
}

std::vector<StateCluster> cluster_samples(const std::vector<double>& energies, double tol) {
  if (!(tol > 0.0)) throw DomainError("cluster tolerance must be positive");
  std::vector<std::size_t> order(energies.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(), [&](auto a, auto b) { return energies[a] < energies[b]; });
  std::vector<StateCluster> out;
  for (std::size_t i = 0; i < order.size(); ++i) {
    if (i == 0 || energies[order[i]] - energies[order[i - 1]] > tol) out.emplace_back();
    out.back().members.push_back(order[i]);
  }
  for (auto& c : out) {
    std::sort(c.members.begin(), c.members.end());
    double sum = 0.0;
    c.min = c.max = energies[c.members.front()];
    for (auto m : c.members) {
      sum += energies[m];
      c.min = std::min(c.min, energies[m]);
      c.max = std::max(c.max, energies[m]);
    }
    const double n = static_cast<double>(c.count());
    c.mean = sum / n;
    double ss = 0.0;
    for (auto m : c.members) ss += (energies[m] - c.mean) * (energies[m] - c.mean);
    c.std = c.count() > 1 ? std::sqrt(ss / (n - 1.0)) : 0.0;
  }
  std::stable_sort(out.begin(), out.end(), [](const StateCluster& a, const StateCluster& b) {
    return a.count() != b.count() ? a.count() > b.count() : a.mean < b.mean;
  });
  return out;
}

std::vector<ExcitationLine> excitation_report(const StateCluster& ground, const std::vector<StateCluster>& excited) {
  std::vector<ExcitationLine> lines;
  for (const auto& c : excited) {
    ExcitationLine l;
    l.energy = c.mean;
    l.std = c.std;
    l.count = c.count();
    l.omega_ev = to_ev(c.mean - ground.mean);
    l.omega_uncertainty_ev = to_ev(std::hypot(c.std, ground.std));
    if (c.fci && ground.fci) l.fci_omega_ev = to_ev(c.fci->energy - ground.fci->energy);
    lines.push_back(l);
  }
  return lines;
}

int resolve_threads(int requested) {
  if (requested > 0) return requested;
  if (const char* env = std::getenv("CORELEVEL_QPE_THREADS")) {
    char* end = nullptr;
    const long v = std::strtol(env, &end, 10);
    if (end != env && *end == '\0' && v > 0) return static_cast<int>(v);
    throw ConfigError(std::string("CORELEVEL_QPE_THREADS must be a positive integer, got '") + env + "'");
  }
  return std::max(1u, std::thread::hardware_concurrency());
}

namespace {

[[noreturn]] void rethrow_annotated(std::exception_ptr e, std::size_t shot) {
  const std::string prefix = "shot " + std::to_string(shot) + ": ";
  try {
    std::rethrow_exception(e);
  } catch (const BudgetError& x) {
    throw BudgetError(prefix + x.what());
  } catch (const WindowError& x) {
    throw WindowError(prefix + x.what());
  } catch (const AmbiguityError& x) {
    throw AmbiguityError(prefix + x.what());
  } catch (const NumericalError& x) {
    throw NumericalError(prefix + x.what());
  }
}

void assign_fci(ExperimentResult& r, const SectorSpectrum& spectrum, const Eigen::VectorXcd& coefficients) {
  const double quantum = 2.0 * std::numbers::pi / (std::ldexp(1.0, r.config.bits) * r.config.delta);
  const auto& basis = spectrum.basis();
  for (auto& c : r.clusters) {
    const double tol = quantum + 3.0 * c.std / std::sqrt(static_cast<double>(c.count()));
    std::optional<std::size_t> best;
    double best_w = 0.0;
    for (Eigen::Index k = 0; k < coefficients.size(); ++k) {
      const double w = std::norm(coefficients(k));
      if (w < 1e-12) continue;
      if (std::abs(spectrum.eigenvalue(static_cast<std::size_t>(k)) - c.mean) > tol) continue;
      if (!best || w > best_w) {
        best = static_cast<std::size_t>(k);
        best_w = w;
      }
    }
    if (!best) continue;
    std::size_t b = 0;
    while (b + 1 < spectrum.n_blocks() && spectrum.block_offset(b + 1) <= *best) ++b;
    const Eigen::VectorXd v = spectrum.eigenvector(b, *best - spectrum.block_offset(b));
    FciAssignment a;
    a.energy = spectrum.eigenvalue(*best);
    a.overlap = best_w;
    a.s2 = spin_squared(basis, v);
    for (const auto& wd : leading_determinants(basis, v, 4))
      a.leading.emplace_back(wd.coefficient, excitation_label(wd.det, basis.n_alpha(), basis.n_beta()));
    c.fci = std::move(a);
  }
}

}  // namespace

std::shared_ptr<const SectorSpectrum> build_spectrum(const IntegralSet& ints) {
  auto basis = std::make_shared<const SectorBasis>(enumerate_basis(ints.n_orbitals, ints.n_alpha(), ints.n_beta()));
  auto h = std::make_shared<const SectorHamiltonian>(build_sector_hamiltonian(ints, basis));
  return std::make_shared<const SectorSpectrum>(h);
}

ExperimentResult run_experiment(const ExperimentConfig& config) { return run_experiment(config, nullptr); }

ExperimentResult run_experiment(const ExperimentConfig& config, std::shared_ptr<const SectorSpectrum> spectrum) {
  config.validate();
  ExperimentResult r;
  r.config = config;
  const IntegralSet ints = read_fcidump(config.fcidump);
  r.n_orbitals = ints.n_orbitals;
  r.n_electrons = ints.n_electrons;
  r.checksum = integral_checksum(ints);
  const int na = ints.n_alpha(), nb = ints.n_beta();
  const std::uint64_t ref_mask = Determinant::reference(na, nb).spin_mask();
  r.reference_energy = slater_condon(ints, ref_mask, ref_mask);
  r.e_shift = config.e_shift.value_or(r.reference_energy);
  r.window = config.window.value_or(std::pair{r.reference_energy - 40.0, r.reference_energy + 20.0});
  if (r.window.second - r.window.first > 2.0 * std::numbers::pi / config.delta)
    throw ConfigError("window wider than 2pi/delta; decoding would be ambiguous");
  if (!config.orbital_names.empty() && config.orbital_names.size() != static_cast<std::size_t>(ints.n_orbitals))
    throw ConfigError("orbital_names needs one entry per orbital");
  try {
    r.initial = parse_initial_state(config.initial, ints.n_orbitals, na, nb);
  } catch (const Error& e) {
    throw ConfigError(std::string("initial state: ") + e.what());
  }
  if (r.initial.n_alpha() != na || r.initial.n_beta() != nb)
    throw ConfigError("initial state electron counts differ from the FCIDUMP");

  if (spectrum && !(spectrum->hamiltonian().integrals && *spectrum->hamiltonian().integrals == ints &&
                    spectrum->basis().n_alpha() == na && spectrum->basis().n_beta() == nb &&
                    !spectrum->basis().irrep()))
    throw ConfigError("supplied spectrum was not built from " + config.fcidump);
  auto make_spectrum = [&] { return spectrum ? spectrum : build_spectrum(ints); };

  std::unique_ptr<EvolutionOracle> oracle;
  if (config.backend == Backend::kExact) {
    spectrum = make_spectrum();
    oracle = std::make_unique<ExactSectorOracle>(spectrum, config.delta, r.e_shift);
  } else {
    const int n_qubits = 2 * ints.n_orbitals;
    const int extra = config.estimator == Estimator::kQpe ? config.bits : 0;
    if (n_qubits + extra > 26)
      throw ConfigError("trotter backend needs " + std::to_string(n_qubits + extra) +
                        " qubits; the statevector limit is 26 (use --backend exact)");
    const FermionTermSum ferm = expand_to_spin_orbitals(ints);
    TrotterSequence seq = config.trotter_order == "grouped"
                              ? trotter_sequence(group_hermitian_terms(ferm), ferm.core_energy)
                              : trotter_sequence(jordan_wigner(ferm));
    seq.n_qubits = n_qubits;
    oracle = std::make_unique<TrotterOracle>(std::move(seq), config.delta, r.e_shift);
    if (config.fci_oracle) {
      try {
        if (!spectrum) (void)enumerate_basis(ints.n_orbitals, na, nb, 20000);
        spectrum = make_spectrum();
      } catch (const CapacityError&) {
        // Sector too large for the labeling oracle; clusters stay unlabeled.
      }
    }
  }
  const Eigen::VectorXcd initial = oracle->prepare(r.initial);

  if (config.estimator == Estimator::kRpe) {
    r.schedule = config.rpe_repetitions ? rpe_constant_schedule(config.bits, *config.rpe_repetitions)
                                        : rpe_schedule(config.bits);
    if (rpe_applications(r.schedule) > kApplicationBudget)
      throw BudgetError("RPE schedule exceeds the per-shot application budget");
  }
  std::vector<double> distribution;
  if (config.estimator == Estimator::kQpe) distribution = qpe_distribution(*oracle, initial, config.bits);

  const auto shots = static_cast<std::size_t>(config.shots);
  r.samples.resize(shots);
  std::vector<std::exception_ptr> errors(shots);
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < shots; i = next++) {
      try {
        EnergySample s;
        s.shot = i;
        s.seed = derive_seed(config.seed, i);
        s.estimator = config.estimator;
        s.bits = config.bits;
        Philox4x32 rng(s.seed);
        s.phase = config.estimator == Estimator::kQpe ? qpe_sample_phase(distribution, rng)
                                                      : rpe_phase(*oracle, initial, r.schedule, rng);
        s.energy = decode_phase(s.phase, config.delta, r.e_shift, r.window.first, r.window.second);
        r.samples[i] = s;
      } catch (...) {
        errors[i] = std::current_exception();
      }
    }
  };
  const int n_threads = std::min<int>(resolve_threads(config.threads), static_cast<int>(shots));
  std::vector<std::thread> pool;
  for (int t = 1; t < n_threads; ++t) pool.emplace_back(worker);
  worker();
  for (auto& t : pool) t.join();
  for (std::size_t i = 0; i < shots; ++i) {
    if (errors[i]) rethrow_annotated(errors[i], i);
  }

  std::vector<double> energies;
  for (const auto& s : r.samples) energies.push_back(s.energy);
  r.clusters = cluster_samples(energies, config.cluster_tolerance);
  if (config.fci_oracle && spectrum) {
    const Eigen::VectorXcd c =
        config.backend == Backend::kExact ? initial
                                          : spectrum->to_eigenbasis(sector_vector(spectrum->basis(), r.initial));
    assign_fci(r, *spectrum, c);
  }
  return r;
}

nlohmann::json to_json(const ExperimentResult& r) {
  nlohmann::json j;
  j["schema"] = "corelevel-qpe/run/1";
  j["config"] = r.config.to_json();
  j["provenance"] = {{"seed", r.config.seed},
                     {"rng", "philox4x32-10"},
                     {"seed_derivation", "philox4x32-10(counter=(shot,0x5eed), key=master)"},
                     {"integral_checksum", r.checksum},
                     {"n_orbitals", r.n_orbitals},
                     {"n_electrons", r.n_electrons},
                     {"reference_energy", r.reference_energy},
                     {"e_shift", r.e_shift},
                     {"window", {r.window.first, r.window.second}},
                     {"rpe_schedule", r.schedule}};
  std::vector<std::string> names = r.config.orbital_names;
  if (names.empty()) {
    for (int p = 1; p <= r.n_orbitals; ++p) names.push_back(std::to_string(p));
  }
  j["orbital_names"] = names;
  nlohmann::json dets = nlohmann::json::array();
  for (const auto& [c, det] : r.initial.terms()) {
    std::vector<int> a, b;
    for (int p : det.alpha_list()) a.push_back(p + 1);
    for (int p : det.beta_list()) b.push_back(p + 1);
    dets.push_back({{"coefficient", c.real()},
                    {"coefficient_imag", c.imag()},
                    {"alpha", a},
                    {"beta", b},
                    {"label", excitation_label(det, r.initial.n_alpha(), r.initial.n_beta())}});
  }
  j["initial_state"] = {{"spec", r.config.initial}, {"determinants", dets}};
  nlohmann::json samples = nlohmann::json::array();
  for (const auto& s : r.samples)
    samples.push_back({{"shot", s.shot}, {"seed", s.seed}, {"phase", s.phase}, {"energy", s.energy}});
  j["samples"] = samples;
  nlohmann::json clusters = nlohmann::json::array();
  for (std::size_t k = 0; k < r.clusters.size(); ++k) {
    const auto& c = r.clusters[k];
    nlohmann::json cj = {{"rank", k},
                         {"count", c.count()},
                         {"fraction", static_cast<double>(c.count()) / static_cast<double>(r.samples.size())},
                         {"mean", c.mean},
                         {"std", c.std},
                         {"min", c.min},
                         {"max", c.max},
                         {"members", c.members}};
    if (c.fci) {
      nlohmann::json lead = nlohmann::json::array();
      for (const auto& [coef, label] : c.fci->leading) lead.push_back({{"coefficient", coef}, {"label", label}});
      cj["fci"] = {{"energy", c.fci->energy}, {"overlap", c.fci->overlap}, {"s2", c.fci->s2}, {"leading", lead}};
    } else {
      cj["fci"] = nullptr;
    }
    clusters.push_back(cj);
  }
  j["clusters"] = clusters;
  return j;
}

void write_samples_csv(const ExperimentResult& r, std::ostream& out) {
  std::vector<long> cluster_of(r.samples.size(), -1);
  for (std::size_t k = 0; k < r.clusters.size(); ++k) {
    for (auto m : r.clusters[k].members) cluster_of[m] = static_cast<long>(k);
  }
  out << "shot,seed,estimator,bits,phase,energy,cluster\n";
  char buf[160];
  for (const auto& s : r.samples) {
    std::snprintf(buf, sizeof buf, "%zu,%llu,%s,%d,%.17g,%.17g,%ld\n", s.shot, static_cast<unsigned long long>(s.seed),
                  to_string(s.estimator).c_str(), s.bits, s.phase, s.energy, cluster_of[s.shot]);
    out << buf;
  }
}

void write_outputs(const ExperimentResult& r) {
  if (r.config.out.empty()) throw ConfigError("no output path configured");
  {
    std::ofstream f(r.config.out, std::ios::binary);
    if (!f) throw ConfigError("cannot write " + r.config.out);
    f << to_json(r).dump(2) << '\n';
  }
  std::string csv = r.config.out;
  if (csv.size() > 5 && csv.compare(csv.size() - 5, 5, ".json") == 0) csv.resize(csv.size() - 5);
  csv += ".csv";
  std::ofstream f(csv, std::ios::binary);
  if (!f) throw ConfigError("cannot write " + csv);
  write_samples_csv(r, f);
}

}  // namespace clqpe
