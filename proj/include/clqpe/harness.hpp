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

#pragma once

#include <cstdint>
#include <iosfwd>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "clqpe/determinant.hpp"
#include "clqpe/fcidump.hpp"
#include "clqpe/phase_estimation.hpp"

namespace clqpe {

inline constexpr double kHartreeToEv = 27.211386245988;

/// Parses an initial-state spec: terms separated by ';', each
/// "<coefficient> <body>" with body one of
///   ref                      the reference determinant
///   exc:1a->6a,5b->6b        excitations applied to the reference
///   occ:1,2,3|1,2,4          explicit alpha|beta occupations
/// Orbital indices are 1-based spatial indices; a/b select the spin. Each
/// determinant carries the canonical (+1) phase; the result is rescaled to
/// unit norm.
WeightedDeterminantState parse_initial_state(const std::string& spec, int n_orbitals, int n_alpha, int n_beta);

/// Spectroscopic label such as "Phi_{1 5b}^{6 6b}" relative to the reference
/// (bar rendered as a trailing 'b'), using 1-based orbital numbers.
std::string excitation_label(const Determinant& det, int n_alpha, int n_beta);

struct ExperimentConfig {
  std::string fcidump;
  Backend backend = Backend::kExact;
  Estimator estimator = Estimator::kRpe;
  double delta = 0.1;
  int bits = 13;
  int shots = 200;
  std::string initial = "1.0 ref";
  std::optional<double> e_shift;               // default: reference energy
  std::optional<std::pair<double, double>> window;  // default: [E_ref - 40, E_ref + 20)
  std::uint64_t seed = 20200101;
  std::optional<int> rpe_repetitions;  // constant per-stage count; default ceil(2.5(K-j)+0.5), even
  std::string trotter_order = "lexicographic";  // or "grouped"
  double cluster_tolerance = 0.01;
  bool fci_oracle = true;
  std::vector<std::string> orbital_names;
  std::string out;  // JSON path; the CSV goes next to it
  int threads = 0;  // 0: CORELEVEL_QPE_THREADS or hardware concurrency

  nlohmann::json to_json() const;  // thread count excluded
  static ExperimentConfig from_json(const nlohmann::json& j);  // ConfigError on bad fields
  void validate() const;                                       // ConfigError
};

struct FciAssignment {
  double energy = 0.0;
  double overlap = 0.0;  // |<initial|E_k>|^2
  double s2 = 0.0;
  std::vector<std::pair<double, std::string>> leading;  // (coefficient, label)
};

struct StateCluster {
  std::vector<std::size_t> members;  // indices into the sample list
  double mean = 0.0;
  double std = 0.0;  // sample standard deviation (n-1), 0 for singletons
  double min = 0.0;
  double max = 0.0;
  std::size_t count() const noexcept { return members.size(); }
  std::optional<FciAssignment> fci;
};

/// Single-linkage 1-D clustering with gap threshold `tol`; ordered by
/// descending count, then ascending mean.
std::vector<StateCluster> cluster_samples(const std::vector<double>& energies, double tol);

struct ExcitationLine {
  double energy = 0.0;
  double std = 0.0;
  std::size_t count = 0;
  double omega_ev = 0.0;
  double omega_uncertainty_ev = 0.0;  // stds combined in quadrature
  std::optional<double> fci_omega_ev;
};

std::vector<ExcitationLine> excitation_report(const StateCluster& ground, const std::vector<StateCluster>& excited);

struct ExperimentResult {
  ExperimentConfig config;
  double reference_energy = 0.0;
  double e_shift = 0.0;
  std::pair<double, double> window;
  std::string checksum;
  int n_orbitals = 0;
  int n_electrons = 0;
  std::vector<int> schedule;  // RPE only
  WeightedDeterminantState initial;
  std::vector<EnergySample> samples;
  std::vector<StateCluster> clusters;
};

ExperimentResult run_experiment(const ExperimentConfig& config);

class SectorSpectrum;
/// Exact sector spectrum of the file's (n_alpha, n_beta) sector.
std::shared_ptr<const SectorSpectrum> build_spectrum(const IntegralSet& ints);
/// Same, reusing `spectrum` for the exact backend and FCI labeling. It must
/// come from the integrals named in the config (ConfigError otherwise).
ExperimentResult run_experiment(const ExperimentConfig& config, std::shared_ptr<const SectorSpectrum> spectrum);

nlohmann::json to_json(const ExperimentResult& r);
void write_samples_csv(const ExperimentResult& r, std::ostream& out);
/// Writes <out> (JSON) and <out stem>.csv.
void write_outputs(const ExperimentResult& r);

/// Worker count: explicit value, else CORELEVEL_QPE_THREADS, else hardware.
int resolve_threads(int requested);

}  // namespace clqpe
