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

#include <array>
#include <cstdint>
#include <memory>
#include <mutex>
#include <string>
#include <vector>

#include <Eigen/Core>

#include "clqpe/determinant.hpp"
#include "clqpe/rng.hpp"
#include "clqpe/sector.hpp"
#include "clqpe/statevector.hpp"

namespace clqpe {

enum class Backend { kTrotter, kExact };
enum class Estimator { kQpe, kRpe };

std::string to_string(Backend b);
std::string to_string(Estimator e);
Backend parse_backend(const std::string& s);      // ConfigError on unknown names
Estimator parse_estimator(const std::string& s);  // ConfigError on unknown names

/// Hard cap on oracle applications per shot.
inline constexpr std::uint64_t kApplicationBudget = std::uint64_t{1} << 24;

/// U = exp(-i (H - e_shift) delta) acting on a backend-specific working
/// representation of the system state.
class EvolutionOracle {
 public:
  EvolutionOracle(double delta, double e_shift);
  virtual ~EvolutionOracle() = default;

  double delta() const noexcept { return delta_; }
  double e_shift() const noexcept { return e_shift_; }
  virtual Backend backend() const noexcept = 0;

  virtual Eigen::VectorXcd prepare(const WeightedDeterminantState& state) const = 0;
  /// v <- U^power v.
  virtual void apply_power(Eigen::Ref<Eigen::VectorXcd> v, std::uint64_t power) const = 0;

  /// True when the representation is an eigenbasis of U; eigenphase(k) is
  /// then the phase of entry k, in [0, 2pi).
  virtual bool diagonal() const noexcept { return false; }
  virtual double eigenphase(std::size_t /*k*/) const { return 0.0; }

 private:
  double delta_;
  double e_shift_;
};

/// Gate-level first-order Trotter product on the full 2N-qubit register.
/// Small registers cache dense matrices of U^(2^j) built from the gates.
class TrotterOracle final : public EvolutionOracle {
 public:
  TrotterOracle(TrotterSequence seq, double delta, double e_shift, int dense_cache_qubits = 10);

  Backend backend() const noexcept override { return Backend::kTrotter; }
  int n_qubits() const noexcept { return seq_.n_qubits; }
  const TrotterSequence& sequence() const noexcept { return seq_; }

  Eigen::VectorXcd prepare(const WeightedDeterminantState& state) const override;
  void apply_power(Eigen::Ref<Eigen::VectorXcd> v, std::uint64_t power) const override;

 private:
  const Eigen::MatrixXcd& power_matrix(int j) const;

  TrotterSequence seq_;  // already shifted by e_shift
  bool cached_;
  mutable std::array<std::once_flag, 64> once_;
  mutable std::array<Eigen::MatrixXcd, 64> powers_;
};

/// Exact evolution in the eigenbasis of a sector Hamiltonian.
class ExactSectorOracle final : public EvolutionOracle {
 public:
  ExactSectorOracle(std::shared_ptr<const SectorSpectrum> spectrum, double delta, double e_shift);

  Backend backend() const noexcept override { return Backend::kExact; }
  const SectorSpectrum& spectrum() const noexcept { return *spectrum_; }

  /// Eigenbasis coefficients of the state.
  Eigen::VectorXcd prepare(const WeightedDeterminantState& state) const override;
  void apply_power(Eigen::Ref<Eigen::VectorXcd> v, std::uint64_t power) const override;
  bool diagonal() const noexcept override { return true; }
  double eigenphase(std::size_t k) const override;

 private:
  std::shared_ptr<const SectorSpectrum> spectrum_;
};

struct EnergySample {
  std::size_t shot = 0;
  std::uint64_t seed = 0;
  Estimator estimator = Estimator::kQpe;
  int bits = 0;
  double phase = 0.0;   // [0, 2pi)
  double energy = 0.0;  // Hartree
};

/// Unique E = e_shift - phase/delta + k 2pi/delta in the half-open window [lo, hi).
double decode_phase(double phase, double delta, double e_shift, double lo, double hi);

struct CostEstimate {
  std::uint64_t applications = 0;
  int bits = 0;
};

/// ceil(pi / (epsilon delta)) applications and the matching bit count.
CostEstimate estimate_cost(double epsilon, double delta);

/// Outcome distribution of the ancilla register of textbook QPE with `bits`
/// ancillas. Diagonal oracles use the closed-form Fejer kernel; others run
/// the circuit on the joint statevector.
std::vector<double> qpe_distribution(const EvolutionOracle& oracle, const Eigen::VectorXcd& initial, int bits);

/// Draws one register outcome; returns its phase 2 pi y / 2^bits.
double qpe_sample_phase(const std::vector<double>& distribution, Philox4x32& rng);

/// Per-stage repetition counts of the single-ancilla estimator, one entry per
/// stage (power 2^j), each applied to both the X and Y experiments.
std::vector<int> rpe_schedule(int bits);
std::vector<int> rpe_constant_schedule(int bits, int repetitions);

/// One RPE shot. `state` collapses across stages.
double rpe_phase(const EvolutionOracle& oracle, Eigen::VectorXcd state, const std::vector<int>& schedule,
                 Philox4x32& rng);

/// Total oracle applications of an RPE schedule (both bases).
std::uint64_t rpe_applications(const std::vector<int>& schedule);

struct EnergyWindow {
  double lo = 0.0;
  double hi = 0.0;
};

/// Single-sample conveniences: the RNG is Philox seeded with `seed`.
EnergySample qpe_shot(const EvolutionOracle& oracle, const Eigen::VectorXcd& initial, int bits, std::uint64_t seed,
                      const EnergyWindow& window);
EnergySample rpe_shot(const EvolutionOracle& oracle, const Eigen::VectorXcd& initial, int bits, std::uint64_t seed,
                      const EnergyWindow& window);

}  // namespace clqpe
