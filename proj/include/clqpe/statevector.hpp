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
#include <span>
#include <vector>

#include <Eigen/Core>

#include "clqpe/determinant.hpp"
#include "clqpe/fermion.hpp"
#include "clqpe/pauli.hpp"
#include "clqpe/rng.hpp"

namespace clqpe {

/// Dense statevector; basis index bit q is the state of qubit q.
struct QuantumState {
  int n_qubits = 0;
  Eigen::VectorXcd amplitudes;

  static QuantumState basis(int n_qubits, std::uint64_t index);
  double norm() const { return amplitudes.norm(); }
};

/// Injects the superposition at the determinants' qubit basis indices with
/// the canonical (+1) determinant phase. Extra qubits beyond 2N start in |0>.
QuantumState prepare_state(const WeightedDeterminantState& spec, int n_qubits);

/// state <- exp(-i theta P) state. Only amplitudes whose `control_mask` bits
/// are all set are touched.
void apply_pauli_rotation(QuantumState& state, const PauliString& p, double theta, std::uint64_t control_mask = 0);

void apply_hadamard(QuantumState& state, int qubit);
/// diag(1, e^{i angle}) on `qubit`, optionally controlled by `control_mask`.
void apply_phase(QuantumState& state, int qubit, double angle, std::uint64_t control_mask = 0);
void apply_swap(QuantumState& state, int a, int b);

/// Ordered product of Pauli rotations realizing one first-order Trotter step
/// exp(-i H delta) ~ prod_j exp(-i alpha_j P_j delta), plus the identity phase.
struct TrotterSequence {
  int n_qubits = 0;
  double identity_offset = 0.0;
  std::vector<PauliTerm> rotations;
};

/// Raw Pauli terms in lexicographic order.
TrotterSequence trotter_sequence(const PauliSum& h);
/// Hermitian groups in their deterministic order; each group's strings
/// commute, so every group factor is exact and conserves N and S_z.
TrotterSequence trotter_sequence(const std::vector<HermitianGroup>& groups, double core_energy);

/// Subtracts e_shift from the identity phase.
TrotterSequence shift_identity(const TrotterSequence& seq, double e_shift);

void apply_trotter_step(QuantumState& state, const TrotterSequence& seq, double delta, std::uint64_t control_mask = 0);

/// (Trotter step of exp(-i H delta))^power conditioned on `control` = |1>,
/// including the controlled global phase exp(-i offset delta power).
void apply_controlled_evolution(QuantumState& state, const TrotterSequence& seq, double delta, std::uint64_t power,
                                int control);
void apply_controlled_evolution(QuantumState& state, const PauliSum& h, double delta, std::uint64_t power,
                                int control);

/// Inverse QFT on a big-endian register (register[0] is the most significant bit).
void apply_inverse_qft(QuantumState& state, std::span<const int> reg);
void apply_qft(QuantumState& state, std::span<const int> reg);

/// Big-endian integer encoded by the register bits of a basis index.
std::uint64_t register_value(std::uint64_t basis, std::span<const int> reg) noexcept;

/// Marginal outcome probabilities of the register, indexed by register value.
std::vector<double> register_distribution(const QuantumState& state, std::span<const int> reg);

/// Born-rule sample of the register; collapses and renormalizes the state.
std::uint64_t measure(QuantumState& state, std::span<const int> reg, Philox4x32& rng);

double expectation(const QuantumState& state, const PauliSum& h);

}  // namespace clqpe
