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

#include "clqpe/statevector.hpp"

#include <bit>
#include <cmath>
#include <numbers>

#include "clqpe/error.hpp"

namespace clqpe {

namespace {

void require_qubit(const QuantumState& state, int q) {
  if (q < 0 || q >= state.n_qubits) throw IndexError("qubit " + std::to_string(q) + " out of range");
}

double wrap_angle(double a) { return std::remainder(a, 2.0 * std::numbers::pi); }

}  // namespace

QuantumState QuantumState::basis(int n_qubits, std::uint64_t index) {
  if (n_qubits < 0 || n_qubits > 30) throw CapacityError("statevector limited to 30 qubits");
  QuantumState s{n_qubits, Eigen::VectorXcd::Zero(Eigen::Index{1} << n_qubits)};
  if (index >= static_cast<std::uint64_t>(s.amplitudes.size())) throw IndexError("basis index out of range");
  s.amplitudes(static_cast<Eigen::Index>(index)) = 1.0;
  return s;
}

QuantumState prepare_state(const WeightedDeterminantState& spec, int n_qubits) {
  if (2 * spec.min_orbitals() > n_qubits)
    throw IndexError("determinant orbital index exceeds the " + std::to_string(n_qubits) + "-qubit register");
  QuantumState state = QuantumState::basis(n_qubits, 0);
  state.amplitudes.setZero();
  for (const auto& [c, det] : spec.terms()) state.amplitudes(static_cast<Eigen::Index>(det.spin_mask())) += c;
  return state;
}

void apply_pauli_rotation(QuantumState& state, const PauliString& p, double theta, std::uint64_t control_mask) {
  if (p.n_qubits() > state.n_qubits) throw DomainError("Pauli string wider than the state");
  if ((p.x_mask() | p.z_mask()) & control_mask) throw DomainError("rotation acts on its own control qubit");
  const double c = std::cos(theta), s = std::sin(theta);
  auto& amp = state.amplitudes;
  const auto dim = static_cast<std::uint64_t>(amp.size());
  const std::uint64_t x = p.x_mask();
  if (x == 0) {
    // Diagonal: each basis state picks up cos - i sin * (+-1 or +-i).
    const cplx plus(c, -s), minus(c, s);
    for (std::uint64_t b = 0; b < dim; ++b) {
      if ((b & control_mask) != control_mask) continue;
      const cplx ph = p.phase_on(b);
      amp(static_cast<Eigen::Index>(b)) *= (ph.real() > 0 ? plus : minus);
    }
    return;
  }
  const std::uint64_t pivot = std::uint64_t{1} << (63 - std::countl_zero(x));
  const cplx minus_i_s(0.0, -s);
  for (std::uint64_t b = 0; b < dim; ++b) {
    if ((b & pivot) || (b & control_mask) != control_mask) continue;
    const std::uint64_t partner = b ^ x;
    const cplx a0 = amp(static_cast<Eigen::Index>(b));
    const cplx a1 = amp(static_cast<Eigen::Index>(partner));
    amp(static_cast<Eigen::Index>(b)) = c * a0 + minus_i_s * p.phase_on(partner) * a1;
    amp(static_cast<Eigen::Index>(partner)) = c * a1 + minus_i_s * p.phase_on(b) * a0;
  }
}

void apply_hadamard(QuantumState& state, int qubit) {
  require_qubit(state, qubit);
  const std::uint64_t bit = std::uint64_t{1} << qubit;
  const double r = std::numbers::sqrt2 / 2.0;
  auto& amp = state.amplitudes;
  for (std::uint64_t b = 0; b < static_cast<std::uint64_t>(amp.size()); ++b) {
    if (b & bit) continue;
    const cplx a0 = amp(static_cast<Eigen::Index>(b)), a1 = amp(static_cast<Eigen::Index>(b | bit));
    amp(static_cast<Eigen::Index>(b)) = r * (a0 + a1);
    amp(static_cast<Eigen::Index>(b | bit)) = r * (a0 - a1);
  }
}

void apply_phase(QuantumState& state, int qubit, double angle, std::uint64_t control_mask) {
  require_qubit(state, qubit);
  const std::uint64_t mask = control_mask | (std::uint64_t{1} << qubit);
  const cplx ph = std::polar(1.0, angle);
  auto& amp = state.amplitudes;
  for (std::uint64_t b = 0; b < static_cast<std::uint64_t>(amp.size()); ++b) {
    if ((b & mask) == mask) amp(static_cast<Eigen::Index>(b)) *= ph;
  }
}

void apply_swap(QuantumState& state, int a, int b) {
  require_qubit(state, a);
  require_qubit(state, b);
  if (a == b) return;
  const std::uint64_t ba = std::uint64_t{1} << a, bb = std::uint64_t{1} << b;
  auto& amp = state.amplitudes;
  for (std::uint64_t i = 0; i < static_cast<std::uint64_t>(amp.size()); ++i) {
    if ((i & ba) && !(i & bb)) std::swap(amp(static_cast<Eigen::Index>(i)), amp(static_cast<Eigen::Index>(i ^ ba ^ bb)));
  }
}

TrotterSequence trotter_sequence(const PauliSum& h) {
  return {h.n_qubits(), h.identity_offset(), h.terms()};
}

TrotterSequence trotter_sequence(const std::vector<HermitianGroup>& groups, double core_energy) {
  TrotterSequence seq;
  seq.identity_offset = core_energy;
  for (const auto& g : groups) {
    seq.n_qubits = std::max(seq.n_qubits, g.compiled.n_qubits());
    seq.identity_offset += g.compiled.identity_offset();
    seq.rotations.insert(seq.rotations.end(), g.compiled.terms().begin(), g.compiled.terms().end());
  }
  return seq;
}

TrotterSequence shift_identity(const TrotterSequence& seq, double e_shift) {
  TrotterSequence out = seq;
  out.identity_offset -= e_shift;
  return out;
}

void apply_trotter_step(QuantumState& state, const TrotterSequence& seq, double delta, std::uint64_t control_mask) {
  for (const auto& t : seq.rotations) apply_pauli_rotation(state, t.string, t.coefficient * delta, control_mask);
  const double phase = wrap_angle(-seq.identity_offset * delta);
  if (control_mask == 0) {
    state.amplitudes *= std::polar(1.0, phase);
  } else {
    const int q = std::countr_zero(control_mask);
    apply_phase(state, q, phase, control_mask);
  }
}

void apply_controlled_evolution(QuantumState& state, const TrotterSequence& seq, double delta, std::uint64_t power,
                                int control) {
  require_qubit(state, control);
  if (control < seq.n_qubits) throw DomainError("control qubit overlaps the system register");
  const std::uint64_t mask = std::uint64_t{1} << control;
  for (std::uint64_t k = 0; k < power; ++k) {
    for (const auto& t : seq.rotations) apply_pauli_rotation(state, t.string, t.coefficient * delta, mask);
  }
  // Controlled global phase: kickback of the identity part onto the control.
  const double phase = std::fmod(-seq.identity_offset * delta, 2.0 * std::numbers::pi) * static_cast<double>(power);
  apply_phase(state, control, wrap_angle(phase));
}

void apply_controlled_evolution(QuantumState& state, const PauliSum& h, double delta, std::uint64_t power,
                                int control) {
  apply_controlled_evolution(state, trotter_sequence(h), delta, power, control);
}

namespace {

void check_register(const QuantumState& state, std::span<const int> reg) {
  std::uint64_t seen = 0;
  for (int q : reg) {
    require_qubit(state, q);
    const std::uint64_t bit = std::uint64_t{1} << q;
    if (seen & bit) throw DomainError("register lists qubit " + std::to_string(q) + " twice");
    seen |= bit;
  }
}

}  // namespace

void apply_qft(QuantumState& state, std::span<const int> reg) {
  check_register(state, reg);
  const int m = static_cast<int>(reg.size());
  for (int k = 0; k < m; ++k) {
    apply_hadamard(state, reg[k]);
    for (int l = k + 1; l < m; ++l) {
      const double angle = 2.0 * std::numbers::pi / std::ldexp(1.0, l - k + 1);
      apply_phase(state, reg[k], angle, std::uint64_t{1} << reg[l]);
    }
  }
  for (int k = 0; k < m / 2; ++k) apply_swap(state, reg[k], reg[m - 1 - k]);
}

void apply_inverse_qft(QuantumState& state, std::span<const int> reg) {
  check_register(state, reg);
  const int m = static_cast<int>(reg.size());
  for (int k = 0; k < m / 2; ++k) apply_swap(state, reg[k], reg[m - 1 - k]);
  for (int k = m - 1; k >= 0; --k) {
    for (int l = m - 1; l > k; --l) {
      const double angle = -2.0 * std::numbers::pi / std::ldexp(1.0, l - k + 1);
      apply_phase(state, reg[k], angle, std::uint64_t{1} << reg[l]);
    }
    apply_hadamard(state, reg[k]);
  }
}

std::uint64_t register_value(std::uint64_t basis, std::span<const int> reg) noexcept {
  std::uint64_t v = 0;
  for (int q : reg) v = (v << 1) | ((basis >> q) & 1u);
  return v;
}

std::vector<double> register_distribution(const QuantumState& state, std::span<const int> reg) {
  check_register(state, reg);
  std::vector<double> probs(std::size_t{1} << reg.size(), 0.0);
  for (std::uint64_t b = 0; b < static_cast<std::uint64_t>(state.amplitudes.size()); ++b)
    probs[register_value(b, reg)] += std::norm(state.amplitudes(static_cast<Eigen::Index>(b)));
  return probs;
}

std::uint64_t measure(QuantumState& state, std::span<const int> reg, Philox4x32& rng) {
  const auto probs = register_distribution(state, reg);
  double total = 0.0;
  for (double p : probs) total += p;
  const double u = rng.uniform() * total;
  std::uint64_t outcome = probs.size() - 1;
  double acc = 0.0;
  for (std::uint64_t y = 0; y < probs.size(); ++y) {
    acc += probs[y];
    if (u < acc) {
      outcome = y;
      break;
    }
  }
  while (probs[outcome] == 0.0 && outcome > 0) --outcome;  // guard against round-off at the tail
  const double scale = 1.0 / std::sqrt(probs[outcome]);
  for (std::uint64_t b = 0; b < static_cast<std::uint64_t>(state.amplitudes.size()); ++b) {
    auto& a = state.amplitudes(static_cast<Eigen::Index>(b));
    a = register_value(b, reg) == outcome ? a * scale : cplx{};
  }
  return outcome;
}

double expectation(const QuantumState& state, const PauliSum& h) {
  return state.amplitudes.dot(apply(h, state.amplitudes)).real();
}

}  // namespace clqpe
