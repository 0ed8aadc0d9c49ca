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
#include <vector>

#include <Eigen/Core>

#include "clqpe/fcidump.hpp"
#include "clqpe/pauli.hpp"

namespace clqpe {

/// coefficient * a†_p a†_q a_s a_r with p < q and r < s (spin-orbital indices).
/// The coefficient is the antisymmetrized <pq||rs>.
struct TwoBodyTerm {
  int p, q, r, s;
  double coefficient;
};

/// Second-quantized Hamiltonian over 2N interleaved spin orbitals:
///   H = core + sum_PQ h_PQ a†_P a_Q + sum_{P<Q, R<S} <PQ||RS> a†_P a†_Q a_S a_R.
struct FermionTermSum {
  int n_spin_orbitals = 0;
  double core_energy = 0.0;
  Eigen::MatrixXd one_body;          // h_PQ, symmetric
  std::vector<TwoBodyTerm> two_body;  // every nonzero (PQ, RS), both Hermitian partners
};

FermionTermSum expand_to_spin_orbitals(const IntegralSet& ints);

/// Jordan-Wigner: a†_P -> Z_0..Z_{P-1} (X_P - iY_P)/2.
PauliSum jordan_wigner(const FermionTermSum& terms);

/// One Hermitian generator: a one-body pair h(a†_P a_Q + h.c.), a number
/// operator, a two-body diagonal n_P n_Q, or a two-body term plus its partner.
struct HermitianGroup {
  enum class Kind { kOneBody, kTwoBody };
  Kind kind;
  // One-body: (P, Q, -, -) with P <= Q. Two-body: creation pair (p, q) and
  // annihilation pair (r, s) with (p, q) <= (r, s).
  std::array<int, 4> indices;
  double coefficient;
  PauliSum compiled;  // identity part included in identity_offset
};

/// Deterministic order: one-body groups by ascending (P, Q), then two-body
/// groups by ascending (p, q, r, s).
std::vector<HermitianGroup> group_hermitian_terms(const FermionTermSum& terms);

/// Sum_P (I - Z_P)/2 and S_z = sum_p (n_{p,alpha} - n_{p,beta})/2 as Pauli sums.
PauliSum number_operator(int n_spin_orbitals);
PauliSum sz_operator(int n_spin_orbitals);

/// Number of distinct non-identity strings implied by the index patterns of the
/// nonzero groups; the compiled sum can only be smaller, through cancellation.
std::size_t predicted_pauli_term_count(const std::vector<HermitianGroup>& groups);

}  // namespace clqpe
