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

#include <bit>
#include <complex>
#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace clqpe {

// Spin orbitals are interleaved: spatial orbital p owns alpha spin orbital 2p
// and beta spin orbital 2p+1, which is also the Jordan-Wigner qubit order.
constexpr int alpha_index(int p) noexcept { return 2 * p; }
constexpr int beta_index(int p) noexcept { return 2 * p + 1; }

/// Spread the low 32 bits of v onto the even bit positions.
constexpr std::uint64_t spread_even(std::uint64_t v) noexcept {
  v &= 0xffffffffull;
  v = (v | (v << 16)) & 0x0000ffff0000ffffull;
  v = (v | (v << 8)) & 0x00ff00ff00ff00ffull;
  v = (v | (v << 4)) & 0x0f0f0f0f0f0f0f0full;
  v = (v | (v << 2)) & 0x3333333333333333ull;
  v = (v | (v << 1)) & 0x5555555555555555ull;
  return v;
}

constexpr std::uint64_t gather_even(std::uint64_t v) noexcept {
  v &= 0x5555555555555555ull;
  v = (v | (v >> 1)) & 0x3333333333333333ull;
  v = (v | (v >> 2)) & 0x0f0f0f0f0f0f0f0full;
  v = (v | (v >> 4)) & 0x00ff00ff00ff00ffull;
  v = (v | (v >> 8)) & 0x0000ffff0000ffffull;
  v = (v | (v >> 16)) & 0x00000000ffffffffull;
  return v;
}

/// Slater determinant given by occupied spatial orbitals per spin.
struct Determinant {
  std::uint64_t alpha = 0;
  std::uint64_t beta = 0;

  static Determinant from_lists(const std::vector<int>& alpha_occ, const std::vector<int>& beta_occ);
  static Determinant from_spin_mask(std::uint64_t mask) noexcept {
    return {gather_even(mask), gather_even(mask >> 1)};
  }
  /// Lowest n_alpha / n_beta spatial orbitals occupied.
  static Determinant reference(int n_alpha, int n_beta) noexcept {
    return {(std::uint64_t{1} << n_alpha) - 1, (std::uint64_t{1} << n_beta) - 1};
  }

  /// Qubit basis index of the determinant (bit 2p alpha, bit 2p+1 beta).
  std::uint64_t spin_mask() const noexcept { return spread_even(alpha) | (spread_even(beta) << 1); }
  int n_alpha() const noexcept { return std::popcount(alpha); }
  int n_beta() const noexcept { return std::popcount(beta); }
  std::vector<int> alpha_list() const;
  std::vector<int> beta_list() const;
  std::string str() const;  // e.g. "a:0,1,2|b:0,1,3" (0-based)

  friend bool operator==(const Determinant&, const Determinant&) = default;
  friend auto operator<=>(const Determinant&, const Determinant&) = default;
};

/// Sign and result of a_P (annihilate) on a spin-orbital occupation mask; the
/// basis state |mask> is a†_{P1} a†_{P2} ... |vac> with P1 < P2 < ... .
inline std::optional<std::pair<int, std::uint64_t>> annihilate(std::uint64_t mask, int p) noexcept {
  const std::uint64_t bit = std::uint64_t{1} << p;
  if (!(mask & bit)) return std::nullopt;
  const int sign = (std::popcount(mask & (bit - 1)) & 1) ? -1 : 1;
  return std::pair{sign, mask ^ bit};
}

inline std::optional<std::pair<int, std::uint64_t>> create(std::uint64_t mask, int p) noexcept {
  const std::uint64_t bit = std::uint64_t{1} << p;
  if (mask & bit) return std::nullopt;
  const int sign = (std::popcount(mask & (bit - 1)) & 1) ? -1 : 1;
  return std::pair{sign, mask | bit};
}

/// Normalized superposition of determinants sharing (n_alpha, n_beta).
class WeightedDeterminantState {
 public:
  using Term = std::pair<std::complex<double>, Determinant>;

  WeightedDeterminantState() = default;
  /// Validates shared particle numbers and normalization within `tol`.
  explicit WeightedDeterminantState(std::vector<Term> terms, double tol = 1e-12);

  /// Merges duplicate determinants and rescales to unit norm.
  static WeightedDeterminantState normalized(std::vector<Term> terms);

  const std::vector<Term>& terms() const noexcept { return terms_; }
  int n_alpha() const noexcept { return terms_.empty() ? 0 : terms_.front().second.n_alpha(); }
  int n_beta() const noexcept { return terms_.empty() ? 0 : terms_.front().second.n_beta(); }
  /// Highest occupied spatial orbital index + 1 over all terms.
  int min_orbitals() const noexcept;

 private:
  std::vector<Term> terms_;
};

}  // namespace clqpe
