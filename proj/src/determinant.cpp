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

#include "clqpe/determinant.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <sstream>

#include "clqpe/error.hpp"

namespace clqpe {

namespace {

std::vector<int> bits_to_list(std::uint64_t mask) {
  std::vector<int> out;
  while (mask) {
    out.push_back(std::countr_zero(mask));
    mask &= mask - 1;
  }
  return out;
}

std::uint64_t list_to_bits(const std::vector<int>& occ) {
  std::uint64_t mask = 0;
  for (int p : occ) {
    if (p < 0 || p >= 32) throw IndexError("orbital index " + std::to_string(p) + " out of range");
    const std::uint64_t bit = std::uint64_t{1} << p;
    if (mask & bit) throw DomainError("orbital " + std::to_string(p) + " listed twice");
    mask |= bit;
  }
  return mask;
}

}  // namespace

Determinant Determinant::from_lists(const std::vector<int>& alpha_occ, const std::vector<int>& beta_occ) {
  return {list_to_bits(alpha_occ), list_to_bits(beta_occ)};
}

std::vector<int> Determinant::alpha_list() const { return bits_to_list(alpha); }
std::vector<int> Determinant::beta_list() const { return bits_to_list(beta); }

std::string Determinant::str() const {
  std::ostringstream out;
  auto emit = [&](std::uint64_t m) {
    bool first = true;
    for (int p : bits_to_list(m)) {
      out << (first ? "" : ",") << p;
      first = false;
    }
  };
  out << "a:";
  emit(alpha);
  out << "|b:";
  emit(beta);
  return out.str();
}

WeightedDeterminantState::WeightedDeterminantState(std::vector<Term> terms, double tol) : terms_(std::move(terms)) {
  if (terms_.empty()) throw DomainError("empty determinant superposition");
  double norm2 = 0.0;
  for (const auto& [c, d] : terms_) {
    if (d.n_alpha() != n_alpha() || d.n_beta() != n_beta())
      throw DomainError("determinants in a superposition must share (n_alpha, n_beta)");
    norm2 += std::norm(c);
  }
  if (std::abs(norm2 - 1.0) > tol)
    throw DomainError("determinant superposition is not normalized (norm^2 = " + std::to_string(norm2) + ")");
}

WeightedDeterminantState WeightedDeterminantState::normalized(std::vector<Term> terms) {
  std::map<Determinant, std::complex<double>> merged;
  std::vector<Determinant> order;
  for (const auto& [c, d] : terms) {
    if (!merged.contains(d)) order.push_back(d);
    merged[d] += c;
  }
  double norm2 = 0.0;
  for (const auto& [d, c] : merged) norm2 += std::norm(c);
  if (!(norm2 > 0.0)) throw DomainError("determinant superposition has zero norm");
  std::vector<Term> out;
  for (const auto& d : order) {
    if (merged[d] != std::complex<double>{}) out.emplace_back(merged[d] / std::sqrt(norm2), d);
  }
  return WeightedDeterminantState(std::move(out));
}

int WeightedDeterminantState::min_orbitals() const noexcept {
  int n = 0;
  for (const auto& [c, d] : terms_) n = std::max(n, 64 - std::countl_zero(d.alpha | d.beta));
  return n;
}

}  // namespace clqpe
