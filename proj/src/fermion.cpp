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

#include "clqpe/fermion.hpp"

#include <algorithm>
#include <bit>
#include <set>
#include <tuple>

#include "clqpe/determinant.hpp"
#include "clqpe/error.hpp"

namespace clqpe {

namespace {

constexpr double kPrune = 1e-12;

// Ladder operators as Pauli polynomials, cached per spin orbital.
class LadderCache {
 public:
  explicit LadderCache(int n) : n_(n) {
    for (int p = 0; p < n; ++p) {
      const std::uint64_t chain = (std::uint64_t{1} << p) - 1;
      const std::uint64_t bit = std::uint64_t{1} << p;
      PauliPolynomial up(n), down(n);
      const PauliString x(n, bit, chain), y(n, bit, chain | bit);
      up.add(x, 0.5);
      up.add(y, cplx(0, -0.5));
      down.add(x, 0.5);
      down.add(y, cplx(0, 0.5));
      create_.push_back(std::move(up));
      annihilate_.push_back(std::move(down));
    }
  }
  const PauliPolynomial& create(int p) const { return create_[static_cast<std::size_t>(p)]; }
  const PauliPolynomial& annihilate(int p) const { return annihilate_[static_cast<std::size_t>(p)]; }

  PauliPolynomial one_body(int p, int q) const { return create(p) * annihilate(q); }
  PauliPolynomial two_body(int p, int q, int s, int r) const {
    return ((create(p) * create(q)) * annihilate(s)) * annihilate(r);
  }

 private:
  int n_;
  std::vector<PauliPolynomial> create_, annihilate_;
};

double physicist(const IntegralSet& ints, int P, int Q, int R, int S) {
  if ((P & 1) != (R & 1) || (Q & 1) != (S & 1)) return 0.0;
  return ints.two_body(P >> 1, R >> 1, Q >> 1, S >> 1);
}

}  // namespace

FermionTermSum expand_to_spin_orbitals(const IntegralSet& ints) {
  const int n = 2 * ints.n_orbitals;
  if (n > 64) throw DomainError("at most 32 spatial orbitals fit the 64-qubit string layout");
  FermionTermSum out;
  out.n_spin_orbitals = n;
  out.core_energy = ints.core_energy;
  out.one_body = Eigen::MatrixXd::Zero(n, n);
  for (int p = 0; p < ints.n_orbitals; ++p) {
    for (int q = 0; q < ints.n_orbitals; ++q) {
      out.one_body(alpha_index(p), alpha_index(q)) = ints.one_body(p, q);
      out.one_body(beta_index(p), beta_index(q)) = ints.one_body(p, q);
    }
  }
  for (int P = 0; P < n; ++P) {
    for (int Q = P + 1; Q < n; ++Q) {
      for (int R = 0; R < n; ++R) {
        for (int S = R + 1; S < n; ++S) {
          const double g = physicist(ints, P, Q, R, S) - physicist(ints, P, Q, S, R);
          if (g != 0.0) out.two_body.push_back({P, Q, R, S, g});
        }
      }
    }
  }
  return out;
}

PauliSum jordan_wigner(const FermionTermSum& terms) {
  const int n = terms.n_spin_orbitals;
  const LadderCache ladder(n);
  PauliPolynomial poly(n);
  poly.add(PauliString(n), terms.core_energy);
  for (int p = 0; p < n; ++p) {
    for (int q = 0; q < n; ++q) {
      const double h = terms.one_body(p, q);
      if (h == 0.0) continue;
      PauliPolynomial t = ladder.one_body(p, q);
      t *= h;
      poly += t;
    }
  }
  for (const auto& t : terms.two_body) {
    PauliPolynomial op = ladder.two_body(t.p, t.q, t.s, t.r);
    op *= t.coefficient;
    poly += op;
  }
  poly.prune(kPrune);
  return PauliSum::from_polynomial(poly, kPrune);
}

std::vector<HermitianGroup> group_hermitian_terms(const FermionTermSum& terms) {
  const int n = terms.n_spin_orbitals;
  const LadderCache ladder(n);
  std::vector<HermitianGroup> groups;
  for (int p = 0; p < n; ++p) {
    for (int q = p; q < n; ++q) {
      const double h = terms.one_body(p, q);
      if (h == 0.0) continue;
      PauliPolynomial op = ladder.one_body(p, q);
      if (p != q) op += ladder.one_body(q, p);
      op *= h;
      op.prune(kPrune);
      groups.push_back({HermitianGroup::Kind::kOneBody, {p, q, -1, -1}, h, PauliSum::from_polynomial(op, kPrune)});
    }
  }
  std::vector<TwoBodyTerm> upper;
  for (const auto& t : terms.two_body) {
    if (std::tie(t.p, t.q) <= std::tie(t.r, t.s)) upper.push_back(t);
  }
  std::sort(upper.begin(), upper.end(),
            [](const TwoBodyTerm& a, const TwoBodyTerm& b) { return std::tie(a.p, a.q, a.r, a.s) < std::tie(b.p, b.q, b.r, b.s); });
  for (const auto& t : upper) {
    PauliPolynomial op = ladder.two_body(t.p, t.q, t.s, t.r);
    if (std::tie(t.p, t.q) != std::tie(t.r, t.s)) op += ladder.two_body(t.r, t.s, t.q, t.p);
    op *= t.coefficient;
    op.prune(kPrune);
    groups.push_back({HermitianGroup::Kind::kTwoBody, {t.p, t.q, t.r, t.s}, t.coefficient,
                      PauliSum::from_polynomial(op, kPrune)});
  }
  return groups;
}

PauliSum number_operator(int n_spin_orbitals) {
  PauliPolynomial poly(n_spin_orbitals);
  for (int p = 0; p < n_spin_orbitals; ++p) {
    poly.add(PauliString(n_spin_orbitals), 0.5);
    poly.add(PauliString::single(n_spin_orbitals, p, 'Z'), -0.5);
  }
  return PauliSum::from_polynomial(poly);
}

PauliSum sz_operator(int n_spin_orbitals) {
  PauliPolynomial poly(n_spin_orbitals);
  for (int p = 0; p < n_spin_orbitals; ++p) {
    // n_P/2 for alpha, -n_P/2 for beta; n_P = (I - Z_P)/2.
    const double sign = (p & 1) ? -1.0 : 1.0;
    poly.add(PauliString(n_spin_orbitals), 0.25 * sign);
    poly.add(PauliString::single(n_spin_orbitals, p, 'Z'), -0.25 * sign);
  }
  return PauliSum::from_polynomial(poly);
}

std::size_t predicted_pauli_term_count(const std::vector<HermitianGroup>& groups) {
  // Strings as (x, z) masks. A hop between P < Q carries Z on the open interval.
  std::set<std::pair<std::uint64_t, std::uint64_t>> strings;
  auto bit = [](int q) { return std::uint64_t{1} << q; };
  auto interval = [&](int a, int b) { return (bit(b) - 1) & ~(bit(a + 1) - 1); };
  auto hop = [&](int a, int b, std::uint64_t extra_z) {
    if (a > b) std::swap(a, b);
    const std::uint64_t x = bit(a) | bit(b), z = interval(a, b) ^ extra_z;
    strings.insert({x, z});                          // X..X
    strings.insert({x, z ^ bit(a) ^ bit(b)});        // Y..Y
  };
  for (const auto& g : groups) {
    const auto& ix = g.indices;
    if (g.kind == HermitianGroup::Kind::kOneBody) {
      if (ix[0] == ix[1])
        strings.insert({0, bit(ix[0])});
      else
        hop(ix[0], ix[1], 0);
      continue;
    }
    const std::set<int> distinct(ix.begin(), ix.end());
    if (distinct.size() == 2) {
      strings.insert({0, bit(ix[0])});
      strings.insert({0, bit(ix[1])});
      strings.insert({0, bit(ix[0]) | bit(ix[1])});
    } else if (distinct.size() == 3) {
      // n_s (a†_a a_b + h.c.) with the shared index s.
      int shared = -1;
      for (int c : {ix[0], ix[1]})
        if (c == ix[2] || c == ix[3]) shared = c;
      std::vector<int> ends;
      for (int q : distinct)
        if (q != shared) ends.push_back(q);
      hop(ends[0], ends[1], 0);
      hop(ends[0], ends[1], bit(shared));
    } else {
      const std::vector<int> q(distinct.begin(), distinct.end());
      const std::uint64_t x = bit(q[0]) | bit(q[1]) | bit(q[2]) | bit(q[3]);
      const std::uint64_t chain = interval(q[0], q[1]) | interval(q[2], q[3]);
      for (unsigned ys = 0; ys < 16; ++ys) {
        if (std::popcount(ys) % 2) continue;
        std::uint64_t z = chain;
        for (int k = 0; k < 4; ++k)
          if ((ys >> k) & 1u) z ^= bit(q[static_cast<std::size_t>(k)]);
        strings.insert({x, z});
      }
    }
  }
  return strings.size();
}

}  // namespace clqpe
