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

// Brute-force reference constructions shared by the unit tests. These avoid
// the library's own Slater-Condon, Jordan-Wigner and Fock code paths.

#include <bit>
#include <cmath>
#include <complex>
#include <cstdint>
#include <string>

#include <Eigen/Dense>
#include <unsupported/Eigen/MatrixFunctions>

#include "clqpe/fcidump.hpp"

namespace oracle {

inline std::string data_path(const std::string& name) { return std::string(CLQPE_DATA_DIR) + "/" + name; }

// Applies a_p (create=false) or a†_p (create=true) to occupation string `b`
// ordered as a†_{P1} a†_{P2} ... |vac> with P1 < P2 < ...; returns the sign or 0.
inline int ladder(std::uint64_t& b, int p, bool create) {
  const bool occ = (b >> p) & 1u;
  if (occ == create) return 0;
  int parity = 0;
  for (int q = 0; q < p; ++q) parity ^= static_cast<int>((b >> q) & 1u);
  b ^= std::uint64_t{1} << p;
  return parity ? -1 : 1;
}

// Dense second-quantized Hamiltonian on 2N interleaved spin orbitals:
// H = core + sum h_PQ a†_P a_Q + 1/2 sum <PQ|RS> a†_P a†_Q a_S a_R.
inline Eigen::MatrixXd fermionic_hamiltonian(const clqpe::IntegralSet& ints) {
  const int n = 2 * ints.n_orbitals;
  const std::uint64_t dim = std::uint64_t{1} << n;
  Eigen::MatrixXd H = Eigen::MatrixXd::Identity(static_cast<Eigen::Index>(dim), static_cast<Eigen::Index>(dim)) *
                      ints.core_energy;
  auto spatial = [](int P) { return P / 2; };
  auto spin = [](int P) { return P % 2; };
  for (std::uint64_t col = 0; col < dim; ++col) {
    for (int P = 0; P < n; ++P)
      for (int Q = 0; Q < n; ++Q) {
        if (spin(P) != spin(Q)) continue;
        const double h = ints.one_body(spatial(P), spatial(Q));
        if (h == 0.0) continue;
        std::uint64_t b = col;
        int s = ladder(b, Q, false);
        if (!s) continue;
        s *= ladder(b, P, true);
        if (!s) continue;
        H(static_cast<Eigen::Index>(b), static_cast<Eigen::Index>(col)) += s * h;
      }
    for (int P = 0; P < n; ++P)
      for (int Q = 0; Q < n; ++Q)
        for (int R = 0; R < n; ++R)
          for (int S = 0; S < n; ++S) {
            if (spin(P) != spin(R) || spin(Q) != spin(S)) continue;
            const double v = ints.two_body(spatial(P), spatial(R), spatial(Q), spatial(S));
            if (v == 0.0) continue;
            std::uint64_t b = col;
            int s = ladder(b, R, false);
            if (!s) continue;
            s *= ladder(b, S, false);
            if (!s) continue;
            s *= ladder(b, Q, true);
            if (!s) continue;
            s *= ladder(b, P, true);
            if (!s) continue;
            H(static_cast<Eigen::Index>(b), static_cast<Eigen::Index>(col)) += 0.5 * s * v;
          }
  }
  return H;
}

// Closed-shell Fock matrix F = h + 2J - K with the lowest n_docc orbitals occupied.
inline Eigen::MatrixXd fock_matrix(const clqpe::IntegralSet& ints, int n_docc) {
  const int n = ints.n_orbitals;
  Eigen::MatrixXd F = ints.one_body;
  for (int p = 0; p < n; ++p)
    for (int q = 0; q < n; ++q)
      for (int i = 0; i < n_docc; ++i)
        F(p, q) += 2.0 * ints.two_body(p, q, i, i) - ints.two_body(p, i, i, q);
  return F;
}

// Rows/columns of `m` restricted to basis indices whose popcount on even and
// odd bits equals (na, nb).
inline Eigen::MatrixXd sector_block(const Eigen::MatrixXd& m, int na, int nb) {
  std::vector<Eigen::Index> idx;
  for (Eigen::Index b = 0; b < m.rows(); ++b) {
    const auto u = static_cast<std::uint64_t>(b);
    if (std::popcount(u & 0x5555555555555555ull) == na && std::popcount(u & 0xaaaaaaaaaaaaaaaaull) == nb)
      idx.push_back(b);
  }
  Eigen::MatrixXd out(static_cast<Eigen::Index>(idx.size()), static_cast<Eigen::Index>(idx.size()));
  for (std::size_t i = 0; i < idx.size(); ++i)
    for (std::size_t j = 0; j < idx.size(); ++j)
      out(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = m(idx[i], idx[j]);
  return out;
}

inline Eigen::MatrixXcd expm_i(const Eigen::MatrixXcd& generator, double t) {
  Eigen::MatrixXcd a = std::complex<double>(0.0, -t) * generator;
  return a.exp();
}

}  // namespace oracle
