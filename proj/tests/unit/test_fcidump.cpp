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

#include <catch_amalgamated.hpp>

#include <fstream>
#include <sstream>

#include "clqpe/error.hpp"
#include "clqpe/fcidump.hpp"
#include "clqpe/fermion.hpp"
#include "clqpe/pauli.hpp"
#include "clqpe/statevector.hpp"
#include "oracles.hpp"

using namespace clqpe;
using Catch::Matchers::WithinAbs;

namespace {

const char* kOneOrbital = R"( &FCI NORB=1,NELEC=0,MS2=0,
  ORBSYM=1,
  ISYM=1,
 &END
 1.5 0 0 0 0
)";

std::string header(int norb, int nelec, int ms2 = 0) {
  std::ostringstream h;
  h << " &FCI NORB=" << norb << ",NELEC=" << nelec << ",MS2=" << ms2 << ",\n ORBSYM=";
  for (int i = 0; i < norb; ++i) h << "1,";
  h << "\n ISYM=1,\n &END\n";
  return h.str();
}

}  // namespace

TEST_CASE("core-energy-only file") {
  const auto ints = parse_fcidump(std::string_view(kOneOrbital));
  CHECK(ints.n_orbitals == 1);
  CHECK(ints.n_electrons == 0);
  CHECK(ints.core_energy == 1.5);
  CHECK(ints.one_body(0, 0) == 0.0);
  CHECK(ints.two_body(0, 0, 0, 0) == 0.0);
  CHECK_FALSE(ints.orbital_energies.has_value());
}

TEST_CASE("water active-space header") {
  const auto ints = read_fcidump(oracle::data_path("h2o_ccpvdz_10e9o.fcidump"));
  CHECK(ints.n_orbitals == 9);
  CHECK(ints.n_electrons == 10);
  CHECK(ints.ms2 == 0);
  CHECK(ints.n_alpha() == 5);
  CHECK(ints.n_beta() == 5);
  CHECK(ints.orbital_irreps.size() == 9);
  const auto rep = check_symmetry(ints);
  CHECK(rep.max_one_body_asymmetry == 0.0);
  CHECK(rep.max_symmetry_breaking < 1e-10);
}

TEST_CASE("permutation-equivalent two-body slots are filled") {
  const auto ints = read_fcidump(oracle::data_path("h2o_ccpvdz_10e9o.fcidump"));
  const auto& g = ints.two_body;
  for (int p = 0; p < 9; p += 2)
    for (int q = 0; q < 9; q += 3)
      for (int r = 1; r < 9; r += 2)
        for (int s = 0; s < 9; s += 4) {
          const double v = g(p, q, r, s);
          CHECK(g(q, p, r, s) == v);
          CHECK(g(p, q, s, r) == v);
          CHECK(g(r, s, p, q) == v);
          CHECK(g(s, r, q, p) == v);
        }
}

TEST_CASE("serialize then parse is the identity on every bundled file") {
  for (const char* name : {"h2_sto3g.fcidump", "h2_631g.fcidump", "h3plus_sto3g.fcidump", "h2o_ccpvdz_10e9o.fcidump", "h2o_ccpvdz_sph_10e9o.fcidump"}) {
    INFO(name);
    const auto a = read_fcidump(oracle::data_path(name));
    const auto b = parse_fcidump(std::string_view(serialize_fcidump(a)));
    CHECK(a == b);
    CHECK(serialize_fcidump(b) == serialize_fcidump(a));
    CHECK(integral_checksum(a) == integral_checksum(b));
  }
}

TEST_CASE("malformed input is rejected with the right error class") {
  CHECK_THROWS_AS(parse_fcidump(std::string_view("")), ParseError);
  CHECK_THROWS_AS(parse_fcidump(std::string_view("NORB=2\n")), ParseError);
  CHECK_THROWS_AS(parse_fcidump(std::string_view(" &FCI NORB=2,NELEC=2,MS2=0,\n")), ParseError);
  CHECK_THROWS_AS(parse_fcidump(std::string_view(header(2, 2) + "0.5 1 1 x 0\n")), ParseError);
  CHECK_THROWS_AS(parse_fcidump(std::string_view(header(2, 2) + "0.5 1 1\n")), ParseError);
  CHECK_THROWS_AS(parse_fcidump(std::string_view(header(2, 2) + "0.5 1 1 0 0 7\n")), ParseError);
  CHECK_THROWS_AS(parse_fcidump(std::string_view(header(2, 2) + "0.5 3 1 0 0\n")), IndexError);
  CHECK_THROWS_AS(parse_fcidump(std::string_view(header(2, 5))), ParseError);
  CHECK_THROWS_AS(parse_fcidump(std::string_view(header(2, 2) + "0.5 1 2 0 0\n0.6 2 1 0 0\n")), ConsistencyError);
  CHECK_THROWS_AS(parse_fcidump(std::string_view(header(2, 2) + "0.5 1 2 1 2\n0.6 2 1 2 1\n")), ConsistencyError);
  CHECK_NOTHROW(parse_fcidump(std::string_view(header(2, 2) + "0.5 1 2 1 2\n0.50000000000001 2 1 2 1\n")));
  CHECK_THROWS_AS(read_fcidump("/nonexistent/file"), ConfigError);
}

TEST_CASE("diagonal one-body Hamiltonian yields its diagonal as orbital energies") {
  const auto ints = parse_fcidump(std::string_view(header(3, 2) + "-2.0 1 1 0 0\n-1.0 2 2 0 0\n0.5 3 3 0 0\n"));
  const auto oe = compute_orbital_energies(ints, 1);
  CHECK(oe.computed == std::vector<double>{-2.0, -1.0, 0.5});
}

TEST_CASE("single orbital with vanishing repulsion") {
  const auto ints = parse_fcidump(std::string_view(header(1, 2) + "-1.25 1 1 0 0\n"));
  CHECK(compute_orbital_energies(ints, 1).computed[0] == -1.25);
}

TEST_CASE("orbital energies equal the diagonal of a brute-force Fock matrix") {
  for (const char* name : {"h2_sto3g.fcidump", "h2_631g.fcidump", "h2o_ccpvdz_10e9o.fcidump"}) {
    INFO(name);
    const auto ints = read_fcidump(oracle::data_path(name));
    const int docc = ints.n_electrons / 2;
    const auto F = oracle::fock_matrix(ints, docc);
    const auto oe = compute_orbital_energies(ints, docc);
    for (int p = 0; p < ints.n_orbitals; ++p) CHECK_THAT(oe.computed[static_cast<std::size_t>(p)], WithinAbs(F(p, p), 1e-12));
    // Canonical HF orbitals: the Fock matrix is diagonal.
    const Eigen::MatrixXd off = F - Eigen::MatrixXd(F.diagonal().asDiagonal());
    CHECK(off.cwiseAbs().maxCoeff() < 1e-6);
    if (oe.from_file) CHECK(oe.max_deviation < 1e-6);
  }
}

TEST_CASE("reference energy equals the compiled Hamiltonian expectation") {
  for (const char* name : {"h2_sto3g.fcidump", "h2_631g.fcidump", "h3plus_sto3g.fcidump", "h2o_ccpvdz_10e9o.fcidump"}) {
    INFO(name);
    const auto ints = read_fcidump(oracle::data_path(name));
    const PauliSum h = jordan_wigner(expand_to_spin_orbitals(ints));
    const Determinant ref = Determinant::reference(ints.n_alpha(), ints.n_beta());
    const auto psi = QuantumState::basis(h.n_qubits(), ref.spin_mask());
    CHECK_THAT(expectation(psi, h), WithinAbs(hf_energy(ints, ints.n_electrons / 2), 1e-9));
  }
}

TEST_CASE("water orbital-energy gaps of the core transitions") {
  const auto ints = read_fcidump(oracle::data_path("h2o_ccpvdz_10e9o.fcidump"));
  const auto e = compute_orbital_energies(ints, 5).computed;
  constexpr double ev = 27.211386245988;
  CHECK_THAT((e[5] - e[0]) * ev, WithinAbs(564.23, 0.05));
  CHECK_THAT((e[6] - e[0]) * ev, WithinAbs(566.23, 0.05));
}

TEST_CASE("checksum distinguishes Hamiltonians") {
  const auto a = read_fcidump(oracle::data_path("h2_sto3g.fcidump"));
  auto b = a;
  b.core_energy += 1e-15;
  CHECK(integral_checksum(a) != integral_checksum(b));
}
