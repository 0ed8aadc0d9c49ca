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

#include <Eigen/Eigenvalues>

#include "clqpe/error.hpp"
#include "clqpe/fermion.hpp"
#include "clqpe/sector.hpp"
#include "clqpe/statevector.hpp"
#include "oracles.hpp"

using namespace clqpe;
using Catch::Matchers::WithinAbs;

namespace {

IntegralSet one_orbital(double h, double g) {
  std::string text = " &FCI NORB=1,NELEC=2,MS2=0,\n ORBSYM=1,\n ISYM=1,\n &END\n";
  text += std::to_string(g) + " 1 1 1 1\n" + std::to_string(h) + " 1 1 0 0\n0.0 0 0 0 0\n";
  return parse_fcidump(std::string_view(text));
}

PauliPolynomial commutator_with(const PauliSum& a, const PauliSum& b) {
  return commutator(a.to_polynomial(), b.to_polynomial());
}

}  // namespace

TEST_CASE("one-orbital expansion") {
  const auto t = expand_to_spin_orbitals(one_orbital(-1.25, 0.675));
  CHECK(t.n_spin_orbitals == 2);
  CHECK(t.one_body(0, 0) == -1.25);
  CHECK(t.one_body(1, 1) == -1.25);
  CHECK(t.one_body(0, 1) == 0.0);
  REQUIRE(t.two_body.size() == 1);
  const auto& v = t.two_body.front();
  CHECK((v.p == 0 && v.q == 1 && v.r == 0 && v.s == 1));
  CHECK(v.coefficient == 0.675);
  CHECK(group_hermitian_terms(t).size() == 3);
}

TEST_CASE("zero integrals give the core energy times identity") {
  const auto ints = parse_fcidump(std::string_view(" &FCI NORB=2,NELEC=2,MS2=0,\n &END\n 0.42 0 0 0 0\n"));
  const auto t = expand_to_spin_orbitals(ints);
  CHECK(t.core_energy == 0.42);
  CHECK(t.one_body.isZero(0.0));
  CHECK(t.two_body.empty());
  const auto h = jordan_wigner(t);
  CHECK(h.terms().empty());
  CHECK(h.identity_offset() == 0.42);
}

TEST_CASE("number operator maps to (I - Z)/2") {
  FermionTermSum t;
  t.n_spin_orbitals = 2;
  t.one_body = Eigen::MatrixXd::Zero(2, 2);
  t.one_body(1, 1) = 0.8;
  const auto h = jordan_wigner(t);
  CHECK(h.identity_offset() == 0.4);
  REQUIRE(h.terms().size() == 1);
  CHECK(h.terms()[0].string.str() == "IZ");
  CHECK(h.terms()[0].coefficient == -0.4);
}

TEST_CASE("hopping term maps to (XX + YY)/2") {
  FermionTermSum t;
  t.n_spin_orbitals = 2;
  t.one_body = Eigen::MatrixXd::Zero(2, 2);
  t.one_body(0, 1) = t.one_body(1, 0) = 1.0;
  const auto h = jordan_wigner(t);
  CHECK(h.identity_offset() == 0.0);
  REQUIRE(h.terms().size() == 2);
  CHECK(h.terms()[0].string.str() == "XX");
  CHECK(h.terms()[1].string.str() == "YY");
  CHECK(h.terms()[0].coefficient == 0.5);
  CHECK(h.terms()[1].coefficient == 0.5);

  // Brute-force: a†_0 a_1 + a†_1 a_0 on two modes.
  Eigen::MatrixXd m = Eigen::MatrixXd::Zero(4, 4);
  for (std::uint64_t col = 0; col < 4; ++col)
    for (auto [p, q] : {std::pair{0, 1}, std::pair{1, 0}}) {
      std::uint64_t b = col;
      int s = oracle::ladder(b, q, false);
      if (s) s *= oracle::ladder(b, p, true);
      if (s) m(static_cast<Eigen::Index>(b), static_cast<Eigen::Index>(col)) += s;
    }
  CHECK((dense_matrix(h) - m.cast<cplx>()).norm() < 1e-15);
}

TEST_CASE("Jordan-Wigner equals the brute-force fermionic matrix on small systems") {
  for (const char* name : {"h2_sto3g.fcidump", "h3plus_sto3g.fcidump", "h2_631g.fcidump"}) {
    INFO(name);
    const auto ints = read_fcidump(oracle::data_path(name));
    REQUIRE(ints.n_orbitals <= 4);
    const Eigen::MatrixXcd jw = dense_matrix(jordan_wigner(expand_to_spin_orbitals(ints)));
    const Eigen::MatrixXd ref = oracle::fermionic_hamiltonian(ints);
    CHECK((jw - ref.cast<cplx>()).cwiseAbs().maxCoeff() < 1e-10);
  }
}

TEST_CASE("H2 lowest eigenvalue equals the sector ground energy") {
  const auto ints = read_fcidump(oracle::data_path("h2_sto3g.fcidump"));
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(oracle::fermionic_hamiltonian(ints));
  const auto h = build_sector_hamiltonian(ints, enumerate_basis(2, 1, 1));
  const auto sol = fci_solve(h, 1);
  CHECK_THAT(eig.eigenvalues()(0), WithinAbs(sol.eigenvalues(0), 1e-10));
}

TEST_CASE("compiled Hamiltonian conserves particle number and S_z") {
  for (const char* name : {"h2_sto3g.fcidump", "h3plus_sto3g.fcidump", "h2_631g.fcidump"}) {
    INFO(name);
    const auto ints = read_fcidump(oracle::data_path(name));
    const auto terms = expand_to_spin_orbitals(ints);
    const auto h = jordan_wigner(terms);
    const auto n_op = number_operator(terms.n_spin_orbitals);
    const auto sz = sz_operator(terms.n_spin_orbitals);
    CHECK(commutator_with(h, n_op).max_abs_coefficient() < 1e-12);
    CHECK(commutator_with(h, sz).max_abs_coefficient() < 1e-12);
    for (const auto& g : group_hermitian_terms(terms)) {
      CHECK(commutator_with(g.compiled, n_op).max_abs_coefficient() < 1e-12);
      CHECK(commutator_with(g.compiled, sz).max_abs_coefficient() < 1e-12);
    }
  }
}

TEST_CASE("groups sum to the full Hamiltonian and their strings commute") {
  const auto ints = read_fcidump(oracle::data_path("h3plus_sto3g.fcidump"));
  const auto terms = expand_to_spin_orbitals(ints);
  const auto groups = group_hermitian_terms(terms);
  PauliPolynomial total(terms.n_spin_orbitals);
  total.add(PauliString(terms.n_spin_orbitals), terms.core_energy);
  for (const auto& g : groups) {
    total += g.compiled.to_polynomial();
    for (const auto& a : g.compiled.terms())
      for (const auto& b : g.compiled.terms()) CHECK(commutes(a.string, b.string));
  }
  const auto full = jordan_wigner(terms);
  CHECK((dense_matrix(total) - dense_matrix(full)).norm() < 1e-12);
}

TEST_CASE("water term count is within twice the integral-based prediction") {
  const auto ints = read_fcidump(oracle::data_path("h2o_ccpvdz_10e9o.fcidump"));
  const auto terms = expand_to_spin_orbitals(ints);
  const auto h = jordan_wigner(terms);
  CHECK(h.n_qubits() == 18);
  const auto predicted = predicted_pauli_term_count(group_hermitian_terms(terms));
  CHECK(h.size() <= predicted);
  CHECK(2 * h.size() >= predicted);
  CHECK(h.size() <= 18u * 18u * 18u * 18u);
}

TEST_CASE("water Pauli sum projected on four determinants matches Slater-Condon") {
  const auto ints = read_fcidump(oracle::data_path("h2o_ccpvdz_10e9o.fcidump"));
  const auto h = jordan_wigner(expand_to_spin_orbitals(ints));
  const std::vector<Determinant> dets{
      Determinant::from_lists({0, 1, 2, 3, 4}, {0, 1, 2, 3, 4}),
      Determinant::from_lists({1, 2, 3, 4, 5}, {0, 1, 2, 3, 4}),
      Determinant::from_lists({1, 2, 3, 4, 5}, {0, 1, 2, 3, 5}),
      Determinant::from_lists({0, 1, 2, 3, 5}, {1, 2, 3, 4, 5}),
  };
  const Eigen::Index n = 4;
  Eigen::MatrixXd jw(n, n), sc(n, n);
  for (Eigen::Index j = 0; j < n; ++j) {
    const auto col = clqpe::apply(h, QuantumState::basis(18, dets[static_cast<std::size_t>(j)].spin_mask()).amplitudes);
    for (Eigen::Index i = 0; i < n; ++i) {
      const auto& bra = dets[static_cast<std::size_t>(i)];
      const cplx v = col(static_cast<Eigen::Index>(bra.spin_mask()));
      CHECK(std::abs(v.imag()) < 1e-12);
      jw(i, j) = v.real();
      sc(i, j) = slater_condon(ints, bra.spin_mask(), dets[static_cast<std::size_t>(j)].spin_mask());
    }
  }
  CHECK((jw - sc).cwiseAbs().maxCoeff() < 1e-9);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> a(jw), b(sc);
  CHECK((a.eigenvalues() - b.eigenvalues()).cwiseAbs().maxCoeff() < 1e-9);
}

TEST_CASE("grouped Trotter step converges to exact evolution") {
  const auto ints = read_fcidump(oracle::data_path("h2_sto3g.fcidump"));
  const auto terms = expand_to_spin_orbitals(ints);
  const auto seq = trotter_sequence(group_hermitian_terms(terms), ints.core_energy);
  const double delta = 1e-3;
  Eigen::MatrixXcd U(16, 16);
  for (std::uint64_t b = 0; b < 16; ++b) {
    auto s = QuantumState::basis(4, b);
    apply_trotter_step(s, seq, delta);
    U.col(static_cast<Eigen::Index>(b)) = s.amplitudes;
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> exact(oracle::fermionic_hamiltonian(ints));
  Eigen::ComplexEigenSolver<Eigen::MatrixXcd> trot(U);
  for (Eigen::Index k = 0; k < 16; ++k) {
    const cplx target = std::polar(1.0, -exact.eigenvalues()(k) * delta);
    double best = 10.0;
    for (Eigen::Index j = 0; j < 16; ++j) best = std::min(best, std::abs(std::arg(trot.eigenvalues()(j) / target)));
    CHECK(best < 1e-6);
  }
}
