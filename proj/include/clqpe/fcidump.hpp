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

#include <cstddef>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <Eigen/Core>

namespace clqpe {

/// Chemists'-notation two-electron integrals (pq|rs) over N spatial orbitals,
/// stored densely with every permutation-equivalent slot populated.
class TwoBodyTensor {
 public:
  TwoBodyTensor() = default;
  explicit TwoBodyTensor(int n) : n_(n), data_(static_cast<std::size_t>(n) * n * n * n, 0.0) {}

  int size() const noexcept { return n_; }
  double operator()(int p, int q, int r, int s) const noexcept { return data_[index(p, q, r, s)]; }

  /// Writes all eight permutation-equivalent slots.
  void set_symmetric(int p, int q, int r, int s, double value) noexcept;

  const std::vector<double>& data() const noexcept { return data_; }

  friend bool operator==(const TwoBodyTensor&, const TwoBodyTensor&) = default;

 private:
  std::size_t index(int p, int q, int r, int s) const noexcept {
    return ((static_cast<std::size_t>(p) * n_ + q) * n_ + r) * n_ + s;
  }

  int n_ = 0;
  std::vector<double> data_;
};

/// Active-space electronic-structure integrals in Hartree, 0-based orbitals.
/// Immutable once returned from parse_fcidump.
struct IntegralSet {
  int n_orbitals = 0;
  int n_electrons = 0;
  int ms2 = 0;
  std::vector<int> orbital_irreps;  // 1-based Molpro/FCIDUMP irrep labels
  int isym = 1;
  double core_energy = 0.0;
  Eigen::MatrixXd one_body;
  TwoBodyTensor two_body;
  std::optional<std::vector<double>> orbital_energies;

  int n_alpha() const noexcept { return (n_electrons + ms2) / 2; }
  int n_beta() const noexcept { return (n_electrons - ms2) / 2; }

  /// Bit-exact comparison of every field.
  friend bool operator==(const IntegralSet& a, const IntegralSet& b) noexcept {
    return a.n_orbitals == b.n_orbitals && a.n_electrons == b.n_electrons && a.ms2 == b.ms2 &&
           a.orbital_irreps == b.orbital_irreps && a.isym == b.isym && a.core_energy == b.core_energy &&
           a.one_body.rows() == b.one_body.rows() && a.one_body.cols() == b.one_body.cols() &&
           a.one_body == b.one_body && a.two_body == b.two_body && a.orbital_energies == b.orbital_energies;
  }
};

IntegralSet parse_fcidump(std::istream& in);
IntegralSet parse_fcidump(std::string_view text);
IntegralSet read_fcidump(const std::string& path);

/// Writes every symmetry-unique nonzero integral with 17 significant digits
/// so that parse(serialize(x)) reproduces x bit-exactly.
void serialize_fcidump(const IntegralSet& ints, std::ostream& out);
std::string serialize_fcidump(const IntegralSet& ints);

struct OrbitalEnergies {
  std::vector<double> computed;
  std::optional<std::vector<double>> from_file;
  double max_deviation = 0.0;  // only meaningful when from_file is present
};

/// Diagonal of the closed-shell Fock operator for the reference with the
/// lowest n_docc spatial orbitals doubly occupied.
OrbitalEnergies compute_orbital_energies(const IntegralSet& ints, int n_docc);

/// Closed-shell reference energy with the lowest n_docc orbitals doubly occupied.
double hf_energy(const IntegralSet& ints, int n_docc);

struct SymmetryReport {
  double max_one_body_asymmetry = 0.0;  // max |h_pq - h_qp|
  double max_symmetry_breaking = 0.0;   // max |integral| forbidden by ORBSYM
  bool has_orbsym = false;
};

SymmetryReport check_symmetry(const IntegralSet& ints);

/// FNV-1a digest of the serialized integrals; identifies a Hamiltonian in run
/// provenance.
std::string integral_checksum(const IntegralSet& ints);

}  // namespace clqpe
