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

#include <complex>
#include <cstdint>
#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include <Eigen/Core>

namespace clqpe {

using cplx = std::complex<double>;

/// Tensor product of single-qubit Paulis in symplectic form: qubit q carries
/// X^x_q Z^z_q up to the phase that turns XZ into Y (Y = iXZ). Text form lists
/// qubit 0 first, e.g. "XZI" is X on qubit 0 and Z on qubit 1.
class PauliString {
 public:
  PauliString() = default;
  explicit PauliString(int n_qubits) : n_(n_qubits) {}
  PauliString(int n_qubits, std::uint64_t x, std::uint64_t z) : n_(n_qubits), x_(x), z_(z) {}

  static PauliString parse(std::string_view letters);
  /// Single-letter string on `qubit` ('I', 'X', 'Y' or 'Z').
  static PauliString single(int n_qubits, int qubit, char letter);

  int n_qubits() const noexcept { return n_; }
  std::uint64_t x_mask() const noexcept { return x_; }
  std::uint64_t z_mask() const noexcept { return z_; }
  bool is_identity() const noexcept { return (x_ | z_) == 0; }
  int weight() const noexcept;
  char letter(int qubit) const noexcept;
  std::string str() const;

  /// Action on a computational basis state: P|b> = phase * |b ^ x_mask>.
  cplx phase_on(std::uint64_t basis) const noexcept;

  friend bool operator==(const PauliString& a, const PauliString& b) noexcept {
    return a.n_ == b.n_ && a.x_ == b.x_ && a.z_ == b.z_;
  }
  /// Lexicographic on the text form with I < X < Y < Z, qubit 0 most significant.
  friend bool operator<(const PauliString& a, const PauliString& b) noexcept;

 private:
  int n_ = 0;
  std::uint64_t x_ = 0;
  std::uint64_t z_ = 0;
};

/// a*b = i^k * c; returns (k mod 4, c).
std::pair<int, PauliString> multiply(const PauliString& a, const PauliString& b);

bool commutes(const PauliString& a, const PauliString& b);

struct ScaledPauli {
  cplx scale;
  PauliString string;
};

/// [a, b] as a scaled string, or nullopt when the strings commute.
std::optional<ScaledPauli> pauli_commutator(const PauliString& a, const PauliString& b);

/// Complex linear combination of Pauli strings with exact merging.
class PauliPolynomial {
 public:
  explicit PauliPolynomial(int n_qubits = 0) : n_(n_qubits) {}

  int n_qubits() const noexcept { return n_; }
  const std::map<PauliString, cplx>& terms() const noexcept { return terms_; }

  void add(const PauliString& p, cplx c);
  PauliPolynomial& operator+=(const PauliPolynomial& other);
  PauliPolynomial& operator*=(cplx c);
  friend PauliPolynomial operator*(const PauliPolynomial& a, const PauliPolynomial& b);
  friend PauliPolynomial commutator(const PauliPolynomial& a, const PauliPolynomial& b);

  /// Drops terms with |c| < threshold.
  void prune(double threshold);
  double max_abs_coefficient() const;

 private:
  int n_;
  std::map<PauliString, cplx> terms_;
};

struct PauliTerm {
  double coefficient;
  PauliString string;
};

/// Hermitian qubit operator H = identity_offset + sum_j alpha_j P_j with real
/// alpha_j, unique non-identity strings kept in lexicographic order.
class PauliSum {
 public:
  PauliSum() = default;
  explicit PauliSum(int n_qubits, double identity_offset = 0.0) : n_(n_qubits), offset_(identity_offset) {}

  /// Converts a polynomial, rejecting imaginary coefficients above
  /// `hermiticity_tol` and dropping terms below `prune_threshold`.
  static PauliSum from_polynomial(const PauliPolynomial& poly, double prune_threshold = 1e-12,
                                  double hermiticity_tol = 1e-10);

  int n_qubits() const noexcept { return n_; }
  double identity_offset() const noexcept { return offset_; }
  const std::vector<PauliTerm>& terms() const noexcept { return terms_; }
  std::size_t size() const noexcept { return terms_.size(); }

  PauliPolynomial to_polynomial() const;

  /// Same terms, identity coefficient replaced.
  PauliSum with_offset(double identity_offset) const {
    PauliSum out = *this;
    out.offset_ = identity_offset;
    return out;
  }

  friend bool operator==(const PauliSum& a, const PauliSum& b) noexcept;

 private:
  int n_ = 0;
  double offset_ = 0.0;
  std::vector<PauliTerm> terms_;
};

/// H - e_shift * I.
PauliSum shift_identity(const PauliSum& h, double e_shift);

/// Dense 2^n x 2^n matrix; intended for n <= 12.
Eigen::MatrixXcd dense_matrix(const PauliString& p);
Eigen::MatrixXcd dense_matrix(const PauliSum& h);
Eigen::MatrixXcd dense_matrix(const PauliPolynomial& h);

/// H|psi> without forming the matrix.
Eigen::VectorXcd apply(const PauliSum& h, const Eigen::VectorXcd& psi);

struct TrotterErrorBound {
  double bound = 0.0;
  double standard_error = 0.0;  // zero when evaluated exactly
  bool exact = true;
  std::uint64_t triples_evaluated = 0;
};

/// delta^3 * sum_{j,k,l} |a_j a_k a_l| * ||[P_j,[P_k,P_l]]|| over the non-identity
/// terms; exhaustive when M^3 <= budget, otherwise a uniform-sampling estimate
/// over `budget` triples.
TrotterErrorBound trotter_error_bound(const PauliSum& h, double delta, std::uint64_t budget = 10'000'000,
                                      std::uint64_t seed = 0);

/// Line format: "<coefficient> <letters>", identity line first ("I...I").
void write_pauli_sum(const PauliSum& h, std::ostream& out);
PauliSum read_pauli_sum(std::istream& in);

}  // namespace clqpe
