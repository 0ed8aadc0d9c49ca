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

#include "clqpe/pauli.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdio>
#include <istream>
#include <ostream>
#include <sstream>

#include "clqpe/error.hpp"
#include "clqpe/rng.hpp"

namespace clqpe {

namespace {

constexpr cplx kIPow[4] = {{1, 0}, {0, 1}, {-1, 0}, {0, -1}};

int letter_rank(std::uint64_t x, std::uint64_t z, int q) {
  const bool xb = (x >> q) & 1u, zb = (z >> q) & 1u;
  if (!xb && !zb) return 0;
  if (xb && !zb) return 1;
  return xb ? 2 : 3;
}

}  // namespace

PauliString PauliString::parse(std::string_view letters) {
  if (letters.size() > 64) throw DomainError("Pauli strings are limited to 64 qubits");
  PauliString p(static_cast<int>(letters.size()));
  for (std::size_t q = 0; q < letters.size(); ++q) {
    const std::uint64_t bit = std::uint64_t{1} << q;
    switch (letters[q]) {
      case 'I': break;
      case 'X': p.x_ |= bit; break;
      case 'Y': p.x_ |= bit; p.z_ |= bit; break;
      case 'Z': p.z_ |= bit; break;
      default: throw DomainError("invalid Pauli letter '" + std::string(1, letters[q]) + "'");
    }
  }
  return p;
}

PauliString PauliString::single(int n_qubits, int qubit, char letter) {
  if (qubit < 0 || qubit >= n_qubits) throw IndexError("qubit index out of range");
  std::string s(static_cast<std::size_t>(n_qubits), 'I');
  s[static_cast<std::size_t>(qubit)] = letter;
  return parse(s);
}

int PauliString::weight() const noexcept { return std::popcount(x_ | z_); }

char PauliString::letter(int qubit) const noexcept { return "IXYZ"[letter_rank(x_, z_, qubit)]; }

std::string PauliString::str() const {
  std::string s(static_cast<std::size_t>(n_), 'I');
  for (int q = 0; q < n_; ++q) s[static_cast<std::size_t>(q)] = letter(q);
  return s;
}

cplx PauliString::phase_on(std::uint64_t basis) const noexcept {
  const int k = std::popcount(x_ & z_) + 2 * std::popcount(z_ & basis);
  return kIPow[k & 3];
}

bool operator<(const PauliString& a, const PauliString& b) noexcept {
  if (a.n_ != b.n_) return a.n_ < b.n_;
  const std::uint64_t diff = (a.x_ ^ b.x_) | (a.z_ ^ b.z_);
  if (diff == 0) return false;
  const int q = std::countr_zero(diff);
  return letter_rank(a.x_, a.z_, q) < letter_rank(b.x_, b.z_, q);
}

std::pair<int, PauliString> multiply(const PauliString& a, const PauliString& b) {
  if (a.n_qubits() != b.n_qubits()) throw DomainError("Pauli strings act on different qubit counts");
  const std::uint64_t x = a.x_mask() ^ b.x_mask();
  const std::uint64_t z = a.z_mask() ^ b.z_mask();
  const int k = std::popcount(a.x_mask() & a.z_mask()) + std::popcount(b.x_mask() & b.z_mask()) +
                2 * std::popcount(a.z_mask() & b.x_mask()) - std::popcount(x & z);
  return {((k % 4) + 4) % 4, PauliString(a.n_qubits(), x, z)};
}

bool commutes(const PauliString& a, const PauliString& b) {
  if (a.n_qubits() != b.n_qubits()) throw DomainError("Pauli strings act on different qubit counts");
  const int overlap = std::popcount(a.x_mask() & b.z_mask()) + std::popcount(a.z_mask() & b.x_mask());
  return (overlap & 1) == 0;
}

std::optional<ScaledPauli> pauli_commutator(const PauliString& a, const PauliString& b) {
  if (commutes(a, b)) return std::nullopt;
  const auto [k, c] = multiply(a, b);
  return ScaledPauli{2.0 * kIPow[k], c};
}

void PauliPolynomial::add(const PauliString& p, cplx c) {
  if (p.n_qubits() != n_) throw DomainError("Pauli string does not match polynomial width");
  if (c == cplx{}) return;
  auto [it, inserted] = terms_.emplace(p, c);
  if (!inserted) {
    it->second += c;
    if (it->second == cplx{}) terms_.erase(it);
  }
}

PauliPolynomial& PauliPolynomial::operator+=(const PauliPolynomial& other) {
  for (const auto& [p, c] : other.terms_) add(p, c);
  return *this;
}

PauliPolynomial& PauliPolynomial::operator*=(cplx c) {
  for (auto& [p, v] : terms_) v *= c;
  return *this;
}

PauliPolynomial operator*(const PauliPolynomial& a, const PauliPolynomial& b) {
  PauliPolynomial out(a.n_);
  for (const auto& [pa, ca] : a.terms_) {
    for (const auto& [pb, cb] : b.terms_) {
      const auto [k, pc] = multiply(pa, pb);
      out.add(pc, kIPow[k] * ca * cb);
    }
  }
  return out;
}

PauliPolynomial commutator(const PauliPolynomial& a, const PauliPolynomial& b) {
  PauliPolynomial out(a.n_);
  for (const auto& [pa, ca] : a.terms_) {
    for (const auto& [pb, cb] : b.terms_) {
      if (auto c = pauli_commutator(pa, pb)) out.add(c->string, c->scale * ca * cb);
    }
  }
  return out;
}

void PauliPolynomial::prune(double threshold) {
  std::erase_if(terms_, [&](const auto& kv) { return std::abs(kv.second) < threshold; });
}

double PauliPolynomial::max_abs_coefficient() const {
  double m = 0.0;
  for (const auto& [p, c] : terms_) m = std::max(m, std::abs(c));
  return m;
}

PauliSum PauliSum::from_polynomial(const PauliPolynomial& poly, double prune_threshold, double hermiticity_tol) {
  PauliSum h(poly.n_qubits());
  for (const auto& [p, c] : poly.terms()) {
    if (std::abs(c.imag()) > hermiticity_tol)
      throw NumericalError("non-Hermitian Pauli coefficient on " + p.str());
    if (p.is_identity()) {
      h.offset_ += c.real();
    } else if (std::abs(c.real()) >= prune_threshold) {
      h.terms_.push_back({c.real(), p});
    }
  }
  return h;  // std::map iteration already yields lexicographic order
}

PauliPolynomial PauliSum::to_polynomial() const {
  PauliPolynomial poly(n_);
  poly.add(PauliString(n_), offset_);
  for (const auto& t : terms_) poly.add(t.string, t.coefficient);
  return poly;
}

bool operator==(const PauliSum& a, const PauliSum& b) noexcept {
  if (a.n_ != b.n_ || a.offset_ != b.offset_ || a.terms_.size() != b.terms_.size()) return false;
  for (std::size_t i = 0; i < a.terms_.size(); ++i) {
    if (a.terms_[i].coefficient != b.terms_[i].coefficient || !(a.terms_[i].string == b.terms_[i].string))
      return false;
  }
  return true;
}

PauliSum shift_identity(const PauliSum& h, double e_shift) {
  return h.with_offset(h.identity_offset() - e_shift);
}

Eigen::MatrixXcd dense_matrix(const PauliString& p) {
  const Eigen::Index dim = Eigen::Index{1} << p.n_qubits();
  Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(dim, dim);
  for (Eigen::Index b = 0; b < dim; ++b) {
    const auto basis = static_cast<std::uint64_t>(b);
    m(static_cast<Eigen::Index>(basis ^ p.x_mask()), b) = p.phase_on(basis);
  }
  return m;
}

Eigen::MatrixXcd dense_matrix(const PauliPolynomial& h) {
  const Eigen::Index dim = Eigen::Index{1} << h.n_qubits();
  Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(dim, dim);
  for (const auto& [p, c] : h.terms()) {
    for (Eigen::Index b = 0; b < dim; ++b) {
      const auto basis = static_cast<std::uint64_t>(b);
      m(static_cast<Eigen::Index>(basis ^ p.x_mask()), b) += c * p.phase_on(basis);
    }
  }
  return m;
}

Eigen::MatrixXcd dense_matrix(const PauliSum& h) { return dense_matrix(h.to_polynomial()); }

Eigen::VectorXcd apply(const PauliSum& h, const Eigen::VectorXcd& psi) {
  Eigen::VectorXcd out = h.identity_offset() * psi;
  const auto dim = static_cast<std::uint64_t>(psi.size());
  for (const auto& t : h.terms()) {
    for (std::uint64_t b = 0; b < dim; ++b) {
      out(static_cast<Eigen::Index>(b ^ t.string.x_mask())) +=
          t.coefficient * t.string.phase_on(b) * psi(static_cast<Eigen::Index>(b));
    }
  }
  return out;
}

TrotterErrorBound trotter_error_bound(const PauliSum& h, double delta, std::uint64_t budget, std::uint64_t seed) {
  if (!(delta > 0.0)) throw DomainError("trotter_error_bound requires delta > 0");
  const auto& terms = h.terms();
  const std::uint64_t m = terms.size();
  auto triple = [&](std::uint64_t j, std::uint64_t k, std::uint64_t l) -> double {
    const auto inner = pauli_commutator(terms[k].string, terms[l].string);
    if (!inner) return 0.0;
    const auto outer = pauli_commutator(terms[j].string, inner->string);
    if (!outer) return 0.0;
    return std::abs(terms[j].coefficient * terms[k].coefficient * terms[l].coefficient) *
           std::abs(inner->scale * outer->scale);
  };
  const double d3 = delta * delta * delta;
  TrotterErrorBound result;
  const long double total = static_cast<long double>(m) * m * m;
  if (total <= static_cast<long double>(budget)) {
    double sum = 0.0;
    for (std::uint64_t j = 0; j < m; ++j)
      for (std::uint64_t k = 0; k < m; ++k)
        for (std::uint64_t l = 0; l < m; ++l) sum += triple(j, k, l);
    result.bound = d3 * sum;
    result.triples_evaluated = m * m * m;
    return result;
  }
  Philox4x32 rng(seed);
  auto pick = [&] { return std::min(m - 1, static_cast<std::uint64_t>(rng.uniform() * static_cast<double>(m))); };
  double mean = 0.0, m2 = 0.0;
  for (std::uint64_t n = 1; n <= budget; ++n) {
    const std::uint64_t j = pick(), k = pick(), l = pick();
    const double v = triple(j, k, l);
    const double d = v - mean;
    mean += d / static_cast<double>(n);
    m2 += d * (v - mean);
  }
  const double var = budget > 1 ? m2 / static_cast<double>(budget - 1) : 0.0;
  const double scale = static_cast<double>(total) * d3;
  result.bound = scale * mean;
  result.standard_error = scale * std::sqrt(var / static_cast<double>(budget));
  result.exact = false;
  result.triples_evaluated = budget;
  return result;
}

void write_pauli_sum(const PauliSum& h, std::ostream& out) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.16e", h.identity_offset());
  out << buf << ' ' << PauliString(h.n_qubits()).str() << '\n';
  for (const auto& t : h.terms()) {
    std::snprintf(buf, sizeof buf, "%.16e", t.coefficient);
    out << buf << ' ' << t.string.str() << '\n';
  }
}

PauliSum read_pauli_sum(std::istream& in) {
  std::string line;
  int line_no = 0;
  std::optional<PauliPolynomial> poly;
  while (std::getline(in, line)) {
    ++line_no;
    std::istringstream fields(line);
    std::string coeff, letters;
    if (!(fields >> coeff)) continue;
    if (!(fields >> letters)) throw ParseError("expected '<coefficient> <pauli string>'", line_no);
    char* end = nullptr;
    const double c = std::strtod(coeff.c_str(), &end);
    if (end == coeff.c_str() || *end != '\0') throw ParseError("malformed coefficient '" + coeff + "'", line_no);
    const auto p = PauliString::parse(letters);
    if (!poly) poly.emplace(p.n_qubits());
    if (p.n_qubits() != poly->n_qubits()) throw ParseError("inconsistent Pauli string length", line_no);
    poly->add(p, c);
  }
  if (!poly) throw ParseError("empty Pauli sum", line_no);
  return PauliSum::from_polynomial(*poly, 0.0, 0.0);
}

}  // namespace clqpe
