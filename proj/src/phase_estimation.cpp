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

#include "clqpe/phase_estimation.hpp"

#include <bit>
#include <cmath>
#include <numbers>
#include <numeric>

#include "clqpe/error.hpp"

namespace clqpe {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

double wrap_positive(double a) {
  double r = std::fmod(a, kTwoPi);
  if (r < 0.0) r += kTwoPi;
  return r >= kTwoPi ? 0.0 : r;
}

int log2_exact(Eigen::Index n) {
  if (n <= 0 || !std::has_single_bit(static_cast<std::uint64_t>(n)))
    throw DomainError("statevector length is not a power of two");
  return std::countr_zero(static_cast<std::uint64_t>(n));
}

}  // namespace

std::string to_string(Backend b) { return b == Backend::kTrotter ? "trotter" : "exact"; }
std::string to_string(Estimator e) { return e == Estimator::kQpe ? "qpe" : "rpe"; }

Backend parse_backend(const std::string& s) {
  if (s == "trotter") return Backend::kTrotter;
  if (s == "exact") return Backend::kExact;
  throw ConfigError("unknown backend '" + s + "' (expected trotter or exact)");
}

Estimator parse_estimator(const std::string& s) {
  if (s == "qpe") return Estimator::kQpe;
  if (s == "rpe") return Estimator::kRpe;
  throw ConfigError("unknown estimator '" + s + "' (expected qpe or rpe)");
}

EvolutionOracle::EvolutionOracle(double delta, double e_shift) : delta_(delta), e_shift_(e_shift) {
  if (!(delta > 0.0) || !std::isfinite(delta)) throw DomainError("delta must be positive and finite");
  if (!std::isfinite(e_shift)) throw DomainError("e_shift must be finite");
}

TrotterOracle::TrotterOracle(TrotterSequence seq, double delta, double e_shift, int dense_cache_qubits)
    : EvolutionOracle(delta, e_shift),
      seq_(shift_identity(seq, e_shift)),
      cached_(seq.n_qubits <= dense_cache_qubits) {}

Eigen::VectorXcd TrotterOracle::prepare(const WeightedDeterminantState& state) const {
  return prepare_state(state, seq_.n_qubits).amplitudes;
}

const Eigen::MatrixXcd& TrotterOracle::power_matrix(int j) const {
  std::call_once(once_[static_cast<std::size_t>(j)], [&] {
    if (j == 0) {
      const Eigen::Index dim = Eigen::Index{1} << seq_.n_qubits;
      Eigen::MatrixXcd u(dim, dim);
      for (Eigen::Index b = 0; b < dim; ++b) {
        QuantumState s = QuantumState::basis(seq_.n_qubits, static_cast<std::uint64_t>(b));
        apply_trotter_step(s, seq_, delta());
        u.col(b) = s.amplitudes;
      }
      powers_[0] = std::move(u);
    } else {
      const auto& half = power_matrix(j - 1);
      powers_[static_cast<std::size_t>(j)] = half * half;
    }
  });
  return powers_[static_cast<std::size_t>(j)];
}

void TrotterOracle::apply_power(Eigen::Ref<Eigen::VectorXcd> v, std::uint64_t power) const {
  if (v.size() != (Eigen::Index{1} << seq_.n_qubits)) throw DomainError("state length does not match the register");
  if (cached_) {
    for (int j = 0; power != 0; ++j, power >>= 1) {
      if (power & 1u) v = power_matrix(j) * v;
    }
    return;
  }
  QuantumState s{seq_.n_qubits, v};
  for (std::uint64_t k = 0; k < power; ++k) apply_trotter_step(s, seq_, delta());
  v = s.amplitudes;
}

ExactSectorOracle::ExactSectorOracle(std::shared_ptr<const SectorSpectrum> spectrum, double delta, double e_shift)
    : EvolutionOracle(delta, e_shift), spectrum_(std::move(spectrum)) {}

Eigen::VectorXcd ExactSectorOracle::prepare(const WeightedDeterminantState& state) const {
  return spectrum_->to_eigenbasis(sector_vector(spectrum_->basis(), state));
}

double ExactSectorOracle::eigenphase(std::size_t k) const {
  return wrap_positive(-(spectrum_->eigenvalue(k) - e_shift()) * delta());
}

void ExactSectorOracle::apply_power(Eigen::Ref<Eigen::VectorXcd> v, std::uint64_t power) const {
  if (static_cast<std::size_t>(v.size()) != spectrum_->basis().size())
    throw DomainError("coefficient length does not match the sector");
  const double p = static_cast<double>(power);
  for (Eigen::Index k = 0; k < v.size(); ++k) {
    if (v(k) == std::complex<double>{}) continue;
    v(k) *= std::polar(1.0, std::fmod(eigenphase(static_cast<std::size_t>(k)) * p, kTwoPi));
  }
}

double decode_phase(double phase, double delta, double e_shift, double lo, double hi) {
  if (!(delta > 0.0)) throw DomainError("delta must be positive");
  if (!(hi > lo)) throw DomainError("window must satisfy lo < hi");
  const double period = kTwoPi / delta;
  if (hi - lo > period * (1.0 + 1e-12))
    throw AmbiguityError("window width exceeds 2pi/delta = " + std::to_string(period) + " Hartree");
  const double base = e_shift - phase / delta;
  const double k = std::ceil((lo - base) / period);
  double e = base + k * period;
  if (e < lo) e += period;  // round-off at the lower edge
  if (e >= hi) throw WindowError("decoded energy falls outside the window");
  return e;
}

CostEstimate estimate_cost(double epsilon, double delta) {
  if (!(epsilon > 0.0) || !(delta > 0.0)) throw DomainError("epsilon and delta must be positive");
  const double raw = std::ceil(std::numbers::pi / (epsilon * delta));
  CostEstimate c;
  c.applications = raw < 1.0 ? 1 : static_cast<std::uint64_t>(raw);
  c.bits = std::max(1, static_cast<int>(std::ceil(std::log2(static_cast<double>(c.applications)))));
  return c;
}

std::vector<double> qpe_distribution(const EvolutionOracle& oracle, const Eigen::VectorXcd& initial, int bits) {
  if (bits < 1) throw DomainError("QPE needs at least one ancilla");
  if (bits > 24 || (std::uint64_t{1} << bits) - 1 > kApplicationBudget)
    throw BudgetError("QPE with " + std::to_string(bits) + " ancillas exceeds the application budget");
  const std::size_t n_out = std::size_t{1} << bits;
  std::vector<double> dist(n_out, 0.0);

  if (oracle.diagonal()) {
    const double n = static_cast<double>(n_out);
    for (Eigen::Index k = 0; k < initial.size(); ++k) {
      const double w = std::norm(initial(k));
      if (w == 0.0) continue;
      const double phi = oracle.eigenphase(static_cast<std::size_t>(k));
      for (std::size_t y = 0; y < n_out; ++y) {
        const double x = std::remainder(phi - kTwoPi * static_cast<double>(y) / n, kTwoPi);
        const double den = std::sin(0.5 * x);
        if (std::abs(den) < 1e-15) {
          dist[y] += w;
        } else {
          const double num = std::sin(0.5 * n * x);
          dist[y] += w * num * num / (n * n * den * den);
        }
      }
    }
  } else {
    const int n_sys = log2_exact(initial.size());
    if (n_sys + bits > 26) throw CapacityError("QPE circuit exceeds 26 qubits");
    const Eigen::Index dim = initial.size();
    QuantumState s = QuantumState::basis(n_sys + bits, 0);
    s.amplitudes.setZero();
    s.amplitudes.head(dim) = initial;
    std::vector<int> reg(static_cast<std::size_t>(bits));
    std::iota(reg.begin(), reg.end(), n_sys);
    for (int q : reg) apply_hadamard(s, q);
    // reg[i] controls U^(2^(bits-i-1)); the system occupies the low qubits so
    // every ancilla configuration owns a contiguous slice.
    for (int i = 0; i < bits; ++i) {
      const std::uint64_t power = std::uint64_t{1} << (bits - i - 1);
      for (std::uint64_t h = 0; h < n_out; ++h) {
        if ((h >> i) & 1u) oracle.apply_power(s.amplitudes.segment(static_cast<Eigen::Index>(h) * dim, dim), power);
      }
    }
    apply_inverse_qft(s, reg);
    dist = register_distribution(s, reg);
  }
  const double total = std::accumulate(dist.begin(), dist.end(), 0.0);
  if (!(total > 0.0)) throw NumericalError("QPE distribution has zero mass");
  for (auto& p : dist) p /= total;
  return dist;
}

double qpe_sample_phase(const std::vector<double>& distribution, Philox4x32& rng) {
  const double u = rng.uniform();
  double acc = 0.0;
  std::size_t y = distribution.size() - 1;
  for (std::size_t i = 0; i < distribution.size(); ++i) {
    acc += distribution[i];
    if (u < acc) {
      y = i;
      break;
    }
  }
  while (distribution[y] == 0.0 && y > 0) --y;
  return kTwoPi * static_cast<double>(y) / static_cast<double>(distribution.size());
}

std::vector<int> rpe_schedule(int bits) {
  if (bits < 1) throw DomainError("bits_precision must be at least 1");
  std::vector<int> s;
  for (int j = 0; j < bits; ++j) {
    int n = static_cast<int>(std::ceil(2.5 * (bits - j) + 0.5));
    if (n % 2) ++n;
    s.push_back(n);
  }
  return s;
}

std::vector<int> rpe_constant_schedule(int bits, int repetitions) {
  if (bits < 1) throw DomainError("bits_precision must be at least 1");
  if (repetitions < 1) throw DomainError("repetitions must be at least 1");
  return std::vector<int>(static_cast<std::size_t>(bits), repetitions);
}

std::uint64_t rpe_applications(const std::vector<int>& schedule) {
  std::uint64_t total = 0;
  for (std::size_t j = 0; j < schedule.size(); ++j) {
    if (j >= 40) return ~std::uint64_t{0};
    total += 2u * static_cast<std::uint64_t>(schedule[j]) << j;
  }
  return total;
}

double rpe_phase(const EvolutionOracle& oracle, Eigen::VectorXcd state, const std::vector<int>& schedule,
                 Philox4x32& rng) {
  if (schedule.empty()) throw DomainError("RPE schedule is empty");
  if (rpe_applications(schedule) > kApplicationBudget)
    throw BudgetError("RPE schedule needs " + std::to_string(rpe_applications(schedule)) +
                      " oracle applications, above the budget");
  const double norm0 = state.norm();
  if (!(norm0 > 0.0)) throw DomainError("initial state has zero norm");
  state /= norm0;

  double estimate = 0.0;
  Eigen::VectorXcd evolved;
  for (std::size_t j = 0; j < schedule.size(); ++j) {
    const std::uint64_t power = std::uint64_t{1} << j;
    const double p = static_cast<double>(power);
    int zeros[2] = {0, 0};
    for (int r = 0; r < schedule[j]; ++r) {
      for (int basis = 0; basis < 2; ++basis) {
        // Hadamard test; basis 1 adds an ancilla phase of -pi/2 to read sin.
        const std::complex<double> rot = basis == 0 ? std::complex<double>(1.0, 0.0) : std::complex<double>(0.0, -1.0);
        evolved = state;
        oracle.apply_power(evolved, power);
        evolved *= rot;
        const double p0 = std::clamp((state + evolved).squaredNorm() / 4.0, 0.0, 1.0);
        const bool zero = rng.uniform() < p0;
        if (zero) {
          ++zeros[basis];
          state += evolved;
        } else {
          state -= evolved;
        }
        const double n = state.norm();
        if (!(n > 0.0)) throw NumericalError("RPE collapsed onto a zero-probability branch");
        state /= n;
      }
    }
    const double n = static_cast<double>(schedule[j]);
    const double theta = std::atan2(2.0 * zeros[1] / n - 1.0, 2.0 * zeros[0] / n - 1.0);
    const double c = theta / p;
    const double k = std::round((estimate - c) * p / kTwoPi);
    estimate = c + kTwoPi * k / p;
  }
  return wrap_positive(estimate);
}

EnergySample qpe_shot(const EvolutionOracle& oracle, const Eigen::VectorXcd& initial, int bits, std::uint64_t seed,
                      const EnergyWindow& window) {
  Philox4x32 rng(seed);
  EnergySample s;
  s.seed = seed;
  s.estimator = Estimator::kQpe;
  s.bits = bits;
  s.phase = qpe_sample_phase(qpe_distribution(oracle, initial, bits), rng);
  s.energy = decode_phase(s.phase, oracle.delta(), oracle.e_shift(), window.lo, window.hi);
  return s;
}

EnergySample rpe_shot(const EvolutionOracle& oracle, const Eigen::VectorXcd& initial, int bits, std::uint64_t seed,
                      const EnergyWindow& window) {
  Philox4x32 rng(seed);
  EnergySample s;
  s.seed = seed;
  s.estimator = Estimator::kRpe;
  s.bits = bits;
  s.phase = rpe_phase(oracle, initial, rpe_schedule(bits), rng);
  s.energy = decode_phase(s.phase, oracle.delta(), oracle.e_shift(), window.lo, window.hi);
  return s;
}

}  // namespace clqpe
