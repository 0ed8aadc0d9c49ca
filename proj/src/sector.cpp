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

#include "clqpe/sector.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <numbers>
#include <numeric>

#include <Eigen/Eigenvalues>
#include <Eigen/SparseCore>

#include "clqpe/error.hpp"

namespace clqpe {

namespace {

double binomial(int n, int k) {
  if (k < 0 || k > n) return 0.0;
  double r = 1.0;
  for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return std::round(r);
}

// Fixed-popcount bitmasks of width n in ascending numeric order.
std::vector<std::uint64_t> strings_of(int n, int k) {
  std::vector<std::uint64_t> out;
  if (k == 0) return {0};
  std::uint64_t v = (std::uint64_t{1} << k) - 1;
  const std::uint64_t limit = std::uint64_t{1} << n;
  while (v < limit) {
    out.push_back(v);
    const std::uint64_t t = v | (v - 1);
    v = (t + 1) | (((~t & -~t) - 1) >> (std::countr_zero(v) + 1));
  }
  return out;
}

double h1(const IntegralSet& ints, int P, int Q) {
  if ((P & 1) != (Q & 1)) return 0.0;
  return ints.one_body(P >> 1, Q >> 1);
}

// <PQ|RS> in physicists' notation over spin orbitals.
double g(const IntegralSet& ints, int P, int Q, int R, int S) {
  if ((P & 1) != (R & 1) || (Q & 1) != (S & 1)) return 0.0;
  return ints.two_body(P >> 1, R >> 1, Q >> 1, S >> 1);
}

double antisym(const IntegralSet& ints, int P, int Q, int R, int S) {
  return g(ints, P, Q, R, S) - g(ints, P, Q, S, R);
}

std::vector<int> bits_of(std::uint64_t m) {
  std::vector<int> out;
  while (m) {
    out.push_back(std::countr_zero(m));
    m &= m - 1;
  }
  return out;
}

constexpr double kDropTolerance = 1e-14;

// Sparse S+ = sum_p a+_{p alpha} a_{p beta} from `basis` into the sector with
// one more alpha electron. Rows are target determinants in discovery order.
SparseMatrix spin_raising(const SectorBasis& basis) {
  std::unordered_map<std::uint64_t, int> target;
  std::vector<Eigen::Triplet<double>> trip;
  for (std::size_t i = 0; i < basis.size(); ++i) {
    const std::uint64_t mask = basis[i].spin_mask();
    for (int p = 0; p < basis.n_spatial(); ++p) {
      auto a = annihilate(mask, beta_index(p));
      if (!a) continue;
      auto c = create(a->second, alpha_index(p));
      if (!c) continue;
      auto [it, fresh] = target.try_emplace(c->second, static_cast<int>(target.size()));
      trip.emplace_back(it->second, static_cast<int>(i), static_cast<double>(a->first * c->first));
    }
  }
  SparseMatrix s(static_cast<Eigen::Index>(target.size()), static_cast<Eigen::Index>(basis.size()));
  s.setFromTriplets(trip.begin(), trip.end());
  return s;
}

double spin_z(const SectorBasis& basis) { return 0.5 * (basis.n_alpha() - basis.n_beta()); }

}  // namespace

int determinant_irrep(const Determinant& det, const std::vector<int>& orbital_irreps) {
  int label = 0;
  for (int p : det.alpha_list()) label ^= orbital_irreps.at(static_cast<std::size_t>(p)) - 1;
  for (int p : det.beta_list()) label ^= orbital_irreps.at(static_cast<std::size_t>(p)) - 1;
  return label;
}

std::optional<std::size_t> SectorBasis::index_of(const Determinant& det) const {
  auto it = index_.find(det.spin_mask());
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

SectorBasis enumerate_basis(int n_spatial, int n_alpha, int n_beta, std::size_t cap, std::optional<int> irrep,
                            const std::vector<int>& orbital_irreps) {
  if (n_spatial < 0 || n_spatial > 32) throw DomainError("spatial orbital count must be in [0, 32]");
  if (n_alpha < 0 || n_beta < 0 || n_alpha > n_spatial || n_beta > n_spatial)
    throw DomainError("electron counts exceed the orbital count");
  if (irrep && orbital_irreps.size() != static_cast<std::size_t>(n_spatial))
    throw DomainError("irrep filtering needs one irrep label per orbital");
  const double dim = binomial(n_spatial, n_alpha) * binomial(n_spatial, n_beta);
  if (dim > static_cast<double>(cap))
    throw CapacityError("sector dimension " + std::to_string(static_cast<long long>(dim)) + " exceeds cap " +
                        std::to_string(cap));
  SectorBasis b;
  b.n_spatial_ = n_spatial;
  b.n_alpha_ = n_alpha;
  b.n_beta_ = n_beta;
  b.irrep_ = irrep;
  const auto as = strings_of(n_spatial, n_alpha);
  const auto bs = strings_of(n_spatial, n_beta);
  b.dets_.reserve(static_cast<std::size_t>(dim));
  for (auto a : as) {
    for (auto be : bs) {
      Determinant d{a, be};
      if (irrep && determinant_irrep(d, orbital_irreps) != *irrep) continue;
      b.index_.emplace(d.spin_mask(), b.dets_.size());
      b.dets_.push_back(d);
    }
  }
  return b;
}

double slater_condon(const IntegralSet& ints, std::uint64_t bra, std::uint64_t ket) {
  if (std::popcount(bra) != std::popcount(ket)) return 0.0;
  const std::uint64_t diff = bra ^ ket;
  const int n_diff = std::popcount(diff);
  if (n_diff == 0) {
    const auto occ = bits_of(ket);
    double e = ints.core_energy;
    for (std::size_t i = 0; i < occ.size(); ++i) {
      e += h1(ints, occ[i], occ[i]);
      for (std::size_t j = i + 1; j < occ.size(); ++j) e += antisym(ints, occ[i], occ[j], occ[i], occ[j]);
    }
    return e;
  }
  if (n_diff == 2) {
    const int I = std::countr_zero(ket & ~bra);
    const int A = std::countr_zero(bra & ~ket);
    if ((I & 1) != (A & 1)) return 0.0;
    auto an = annihilate(ket, I);
    auto cr = create(an->second, A);
    double v = h1(ints, A, I);
    for (int J : bits_of(ket)) {
      if (J != I) v += antisym(ints, A, J, I, J);
    }
    return an->first * cr->first * v;
  }
  if (n_diff == 4) {
    const auto holes = bits_of(ket & ~bra);
    const auto parts = bits_of(bra & ~ket);
    const int I = holes[0], J = holes[1], A = parts[0], B = parts[1];
    int sign = 1;
    std::uint64_t m = ket;
    auto step = [&](std::optional<std::pair<int, std::uint64_t>> r) {
      sign *= r->first;
      m = r->second;
    };
    step(annihilate(m, I));
    step(annihilate(m, J));
    step(create(m, B));
    step(create(m, A));
    return sign * antisym(ints, A, B, I, J);
  }
  return 0.0;
}

SectorHamiltonian build_sector_hamiltonian(const IntegralSet& ints, std::shared_ptr<const SectorBasis> basis) {
  if (basis->n_spatial() != ints.n_orbitals) throw DomainError("basis and integrals disagree on the orbital count");
  const int n_so = 2 * ints.n_orbitals;
  const std::uint64_t full = n_so == 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << n_so) - 1;
  std::vector<Eigen::Triplet<double>> trip;
  const auto& dets = basis->determinants();
  for (std::size_t i = 0; i < dets.size(); ++i) {
    const std::uint64_t ket = dets[i].spin_mask();
    trip.emplace_back(static_cast<int>(i), static_cast<int>(i), slater_condon(ints, ket, ket));
    const auto occ = bits_of(ket);
    const auto vir = bits_of(full & ~ket);
    auto emit = [&](std::uint64_t bra) {
      auto j = basis->index_of(Determinant::from_spin_mask(bra));
      if (!j || *j <= i) return;
      const double v = slater_condon(ints, bra, ket);
      if (std::abs(v) < kDropTolerance) return;
      trip.emplace_back(static_cast<int>(i), static_cast<int>(*j), v);
      trip.emplace_back(static_cast<int>(*j), static_cast<int>(i), v);
    };
    for (int I : occ) {
      for (int A : vir) {
        if ((A & 1) == (I & 1)) emit(ket ^ (std::uint64_t{1} << I) ^ (std::uint64_t{1} << A));
      }
    }
    for (std::size_t a = 0; a < occ.size(); ++a) {
      for (std::size_t b = a + 1; b < occ.size(); ++b) {
        const int spin = (occ[a] & 1) + (occ[b] & 1);
        const std::uint64_t removed = ket ^ (std::uint64_t{1} << occ[a]) ^ (std::uint64_t{1} << occ[b]);
        for (std::size_t c = 0; c < vir.size(); ++c) {
          for (std::size_t d = c + 1; d < vir.size(); ++d) {
            if ((vir[c] & 1) + (vir[d] & 1) != spin) continue;
            emit(removed | (std::uint64_t{1} << vir[c]) | (std::uint64_t{1} << vir[d]));
          }
        }
      }
    }
  }
  SectorHamiltonian h;
  h.basis = std::move(basis);
  h.integrals = std::make_shared<const IntegralSet>(ints);
  const auto n = static_cast<Eigen::Index>(dets.size());
  h.matrix.resize(n, n);
  h.matrix.setFromTriplets(trip.begin(), trip.end());
  h.matrix.makeCompressed();
  return h;
}

SectorHamiltonian build_sector_hamiltonian(const IntegralSet& ints, SectorBasis basis) {
  return build_sector_hamiltonian(ints, std::make_shared<const SectorBasis>(std::move(basis)));
}

Eigen::MatrixXd dense_matrix(const SectorHamiltonian& h) { return Eigen::MatrixXd(h.matrix); }

double spin_squared(const SectorBasis& basis, const Eigen::Ref<const Eigen::VectorXcd>& v) {
  const double m = spin_z(basis);
  const SparseMatrix s = spin_raising(basis);
  const double n2 = v.squaredNorm();
  const Eigen::VectorXcd raised = s.cast<std::complex<double>>() * v;
  return (m * m + m) * n2 + raised.squaredNorm();
}

double spin_squared(const SectorBasis& basis, const Eigen::Ref<const Eigen::VectorXd>& v) {
  const double m = spin_z(basis);
  const SparseMatrix s = spin_raising(basis);
  const Eigen::VectorXd raised = s * v;
  return (m * m + m) * v.squaredNorm() + raised.squaredNorm();
}

Eigen::VectorXd orbital_occupations(const SectorBasis& basis, const Eigen::Ref<const Eigen::VectorXd>& v) {
  Eigen::VectorXd occ = Eigen::VectorXd::Zero(basis.n_spatial());
  for (std::size_t i = 0; i < basis.size(); ++i) {
    const double w = v(static_cast<Eigen::Index>(i)) * v(static_cast<Eigen::Index>(i));
    if (w == 0.0) continue;
    for (int p : basis[i].alpha_list()) occ(p) += w;
    for (int p : basis[i].beta_list()) occ(p) += w;
  }
  return occ;
}

std::vector<WeightedDeterminant> leading_determinants(const SectorBasis& basis,
                                                      const Eigen::Ref<const Eigen::VectorXd>& v, int count) {
  std::vector<std::size_t> order(basis.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  const auto k = std::min<std::size_t>(static_cast<std::size_t>(std::max(count, 0)), order.size());
  std::partial_sort(order.begin(), order.begin() + static_cast<std::ptrdiff_t>(k), order.end(),
                    [&](std::size_t a, std::size_t b) {
                      const double wa = std::abs(v(static_cast<Eigen::Index>(a)));
                      const double wb = std::abs(v(static_cast<Eigen::Index>(b)));
                      return wa != wb ? wa > wb : a < b;
                    });
  std::vector<WeightedDeterminant> out;
  for (std::size_t i = 0; i < k; ++i) {
    const double c = v(static_cast<Eigen::Index>(order[i]));
    if (std::abs(c) < 1e-10) break;
    out.push_back({c * c, c, basis[order[i]]});
  }
  return out;
}

Eigen::VectorXcd sector_vector(const SectorBasis& basis, const WeightedDeterminantState& state) {
  if (state.n_alpha() != basis.n_alpha() || state.n_beta() != basis.n_beta())
    throw DomainError("initial state electron counts do not match the sector");
  Eigen::VectorXcd v = Eigen::VectorXcd::Zero(static_cast<Eigen::Index>(basis.size()));
  for (const auto& [c, det] : state.terms()) {
    auto i = basis.index_of(det);
    if (!i) throw IndexError("determinant " + det.str() + " is not in the sector basis");
    v(static_cast<Eigen::Index>(*i)) += c;
  }
  return v;
}

namespace {

void fill_properties(FciSolution& sol, int n_leading) {
  const auto k = sol.eigenvalues.size();
  const double m = spin_z(*sol.basis);
  const SparseMatrix s = spin_raising(*sol.basis);
  sol.s2.clear();
  sol.leading.clear();
  for (Eigen::Index j = 0; j < k; ++j) {
    const Eigen::VectorXd raised = s * sol.eigenvectors.col(j);
    sol.s2.push_back(m * m + m + raised.squaredNorm());
    sol.leading.push_back(leading_determinants(*sol.basis, sol.eigenvectors.col(j), n_leading));
  }
}

FciSolution dense_solve(const SectorHamiltonian& h, int n_states) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(dense_matrix(h));
  if (eig.info() != Eigen::Success) throw NumericalError("dense eigensolver failed");
  FciSolution sol;
  sol.basis = h.basis;
  sol.eigenvalues = eig.eigenvalues().head(n_states);
  sol.eigenvectors = eig.eigenvectors().leftCols(n_states);
  return sol;
}

// Modified Gram-Schmidt of `t` against the columns of `v` (two passes).
double orthogonalize(const Eigen::MatrixXd& v, Eigen::Index cols, Eigen::VectorXd& t) {
  for (int pass = 0; pass < 2; ++pass) {
    for (Eigen::Index c = 0; c < cols; ++c) t -= v.col(c).dot(t) * v.col(c);
  }
  return t.norm();
}

FciSolution davidson(const SectorHamiltonian& h, int k, const FciOptions& opt) {
  const Eigen::Index n = h.matrix.rows();
  const Eigen::VectorXd diag = h.matrix.diagonal();
  const Eigen::Index max_sub = std::min<Eigen::Index>(n, std::max<Eigen::Index>(8 * k, 48));
  const Eigen::Index n_init = std::min<Eigen::Index>(n, std::max<Eigen::Index>(2 * k, k + 4));

  std::vector<Eigen::Index> order(static_cast<std::size_t>(n));
  std::iota(order.begin(), order.end(), Eigen::Index{0});
  std::stable_sort(order.begin(), order.end(), [&](auto a, auto b) { return diag(a) < diag(b); });

  Eigen::MatrixXd v = Eigen::MatrixXd::Zero(n, max_sub);
  Eigen::Index cols = n_init;
  for (Eigen::Index c = 0; c < cols; ++c) v(order[static_cast<std::size_t>(c)], c) = 1.0;

  double best = std::numeric_limits<double>::infinity();
  for (int iter = 0; iter < opt.max_iterations; ++iter) {
    const Eigen::MatrixXd basis = v.leftCols(cols);
    const Eigen::MatrixXd w = h.matrix * basis;
    Eigen::MatrixXd t = basis.transpose() * w;
    t = 0.5 * (t + t.transpose()).eval();
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(t);
    const Eigen::VectorXd theta = eig.eigenvalues().head(k);
    const Eigen::MatrixXd y = eig.eigenvectors().leftCols(k);
    const Eigen::MatrixXd x = basis * y;
    const Eigen::MatrixXd r = w * y - x * theta.asDiagonal();
    double worst = 0.0;
    for (Eigen::Index j = 0; j < k; ++j) worst = std::max(worst, r.col(j).norm());
    best = std::min(best, worst);
    if (worst <= opt.residual_tolerance) {
      FciSolution sol;
      sol.basis = h.basis;
      sol.eigenvalues = theta;
      sol.eigenvectors = x;
      return sol;
    }
    std::vector<Eigen::VectorXd> fresh;
    for (Eigen::Index j = 0; j < k; ++j) {
      if (r.col(j).norm() <= opt.residual_tolerance) continue;
      Eigen::VectorXd c = r.col(j);
      for (Eigen::Index i = 0; i < n; ++i) {
        double d = theta(j) - diag(i);
        if (std::abs(d) < 1e-8) d = d < 0 ? -1e-8 : 1e-8;
        c(i) /= d;
      }
      fresh.push_back(std::move(c));
    }
    if (cols + static_cast<Eigen::Index>(fresh.size()) > max_sub) {
      v.setZero();
      v.leftCols(k) = x;
      // Ritz vectors are orthonormal up to round-off; reorthonormalize anyway.
      Eigen::HouseholderQR<Eigen::MatrixXd> qr(x);
      v.leftCols(k) = qr.householderQ() * Eigen::MatrixXd::Identity(n, k);
      cols = k;
    }
    Eigen::Index added = 0;
    for (auto& c : fresh) {
      if (cols >= max_sub) break;
      const double before = c.norm();
      const double after = orthogonalize(v, cols, c);
      if (after <= 1e-10 * before) continue;
      v.col(cols++) = c / after;
      ++added;
    }
    if (added == 0) break;
  }
  throw ConvergenceError("Davidson did not reach residual " + std::to_string(opt.residual_tolerance), best);
}

}  // namespace

FciSolution fci_solve(const SectorHamiltonian& h, int n_states, const FciOptions& options) {
  const auto dim = static_cast<int>(h.basis->size());
  if (n_states < 1 || n_states > dim) throw DomainError("n_states must be in [1, dimension]");
  FciSolution sol = (options.force_dense || h.basis->size() < options.dense_threshold || n_states * 4 > dim)
                        ? dense_solve(h, n_states)
                        : davidson(h, n_states, options);
  fill_properties(sol, options.n_leading);
  return sol;
}

SectorSpectrum::SectorSpectrum(std::shared_ptr<const SectorHamiltonian> h) : h_(std::move(h)) {
  const auto& basis = *h_->basis;
  const auto& ints = *h_->integrals;
  const std::size_t n = basis.size();
  block_of_.assign(n, 0);

  bool by_irrep = ints.orbital_irreps.size() == static_cast<std::size_t>(ints.n_orbitals) && n > 0;
  std::vector<int> label(n, 0);
  if (by_irrep) {
    for (std::size_t i = 0; i < n; ++i) label[i] = determinant_irrep(basis[i], ints.orbital_irreps);
    for (Eigen::Index r = 0; r < h_->matrix.outerSize() && by_irrep; ++r) {
      for (SparseMatrix::InnerIterator it(h_->matrix, r); it; ++it) {
        if (label[static_cast<std::size_t>(it.row())] != label[static_cast<std::size_t>(it.col())] &&
            std::abs(it.value()) > 1e-10) {
          by_irrep = false;
          break;
        }
      }
    }
  }
  if (!by_irrep) {
    // Connected components of the coupling graph.
    std::vector<std::size_t> parent(n);
    std::iota(parent.begin(), parent.end(), std::size_t{0});
    auto find = [&](std::size_t a) {
      while (parent[a] != a) a = parent[a] = parent[parent[a]];
      return a;
    };
    for (Eigen::Index r = 0; r < h_->matrix.outerSize(); ++r) {
      for (SparseMatrix::InnerIterator it(h_->matrix, r); it; ++it) {
        const auto a = find(static_cast<std::size_t>(it.row())), b = find(static_cast<std::size_t>(it.col()));
        if (a != b) parent[std::max(a, b)] = std::min(a, b);
      }
    }
    for (std::size_t i = 0; i < n; ++i) label[i] = static_cast<int>(find(i));
  }
  std::vector<int> labels(label);
  std::sort(labels.begin(), labels.end());
  labels.erase(std::unique(labels.begin(), labels.end()), labels.end());
  blocks_.resize(labels.size());
  for (std::size_t b = 0; b < labels.size(); ++b) {
    if (by_irrep) blocks_[b].irrep = labels[b];
  }
  for (std::size_t i = 0; i < n; ++i) {
    const auto b = static_cast<std::size_t>(std::lower_bound(labels.begin(), labels.end(), label[i]) - labels.begin());
    block_of_[i] = b;
    blocks_[b].indices.push_back(i);
  }
  offsets_.assign(blocks_.size(), 0);
  for (std::size_t b = 1; b < blocks_.size(); ++b) offsets_[b] = offsets_[b - 1] + blocks_[b - 1].indices.size();
  once_ = std::make_unique<std::once_flag[]>(blocks_.size());
}

const SectorSpectrum::Block& SectorSpectrum::block(std::size_t b) const {
  auto& blk = blocks_.at(b);
  std::call_once(once_[b], [&] {
    const auto m = static_cast<Eigen::Index>(blk.indices.size());
    Eigen::MatrixXd dense = Eigen::MatrixXd::Zero(m, m);
    std::vector<Eigen::Index> local(h_->basis->size(), -1);
    for (Eigen::Index i = 0; i < m; ++i) local[blk.indices[static_cast<std::size_t>(i)]] = i;
    for (Eigen::Index i = 0; i < m; ++i) {
      for (SparseMatrix::InnerIterator it(h_->matrix, static_cast<Eigen::Index>(blk.indices[static_cast<std::size_t>(i)]));
           it; ++it) {
        const auto j = local[static_cast<std::size_t>(it.col())];
        if (j >= 0) dense(i, j) = it.value();
      }
    }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(dense);
    if (eig.info() != Eigen::Success) throw NumericalError("block eigendecomposition failed");
    blk.eigenvalues = eig.eigenvalues();
    blk.eigenvectors = eig.eigenvectors();
  });
  return blk;
}

Eigen::VectorXcd SectorSpectrum::to_eigenbasis(const Eigen::VectorXcd& v) const {
  if (static_cast<std::size_t>(v.size()) != basis().size()) throw DomainError("vector length does not match the sector");
  Eigen::VectorXcd c = Eigen::VectorXcd::Zero(v.size());
  for (std::size_t b = 0; b < blocks_.size(); ++b) {
    const auto& idx = blocks_[b].indices;
    const auto m = static_cast<Eigen::Index>(idx.size());
    Eigen::VectorXcd x(m);
    for (Eigen::Index i = 0; i < m; ++i) x(i) = v(static_cast<Eigen::Index>(idx[static_cast<std::size_t>(i)]));
    if (x.squaredNorm() == 0.0) continue;
    const auto& vec = block(b).eigenvectors;
    const Eigen::VectorXd re = vec.transpose() * x.real();
    const Eigen::VectorXd im = vec.transpose() * x.imag();
    for (Eigen::Index k = 0; k < m; ++k)
      c(static_cast<Eigen::Index>(offsets_[b]) + k) = std::complex<double>(re(k), im(k));
  }
  return c;
}

Eigen::VectorXcd SectorSpectrum::from_eigenbasis(const Eigen::VectorXcd& c) const {
  if (static_cast<std::size_t>(c.size()) != basis().size()) throw DomainError("vector length does not match the sector");
  Eigen::VectorXcd v = Eigen::VectorXcd::Zero(c.size());
  for (std::size_t b = 0; b < blocks_.size(); ++b) {
    const auto m = static_cast<Eigen::Index>(blocks_[b].indices.size());
    const auto seg = c.segment(static_cast<Eigen::Index>(offsets_[b]), m);
    if (seg.squaredNorm() == 0.0) continue;
    const auto& vec = block(b).eigenvectors;
    const Eigen::VectorXd re = vec * seg.real();
    const Eigen::VectorXd im = vec * seg.imag();
    for (Eigen::Index i = 0; i < m; ++i)
      v(static_cast<Eigen::Index>(blocks_[b].indices[static_cast<std::size_t>(i)])) = std::complex<double>(re(i), im(i));
  }
  return v;
}

double SectorSpectrum::eigenvalue(std::size_t position) const {
  const auto it = std::upper_bound(offsets_.begin(), offsets_.end(), position);
  const auto b = static_cast<std::size_t>(it - offsets_.begin()) - 1;
  return block(b).eigenvalues(static_cast<Eigen::Index>(position - offsets_[b]));
}

Eigen::VectorXd SectorSpectrum::eigenvector(std::size_t b, std::size_t k) const {
  const auto& blk = block(b);
  Eigen::VectorXd v = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(basis().size()));
  for (std::size_t i = 0; i < blk.indices.size(); ++i)
    v(static_cast<Eigen::Index>(blk.indices[i])) =
        blk.eigenvectors(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(k));
  return v;
}

Eigen::VectorXcd evolve_exact(const SectorSpectrum& spectrum, const Eigen::VectorXcd& state, double delta,
                              double power) {
  if (!std::isfinite(delta * power)) throw DomainError("evolution time must be finite");
  Eigen::VectorXcd c = spectrum.to_eigenbasis(state);
  const double two_pi = 2.0 * std::numbers::pi;
  for (Eigen::Index k = 0; k < c.size(); ++k) {
    if (c(k) == std::complex<double>{}) continue;
    const double step = std::fmod(spectrum.eigenvalue(static_cast<std::size_t>(k)) * delta, two_pi);
    c(k) *= std::polar(1.0, -std::fmod(step * power, two_pi));
  }
  return spectrum.from_eigenbasis(c);
}

FciSolution select_block_states(const SectorSpectrum& spectrum, std::size_t block, int count, const StateFilter& keep,
                                int n_leading) {
  const auto& blk = spectrum.block(block);
  const auto& basis = spectrum.basis();
  const double m = spin_z(basis);
  const SparseMatrix s = spin_raising(basis);
  std::vector<double> energies;
  std::vector<Eigen::VectorXd> vectors;
  for (Eigen::Index k = 0; k < blk.eigenvalues.size() && static_cast<int>(vectors.size()) < count; ++k) {
    Eigen::VectorXd v = spectrum.eigenvector(block, static_cast<std::size_t>(k));
    const Eigen::VectorXd raised = s * v;
    const double s2 = m * m + m + raised.squaredNorm();
    if (!keep(blk.eigenvalues(k), s2, orbital_occupations(basis, v))) continue;
    energies.push_back(blk.eigenvalues(k));
    vectors.push_back(std::move(v));
  }
  FciSolution sol;
  sol.basis = spectrum.hamiltonian().basis;
  sol.eigenvalues = Eigen::Map<const Eigen::VectorXd>(energies.data(), static_cast<Eigen::Index>(energies.size()));
  sol.eigenvectors.resize(static_cast<Eigen::Index>(basis.size()), static_cast<Eigen::Index>(vectors.size()));
  for (std::size_t j = 0; j < vectors.size(); ++j) sol.eigenvectors.col(static_cast<Eigen::Index>(j)) = vectors[j];
  fill_properties(sol, n_leading);
  return sol;
}

std::optional<StateLabel> classify_against_fci(double energy, const FciSolution& sol, double tol) {
  if (!(tol > 0.0)) throw DomainError("classification tolerance must be positive");
  std::optional<StateLabel> best;
  for (Eigen::Index k = 0; k < sol.eigenvalues.size(); ++k) {
    const double d = std::abs(energy - sol.eigenvalues(k));
    if (d > tol || (best && d >= best->distance)) continue;
    StateLabel l;
    l.index = static_cast<std::size_t>(k);
    l.energy = sol.eigenvalues(k);
    l.distance = d;
    if (static_cast<std::size_t>(k) < sol.s2.size()) l.s2 = sol.s2[static_cast<std::size_t>(k)];
    if (static_cast<std::size_t>(k) < sol.leading.size()) l.leading = sol.leading[static_cast<std::size_t>(k)];
    best = std::move(l);
  }
  return best;
}

}  // namespace clqpe
