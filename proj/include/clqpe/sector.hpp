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
#include <functional>
#include <memory>
#include <mutex>
#include <optional>
#include <unordered_map>
#include <vector>

#include <Eigen/Core>
#include <Eigen/SparseCore>

#include "clqpe/determinant.hpp"
#include "clqpe/fcidump.hpp"

namespace clqpe {

/// Spatial irrep of a determinant as a 0-based D2h-subgroup label: the XOR of
/// (irrep - 1) over occupied spin orbitals.
int determinant_irrep(const Determinant& det, const std::vector<int>& orbital_irreps);

/// Determinants at fixed (n_alpha, n_beta), ordered by alpha string then beta
/// string (each string ordered by its bitmask value).
class SectorBasis {
 public:
  int n_spatial() const noexcept { return n_spatial_; }
  int n_alpha() const noexcept { return n_alpha_; }
  int n_beta() const noexcept { return n_beta_; }
  std::size_t size() const noexcept { return dets_.size(); }
  const std::vector<Determinant>& determinants() const noexcept { return dets_; }
  const Determinant& operator[](std::size_t i) const noexcept { return dets_[i]; }
  std::optional<std::size_t> index_of(const Determinant& det) const;
  /// Irrep filter applied at enumeration (0-based label), if any.
  std::optional<int> irrep() const noexcept { return irrep_; }

 private:
  friend SectorBasis enumerate_basis(int, int, int, std::size_t, std::optional<int>, const std::vector<int>&);
  int n_spatial_ = 0, n_alpha_ = 0, n_beta_ = 0;
  std::optional<int> irrep_;
  std::vector<Determinant> dets_;
  std::unordered_map<std::uint64_t, std::size_t> index_;
};

/// `irrep` keeps only determinants of that 0-based label under `orbital_irreps`.
SectorBasis enumerate_basis(int n_spatial, int n_alpha, int n_beta, std::size_t cap = 5'000'000,
                            std::optional<int> irrep = std::nullopt, const std::vector<int>& orbital_irreps = {});

using SparseMatrix = Eigen::SparseMatrix<double, Eigen::RowMajor>;

struct SectorHamiltonian {
  std::shared_ptr<const SectorBasis> basis;
  std::shared_ptr<const IntegralSet> integrals;
  SparseMatrix matrix;  // Hartree, includes the core energy on the diagonal
};

/// Slater-Condon matrix element <bra|H|ket> between determinants given as
/// spin-orbital masks, with the ascending-creation-order phase convention.
double slater_condon(const IntegralSet& ints, std::uint64_t bra, std::uint64_t ket);

SectorHamiltonian build_sector_hamiltonian(const IntegralSet& ints, std::shared_ptr<const SectorBasis> basis);
SectorHamiltonian build_sector_hamiltonian(const IntegralSet& ints, SectorBasis basis);

/// Dense copy, for small sectors and tests.
Eigen::MatrixXd dense_matrix(const SectorHamiltonian& h);

struct WeightedDeterminant {
  double weight = 0.0;  // |c|^2
  double coefficient = 0.0;
  Determinant det;
};

struct FciSolution {
  Eigen::VectorXd eigenvalues;   // ascending, Hartree
  Eigen::MatrixXd eigenvectors;  // columns over the SectorBasis
  std::vector<double> s2;
  std::vector<std::vector<WeightedDeterminant>> leading;
  std::shared_ptr<const SectorBasis> basis;
};

struct FciOptions {
  std::size_t dense_threshold = 2000;
  bool force_dense = false;
  double residual_tolerance = 1e-8;
  int max_iterations = 400;
  int n_leading = 4;
};

/// Lowest n_states eigenpairs: dense below the threshold, Davidson above it.
FciSolution fci_solve(const SectorHamiltonian& h, int n_states, const FciOptions& options = {});

/// <S^2> of a real or complex sector vector.
double spin_squared(const SectorBasis& basis, const Eigen::Ref<const Eigen::VectorXcd>& v);
double spin_squared(const SectorBasis& basis, const Eigen::Ref<const Eigen::VectorXd>& v);

/// Spatial-orbital occupation numbers (0..2) of a sector vector.
Eigen::VectorXd orbital_occupations(const SectorBasis& basis, const Eigen::Ref<const Eigen::VectorXd>& v);

/// Up to `count` largest-magnitude components, skipping those below 1e-10.
std::vector<WeightedDeterminant> leading_determinants(const SectorBasis& basis,
                                                      const Eigen::Ref<const Eigen::VectorXd>& v, int count);

/// Amplitudes of a determinant superposition over the sector basis.
Eigen::VectorXcd sector_vector(const SectorBasis& basis, const WeightedDeterminantState& state);

/// Exact spectral decomposition of a sector Hamiltonian, computed lazily one
/// symmetry block at a time. Blocks are the spatial irreps when the integrals
/// carry ORBSYM and the Hamiltonian respects it, else connected components.
/// Thread-safe: each block is diagonalized at most once.
class SectorSpectrum {
 public:
  explicit SectorSpectrum(std::shared_ptr<const SectorHamiltonian> h);

  struct Block {
    std::vector<std::size_t> indices;  // into the basis, ascending
    std::optional<int> irrep;
    Eigen::VectorXd eigenvalues;
    Eigen::MatrixXd eigenvectors;  // local: rows follow `indices`
  };

  const SectorHamiltonian& hamiltonian() const noexcept { return *h_; }
  const SectorBasis& basis() const noexcept { return *h_->basis; }
  std::size_t n_blocks() const noexcept { return blocks_.size(); }
  std::size_t block_size(std::size_t b) const noexcept { return blocks_[b].indices.size(); }
  std::optional<int> block_irrep(std::size_t b) const noexcept { return blocks_[b].irrep; }
  std::size_t block_of(std::size_t basis_index) const noexcept { return block_of_[basis_index]; }
  /// Position of block b's first eigenvalue in the concatenated eigenbasis.
  std::size_t block_offset(std::size_t b) const noexcept { return offsets_[b]; }

  /// Diagonalizes on first use.
  const Block& block(std::size_t b) const;

  /// Eigenbasis coefficients, concatenated block by block. Blocks on which
  /// `v` vanishes are left zero and never diagonalized.
  Eigen::VectorXcd to_eigenbasis(const Eigen::VectorXcd& v) const;
  Eigen::VectorXcd from_eigenbasis(const Eigen::VectorXcd& c) const;
  /// Eigenvalue at a concatenated position; its block must be diagonalized.
  double eigenvalue(std::size_t position) const;

  /// Full-length eigenvector of block b, local state k.
  Eigen::VectorXd eigenvector(std::size_t b, std::size_t k) const;

 private:
  std::shared_ptr<const SectorHamiltonian> h_;
  mutable std::vector<Block> blocks_;
  std::vector<std::size_t> block_of_;
  std::vector<std::size_t> offsets_;
  mutable std::unique_ptr<std::once_flag[]> once_;
};

/// state <- exp(-i H delta power) state, core phase included.
Eigen::VectorXcd evolve_exact(const SectorSpectrum& spectrum, const Eigen::VectorXcd& state, double delta,
                              double power = 1.0);

/// Eigenstates of one block passing `keep` (given energy, <S^2>, occupations),
/// lowest first, at most `count` of them.
using StateFilter = std::function<bool(double energy, double s2, const Eigen::VectorXd& occupations)>;
FciSolution select_block_states(const SectorSpectrum& spectrum, std::size_t block, int count, const StateFilter& keep,
                                int n_leading = 4);

struct StateLabel {
  std::size_t index = 0;
  double energy = 0.0;
  double distance = 0.0;
  double s2 = 0.0;
  std::vector<WeightedDeterminant> leading;
};

std::optional<StateLabel> classify_against_fci(double energy, const FciSolution& sol, double tol);

}  // namespace clqpe
