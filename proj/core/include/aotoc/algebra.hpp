// Copyright 2026 The aotoc Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include "aotoc/numerics.hpp"

#include <optional>
#include <variant>
#include <vector>

namespace aotoc {

/// One block C^n (x) C^d of the algebra-induced decomposition. The algebra
/// acts as 1_n (x) L(C^d); its commutant as L(C^n) (x) 1_d.
struct Block {
  int multiplicity;  // n_J
  int factor;        // d_J
  bool operator==(const Block&) const = default;
};

/// Block structure plus the unitary taking block coordinates to the global
/// computational basis. Block coordinates are ordered block by block, and
/// within block J as |p> (x) |k> with index offset_J + p * d_J + k.
struct BlockSpec {
  std::vector<Block> blocks;
  Matrix embedding;  // d x d unitary; empty means identity

  int dim() const;
  std::vector<int> offsets() const;
  /// Throws std::invalid_argument on dimension mismatch or non-unitary embedding.
  void validate(double tol = kStructuralTol) const;
};

struct AlgebraDims {
  int d = 0;              // Hilbert space dimension
  int centre = 0;         // number of blocks
  int dim_algebra = 0;    // sum d_J^2
  int dim_commutant = 0;  // sum n_J^2
};

/// Immutable block-structured *-algebra with canonical orthogonal bases of
/// the algebra (e_basis) and of its commutant (f_basis).
///
/// e_(J,k,l) = 1_{n_J}/sqrt(d_J) (x) |k><l| and f_(J,p,q) = |p><q| (x)
/// 1_{d_J}/sqrt(n_J), both conjugated by the embedding. The f basis may be
/// replaced by a unitary mixture (see with_commutant_basis); the e basis is
/// always canonical.
class AlgebraHandle {
 public:
  const BlockSpec& spec() const { return spec_; }
  const std::vector<Matrix>& e_basis() const { return e_basis_; }
  const std::vector<Matrix>& f_basis() const { return f_basis_; }
  const AlgebraDims& dims() const { return dims_; }
  int dim() const { return dims_.d; }
  const Matrix& embedding() const { return spec_.embedding; }
  /// Block index of each f element; -1 once the basis has been mixed.
  const std::vector<int>& f_block() const { return f_block_; }
  bool f_basis_orthogonal() const { return f_orthogonal_; }

 private:
  friend AlgebraHandle build_block_algebra(const BlockSpec&, double);
  friend AlgebraHandle with_commutant_basis(const AlgebraHandle&, const Matrix&);

  BlockSpec spec_;
  std::vector<Matrix> e_basis_;
  std::vector<Matrix> f_basis_;
  std::vector<int> e_block_;
  std::vector<int> f_block_;
  AlgebraDims dims_;
  bool f_orthogonal_ = true;
};

AlgebraHandle build_block_algebra(const BlockSpec& spec, double tol = kStructuralTol);

/// Swaps the roles n_J <-> d_J (and the e/f bases). commutant(commutant(A))
/// reproduces A exactly.
AlgebraHandle commutant(const AlgebraHandle& a);

/// Replaces the f basis by f'_delta = sum_gamma U(gamma, delta) f_gamma.
AlgebraHandle with_commutant_basis(const AlgebraHandle& a, const Matrix& mixing);

enum class ProjectionMethod { osr, gram };

/// Orthogonal projection onto the commutant A'.
///   osr:  sum_alpha e_alpha X e_alpha^dagger
///   gram: least squares onto span(f_basis); equals sum f~ <f~, X> for an
///         orthogonal basis.
Matrix project_commutant(const AlgebraHandle& a, const Matrix& x,
                         ProjectionMethod method = ProjectionMethod::gram);

struct DimsAndBounds {
  int dim_algebra = 0;
  int dim_commutant = 0;
  double bound = 0.0;    // min{1 - 1/d(A), 1 - 1/d(A')}
  double typical = 0.0;  // Haar average over unitary channels
};
DimsAndBounds dims_and_bounds(const AlgebraHandle& a);
double typical_value(int d, int dim_algebra, int dim_commutant);

struct Collinearity {
  bool collinear = false;
  std::optional<int> ratio;  // lambda with d_J = lambda * n_J
};
Collinearity is_collinear(const AlgebraHandle& a);

/// Omega = sum_b b (x) b^dagger over a basis, on H (x) H.
Matrix omega(const std::vector<Matrix>& basis);
inline Matrix omega_algebra(const AlgebraHandle& a) { return omega(a.e_basis()); }
inline Matrix omega_commutant(const AlgebraHandle& a) { return omega(a.f_basis()); }

/// Block-coordinate form of Omega_A: direct sum of 1_{n_J}^{(x)2} (x) S_{d_J}/d_J,
/// rotated by embedding (x) embedding.
Matrix omega_algebra_block_form(const AlgebraHandle& a);

/// d^2 x d^2 superoperator of P_{A'} (column stacking).
Matrix commutant_projector_superop(const AlgebraHandle& a);

/// Rotated basis element sum_J sum_k sqrt(d_J/d(A)) e_(J,k,k); equals 1/sqrt(d(A)).
Matrix identity_basis_element(const AlgebraHandle& a);

// Named algebras.

struct MaximalAbelian {
  Matrix basis;  // columns form an orthonormal basis
};
struct Bipartite {
  int dim_a;
  int dim_b;
};
struct ProjectorOnto {
  Vector state;
};
struct DecoherenceFree {
  Matrix subspace;  // orthonormal columns spanning the protected subspace
};
using NamedAlgebra = std::variant<MaximalAbelian, Bipartite, ProjectorOnto, DecoherenceFree>;

AlgebraHandle make_named_algebra(const NamedAlgebra& kind);
AlgebraHandle maximal_abelian_algebra(const Matrix& basis);
AlgebraHandle maximal_abelian_algebra(int d);
/// A = 1_A (x) L(H_B), A' = L(H_A) (x) 1_B on C^{dA} (x) C^{dB}.
AlgebraHandle bipartite_algebra(int dim_a, int dim_b);
/// A' = span{Pi, 1 - Pi} for Pi = |psi><psi|.
AlgebraHandle projector_algebra(const Vector& state);
/// Blocks (1, d - d_D), (d_D, 1); A' = span{1_perp, |p><q|/sqrt(d_D)}.
AlgebraHandle dfs_algebra(const Matrix& subspace);

}  // namespace aotoc
