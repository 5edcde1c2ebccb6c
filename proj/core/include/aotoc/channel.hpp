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

#include <string_view>
#include <vector>

namespace aotoc {

enum class Provenance { identity, kraus, unitary, dephasing, lindblad, composite, superop };

std::string_view to_string(Provenance p);

/// Heisenberg-picture unital channel stored as a d^2 x d^2 superoperator
/// acting on column-stacked operators. Immutable once built.
class ChannelHandle {
 public:
  ChannelHandle(Matrix superop, Provenance provenance);

  const Matrix& superop() const { return superop_; }
  int dim() const { return dim_; }
  Provenance provenance() const { return provenance_; }

 private:
  Matrix superop_;
  int dim_;
  Provenance provenance_;
};

/// Hamiltonian and jump operators of a Lindbladian (hbar = 1, rates absorbed
/// into the jumps).
struct LindbladSpec {
  Matrix hamiltonian;
  std::vector<Matrix> jumps;

  int dim() const { return static_cast<int>(hamiltonian.rows()); }
  /// Throws std::invalid_argument on a non-Hermitian H or mismatched jumps.
  void validate(double tol = kStructuralTol) const;
};

/// Superoperator sum conj(K) (x) K; requires sum K^dag K = sum K K^dag = 1.
ChannelHandle from_kraus(const std::vector<Matrix>& kraus, double tol = kNumericalTol);
/// X -> U X U^dagger.
ChannelHandle from_unitary(const Matrix& u, double tol = kStructuralTol);
/// X -> sum_i P_i X P_i over a complete set of orthogonal projectors.
ChannelHandle dephasing_channel(const std::vector<Matrix>& projectors, double tol = kNumericalTol);
ChannelHandle identity_channel(int d);
/// X -> Tr[X] 1/d.
ChannelHandle depolarizing_channel(int d);
/// (outer o inner)(X) = outer(inner(X)).
ChannelHandle compose(const ChannelHandle& outer, const ChannelHandle& inner);
/// Hilbert-Schmidt adjoint (the Schroedinger-picture map).
ChannelHandle adjoint(const ChannelHandle& e);
/// Convex combination sum_i w_i E_i.
ChannelHandle mix(const std::vector<double>& weights, const std::vector<ChannelHandle>& channels);

/// Heisenberg generator
///   i(1 (x) H^dag - H^* (x) 1) + sum_j (L_j^T (x) L_j^dag - 1/2 1 (x) L_j^dag L_j
///   - 1/2 L_j^T L_j^* (x) 1)
/// under vec(AXB) = (B^T (x) A) vec(X).
Matrix lindblad_superop(const LindbladSpec& spec);
SparseMatrix lindblad_superop_sparse(const LindbladSpec& spec);

/// Direct (unvectorized) action of the generator, used as a cross-check.
Matrix lindblad_apply(const LindbladSpec& spec, const Matrix& x);

/// exp(t L) as a dense channel.
ChannelHandle propagate(const LindbladSpec& spec, double t);

Matrix apply(const ChannelHandle& e, const Matrix& x);

/// Choi matrix sum_ij |i><j| (x) E(|i><j|).
Matrix choi_matrix(const ChannelHandle& e);

struct ChannelReport {
  bool unital = false;
  bool trace_preserving = false;
  bool cp = false;
  double unital_defect = 0.0;
  double trace_defect = 0.0;
  double min_choi_eigenvalue = 0.0;
  bool ok() const { return unital && trace_preserving && cp; }
};

ChannelReport verify_channel(const ChannelHandle& e, double tol = kNumericalTol);

/// Unital and trace-preservation defects only (no eigendecomposition).
double unital_defect(const ChannelHandle& e);
double trace_defect(const ChannelHandle& e);

}  // namespace aotoc
