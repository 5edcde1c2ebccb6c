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

#include <Eigen/Dense>
#include <Eigen/Sparse>

#include <cmath>
#include <complex>
#include <cstdint>
#include <functional>
#include <random>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace aotoc {

using cplx = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;
using RealMatrix = Eigen::MatrixXd;
using SparseMatrix = Eigen::SparseMatrix<cplx, Eigen::ColMajor>;
using Index = Eigen::Index;

inline constexpr double kStructuralTol = 1e-12;
inline constexpr double kNumericalTol = 1e-10;

/// Raised when an iterative kernel exhausts its step budget.
class ConvergenceError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Seeded pseudo-random stream.
///
/// The engine is std::mt19937_64. Child streams are derived with
/// splitmix64 over (seed, stream id), so a master seed fans out into
/// reproducible, independent per-task streams. Streams are passed by value or
/// reference, never shared globally.
class Rng {
 public:
  explicit Rng(std::uint64_t seed);

  std::uint64_t seed() const { return seed_; }
  Rng split(std::uint64_t stream) const;

  double normal();
  double uniform();
  cplx complex_normal();  // E|z|^2 = 1
  std::mt19937_64& engine() { return engine_; }

 private:
  std::uint64_t seed_;
  std::mt19937_64 engine_;
  std::normal_distribution<double> normal_{0.0, 1.0};
  std::uniform_real_distribution<double> uniform_{0.0, 1.0};
};

std::uint64_t splitmix64(std::uint64_t x);

/// Haar-random unitary via QR of a complex Ginibre matrix, with the columns
/// of Q rephased by the phases of diag(R).
Matrix haar_unitary(Index dim, Rng& rng);

/// Column stacking: vec(A X B) = (B^T kron A) vec(X).
Vector vec(const Matrix& x);
Matrix unvec(const Vector& v);

Matrix kron(const Matrix& a, const Matrix& b);
SparseMatrix kron(const SparseMatrix& a, const SparseMatrix& b);
SparseMatrix sparse_identity(Index dim);

/// <A, B> = Tr[A^dagger B].
inline cplx hs_inner(const Matrix& a, const Matrix& b) {
  return (a.conjugate().cwiseProduct(b)).sum();
}
inline double hs_norm2(const Matrix& a) { return a.squaredNorm(); }

/// Largest entry modulus.
inline double max_abs(const Matrix& a) {
  return a.size() == 0 ? 0.0 : a.cwiseAbs().maxCoeff();
}

double unitarity_defect(const Matrix& u);
double hermiticity_defect(const Matrix& h);

/// Swap operator on C^d (x) C^d.
Matrix swap_operator(Index d);

/// Orthonormalizes the columns of `columns` with modified Gram-Schmidt,
/// dropping columns whose residual norm falls below `drop_tol`.
Matrix orthonormalize(const Matrix& columns, double drop_tol = 1e-8);

/// Returns a unitary whose leading columns are exactly `isometry` and whose
/// remaining columns span the orthogonal complement.
Matrix complete_basis(const Matrix& isometry);

/// Sums values pairwise in index order, so a parallel map followed by this
/// reduction is independent of the worker count.
double pairwise_sum(std::span<const double> values);

/// Worker count for parallel maps: AOTOC_WORKERS if set, else 1.
int worker_count();

/// Runs fn(i) for i in [0, n) over `workers` threads. fn must only write
/// to slots owned by i.
void parallel_for(Index n, const std::function<void(Index)>& fn, int workers = worker_count());

struct ExpOptions {
  // Vectorized dimension up to which dense scaling-and-squaring is used.
  Index dense_threshold = 4096;
  double tol = 1e-13;
  int max_terms = 80;
  int max_substeps = 1'000'000;
};

/// exp(t A) by scaling-and-squaring with Pade approximants.
Matrix matexp(const Matrix& a, double t);

/// exp(t A) v by substepped Taylor series, never forming exp(t A).
Vector matexp_apply(const SparseMatrix& a, double t, const Vector& v, const ExpOptions& opts = {});
Vector matexp_apply(const Matrix& a, double t, const Vector& v, const ExpOptions& opts = {});

/// Induced 1-norm (max column sum).
double norm1(const SparseMatrix& a);
double norm1(const Matrix& a);

}  // namespace aotoc
