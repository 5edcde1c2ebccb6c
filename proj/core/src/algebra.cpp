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

#include "aotoc/algebra.hpp"

#include <numeric>
#include <string>

namespace aotoc {

int BlockSpec::dim() const {
  int d = 0;
  for (const auto& b : blocks) d += b.multiplicity * b.factor;
  return d;
}

std::vector<int> BlockSpec::offsets() const {
  std::vector<int> out;
  out.reserve(blocks.size());
  int off = 0;
  for (const auto& b : blocks) {
    out.push_back(off);
    off += b.multiplicity * b.factor;
  }
  return out;
}

void BlockSpec::validate(double tol) const {
  if (blocks.empty()) throw std::invalid_argument("BlockSpec: no blocks");
  for (const auto& b : blocks)
    if (b.multiplicity < 1 || b.factor < 1)
      throw std::invalid_argument("BlockSpec: block sizes must be positive");
  const int d = dim();
  if (embedding.size() == 0) return;
  if (embedding.rows() != d || embedding.cols() != d)
    throw std::invalid_argument("BlockSpec: dimension mismatch, sum n_J d_J = " + std::to_string(d) +
                                " but embedding is " + std::to_string(embedding.rows()) + "x" +
                                std::to_string(embedding.cols()));
  const double defect = unitarity_defect(embedding);
  if (defect > tol)
    throw std::invalid_argument("BlockSpec: embedding is not unitary (defect " + std::to_string(defect) + ")");
}

AlgebraHandle build_block_algebra(const BlockSpec& spec, double tol) {
  spec.validate(tol);
  AlgebraHandle a;
  a.spec_ = spec;
  const int d = spec.dim();
  if (a.spec_.embedding.size() == 0) a.spec_.embedding = Matrix::Identity(d, d);
  const Matrix& v = a.spec_.embedding;

  a.dims_.d = d;
  a.dims_.centre = static_cast<int>(spec.blocks.size());
  const auto offsets = spec.offsets();
  for (std::size_t j = 0; j < spec.blocks.size(); ++j) {
    const auto [n, f] = spec.blocks[j];
    const int off = offsets[j];
    a.dims_.dim_algebra += f * f;
    a.dims_.dim_commutant += n * n;
    const double e_scale = 1.0 / std::sqrt(static_cast<double>(f));
    const double f_scale = 1.0 / std::sqrt(static_cast<double>(n));
    // e_(J,k,l) = 1_n / sqrt(d_J) (x) |k><l|
    for (int k = 0; k < f; ++k) {
      for (int l = 0; l < f; ++l) {
        Matrix e = Matrix::Zero(d, d);
        for (int p = 0; p < n; ++p)
          e.noalias() += v.col(off + p * f + k) * v.col(off + p * f + l).adjoint();
        a.e_basis_.push_back(e * e_scale);
        a.e_block_.push_back(static_cast<int>(j));
      }
    }
    // f_(J,p,q) = |p><q| (x) 1_d / sqrt(n_J)
    for (int p = 0; p < n; ++p) {
      for (int q = 0; q < n; ++q) {
        Matrix g = Matrix::Zero(d, d);
        for (int k = 0; k < f; ++k)
          g.noalias() += v.col(off + p * f + k) * v.col(off + q * f + k).adjoint();
        a.f_basis_.push_back(g * f_scale);
        a.f_block_.push_back(static_cast<int>(j));
      }
    }
  }
  return a;
}

AlgebraHandle commutant(const AlgebraHandle& a) {
  const BlockSpec& s = a.spec();
  BlockSpec swapped;
  swapped.embedding = Matrix(s.embedding.rows(), s.embedding.cols());
  const auto offsets = s.offsets();
  for (std::size_t j = 0; j < s.blocks.size(); ++j) {
    const auto [n, f] = s.blocks[j];
    swapped.blocks.push_back({f, n});
    const int off = offsets[j];
    for (int p = 0; p < n; ++p)
      for (int k = 0; k < f; ++k) swapped.embedding.col(off + k * n + p) = s.embedding.col(off + p * f + k);
  }
  return build_block_algebra(swapped);
}

AlgebraHandle with_commutant_basis(const AlgebraHandle& a, const Matrix& mixing) {
  const auto m = static_cast<Index>(a.f_basis().size());
  if (mixing.rows() != m || mixing.cols() != m)
    throw std::invalid_argument("with_commutant_basis: mixing matrix must be d(A') x d(A')");
  if (unitarity_defect(mixing) > 1e-10)
    throw std::invalid_argument("with_commutant_basis: mixing matrix is not unitary");
  AlgebraHandle out = a;
  for (Index delta = 0; delta < m; ++delta) {
    Matrix g = Matrix::Zero(a.dim(), a.dim());
    for (Index gamma = 0; gamma < m; ++gamma)
      if (mixing(gamma, delta) != cplx(0.0)) g += mixing(gamma, delta) * a.f_basis()[static_cast<std::size_t>(gamma)];
    out.f_basis_[static_cast<std::size_t>(delta)] = std::move(g);
    out.f_block_[static_cast<std::size_t>(delta)] = -1;
  }
  // Mixing elements of unequal norm destroys orthogonality.
  out.f_orthogonal_ = true;
  for (Index i = 0; i < m && out.f_orthogonal_; ++i)
    for (Index j = i + 1; j < m; ++j)
      if (std::abs(hs_inner(out.f_basis_[static_cast<std::size_t>(i)], out.f_basis_[static_cast<std::size_t>(j)])) > 1e-10) {
        out.f_orthogonal_ = false;
        break;
      }
  return out;
}

Matrix project_commutant(const AlgebraHandle& a, const Matrix& x, ProjectionMethod method) {
  const int d = a.dim();
  if (x.rows() != d || x.cols() != d)
    throw std::invalid_argument("project_commutant: operator is " + std::to_string(x.rows()) + "x" +
                                std::to_string(x.cols()) + ", algebra dimension is " + std::to_string(d));
  Matrix out = Matrix::Zero(d, d);
  if (method == ProjectionMethod::osr) {
    for (const auto& e : a.e_basis()) out.noalias() += e * x * e.adjoint();
    return out;
  }
  const auto& fs = a.f_basis();
  const auto m = static_cast<Index>(fs.size());
  Vector b(m);
  for (Index g = 0; g < m; ++g) b(g) = hs_inner(fs[static_cast<std::size_t>(g)], x);
  Vector c(m);
  if (a.f_basis_orthogonal()) {
    for (Index g = 0; g < m; ++g) c(g) = b(g) / hs_norm2(fs[static_cast<std::size_t>(g)]);
  } else {
    Matrix gram(m, m);
    for (Index i = 0; i < m; ++i)
      for (Index j = 0; j < m; ++j) gram(i, j) = hs_inner(fs[static_cast<std::size_t>(i)], fs[static_cast<std::size_t>(j)]);
    c = gram.ldlt().solve(b);
  }
  for (Index g = 0; g < m; ++g) out += c(g) * fs[static_cast<std::size_t>(g)];
  return out;
}

double typical_value(int d, int dim_algebra, int dim_commutant) {
  const double d2 = static_cast<double>(d) * d;
  if (d <= 1) return 0.0;
  return (d2 - dim_algebra) * (d2 - dim_commutant) / (d2 * (d2 - 1.0));
}

DimsAndBounds dims_and_bounds(const AlgebraHandle& a) {
  DimsAndBounds out;
  out.dim_algebra = a.dims().dim_algebra;
  out.dim_commutant = a.dims().dim_commutant;
  out.bound = std::min(1.0 - 1.0 / out.dim_algebra, 1.0 - 1.0 / out.dim_commutant);
  out.typical = typical_value(a.dim(), out.dim_algebra, out.dim_commutant);
  return out;
}

Collinearity is_collinear(const AlgebraHandle& a) {
  const auto& blocks = a.spec().blocks;
  const auto [n0, d0] = blocks.front();
  for (const auto& b : blocks)
    if (static_cast<long long>(b.factor) * n0 != static_cast<long long>(d0) * b.multiplicity) return {};
  Collinearity out{true, std::nullopt};
  if (d0 % n0 == 0) out.ratio = d0 / n0;
  return out;
}

Matrix omega(const std::vector<Matrix>& basis) {
  if (basis.empty()) return {};
  const Index d = basis.front().rows();
  Matrix out = Matrix::Zero(d * d, d * d);
  for (const auto& b : basis) out += kron(b, Matrix(b.adjoint()));
  return out;
}

Matrix omega_algebra_block_form(const AlgebraHandle& a) {
  const BlockSpec& s = a.spec();
  const int d = a.dim();
  Matrix block = Matrix::Zero(static_cast<Index>(d) * d, static_cast<Index>(d) * d);
  const auto offsets = s.offsets();
  for (std::size_t j = 0; j < s.blocks.size(); ++j) {
    const auto [n, f] = s.blocks[j];
    const int off = offsets[j];
    const double w = 1.0 / f;
    // <p k, p' k'| 1 (x) 1 (x) S/d_J |p l, p' l'> = delta(k, l') delta(k', l) / d_J
    for (int p = 0; p < n; ++p)
      for (int pp = 0; pp < n; ++pp)
        for (int k = 0; k < f; ++k)
          for (int kk = 0; kk < f; ++kk) {
            const Index row = static_cast<Index>(off + p * f + k) * d + (off + pp * f + kk);
            const Index col = static_cast<Index>(off + p * f + kk) * d + (off + pp * f + k);
            block(row, col) = w;
          }
  }
  const Matrix vv = kron(s.embedding, s.embedding);
  return vv * block * vv.adjoint();
}

Matrix commutant_projector_superop(const AlgebraHandle& a) {
  const int d = a.dim();
  Matrix out = Matrix::Zero(static_cast<Index>(d) * d, static_cast<Index>(d) * d);
  for (const auto& e : a.e_basis()) out += kron(Matrix(e.conjugate()), e);
  return out;
}

Matrix identity_basis_element(const AlgebraHandle& a) {
  const auto& blocks = a.spec().blocks;
  const double dim_a = a.dims().dim_algebra;
  Matrix out = Matrix::Zero(a.dim(), a.dim());
  std::size_t index = 0;
  for (const auto& b : blocks) {
    const double w = std::sqrt(b.factor / dim_a);
    for (int k = 0; k < b.factor; ++k)
      for (int l = 0; l < b.factor; ++l, ++index)
        if (k == l) out += w * a.e_basis()[index];
  }
  return out;
}

AlgebraHandle maximal_abelian_algebra(const Matrix& basis) {
  const auto d = static_cast<int>(basis.rows());
  if (basis.cols() != d) throw std::invalid_argument("maximal_abelian_algebra: basis must be square");
  if (unitarity_defect(basis) > kStructuralTol)
    throw std::invalid_argument("maximal_abelian_algebra: basis is not orthonormal");
  BlockSpec spec;
  spec.blocks.assign(static_cast<std::size_t>(d), Block{1, 1});
  spec.embedding = basis;
  return build_block_algebra(spec);
}

AlgebraHandle maximal_abelian_algebra(int d) { return maximal_abelian_algebra(Matrix::Identity(d, d)); }

AlgebraHandle bipartite_algebra(int dim_a, int dim_b) {
  if (dim_a < 1 || dim_b < 1) throw std::invalid_argument("bipartite_algebra: factor dimensions must be positive");
  BlockSpec spec;
  spec.blocks = {Block{dim_a, dim_b}};
  return build_block_algebra(spec);
}

AlgebraHandle projector_algebra(const Vector& state) {
  const auto d = static_cast<int>(state.size());
  if (d < 2) throw std::invalid_argument("projector_algebra: need dimension >= 2");
  if (std::abs(state.norm() - 1.0) > kStructuralTol)
    throw std::invalid_argument("projector_algebra: state is not normalized");
  BlockSpec spec;
  spec.blocks = {Block{1, 1}, Block{1, d - 1}};
  spec.embedding = complete_basis(state);
  return build_block_algebra(spec);
}

AlgebraHandle dfs_algebra(const Matrix& subspace) {
  const auto d = static_cast<int>(subspace.rows());
  const auto dd = static_cast<int>(subspace.cols());
  if (dd < 1 || dd >= d) throw std::invalid_argument("dfs_algebra: subspace dimension must lie in [1, d)");
  if (max_abs(subspace.adjoint() * subspace - Matrix::Identity(dd, dd)) > kStructuralTol)
    throw std::invalid_argument("dfs_algebra: subspace basis is not orthonormal");
  const Matrix full = complete_basis(subspace);
  BlockSpec spec;
  spec.blocks = {Block{1, d - dd}, Block{dd, 1}};
  spec.embedding = Matrix(d, d);
  spec.embedding.leftCols(d - dd) = full.rightCols(d - dd);
  spec.embedding.rightCols(dd) = subspace;
  return build_block_algebra(spec);
}

AlgebraHandle make_named_algebra(const NamedAlgebra& kind) {
  return std::visit(
      [](const auto& k) -> AlgebraHandle {
        using K = std::decay_t<decltype(k)>;
        if constexpr (std::is_same_v<K, MaximalAbelian>) return maximal_abelian_algebra(k.basis);
        else if constexpr (std::is_same_v<K, Bipartite>) return bipartite_algebra(k.dim_a, k.dim_b);
        else if constexpr (std::is_same_v<K, ProjectorOnto>) return projector_algebra(k.state);
        else return dfs_algebra(k.subspace);
      },
      kind);
}

}  // namespace aotoc
