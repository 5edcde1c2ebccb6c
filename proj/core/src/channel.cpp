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

#include "aotoc/channel.hpp"

#include <Eigen/Eigenvalues>

#include <string>

namespace aotoc {

std::string_view to_string(Provenance p) {
  switch (p) {
    case Provenance::identity: return "identity";
    case Provenance::kraus: return "kraus";
    case Provenance::unitary: return "unitary";
    case Provenance::dephasing: return "dephasing";
    case Provenance::lindblad: return "lindblad";
    case Provenance::composite: return "composite";
    case Provenance::superop: return "superop";
  }
  return "unknown";
}

ChannelHandle::ChannelHandle(Matrix superop, Provenance provenance)
    : superop_(std::move(superop)), dim_(0), provenance_(provenance) {
  if (superop_.rows() != superop_.cols())
    throw std::invalid_argument("ChannelHandle: superoperator must be square");
  const auto d = static_cast<Index>(std::llround(std::sqrt(static_cast<double>(superop_.rows()))));
  if (d * d != superop_.rows())
    throw std::invalid_argument("ChannelHandle: superoperator size is not a perfect square");
  dim_ = static_cast<int>(d);
}

void LindbladSpec::validate(double tol) const {
  const Index d = hamiltonian.rows();
  if (hamiltonian.cols() != d) throw std::invalid_argument("LindbladSpec: Hamiltonian must be square");
  if (hermiticity_defect(hamiltonian) > tol)
    throw std::invalid_argument("LindbladSpec: Hamiltonian is not Hermitian (defect " +
                                std::to_string(hermiticity_defect(hamiltonian)) + ")");
  for (const auto& l : jumps)
    if (l.rows() != d || l.cols() != d) throw std::invalid_argument("LindbladSpec: jump operator dimension mismatch");
}

namespace {

void check_square_set(const std::vector<Matrix>& ops, const char* who) {
  if (ops.empty()) throw std::invalid_argument(std::string(who) + ": empty operator set");
  const Index d = ops.front().rows();
  for (const auto& k : ops)
    if (k.rows() != d || k.cols() != d) throw std::invalid_argument(std::string(who) + ": operators must be d x d");
}

Matrix kraus_superop(const std::vector<Matrix>& kraus) {
  const Index d = kraus.front().rows();
  Matrix s = Matrix::Zero(d * d, d * d);
  for (const auto& k : kraus) s += kron(Matrix(k.conjugate()), k);
  return s;
}

}  // namespace

ChannelHandle from_kraus(const std::vector<Matrix>& kraus, double tol) {
  check_square_set(kraus, "from_kraus");
  const Index d = kraus.front().rows();
  Matrix left = Matrix::Zero(d, d);
  Matrix right = Matrix::Zero(d, d);
  for (const auto& k : kraus) {
    left.noalias() += k.adjoint() * k;
    right.noalias() += k * k.adjoint();
  }
  const Matrix id = Matrix::Identity(d, d);
  if (max_abs(left - id) > tol)
    throw std::invalid_argument("from_kraus: sum K^dag K != 1 (defect " + std::to_string(max_abs(left - id)) + ")");
  if (max_abs(right - id) > tol)
    throw std::invalid_argument("from_kraus: sum K K^dag != 1, Kraus set is not unital (defect " +
                                std::to_string(max_abs(right - id)) + ")");
  return {kraus_superop(kraus), Provenance::kraus};
}

ChannelHandle from_unitary(const Matrix& u, double tol) {
  if (unitarity_defect(u) > tol)
    throw std::invalid_argument("from_unitary: matrix is not unitary (defect " + std::to_string(unitarity_defect(u)) + ")");
  return {kron(Matrix(u.conjugate()), u), Provenance::unitary};
}

ChannelHandle dephasing_channel(const std::vector<Matrix>& projectors, double tol) {
  check_square_set(projectors, "dephasing_channel");
  const Index d = projectors.front().rows();
  Matrix total = Matrix::Zero(d, d);
  for (const auto& p : projectors) total += p;
  if (max_abs(total - Matrix::Identity(d, d)) > tol)
    throw std::invalid_argument("dephasing_channel: projectors are not complete (defect " +
                                std::to_string(max_abs(total - Matrix::Identity(d, d))) + ")");
  for (const auto& p : projectors)
    if (max_abs(p * p - p) > tol || hermiticity_defect(p) > tol)
      throw std::invalid_argument("dephasing_channel: operator is not an orthogonal projector");
  return {kraus_superop(projectors), Provenance::dephasing};
}

ChannelHandle identity_channel(int d) {
  return {Matrix::Identity(static_cast<Index>(d) * d, static_cast<Index>(d) * d), Provenance::identity};
}

ChannelHandle depolarizing_channel(int d) {
  const Vector one = vec(Matrix::Identity(d, d));
  return {one * one.adjoint() / static_cast<double>(d), Provenance::superop};
}

ChannelHandle compose(const ChannelHandle& outer, const ChannelHandle& inner) {
  if (outer.dim() != inner.dim()) throw std::invalid_argument("compose: dimension mismatch");
  return {outer.superop() * inner.superop(), Provenance::composite};
}

ChannelHandle adjoint(const ChannelHandle& e) { return {e.superop().adjoint(), e.provenance()}; }

ChannelHandle mix(const std::vector<double>& weights, const std::vector<ChannelHandle>& channels) {
  if (weights.size() != channels.size() || channels.empty())
    throw std::invalid_argument("mix: weights and channels must be non-empty and of equal length");
  Matrix s = Matrix::Zero(channels.front().superop().rows(), channels.front().superop().cols());
  double total = 0.0;
  for (std::size_t i = 0; i < weights.size(); ++i) {
    if (weights[i] < 0.0) throw std::invalid_argument("mix: negative weight");
    if (channels[i].dim() != channels.front().dim()) throw std::invalid_argument("mix: dimension mismatch");
    s += weights[i] * channels[i].superop();
    total += weights[i];
  }
  if (std::abs(total - 1.0) > kNumericalTol) throw std::invalid_argument("mix: weights must sum to one");
  return {std::move(s), Provenance::composite};
}

Matrix lindblad_superop(const LindbladSpec& spec) {
  spec.validate();
  const Index d = spec.dim();
  const Matrix id = Matrix::Identity(d, d);
  const cplx i(0.0, 1.0);
  const Matrix& h = spec.hamiltonian;
  Matrix gen = i * (kron(id, Matrix(h.adjoint())) - kron(Matrix(h.conjugate()), id));
  for (const auto& l : spec.jumps) {
    const Matrix ldl = l.adjoint() * l;
    gen += kron(Matrix(l.transpose()), Matrix(l.adjoint()));
    gen -= 0.5 * kron(id, ldl);
    gen -= 0.5 * kron(Matrix(ldl.transpose()), id);  // L^T L^* = (L^dag L)^T
  }
  return gen;
}

SparseMatrix lindblad_superop_sparse(const LindbladSpec& spec) {
  spec.validate();
  const Index d = spec.dim();
  const SparseMatrix id = sparse_identity(d);
  const cplx i(0.0, 1.0);
  const SparseMatrix h = spec.hamiltonian.sparseView();
  const SparseMatrix h_adj = SparseMatrix(h.adjoint());
  const SparseMatrix h_conj = SparseMatrix(h.conjugate());
  SparseMatrix gen = i * (kron(id, h_adj) - kron(h_conj, id));
  for (const auto& lj : spec.jumps) {
    const SparseMatrix l = lj.sparseView();
    const SparseMatrix ldl = SparseMatrix(SparseMatrix(l.adjoint()) * l);
    gen += kron(SparseMatrix(l.transpose()), SparseMatrix(l.adjoint()));
    gen -= 0.5 * kron(id, ldl);
    gen -= 0.5 * kron(SparseMatrix(ldl.transpose()), id);
  }
  gen.prune(cplx(0.0), 0.0);
  gen.makeCompressed();
  return gen;
}

Matrix lindblad_apply(const LindbladSpec& spec, const Matrix& x) {
  const cplx i(0.0, 1.0);
  const Matrix h_adj = spec.hamiltonian.adjoint();
  Matrix out = i * (h_adj * x - x * h_adj);
  for (const auto& l : spec.jumps) {
    const Matrix ldl = l.adjoint() * l;
    out += l.adjoint() * x * l - 0.5 * (ldl * x + x * ldl);
  }
  return out;
}

ChannelHandle propagate(const LindbladSpec& spec, double t) {
  if (t < 0.0) throw std::invalid_argument("propagate: t must be non-negative");
  const Index d = spec.dim();
  if (t == 0.0) {
    spec.validate();
    return {Matrix::Identity(d * d, d * d), Provenance::lindblad};
  }
  return {matexp(lindblad_superop(spec), t), Provenance::lindblad};
}

Matrix apply(const ChannelHandle& e, const Matrix& x) {
  if (x.rows() != e.dim() || x.cols() != e.dim())
    throw std::invalid_argument("apply: operator is " + std::to_string(x.rows()) + "x" + std::to_string(x.cols()) +
                                ", channel acts on dimension " + std::to_string(e.dim()));
  return unvec(e.superop() * vec(x));
}

Matrix choi_matrix(const ChannelHandle& e) {
  const Index d = e.dim();
  const Matrix& s = e.superop();
  Matrix c(d * d, d * d);
  // Block (i, j) is E(|i><j|) = unvec(column j*d + i of the superoperator).
  for (Index i = 0; i < d; ++i)
    for (Index j = 0; j < d; ++j)
      for (Index a = 0; a < d; ++a)
        for (Index b = 0; b < d; ++b) c(i * d + a, j * d + b) = s(b * d + a, j * d + i);
  return c;
}

double unital_defect(const ChannelHandle& e) {
  const Vector one = vec(Matrix::Identity(e.dim(), e.dim()));
  return (e.superop() * one - one).cwiseAbs().maxCoeff();
}

double trace_defect(const ChannelHandle& e) {
  const Vector one = vec(Matrix::Identity(e.dim(), e.dim()));
  return (one.adjoint() * e.superop() - one.adjoint()).cwiseAbs().maxCoeff();
}

ChannelReport verify_channel(const ChannelHandle& e, double tol) {
  ChannelReport r;
  r.unital_defect = unital_defect(e);
  r.trace_defect = trace_defect(e);
  r.unital = r.unital_defect <= tol;
  r.trace_preserving = r.trace_defect <= tol;
  Matrix c = choi_matrix(e);
  c = 0.5 * (c + c.adjoint()).eval();
  Eigen::SelfAdjointEigenSolver<Matrix> es(c, Eigen::EigenvaluesOnly);
  r.min_choi_eigenvalue = es.eigenvalues().minCoeff();
  r.cp = r.min_choi_eigenvalue >= -tol;
  return r;
}

}  // namespace aotoc
