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

#include "aotoc/numerics.hpp"

#include <unsupported/Eigen/KroneckerProduct>
#include <unsupported/Eigen/MatrixFunctions>

#include <algorithm>
#include <cstdlib>
#include <thread>

namespace aotoc {

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

Rng::Rng(std::uint64_t seed) : seed_(seed), engine_(splitmix64(seed)) {}

Rng Rng::split(std::uint64_t stream) const {
  return Rng(splitmix64(seed_ ^ splitmix64(stream + 0x632be59bd9b4e019ULL)));
}

double Rng::normal() { return normal_(engine_); }
double Rng::uniform() { return uniform_(engine_); }

cplx Rng::complex_normal() {
  const double re = normal_(engine_);
  const double im = normal_(engine_);
  return {re * M_SQRT1_2, im * M_SQRT1_2};
}

Matrix haar_unitary(Index dim, Rng& rng) {
  if (dim < 1) throw std::invalid_argument("haar_unitary: dim must be >= 1");
  Matrix z(dim, dim);
  for (Index j = 0; j < dim; ++j)
    for (Index i = 0; i < dim; ++i) z(i, j) = rng.complex_normal();
  Eigen::HouseholderQR<Matrix> qr(z);
  Matrix q = qr.householderQ();
  const Matrix& r = qr.matrixQR();
  for (Index j = 0; j < dim; ++j) {
    const cplx rjj = r(j, j);
    const double mag = std::abs(rjj);
    const cplx phase = mag > 0.0 ? rjj / mag : cplx(1.0, 0.0);
    q.col(j) *= phase;
  }
  return q;
}

Vector vec(const Matrix& x) {
  return Eigen::Map<const Vector>(x.data(), x.size());
}

Matrix unvec(const Vector& v) {
  const auto d = static_cast<Index>(std::llround(std::sqrt(static_cast<double>(v.size()))));
  if (d * d != v.size())
    throw std::invalid_argument("unvec: length " + std::to_string(v.size()) + " is not a perfect square");
  return Eigen::Map<const Matrix>(v.data(), d, d);
}

Matrix kron(const Matrix& a, const Matrix& b) {
  return Eigen::kroneckerProduct(a, b).eval();
}

SparseMatrix kron(const SparseMatrix& a, const SparseMatrix& b) {
  SparseMatrix out = Eigen::kroneckerProduct(a, b);
  out.makeCompressed();
  return out;
}

SparseMatrix sparse_identity(Index dim) {
  SparseMatrix id(dim, dim);
  id.setIdentity();
  return id;
}

double unitarity_defect(const Matrix& u) {
  if (u.rows() != u.cols()) return std::numeric_limits<double>::infinity();
  return max_abs(u.adjoint() * u - Matrix::Identity(u.rows(), u.cols()));
}

double hermiticity_defect(const Matrix& h) {
  if (h.rows() != h.cols()) return std::numeric_limits<double>::infinity();
  return max_abs(h - h.adjoint());
}

Matrix swap_operator(Index d) {
  Matrix s = Matrix::Zero(d * d, d * d);
  for (Index i = 0; i < d; ++i)
    for (Index j = 0; j < d; ++j) s(j * d + i, i * d + j) = 1.0;
  return s;
}

Matrix orthonormalize(const Matrix& columns, double drop_tol) {
  std::vector<Vector> kept;
  for (Index c = 0; c < columns.cols(); ++c) {
    Vector v = columns.col(c);
    // Two passes of modified Gram-Schmidt keep orthogonality at roundoff.
    for (int pass = 0; pass < 2; ++pass)
      for (const auto& q : kept) v -= q * q.dot(v);
    const double nrm = v.norm();
    if (nrm > drop_tol) kept.push_back(v / nrm);
  }
  Matrix out(columns.rows(), static_cast<Index>(kept.size()));
  for (std::size_t i = 0; i < kept.size(); ++i) out.col(static_cast<Index>(i)) = kept[i];
  return out;
}

Matrix complete_basis(const Matrix& isometry) {
  const Index d = isometry.rows();
  const Index k = isometry.cols();
  if (k > d) throw std::invalid_argument("complete_basis: more columns than rows");
  Eigen::HouseholderQR<Matrix> qr(isometry);
  Matrix q = qr.householderQ();
  Matrix out(d, d);
  out.leftCols(k) = isometry;
  out.rightCols(d - k) = q.rightCols(d - k);
  return out;
}

double pairwise_sum(std::span<const double> values) {
  if (values.empty()) return 0.0;
  if (values.size() == 1) return values[0];
  if (values.size() == 2) return values[0] + values[1];
  const std::size_t half = values.size() / 2;
  return pairwise_sum(values.first(half)) + pairwise_sum(values.subspan(half));
}

int worker_count() {
  if (const char* env = std::getenv("AOTOC_WORKERS")) {
    const int n = std::atoi(env);
    if (n > 0) return n;
  }
  return 1;
}

void parallel_for(Index n, const std::function<void(Index)>& fn, int workers) {
  if (n <= 0) return;
  workers = std::max(1, std::min<int>(workers, static_cast<int>(n)));
  if (workers == 1) {
    for (Index i = 0; i < n; ++i) fn(i);
    return;
  }
  std::vector<std::thread> pool;
  std::vector<std::exception_ptr> errors(static_cast<std::size_t>(workers));
  pool.reserve(static_cast<std::size_t>(workers));
  for (int w = 0; w < workers; ++w) {
    pool.emplace_back([&, w] {
      try {
        for (Index i = w; i < n; i += workers) fn(i);
      } catch (...) {
        errors[static_cast<std::size_t>(w)] = std::current_exception();
      }
    });
  }
  for (auto& t : pool) t.join();
  for (auto& e : errors)
    if (e) std::rethrow_exception(e);
}

Matrix matexp(const Matrix& a, double t) {
  if (a.rows() != a.cols()) throw std::invalid_argument("matexp: matrix must be square");
  Matrix scaled = a * t;
  return scaled.exp();
}

double norm1(const SparseMatrix& a) {
  double best = 0.0;
  for (Index c = 0; c < a.outerSize(); ++c) {
    double s = 0.0;
    for (SparseMatrix::InnerIterator it(a, c); it; ++it) s += std::abs(it.value());
    best = std::max(best, s);
  }
  return best;
}

double norm1(const Matrix& a) {
  return a.size() == 0 ? 0.0 : a.cwiseAbs().colwise().sum().maxCoeff();
}

namespace {

template <typename Op>
Vector taylor_action(const Op& a, double norm, double t, const Vector& v, const ExpOptions& opts) {
  if (a.rows() != a.cols() || a.cols() != v.size())
    throw std::invalid_argument("matexp_apply: dimension mismatch");
  if (t == 0.0 || norm == 0.0) return v;
  // Substep so each Taylor series runs on an operator of norm <= 1.
  const double scaled = std::abs(t) * norm;
  const auto substeps = static_cast<long long>(std::ceil(scaled));
  if (substeps > opts.max_substeps)
    throw ConvergenceError("matexp_apply: substep budget exceeded (|t|*||A||_1 = " +
                           std::to_string(scaled) + ")");
  const double h = t / static_cast<double>(std::max<long long>(substeps, 1));
  Vector out = v;
  Vector term(v.size());
  for (long long s = 0; s < std::max<long long>(substeps, 1); ++s) {
    term = out;
    Vector acc = out;
    bool converged = false;
    int small_in_row = 0;
    for (int k = 1; k <= opts.max_terms; ++k) {
      term = (a * term).eval() * (h / static_cast<double>(k));
      acc += term;
      const double tn = term.cwiseAbs().maxCoeff();
      const double an = acc.cwiseAbs().maxCoeff();
      small_in_row = (tn <= opts.tol * std::max(an, 1e-300)) ? small_in_row + 1 : 0;
      if (small_in_row >= 2 || tn == 0.0) {
        converged = true;
        break;
      }
    }
    if (!converged)
      throw ConvergenceError("matexp_apply: Taylor series did not converge in " +
                             std::to_string(opts.max_terms) + " terms");
    out = std::move(acc);
  }
  return out;
}

}  // namespace

Vector matexp_apply(const SparseMatrix& a, double t, const Vector& v, const ExpOptions& opts) {
  return taylor_action(a, norm1(a), t, v, opts);
}

Vector matexp_apply(const Matrix& a, double t, const Vector& v, const ExpOptions& opts) {
  return taylor_action(a, norm1(a), t, v, opts);
}

}  // namespace aotoc
