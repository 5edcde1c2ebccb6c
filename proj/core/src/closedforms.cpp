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

#include "aotoc/closedforms.hpp"

#include <bit>
#include <numbers>

namespace aotoc {

Matrix pauli_matrix(char p) {
  const cplx i(0.0, 1.0);
  Matrix m = Matrix::Zero(2, 2);
  switch (p) {
    case 'I': m << 1, 0, 0, 1; break;
    case 'X': m << 0, 1, 1, 0; break;
    case 'Y': m << 0, -i, i, 0; break;
    case 'Z': m << 1, 0, 0, -1; break;
    default: throw std::invalid_argument(std::string("pauli_matrix: unknown Pauli '") + p + "'");
  }
  return m;
}

void validate_pauli_word(std::string_view word) {
  if (word.empty()) throw std::invalid_argument("Pauli word is empty");
  for (char c : word)
    if (c != 'I' && c != 'X' && c != 'Y' && c != 'Z')
      throw std::invalid_argument("Pauli word '" + std::string(word) + "' contains '" + c + "', expected I/X/Y/Z");
}

Matrix pauli_word(std::string_view word) {
  validate_pauli_word(word);
  Matrix out = pauli_matrix(word[0]);
  for (std::size_t q = 1; q < word.size(); ++q) out = kron(out, pauli_matrix(word[q]));
  return out;
}

Matrix hadamard() {
  Matrix h(2, 2);
  h << 1, 1, 1, -1;
  return h / std::numbers::sqrt2;
}

double cgp(const Matrix& basis, const ChannelHandle& e) {
  const Index d = basis.rows();
  if (basis.cols() != d || d != e.dim()) throw std::invalid_argument("cgp: basis must be d x d");
  if (unitarity_defect(basis) > kStructuralTol) throw std::invalid_argument("cgp: basis is not orthonormal");
  std::vector<double> terms;
  terms.reserve(static_cast<std::size_t>(d * (d + 1)));
  for (Index mu = 0; mu < d; ++mu) {
    const Matrix img = aotoc::apply(e, Matrix(basis.col(mu) * basis.col(mu).adjoint()));
    terms.push_back(hs_norm2(img));
    for (Index nu = 0; nu < d; ++nu)
      terms.push_back(-std::norm(basis.col(nu).dot(img * basis.col(nu))));
  }
  return pairwise_sum(terms) / static_cast<double>(d);
}

namespace {

int qubit_dim(int n) {
  if (n < 1 || n > 12) throw std::invalid_argument("qubit count must lie in [1, 12], got " + std::to_string(n));
  return 1 << n;
}

Matrix tensor_power(const Matrix& m, int n) {
  Matrix out = m;
  for (int q = 1; q < n; ++q) out = kron(out, m);
  return out;
}

}  // namespace

double example1_exact(int n, double t) {
  const double beta = 0.5 * (1.0 - std::exp(-2.0 * t));
  return beta * beta * (1.0 - std::ldexp(1.0, -n));
}

ExampleCase example1(int n, double t) {
  const int d = qubit_dim(n);
  if (t < 0.0) throw std::invalid_argument("example1: t must be non-negative");
  ExampleCase out;
  out.spec.hamiltonian = Matrix::Zero(d, d);
  out.spec.jumps = {tensor_power(hadamard(), n)};
  out.g_exact = example1_exact(n, t);
  return out;
}

double example2_exact(double lambda, double t) {
  const double s = std::sin(2.0 * t);
  return std::exp(-2.0 * lambda * t) * s * s / 2.0;
}

ExampleCase example2(int n, double lambda, double t) {
  const int d = qubit_dim(n);
  if (lambda < 0.0 || t < 0.0) throw std::invalid_argument("example2: lambda and t must be non-negative");
  ExampleCase out;
  out.spec.hamiltonian = tensor_power(pauli_matrix('X'), n);
  // Columns of H^(x)n are the |+/->^(x)n product eigenvectors of sigma_x^(x)n.
  const Matrix eig = tensor_power(hadamard(), n);
  const double rate = std::sqrt(lambda);
  for (int i = 0; i < d; ++i) out.spec.jumps.push_back(rate * eig.col(i) * eig.col(i).adjoint());
  out.g_exact = example2_exact(lambda, t);
  return out;
}

double loschmidt_g(const ChannelHandle& e, const Matrix& pi) {
  const int d = e.dim();
  if (pi.rows() != d || pi.cols() != d) throw std::invalid_argument("loschmidt_g: projector dimension mismatch");
  if (hermiticity_defect(pi) > kNumericalTol || max_abs(pi * pi - pi) > kNumericalTol ||
      std::abs(pi.trace() - 1.0) > kNumericalTol)
    throw std::invalid_argument("loschmidt_g: operator is not a rank-1 projector");
  const Matrix img = aotoc::apply(e, pi);
  const double l2 = (pi * img).trace().real();
  const double dd = d;
  return 2.0 / dd * (hs_norm2(img) - (l2 * (dd * l2 - 2.0) + 1.0) / (dd - 1.0));
}

int StabilizerGroup::character(int irrep, int element) const {
  return (std::popcount(static_cast<unsigned>(irrep & element)) % 2 == 0) ? 1 : -1;
}

StabilizerGroup build_stabilizer(int n, int k, const std::vector<std::string>& generators) {
  const int d = qubit_dim(n);
  if (k < 0 || k > n) throw std::invalid_argument("build_stabilizer: need 0 <= k <= n");
  const int r = n - k;
  if (static_cast<int>(generators.size()) != r)
    throw std::invalid_argument("build_stabilizer: expected " + std::to_string(r) + " generators, got " +
                                std::to_string(generators.size()));
  std::vector<Matrix> gens;
  for (const auto& w : generators) {
    if (static_cast<int>(w.size()) != n)
      throw std::invalid_argument("build_stabilizer: generator '" + w + "' does not have length " + std::to_string(n));
    gens.push_back(pauli_word(w));
  }
  for (int a = 0; a < r; ++a)
    for (int b = a + 1; b < r; ++b)
      if (max_abs(gens[a] * gens[b] - gens[b] * gens[a]) > kStructuralTol)
        throw std::invalid_argument("build_stabilizer: generators '" + generators[a] + "' and '" + generators[b] +
                                    "' do not commute");

  StabilizerGroup g;
  g.n = n;
  g.k = k;
  g.generators = generators;
  const int m = 1 << r;
  for (int mu = 0; mu < m; ++mu) {
    Matrix s = Matrix::Identity(d, d);
    for (int a = 0; a < r; ++a)
      if ((mu >> (r - 1 - a)) & 1) s = s * gens[a];
    if (mu != 0 && std::abs(s.trace()) > 0.5)
      throw std::invalid_argument("build_stabilizer: generators are not independent");
    g.elements.push_back(std::move(s));
  }
  const int rank = 1 << k;
  for (int j = 0; j < m; ++j) {
    Matrix q = Matrix::Zero(d, d);
    for (int mu = 0; mu < m; ++mu) q += static_cast<double>(g.character(j, mu)) * g.elements[mu];
    q /= static_cast<double>(m);
    if (max_abs(q * q - q) > kNumericalTol || std::abs(q.trace() - static_cast<double>(rank)) > kNumericalTol)
      throw std::invalid_argument("build_stabilizer: irrep projector " + std::to_string(j) + " is not of rank 2^k");
    // Projected computational basis vectors in order, then Gram-Schmidt.
    Matrix basis = orthonormalize(q, 1e-8);
    if (basis.cols() != rank) throw std::runtime_error("build_stabilizer: irrep basis has wrong rank");
    g.projectors.push_back(std::move(q));
    g.irrep_bases.push_back(std::move(basis));
  }
  return g;
}

std::vector<std::string> default_stabilizer_generators(int n, int k) {
  if (n < 1 || k < 0 || k > n) throw std::invalid_argument("default_stabilizer_generators: need 0 <= k <= n, n >= 1");
  std::vector<std::string> out;
  const int r = n - k;
  for (int i = 0; i < std::min(r, n - 1); ++i) {
    std::string w(static_cast<std::size_t>(n), 'I');
    w[static_cast<std::size_t>(i)] = 'Z';
    w[static_cast<std::size_t>(i + 1)] = 'Z';
    out.push_back(w);
  }
  if (r == n) out.emplace_back(static_cast<std::size_t>(n), 'X');
  return out;
}

AlgebraHandle stabilizer_algebra(const StabilizerGroup& g) {
  const int d = 1 << g.n;
  const int rank = 1 << g.k;
  BlockSpec spec;
  spec.blocks.assign(g.irrep_bases.size(), Block{1, rank});
  spec.embedding = Matrix(d, d);
  for (std::size_t j = 0; j < g.irrep_bases.size(); ++j)
    spec.embedding.middleCols(static_cast<Index>(j) * rank, rank) = g.irrep_bases[j];
  return build_block_algebra(spec);
}

AlgebraHandle stabilizer_pauli_algebra(const StabilizerGroup& g) {
  const int m = g.order();
  Matrix mixing(m, m);
  const double w = 1.0 / std::sqrt(static_cast<double>(m));
  for (int j = 0; j < m; ++j)
    for (int mu = 0; mu < m; ++mu) mixing(j, mu) = w * g.character(j, mu);
  return with_commutant_basis(stabilizer_algebra(g), mixing);
}

Matrix dephasing_chi_vectors(const StabilizerGroup& g, int chi, std::optional<std::uint64_t> seed) {
  const int rank = 1 << g.k;
  if (chi < 0 || chi > rank)
    throw std::invalid_argument("dephasing_chi: chi = " + std::to_string(chi) + " outside [0, " +
                                std::to_string(rank) + "]");
  const int d = 1 << g.n;
  const int m = g.order();
  std::vector<Matrix> bases = g.irrep_bases;
  if (seed) {
    const Rng master(*seed);
    for (std::size_t j = 0; j < bases.size(); ++j) {
      Rng rng = master.split(j);
      bases[j] = bases[j] * haar_unitary(rank, rng);
    }
  }
  Matrix out(d, d);
  Index col = 0;
  for (int j = 0; j < m; ++j)
    for (int c = 0; c < chi; ++c) out.col(col++) = bases[j].col(c);
  const double w = 1.0 / std::sqrt(static_cast<double>(m));
  for (int c = chi; c < rank; ++c)
    for (int alpha = 0; alpha < m; ++alpha) {
      Vector v = Vector::Zero(d);
      for (int j = 0; j < m; ++j) {
        const double phase = 2.0 * std::numbers::pi * static_cast<double>((alpha * j) % m) / m;
        v += w * std::polar(1.0, phase) * bases[j].col(c);
      }
      out.col(col++) = v;
    }
  return out;
}

ChannelHandle dephasing_chi(const StabilizerGroup& g, int chi, std::optional<std::uint64_t> seed) {
  const Matrix vs = dephasing_chi_vectors(g, chi, seed);
  std::vector<Matrix> projectors;
  projectors.reserve(static_cast<std::size_t>(vs.cols()));
  for (Index c = 0; c < vs.cols(); ++c) projectors.push_back(vs.col(c) * vs.col(c).adjoint());
  return dephasing_channel(projectors);
}

double stabilizer_formula(int n, int k, int chi) {
  const double rank = std::ldexp(1.0, k);
  if (chi < 0 || chi > rank) throw std::invalid_argument("stabilizer_formula: chi outside [0, 2^k]");
  const double ratio = chi / rank;
  return (1.0 - rank / std::ldexp(1.0, n)) * ratio * (1.0 - ratio);
}

StabilizerTerms stabilizer_terms(const StabilizerGroup& g, const ChannelHandle& d) {
  const double two_n = std::ldexp(1.0, g.n);
  const double two_k = std::ldexp(1.0, g.k);
  std::vector<double> first, second;
  for (const auto& s : g.elements) {
    const Matrix img = aotoc::apply(d, s);
    first.push_back(hs_inner(s, img).real());
    for (const auto& sp : g.elements) second.push_back(std::norm(hs_inner(sp, img)));
  }
  StabilizerTerms out;
  out.first = two_k / (two_n * two_n) * pairwise_sum(first);
  out.second = two_k / (two_n * two_n * two_n) * pairwise_sum(second);
  return out;
}

}  // namespace aotoc
