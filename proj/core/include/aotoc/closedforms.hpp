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

#include "aotoc/aotoc.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace aotoc {

// Pauli helpers. Words are read left to right as qubit 0, 1, ..., with qubit 0
// the most significant tensor factor.

Matrix pauli_matrix(char p);
Matrix pauli_word(std::string_view word);
Matrix hadamard();
/// Throws std::invalid_argument unless word is non-empty over {I,X,Y,Z}.
void validate_pauli_word(std::string_view word);

/// Coherence-generating power of E with respect to the orthonormal columns of
/// `basis`: (1/d)(sum ||E(P)||^2 - sum |Tr[P' E(P)]|^2).
double cgp(const Matrix& basis, const ChannelHandle& e);

struct ExampleCase {
  LindbladSpec spec;
  double g_exact = 0.0;
};

/// Generator AdM - I with M = H^(x)n, realized by the single jump M and H = 0.
ExampleCase example1(int n, double t);
/// beta(t)^2 (1 - 2^-n), beta = (1 - e^{-2t})/2.
double example1_exact(int n, double t);

/// Generator i adH + lambda (D_H - I) with H = sigma_x^(x)n and D_H the
/// dephasing onto the |+/->^(x)n product basis (jumps sqrt(lambda) Pi_i).
ExampleCase example2(int n, double lambda, double t);
/// e^{-2 lambda t} sin^2(2t) / 2.
double example2_exact(double lambda, double t);

/// Closed form for the projector algebra of a rank-1 projector Pi.
double loschmidt_g(const ChannelHandle& e, const Matrix& pi);

/// Abelian Pauli group generated by n - k commuting, independent words.
///
/// Element mu is the product of the generators whose bit is set in mu, with
/// the first generator as the most significant bit. Irrep J carries the sign
/// pattern of J in binary, first generator as the most significant bit and a
/// set bit meaning eigenvalue -1, so J = 0 is the all-plus row.
struct StabilizerGroup {
  int n = 0;
  int k = 0;
  std::vector<std::string> generators;
  std::vector<Matrix> elements;        // 2^(n-k) elements S_mu
  std::vector<Matrix> projectors;      // Q_J onto each irrep
  std::vector<Matrix> irrep_bases;     // 2^n x 2^k orthonormal columns per irrep

  int order() const { return static_cast<int>(elements.size()); }
  /// chi_J(S_mu) = +/-1.
  int character(int irrep, int element) const;
};

StabilizerGroup build_stabilizer(int n, int k, const std::vector<std::string>& generators);

/// Deterministic generator set used when none is supplied: Z_i Z_{i+1} for
/// i < min(n - k, n - 1), plus X^(x)n when k = 0.
std::vector<std::string> default_stabilizer_generators(int n, int k);

/// Blocks (1, 2^k) x 2^(n-k) with f basis {1_J}.
AlgebraHandle stabilizer_algebra(const StabilizerGroup& g);
/// Same algebra with f basis {S_mu / 2^((n-k)/2)}.
AlgebraHandle stabilizer_pauli_algebra(const StabilizerGroup& g);

/// Rank-1 vectors of the chi-dephasing: chi per irrep, then for each remaining
/// in-irrep index j and each alpha the superposition sum_J w^{alpha J}/sqrt(m)
/// psi_j^(J) with w = exp(2 pi i / m). A seed rotates each irrep basis by a
/// Haar unitary before building the vectors.
Matrix dephasing_chi_vectors(const StabilizerGroup& g, int chi, std::optional<std::uint64_t> seed = std::nullopt);
ChannelHandle dephasing_chi(const StabilizerGroup& g, int chi, std::optional<std::uint64_t> seed = std::nullopt);

/// (1 - 2^k/2^n)(chi/2^k)(1 - chi/2^k).
double stabilizer_formula(int n, int k, int chi);

struct StabilizerTerms {
  double first = 0.0;   // (2^k/2^2n) sum <S, D(S)>
  double second = 0.0;  // (2^k/2^3n) sum |<S', D(S)>|^2
  double g() const { return first - second; }
};
/// Term-by-term evaluation of the Pauli-basis two-point expression.
StabilizerTerms stabilizer_terms(const StabilizerGroup& g, const ChannelHandle& d);

}  // namespace aotoc
