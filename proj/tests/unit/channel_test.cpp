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
#include "aotoc/closedforms.hpp"
#include "aotoc/validation.hpp"

#include "oracles.hpp"

#include <gtest/gtest.h>

#include <numbers>

namespace aotoc {
namespace {

Matrix random_operator(int d, Rng& rng) {
  Matrix x(d, d);
  for (Index j = 0; j < d; ++j)
    for (Index i = 0; i < d; ++i) x(i, j) = rng.complex_normal();
  return x;
}

TEST(FromKraus, IdentityKrausIsIdentitySuperop) {
  const ChannelHandle e = from_kraus({Matrix::Identity(3, 3)});
  EXPECT_LE(max_abs(e.superop() - Matrix::Identity(9, 9)), 1e-15);
}

TEST(FromKraus, HalfDephasingKillsSigmaX) {
  const ChannelHandle e = from_kraus({std::sqrt(0.5) * Matrix::Identity(2, 2), std::sqrt(0.5) * pauli_matrix('Z')});
  EXPECT_LE(max_abs(aotoc::apply(e, pauli_matrix('X'))), 1e-15);
  EXPECT_LE(max_abs(aotoc::apply(e, pauli_matrix('Z')) - pauli_matrix('Z')), 1e-15);
}

TEST(FromKraus, MatchesDirectKrausSum) {
  Rng rng(21);
  std::mt19937_64 gen(21);
  for (int trial = 0; trial < 10; ++trial) {
    const int d = 2 + trial % 4;
    const auto kraus = random_mixed_unitary_kraus(d, rng);
    const Matrix x = oracle::random_matrix(d, gen);
    EXPECT_LE(max_abs(aotoc::apply(from_kraus(kraus), x) - oracle::apply_kraus(kraus, x)), 1e-12);
  }
}

TEST(FromKraus, RejectsNonUnitalSets) {
  Matrix k0 = Matrix::Zero(2, 2), k1 = Matrix::Zero(2, 2);
  k0(0, 0) = 1.0;
  k0(1, 1) = std::sqrt(0.5);
  k1(0, 1) = std::sqrt(0.5);  // amplitude damping
  EXPECT_THROW(from_kraus({k0, k1}), std::invalid_argument);
}

TEST(Dephasing, RankOneProjectors) {
  std::vector<Matrix> ps;
  for (int i = 0; i < 3; ++i) {
    Matrix p = Matrix::Zero(3, 3);
    p(i, i) = 1.0;
    ps.push_back(p);
  }
  Rng rng(22);
  const Matrix x = random_operator(3, rng);
  const Matrix y = aotoc::apply(dephasing_channel(ps), x);
  EXPECT_LE(max_abs(y - Matrix(x.diagonal().asDiagonal())), 1e-15);
}

TEST(FromUnitary, HadamardMapsXToZ) {
  const ChannelHandle e = from_unitary(hadamard());
  EXPECT_LE(max_abs(aotoc::apply(e, pauli_matrix('X')) - pauli_matrix('Z')), 1e-15);
  EXPECT_LE(max_abs(from_unitary(Matrix::Identity(4, 4)).superop() - Matrix::Identity(16, 16)), 1e-15);
}

TEST(FromUnitary, InverseComposition) {
  Rng rng(23);
  const Matrix u = haar_unitary(4, rng);
  const Matrix x = random_operator(4, rng);
  EXPECT_LE(max_abs(aotoc::apply(from_unitary(u), aotoc::apply(from_unitary(u.adjoint()), x)) - x), 1e-12);
  EXPECT_LE(max_abs(aotoc::apply(compose(from_unitary(u), from_unitary(u.adjoint())), x) - x), 1e-12);
}

TEST(Lindblad, ZeroGenerator) {
  LindbladSpec spec{Matrix::Zero(3, 3), {}};
  EXPECT_LE(max_abs(lindblad_superop(spec)), 0.0);
}

TEST(Lindblad, HeisenbergRotation) {
  LindbladSpec spec{pauli_matrix('Z'), {}};
  const ChannelHandle e = propagate(spec, std::numbers::pi / 2);
  EXPECT_LE(max_abs(aotoc::apply(e, pauli_matrix('X')) + pauli_matrix('X')), 1e-12);
}

TEST(Lindblad, ExampleOneGeneratorSquares) {
  const Matrix l = lindblad_superop(example1(1, 0.0).spec);
  EXPECT_LE(max_abs(l * l + 2.0 * l), 1e-12);
}

TEST(Lindblad, SparseAndDenseGeneratorsAgree) {
  Rng rng(24);
  const LindbladSpec spec = random_unital_lindblad(5, rng);
  EXPECT_LE(max_abs(Matrix(lindblad_superop_sparse(spec)) - lindblad_superop(spec)), 1e-13);
  const Matrix x = random_operator(5, rng);
  EXPECT_LE(max_abs(unvec(lindblad_superop(spec) * vec(x)) - lindblad_apply(spec, x)), 1e-12);
}

TEST(Propagate, MatchesRungeKuttaOracle) {
  Rng rng(25);
  std::mt19937_64 gen(25);
  for (int trial = 0; trial < 4; ++trial) {
    const int d = 2 + trial;
    const LindbladSpec spec = random_unital_lindblad(d, rng);
    const double t = 0.8;
    const Matrix x = oracle::random_matrix(d, gen);
    const Matrix expected = oracle::heisenberg_rk4(spec.hamiltonian, spec.jumps, x, t, 4000);
    EXPECT_LE(max_abs(aotoc::apply(propagate(spec, t), x) - expected), 1e-9);
  }
}

TEST(Propagate, TimeZeroIsIdentity) {
  Rng rng(26);
  EXPECT_LE(max_abs(propagate(random_unital_lindblad(3, rng), 0.0).superop() - Matrix::Identity(9, 9)), 1e-15);
}

TEST(Propagate, ExampleOneClosedForm) {
  for (double t : {0.1, 0.7, 2.5}) {
    const ExampleCase ex = example1(2, t);
    const Matrix m = ex.spec.jumps.at(0);  // the unitary M behind AdM
    const double a = (1.0 + std::exp(-2.0 * t)) / 2.0, b = (1.0 - std::exp(-2.0 * t)) / 2.0;
    const Matrix expected = a * Matrix::Identity(16, 16) + b * from_unitary(m).superop();
    EXPECT_LE(max_abs(propagate(ex.spec, t).superop() - expected), 1e-9);
  }
}

TEST(Propagate, ExampleTwoClosedForm) {
  const double lambda = 0.5;
  for (double t : {0.2, 1.1}) {
    const ExampleCase ex = example2(1, lambda, t);
    const Matrix h = ex.spec.hamiltonian;
    const double a = std::exp(-lambda * t);
    Eigen::SelfAdjointEigenSolver<Matrix> es(h);
    std::vector<Matrix> proj;
    for (int i = 0; i < 2; ++i) proj.push_back(es.eigenvectors().col(i) * es.eigenvectors().col(i).adjoint());
    const Matrix rot = from_unitary(matexp(Matrix(cplx(0.0, 1.0) * h), t)).superop();
    const Matrix expected = a * rot + (1.0 - a) * dephasing_channel(proj).superop();
    EXPECT_LE(max_abs(propagate(ex.spec, t).superop() - expected), 1e-9);
  }
}

TEST(Apply, DepolarizingAndIdentity) {
  Rng rng(27);
  const Matrix x = random_operator(4, rng);
  EXPECT_LE(max_abs(aotoc::apply(identity_channel(4), x) - x), 0.0);
  EXPECT_LE(max_abs(aotoc::apply(depolarizing_channel(4), x) - x.trace() / 4.0 * Matrix::Identity(4, 4)), 1e-14);
}

TEST(Apply, UnitalChannelsContractHilbertSchmidtNorm) {
  Rng rng(28);
  for (int trial = 0; trial < 100; ++trial) {
    const int d = 2 + trial % 5;
    const ChannelHandle e = random_unital_channel(d, rng);
    const Matrix x = random_operator(d, rng);
    EXPECT_LE(aotoc::apply(e, x).norm(), x.norm() * (1.0 + 1e-12));
  }
}

TEST(VerifyChannel, AcceptsUnitalChannels) {
  Rng rng(29);
  EXPECT_TRUE(verify_channel(identity_channel(3)).ok());
  EXPECT_TRUE(verify_channel(from_unitary(haar_unitary(4, rng))).ok());
  EXPECT_TRUE(verify_channel(random_unital_channel(3, rng)).ok());
}

TEST(VerifyChannel, DetectsNegativeKrausWeight) {
  // 1.5 Id(X) - 0.5 Z X Z is unital and trace preserving but not CP.
  const Matrix s = 1.5 * Matrix::Identity(4, 4) - 0.5 * from_unitary(pauli_matrix('Z')).superop();
  const ChannelReport r = verify_channel(ChannelHandle(s, Provenance::superop));
  EXPECT_TRUE(r.unital);
  EXPECT_TRUE(r.trace_preserving);
  EXPECT_FALSE(r.cp);
  EXPECT_LT(r.min_choi_eigenvalue, -0.1);
}

TEST(Adjoint, IsHilbertSchmidtAdjoint) {
  Rng rng(30);
  const ChannelHandle e = random_unital_channel(3, rng);
  const Matrix x = random_operator(3, rng), y = random_operator(3, rng);
  EXPECT_LE(std::abs(hs_inner(x, aotoc::apply(e, y)) - hs_inner(aotoc::apply(adjoint(e), x), y)), 1e-12);
}

TEST(Mix, ConvexCombination) {
  Rng rng(31);
  const ChannelHandle a = from_unitary(haar_unitary(3, rng)), b = identity_channel(3);
  const Matrix x = random_operator(3, rng);
  EXPECT_LE(max_abs(aotoc::apply(mix({0.25, 0.75}, {a, b}), x) - (0.25 * aotoc::apply(a, x) + 0.75 * x)), 1e-14);
  EXPECT_THROW(mix({0.5, 0.6}, {a, b}), std::invalid_argument);
}

}  // namespace
}  // namespace aotoc
