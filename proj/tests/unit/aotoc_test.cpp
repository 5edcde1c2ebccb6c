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

#include "aotoc/aotoc.hpp"
#include "aotoc/closedforms.hpp"
#include "aotoc/validation.hpp"

#include "oracles.hpp"

#include <gtest/gtest.h>

namespace aotoc {
namespace {

Matrix swap_2x2() { return swap_operator(2); }

std::vector<Matrix> images_of(const AlgebraHandle& a, const ChannelHandle& e) {
  std::vector<Matrix> out;
  for (const auto& f : a.f_basis()) out.push_back(aotoc::apply(e, f));
  return out;
}

TEST(Aotoc, IdentityChannelIsZero) {
  Rng rng(41);
  for (int trial = 0; trial < 10; ++trial) {
    const int d = 1 + trial % 8;
    const AlgebraHandle a = build_block_algebra(random_block_spec(d, rng));
    const AotocReport r = aotoc(a, identity_channel(d));
    EXPECT_NEAR(r.g, 0.0, 1e-12);
    EXPECT_NEAR(r.g1, 1.0, 1e-12);
  }
}

TEST(Aotoc, DepolarizingOnBipartite) {
  const AotocReport r = aotoc(bipartite_algebra(2, 4), depolarizing_channel(8));
  EXPECT_NEAR(r.g, 0.0, 1e-12);
  EXPECT_NEAR(r.g1, 0.25, 1e-12);
  EXPECT_NEAR(r.g2, 0.25, 1e-12);
}

TEST(Aotoc, HadamardOnQubitSaturatesBound) {
  const AotocReport r = aotoc(maximal_abelian_algebra(2), from_unitary(hadamard()));
  EXPECT_NEAR(r.g, 0.5, 1e-12);
  EXPECT_NEAR(r.bound, 0.5, 1e-15);
}

TEST(Aotoc, MatchesNullSpaceOracle) {
  Rng rng(42);
  for (int trial = 0; trial < 25; ++trial) {
    const int d = 2 + trial % 6;
    const AlgebraHandle a = build_block_algebra(random_block_spec(d, rng));
    const auto kraus = random_mixed_unitary_kraus(d, rng);
    std::vector<oracle::Mat> imgs;
    for (const auto& f : a.f_basis()) imgs.push_back(oracle::apply_kraus(kraus, f));
    const oracle::Terms want = oracle::aotoc_terms(a.f_basis(), oracle::commutant_basis(a.e_basis(), d), imgs);
    const AotocReport got = aotoc(a, from_kraus(kraus));
    EXPECT_NEAR(got.g, want.g, 1e-10);
    EXPECT_NEAR(got.g1, want.g1, 1e-10);
    EXPECT_NEAR(got.g2, want.g2, 1e-10);
  }
}

TEST(Aotoc, RejectsNonUnitalInput) {
  Matrix s = Matrix::Identity(4, 4);
  s(0, 3) = 0.3;
  EXPECT_THROW(aotoc(maximal_abelian_algebra(2), ChannelHandle(s, Provenance::superop)), std::invalid_argument);
  EXPECT_THROW(aotoc(maximal_abelian_algebra(3), identity_channel(2)), std::invalid_argument);
}

TEST(Aotoc, InvariantUnderCommutantBasisMixing) {
  Rng rng(43);
  for (int trial = 0; trial < 10; ++trial) {
    const int d = 2 + trial % 6;
    const AlgebraHandle a = build_block_algebra(random_block_spec(d, rng));
    const ChannelHandle e = random_unital_channel(d, rng);
    const Index m = static_cast<Index>(a.f_basis().size());
    EXPECT_NEAR(aotoc(a, e).g, aotoc(with_commutant_basis(a, haar_unitary(m, rng)), e).g, 1e-10);
  }
}

TEST(Aotoc, FromImagesMatchesChannelRoute) {
  Rng rng(44);
  const AlgebraHandle a = build_block_algebra(random_block_spec(5, rng));
  const ChannelHandle e = random_unital_channel(5, rng);
  EXPECT_NEAR(aotoc_from_images(a, images_of(a, e)).g, aotoc(a, e).g, 1e-14);
}

TEST(Replica, IdentityAndCrossRoute) {
  EXPECT_NEAR(aotoc_replica(bipartite_algebra(2, 2), identity_channel(4)).g, 0.0, 1e-12);
  Rng rng(45);
  for (int trial = 0; trial < 5; ++trial) {
    const ChannelHandle e = random_unital_channel(4, rng);
    EXPECT_NEAR(aotoc_replica(bipartite_algebra(2, 2), e).g, aotoc(bipartite_algebra(2, 2), e).g, 1e-10);
  }
  EXPECT_THROW(aotoc_replica(maximal_abelian_algebra(13), identity_channel(13)), std::invalid_argument);
}

TEST(TwoPoint, MatchesCorrelator) {
  Rng rng(46);
  for (int trial = 0; trial < 10; ++trial) {
    const int d = 2 + trial % 6;
    const AlgebraHandle a = build_block_algebra(random_block_spec(d, rng));
    const ChannelHandle e = random_unital_channel(d, rng);
    EXPECT_NEAR(aotoc_two_point(a, e), aotoc(a, e).g, 1e-10);
  }
}

TEST(Otoc4pt, ClosedCasesAndCrossRoute) {
  const AlgebraHandle bp = bipartite_algebra(2, 2);
  EXPECT_NEAR(scrambling_otoc4pt(bp, identity_channel(4)), 1.0, 1e-12);
  EXPECT_NEAR(scrambling_otoc4pt(bp, depolarizing_channel(4)), 0.25, 1e-12);
  Rng rng(47);
  for (int trial = 0; trial < 5; ++trial) {
    const ChannelHandle e = random_unital_channel(4, rng);
    EXPECT_NEAR(scrambling_otoc4pt(bp, e), aotoc(bp, e).g2, 1e-10);
  }
}

TEST(MonteCarlo, IdentityIsExactlyZero) {
  const AotocReport r = aotoc_montecarlo(bipartite_algebra(2, 2), identity_channel(4), 200, 1);
  EXPECT_NEAR(r.g, 0.0, 1e-14);
  EXPECT_NEAR(*r.mc_stderr, 0.0, 1e-14);
}

TEST(MonteCarlo, WithinThreeSigmaOfExactValue) {
  Rng rng(48);
  const std::vector<std::pair<AlgebraHandle, ChannelHandle>> cases = {
      {build_block_algebra(random_block_spec(4, rng)), from_unitary(haar_unitary(4, rng))},
      {bipartite_algebra(2, 2), from_unitary(swap_2x2())}};
  for (const auto& [a, e] : cases) {
    const AotocReport mc = aotoc_montecarlo(a, e, 10000, 99);
    EXPECT_LE(std::abs(mc.g - aotoc(a, e).g), 3.0 * *mc.mc_stderr + 1e-12);
  }
}

TEST(MonteCarlo, StandardErrorShrinksLikeInverseRoot) {
  Rng rng(49);
  const AlgebraHandle a = build_block_algebra(random_block_spec(5, rng));
  const ChannelHandle e = from_unitary(haar_unitary(5, rng));
  const double exact = aotoc(a, e).g;
  double prev = 1e300;
  for (int n : {100, 1000, 10000}) {
    const AotocReport mc = aotoc_montecarlo(a, e, n, 5);
    EXPECT_LT(*mc.mc_stderr, prev);
    EXPECT_LE(std::abs(mc.g - exact), 4.0 * *mc.mc_stderr + 1e-12);
    prev = *mc.mc_stderr;
  }
}

TEST(Gaac, SwapAndHadamard) {
  EXPECT_NEAR(gaac(maximal_abelian_algebra(4), Matrix::Identity(4, 4)).gaac, 0.0, 1e-12);
  const GaacResult s = gaac(bipartite_algebra(2, 2), swap_2x2());
  EXPECT_NEAR(s.gaac, s.aotoc, 1e-10);
  EXPECT_NEAR(s.gaac_reduced, s.aotoc, 1e-10);
  EXPECT_NEAR(gaac(maximal_abelian_algebra(2), hadamard()).gaac, 0.5, 1e-12);
}

TEST(Invariance, Cases) {
  EXPECT_TRUE(is_commutant_invariant(bipartite_algebra(2, 3), identity_channel(6)).invariant);
  std::vector<Matrix> ps;
  for (int i = 0; i < 3; ++i) {
    Matrix p = Matrix::Zero(3, 3);
    p(i, i) = 1.0;
    ps.push_back(p);
  }
  EXPECT_TRUE(is_commutant_invariant(maximal_abelian_algebra(3), dephasing_channel(ps)).invariant);
  EXPECT_FALSE(is_commutant_invariant(maximal_abelian_algebra(2), from_unitary(hadamard())).invariant);
}

TEST(Properties, BoundDualityAndOrdering) {
  Rng rng(50);
  for (int trial = 0; trial < 40; ++trial) {
    const int d = 2 + trial % 7;
    const AlgebraHandle a = build_block_algebra(random_block_spec(d, rng));
    const Matrix u = haar_unitary(d, rng);
    const AotocReport r = aotoc(a, from_unitary(u));
    EXPECT_LE(r.g, r.bound + 1e-9);
    EXPECT_GE(r.g, -1e-12);
    EXPECT_NEAR(r.g1, 1.0, 1e-10);
    EXPECT_NEAR(r.g, aotoc(commutant(a), from_unitary(u.adjoint())).g, 1e-10);
    const AotocReport m = aotoc(a, random_unital_channel(d, rng));
    EXPECT_LE(m.g2, m.g1 + 1e-12);
  }
}

TEST(Properties, CommutantPreservingChannelsGiveZero) {
  Rng rng(51);
  for (int trial = 0; trial < 10; ++trial) {
    const AlgebraHandle a = build_block_algebra(random_block_spec(2 + trial % 6, rng));
    EXPECT_NEAR(aotoc(a, from_unitary(random_algebra_unitary(a, rng, false))).g, 0.0, 1e-12);
    EXPECT_NEAR(aotoc(a, from_unitary(random_algebra_unitary(a, rng, true))).g, 0.0, 1e-12);
  }
}

TEST(HaarTypical, AgreesWithFormula) {
  const McEstimate est = haar_typical_mc(build_block_algebra(BlockSpec{{{2, 4}}, {}}), 2000, 7);
  EXPECT_LE(std::abs(est.mean - 5.0 / 7.0), 3.0 * est.stderr_);
}

TEST(HaarTypical, TrivialAlgebrasGiveZeroSamples) {
  for (Block b : {Block{1, 3}, Block{3, 1}}) {
    const McEstimate est = haar_typical_mc(build_block_algebra(BlockSpec{{b}, {}}), 50, 3);
    EXPECT_NEAR(est.mean, 0.0, 1e-12);
    EXPECT_NEAR(est.stderr_, 0.0, 1e-12);
  }
}

TEST(Summarize, MeanAndStandardError) {
  const std::vector<double> x = {1.0, 2.0, 3.0, 4.0};
  const McEstimate s = summarize(x);
  EXPECT_DOUBLE_EQ(s.mean, 2.5);
  EXPECT_NEAR(s.stderr_, std::sqrt(5.0 / 3.0 / 4.0), 1e-15);
  EXPECT_EQ(s.samples, 4);
}

}  // namespace
}  // namespace aotoc
