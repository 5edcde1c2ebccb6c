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

#include "aotoc/models.hpp"
#include "aotoc/closedforms.hpp"

#include "oracles.hpp"

#include <gtest/gtest.h>

namespace aotoc {
namespace {

TEST(PxpSpace, CountsMatchBruteForce) {
  EXPECT_EQ(pxp_space(3), (std::vector<std::uint32_t>{0b000, 0b001, 0b010, 0b100}));
  EXPECT_EQ(pxp_space(4).size(), 7u);
  EXPECT_EQ(pxp_space(8).size(), 47u);
  for (int n = 3; n <= 12; ++n) EXPECT_EQ(static_cast<int>(pxp_space(n).size()), oracle::blockade_count(n));
}

TEST(PxpModel, HamiltonianStructure) {
  SpinChainSpec spec;
  spec.sites = 4;
  const LindbladSpec m = pxp_model(spec);
  EXPECT_LE(hermiticity_defect(m.hamiltonian), 1e-15);
  EXPECT_LE(m.hamiltonian.diagonal().cwiseAbs().maxCoeff(), 0.0);
  // 1010 and 0010 differ by the flip of site 0, whose neighbours are down.
  const auto space = pxp_space(4);
  const auto idx = [&](std::uint32_t s) { return std::find(space.begin(), space.end(), s) - space.begin(); };
  EXPECT_NEAR(std::abs(m.hamiltonian(idx(0b1010), idx(0b0010))), 1.0, 1e-15);
  EXPECT_NEAR(std::abs(m.hamiltonian(idx(0b1010), idx(0b1000))), 1.0, 1e-15);
  EXPECT_NEAR(std::abs(m.hamiltonian(idx(0b1010), idx(0b0000))), 0.0, 1e-15);
}

TEST(PxpModel, ClosedSystemIsUnitary) {
  SpinChainSpec spec;
  spec.sites = 6;
  const AlgebraHandle a = projector_algebra(product_state(6, ProductPattern::neel));
  const ExperimentSeries s = run_series(pxp_model(spec), a, uniform_grid(0.0, 3.0, 0.5));
  for (const auto& r : s.rows) EXPECT_NEAR(r.g1, 1.0, 1e-9);
}

TEST(ProductState, Patterns) {
  const auto space = pxp_space(4);
  const Vector neel = product_state(4, ProductPattern::neel);
  const Vector ferro = product_state(4, ProductPattern::ferro);
  for (Index i = 0; i < neel.size(); ++i) {
    EXPECT_EQ(neel(i), space[static_cast<std::size_t>(i)] == 0b1010 ? cplx(1.0) : cplx(0.0));
    EXPECT_EQ(ferro(i), space[static_cast<std::size_t>(i)] == 0b0000 ? cplx(1.0) : cplx(0.0));
  }
  for (int n = 4; n <= 12; n += 2) EXPECT_NEAR(product_state(n, ProductPattern::neel).norm(), 1.0, 1e-15);
}

TEST(XxxModel, Symmetries) {
  SpinChainSpec spec;
  spec.model = ChainModel::xxx;
  spec.sites = 4;
  const LindbladSpec m = xxx_model(spec);
  const Matrix s2 = total_spin_squared(4);
  Matrix sz = Matrix::Zero(16, 16);
  for (int j = 0; j < 4; ++j) sz += site_operator(pauli_matrix('Z'), j, 4);
  EXPECT_LE(max_abs(m.hamiltonian * s2 - s2 * m.hamiltonian), 1e-12);
  EXPECT_LE(max_abs(m.hamiltonian * sz - sz * m.hamiltonian), 1e-12);
}

TEST(XxxModel, TwoSiteSpectrum) {
  SpinChainSpec spec;
  spec.model = ChainModel::xxx;
  spec.sites = 2;
  const LindbladSpec m = xxx_model(spec);
  // Brute force: both periodic bonds join sites 0 and 1.
  const Matrix bond = kron(pauli_matrix('X'), pauli_matrix('X')) + kron(pauli_matrix('Y'), pauli_matrix('Y')) +
                      kron(pauli_matrix('Z'), pauli_matrix('Z'));
  Eigen::SelfAdjointEigenSolver<Matrix> want(2.0 * bond), got(m.hamiltonian);
  EXPECT_LE((want.eigenvalues() - got.eigenvalues()).cwiseAbs().maxCoeff(), 1e-12);
  EXPECT_NEAR(got.eigenvalues()(0), -6.0, 1e-12);
}

TEST(XxxModel, ClosedSystemPreservesNorms) {
  SpinChainSpec spec;
  spec.model = ChainModel::xxx;
  spec.sites = 4;
  const AlgebraHandle a = perturbed_dfs_algebra(4, 0.1, 3);
  const ExperimentSeries s = run_series(xxx_model(spec), a, uniform_grid(0.0, 2.0, 0.5));
  for (const auto& r : s.rows) EXPECT_NEAR(r.g1, 1.0, 1e-9);
}

TEST(Dfs, SubspaceDimensions) {
  EXPECT_EQ(dfs_subspace(2).cols(), 1);
  EXPECT_EQ(dfs_subspace(4).cols(), 2);
  EXPECT_EQ(dfs_subspace(6).cols(), 5);
  const Matrix b = dfs_subspace(4);
  EXPECT_LE(max_abs(total_spin_squared(4) * b), 1e-10);
  EXPECT_THROW(dfs_subspace(3), std::invalid_argument);
}

TEST(Dfs, RotationIsUnitaryAndTrivialAtZero) {
  EXPECT_LE(max_abs(dfs_rotation(4, 0.0, 1) - Matrix::Identity(16, 16)), 1e-15);
  EXPECT_LE(unitarity_defect(dfs_rotation(4, 0.3, 1)), 1e-12);
  // One-parameter group in lambda for a fixed draw of the directions.
  const Matrix u = dfs_rotation(4, 0.2, 9);
  EXPECT_LE(max_abs(u * u - dfs_rotation(4, 0.4, 9)), 1e-12);
  EXPECT_GT(max_abs(u - dfs_rotation(4, 0.2, 10)), 1e-3);
}

TEST(Dfs, PerturbedAlgebraProperties) {
  const AlgebraHandle a0 = perturbed_dfs_algebra(4, 0.0, 5);
  const AlgebraHandle base = dfs_algebra(dfs_subspace(4));
  ASSERT_EQ(a0.f_basis().size(), base.f_basis().size());
  for (std::size_t i = 0; i < a0.f_basis().size(); ++i) EXPECT_LE(max_abs(a0.f_basis()[i] - base.f_basis()[i]), 1e-12);
  const AlgebraHandle a = perturbed_dfs_algebra(4, 0.15, 5);
  for (std::size_t i = 0; i < a.f_basis().size(); ++i)
    for (std::size_t j = 0; j < i; ++j) EXPECT_LE(std::abs(hs_inner(a.f_basis()[i], a.f_basis()[j])), 1e-12);
}

TEST(Dfs, UnperturbedAlgebraDoesNotScramble) {
  SpinChainSpec spec;
  spec.model = ChainModel::xxx;
  spec.sites = 4;
  spec.alpha = spec.gamma = 0.05;
  const LindbladSpec model = xxx_model(spec);
  const AlgebraHandle a = perturbed_dfs_algebra(4, 0.0, 1);
  const auto grid = uniform_grid(0.0, 5.0, 0.5);
  const ExperimentSeries s = run_series(model, a, grid);
  for (const auto& r : s.rows) EXPECT_NEAR(r.g, 0.0, 1e-9);
  for (double t : {1.0, 4.0}) EXPECT_TRUE(is_commutant_invariant(a, propagate(model, t)).invariant);
}

TEST(RunSeries, SingleTimeZeroRow) {
  SpinChainSpec spec;
  spec.sites = 4;
  const AlgebraHandle a = projector_algebra(product_state(4, ProductPattern::neel));
  const std::vector<double> t0 = {0.0};
  const ExperimentSeries s = run_series(pxp_model(spec), a, t0);
  ASSERT_EQ(s.rows.size(), 1u);
  EXPECT_NEAR(s.rows[0].g, 0.0, 1e-14);
  EXPECT_NEAR(s.rows[0].g1, 1.0, 1e-14);
}

TEST(RunSeries, DenseAndSparsePathsAgreeWithDirectPropagation) {
  SpinChainSpec spec;
  spec.sites = 6;
  spec.alpha = 0.1;
  spec.gamma = 0.05;
  const LindbladSpec model = pxp_model(spec);
  const AlgebraHandle a = projector_algebra(product_state(6, ProductPattern::neel));
  const std::vector<double> times = {0.0, 0.3, 0.6, 1.5};
  SeriesOptions dense, sparse;
  dense.exp.dense_threshold = 1 << 20;
  sparse.exp.dense_threshold = 0;
  const ExperimentSeries sd = run_series(model, a, times, dense);
  const ExperimentSeries ss = run_series(model, a, times, sparse);
  for (std::size_t i = 0; i < times.size(); ++i) {
    const double direct = aotoc(a, propagate(model, times[i])).g;
    EXPECT_NEAR(sd.rows[i].g, direct, 1e-10);
    EXPECT_NEAR(ss.rows[i].g, direct, 1e-10);
    EXPECT_NEAR(ss.rows[i].g2, sd.rows[i].g2, 1e-10);
  }
}

TEST(RunSeries, RejectsBadTimes) {
  SpinChainSpec spec;
  spec.sites = 4;
  const AlgebraHandle a = projector_algebra(product_state(4, ProductPattern::neel));
  const std::vector<double> bad = {0.0, 0.5, 0.5};
  EXPECT_THROW(run_series(pxp_model(spec), a, bad), std::invalid_argument);
  EXPECT_THROW(run_series(pxp_model(spec), maximal_abelian_algebra(3), std::vector<double>{0.0}),
               std::invalid_argument);
}

TEST(UniformGrid, EndpointsAndSpacing) {
  const auto g = uniform_grid(0.0, 30.0, 0.075);
  ASSERT_EQ(g.size(), 401u);
  EXPECT_DOUBLE_EQ(g.front(), 0.0);
  EXPECT_NEAR(g.back(), 30.0, 1e-12);
}

TEST(QuadraticFit, SyntheticQuadratic) {
  const std::vector<double> lambdas = {0.0, 0.1, 0.2, 0.3};
  std::vector<double> g2;
  for (double l : lambdas) g2.push_back(0.9 - 0.3 * l * l);
  const QuadraticFit fit = quadratic_fit(lambdas, g2);
  EXPECT_NEAR(fit.coefficient, 0.3, 1e-12);
  EXPECT_NEAR(fit.r_squared, 1.0, 1e-12);
}

TEST(QuadraticFit, FlatDataAndErrors) {
  const std::vector<double> lambdas = {0.0, 0.1, 0.2};
  const std::vector<double> flat = {0.0, 0.0, 0.0};
  const QuadraticFit fit = quadratic_fit(lambdas, flat);
  EXPECT_EQ(fit.coefficient, 0.0);
  EXPECT_EQ(fit.r_squared, 1.0);
  EXPECT_THROW(quadratic_fit(std::vector<double>{0.1, 0.2, 0.3}, flat), std::invalid_argument);
  EXPECT_THROW(quadratic_fit(std::vector<double>{0.0, 0.1}, std::vector<double>{1.0, 0.9}), std::invalid_argument);
}

TEST(WindowMean, AveragesInsideWindow) {
  ExperimentSeries s;
  for (int i = 0; i <= 4; ++i) {
    s.times.push_back(i);
    AotocReport r;
    r.g = i;
    s.rows.push_back(r);
  }
  EXPECT_DOUBLE_EQ(window_mean(s, 1.0, 3.0, &AotocReport::g), 2.0);
}

TEST(ChainSpec, Validation) {
  SpinChainSpec spec;
  spec.sites = 1;
  EXPECT_THROW(spec.validate(), std::invalid_argument);
  spec.sites = 4;
  spec.alpha = -0.1;
  EXPECT_THROW(spec.validate(), std::invalid_argument);
}

}  // namespace
}  // namespace aotoc
