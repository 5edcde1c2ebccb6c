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
#include <map>
#include <span>
#include <string>
#include <vector>

namespace aotoc {

enum class ChainModel { pxp, xxx };

/// Periodic spin-1/2 chain. Spin up is bit 1 and sigma_z = +1; site 0 is the
/// most significant bit of a basis index.
struct SpinChainSpec {
  ChainModel model = ChainModel::pxp;
  int sites = 8;
  double coupling = 1.0;
  double alpha = 0.0;  // dephasing rate
  double gamma = 0.0;  // driving rate

  void validate() const;
};

/// Cyclic bit strings with no two adjacent 1s, in ascending integer order.
std::vector<std::uint32_t> pxp_space(int sites);

/// H = J sum_j P_{j-1} X_j P_{j+1} with P = (1 - Z)/2, and jumps sqrt(alpha) Z_j,
/// sqrt(gamma) P s+_j P, sqrt(gamma) P s-_j P, all on the blockade space.
LindbladSpec pxp_model(const SpinChainSpec& spec);

enum class ProductPattern { neel, ferro };
/// Neel is 1010...; ferro is all zeros. Returned in the blockade basis.
Vector product_state(int sites, ProductPattern pattern);

/// H = J sum_j sigma_j . sigma_{j+1} (periodic) with collective jumps
/// sqrt(alpha) sum Z, sqrt(gamma) sum s+, sqrt(gamma) sum s-.
LindbladSpec xxx_model(const SpinChainSpec& spec);

/// Operator of a single site in the full 2^N space.
Matrix site_operator(const Matrix& op, int site, int sites);
/// S^2 = sum_a (sum_j sigma^a_j)^2.
Matrix total_spin_squared(int sites);

/// Orthonormal basis of the S^2 = 0 sector (even N).
Matrix dfs_subspace(int sites);

/// DFS algebra of U(lambda) applied to the spin-0 sector, with
/// U(lambda) = exp(i lambda sum_j eta_j . sigma_j) and eta_j uniform on the
/// sphere, drawn from Rng(seed).
AlgebraHandle perturbed_dfs_algebra(int sites, double lambda, std::uint64_t seed);
Matrix dfs_rotation(int sites, double lambda, std::uint64_t seed);

struct SeriesMeta {
  std::string model;
  std::string algebra;
  std::uint64_t seed = 0;
  double wall_seconds = 0.0;
  std::map<std::string, std::string> parameters;
};

struct ExperimentSeries {
  std::vector<double> times;
  std::vector<AotocReport> rows;
  SeriesMeta meta;
};

struct SeriesOptions {
  ExpOptions exp;
  AotocOptions aotoc;
};

/// Evolves the commutant bases of every algebra through exp(t L) and reports
/// the correlator route at each time. Stepping uses the semigroup property
/// between consecutive times; a dense step propagator is used when
/// d^2 <= exp.dense_threshold, otherwise a sparse exponential action.
/// Times must be non-negative and strictly increasing.
std::vector<ExperimentSeries> run_series(const LindbladSpec& model, std::span<const AlgebraHandle> algebras,
                                         std::span<const double> times, const SeriesOptions& opts = {});
ExperimentSeries run_series(const LindbladSpec& model, const AlgebraHandle& algebra, std::span<const double> times,
                            const SeriesOptions& opts = {});

/// t0, t0 + dt, ..., up to t1 inclusive (rounded to the nearest step count).
std::vector<double> uniform_grid(double t0, double t1, double dt);

/// Mean of the chosen column over rows with t inside [t0, t1].
double window_mean(const ExperimentSeries& s, double t0, double t1, double AotocReport::*field);

struct QuadraticFit {
  std::vector<double> lambdas;
  std::vector<double> mean_g2;
  double coefficient = 0.0;  // c in mean_g2(0) - mean_g2(lambda) = c lambda^2
  double r_squared = 1.0;
};

/// Fits the decrease of the time-averaged scrambling term against lambda^2
/// through the origin. Needs at least 3 distinct lambdas including 0.
QuadraticFit time_average_quadratic_fit(std::span<const double> lambdas, std::span<const ExperimentSeries> series,
                                        double t0 = 0.0, double t1 = 30.0);
/// Same fit from precomputed means.
QuadraticFit quadratic_fit(std::span<const double> lambdas, std::span<const double> mean_g2);

}  // namespace aotoc
