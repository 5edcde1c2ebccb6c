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

#include "aotoc/algebra.hpp"
#include "aotoc/channel.hpp"

#include <cstdint>
#include <optional>
#include <string_view>
#include <vector>

namespace aotoc {

enum class Route { correlator, replica, montecarlo, otoc4pt };

std::string_view to_string(Route r);

/// G = G1 - G2 with G1 the decoherence term and G2 the scrambling term.
/// Values are stored unclamped so bound violations stay visible.
struct AotocReport {
  double g = 0.0;
  double g1 = 0.0;
  double g2 = 0.0;
  double bound = 0.0;
  double typical = 0.0;
  Route method = Route::correlator;
  std::optional<double> mc_stderr;
};

struct AotocOptions {
  ProjectionMethod projection = ProjectionMethod::gram;
  // Reject channels whose unital/TP defect exceeds channel_tol.
  bool check_channel = true;
  double channel_tol = kNumericalTol;
  int workers = 0;  // 0 means worker_count()
};

/// Correlator route: g1 = (1/d) sum ||E(f)||^2, g2 = (1/d) sum ||P_A' E(f)||^2.
AotocReport aotoc(const AlgebraHandle& a, const ChannelHandle& e, const AotocOptions& opts = {});

/// Same as aotoc() given the evolved basis images[gamma] = E(f_gamma).
AotocReport aotoc_from_images(const AlgebraHandle& a, const std::vector<Matrix>& images,
                              const AotocOptions& opts = {});

/// Two-point form (1/d) sum ||E(f)||^2 - (1/d) sum |<f~_g^dag, E(f_g')>|^2.
/// Requires an orthogonal f basis.
double aotoc_two_point(const AlgebraHandle& a, const ChannelHandle& e);

/// Replica form (1/d) Tr[S (1 - Omega_A) E^(x)2(Omega_A')]; O(d^4) memory.
AotocReport aotoc_replica(const AlgebraHandle& a, const ChannelHandle& e, int max_dim = 12);

/// Direct Haar average of (1/2d) ||[X, E(Y)]||^2 with X, Y drawn from the
/// unitary groups of A and A'. Sample i uses the stream Rng(seed).split(i).
AotocReport aotoc_montecarlo(const AlgebraHandle& a, const ChannelHandle& e, int n_samples, std::uint64_t seed);

/// Scrambling term as an out-of-time-order four-point sum over both bases.
double scrambling_otoc4pt(const AlgebraHandle& a, const ChannelHandle& e);

/// Haar-random element of the unitary group of A (or of A' if commutant_side).
Matrix random_algebra_unitary(const AlgebraHandle& a, Rng& rng, bool commutant_side = false);

struct GaacResult {
  double gaac = 0.0;          // from the two projector superoperators
  double gaac_reduced = 0.0;  // 1 - <Omega_A, U (x) U Omega_A U^dag (x) U^dag> / d(A')
  double aotoc = 0.0;
  double gap = 0.0;           // |gaac - aotoc|
  bool collinear = false;
};
GaacResult gaac(const AlgebraHandle& a, const Matrix& u);

struct InvarianceResult {
  bool invariant = false;
  double max_leakage = 0.0;  // max_gamma ||(1 - P_A') E(f_gamma)||_2
};
InvarianceResult is_commutant_invariant(const AlgebraHandle& a, const ChannelHandle& e, double tol = 1e-8);

struct McEstimate {
  double mean = 0.0;
  double stderr_ = 0.0;
  int samples = 0;
};

/// Average of aotoc(A, U . U^dag) over global Haar unitaries.
McEstimate haar_typical_mc(const AlgebraHandle& a, int n_unitaries, std::uint64_t seed);

/// Sample mean and standard error (sample variance / sqrt(n)).
McEstimate summarize(std::span<const double> samples);

}  // namespace aotoc
