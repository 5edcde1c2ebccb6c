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
#include "aotoc/models.hpp"

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

namespace aotoc {

// Random inputs shared by the validation suite and the tests.

/// Random block structure with sum n_J d_J = d and a Haar embedding.
BlockSpec random_block_spec(int d, Rng& rng);
/// Random collinear block structure (d_J = r n_J) of dimension <= max_dim.
BlockSpec random_collinear_spec(int max_dim, Rng& rng);
/// Unital Kraus set: mixture of 1 to 3 Haar unitaries with random weights.
std::vector<Matrix> random_mixed_unitary_kraus(int d, Rng& rng);
/// Unital Lindbladian with a random Hamiltonian and Hermitian jumps.
LindbladSpec random_unital_lindblad(int d, Rng& rng);
/// Mixed-unitary channel or a unital Lindblad propagator, chosen at random.
ChannelHandle random_unital_channel(int d, Rng& rng);

enum class Profile { fast, full };

struct CheckResult {
  int id = 0;
  std::string title;
  bool passed = false;
  double worst_deviation = 0.0;
  double tolerance = 0.0;
  double seconds = 0.0;
  std::string detail;
};

struct AcceptanceOptions {
  Profile profile = Profile::fast;
  std::uint64_t seed = 20240611;
  std::vector<int> only;  // empty means all checks
};

inline constexpr int kAcceptanceChecks = 11;

CheckResult run_check(int id, const AcceptanceOptions& opts);
std::vector<CheckResult> run_acceptance(const AcceptanceOptions& opts);
/// One line per check: "[PASS] 5 route equivalence  worst=... tol=... (1.2s) detail".
std::string format_check(const CheckResult& r);

/// Vectorization convention under test.
struct VecConvention {
  std::function<Vector(const Matrix&)> vec;
  std::function<Matrix(const Vector&)> unvec;
};
VecConvention column_stacking();
VecConvention row_stacking();

/// Largest disagreement between the A-OTOC computed from Kraus operators
/// directly and from the superoperator conj(K) (x) K applied through `conv`,
/// over `pairs` random (algebra, mixed-unitary channel) pairs.
double vec_convention_defect(const VecConvention& conv, int pairs, std::uint64_t seed);

struct RevivalStats {
  int revival_minima = 0;     // minima with contrast >= threshold to the previous maximum
  double min_contrast = 0.0;  // smallest such contrast among counted minima
};
/// Turning points of `values` (t > 0), scored by (max - min)/max between each
/// minimum and the maximum preceding it.
RevivalStats count_revivals(std::span<const double> values, double threshold);

}  // namespace aotoc
