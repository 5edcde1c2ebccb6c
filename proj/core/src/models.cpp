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

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <chrono>

namespace aotoc {

void SpinChainSpec::validate() const {
  if (sites < 2) throw std::invalid_argument("SpinChainSpec: need at least 2 sites");
  if (sites > 20) throw std::invalid_argument("SpinChainSpec: more than 20 sites is not supported");
  if (alpha < 0.0 || gamma < 0.0) throw std::invalid_argument("SpinChainSpec: rates must be non-negative");
}

namespace {

inline bool bit(std::uint32_t s, int site, int sites) { return (s >> (sites - 1 - site)) & 1U; }
inline std::uint32_t flip(std::uint32_t s, int site, int sites) { return s ^ (1U << (sites - 1 - site)); }

bool blockade_ok(std::uint32_t s, int sites) {
  if (s & (s >> 1)) return false;
  return !((s & 1U) && ((s >> (sites - 1)) & 1U));
}

}  // namespace

std::vector<std::uint32_t> pxp_space(int sites) {
  if (sites < 3 || sites > 20) throw std::invalid_argument("pxp_space: need 3 <= N <= 20");
  std::vector<std::uint32_t> out;
  for (std::uint32_t s = 0; s < (1U << sites); ++s)
    if (blockade_ok(s, sites)) out.push_back(s);
  return out;
}

LindbladSpec pxp_model(const SpinChainSpec& spec) {
  spec.validate();
  if (spec.model != ChainModel::pxp) throw std::invalid_argument("pxp_model: spec is not a PXP chain");
  const int n = spec.sites;
  const auto space = pxp_space(n);
  const auto dim = static_cast<Index>(space.size());
  std::map<std::uint32_t, Index> index;
  for (Index i = 0; i < dim; ++i) index[space[static_cast<std::size_t>(i)]] = i;
  const auto find = [&](std::uint32_t s) -> Index {
    const auto it = index.find(s);
    return it == index.end() ? -1 : it->second;
  };

  LindbladSpec out;
  out.hamiltonian = Matrix::Zero(dim, dim);
  for (Index i = 0; i < dim; ++i) {
    const std::uint32_t s = space[static_cast<std::size_t>(i)];
    for (int j = 0; j < n; ++j) {
      if (bit(s, (j + n - 1) % n, n) || bit(s, (j + 1) % n, n)) continue;
      const Index target = find(flip(s, j, n));
      if (target >= 0) out.hamiltonian(target, i) += spec.coupling;
    }
  }
  if (spec.alpha > 0.0) {
    const double r = std::sqrt(spec.alpha);
    for (int j = 0; j < n; ++j) {
      Matrix z = Matrix::Zero(dim, dim);
      for (Index i = 0; i < dim; ++i) z(i, i) = bit(space[static_cast<std::size_t>(i)], j, n) ? r : -r;
      out.jumps.push_back(std::move(z));
    }
  }
  if (spec.gamma > 0.0) {
    const double r = std::sqrt(spec.gamma);
    for (int j = 0; j < n; ++j) {
      Matrix up = Matrix::Zero(dim, dim);
      Matrix down = Matrix::Zero(dim, dim);
      for (Index i = 0; i < dim; ++i) {
        const std::uint32_t s = space[static_cast<std::size_t>(i)];
        const Index target = find(flip(s, j, n));
        if (target < 0) continue;  // raising out of the blockade space
        if (bit(s, j, n)) down(target, i) = r;
        else up(target, i) = r;
      }
      out.jumps.push_back(std::move(up));
      out.jumps.push_back(std::move(down));
    }
  }
  return out;
}

Vector product_state(int sites, ProductPattern pattern) {
  if (pattern == ProductPattern::neel && sites % 2 != 0)
    throw std::invalid_argument("product_state: Neel state needs an even number of sites");
  const auto space = pxp_space(sites);
  std::uint32_t target = 0;
  if (pattern == ProductPattern::neel)
    for (int j = 0; j < sites; j += 2) target = flip(target, j, sites);
  const auto it = std::find(space.begin(), space.end(), target);
  Vector v = Vector::Zero(static_cast<Index>(space.size()));
  v(it - space.begin()) = 1.0;
  return v;
}

Matrix site_operator(const Matrix& op, int site, int sites) {
  if (site < 0 || site >= sites) throw std::invalid_argument("site_operator: site out of range");
  Matrix out = site == 0 ? op : Matrix::Identity(2, 2);
  for (int j = 1; j < sites; ++j) out = kron(out, j == site ? op : Matrix(Matrix::Identity(2, 2)));
  return out;
}

namespace {

// The single-site basis is (|0> = down, |1> = up), so sigma_z = diag(-1, +1),
// sigma_y picks up a sign relative to the textbook matrix and s+ = |1><0|.
Matrix chain_pauli(char p) {
  Matrix m = Matrix::Zero(2, 2);
  switch (p) {
    case 'Z': m(0, 0) = -1.0; m(1, 1) = 1.0; return m;
    case 'Y': return -pauli_matrix('Y');
    case '+': m(1, 0) = 1.0; return m;
    case '-': m(0, 1) = 1.0; return m;
    default: return pauli_matrix(p);
  }
}

Matrix collective(char p, int sites) {
  const int d = 1 << sites;
  Matrix out = Matrix::Zero(d, d);
  const Matrix op = chain_pauli(p);
  for (int j = 0; j < sites; ++j) out += site_operator(op, j, sites);
  return out;
}

}  // namespace

LindbladSpec xxx_model(const SpinChainSpec& spec) {
  spec.validate();
  if (spec.model != ChainModel::xxx) throw std::invalid_argument("xxx_model: spec is not an XXX chain");
  const int n = spec.sites;
  if (n > 12) throw std::invalid_argument("xxx_model: more than 12 sites is not supported");
  const int d = 1 << n;
  LindbladSpec out;
  out.hamiltonian = Matrix::Zero(d, d);
  for (char p : {'X', 'Y', 'Z'}) {
    const Matrix op = chain_pauli(p);
    for (int j = 0; j < n; ++j)
      out.hamiltonian += spec.coupling * site_operator(op, j, n) * site_operator(op, (j + 1) % n, n);
  }
  if (spec.alpha > 0.0) out.jumps.push_back(std::sqrt(spec.alpha) * collective('Z', n));
  if (spec.gamma > 0.0) {
    out.jumps.push_back(std::sqrt(spec.gamma) * collective('+', n));
    out.jumps.push_back(std::sqrt(spec.gamma) * collective('-', n));
  }
  return out;
}

Matrix total_spin_squared(int sites) {
  const int d = 1 << sites;
  Matrix out = Matrix::Zero(d, d);
  for (char p : {'X', 'Y', 'Z'}) {
    const Matrix s = collective(p, sites);
    out += s * s;
  }
  return out;
}

Matrix dfs_subspace(int sites) {
  if (sites < 2 || sites % 2 != 0) throw std::invalid_argument("dfs_subspace: need an even number of sites");
  if (sites > 12) throw std::invalid_argument("dfs_subspace: more than 12 sites is not supported");
  Eigen::SelfAdjointEigenSolver<Matrix> es(total_spin_squared(sites));
  std::vector<Index> zero;
  for (Index i = 0; i < es.eigenvalues().size(); ++i)
    if (std::abs(es.eigenvalues()(i)) <= 1e-8) zero.push_back(i);
  Matrix cols(es.eigenvectors().rows(), static_cast<Index>(zero.size()));
  for (std::size_t c = 0; c < zero.size(); ++c) cols.col(static_cast<Index>(c)) = es.eigenvectors().col(zero[c]);
  return orthonormalize(cols);
}

Matrix dfs_rotation(int sites, double lambda, std::uint64_t seed) {
  Rng rng(seed);
  const cplx i(0.0, 1.0);
  Matrix u = Matrix::Identity(1, 1);
  for (int j = 0; j < sites; ++j) {
    double eta[3];
    double norm = 0.0;
    do {
      for (double& x : eta) x = rng.normal();
      norm = std::sqrt(eta[0] * eta[0] + eta[1] * eta[1] + eta[2] * eta[2]);
    } while (norm < 1e-12);
    const Matrix dot = (eta[0] * chain_pauli('X') + eta[1] * chain_pauli('Y') + eta[2] * chain_pauli('Z')) / norm;
    // (eta . sigma)^2 = 1, so the exponential is cos + i sin (eta . sigma).
    const Matrix local = std::cos(lambda) * Matrix::Identity(2, 2) + i * std::sin(lambda) * dot;
    u = kron(u, local);
  }
  return u;
}

AlgebraHandle perturbed_dfs_algebra(int sites, double lambda, std::uint64_t seed) {
  if (lambda < 0.0) throw std::invalid_argument("perturbed_dfs_algebra: lambda must be non-negative");
  const Matrix base = dfs_subspace(sites);
  if (lambda == 0.0) return dfs_algebra(base);
  return dfs_algebra(dfs_rotation(sites, lambda, seed) * base);
}

std::vector<ExperimentSeries> run_series(const LindbladSpec& model, std::span<const AlgebraHandle> algebras,
                                         std::span<const double> times, const SeriesOptions& opts) {
  const auto start = std::chrono::steady_clock::now();
  model.validate();
  const int d = model.dim();
  for (std::size_t i = 0; i < times.size(); ++i) {
    if (times[i] < 0.0) throw std::invalid_argument("run_series: times must be non-negative");
    if (i > 0 && !(times[i] > times[i - 1])) throw std::invalid_argument("run_series: times must be strictly increasing");
  }
  Index columns = 0;
  for (const auto& a : algebras) {
    if (a.dim() != d)
      throw std::invalid_argument("run_series: algebra dimension " + std::to_string(a.dim()) +
                                  " does not match model dimension " + std::to_string(d));
    columns += static_cast<Index>(a.f_basis().size());
  }
  const Index d2 = static_cast<Index>(d) * d;
  Matrix state(d2, columns);
  {
    Index c = 0;
    for (const auto& a : algebras)
      for (const auto& f : a.f_basis()) state.col(c++) = vec(f);
  }

  const bool dense = d2 <= opts.exp.dense_threshold;
  Matrix generator;
  SparseMatrix sparse_generator;
  if (dense) generator = lindblad_superop(model);
  else sparse_generator = lindblad_superop_sparse(model);
  Matrix step;
  double step_dt = -1.0;

  std::vector<ExperimentSeries> out(algebras.size());
  for (auto& s : out) {
    s.times.assign(times.begin(), times.end());
    s.rows.reserve(times.size());
  }
  double t_prev = 0.0;
  for (double t : times) {
    const double dt = t - t_prev;
    try {
      if (dt > 0.0) {
        if (dense) {
          if (std::abs(dt - step_dt) > 1e-13 * std::max(1.0, dt)) {
            step = matexp(generator, dt);
            step_dt = dt;
          }
          state = (step * state).eval();
        } else {
          parallel_for(columns, [&](Index c) {
            state.col(c) = matexp_apply(sparse_generator, dt, Vector(state.col(c)), opts.exp);
          });
        }
      }
      if (!state.allFinite()) throw ConvergenceError("non-finite propagated operator");
    } catch (const ConvergenceError& e) {
      throw ConvergenceError("run_series: exponential failed at t = " + std::to_string(t) + ": " + e.what());
    }
    t_prev = t;
    Index c = 0;
    for (std::size_t k = 0; k < algebras.size(); ++k) {
      const auto m = algebras[k].f_basis().size();
      std::vector<Matrix> images;
      images.reserve(m);
      for (std::size_t g = 0; g < m; ++g) images.push_back(unvec(state.col(c++)));
      out[k].rows.push_back(aotoc_from_images(algebras[k], images, opts.aotoc));
    }
  }
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  for (auto& s : out) s.meta.wall_seconds = secs;
  return out;
}

ExperimentSeries run_series(const LindbladSpec& model, const AlgebraHandle& algebra, std::span<const double> times,
                            const SeriesOptions& opts) {
  return std::move(run_series(model, std::span<const AlgebraHandle>(&algebra, 1), times, opts).front());
}

std::vector<double> uniform_grid(double t0, double t1, double dt) {
  if (!(dt > 0.0) || t1 < t0) throw std::invalid_argument("uniform_grid: need dt > 0 and t1 >= t0");
  const auto steps = static_cast<long long>(std::llround((t1 - t0) / dt));
  std::vector<double> out;
  out.reserve(static_cast<std::size_t>(steps + 1));
  for (long long i = 0; i <= steps; ++i) out.push_back(t0 + static_cast<double>(i) * dt);
  return out;
}

double window_mean(const ExperimentSeries& s, double t0, double t1, double AotocReport::*field) {
  std::vector<double> values;
  for (std::size_t i = 0; i < s.times.size(); ++i)
    if (s.times[i] >= t0 - 1e-12 && s.times[i] <= t1 + 1e-12) values.push_back(s.rows[i].*field);
  if (values.empty()) throw std::invalid_argument("window_mean: no samples inside the window");
  return pairwise_sum(values) / static_cast<double>(values.size());
}

QuadraticFit quadratic_fit(std::span<const double> lambdas, std::span<const double> mean_g2) {
  if (lambdas.size() != mean_g2.size()) throw std::invalid_argument("quadratic_fit: size mismatch");
  std::vector<double> sorted(lambdas.begin(), lambdas.end());
  std::sort(sorted.begin(), sorted.end());
  const auto distinct = std::unique(sorted.begin(), sorted.end()) - sorted.begin();
  const auto zero = std::find(lambdas.begin(), lambdas.end(), 0.0);
  if (distinct < 3 || zero == lambdas.end())
    throw std::invalid_argument("quadratic_fit: need at least 3 distinct lambdas including 0");
  const double base = mean_g2[static_cast<std::size_t>(zero - lambdas.begin())];

  QuadraticFit fit;
  fit.lambdas.assign(lambdas.begin(), lambdas.end());
  fit.mean_g2.assign(mean_g2.begin(), mean_g2.end());
  std::vector<double> delta(lambdas.size()), num(lambdas.size()), den(lambdas.size());
  for (std::size_t i = 0; i < lambdas.size(); ++i) {
    const double l2 = lambdas[i] * lambdas[i];
    delta[i] = base - mean_g2[i];
    num[i] = delta[i] * l2;
    den[i] = l2 * l2;
  }
  fit.coefficient = pairwise_sum(num) / pairwise_sum(den);
  const double mean_delta = pairwise_sum(delta) / static_cast<double>(delta.size());
  std::vector<double> res(delta.size()), tot(delta.size());
  for (std::size_t i = 0; i < delta.size(); ++i) {
    const double r = delta[i] - fit.coefficient * lambdas[i] * lambdas[i];
    res[i] = r * r;
    tot[i] = (delta[i] - mean_delta) * (delta[i] - mean_delta);
  }
  const double ss_res = pairwise_sum(res);
  const double ss_tot = pairwise_sum(tot);
  fit.r_squared = ss_tot == 0.0 ? 1.0 : 1.0 - ss_res / ss_tot;
  return fit;
}

QuadraticFit time_average_quadratic_fit(std::span<const double> lambdas, std::span<const ExperimentSeries> series,
                                        double t0, double t1) {
  if (lambdas.size() != series.size()) throw std::invalid_argument("time_average_quadratic_fit: size mismatch");
  std::vector<double> means;
  means.reserve(series.size());
  for (const auto& s : series) means.push_back(window_mean(s, t0, t1, &AotocReport::g2));
  return quadratic_fit(lambdas, means);
}

}  // namespace aotoc
