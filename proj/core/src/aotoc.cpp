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

#include <limits>
#include <string>

namespace aotoc {

std::string_view to_string(Route r) {
  switch (r) {
    case Route::correlator: return "correlator";
    case Route::replica: return "replica";
    case Route::montecarlo: return "montecarlo";
    case Route::otoc4pt: return "otoc4pt";
  }
  return "unknown";
}

namespace {

void check_dims(const AlgebraHandle& a, const ChannelHandle& e, const char* who) {
  if (a.dim() != e.dim())
    throw std::invalid_argument(std::string(who) + ": algebra acts on dimension " + std::to_string(a.dim()) +
                                " but channel on " + std::to_string(e.dim()));
}

void check_unital(const ChannelHandle& e, double tol) {
  const double ud = unital_defect(e);
  const double td = trace_defect(e);
  if (ud > tol || td > tol)
    throw std::invalid_argument("aotoc: channel is not unital and trace preserving (defects " + std::to_string(ud) +
                                ", " + std::to_string(td) + ")");
}

std::vector<Matrix> evolve_basis(const AlgebraHandle& a, const ChannelHandle& e, int workers) {
  const auto& fs = a.f_basis();
  std::vector<Matrix> images(fs.size());
  parallel_for(
      static_cast<Index>(fs.size()),
      [&](Index g) { images[static_cast<std::size_t>(g)] = aotoc::apply(e, fs[static_cast<std::size_t>(g)]); }, workers);
  return images;
}

void fill_bounds(const AlgebraHandle& a, AotocReport& r) {
  const auto db = dims_and_bounds(a);
  r.bound = db.bound;
  r.typical = db.typical;
}

}  // namespace

AotocReport aotoc_from_images(const AlgebraHandle& a, const std::vector<Matrix>& images, const AotocOptions& opts) {
  if (images.size() != a.f_basis().size())
    throw std::invalid_argument("aotoc_from_images: expected " + std::to_string(a.f_basis().size()) + " images, got " +
                                std::to_string(images.size()));
  const std::size_t m = images.size();
  std::vector<double> norms(m), kept(m), leaked(m);
  const int workers = opts.workers > 0 ? opts.workers : worker_count();
  parallel_for(
      static_cast<Index>(m),
      [&](Index gi) {
        const auto g = static_cast<std::size_t>(gi);
        const Matrix& x = images[g];
        const Matrix px = project_commutant(a, x, opts.projection);
        norms[g] = hs_norm2(x);
        kept[g] = hs_norm2(px);
        leaked[g] = hs_norm2(x - px);
      },
      workers);
  const double d = a.dim();
  AotocReport r;
  r.g1 = pairwise_sum(norms) / d;
  r.g2 = pairwise_sum(kept) / d;
  r.g = pairwise_sum(leaked) / d;
  r.method = Route::correlator;
  fill_bounds(a, r);
  return r;
}

AotocReport aotoc(const AlgebraHandle& a, const ChannelHandle& e, const AotocOptions& opts) {
  check_dims(a, e, "aotoc");
  if (opts.check_channel) check_unital(e, opts.channel_tol);
  const int workers = opts.workers > 0 ? opts.workers : worker_count();
  return aotoc_from_images(a, evolve_basis(a, e, workers), opts);
}

double aotoc_two_point(const AlgebraHandle& a, const ChannelHandle& e) {
  check_dims(a, e, "aotoc_two_point");
  if (!a.f_basis_orthogonal()) throw std::invalid_argument("aotoc_two_point: f basis must be orthogonal");
  const auto& fs = a.f_basis();
  std::vector<Matrix> dual;
  dual.reserve(fs.size());
  for (const auto& f : fs) dual.push_back(Matrix(f.adjoint()) / std::sqrt(hs_norm2(f)));
  std::vector<double> terms;
  terms.reserve(fs.size() * (fs.size() + 1));
  for (const auto& f : fs) {
    const Matrix img = aotoc::apply(e, f);
    terms.push_back(hs_norm2(img));
    for (const auto& t : dual) terms.push_back(-std::norm(hs_inner(t, img)));
  }
  return pairwise_sum(terms) / a.dim();
}

AotocReport aotoc_replica(const AlgebraHandle& a, const ChannelHandle& e, int max_dim) {
  check_dims(a, e, "aotoc_replica");
  const int d = a.dim();
  if (d > max_dim)
    throw std::invalid_argument("aotoc_replica: dimension " + std::to_string(d) + " exceeds replica limit " +
                                std::to_string(max_dim));
  const Index d2 = static_cast<Index>(d) * d;
  Matrix evolved = Matrix::Zero(d2, d2);
  for (const auto& f : a.f_basis()) evolved += kron(aotoc::apply(e, f), aotoc::apply(e, Matrix(f.adjoint())));
  const Matrix s = swap_operator(d);
  const Matrix s_omega = s * omega_algebra(a);
  // Tr[K M] = sum_ij K(i,j) M(j,i)
  const auto trace_prod = [](const Matrix& k, const Matrix& m) { return (k.transpose().cwiseProduct(m)).sum(); };
  AotocReport r;
  r.g1 = trace_prod(s, evolved).real() / d;
  r.g2 = trace_prod(s_omega, evolved).real() / d;
  r.g = trace_prod(Matrix(s - s_omega), evolved).real() / d;
  r.method = Route::replica;
  fill_bounds(a, r);
  return r;
}

double scrambling_otoc4pt(const AlgebraHandle& a, const ChannelHandle& e) {
  check_dims(a, e, "scrambling_otoc4pt");
  std::vector<double> terms;
  terms.reserve(a.f_basis().size() * a.e_basis().size());
  for (const auto& f : a.f_basis()) {
    const Matrix img = aotoc::apply(e, f);
    const Matrix img_adj = img.adjoint();
    for (const auto& el : a.e_basis()) terms.push_back((img_adj * el.adjoint() * img * el).trace().real());
  }
  return pairwise_sum(terms) / a.dim();
}

Matrix random_algebra_unitary(const AlgebraHandle& a, Rng& rng, bool commutant_side) {
  const BlockSpec& s = a.spec();
  const int d = a.dim();
  Matrix block = Matrix::Zero(d, d);
  const auto offsets = s.offsets();
  for (std::size_t j = 0; j < s.blocks.size(); ++j) {
    const auto [n, f] = s.blocks[j];
    const int off = offsets[j];
    if (!commutant_side) {
      const Matrix q = haar_unitary(f, rng);
      for (int p = 0; p < n; ++p) block.block(off + p * f, off + p * f, f, f) = q;
    } else {
      const Matrix q = haar_unitary(n, rng);
      for (int p = 0; p < n; ++p)
        for (int pp = 0; pp < n; ++pp)
          for (int k = 0; k < f; ++k) block(off + p * f + k, off + pp * f + k) = q(p, pp);
    }
  }
  return s.embedding * block * s.embedding.adjoint();
}

McEstimate summarize(std::span<const double> samples) {
  McEstimate out;
  out.samples = static_cast<int>(samples.size());
  if (samples.empty()) return out;
  const double n = static_cast<double>(samples.size());
  out.mean = pairwise_sum(samples) / n;
  if (samples.size() < 2) return out;
  std::vector<double> sq(samples.size());
  for (std::size_t i = 0; i < samples.size(); ++i) sq[i] = (samples[i] - out.mean) * (samples[i] - out.mean);
  const double var = pairwise_sum(sq) / (n - 1.0);
  out.stderr_ = std::sqrt(var / n);
  return out;
}

AotocReport aotoc_montecarlo(const AlgebraHandle& a, const ChannelHandle& e, int n_samples, std::uint64_t seed) {
  check_dims(a, e, "aotoc_montecarlo");
  if (n_samples < 2) throw std::invalid_argument("aotoc_montecarlo: need at least 2 samples");
  const Rng master(seed);
  const double d = a.dim();
  std::vector<double> values(static_cast<std::size_t>(n_samples));
  parallel_for(n_samples, [&](Index i) {
    Rng rng = master.split(static_cast<std::uint64_t>(i));
    const Matrix x = random_algebra_unitary(a, rng, false);
    const Matrix y = random_algebra_unitary(a, rng, true);
    const Matrix ey = aotoc::apply(e, y);
    values[static_cast<std::size_t>(i)] = hs_norm2(x * ey - ey * x) / (2.0 * d);
  });
  const McEstimate est = summarize(values);
  AotocReport r;
  r.g = est.mean;
  r.mc_stderr = est.stderr_;
  r.method = Route::montecarlo;
  // G1 and G2 are not separately estimated by sampling; report NaN.
  r.g1 = std::numeric_limits<double>::quiet_NaN();
  r.g2 = std::numeric_limits<double>::quiet_NaN();
  fill_bounds(a, r);
  return r;
}

GaacResult gaac(const AlgebraHandle& a, const Matrix& u) {
  if (u.rows() != a.dim()) throw std::invalid_argument("gaac: unitary dimension mismatch");
  const ChannelHandle uc = from_unitary(u);
  const Matrix p = commutant_projector_superop(a);
  const Matrix& us = uc.superop();
  const Matrix p_rot = us * p * us.adjoint();
  const double da_prime = a.dims().dim_commutant;
  GaacResult out;
  out.gaac = 1.0 - hs_inner(p, p_rot).real() / da_prime;
  const Matrix om = omega_algebra(a);
  const Matrix uu = kron(u, u);
  out.gaac_reduced = 1.0 - hs_inner(om, Matrix(uu * om * uu.adjoint())).real() / da_prime;
  out.aotoc = aotoc(a, uc).g;
  out.gap = std::abs(out.gaac - out.aotoc);
  out.collinear = is_collinear(a).collinear;
  return out;
}

InvarianceResult is_commutant_invariant(const AlgebraHandle& a, const ChannelHandle& e, double tol) {
  check_dims(a, e, "is_commutant_invariant");
  InvarianceResult out;
  for (const auto& f : a.f_basis()) {
    const Matrix img = aotoc::apply(e, f);
    out.max_leakage = std::max(out.max_leakage, std::sqrt(hs_norm2(img - project_commutant(a, img))));
  }
  out.invariant = out.max_leakage <= tol;
  return out;
}

McEstimate haar_typical_mc(const AlgebraHandle& a, int n_unitaries, std::uint64_t seed) {
  if (n_unitaries < 10) throw std::invalid_argument("haar_typical_mc: need at least 10 unitaries");
  const Rng master(seed);
  const auto& fs = a.f_basis();
  AotocOptions opts;
  opts.workers = 1;
  std::vector<double> values(static_cast<std::size_t>(n_unitaries));
  parallel_for(n_unitaries, [&](Index i) {
    Rng rng = master.split(static_cast<std::uint64_t>(i));
    const Matrix u = haar_unitary(a.dim(), rng);
    std::vector<Matrix> images;
    images.reserve(fs.size());
    for (const auto& f : fs) images.push_back(u * f * u.adjoint());
    values[static_cast<std::size_t>(i)] = aotoc_from_images(a, images, opts).g;
  });
  return summarize(values);
}

}  // namespace aotoc
