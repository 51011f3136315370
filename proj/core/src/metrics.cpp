// Copyright 2026 The qpde Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "qpde/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

#include "qpde/fourier.hpp"

namespace qpde {

namespace {

double clamp_unit(double x) { return std::clamp(x, 0.0, 1.0); }

Amplitudes subsample(const std::vector<double>& fine, std::size_t stride) {
  Amplitudes out(fine.size() / stride);
  double norm2 = 0.0;
  for (std::size_t i = 0; i < out.size(); ++i) {
    out[i] = fine[i * stride];
    norm2 += std::norm(out[i]);
  }
  for (auto& v : out) v /= std::sqrt(norm2);
  return out;
}

std::vector<double> ranks(std::span<const double> v) {
  std::vector<std::size_t> idx(v.size());
  std::iota(idx.begin(), idx.end(), 0);
  std::sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) { return v[a] < v[b]; });
  std::vector<double> r(v.size());
  for (std::size_t i = 0; i < idx.size();) {
    std::size_t j = i;
    while (j + 1 < idx.size() && v[idx[j + 1]] == v[idx[i]]) ++j;
    const double avg = 0.5 * static_cast<double>(i + j);
    for (std::size_t k = i; k <= j; ++k) r[idx[k]] = avg;
    i = j + 1;
  }
  return r;
}

}  // namespace

double fidelity(std::span<const Complex> a, std::span<const Complex> b) {
  if (a.size() != b.size()) throw std::invalid_argument("fidelity: dimension mismatch");
  Complex overlap{};
  double na = 0.0, nb = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    overlap += std::conj(a[i]) * b[i];
    na += std::norm(a[i]);
    nb += std::norm(b[i]);
  }
  if (!(na > 0.0) || !(nb > 0.0)) throw std::invalid_argument("fidelity: zero vector");
  return clamp_unit(std::norm(overlap) / (na * nb));
}

double fidelity(const QuantumState& a, const QuantumState& b) {
  return fidelity(a.amplitudes(), b.amplitudes());
}

double fidelity(const DensityState& rho, const QuantumState& b) {
  if (rho.dim() != b.dim()) throw std::invalid_argument("fidelity: dimension mismatch");
  const Eigen::Map<const Eigen::VectorXcd> psi(b.amplitudes().data(),
                                               static_cast<Eigen::Index>(b.dim()));
  return clamp_unit((psi.adjoint() * rho.matrix() * psi)(0, 0).real() / psi.squaredNorm());
}

double infidelity_n(const QuantumState& state, const Problem& problem, ReferenceCache& cache) {
  const int n = state.num_qubits();
  const int target = std::max(n, kContinuousQubits);
  const auto ref = cache.fine(problem, n, target);
  const Amplitudes sampled = subsample(ref->ground, std::size_t{1} << (target - n));
  return 1.0 - fidelity(state.amplitudes(), sampled);
}

double continuous_infidelity(const QuantumState& state, const Problem& problem,
                             ReferenceCache& cache, int target_qubits) {
  const int n = state.num_qubits();
  if (n > target_qubits) throw std::invalid_argument("state larger than the interpolation target");
  const auto ref = cache.fine(problem, n, target_qubits);
  const Amplitudes up = interpolate_classical(state.amplitudes(), target_qubits - n);
  const Amplitudes g(ref->ground.begin(), ref->ground.end());
  return 1.0 - fidelity(up, g);
}

double continuous_infidelity(const DensityState& rho, const Problem& problem,
                             ReferenceCache& cache, int target_qubits) {
  const int n = rho.num_qubits();
  if (n > target_qubits) throw std::invalid_argument("state larger than the interpolation target");
  const auto ref = cache.fine(problem, n, target_qubits);
  const Amplitudes g(ref->ground.begin(), ref->ground.end());
  Amplitudes pulled = interpolation_adjoint(g, target_qubits - n);
  // A^dagger g is a contraction; its norm is part of the overlap, so no
  // renormalization here.
  const Eigen::Map<const Eigen::VectorXcd> v(pulled.data(), static_cast<Eigen::Index>(pulled.size()));
  return 1.0 - clamp_unit((v.adjoint() * rho.matrix() * v)(0, 0).real());
}

double theoretical_infidelity(const Problem& problem, int num_qubits, ReferenceCache& cache,
                              int target_qubits) {
  const auto coarse = cache.get(problem, num_qubits);
  const Amplitudes amp(coarse->ground.begin(), coarse->ground.end());
  return continuous_infidelity(QuantumState::from_amplitudes(amp), problem, cache, target_qubits);
}

double epsilon(double energy_opt, const ReferenceSolution& reference) {
  const double gap = reference.e1 - reference.e0;
  if (!(gap > 0.0)) throw std::invalid_argument("degenerate reference spectrum");
  return std::abs(reference.e0 - energy_opt) / gap;
}

double epsilon(double energy_opt, const Problem& problem, int num_qubits, ReferenceCache& cache) {
  return epsilon(energy_opt, *cache.get(problem, num_qubits));
}

Aggregate aggregate(std::span<const double> values) {
  if (values.empty()) throw std::invalid_argument("aggregate of an empty list");
  std::vector<double> v(values.begin(), values.end());
  std::sort(v.begin(), v.end());
  const std::size_t n = v.size();
  Aggregate a;
  a.count = n;
  a.median = n % 2 == 1 ? v[n / 2] : 0.5 * (v[n / 2 - 1] + v[n / 2]);
  a.mean = std::accumulate(v.begin(), v.end(), 0.0) / static_cast<double>(n);
  double acc = 0.0;
  for (double x : v) acc += (x - a.mean) * (x - a.mean);
  a.std = std::sqrt(acc / static_cast<double>(n));
  return a;
}

MeritReport merit_report(const QuantumState& state, double energy_opt, const Problem& problem,
                         ReferenceCache& cache) {
  const auto ref = cache.get(problem, state.num_qubits());
  MeritReport r;
  r.infidelity_n = infidelity_n(state, problem, cache);
  r.infidelity_inf = continuous_infidelity(state, problem, cache);
  r.energy_opt = energy_opt;
  r.energy_tn = ref->e0;
  r.e0 = ref->e0;
  r.e1 = ref->e1;
  r.epsilon = epsilon(energy_opt, *ref);
  return r;
}

double rank_correlation(std::span<const double> x, std::span<const double> y) {
  if (x.size() != y.size() || x.size() < 2) throw std::invalid_argument("rank correlation needs paired data");
  const auto rx = ranks(x), ry = ranks(y);
  const double mean = 0.5 * static_cast<double>(x.size() - 1);
  double sxy = 0, sxx = 0, syy = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sxy += (rx[i] - mean) * (ry[i] - mean);
    sxx += (rx[i] - mean) * (rx[i] - mean);
    syy += (ry[i] - mean) * (ry[i] - mean);
  }
  return sxy / std::sqrt(sxx * syy);
}

}  // namespace qpde
