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

#pragma once

#include <span>

#include "qpde/noise.hpp"
#include "qpde/problems.hpp"
#include "qpde/qsim.hpp"

namespace qpde {

/// Register size used for the continuous fidelity.
inline constexpr int kContinuousQubits = 12;

/// |<a|b>|^2
double fidelity(const QuantumState& a, const QuantumState& b);
double fidelity(std::span<const Complex> a, std::span<const Complex> b);
/// <b|rho|b>
double fidelity(const DensityState& rho, const QuantumState& b);

/// 1 - F against the continuum ground state sampled on the n-qubit grid.
double infidelity_n(const QuantumState& state, const Problem& problem,
                    ReferenceCache& cache = ReferenceCache::global());

/// 1 - F between the state Fourier-interpolated to `target_qubits` and the
/// fine reference on the same points.
double continuous_infidelity(const QuantumState& state, const Problem& problem,
                             ReferenceCache& cache = ReferenceCache::global(),
                             int target_qubits = kContinuousQubits);
/// Mixed-state version: the fine reference is pulled back through the
/// adjoint of the interpolation isometry, F = <A^dagger g|rho|A^dagger g>.
double continuous_infidelity(const DensityState& rho, const Problem& problem,
                             ReferenceCache& cache = ReferenceCache::global(),
                             int target_qubits = kContinuousQubits);

/// Best achievable continuous infidelity with n qubits: the dense n-point
/// ground state, interpolated.
double theoretical_infidelity(const Problem& problem, int num_qubits,
                              ReferenceCache& cache = ReferenceCache::global(),
                              int target_qubits = kContinuousQubits);

/// |E_tn - E_opt| / (E1 - E0), energies of the dense solve at the same n.
double epsilon(double energy_opt, const ReferenceSolution& reference);
double epsilon(double energy_opt, const Problem& problem, int num_qubits,
               ReferenceCache& cache = ReferenceCache::global());

struct Aggregate {
  double median = 0.0;
  double std = 0.0;  ///< population standard deviation about the mean
  double mean = 0.0;
  std::size_t count = 0;
};

/// Throws std::invalid_argument on an empty input.
Aggregate aggregate(std::span<const double> values);

struct MeritReport {
  double infidelity_n = 0.0;
  double infidelity_inf = 0.0;
  double epsilon = 0.0;
  double energy_opt = 0.0;
  double energy_tn = 0.0;
  double e0 = 0.0;
  double e1 = 0.0;
};

MeritReport merit_report(const QuantumState& state, double energy_opt, const Problem& problem,
                         ReferenceCache& cache = ReferenceCache::global());

/// Spearman rank correlation (average ranks for ties).
double rank_correlation(std::span<const double> x, std::span<const double> y);

}  // namespace qpde
