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

#include <cstdint>
#include <filesystem>
#include <memory>
#include <span>
#include <string>
#include <vector>

#include "qpde/fourier.hpp"
#include "qpde/qsim.hpp"

namespace qpde {

enum class ProblemKind { kHarmonicOscillator, kTransmon, kFluxQubit };

/// A 1-D Hamiltonian H = D(p) + V(x) with its domain rule.
///
/// Units: hbar = m = omega = 1 for the oscillator, E_J = 1 for the qubits.
struct Problem {
  ProblemKind kind = ProblemKind::kHarmonicOscillator;
  double mass = 1.0;
  double omega = 1.0;
  double hbar = 1.0;
  double ej = 1.0;
  double ec = 1.0 / 50.0;
  double alpha = 0.7;

  static Problem harmonic_oscillator();
  static Problem transmon();
  static Problem flux_qubit();
  /// "harmonic_oscillator" (or "ho"), "transmon", "flux_qubit" (or "flux").
  static Problem from_name(const std::string& name);

  std::string name() const;

  /// Interval length for an n-qubit register. The oscillator balances the
  /// position and momentum windows, L = sqrt(2 pi 2^n hbar / (m omega));
  /// the qubits live on the fixed phase interval [-pi, pi).
  double domain_length(int num_qubits) const;
  /// Symmetric grid of 2^n points on the problem's interval.
  Grid grid(int num_qubits) const;

  double potential(double x) const;
  double kinetic(double p) const;
};

struct Hamiltonian {
  Grid grid;
  std::vector<double> v_diag;  ///< V(x_s)
  std::vector<double> d_diag;  ///< D(p_s), register order

  int num_qubits() const { return grid.num_qubits(); }
  std::size_t dim() const { return v_diag.size(); }
};

Hamiltonian build_hamiltonian(const Problem& problem, int num_qubits);
Hamiltonian build_hamiltonian(const Problem& problem, const Grid& grid);

struct EnergyEstimate {
  double value = 0.0;
  double v_part = 0.0;
  double d_part = 0.0;
  std::int64_t shots_per_term = 0;  ///< 0 means exact
};

/// Exact <V> + <D>; the kinetic part is read off the state after the
/// gate-level QFT.
EnergyEstimate exact_energy(const QuantumState& state, const Hamiltonian& h);

/// The two expectation values from position and momentum probability
/// vectors (the momentum one already in register order).
EnergyEstimate energy_from_probabilities(std::span<const double> position,
                                         std::span<const double> momentum, const Hamiltonian& h);

/// Shot estimate: `shots` samples of the position register and `shots`
/// samples of the register after a QFT, from independent streams of `seed`.
EnergyEstimate sampled_energy(const QuantumState& state, const Hamiltonian& h, std::int64_t shots,
                              std::uint64_t seed);
/// Same, starting from exact outcome distributions.
EnergyEstimate sampled_energy(std::span<const double> position, std::span<const double> momentum,
                              const Hamiltonian& h, std::int64_t shots, std::uint64_t seed);

/// Momentum-space outcome distribution |QFT psi|^2.
std::vector<double> momentum_probabilities(const QuantumState& state);

/// Two lowest eigenpairs of the dense grid Hamiltonian.
struct ReferenceSolution {
  Grid grid;
  double e0 = 0.0;
  double e1 = 0.0;
  std::vector<double> ground;  ///< unit norm, positive at its largest entry
};

inline constexpr int kMaxReferenceQubits = 12;

/// Dense F^dagger diag(D) F + diag(V), real symmetric for even D.
Eigen::MatrixXd hamiltonian_matrix(const Hamiltonian& h);

ReferenceSolution reference_solve(const Hamiltonian& h);
ReferenceSolution reference_solve(const Problem& problem, int num_qubits);

/// Memoizes reference solutions. With a directory, solutions are also
/// persisted as JSON files keyed by (problem, grid) and reloaded on demand.
/// Thread-safe.
class ReferenceCache {
 public:
  explicit ReferenceCache(std::filesystem::path directory = {});
  ~ReferenceCache();
  ReferenceCache(const ReferenceCache&) = delete;
  ReferenceCache& operator=(const ReferenceCache&) = delete;

  /// Dense solution on the problem's own n-qubit grid.
  std::shared_ptr<const ReferenceSolution> get(const Problem& problem, int num_qubits);
  /// Dense solution on an arbitrary grid.
  std::shared_ptr<const ReferenceSolution> get(const Problem& problem, const Grid& grid);

  /// Ground state on the 2^target_qubits points that Fourier interpolation
  /// of an n-qubit state lands on (the n-qubit interval, starting at its
  /// first grid point). Solved densely on 2^solve_qubits points of that
  /// interval and interpolated spectrally up to the target.
  std::shared_ptr<const ReferenceSolution> fine(const Problem& problem, int num_qubits,
                                                int target_qubits = 12, int solve_qubits = 10);

  /// Process-wide cache without disk persistence.
  static ReferenceCache& global();

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

}  // namespace qpde
