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

#include <array>
#include <limits>
#include <cstdint>
#include <span>
#include <vector>

#include <Eigen/Dense>

#include "qpde/problems.hpp"
#include "qpde/qsim.hpp"

namespace qpde {

/// Classical bit-flip probabilities of one qubit's measurement.
struct ReadoutError {
  double p1_given_0 = 0.0;
  double p0_given_1 = 0.0;

  static ReadoutError symmetric(double p) { return {p, p}; }
  /// Row-stochastic confusion matrix, entry [true][read].
  std::array<std::array<double, 2>, 2> confusion() const;
};

/// Per-gate thermal relaxation, optional depolarizing, and readout error.
/// Per-qubit vectors of length 1 apply to every qubit; an empty readout
/// vector means perfect measurement. Times are in seconds.
struct NoiseModel {
  std::vector<double> t1{std::numeric_limits<double>::infinity()};
  std::vector<double> t2{std::numeric_limits<double>::infinity()};
  std::vector<ReadoutError> readout;
  double single_qubit_time = 30e-9;
  double two_qubit_time = 300e-9;
  double single_qubit_depolarizing = 0.0;
  double two_qubit_depolarizing = 0.0;

  /// No relaxation, no depolarizing, perfect readout.
  static NoiseModel ideal();
  /// T1 = T2 = 100 us, symmetric readout flips 0.01, depolarizing 5e-4 and
  /// 5e-3 for one- and two-qubit gates.
  static NoiseModel santiago_like();
  /// Relaxation only, T2 = t2_ratio * T1, with optional symmetric readout.
  static NoiseModel thermal(double t1, double t2_ratio = 1.0, double readout = 0.0);

  /// Throws std::invalid_argument unless 0 < T1, 0 < T2 <= 2 T1, all
  /// probabilities lie in [0, 1] and durations are non-negative.
  void validate() const;

  double t1_of(int qubit) const;
  double t2_of(int qubit) const;
  ReadoutError readout_of(int qubit) const;
  bool has_readout_error() const;
};

/// Dense density operator with qubit 0 as the most significant bit.
class DensityState {
 public:
  explicit DensityState(int num_qubits);  ///< |0...0><0...0|
  static DensityState from_pure(const QuantumState& state);
  static DensityState from_matrix(Eigen::MatrixXcd rho);

  int num_qubits() const { return num_qubits_; }
  std::size_t dim() const { return static_cast<std::size_t>(rho_.rows()); }
  const Eigen::MatrixXcd& matrix() const { return rho_; }
  Eigen::MatrixXcd& mutable_matrix() { return rho_; }

  double trace() const;
  double min_eigenvalue() const;
  std::vector<double> probabilities() const;

 private:
  int num_qubits_;
  Eigen::MatrixXcd rho_;
};

inline constexpr int kMaxNoisyQubits = 8;

/// rho -> U rho U^dagger.
void apply_unitary_gate(DensityState& rho, const Gate& gate);
/// Amplitude damping with decay probability p on one qubit.
void apply_amplitude_damping(DensityState& rho, int qubit, double p);
/// Multiplies the qubit's coherences by `factor` (pure dephasing).
void apply_dephasing(DensityState& rho, int qubit, double factor);
/// rho -> (1 - p) rho + p (I/2^k (x) tr_qubits rho).
void apply_depolarizing(DensityState& rho, std::span<const int> qubits, double p);

/// Noisy evolution: each gate's unitary followed by relaxation of the qubits
/// it touches over its duration, then depolarizing for its gate class.
DensityState run_noisy(const Circuit& circuit, const NoiseModel& model, DensityState initial);
DensityState run_noisy(const Circuit& circuit, const NoiseModel& model);

/// Measurement statistics after per-qubit readout confusion.
std::vector<double> readout_probabilities(std::span<const double> probabilities, int num_qubits,
                                          const NoiseModel& model);
Histogram measure_noisy(const DensityState& rho, const NoiseModel& model, std::int64_t shots,
                        std::uint64_t seed);

struct CircuitFidelity {
  double fx = 1.0;  ///< position circuit
  double fp = 1.0;  ///< position circuit followed by the QFT
};

/// Fidelity of the noisy position and momentum circuits with their ideal
/// output states.
CircuitFidelity circuit_fidelity_probe(const Circuit& circuit, const NoiseModel& model);

/// Energy of the state prepared by `circuit` under `model`. The momentum
/// part runs the circuit followed by a (noisy) QFT. `shots` = 0 returns the
/// exact expectation of the readout-distorted distributions.
EnergyEstimate noisy_energy(const Circuit& circuit, const Hamiltonian& h, const NoiseModel& model,
                            std::int64_t shots, std::uint64_t seed);

/// Exact readout-distorted outcome distributions of the position and
/// momentum circuits; reusable across many shot draws.
struct NoisyDistributions {
  std::vector<double> position;
  std::vector<double> momentum;
};
NoisyDistributions noisy_distributions(const Circuit& circuit, const NoiseModel& model);

struct ZnePoint {
  double t1 = 0.0;  ///< seconds
  double mean = 0.0;
  double std = 0.0;
};

enum class ZneMode {
  kLeastSquares,  ///< polynomial of the given degree, unweighted
  kRichardson,    ///< exact interpolation through all points
};

struct ZneResult {
  double e0 = 0.0;
  std::vector<double> coefficients;  ///< in lambda = 1 / T1[us], constant first
  double residual = 0.0;             ///< root mean square of the fit residuals
  int degree = 0;
  ZneMode mode = ZneMode::kLeastSquares;
  std::size_t points_used = 0;
};

inline constexpr int kMaxZneDegree = 5;

/// Fits E(T1) = E0 + sum_k c_k / T1^k and returns the zero-noise limit.
/// Points with T1 below `min_t1` are dropped first. Throws on duplicate T1,
/// non-positive T1, or fewer remaining points than degree + 1. In Richardson
/// mode the degree is the number of points minus one and `degree` is ignored.
ZneResult zne_extrapolate(std::span<const ZnePoint> points, int degree,
                          ZneMode mode = ZneMode::kLeastSquares, double min_t1 = 0.0);

}  // namespace qpde
