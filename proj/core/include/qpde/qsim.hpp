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

#include <complex>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include <Eigen/Dense>

namespace qpde {

using Complex = std::complex<double>;
using Amplitudes = std::vector<Complex>;

/// Largest register the dense statevector backend accepts.
inline constexpr int kMaxQubits = 14;

enum class GateKind { kRY, kX, kH, kCPhase, kCNOT, kSWAP };

std::string to_string(GateKind kind);

/// A single gate of the restricted gate set.
///
/// Qubit 0 is the most significant bit of a basis index. For SWAP the two
/// qubits are `control` and `target`; the distinction is only positional.
/// `duration` is in seconds and is consumed by the noise module only; zero
/// means "use the noise model's default for this gate class".
struct Gate {
  GateKind kind = GateKind::kX;
  int target = 0;
  int control = -1;
  double angle = 0.0;
  double duration = 0.0;

  static Gate RY(int qubit, double theta);
  static Gate X(int qubit);
  static Gate H(int qubit);
  static Gate CPhase(int control, int target, double theta);
  static Gate CNOT(int control, int target);
  static Gate SWAP(int a, int b);

  bool is_two_qubit() const { return control >= 0; }
};

class Circuit {
 public:
  explicit Circuit(int num_qubits);

  int num_qubits() const { return num_qubits_; }
  const std::vector<Gate>& gates() const { return gates_; }
  std::size_t size() const { return gates_.size(); }
  bool empty() const { return gates_.empty(); }

  /// Appends a gate after validating its qubit indices.
  Circuit& append(const Gate& gate);
  /// Appends every gate of `other`, shifting its qubit indices by `offset`.
  Circuit& append(const Circuit& other, int offset = 0);

  std::size_t count(GateKind kind) const;
  std::size_t two_qubit_count() const;

  /// Reversed gate list with negated angles.
  Circuit adjoint() const;

 private:
  int num_qubits_;
  std::vector<Gate> gates_;
};

class QuantumState {
 public:
  /// |0...0> on `num_qubits` qubits.
  explicit QuantumState(int num_qubits);

  /// Takes ownership of an amplitude vector; its length must be a power of two.
  /// The vector is used as-is (no renormalization).
  static QuantumState from_amplitudes(Amplitudes amplitudes);
  static QuantumState basis(int num_qubits, std::uint64_t index);

  int num_qubits() const { return num_qubits_; }
  std::size_t dim() const { return amplitudes_.size(); }
  const Amplitudes& amplitudes() const { return amplitudes_; }
  Amplitudes& mutable_amplitudes() { return amplitudes_; }
  const Complex& operator[](std::size_t i) const { return amplitudes_[i]; }

  double norm() const;
  std::vector<double> probabilities() const;

 private:
  QuantumState(int num_qubits, Amplitudes amplitudes);

  int num_qubits_;
  Amplitudes amplitudes_;
};

/// Dense counts over basis indices; `counts.size() == 2^n`.
struct Histogram {
  std::vector<std::int64_t> counts;

  std::int64_t total() const;
  std::int64_t operator[](std::size_t i) const { return counts[i]; }
};

/// In-place action of `gate` on a raw amplitude buffer of `num_qubits` qubits.
void apply_gate_inplace(std::span<Complex> amplitudes, int num_qubits, const Gate& gate);

QuantumState apply_gate(QuantumState state, const Gate& gate);
QuantumState run_circuit(const Circuit& circuit, QuantumState initial);

/// QFT on the contiguous sub-register [first, first + count) of an
/// `num_qubits` register. The sub-register's first qubit is its most
/// significant bit, and trailing SWAPs make the unitary exactly
/// |r> -> 2^{-count/2} sum_s exp(+2 pi i r s / 2^count) |s>.
Circuit qft_circuit(int num_qubits, int first, int count);
inline Circuit qft_circuit(int n) { return qft_circuit(n, 0, n); }
Circuit inverse_qft_circuit(int num_qubits, int first, int count);

/// Draws `shots` i.i.d. outcomes from |amp_s|^2. Deterministic for a seed on
/// a fixed standard library.
Histogram sample(const QuantumState& state, std::int64_t shots, std::uint64_t rng_seed);

/// Multinomial sampling of a probability vector (negative entries are
/// clamped to zero, and the vector is renormalized).
Histogram sample_probabilities(std::span<const double> probabilities, std::int64_t shots,
                               std::uint64_t rng_seed);

/// sum_s diag_s |amp_s|^2
double expectation_diagonal(const QuantumState& state, std::span<const double> diag);

/// Dense unitary of a circuit; column j is the image of basis state |j>.
Eigen::MatrixXcd circuit_unitary(const Circuit& circuit);

}  // namespace qpde
