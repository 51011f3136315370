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
#include <string>

#include "qpde/qsim.hpp"

namespace qpde {

enum class AnsatzFamily { kRY, kZGR };

std::string to_string(AnsatzFamily family);
/// Accepts "ry" and "zgr" (case-insensitive). Throws std::invalid_argument.
AnsatzFamily parse_ansatz_family(const std::string& name);

/// Variational circuit family on `num_qubits` qubits. When `symmetrized`
/// the family describes the inner circuit on num_qubits - 1 qubits, wrapped
/// so that the output is even (parity 0) or odd (parity 1) under x -> -x on
/// a symmetric grid.
struct AnsatzSpec {
  AnsatzFamily family = AnsatzFamily::kZGR;
  int num_qubits = 3;
  int depth = 1;  ///< RY only
  bool symmetrized = true;
  int parity = 0;

  /// Throws std::invalid_argument on an inconsistent spec.
  void validate() const;
  /// Short label such as "ZGR" or "RY1".
  std::string label() const;
};

std::size_t parameter_count(const AnsatzSpec& spec);
std::size_t cnot_count(const AnsatzSpec& spec);

/// depth x [RY layer, CNOT(c, t) for all c < t], then a final RY layer.
/// Parameter d * n + q drives the RY on qubit q in layer d.
Circuit ry_ansatz(int num_qubits, int depth, std::span<const double> theta);

/// Conditional-rotation ladder: RY(theta_0) on qubit 0, then for each level
/// i = 1..n-1 and z = 0..2^i - 1 a CNOT onto qubit i followed by
/// RY(theta_{2^i - 1 + z}). The CNOT controls follow a Gray-code cycle over
/// qubits 0..i-1, so each level is an exact uniformly controlled rotation.
Circuit zgr_ansatz(int num_qubits, std::span<const double> theta);

/// Wraps an (n-1)-qubit circuit into an n-qubit one. Qubit 0 is put in
/// (|0> + (-1)^parity |1>)/sqrt(2), `inner` acts on qubits 1..n-1, and the
/// inner register is bit-reversed (s -> complement of s) when qubit 0 is 0.
/// The result obeys amp(1 s) = (-1)^parity amp(0 ~s) for any inner circuit.
Circuit symmetrize(const Circuit& inner, int parity);

/// Builds the circuit described by `spec` with angles `theta`.
Circuit build_ansatz(const AnsatzSpec& spec, std::span<const double> theta);

}  // namespace qpde
