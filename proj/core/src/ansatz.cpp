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

#include "qpde/ansatz.hpp"

#include <algorithm>
#include <bit>
#include <cctype>
#include <cmath>
#include <stdexcept>

namespace qpde {

namespace {

int inner_qubits(const AnsatzSpec& spec) {
  return spec.symmetrized ? spec.num_qubits - 1 : spec.num_qubits;
}

std::size_t inner_parameters(AnsatzFamily family, int k, int depth) {
  if (family == AnsatzFamily::kRY) return static_cast<std::size_t>((depth + 1) * k);
  return (std::size_t{1} << k) - 1;
}

std::size_t inner_cnots(AnsatzFamily family, int k, int depth) {
  if (family == AnsatzFamily::kRY) return static_cast<std::size_t>(depth * k * (k - 1) / 2);
  return k >= 1 ? (std::size_t{1} << k) - 2 : 0;
}

void check_theta(std::span<const double> theta, std::size_t expected) {
  if (theta.size() != expected) {
    throw std::invalid_argument("expected " + std::to_string(expected) + " parameters, got " +
                                std::to_string(theta.size()));
  }
  for (double t : theta) {
    if (!std::isfinite(t)) throw std::invalid_argument("non-finite ansatz parameter");
  }
}

}  // namespace

std::string to_string(AnsatzFamily family) {
  return family == AnsatzFamily::kRY ? "ry" : "zgr";
}

AnsatzFamily parse_ansatz_family(const std::string& name) {
  std::string s = name;
  std::transform(s.begin(), s.end(), s.begin(), [](unsigned char c) { return std::tolower(c); });
  if (s == "ry") return AnsatzFamily::kRY;
  if (s == "zgr") return AnsatzFamily::kZGR;
  throw std::invalid_argument("unknown ansatz family '" + name + "'");
}

void AnsatzSpec::validate() const {
  if (num_qubits < 1 || num_qubits > kMaxQubits) throw std::invalid_argument("ansatz qubit count out of range");
  if (symmetrized && num_qubits < 2) throw std::invalid_argument("symmetrized ansatz needs >= 2 qubits");
  if (family == AnsatzFamily::kRY && depth < 0) throw std::invalid_argument("RY depth must be >= 0");
  if (parity != 0 && parity != 1) throw std::invalid_argument("parity must be 0 or 1");
  if (!symmetrized && parity != 0) throw std::invalid_argument("parity requires a symmetrized ansatz");
}

std::string AnsatzSpec::label() const {
  return family == AnsatzFamily::kRY ? "RY" + std::to_string(depth) : "ZGR";
}

std::size_t parameter_count(const AnsatzSpec& spec) {
  spec.validate();
  return inner_parameters(spec.family, inner_qubits(spec), spec.depth);
}

std::size_t cnot_count(const AnsatzSpec& spec) {
  spec.validate();
  const int k = inner_qubits(spec);
  std::size_t count = inner_cnots(spec.family, k, spec.depth);
  if (spec.symmetrized) count += static_cast<std::size_t>(k);
  return count;
}

Circuit ry_ansatz(int num_qubits, int depth, std::span<const double> theta) {
  if (num_qubits < 1 || depth < 0) throw std::invalid_argument("invalid RY ansatz shape");
  check_theta(theta, inner_parameters(AnsatzFamily::kRY, num_qubits, depth));
  Circuit c(num_qubits);
  std::size_t p = 0;
  for (int d = 0; d < depth; ++d) {
    for (int q = 0; q < num_qubits; ++q) c.append(Gate::RY(q, theta[p++]));
    for (int ctrl = 0; ctrl < num_qubits; ++ctrl) {
      for (int t = ctrl + 1; t < num_qubits; ++t) c.append(Gate::CNOT(ctrl, t));
    }
  }
  for (int q = 0; q < num_qubits; ++q) c.append(Gate::RY(q, theta[p++]));
  return c;
}

Circuit zgr_ansatz(int num_qubits, std::span<const double> theta) {
  if (num_qubits < 1) throw std::invalid_argument("invalid ZGR ansatz shape");
  check_theta(theta, inner_parameters(AnsatzFamily::kZGR, num_qubits, 0));
  Circuit c(num_qubits);
  c.append(Gate::RY(0, theta[0]));
  std::size_t p = 1;
  for (int i = 1; i < num_qubits; ++i) {
    const unsigned span = 1u << i;
    for (unsigned z = 0; z < span; ++z) {
      // Most significant bit of z XOR (z - 1) taken modulo 2^i; at z = 0 this
      // closes the Gray-code cycle on the level's top control bit.
      const unsigned diff = z ^ ((z + span - 1) & (span - 1));
      const int bit = std::bit_width(diff) - 1;
      c.append(Gate::CNOT(i - 1 - bit, i));
      c.append(Gate::RY(i, theta[p++]));
    }
  }
  return c;
}

Circuit symmetrize(const Circuit& inner, int parity) {
  if (parity != 0 && parity != 1) throw std::invalid_argument("parity must be 0 or 1");
  const int k = inner.num_qubits();
  Circuit c(k + 1);
  if (parity == 1) c.append(Gate::X(0));
  c.append(Gate::H(0));
  c.append(inner, 1);
  // Flip the inner register when qubit 0 is 1, then flip it unconditionally:
  // the net reversal happens on the qubit-0 = 0 branch only.
  for (int q = 1; q <= k; ++q) c.append(Gate::CNOT(0, q));
  for (int q = 1; q <= k; ++q) c.append(Gate::X(q));
  return c;
}

Circuit build_ansatz(const AnsatzSpec& spec, std::span<const double> theta) {
  spec.validate();
  const int k = inner_qubits(spec);
  Circuit inner = spec.family == AnsatzFamily::kRY ? ry_ansatz(k, spec.depth, theta)
                                                   : zgr_ansatz(k, theta);
  return spec.symmetrized ? symmetrize(inner, spec.parity) : inner;
}

}  // namespace qpde
