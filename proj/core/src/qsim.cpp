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

#include "qpde/qsim.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>
#include <stdexcept>

namespace qpde {

namespace {

void check_finite(double theta) {
  if (!std::isfinite(theta)) throw std::invalid_argument("gate angle must be finite");
}

int checked_qubit_count(std::size_t dim) {
  if (dim == 0 || (dim & (dim - 1)) != 0) {
    throw std::invalid_argument("amplitude vector length must be a power of two");
  }
  int n = 0;
  while ((std::size_t{1} << n) < dim) ++n;
  if (n > kMaxQubits) throw std::invalid_argument("register exceeds kMaxQubits");
  return n;
}

inline std::size_t bit_of(int num_qubits, int qubit) {
  return std::size_t{1} << (num_qubits - 1 - qubit);
}

}  // namespace

std::string to_string(GateKind kind) {
  switch (kind) {
    case GateKind::kRY: return "RY";
    case GateKind::kX: return "X";
    case GateKind::kH: return "H";
    case GateKind::kCPhase: return "CPHASE";
    case GateKind::kCNOT: return "CNOT";
    case GateKind::kSWAP: return "SWAP";
  }
  return "?";
}

Gate Gate::RY(int qubit, double theta) {
  check_finite(theta);
  return {GateKind::kRY, qubit, -1, theta, 0.0};
}
Gate Gate::X(int qubit) { return {GateKind::kX, qubit, -1, 0.0, 0.0}; }
Gate Gate::H(int qubit) { return {GateKind::kH, qubit, -1, 0.0, 0.0}; }
Gate Gate::CPhase(int control, int target, double theta) {
  check_finite(theta);
  return {GateKind::kCPhase, target, control, theta, 0.0};
}
Gate Gate::CNOT(int control, int target) { return {GateKind::kCNOT, target, control, 0.0, 0.0}; }
Gate Gate::SWAP(int a, int b) { return {GateKind::kSWAP, b, a, 0.0, 0.0}; }

Circuit::Circuit(int num_qubits) : num_qubits_(num_qubits) {
  if (num_qubits < 1 || num_qubits > kMaxQubits) {
    throw std::invalid_argument("circuit qubit count out of range");
  }
}

Circuit& Circuit::append(const Gate& gate) {
  if (gate.target < 0 || gate.target >= num_qubits_) {
    throw std::out_of_range("gate target qubit out of range");
  }
  const bool needs_control = gate.kind == GateKind::kCPhase || gate.kind == GateKind::kCNOT ||
                             gate.kind == GateKind::kSWAP;
  if (needs_control) {
    if (gate.control < 0 || gate.control >= num_qubits_) {
      throw std::out_of_range("gate control qubit out of range");
    }
    if (gate.control == gate.target) throw std::invalid_argument("control equals target");
  } else if (gate.control != -1) {
    throw std::invalid_argument("single-qubit gate with a control qubit");
  }
  check_finite(gate.angle);
  gates_.push_back(gate);
  return *this;
}

Circuit& Circuit::append(const Circuit& other, int offset) {
  for (Gate g : other.gates()) {
    g.target += offset;
    if (g.control >= 0) g.control += offset;
    append(g);
  }
  return *this;
}

std::size_t Circuit::count(GateKind kind) const {
  return static_cast<std::size_t>(
      std::count_if(gates_.begin(), gates_.end(), [kind](const Gate& g) { return g.kind == kind; }));
}

std::size_t Circuit::two_qubit_count() const {
  return static_cast<std::size_t>(
      std::count_if(gates_.begin(), gates_.end(), [](const Gate& g) { return g.is_two_qubit(); }));
}

Circuit Circuit::adjoint() const {
  Circuit out(num_qubits_);
  for (auto it = gates_.rbegin(); it != gates_.rend(); ++it) {
    Gate g = *it;
    g.angle = -g.angle;
    out.append(g);
  }
  return out;
}

QuantumState::QuantumState(int num_qubits) : num_qubits_(num_qubits) {
  if (num_qubits < 1 || num_qubits > kMaxQubits) {
    throw std::invalid_argument("state qubit count out of range");
  }
  amplitudes_.assign(std::size_t{1} << num_qubits, Complex{});
  amplitudes_[0] = 1.0;
}

QuantumState::QuantumState(int num_qubits, Amplitudes amplitudes)
    : num_qubits_(num_qubits), amplitudes_(std::move(amplitudes)) {}

QuantumState QuantumState::from_amplitudes(Amplitudes amplitudes) {
  const int n = checked_qubit_count(amplitudes.size());
  if (n < 1) throw std::invalid_argument("state needs at least one qubit");
  return QuantumState(n, std::move(amplitudes));
}

QuantumState QuantumState::basis(int num_qubits, std::uint64_t index) {
  QuantumState s(num_qubits);
  if (index >= s.dim()) throw std::out_of_range("basis index out of range");
  s.amplitudes_[0] = 0.0;
  s.amplitudes_[index] = 1.0;
  return s;
}

double QuantumState::norm() const {
  double acc = 0.0;
  for (const auto& a : amplitudes_) acc += std::norm(a);
  return std::sqrt(acc);
}

std::vector<double> QuantumState::probabilities() const {
  std::vector<double> p(amplitudes_.size());
  std::transform(amplitudes_.begin(), amplitudes_.end(), p.begin(),
                 [](const Complex& a) { return std::norm(a); });
  return p;
}

std::int64_t Histogram::total() const {
  std::int64_t t = 0;
  for (auto c : counts) t += c;
  return t;
}

void apply_gate_inplace(std::span<Complex> amp, int num_qubits, const Gate& gate) {
  const std::size_t dim = amp.size();
  const std::size_t t = bit_of(num_qubits, gate.target);
  switch (gate.kind) {
    case GateKind::kRY: {
      const double c = std::cos(gate.angle / 2), s = std::sin(gate.angle / 2);
      for (std::size_t i = 0; i < dim; ++i) {
        if (i & t) continue;
        const Complex a0 = amp[i], a1 = amp[i | t];
        amp[i] = c * a0 - s * a1;
        amp[i | t] = s * a0 + c * a1;
      }
      break;
    }
    case GateKind::kX:
      for (std::size_t i = 0; i < dim; ++i)
        if (!(i & t)) std::swap(amp[i], amp[i | t]);
      break;
    case GateKind::kH: {
      const double r = std::numbers::sqrt2 / 2;
      for (std::size_t i = 0; i < dim; ++i) {
        if (i & t) continue;
        const Complex a0 = amp[i], a1 = amp[i | t];
        amp[i] = r * (a0 + a1);
        amp[i | t] = r * (a0 - a1);
      }
      break;
    }
    case GateKind::kCPhase: {
      const std::size_t c = bit_of(num_qubits, gate.control);
      const Complex phase = std::polar(1.0, gate.angle);
      for (std::size_t i = 0; i < dim; ++i)
        if ((i & t) && (i & c)) amp[i] *= phase;
      break;
    }
    case GateKind::kCNOT: {
      const std::size_t c = bit_of(num_qubits, gate.control);
      for (std::size_t i = 0; i < dim; ++i)
        if ((i & c) && !(i & t)) std::swap(amp[i], amp[i | t]);
      break;
    }
    case GateKind::kSWAP: {
      const std::size_t c = bit_of(num_qubits, gate.control);
      for (std::size_t i = 0; i < dim; ++i)
        if ((i & c) && !(i & t)) std::swap(amp[i], amp[(i ^ c) | t]);
      break;
    }
  }
}

QuantumState apply_gate(QuantumState state, const Gate& gate) {
  Circuit check(state.num_qubits());
  check.append(gate);
  apply_gate_inplace(state.mutable_amplitudes(), state.num_qubits(), gate);
  return state;
}

QuantumState run_circuit(const Circuit& circuit, QuantumState initial) {
  if (circuit.num_qubits() != initial.num_qubits()) {
    throw std::invalid_argument("circuit and state qubit counts differ");
  }
  for (const Gate& g : circuit.gates()) {
    apply_gate_inplace(initial.mutable_amplitudes(), initial.num_qubits(), g);
  }
  return initial;
}

Circuit qft_circuit(int num_qubits, int first, int count) {
  if (count < 1) throw std::invalid_argument("QFT needs a non-empty sub-register");
  if (first < 0 || first + count > num_qubits) {
    throw std::out_of_range("QFT sub-register outside the register");
  }
  Circuit c(num_qubits);
  for (int j = 0; j < count; ++j) {
    c.append(Gate::H(first + j));
    for (int k = j + 1; k < count; ++k) {
      c.append(Gate::CPhase(first + k, first + j, std::numbers::pi / double(1 << (k - j))));
    }
  }
  for (int j = 0; j < count / 2; ++j) c.append(Gate::SWAP(first + j, first + count - 1 - j));
  return c;
}

Circuit inverse_qft_circuit(int num_qubits, int first, int count) {
  return qft_circuit(num_qubits, first, count).adjoint();
}

Histogram sample_probabilities(std::span<const double> probabilities, std::int64_t shots,
                               std::uint64_t rng_seed) {
  if (shots < 1) throw std::invalid_argument("shots must be positive");
  std::vector<double> p(probabilities.begin(), probabilities.end());
  double total = 0.0;
  for (auto& v : p) {
    v = std::max(v, 0.0);
    total += v;
  }
  if (!(total > 0.0)) throw std::invalid_argument("probability vector has no mass");

  // Sequential conditional binomials give an exact multinomial draw in O(dim).
  std::mt19937_64 rng(rng_seed);
  Histogram h;
  h.counts.assign(p.size(), 0);
  std::int64_t remaining = shots;
  double mass_left = total;
  for (std::size_t i = 0; i < p.size() && remaining > 0; ++i) {
    if (i + 1 == p.size() || p[i] >= mass_left) {
      h.counts[i] = remaining;
      remaining = 0;
      break;
    }
    const double q = std::clamp(p[i] / mass_left, 0.0, 1.0);
    std::binomial_distribution<std::int64_t> draw(remaining, q);
    const std::int64_t k = q > 0.0 ? draw(rng) : 0;
    h.counts[i] = k;
    remaining -= k;
    mass_left -= p[i];
  }
  return h;
}

Histogram sample(const QuantumState& state, std::int64_t shots, std::uint64_t rng_seed) {
  const auto p = state.probabilities();
  return sample_probabilities(p, shots, rng_seed);
}

double expectation_diagonal(const QuantumState& state, std::span<const double> diag) {
  if (diag.size() != state.dim()) throw std::invalid_argument("diagonal length mismatch");
  double acc = 0.0;
  for (std::size_t s = 0; s < diag.size(); ++s) acc += diag[s] * std::norm(state[s]);
  return acc;
}

Eigen::MatrixXcd circuit_unitary(const Circuit& circuit) {
  const std::size_t dim = std::size_t{1} << circuit.num_qubits();
  Eigen::MatrixXcd u = Eigen::MatrixXcd::Identity(dim, dim);
  for (Eigen::Index j = 0; j < u.cols(); ++j) {
    std::span<Complex> col(u.col(j).data(), dim);
    for (const Gate& g : circuit.gates()) apply_gate_inplace(col, circuit.num_qubits(), g);
  }
  return u;
}

}  // namespace qpde
