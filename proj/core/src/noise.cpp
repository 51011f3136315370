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

#include "qpde/noise.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include <Eigen/Eigenvalues>

namespace qpde {

namespace {

std::size_t mask_of(int num_qubits, int qubit) {
  return std::size_t{1} << (num_qubits - 1 - qubit);
}

void check_qubit(const DensityState& rho, int qubit) {
  if (qubit < 0 || qubit >= rho.num_qubits()) throw std::out_of_range("qubit index out of range");
}

bool valid_probability(double p) { return p >= 0.0 && p <= 1.0; }

template <typename T>
const T& per_qubit(const std::vector<T>& v, int qubit, const char* what) {
  if (v.empty()) throw std::invalid_argument(std::string("noise model has no ") + what);
  if (v.size() == 1) return v.front();
  if (qubit < 0 || static_cast<std::size_t>(qubit) >= v.size()) {
    throw std::out_of_range(std::string("no ") + what + " entry for qubit " + std::to_string(qubit));
  }
  return v[static_cast<std::size_t>(qubit)];
}

// I/2 (x) tr_q rho on one qubit.
Eigen::MatrixXcd replace_with_mixed(const Eigen::MatrixXcd& rho, int num_qubits, int qubit) {
  const std::size_t mask = mask_of(num_qubits, qubit);
  const auto dim = static_cast<std::size_t>(rho.rows());
  Eigen::MatrixXcd out = Eigen::MatrixXcd::Zero(rho.rows(), rho.cols());
  for (std::size_t i = 0; i < dim; ++i) {
    if (i & mask) continue;
    for (std::size_t j = 0; j < dim; ++j) {
      if (j & mask) continue;
      const Complex reduced = 0.5 * (rho(i, j) + rho(i | mask, j | mask));
      out(i, j) = reduced;
      out(i | mask, j | mask) = reduced;
    }
  }
  return out;
}

void relax(DensityState& rho, const NoiseModel& model, int qubit, double duration) {
  if (duration <= 0.0) return;
  const double t1 = model.t1_of(qubit);
  const double t2 = model.t2_of(qubit);
  if (std::isfinite(t1)) apply_amplitude_damping(rho, qubit, 1.0 - std::exp(-duration / t1));
  const double inv_tphi = 1.0 / t2 - 0.5 / t1;
  if (inv_tphi > 0.0) apply_dephasing(rho, qubit, std::exp(-duration * inv_tphi));
}

}  // namespace

std::array<std::array<double, 2>, 2> ReadoutError::confusion() const {
  return {{{1.0 - p1_given_0, p1_given_0}, {p0_given_1, 1.0 - p0_given_1}}};
}

NoiseModel NoiseModel::ideal() { return NoiseModel{}; }

NoiseModel NoiseModel::santiago_like() {
  NoiseModel m;
  m.t1 = {100e-6};
  m.t2 = {100e-6};
  m.readout = {ReadoutError::symmetric(0.01)};
  m.single_qubit_depolarizing = 5e-4;
  m.two_qubit_depolarizing = 5e-3;
  return m;
}

NoiseModel NoiseModel::thermal(double t1, double t2_ratio, double readout) {
  NoiseModel m;
  m.t1 = {t1};
  m.t2 = {t2_ratio * t1};
  if (readout > 0.0) m.readout = {ReadoutError::symmetric(readout)};
  m.validate();
  return m;
}

void NoiseModel::validate() const {
  if (t1.empty() || t2.empty()) throw std::invalid_argument("T1 and T2 must be given");
  if (t1.size() != t2.size() && t1.size() != 1 && t2.size() != 1) {
    throw std::invalid_argument("T1 and T2 per-qubit lists differ in length");
  }
  const std::size_t count = std::max(t1.size(), t2.size());
  for (std::size_t q = 0; q < count; ++q) {
    const double a = t1.size() == 1 ? t1[0] : t1[q];
    const double b = t2.size() == 1 ? t2[0] : t2[q];
    if (!(a > 0.0)) throw std::invalid_argument("T1 must be positive");
    if (!(b > 0.0)) throw std::invalid_argument("T2 must be positive");
    if (b > 2.0 * a * (1.0 + 1e-12)) throw std::invalid_argument("T2 must not exceed 2 T1");
  }
  for (const auto& r : readout) {
    if (!valid_probability(r.p1_given_0) || !valid_probability(r.p0_given_1)) {
      throw std::invalid_argument("readout probabilities must lie in [0, 1]");
    }
  }
  if (!(single_qubit_time >= 0.0) || !(two_qubit_time >= 0.0)) {
    throw std::invalid_argument("gate durations must be non-negative");
  }
  if (!valid_probability(single_qubit_depolarizing) || !valid_probability(two_qubit_depolarizing)) {
    throw std::invalid_argument("depolarizing probabilities must lie in [0, 1]");
  }
}

double NoiseModel::t1_of(int qubit) const { return per_qubit(t1, qubit, "T1"); }
double NoiseModel::t2_of(int qubit) const { return per_qubit(t2, qubit, "T2"); }

ReadoutError NoiseModel::readout_of(int qubit) const {
  if (readout.empty()) return {};
  return per_qubit(readout, qubit, "readout");
}

bool NoiseModel::has_readout_error() const {
  return std::any_of(readout.begin(), readout.end(),
                     [](const ReadoutError& r) { return r.p1_given_0 > 0 || r.p0_given_1 > 0; });
}

DensityState::DensityState(int num_qubits) : num_qubits_(num_qubits) {
  if (num_qubits < 1 || num_qubits > kMaxNoisyQubits) {
    throw std::invalid_argument("density state qubit count out of range");
  }
  const auto dim = static_cast<Eigen::Index>(std::size_t{1} << num_qubits);
  rho_ = Eigen::MatrixXcd::Zero(dim, dim);
  rho_(0, 0) = 1.0;
}

DensityState DensityState::from_pure(const QuantumState& state) {
  DensityState d(state.num_qubits());
  const Eigen::Map<const Eigen::VectorXcd> psi(state.amplitudes().data(),
                                               static_cast<Eigen::Index>(state.dim()));
  d.rho_ = psi * psi.adjoint();
  return d;
}

DensityState DensityState::from_matrix(Eigen::MatrixXcd rho) {
  if (rho.rows() != rho.cols()) throw std::invalid_argument("density matrix must be square");
  const auto dim = static_cast<std::size_t>(rho.rows());
  if (dim < 2 || (dim & (dim - 1)) != 0) throw std::invalid_argument("dimension must be a power of two");
  int n = 0;
  while ((std::size_t{1} << n) < dim) ++n;
  DensityState d(n);
  d.rho_ = std::move(rho);
  return d;
}

double DensityState::trace() const { return rho_.trace().real(); }

double DensityState::min_eigenvalue() const {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(rho_, Eigen::EigenvaluesOnly);
  return solver.eigenvalues()(0);
}

std::vector<double> DensityState::probabilities() const {
  std::vector<double> p(dim());
  for (std::size_t i = 0; i < p.size(); ++i) {
    p[i] = rho_(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(i)).real();
  }
  return p;
}

void apply_unitary_gate(DensityState& rho, const Gate& gate) {
  auto& m = rho.mutable_matrix();
  const int n = rho.num_qubits();
  const auto dim = static_cast<std::size_t>(m.rows());
  for (Eigen::Index j = 0; j < m.cols(); ++j) {
    apply_gate_inplace(std::span<Complex>(m.col(j).data(), dim), n, gate);
  }
  // (U (U rho)^dagger)^dagger = U rho U^dagger.
  m.adjointInPlace();
  for (Eigen::Index j = 0; j < m.cols(); ++j) {
    apply_gate_inplace(std::span<Complex>(m.col(j).data(), dim), n, gate);
  }
  m.adjointInPlace();
}

void apply_amplitude_damping(DensityState& rho, int qubit, double p) {
  check_qubit(rho, qubit);
  if (!valid_probability(p)) throw std::invalid_argument("damping probability outside [0, 1]");
  if (p == 0.0) return;
  auto& m = rho.mutable_matrix();
  const std::size_t mask = mask_of(rho.num_qubits(), qubit);
  const double keep = std::sqrt(1.0 - p);
  const std::size_t dim = rho.dim();
  for (std::size_t i = 0; i < dim; ++i) {
    if (i & mask) continue;
    for (std::size_t j = 0; j < dim; ++j) {
      if (j & mask) continue;
      const auto i1 = static_cast<Eigen::Index>(i | mask), j1 = static_cast<Eigen::Index>(j | mask);
      const auto i0 = static_cast<Eigen::Index>(i), j0 = static_cast<Eigen::Index>(j);
      m(i0, j0) += p * m(i1, j1);
      m(i0, j1) *= keep;
      m(i1, j0) *= keep;
      m(i1, j1) *= 1.0 - p;
    }
  }
}

void apply_dephasing(DensityState& rho, int qubit, double factor) {
  check_qubit(rho, qubit);
  if (!(factor >= 0.0 && factor <= 1.0)) throw std::invalid_argument("dephasing factor outside [0, 1]");
  if (factor == 1.0) return;
  auto& m = rho.mutable_matrix();
  const std::size_t mask = mask_of(rho.num_qubits(), qubit);
  const std::size_t dim = rho.dim();
  for (std::size_t i = 0; i < dim; ++i) {
    for (std::size_t j = 0; j < dim; ++j) {
      if ((i ^ j) & mask) m(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) *= factor;
    }
  }
}

void apply_depolarizing(DensityState& rho, std::span<const int> qubits, double p) {
  if (!valid_probability(p)) throw std::invalid_argument("depolarizing probability outside [0, 1]");
  if (p == 0.0 || qubits.empty()) return;
  Eigen::MatrixXcd mixed = rho.matrix();
  for (int q : qubits) {
    check_qubit(rho, q);
    mixed = replace_with_mixed(mixed, rho.num_qubits(), q);
  }
  rho.mutable_matrix() = (1.0 - p) * rho.matrix() + p * mixed;
}

DensityState run_noisy(const Circuit& circuit, const NoiseModel& model, DensityState initial) {
  model.validate();
  if (circuit.num_qubits() != initial.num_qubits()) {
    throw std::invalid_argument("circuit and density state sizes differ");
  }
  for (const Gate& g : circuit.gates()) {
    apply_unitary_gate(initial, g);
    const bool two = g.is_two_qubit();
    const double duration = g.duration > 0.0 ? g.duration
                                             : (two ? model.two_qubit_time : model.single_qubit_time);
    std::vector<int> touched{g.target};
    if (two) touched.push_back(g.control);
    for (int q : touched) relax(initial, model, q, duration);
    apply_depolarizing(initial, touched,
                       two ? model.two_qubit_depolarizing : model.single_qubit_depolarizing);
  }
  return initial;
}

DensityState run_noisy(const Circuit& circuit, const NoiseModel& model) {
  return run_noisy(circuit, model, DensityState(circuit.num_qubits()));
}

std::vector<double> readout_probabilities(std::span<const double> probabilities, int num_qubits,
                                          const NoiseModel& model) {
  if (probabilities.size() != (std::size_t{1} << num_qubits)) {
    throw std::invalid_argument("probability vector length does not match qubit count");
  }
  std::vector<double> p(probabilities.begin(), probabilities.end());
  if (!model.has_readout_error()) return p;
  for (int q = 0; q < num_qubits; ++q) {
    const auto c = model.readout_of(q).confusion();
    const std::size_t mask = mask_of(num_qubits, q);
    for (std::size_t i = 0; i < p.size(); ++i) {
      if (i & mask) continue;
      const double p0 = p[i], p1 = p[i | mask];
      p[i] = p0 * c[0][0] + p1 * c[1][0];
      p[i | mask] = p0 * c[0][1] + p1 * c[1][1];
    }
  }
  return p;
}

Histogram measure_noisy(const DensityState& rho, const NoiseModel& model, std::int64_t shots,
                        std::uint64_t seed) {
  if (shots < 1) throw std::invalid_argument("shots must be >= 1");
  const auto p = readout_probabilities(rho.probabilities(), rho.num_qubits(), model);
  return sample_probabilities(p, shots, seed);
}

CircuitFidelity circuit_fidelity_probe(const Circuit& circuit, const NoiseModel& model) {
  const int n = circuit.num_qubits();
  Circuit momentum = circuit;
  momentum.append(qft_circuit(n));
  auto overlap = [&](const Circuit& c) {
    const QuantumState ideal = run_circuit(c, QuantumState(n));
    const DensityState rho = run_noisy(c, model);
    const Eigen::Map<const Eigen::VectorXcd> psi(ideal.amplitudes().data(),
                                                 static_cast<Eigen::Index>(ideal.dim()));
    return (psi.adjoint() * rho.matrix() * psi)(0, 0).real();
  };
  return {overlap(circuit), overlap(momentum)};
}

NoisyDistributions noisy_distributions(const Circuit& circuit, const NoiseModel& model) {
  const int n = circuit.num_qubits();
  Circuit momentum = circuit;
  momentum.append(qft_circuit(n));
  return {readout_probabilities(run_noisy(circuit, model).probabilities(), n, model),
          readout_probabilities(run_noisy(momentum, model).probabilities(), n, model)};
}

EnergyEstimate noisy_energy(const Circuit& circuit, const Hamiltonian& h, const NoiseModel& model,
                            std::int64_t shots, std::uint64_t seed) {
  if (shots < 0) throw std::invalid_argument("shots must be >= 0");
  const auto d = noisy_distributions(circuit, model);
  if (shots == 0) return energy_from_probabilities(d.position, d.momentum, h);
  return sampled_energy(d.position, d.momentum, h, shots, seed);
}

ZneResult zne_extrapolate(std::span<const ZnePoint> points, int degree, ZneMode mode, double min_t1) {
  std::vector<ZnePoint> used;
  for (const auto& p : points) {
    if (!(p.t1 > 0.0) || !std::isfinite(p.mean)) throw std::invalid_argument("ZNE points need T1 > 0 and finite energies");
    if (p.t1 >= min_t1) used.push_back(p);
  }
  for (std::size_t i = 0; i < used.size(); ++i) {
    for (std::size_t j = i + 1; j < used.size(); ++j) {
      if (used[i].t1 == used[j].t1) throw std::invalid_argument("duplicate T1 in ZNE points");
    }
  }
  if (mode == ZneMode::kRichardson) {
    if (used.empty()) throw std::invalid_argument("Richardson extrapolation needs at least one point");
    degree = static_cast<int>(used.size()) - 1;
  }
  if (degree < 0 || degree > kMaxZneDegree) throw std::invalid_argument("ZNE degree must be in [0, 5]");
  if (used.size() < static_cast<std::size_t>(degree) + 1) {
    throw std::invalid_argument("ZNE needs at least degree + 1 points above the T1 floor");
  }
  const auto rows = static_cast<Eigen::Index>(used.size());
  Eigen::MatrixXd a(rows, degree + 1);
  Eigen::VectorXd y(rows);
  for (Eigen::Index r = 0; r < rows; ++r) {
    const double lambda = 1e-6 / used[static_cast<std::size_t>(r)].t1;  // 1 / T1 in 1/us
    double power = 1.0;
    for (int k = 0; k <= degree; ++k, power *= lambda) a(r, k) = power;
    y(r) = used[static_cast<std::size_t>(r)].mean;
  }
  const Eigen::VectorXd c = a.colPivHouseholderQr().solve(y);
  ZneResult result;
  result.e0 = c(0);
  result.coefficients.assign(c.data(), c.data() + c.size());
  result.residual = std::sqrt((a * c - y).squaredNorm() / static_cast<double>(rows));
  result.degree = degree;
  result.mode = mode;
  result.points_used = used.size();
  return result;
}

}  // namespace qpde
