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

#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "qpde/ansatz.hpp"
#include "oracles.hpp"

namespace qpde {
namespace {

DensityState excited_plus() {
  // (|0> + |1>) / sqrt 2 after H
  return DensityState::from_pure(apply_gate(QuantumState(1), Gate::H(0)));
}

TEST(Channels, AmplitudeDampingOracle) {
  auto rho = excited_plus();
  apply_amplitude_damping(rho, 0, 0.3);
  EXPECT_NEAR(rho.matrix()(1, 1).real(), 0.5 * 0.7, 1e-15);
  EXPECT_NEAR(rho.matrix()(0, 0).real(), 0.5 + 0.5 * 0.3, 1e-15);
  EXPECT_NEAR(rho.matrix()(0, 1).real(), 0.5 * std::sqrt(0.7), 1e-15);
}

TEST(Channels, DephasingAndDepolarizing) {
  auto rho = excited_plus();
  apply_dephasing(rho, 0, 0.25);
  EXPECT_NEAR(rho.matrix()(0, 1).real(), 0.125, 1e-15);
  EXPECT_NEAR(rho.matrix()(1, 1).real(), 0.5, 1e-15);
  auto two = DensityState(2);
  const int qs[] = {0, 1};
  apply_depolarizing(two, qs, 0.2);
  EXPECT_NEAR(two.trace(), 1.0, 1e-14);
  EXPECT_GT(two.min_eigenvalue(), -1e-14);
  EXPECT_LT(two.matrix()(0, 0).real(), 1.0);
}

TEST(Channels, ThermalRelaxationOverOneGate) {
  NoiseModel m = NoiseModel::thermal(20e-6, 1.5);
  m.single_qubit_time = 2e-6;
  Circuit c(1);
  c.append(Gate::H(0));
  const auto rho = run_noisy(c, m);
  const double t1 = 20e-6, t2 = 30e-6, tau = 2e-6;
  EXPECT_NEAR(rho.matrix()(1, 1).real(), 0.5 * std::exp(-tau / t1), 1e-12);
  EXPECT_NEAR(std::abs(rho.matrix()(0, 1)), 0.5 * std::exp(-tau / t2), 1e-12);
}

TEST(Channels, IdealModelReproducesPureEvolution) {
  std::mt19937_64 rng(3);
  AnsatzSpec spec{AnsatzFamily::kRY, 3, 2, true, 0};
  std::vector<double> theta(parameter_count(spec));
  for (auto& t : theta) t = std::uniform_real_distribution<double>(-2, 2)(rng);
  const Circuit c = build_ansatz(spec, theta);
  const auto pure = run_circuit(c, QuantumState(3));
  const auto rho = run_noisy(c, NoiseModel::ideal());
  Eigen::VectorXcd v(8);
  for (int i = 0; i < 8; ++i) v(i) = pure[i];
  EXPECT_NEAR((rho.matrix() - v * v.adjoint()).norm(), 0.0, 1e-13);
}

TEST(Channels, NoisyStateStaysPhysical) {
  AnsatzSpec spec{AnsatzFamily::kZGR, 4, 1, true, 1};
  std::vector<double> theta(parameter_count(spec), 0.6);
  const auto rho = run_noisy(build_ansatz(spec, theta), NoiseModel::santiago_like());
  EXPECT_NEAR(rho.trace(), 1.0, 1e-12);
  EXPECT_GT(rho.min_eigenvalue(), -1e-12);
  EXPECT_NEAR((rho.matrix() - rho.matrix().adjoint()).norm(), 0.0, 1e-13);
}

TEST(Readout, ConfusionOracle) {
  NoiseModel m = NoiseModel::ideal();
  m.readout = {ReadoutError{0.1, 0.2}};
  const std::vector<double> p{0.7, 0.3};
  const auto r = readout_probabilities(p, 1, m);
  EXPECT_NEAR(r[1], 0.7 * 0.1 + 0.3 * 0.8, 1e-15);
  EXPECT_NEAR(r[0] + r[1], 1.0, 1e-15);
  // Two qubits with independent flips.
  m.readout = {ReadoutError::symmetric(0.1)};
  const std::vector<double> basis{1, 0, 0, 0};
  const auto r2 = readout_probabilities(basis, 2, m);
  EXPECT_NEAR(r2[3], 0.01, 1e-15);
  EXPECT_NEAR(r2[1], 0.09, 1e-15);
}

TEST(NoiseModel, Validation) {
  NoiseModel m = NoiseModel::thermal(10e-6);
  m.t2 = {30e-6};
  EXPECT_THROW(m.validate(), std::invalid_argument);
  EXPECT_NO_THROW(NoiseModel::santiago_like().validate());
  EXPECT_THROW(DensityState(kMaxNoisyQubits + 1), std::invalid_argument);
}

TEST(Probe, MomentumFidelityBelowPositionFidelity) {
  for (int n = 2; n <= 5; ++n) {
    AnsatzSpec spec{AnsatzFamily::kZGR, n, 1, true, 0};
    std::vector<double> theta(parameter_count(spec), 0.4);
    const auto c = build_ansatz(spec, theta);
    const auto f = circuit_fidelity_probe(c, NoiseModel::santiago_like());
    EXPECT_LE(f.fp, f.fx) << n;
    EXPECT_LT(f.fx, 1.0);
    const auto ideal = circuit_fidelity_probe(c, NoiseModel::ideal());
    EXPECT_NEAR(ideal.fx, 1.0, 1e-12);
    EXPECT_NEAR(ideal.fp, 1.0, 1e-12);
  }
}

TEST(Zne, RecoversSyntheticPolynomial) {
  // E = 0.5 + 0.3 l - 0.02 l^2 + 0.001 l^3 with l = 1 / T1[us]
  std::vector<ZnePoint> pts;
  for (double us : {2.0, 5.0, 10.0, 20.0, 50.0, 100.0}) {
    const double l = 1.0 / us;
    pts.push_back({us * 1e-6, 0.5 + 0.3 * l - 0.02 * l * l + 0.001 * l * l * l, 0.0});
  }
  const auto fit = zne_extrapolate(pts, 3);
  EXPECT_NEAR(fit.e0, 0.5, 1e-10);
  EXPECT_NEAR(fit.coefficients[1], 0.3, 1e-8);
  EXPECT_NEAR(fit.residual, 0.0, 1e-12);
  const auto rich = zne_extrapolate(std::span(pts).first(4), 0, ZneMode::kRichardson);
  EXPECT_EQ(rich.degree, 3);
  EXPECT_NEAR(rich.e0, 0.5, 1e-9);
}

TEST(Zne, MinT1DropsShortPoints) {
  std::vector<ZnePoint> pts{{1e-6, 9.0, 0}, {10e-6, 0.6, 0}, {20e-6, 0.55, 0}, {40e-6, 0.525, 0}};
  const auto fit = zne_extrapolate(pts, 1, ZneMode::kLeastSquares, 5e-6);
  EXPECT_EQ(fit.points_used, 3u);
  EXPECT_NEAR(fit.e0, 0.5, 1e-12);
}

TEST(Zne, RejectsDegenerateInput) {
  std::vector<ZnePoint> pts{{1e-6, 1, 0}, {1e-6, 2, 0}, {2e-6, 1, 0}};
  EXPECT_THROW(zne_extrapolate(pts, 1), std::invalid_argument);
  std::vector<ZnePoint> two{{1e-6, 1, 0}, {2e-6, 2, 0}};
  EXPECT_THROW(zne_extrapolate(two, 2), std::invalid_argument);
  EXPECT_THROW(zne_extrapolate(two, 6), std::invalid_argument);
}

TEST(NoisyEnergy, ExactExpectationAgreesWithDistributions) {
  const auto problem = Problem::harmonic_oscillator();
  const auto h = build_hamiltonian(problem, 3);
  AnsatzSpec spec{AnsatzFamily::kZGR, 3, 1, true, 0};
  std::vector<double> theta(parameter_count(spec), 0.5);
  const auto c = build_ansatz(spec, theta);
  const auto m = NoiseModel::thermal(30e-6, 1.0, 0.02);
  const auto d = noisy_distributions(c, m);
  double e = 0;
  for (std::size_t s = 0; s < 8; ++s) e += d.position[s] * h.v_diag[s] + d.momentum[s] * h.d_diag[s];
  EXPECT_NEAR(noisy_energy(c, h, m, 0, 1).value, e, 1e-12);
  const auto ideal = noisy_energy(c, h, NoiseModel::ideal(), 0, 1).value;
  EXPECT_NEAR(ideal, exact_energy(run_circuit(c, QuantumState(3)), h).value, 1e-12);
}

}  // namespace
}  // namespace qpde
