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

#include <benchmark/benchmark.h>

#include <vector>

#include "qpde/ansatz.hpp"
#include "qpde/fourier.hpp"
#include "qpde/metrics.hpp"
#include "qpde/noise.hpp"
#include "qpde/problems.hpp"

namespace {

using namespace qpde;

void BM_RunCircuitRy(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  AnsatzSpec spec{AnsatzFamily::kRY, n, 2, true, 0};
  const std::vector<double> theta(parameter_count(spec), 0.3);
  const Circuit c = build_ansatz(spec, theta);
  for (auto _ : state) benchmark::DoNotOptimize(run_circuit(c, QuantumState(n)));
}
BENCHMARK(BM_RunCircuitRy)->DenseRange(3, 12, 3);

void BM_Qft(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const Circuit c = qft_circuit(n);
  const auto in = apply_gate(QuantumState(n), Gate::H(0));
  for (auto _ : state) benchmark::DoNotOptimize(run_circuit(c, in));
}
BENCHMARK(BM_Qft)->DenseRange(4, 14, 2);

void BM_InterpolationCircuit(benchmark::State& state) {
  const int n = 4, m = static_cast<int>(state.range(0));
  const auto in = pad_with_ancillas(encode_function(RealFunction([](double x) { return 1 + x; }),
                                                    Grid(0, 1, n, Centering::kLeft)),
                                    m);
  const Circuit c = interpolate_position_circuit(n, m);
  for (auto _ : state) benchmark::DoNotOptimize(run_circuit(c, in));
}
BENCHMARK(BM_InterpolationCircuit)->DenseRange(2, 8, 2);

void BM_InterpolationClassical(benchmark::State& state) {
  const int m = static_cast<int>(state.range(0));
  const Amplitudes v(16, Complex(0.25));
  for (auto _ : state) benchmark::DoNotOptimize(interpolate_classical(v, m));
}
BENCHMARK(BM_InterpolationClassical)->DenseRange(2, 8, 2);

void BM_ReferenceSolve(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const auto h = build_hamiltonian(Problem::flux_qubit(), n);
  for (auto _ : state) benchmark::DoNotOptimize(reference_solve(h));
}
BENCHMARK(BM_ReferenceSolve)->DenseRange(4, 10, 2)->Unit(benchmark::kMillisecond);

void BM_ContinuousInfidelity(benchmark::State& state) {
  ReferenceCache cache;
  const auto problem = Problem::harmonic_oscillator();
  const auto ref = cache.get(problem, 3);
  const auto s = QuantumState::from_amplitudes(Amplitudes(ref->ground.begin(), ref->ground.end()));
  continuous_infidelity(s, problem, cache);
  for (auto _ : state) benchmark::DoNotOptimize(continuous_infidelity(s, problem, cache));
}
BENCHMARK(BM_ContinuousInfidelity);

void BM_NoisyRun(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  AnsatzSpec spec{AnsatzFamily::kZGR, n, 1, true, 0};
  const std::vector<double> theta(parameter_count(spec), 0.3);
  const Circuit c = build_ansatz(spec, theta);
  const auto model = NoiseModel::santiago_like();
  for (auto _ : state) benchmark::DoNotOptimize(run_noisy(c, model));
}
BENCHMARK(BM_NoisyRun)->DenseRange(2, 6, 1);

}  // namespace

BENCHMARK_MAIN();
