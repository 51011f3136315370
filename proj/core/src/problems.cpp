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

#include "qpde/problems.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <functional>
#include <map>
#include <mutex>
#include <numbers>
#include <sstream>
#include <stdexcept>

#include <Eigen/Eigenvalues>
#include <json.hpp>

#include "fft.hpp"
#include "qpde/rng.hpp"

namespace qpde {

namespace {

constexpr double kPi = std::numbers::pi;

double mean_of(std::span<const double> diag, const Histogram& hist) {
  double acc = 0.0;
  for (std::size_t s = 0; s < diag.size(); ++s) acc += diag[s] * static_cast<double>(hist.counts[s]);
  return acc / static_cast<double>(hist.total());
}

void fix_sign(std::vector<double>& v) {
  std::size_t best = 0;
  for (std::size_t i = 1; i < v.size(); ++i) {
    if (std::abs(v[i]) > std::abs(v[best])) best = i;
  }
  if (v[best] < 0) {
    for (auto& x : v) x = -x;
  }
}

std::string cache_key(const Problem& p, const Grid& g) {
  std::ostringstream os;
  os.precision(17);
  os << p.name() << '|' << p.mass << ',' << p.omega << ',' << p.hbar << ',' << p.ej << ',' << p.ec
     << ',' << p.alpha << '|' << g.a() << ',' << g.b() << ',' << g.num_qubits() << ','
     << static_cast<int>(g.centering());
  return os.str();
}

std::uint64_t fnv1a(const std::string& s) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : s) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

}  // namespace

Problem Problem::harmonic_oscillator() { return Problem{}; }

Problem Problem::transmon() {
  Problem p;
  p.kind = ProblemKind::kTransmon;
  return p;
}

Problem Problem::flux_qubit() {
  Problem p;
  p.kind = ProblemKind::kFluxQubit;
  return p;
}

Problem Problem::from_name(const std::string& name) {
  if (name == "harmonic_oscillator" || name == "ho") return harmonic_oscillator();
  if (name == "transmon") return transmon();
  if (name == "flux_qubit" || name == "flux") return flux_qubit();
  throw std::invalid_argument("unknown problem '" + name + "'");
}

std::string Problem::name() const {
  switch (kind) {
    case ProblemKind::kHarmonicOscillator: return "harmonic_oscillator";
    case ProblemKind::kTransmon: return "transmon";
    case ProblemKind::kFluxQubit: return "flux_qubit";
  }
  return "unknown";
}

double Problem::domain_length(int num_qubits) const {
  if (kind == ProblemKind::kHarmonicOscillator) {
    const double n_points = std::ldexp(1.0, num_qubits);
    return std::sqrt(2 * kPi * n_points * hbar / (mass * omega));
  }
  return 2 * kPi;
}

Grid Problem::grid(int num_qubits) const {
  if (num_qubits < 1) throw std::invalid_argument("problem grid needs n >= 1");
  return Grid::symmetric(domain_length(num_qubits), num_qubits);
}

double Problem::potential(double x) const {
  switch (kind) {
    case ProblemKind::kHarmonicOscillator: return 0.5 * mass * omega * omega * x * x;
    case ProblemKind::kTransmon: return -ej * std::cos(x);
    case ProblemKind::kFluxQubit: return -ej * (2 * std::cos(x) - alpha * std::cos(2 * x));
  }
  return 0.0;
}

double Problem::kinetic(double p) const {
  switch (kind) {
    case ProblemKind::kHarmonicOscillator: return hbar * hbar * p * p / (2 * mass);
    case ProblemKind::kTransmon: return 4 * ec * p * p;
    case ProblemKind::kFluxQubit: return ec * p * p / (0.5 + alpha);
  }
  return 0.0;
}

Hamiltonian build_hamiltonian(const Problem& problem, int num_qubits) {
  return build_hamiltonian(problem, problem.grid(num_qubits));
}

Hamiltonian build_hamiltonian(const Problem& problem, const Grid& grid) {
  if (grid.num_qubits() < 1) throw std::invalid_argument("hamiltonian needs n >= 1");
  Hamiltonian h{grid, std::vector<double>(grid.size()), std::vector<double>(grid.size())};
  const MomentumGrid momenta(grid);
  for (std::size_t s = 0; s < grid.size(); ++s) {
    h.v_diag[s] = problem.potential(grid.point(s));
    h.d_diag[s] = problem.kinetic(momenta.momentum(s));
  }
  return h;
}

std::vector<double> momentum_probabilities(const QuantumState& state) {
  return run_circuit(qft_circuit(state.num_qubits()), state).probabilities();
}

EnergyEstimate energy_from_probabilities(std::span<const double> position,
                                         std::span<const double> momentum, const Hamiltonian& h) {
  if (position.size() != h.dim() || momentum.size() != h.dim()) {
    throw std::invalid_argument("state and hamiltonian dimensions differ");
  }
  EnergyEstimate e;
  for (std::size_t s = 0; s < h.dim(); ++s) {
    e.v_part += h.v_diag[s] * position[s];
    e.d_part += h.d_diag[s] * momentum[s];
  }
  e.value = e.v_part + e.d_part;
  return e;
}

EnergyEstimate exact_energy(const QuantumState& state, const Hamiltonian& h) {
  if (state.dim() != h.dim()) throw std::invalid_argument("state and hamiltonian dimensions differ");
  EnergyEstimate e;
  e.v_part = expectation_diagonal(state, h.v_diag);
  e.d_part = expectation_diagonal(run_circuit(qft_circuit(state.num_qubits()), state), h.d_diag);
  e.value = e.v_part + e.d_part;
  return e;
}

EnergyEstimate sampled_energy(std::span<const double> position, std::span<const double> momentum,
                              const Hamiltonian& h, std::int64_t shots, std::uint64_t seed) {
  if (position.size() != h.dim() || momentum.size() != h.dim()) {
    throw std::invalid_argument("state and hamiltonian dimensions differ");
  }
  if (shots < 1) throw std::invalid_argument("shots must be >= 1");
  EnergyEstimate e;
  e.shots_per_term = shots;
  e.v_part = mean_of(h.v_diag, sample_probabilities(position, shots, derive_seed(seed, {0})));
  e.d_part = mean_of(h.d_diag, sample_probabilities(momentum, shots, derive_seed(seed, {1})));
  e.value = e.v_part + e.d_part;
  return e;
}

EnergyEstimate sampled_energy(const QuantumState& state, const Hamiltonian& h, std::int64_t shots,
                              std::uint64_t seed) {
  if (state.dim() != h.dim()) throw std::invalid_argument("state and hamiltonian dimensions differ");
  const auto pos = state.probabilities();
  const auto mom = momentum_probabilities(state);
  return sampled_energy(pos, mom, h, shots, seed);
}

Eigen::MatrixXd hamiltonian_matrix(const Hamiltonian& h) {
  const std::size_t n = h.dim();
  // K_{jl} depends on (l - j) mod N only: c_d = (1/N) sum_s D_s exp(2 pi i s d / N).
  Amplitudes d(h.d_diag.begin(), h.d_diag.end());
  const Amplitudes circ = detail::unitary_dft(d, +1);
  const double scale = 1.0 / std::sqrt(static_cast<double>(n));
  Eigen::MatrixXd m(n, n);
  for (std::size_t j = 0; j < n; ++j) {
    for (std::size_t l = 0; l < n; ++l) m(j, l) = circ[(l + n - j) % n].real() * scale;
    m(j, j) += h.v_diag[j];
  }
  return 0.5 * (m + m.transpose());
}

ReferenceSolution reference_solve(const Hamiltonian& h) {
  if (h.num_qubits() > kMaxReferenceQubits) throw std::invalid_argument("reference grid too large");
  if (h.dim() < 2) throw std::invalid_argument("reference needs at least two grid points");
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(hamiltonian_matrix(h));
  if (solver.info() != Eigen::Success) throw std::runtime_error("eigensolver failed");
  ReferenceSolution r{h.grid, solver.eigenvalues()(0), solver.eigenvalues()(1), {}};
  const Eigen::VectorXd g = solver.eigenvectors().col(0).normalized();
  r.ground.assign(g.data(), g.data() + g.size());
  fix_sign(r.ground);
  return r;
}

ReferenceSolution reference_solve(const Problem& problem, int num_qubits) {
  if (num_qubits > kMaxReferenceQubits) throw std::invalid_argument("reference grid too large");
  return reference_solve(build_hamiltonian(problem, num_qubits));
}

struct ReferenceCache::Impl {
  std::filesystem::path directory;
  std::mutex mutex;
  std::map<std::string, std::shared_ptr<const ReferenceSolution>> entries;

  std::filesystem::path file_for(const std::string& key, const std::string& stem) const {
    char hex[17];
    std::snprintf(hex, sizeof hex, "%016llx", static_cast<unsigned long long>(fnv1a(key)));
    return directory / (stem + "_" + hex + ".json");
  }

  std::shared_ptr<const ReferenceSolution> load(const std::string& key, const std::string& stem,
                                                const Grid& grid) const {
    if (directory.empty()) return nullptr;
    std::ifstream in(file_for(key, stem));
    if (!in) return nullptr;
    try {
      const auto j = nlohmann::json::parse(in);
      if (j.at("key").get<std::string>() != key) return nullptr;
      auto r = std::make_shared<ReferenceSolution>(
          ReferenceSolution{grid, j.at("e0").get<double>(), j.at("e1").get<double>(),
                            j.at("ground").get<std::vector<double>>()});
      if (r->ground.size() != grid.size()) return nullptr;
      return r;
    } catch (const nlohmann::json::exception&) {
      return nullptr;
    }
  }

  void store(const std::string& key, const std::string& stem, const ReferenceSolution& r) const {
    if (directory.empty()) return;
    std::error_code ec;
    std::filesystem::create_directories(directory, ec);
    const auto path = file_for(key, stem);
    const auto tmp = path.string() + ".tmp";
    {
      std::ofstream out(tmp);
      if (!out) return;
      nlohmann::json j{{"key", key}, {"e0", r.e0}, {"e1", r.e1}, {"ground", r.ground}};
      out << j.dump();
    }
    std::filesystem::rename(tmp, path, ec);
  }

  std::shared_ptr<const ReferenceSolution> lookup(const std::string& key, const std::string& stem,
                                                  const Grid& grid,
                                                  const std::function<ReferenceSolution()>& solve) {
    {
      std::lock_guard lock(mutex);
      if (auto it = entries.find(key); it != entries.end()) return it->second;
    }
    auto r = load(key, stem, grid);
    if (!r) {
      r = std::make_shared<const ReferenceSolution>(solve());
      store(key, stem, *r);
    }
    std::lock_guard lock(mutex);
    return entries.emplace(key, r).first->second;
  }
};

ReferenceCache::ReferenceCache(std::filesystem::path directory) : impl_(std::make_unique<Impl>()) {
  impl_->directory = std::move(directory);
}

ReferenceCache::~ReferenceCache() = default;

ReferenceCache& ReferenceCache::global() {
  static ReferenceCache cache;
  return cache;
}

std::shared_ptr<const ReferenceSolution> ReferenceCache::get(const Problem& problem, int num_qubits) {
  return get(problem, problem.grid(num_qubits));
}

std::shared_ptr<const ReferenceSolution> ReferenceCache::get(const Problem& problem, const Grid& grid) {
  const std::string key = cache_key(problem, grid);
  const std::string stem = problem.name() + "_n" + std::to_string(grid.num_qubits());
  return impl_->lookup(key, stem, grid,
                       [&] { return reference_solve(build_hamiltonian(problem, grid)); });
}

std::shared_ptr<const ReferenceSolution> ReferenceCache::fine(const Problem& problem, int num_qubits,
                                                              int target_qubits, int solve_qubits) {
  if (target_qubits < num_qubits || target_qubits > kMaxQubits) {
    throw std::invalid_argument("fine reference target out of range");
  }
  if (solve_qubits < 1 || solve_qubits > kMaxReferenceQubits) {
    throw std::invalid_argument("fine reference solve size out of range");
  }
  const Grid target = problem.grid(num_qubits).refined(target_qubits - num_qubits);
  const int solve_n = std::min(solve_qubits, target_qubits);
  const Grid solve_grid(target.a(), target.b(), solve_n, Centering::kLeft);
  const std::string key = cache_key(problem, target) + "|solve" + std::to_string(solve_n);
  const std::string stem = problem.name() + "_fine_n" + std::to_string(num_qubits);
  return impl_->lookup(key, stem, target, [&] {
    ReferenceSolution coarse = *get(problem, solve_grid);
    const Amplitudes samples(coarse.ground.begin(), coarse.ground.end());
    const Amplitudes up = interpolate_classical(samples, target_qubits - solve_n);
    ReferenceSolution r{target, coarse.e0, coarse.e1, std::vector<double>(up.size())};
    for (std::size_t i = 0; i < up.size(); ++i) r.ground[i] = up[i].real();
    fix_sign(r.ground);
    return r;
  });
}

}  // namespace qpde
