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

#include "qpde/validate.hpp"

#include <chrono>
#include <cmath>
#include <functional>
#include <numbers>
#include <random>
#include <sstream>
#include <stdexcept>

#include "qpde/ansatz.hpp"
#include "qpde/fourier.hpp"
#include "qpde/noise.hpp"
#include "qpde/optimize.hpp"
#include "qpde/problems.hpp"
#include "qpde/spectral.hpp"

namespace qpde {

namespace {

constexpr double kPi = std::numbers::pi;

std::string sci(double v) {
  std::ostringstream os;
  os.precision(3);
  os << std::scientific << v;
  return os.str();
}

Circuit qft_with_fault(int total, int first, int count, Fault fault) {
  Circuit c = qft_circuit(total, first, count);
  if (fault != Fault::kQftSign) return c;
  Circuit bad(total);
  for (Gate g : c.gates()) {
    if (g.kind == GateKind::kCPhase) g.angle = -g.angle;
    bad.append(g);
  }
  return bad;
}

Circuit interpolation_with_fault(int n, int m, Fault fault) {
  if (fault != Fault::kQftSign) return interpolate_position_circuit(n, m);
  const int total = n + m;
  Circuit c(total);
  c.append(qft_with_fault(total, m, n, fault));
  for (int a = 0; a < m; ++a) c.append(Gate::CNOT(m, a));
  c.append(qft_with_fault(total, 0, total, fault).adjoint());
  return c;
}

std::vector<double> momenta_with_fault(const Grid& grid, Fault fault) {
  const MomentumGrid mg(grid);
  std::vector<double> p = mg.momenta();
  if (fault == Fault::kMomentumOrder) {
    for (std::size_t s = 0; s < p.size(); ++s) p[s] = mg.dp() * static_cast<double>(s);
  }
  return p;
}

// Band-limited interpolant with an explicit momentum table.
Complex reconstruct_with(const QuantumState& state, const Grid& grid, const std::vector<double>& momenta,
                         double x) {
  const QuantumState spectrum = run_circuit(qft_circuit(state.num_qubits()), state);
  Complex acc{};
  for (std::size_t s = 0; s < spectrum.dim(); ++s) {
    acc += spectrum[s] * std::polar(1.0, -momenta[s] * (x - grid.point(0)));
  }
  return acc / std::sqrt(static_cast<double>(spectrum.dim()));
}

QuantumState random_real_state(int n, std::mt19937_64& rng) {
  std::normal_distribution<double> g;
  Amplitudes a(std::size_t{1} << n);
  double norm2 = 0.0;
  for (auto& v : a) {
    v = g(rng);
    norm2 += std::norm(v);
  }
  for (auto& v : a) v /= std::sqrt(norm2);
  return QuantumState::from_amplitudes(std::move(a));
}

CheckResult check_qft(Fault fault) {
  double worst = 0.0;
  for (int n = 1; n <= 6; ++n) {
    const Eigen::MatrixXcd u = circuit_unitary(qft_with_fault(n, 0, n, fault));
    const auto dim = static_cast<Eigen::Index>(std::size_t{1} << n);
    for (Eigen::Index s = 0; s < dim; ++s) {
      for (Eigen::Index r = 0; r < dim; ++r) {
        const Complex dft = std::polar(1.0 / std::sqrt(static_cast<double>(dim)),
                                       2 * kPi * static_cast<double>(r * s) / static_cast<double>(dim));
        worst = std::max(worst, std::abs(u(s, r) - dft));
      }
    }
  }
  return {"qft_matches_dft", worst < 1e-10, "max entry error " + sci(worst)};
}

CheckResult check_interpolation(Fault fault, std::mt19937_64& rng) {
  double worst = 0.0;
  for (int n = 1; n <= 5; ++n) {
    for (int m = 0; m <= 7; ++m) {
      const QuantumState f = random_real_state(n, rng);
      const QuantumState out = run_circuit(interpolation_with_fault(n, m, fault), pad_with_ancillas(f, m));
      const Amplitudes ref = interpolate_classical(f.amplitudes(), m);
      for (std::size_t i = 0; i < ref.size(); ++i) worst = std::max(worst, std::abs(out[i] - ref[i]));
    }
  }
  return {"interpolation_circuit_equals_fft", worst < 1e-10, "max amplitude error " + sci(worst)};
}

CheckResult check_momentum_ordering(Fault fault) {
  double worst_leak = 0.0;
  for (int n = 2; n <= 5; ++n) {
    const Grid grid = Grid::symmetric(7.0, n);
    const auto p = momenta_with_fault(grid, fault);
    for (std::size_t k = 0; k < grid.size(); ++k) {
      const auto state = encode_function(ComplexFunction([&](double x) { return std::polar(1.0, -p[k] * x); }), grid);
      const auto probs = run_circuit(qft_circuit(n), state).probabilities();
      worst_leak = std::max(worst_leak, 1.0 - probs[k]);
    }
  }
  return {"momentum_ordering", worst_leak < 1e-10, "max leaked probability " + sci(worst_leak)};
}

CheckResult check_nyquist(Fault fault, std::mt19937_64& rng) {
  double worst = 0.0;
  std::normal_distribution<double> g;
  for (int n = 2; n <= 5; ++n) {
    const Grid grid = Grid::symmetric(5.0, n);
    const MomentumGrid true_p(grid);
    std::vector<Complex> c(grid.size());
    for (auto& v : c) v = Complex(g(rng), g(rng));
    const ComplexFunction f = [&](double x) {
      Complex acc{};
      for (std::size_t s = 0; s < c.size(); ++s) acc += c[s] * std::polar(1.0, -true_p.momentum(s) * x);
      return acc;
    };
    const QuantumState state = encode_function(f, grid);
    double norm2 = 0.0;
    for (double x : grid.points()) norm2 += std::norm(f(x));
    const double scale = 1.0 / std::sqrt(norm2);
    const auto momenta = momenta_with_fault(grid, fault);
    std::uniform_real_distribution<double> ux(grid.a(), grid.b());
    for (int t = 0; t < 20; ++t) {
      const double x = ux(rng);
      const Complex got = reconstruct_with(state, grid, momenta, x);
      worst = std::max(worst, std::abs(got - f(x) * scale));
      if (fault == Fault::kNone) {
        worst = std::max(worst, std::abs(reconstruct_continuous(state, grid, x) - f(x) * scale));
      }
    }
  }
  return {"nyquist_exactness", worst < 1e-12, "max reconstruction error " + sci(worst)};
}

CheckResult check_symmetry(std::mt19937_64& rng) {
  double worst = 0.0, worst_imag = 0.0;
  std::uniform_real_distribution<double> u(-kPi, kPi);
  for (int n = 2; n <= 6; ++n) {
    for (auto family : {AnsatzFamily::kZGR, AnsatzFamily::kRY}) {
      for (int parity = 0; parity <= 1; ++parity) {
        AnsatzSpec spec{family, n, 2, true, parity};
        std::vector<double> theta(parameter_count(spec));
        for (auto& t : theta) t = u(rng);
        const auto state = run_circuit(build_ansatz(spec, theta), QuantumState(n));
        const std::size_t half = state.dim() / 2;
        const double sign = parity ? -1.0 : 1.0;
        for (std::size_t s = 0; s < half; ++s) {
          const std::size_t mirrored = half - 1 - s;  // 0 followed by the complement of s
          worst = std::max(worst, std::abs(state[half + s] - sign * state[mirrored]));
        }
        for (const auto& a : state.amplitudes()) worst_imag = std::max(worst_imag, std::abs(a.imag()));
      }
    }
  }
  return {"symmetrized_parity", worst < 1e-12 && worst_imag < 1e-14,
          "parity error " + sci(worst) + ", imaginary part " + sci(worst_imag)};
}

CheckResult check_plancherel(std::mt19937_64& rng) {
  double worst = 0.0;
  for (const auto& problem : {Problem::harmonic_oscillator(), Problem::transmon(), Problem::flux_qubit()}) {
    for (int n = 2; n <= 6; ++n) {
      const Hamiltonian h = build_hamiltonian(problem, n);
      const Eigen::MatrixXd m = hamiltonian_matrix(h);
      const QuantumState psi = random_real_state(n, rng);
      Eigen::VectorXd v(static_cast<Eigen::Index>(psi.dim()));
      for (std::size_t i = 0; i < psi.dim(); ++i) v(static_cast<Eigen::Index>(i)) = psi[i].real();
      const double dense = v.dot(m * v);
      worst = std::max(worst, std::abs(dense - exact_energy(psi, h).value) / (1.0 + std::abs(dense)));
    }
  }
  return {"plancherel_consistency", worst < 1e-10, "max relative difference " + sci(worst)};
}

CheckResult check_gradients(std::mt19937_64& rng) {
  const Problem problems[] = {Problem::harmonic_oscillator(), Problem::transmon(), Problem::flux_qubit()};
  std::uniform_int_distribution<int> pick_n(2, 5), pick_family(0, 2), pick_problem(0, 2);
  std::uniform_real_distribution<double> u(-kPi, kPi);
  double worst = 0.0;
  for (int draw = 0; draw < 50; ++draw) {
    const int n = pick_n(rng);
    const int f = pick_family(rng);
    AnsatzSpec spec{f == 0 ? AnsatzFamily::kZGR : AnsatzFamily::kRY, n, f, true, 0};
    const Hamiltonian h = build_hamiltonian(problems[pick_problem(rng)], n);
    const ExactEnergyFunction exact = [&](std::span<const double> t) {
      return exact_energy(run_circuit(build_ansatz(spec, t), QuantumState(n)), h).value;
    };
    std::vector<double> theta(parameter_count(spec));
    for (auto& t : theta) t = u(rng);
    const auto ps = parameter_shift_gradient([&](std::span<const double> t, std::uint64_t) { return exact(t); },
                                             theta, 0);
    const auto fd = finite_difference_gradient(exact, theta, 1e-5);
    for (std::size_t k = 0; k < ps.size(); ++k) worst = std::max(worst, std::abs(ps[k] - fd[k]));
  }
  return {"parameter_shift_vs_finite_difference", worst < 1e-6, "max component difference " + sci(worst)};
}

CheckResult check_channels(std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u(-kPi, kPi);
  AnsatzSpec spec{AnsatzFamily::kRY, 4, 1, true, 0};
  std::vector<double> theta(parameter_count(spec));
  for (auto& t : theta) t = u(rng);
  Circuit c = build_ansatz(spec, theta);
  c.append(qft_circuit(4));
  const DensityState noisy = run_noisy(c, NoiseModel::santiago_like());
  const double trace_err = std::abs(noisy.trace() - 1.0);
  const double min_eig = noisy.min_eigenvalue();
  const double herm = (noisy.matrix() - noisy.matrix().adjoint()).cwiseAbs().maxCoeff();
  const DensityState ideal = run_noisy(c, NoiseModel::ideal());
  const DensityState pure = DensityState::from_pure(run_circuit(c, QuantumState(4)));
  const double reduction = (ideal.matrix() - pure.matrix()).cwiseAbs().maxCoeff();
  const bool ok = trace_err < 1e-10 && min_eig > -1e-8 && herm < 1e-12 && reduction < 1e-10;
  return {"noise_channel_sanity", ok,
          "trace error " + sci(trace_err) + ", min eigenvalue " + sci(min_eig) + ", noiseless reduction " +
              sci(reduction)};
}

CheckResult check_spectral_exponential() {
  const std::vector<int> ns{2, 3, 4, 5, 6};
  const auto report = spectral_error_report(poisson_kernel(0.6), ns);
  const auto& fit = report.exponential_fit;
  return {"spectral_exponential_decay", fit.slope < 0 && fit.r_squared > 0.99,
          "slope " + sci(fit.slope) + ", R^2 " + std::to_string(fit.r_squared)};
}

CheckResult check_spectral_algebraic() {
  const std::vector<int> ns{4, 5, 6, 7, 8, 9};
  bool ok = true;
  std::string detail;
  for (int m = 1; m <= 3; ++m) {
    const auto report = spectral_error_report(bernoulli_periodic(m), ns);
    const double order = -report.algebraic_fit.slope;
    const double dorder = -report.derivative_fit.slope;
    ok = ok && std::abs(order - m) <= 0.5 && std::abs(dorder - (m - 1)) <= 0.5;
    detail += "m=" + std::to_string(m) + ": order " + std::to_string(order) + ", derivative order " +
              std::to_string(dorder) + "; ";
  }
  return {"spectral_algebraic_order", ok, detail};
}

CheckResult check_gibbs() {
  const std::vector<int> ns{6, 8, 10};
  const auto report = spectral_error_report(unit_step(), ns);
  const double overshoot = report.rows.back().truncation_overshoot;
  return {"gibbs_overshoot", std::abs(overshoot - 0.0895) <= 0.005,
          "overshoot at N=1024: " + std::to_string(overshoot)};
}

}  // namespace

Fault parse_fault(const std::string& name) {
  if (name.empty() || name == "none") return Fault::kNone;
  if (name == "qft-sign" || name == "qft_sign") return Fault::kQftSign;
  if (name == "momentum-order" || name == "momentum_order") return Fault::kMomentumOrder;
  throw std::invalid_argument("unknown fault '" + name + "'");
}

std::vector<CheckResult> run_validation(Fault fault, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::vector<std::function<CheckResult()>> checks{
      [&] { return check_qft(fault); },
      [&] { return check_interpolation(fault, rng); },
      [&] { return check_momentum_ordering(fault); },
      [&] { return check_nyquist(fault, rng); },
      [&] { return check_symmetry(rng); },
      [&] { return check_plancherel(rng); },
      [&] { return check_gradients(rng); },
      [&] { return check_channels(rng); },
      check_spectral_exponential,
      check_spectral_algebraic,
      check_gibbs,
  };
  std::vector<CheckResult> results;
  for (const auto& check : checks) {
    const auto start = std::chrono::steady_clock::now();
    CheckResult r;
    try {
      r = check();
    } catch (const std::exception& e) {
      r = {"exception", false, e.what()};
    }
    r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    results.push_back(std::move(r));
  }
  return results;
}

}  // namespace qpde
