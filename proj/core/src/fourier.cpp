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

#include "qpde/fourier.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "fft.hpp"

namespace qpde {

namespace {

int log2_exact(std::size_t n) {
  if (n == 0 || (n & (n - 1)) != 0) throw std::invalid_argument("length must be a power of two");
  int k = 0;
  while ((std::size_t{1} << k) < n) ++k;
  return k;
}

void check_extra_qubits(int n, int m) {
  if (m < 0) throw std::invalid_argument("extra qubit count must be non-negative");
  if (n + m > kMaxQubits) throw std::invalid_argument("interpolated register exceeds kMaxQubits");
}

QuantumState normalized(Amplitudes amp) {
  double norm2 = 0.0;
  for (const auto& a : amp) {
    if (!std::isfinite(a.real()) || !std::isfinite(a.imag())) {
      throw std::invalid_argument("function is not finite at a grid point");
    }
    norm2 += std::norm(a);
  }
  if (!(norm2 > 0.0)) throw std::invalid_argument("function vanishes on the grid; cannot normalize");
  const double inv = 1.0 / std::sqrt(norm2);
  for (auto& a : amp) a *= inv;
  return QuantumState::from_amplitudes(std::move(amp));
}

}  // namespace

Grid::Grid(double a, double b, int num_qubits, Centering centering)
    : a_(a), b_(b), n_(num_qubits), centering_(centering) {
  if (!(b > a) || !std::isfinite(a) || !std::isfinite(b)) {
    throw std::invalid_argument("grid needs finite a < b");
  }
  if (num_qubits < 0 || num_qubits > kMaxQubits) {
    throw std::invalid_argument("grid qubit count out of range");
  }
}

Grid Grid::symmetric(double length, int num_qubits) {
  return Grid(-length / 2, length / 2, num_qubits, Centering::kSymmetric);
}

double Grid::point(std::size_t s) const {
  const double offset = centering_ == Centering::kSymmetric ? 0.5 : 0.0;
  return a_ + (static_cast<double>(s) + offset) * dx();
}

std::vector<double> Grid::points() const {
  std::vector<double> x(size());
  for (std::size_t s = 0; s < x.size(); ++s) x[s] = point(s);
  return x;
}

Grid Grid::refined(int m) const {
  check_extra_qubits(n_, m);
  const double x0 = point(0);
  return Grid(x0, x0 + length(), n_ + m, Centering::kLeft);
}

MomentumGrid::MomentumGrid(const Grid& grid)
    : size_(grid.size()), dp_(2 * std::numbers::pi / grid.length()) {}

double MomentumGrid::momentum(std::size_t s) const {
  const auto half = size_ / 2;
  const double k = s < half || size_ == 1 ? static_cast<double>(s)
                                          : static_cast<double>(s) - static_cast<double>(size_);
  return dp_ * k;
}

std::vector<double> MomentumGrid::momenta() const {
  std::vector<double> p(size_);
  for (std::size_t s = 0; s < size_; ++s) p[s] = momentum(s);
  return p;
}

QuantumState encode_function(const ComplexFunction& f, const Grid& grid) {
  if (grid.num_qubits() < 1) throw std::invalid_argument("encoding needs at least one qubit");
  Amplitudes amp(grid.size());
  for (std::size_t s = 0; s < amp.size(); ++s) amp[s] = f(grid.point(s));
  return normalized(std::move(amp));
}

QuantumState encode_function(const RealFunction& f, const Grid& grid) {
  return encode_function(ComplexFunction([&f](double x) { return Complex(f(x), 0.0); }), grid);
}

QuantumState encode_function(const std::function<Complex(std::span<const double>)>& f,
                             std::span<const Grid> grids) {
  if (grids.empty()) throw std::invalid_argument("need at least one grid");
  int total = 0;
  for (const auto& g : grids) total += g.num_qubits();
  if (total < 1 || total > kMaxQubits) throw std::invalid_argument("register size out of range");
  const std::size_t dim = std::size_t{1} << total;
  Amplitudes amp(dim);
  std::vector<double> x(grids.size());
  for (std::size_t index = 0; index < dim; ++index) {
    int shift = total;
    for (std::size_t d = 0; d < grids.size(); ++d) {
      shift -= grids[d].num_qubits();
      const std::size_t s = (index >> shift) & (grids[d].size() - 1);
      x[d] = grids[d].point(s);
    }
    amp[index] = f(x);
  }
  return normalized(std::move(amp));
}

int min_qubits(double length_x, double length_p) {
  if (!(length_x > 0.0) || !(length_p > 0.0)) {
    throw std::invalid_argument("domain lengths must be positive");
  }
  const double ratio = length_x * length_p / (2 * std::numbers::pi);
  if (ratio <= 1.0 + 1e-12) return 0;
  // Relative slack absorbs round-off when the product is an exact power of two.
  return static_cast<int>(std::ceil(std::log2(ratio) - 1e-9));
}

Circuit interpolate_position_circuit(int n, int m) {
  if (n < 1) throw std::invalid_argument("interpolation needs n >= 1");
  check_extra_qubits(n, m);
  const int total = n + m;
  Circuit c(total);
  c.append(qft_circuit(total, m, n));
  for (int a = 0; a < m; ++a) c.append(Gate::CNOT(m, a));
  c.append(inverse_qft_circuit(total, 0, total));
  return c;
}

QuantumState pad_with_ancillas(const QuantumState& state, int m) {
  check_extra_qubits(state.num_qubits(), m);
  Amplitudes amp(state.dim() << m, Complex{});
  std::copy(state.amplitudes().begin(), state.amplitudes().end(), amp.begin());
  return QuantumState::from_amplitudes(std::move(amp));
}

QuantumState interpolate_momentum(const QuantumState& state, int m) {
  const int total = state.num_qubits() + m;
  return run_circuit(qft_circuit(total), pad_with_ancillas(state, m));
}

Amplitudes trig_interpolate(std::span<const Complex> samples, int m) {
  const int n = log2_exact(samples.size());
  check_extra_qubits(n, m);
  const std::size_t small = samples.size();
  const std::size_t big = small << m;
  const Amplitudes spectrum = detail::unitary_dft(samples, +1);
  Amplitudes padded(big, Complex{});
  for (std::size_t s = 0; s < small; ++s) {
    const bool negative = small > 1 && s >= small / 2;
    padded[negative ? big - small + s : s] = spectrum[s];
  }
  Amplitudes out = detail::unitary_dft(padded, -1);
  const double scale = std::sqrt(static_cast<double>(std::size_t{1} << m));
  for (auto& v : out) v *= scale;
  return out;
}

Amplitudes interpolate_classical(std::span<const Complex> samples, int m) {
  Amplitudes out = trig_interpolate(samples, m);
  double norm2 = 0.0;
  for (const auto& v : out) norm2 += std::norm(v);
  if (norm2 > 0.0) {
    const double inv = 1.0 / std::sqrt(norm2);
    for (auto& v : out) v *= inv;
  }
  return out;
}

Amplitudes interpolation_adjoint(std::span<const Complex> fine, int m) {
  const int total = log2_exact(fine.size());
  if (m < 0 || m >= total) throw std::invalid_argument("invalid extra qubit count");
  const std::size_t big = fine.size();
  const std::size_t small = big >> m;
  const Amplitudes spectrum = detail::unitary_dft(fine, +1);
  Amplitudes picked(small);
  for (std::size_t s = 0; s < small; ++s) {
    const bool negative = small > 1 && s >= small / 2;
    picked[s] = spectrum[negative ? big - small + s : s];
  }
  return detail::unitary_dft(picked, -1);
}

Complex reconstruct_continuous(const QuantumState& state, const Grid& grid, double x) {
  if (grid.size() != state.dim()) throw std::invalid_argument("grid and state sizes differ");
  const Amplitudes spectrum = detail::unitary_dft(state.amplitudes(), +1);
  const MomentumGrid momenta(grid);
  const double shift = x - grid.point(0);
  Complex acc{};
  for (std::size_t s = 0; s < spectrum.size(); ++s) {
    acc += spectrum[s] * std::polar(1.0, -momenta.momentum(s) * shift);
  }
  return acc / std::sqrt(static_cast<double>(spectrum.size()));
}

}  // namespace qpde
