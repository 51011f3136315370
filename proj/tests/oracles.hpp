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

// Brute-force reference implementations used only by the tests. They share
// no code with the library.

#pragma once

#include <cmath>
#include <complex>
#include <numbers>
#include <random>
#include <vector>

namespace oracle {

using C = std::complex<double>;
using Vec = std::vector<C>;

// Direct O(N^2) DFT, x_r -> (1/sqrt N) sum_s exp(sign 2 pi i r s / N) x_s.
inline Vec dft(const Vec& x, int sign) {
  const std::size_t n = x.size();
  Vec out(n);
  for (std::size_t r = 0; r < n; ++r) {
    C acc{};
    for (std::size_t s = 0; s < n; ++s) {
      const double ang = sign * 2 * std::numbers::pi * static_cast<double>(r * s % n) / n;
      acc += std::polar(1.0, ang) * x[s];
    }
    out[r] = acc / std::sqrt(static_cast<double>(n));
  }
  return out;
}

// Signed integer frequency of register index s on N points.
inline double frequency(std::size_t s, std::size_t n) {
  return s < n / 2 ? static_cast<double>(s) : static_cast<double>(s) - static_cast<double>(n);
}

// Evaluates the band-limited interpolant of samples y_s on x_s = s (period N)
// at fractional index t. Momentum amplitudes come from the +i transform and
// index k >= N/2 carries the negative frequency k - N, as in the register.
inline C interpolant(const Vec& y, double t) {
  const std::size_t n = y.size();
  const Vec c = dft(y, +1);
  C acc{};
  for (std::size_t k = 0; k < n; ++k) {
    acc += c[k] * std::polar(1.0, -2 * std::numbers::pi * frequency(k, n) * t / n);
  }
  return acc / std::sqrt(static_cast<double>(n));
}

inline Vec random_real_state(std::size_t n, std::mt19937_64& rng) {
  std::normal_distribution<double> g;
  Vec v(n);
  double norm = 0;
  for (auto& a : v) {
    a = g(rng);
    norm += std::norm(a);
  }
  for (auto& a : v) a /= std::sqrt(norm);
  return v;
}

// Kronecker-free single-qubit application with qubit 0 the most significant.
inline void apply_1q(Vec& psi, int n, int q, const C m[2][2]) {
  const std::size_t mask = std::size_t{1} << (n - 1 - q);
  for (std::size_t i = 0; i < psi.size(); ++i) {
    if (i & mask) continue;
    const C a = psi[i], b = psi[i | mask];
    psi[i] = m[0][0] * a + m[0][1] * b;
    psi[i | mask] = m[1][0] * a + m[1][1] * b;
  }
}

inline void apply_ry(Vec& psi, int n, int q, double theta) {
  const double c = std::cos(theta / 2), s = std::sin(theta / 2);
  const C m[2][2] = {{c, -s}, {s, c}};
  apply_1q(psi, n, q, m);
}

inline void apply_cnot(Vec& psi, int n, int control, int target) {
  const std::size_t cm = std::size_t{1} << (n - 1 - control);
  const std::size_t tm = std::size_t{1} << (n - 1 - target);
  for (std::size_t i = 0; i < psi.size(); ++i) {
    if ((i & cm) && !(i & tm)) std::swap(psi[i], psi[i | tm]);
  }
}

}  // namespace oracle
