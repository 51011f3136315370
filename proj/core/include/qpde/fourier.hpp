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

#include <functional>
#include <span>
#include <vector>

#include "qpde/qsim.hpp"

namespace qpde {

enum class Centering {
  kLeft,       ///< x_s = a + s dx
  kSymmetric,  ///< x_s = a + (s + 1/2) dx; with a = -L/2 the grid is mirror symmetric
};

/// Uniform periodic grid of 2^n points on [a, b).
class Grid {
 public:
  Grid(double a, double b, int num_qubits, Centering centering);

  /// [-length/2, length/2) with half-cell offsets, mirror symmetric about 0.
  static Grid symmetric(double length, int num_qubits);

  double a() const { return a_; }
  double b() const { return b_; }
  int num_qubits() const { return n_; }
  Centering centering() const { return centering_; }
  std::size_t size() const { return std::size_t{1} << n_; }
  double length() const { return b_ - a_; }
  double dx() const { return length() / static_cast<double>(size()); }

  double point(std::size_t s) const;
  std::vector<double> points() const;

  /// The 2^(n+m) points produced by Fourier interpolation with m extra
  /// qubits: same first point and period, spacing dx / 2^m.
  Grid refined(int m) const;

 private:
  double a_;
  double b_;
  int n_;
  Centering centering_;
};

/// Conjugate momenta in register order: index s >= 2^(n-1) carries the
/// negative frequency (s - 2^n) dp.
class MomentumGrid {
 public:
  explicit MomentumGrid(const Grid& grid);

  double dp() const { return dp_; }
  double length() const { return dp_ * static_cast<double>(size_); }
  std::size_t size() const { return size_; }
  double momentum(std::size_t s) const;
  std::vector<double> momenta() const;

 private:
  std::size_t size_;
  double dp_;
};

using RealFunction = std::function<double(double)>;
using ComplexFunction = std::function<Complex(double)>;

/// amp_s = f(x_s) / sqrt(sum |f(x_s)|^2). Throws if all samples vanish or a
/// sample is not finite.
QuantumState encode_function(const ComplexFunction& f, const Grid& grid);
QuantumState encode_function(const RealFunction& f, const Grid& grid);

/// Product-register encoding of a d-dimensional function. Dimension 0 sits
/// in the most significant qubits.
QuantumState encode_function(const std::function<Complex(std::span<const double>)>& f,
                             std::span<const Grid> grids);

/// Smallest n with 2^n >= Lx * Lp / (2 pi).
int min_qubits(double length_x, double length_p);

/// Position-space interpolation circuit on n + m qubits. Qubits 0..m-1 are
/// the ancillas (most significant) and must start in |0>; the input state
/// occupies qubits m..m+n-1. Realizes QFT^-1_{n+m} U_sym (1_m (x) QFT_n),
/// where U_sym copies the input MSB onto every ancilla so that negative
/// frequencies land at the top of the enlarged momentum register.
Circuit interpolate_position_circuit(int n, int m);

/// |0>^m (x) |f> embedded in n + m qubits (ancillas most significant).
QuantumState pad_with_ancillas(const QuantumState& state, int m);

/// QFT_{n+m}(|0>^m (x) |f>), simulated through the gate-level QFT.
QuantumState interpolate_momentum(const QuantumState& state, int m);

/// Trigonometric interpolation of 2^n samples onto 2^(n+m) points,
/// unnormalized: the output reproduces the input at every 2^m-th index.
/// Frequencies follow the register ordering (the Nyquist bin is negative).
Amplitudes trig_interpolate(std::span<const Complex> samples, int m);

/// Classical zero-padded FFT interpolation, renormalized to unit 2-norm.
Amplitudes interpolate_classical(std::span<const Complex> samples, int m);

/// Adjoint of the interpolation isometry (2^(n+m) -> 2^n). For a unit
/// vector g, |<g|A f>|^2 = |<A^dagger g|f>|^2.
Amplitudes interpolation_adjoint(std::span<const Complex> fine, int m);

/// Evaluates the band-limited interpolant of a register state at x. The
/// phases are referenced to the grid's first point so that the result
/// reproduces the amplitudes exactly at grid points, and x outside [a, b)
/// is evaluated on the periodic extension.
Complex reconstruct_continuous(const QuantumState& state, const Grid& grid, double x);

}  // namespace qpde
