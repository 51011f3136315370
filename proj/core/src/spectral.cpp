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

#include "qpde/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

#include "fft.hpp"

namespace qpde {

namespace {

constexpr double kTwoPi = 2 * std::numbers::pi;

double unit_phase(double x) {
  double t = std::fmod(x / kTwoPi, 1.0);
  if (t < 0) t += 1.0;
  return t;
}

// Values of sum_k c_k exp(i k x_t) on an M-point grid, coefficients in FFT
// order. With `derivative` each bin is multiplied by i k first.
Amplitudes synthesize(const Amplitudes& coeffs, std::size_t m_points, bool derivative) {
  Amplitudes z = coeffs;
  if (derivative) {
    for (std::size_t i = 0; i < z.size(); ++i) {
      const double k = i < m_points / 2 ? static_cast<double>(i)
                                        : static_cast<double>(i) - static_cast<double>(m_points);
      z[i] *= Complex(0.0, k);
    }
  }
  Amplitudes g = detail::unitary_dft(z, +1);
  const double scale = std::sqrt(static_cast<double>(m_points));
  for (auto& v : g) v *= scale;
  return g;
}

struct Errors {
  double l2 = 0.0;
  double max = 0.0;
};

Errors compare(const std::vector<double>& exact, const Amplitudes& approx) {
  Errors e;
  double acc = 0.0;
  for (std::size_t t = 0; t < exact.size(); ++t) {
    const double d = std::abs(Complex(exact[t]) - approx[t]);
    acc += d * d;
    e.max = std::max(e.max, d);
  }
  e.l2 = std::sqrt(acc * kTwoPi / static_cast<double>(exact.size()));
  return e;
}

}  // namespace

SpectralTestFunction poisson_kernel(double r) {
  if (!(r > 0.0 && r < 1.0)) throw std::invalid_argument("poisson kernel needs 0 < r < 1");
  SpectralTestFunction t;
  t.name = "poisson_kernel";
  t.smoothness = Smoothness::kAnalytic;
  t.f = [r](double x) { return (1 - r * r) / (1 - 2 * r * std::cos(x) + r * r); };
  t.derivative = [r](double x) {
    const double d = 1 - 2 * r * std::cos(x) + r * r;
    return -(1 - r * r) * 2 * r * std::sin(x) / (d * d);
  };
  return t;
}

SpectralTestFunction exp_cos() {
  SpectralTestFunction t;
  t.name = "exp_cos";
  t.smoothness = Smoothness::kAnalytic;
  t.f = [](double x) { return std::exp(std::cos(x)); };
  t.derivative = [](double x) { return -std::sin(x) * std::exp(std::cos(x)); };
  return t;
}

SpectralTestFunction bernoulli_periodic(int m) {
  SpectralTestFunction t;
  t.name = "bernoulli_" + std::to_string(m + 1);
  t.smoothness = Smoothness::kFinite;
  t.order = m;
  switch (m) {
    case 1:
      t.f = [](double x) { const double u = unit_phase(x); return u * u - u + 1.0 / 6; };
      t.derivative = [](double x) { return (2 * unit_phase(x) - 1) / kTwoPi; };
      break;
    case 2:
      t.f = [](double x) {
        const double u = unit_phase(x);
        return u * u * u - 1.5 * u * u + 0.5 * u;
      };
      t.derivative = [](double x) {
        const double u = unit_phase(x);
        return (3 * u * u - 3 * u + 0.5) / kTwoPi;
      };
      break;
    case 3:
      t.f = [](double x) {
        const double u = unit_phase(x);
        return u * u * u * u - 2 * u * u * u + u * u - 1.0 / 30;
      };
      t.derivative = [](double x) {
        const double u = unit_phase(x);
        return (4 * u * u * u - 6 * u * u + 2 * u) / kTwoPi;
      };
      break;
    default:
      throw std::invalid_argument("bernoulli_periodic supports 1 <= m <= 3");
  }
  return t;
}

SpectralTestFunction unit_step() {
  SpectralTestFunction t;
  t.name = "unit_step";
  t.smoothness = Smoothness::kStep;
  t.f = [](double x) {
    const double u = unit_phase(x);
    if (u == 0.0 || u == 0.5) return 0.5;
    return u < 0.5 ? 1.0 : 0.0;
  };
  t.derivative = [](double) { return 0.0; };
  return t;
}

LineFit fit_line(std::span<const double> x, std::span<const double> y) {
  if (x.size() != y.size() || x.size() < 2) throw std::invalid_argument("fit_line needs >= 2 points");
  const double n = static_cast<double>(x.size());
  double sx = 0, sy = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sx += x[i];
    sy += y[i];
  }
  const double mx = sx / n, my = sy / n;
  double sxx = 0, sxy = 0, syy = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sxx += (x[i] - mx) * (x[i] - mx);
    sxy += (x[i] - mx) * (y[i] - my);
    syy += (y[i] - my) * (y[i] - my);
  }
  LineFit fit;
  fit.slope = sxy / sxx;
  fit.intercept = my - fit.slope * mx;
  fit.r_squared = syy > 0 ? (sxy * sxy) / (sxx * syy) : 1.0;
  return fit;
}

SpectralErrorReport spectral_error_report(const SpectralTestFunction& test,
                                          std::span<const int> n_list, int reference_qubits) {
  if (n_list.empty()) throw std::invalid_argument("empty qubit list");
  if (reference_qubits < 2 || reference_qubits > 20) {
    throw std::invalid_argument("reference grid size out of range");
  }
  const std::size_t m_points = std::size_t{1} << reference_qubits;
  std::vector<double> fine_f(m_points), fine_df(m_points);
  Amplitudes fine_samples(m_points);
  for (std::size_t t = 0; t < m_points; ++t) {
    const double x = kTwoPi * static_cast<double>(t) / static_cast<double>(m_points);
    fine_f[t] = test.f(x);
    fine_df[t] = test.derivative ? test.derivative(x) : 0.0;
    fine_samples[t] = fine_f[t];
  }
  const auto [lo, hi] = std::minmax_element(fine_f.begin(), fine_f.end());
  const double jump = *hi - *lo;

  // Quadrature coefficients, c_k = (1/M) sum_t f(x_t) exp(-i k x_t).
  Amplitudes fine_coeffs = detail::unitary_dft(fine_samples, -1);
  for (auto& c : fine_coeffs) c /= std::sqrt(static_cast<double>(m_points));

  SpectralErrorReport report;
  report.function_name = test.name;
  report.smoothness = test.smoothness;

  for (int n : n_list) {
    if (n < 1 || n >= reference_qubits) throw std::invalid_argument("n out of range for reference grid");
    const std::size_t pts = std::size_t{1} << n;
    Amplitudes samples(pts);
    for (std::size_t j = 0; j < pts; ++j) {
      samples[j] = test.f(kTwoPi * static_cast<double>(j) / static_cast<double>(pts));
    }
    Amplitudes coeffs = detail::unitary_dft(samples, -1);
    for (auto& c : coeffs) c /= std::sqrt(static_cast<double>(pts));

    // Interpolant coefficients on the reference grid with the Nyquist bin split
    // evenly between +-N/2, which keeps I_N f real for real data.
    Amplitudes padded(m_points, Complex{});
    for (std::size_t k = 0; k < pts / 2; ++k) padded[k] = coeffs[k];
    for (std::size_t k = pts / 2 + 1; k < pts; ++k) padded[m_points - pts + k] = coeffs[k];
    padded[pts / 2] += coeffs[pts / 2] / 2.0;
    padded[m_points - pts / 2] += coeffs[pts / 2] / 2.0;

    Amplitudes truncated(m_points, Complex{});
    for (std::size_t k = 0; k <= pts / 2; ++k) truncated[k] = fine_coeffs[k];
    for (std::size_t k = m_points - pts / 2; k < m_points; ++k) truncated[k] = fine_coeffs[k];

    const Amplitudes interp = synthesize(padded, m_points, false);
    const Amplitudes interp_d = synthesize(padded, m_points, true);
    const Amplitudes trunc = synthesize(truncated, m_points, false);

    SpectralErrorRow row;
    row.num_qubits = n;
    row.points = pts;
    const Errors ei = compare(fine_f, interp);
    const Errors ed = compare(fine_df, interp_d);
    row.interpolation_l2 = ei.l2;
    row.interpolation_max = ei.max;
    row.derivative_l2 = ed.l2;
    row.derivative_max = ed.max;
    if (jump > 0) {
      double max_trunc = -INFINITY, max_interp = -INFINITY;
      for (std::size_t t = 0; t < m_points; ++t) {
        max_trunc = std::max(max_trunc, trunc[t].real());
        max_interp = std::max(max_interp, interp[t].real());
      }
      row.truncation_overshoot = (max_trunc - *hi) / jump;
      row.interpolation_overshoot = (max_interp - *hi) / jump;
    }
    report.rows.push_back(row);
  }

  if (report.rows.size() >= 2) {
    std::vector<double> big_n, log_n, log_l2, log_max, log_dmax;
    for (const auto& r : report.rows) {
      const double floor = 1e-300;
      big_n.push_back(static_cast<double>(r.points));
      log_n.push_back(std::log(static_cast<double>(r.points)));
      log_l2.push_back(std::log(std::max(r.interpolation_l2, floor)));
      log_max.push_back(std::log(std::max(r.interpolation_max, floor)));
      log_dmax.push_back(std::log(std::max(r.derivative_max, floor)));
    }
    report.exponential_fit = fit_line(big_n, log_l2);
    report.algebraic_fit = fit_line(log_n, log_max);
    report.derivative_fit = fit_line(log_n, log_dmax);
  }
  return report;
}

}  // namespace qpde
