#pragma once

#include <cmath>
#include <numbers>
#include <string>

#include "hosc/basis.hpp"
#include "hosc/core.hpp"

namespace hosc {

struct FirstMoments {
  double x_mean = 0.0;
  double p_mean = 0.0;
};

/// Central second moments: position and momentum variances and the
/// symmetrized covariance <(xp + px)/2> - <x><p>.
struct SecondMoments {
  double dx2 = 0.0;
  double dp2 = 0.0;
  double dxp = 0.0;
};

/// Invariants of second-moment motion. eps^2 = amp^2 + K^2, amp >= 0, and
/// t0 in (-T/4, T/4] (0 when amp vanishes).
struct MomentConstants {
  double eps = 0.0;
  double amp = 0.0;
  double K = 0.0;
  double t0 = 0.0;
};

struct MomentOptions {
  /// Allowed deviation of sum |c_n|^2 from 1.
  double norm_tolerance = 1e-6;
  /// Allowed occupancy of the two highest modes.
  double tail_tolerance = 1e-10;

  /// Loose limits for states with kinks, whose spectra decay algebraically.
  static MomentOptions kink_state() { return MomentOptions{1e-4, 1e-4}; }
};

namespace detail {

/// Ladder-operator expectation values <a>, <a^2>, <a^dagger a> of a state
/// given by (possibly truncated) coefficients; all divided by sum |c_n|^2.
struct LadderExpectations {
  Complex a;
  Complex a2;
  double number = 0.0;
};

inline LadderExpectations ladder_expectations(const SpectralCoeffs& coeffs, const MomentOptions& options,
                                              bool check_tail) {
  const double n2 = coeffs.norm_squared();
  if (!(std::abs(n2 - 1.0) <= options.norm_tolerance)) {
    fail(ErrorCode::normalization_error, "sum |c_n|^2 = " + std::to_string(n2) + " is not 1");
  }
  const std::size_t size = coeffs.c.size();
  if (check_tail && size >= 2) {
    const double tail = std::norm(coeffs.c[size - 1]) + std::norm(coeffs.c[size - 2]);
    if (tail > options.tail_tolerance) {
      fail(ErrorCode::truncation_error,
           "top-mode occupancy " + std::to_string(tail) + " exceeds the tail tolerance");
    }
  }
  LadderExpectations e{};
  for (std::size_t n = 0; n < size; ++n) {
    const double nd = static_cast<double>(n);
    e.number += nd * std::norm(coeffs.c[n]);
    if (n + 1 < size) e.a += std::sqrt(nd + 1.0) * std::conj(coeffs.c[n]) * coeffs.c[n + 1];
    if (n + 2 < size) e.a2 += std::sqrt((nd + 1.0) * (nd + 2.0)) * std::conj(coeffs.c[n]) * coeffs.c[n + 2];
  }
  e.a /= n2;
  e.a2 /= n2;
  e.number /= n2;
  return e;
}

}  // namespace detail

/// <x> = alpha sqrt2 Re<a>, <p> = (hbar/alpha) sqrt2 Im<a>.
inline FirstMoments first_moments(const SpectralCoeffs& coeffs, MomentOptions options = {}) {
  const auto e = detail::ladder_expectations(coeffs, options, false);
  const double alpha = coeffs.params.alpha();
  return {alpha * std::numbers::sqrt2 * e.a.real(), coeffs.params.momentum_unit() * std::numbers::sqrt2 * e.a.imag()};
}

/// Second moments from ladder algebra:
///   <x^2> = (alpha^2/2)(2 Re<a^2> + 2<N> + 1)
///   <p^2> = (hbar^2/2alpha^2)(-2 Re<a^2> + 2<N> + 1)
///   <(xp + px)/2> = hbar Im<a^2>
inline SecondMoments second_moments(const SpectralCoeffs& coeffs, MomentOptions options = {}) {
  const auto e = detail::ladder_expectations(coeffs, options, true);
  const double alpha = coeffs.params.alpha();
  const double hbar = coeffs.params.hbar();
  const double pu = coeffs.params.momentum_unit();
  const double x_mean = alpha * std::numbers::sqrt2 * e.a.real();
  const double p_mean = pu * std::numbers::sqrt2 * e.a.imag();
  const double x2 = 0.5 * alpha * alpha * (2.0 * e.a2.real() + 2.0 * e.number + 1.0);
  const double p2 = 0.5 * pu * pu * (-2.0 * e.a2.real() + 2.0 * e.number + 1.0);
  const double sym = hbar * e.a2.imag();
  return {x2 - x_mean * x_mean, p2 - p_mean * p_mean, sym - x_mean * p_mean};
}

/// <H> = sum |c_n|^2 hbar omega (n + 1/2), divided by the norm.
inline double spectral_energy(const SpectralCoeffs& coeffs) {
  double e = 0.0;
  for (std::size_t n = 0; n < coeffs.c.size(); ++n) e += std::norm(coeffs.c[n]) * (static_cast<double>(n) + 0.5);
  return coeffs.params.energy_quantum() * e / coeffs.norm_squared();
}

/// Classical motion of the centroid.
inline FirstMoments centroid_trajectory(const FirstMoments& init, double t, const OscillatorParams& params) {
  const double wt = params.omega() * t;
  const double m_omega = params.mass() * params.omega();
  const double c = std::cos(wt);
  const double s = std::sin(wt);
  return {init.x_mean * c + init.p_mean / m_omega * s, init.p_mean * c - m_omega * init.x_mean * s};
}

/// eps from the quantal energy, K from the covariance determinant, amp and t0
/// from the t = 0 phase equations
///   amp sin 2wt0 = -Dxp/hbar,  amp cos 2wt0 = (alpha^2 Dp^2/hbar^2 - Dx^2/alpha^2)/2.
inline MomentConstants moment_constants(const SecondMoments& m2, const OscillatorParams& params) {
  const double alpha = params.alpha();
  const double hbar = params.hbar();
  const double u = m2.dx2 / (alpha * alpha);
  const double v = m2.dp2 * alpha * alpha / (hbar * hbar);
  const double w = m2.dxp / hbar;
  if (!(u > 0.0) || !(v > 0.0) || !std::isfinite(u) || !std::isfinite(v) || !std::isfinite(w)) {
    fail(ErrorCode::moment_error, "variances must be positive and finite");
  }
  const double k2 = u * v - w * w;
  if (k2 < 0.25 - 1e-10) {
    fail(ErrorCode::uncertainty_violation, "K^2 = " + std::to_string(k2) + " is below 1/4");
  }
  MomentConstants c;
  c.eps = 0.5 * (u + v);
  const double half_diff = 0.5 * (v - u);
  c.amp = std::hypot(half_diff, w);
  c.K = std::sqrt(std::max(k2, 0.0));
  if (c.amp > 1e-12 * c.eps) {
    double phase = std::atan2(-w, half_diff);  // in [-pi, pi]
    if (phase <= -std::numbers::pi) phase += 2.0 * std::numbers::pi;
    if (phase == 0.0) phase = 0.0;  // drop the sign of -0
    c.t0 = 0.5 * phase / params.omega();
  }
  return c;
}

/// Closed-form second moments at time t:
///   Dxp = hbar A sin 2w(t - t0)
///   Dx^2 = alpha^2 [eps - A cos 2w(t - t0)]
///   Dp^2 = (hbar/alpha)^2 [eps + A cos 2w(t - t0)]
inline SecondMoments second_moments_at(const MomentConstants& c, double t, const OscillatorParams& params) {
  const double phase = 2.0 * params.omega() * (t - c.t0);
  const double alpha = params.alpha();
  const double pu = params.momentum_unit();
  return {alpha * alpha * (c.eps - c.amp * std::cos(phase)), pu * pu * (c.eps + c.amp * std::cos(phase)),
          params.hbar() * c.amp * std::sin(phase)};
}

struct EnergySplit {
  /// Energy of the centroid, <p>^2/2m + m w^2 <x>^2 / 2.
  double classical = 0.0;
  /// Dp^2/2m + m w^2 Dx^2 / 2 = hbar w eps.
  double quantal = 0.0;
};

inline EnergySplit energy_split(const FirstMoments& f1, const SecondMoments& m2, const OscillatorParams& params) {
  const double m = params.mass();
  const double w2 = params.omega() * params.omega();
  return {f1.p_mean * f1.p_mean / (2.0 * m) + 0.5 * m * w2 * f1.x_mean * f1.x_mean,
          m2.dp2 / (2.0 * m) + 0.5 * m * w2 * m2.dx2};
}

/// Moments of a sampled wave through its projection onto `basis`.
struct WaveMoments {
  FirstMoments first;
  SecondMoments second;
  double residual = 0.0;
};

inline WaveMoments wave_moments(const SampledWave& f, const EigenbasisTable& basis, MomentOptions options = {}) {
  SpectralCoeffs coeffs = project(normalize(f), basis);
  return {first_moments(coeffs, options), second_moments(coeffs, options), coeffs.residual};
}

}  // namespace hosc
