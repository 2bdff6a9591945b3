#pragma once

#include <cmath>
#include <concepts>
#include <optional>
#include <string>
#include <vector>

#include "hosc/basis.hpp"
#include "hosc/core.hpp"
#include "hosc/detail/angles.hpp"
#include "hosc/evolve.hpp"
#include "hosc/moments.hpp"

namespace hosc {

struct CentroidFrame {
  double x0 = 0.0;
  double p0 = 0.0;
};

struct CenteredState {
  SampledWave wave;
  CentroidFrame frame;
};

/// Stable state phi(x) = exp(-i x^2 / 2 b^2) psi(s x) of a centered state psi,
/// with s = Dx / (alpha sqrt K) and b^2 = alpha^2 hbar K / Dxp. b2 is empty when
/// Dxp vanishes (no phase factor).
struct StableForm {
  SampledWave wave;
  double s = 1.0;
  std::optional<double> b2;
  /// Moment constants of the original state.
  MomentConstants constants;
};

struct TransformOptions {
  /// Projection residual allowed when a wave is resampled off-grid.
  double interpolation_tolerance = 1e-8;
  /// |output at the grid ends| / max|output| allowed after a shift or rescale.
  double edge_tolerance = 1e-8;
  /// to_stable refuses states whose centroid is further than this from the
  /// origin, in units of alpha and hbar/alpha.
  double centered_tolerance = 1e-6;
  /// |Dxp|/hbar below this is treated as zero.
  double zero_dxp = 1e-12;
  MomentOptions moments{};

  static TransformOptions kink_state() {
    TransformOptions o;
    o.interpolation_tolerance = 1e-4;
    o.moments = MomentOptions::kink_state();
    return o;
  }
};

namespace detail {

inline SpectralCoeffs interpolant(const SampledWave& f, const EigenbasisTable& basis, const TransformOptions& options) {
  SpectralCoeffs coeffs = project(f, basis);
  if (coeffs.residual > options.interpolation_tolerance) {
    fail(ErrorCode::interpolation_error, "basis leaves residual " + std::to_string(coeffs.residual) +
                                             " above the interpolation tolerance");
  }
  return coeffs;
}

inline void require_contained(const std::vector<Complex>& values, const TransformOptions& options) {
  double peak = 0.0;
  for (const auto& v : values) peak = std::max(peak, std::abs(v));
  const double edge = std::max(std::abs(values.front()), std::abs(values.back()));
  if (edge > options.edge_tolerance * peak) {
    fail(ErrorCode::grid_coverage_error, "transformed wave reaches the grid edge");
  }
}

}  // namespace detail

/// phi(x) = exp(-i p0 x / hbar) psi(x + x0), with (x0, p0) the centroid of psi.
inline CenteredState remove_centroid(const SampledWave& f, const EigenbasisTable& basis, TransformOptions options = {}) {
  const SpectralCoeffs coeffs = detail::interpolant(f, basis, options);
  SpectralCoeffs unit = coeffs;
  const double scale = 1.0 / std::sqrt(coeffs.norm_squared());
  for (auto& c : unit.c) c *= scale;
  const FirstMoments m1 = first_moments(unit, options.moments);

  const Grid& grid = f.grid();
  std::vector<double> shifted(grid.size());
  for (std::size_t k = 0; k < grid.size(); ++k) shifted[k] = grid.x(k) + m1.x_mean;
  std::vector<Complex> values = evaluate(coeffs, shifted);
  for (std::size_t k = 0; k < grid.size(); ++k) values[k] *= std::polar(1.0, -m1.p_mean * grid.x(k) / f.params().hbar());
  detail::require_contained(values, options);
  return {SampledWave(f.params(), grid, std::move(values)), {m1.x_mean, m1.p_mean}};
}

/// psi(x, t) = exp[(i/hbar)(pbar (x - xbar/2) - p0 x0 / 2)] phi(x - xbar, t).
/// The constant -p0 x0 / 2 makes attach_centroid(remove_centroid(f).wave, frame, 0) == f.
inline SampledWave attach_centroid(const SampledWave& phi_t, const CentroidFrame& frame, double t,
                                   const EigenbasisTable& basis, TransformOptions options = {}) {
  const OscillatorParams& params = phi_t.params();
  const FirstMoments bar = centroid_trajectory({frame.x0, frame.p0}, t, params);
  if (frame.x0 == 0.0 && frame.p0 == 0.0) return phi_t;
  const SpectralCoeffs coeffs = detail::interpolant(phi_t, basis, options);
  const Grid& grid = phi_t.grid();
  std::vector<double> shifted(grid.size());
  for (std::size_t k = 0; k < grid.size(); ++k) shifted[k] = grid.x(k) - bar.x_mean;
  std::vector<Complex> values = evaluate(coeffs, shifted);
  const double constant = -0.5 * frame.p0 * frame.x0;
  for (std::size_t k = 0; k < grid.size(); ++k) {
    const double x = grid.x(k);
    values[k] *= std::polar(1.0, (bar.p_mean * (x - 0.5 * bar.x_mean) + constant) / params.hbar());
  }
  detail::require_contained(values, options);
  return SampledWave(params, grid, std::move(values));
}

/// chi(x) = psi(s x), renormalized. Moments scale as Dx^2 / s^2 and s^2 Dp^2.
inline SampledWave scale_state(const SampledWave& f, double s, const EigenbasisTable& basis,
                               TransformOptions options = {}) {
  if (!(s > 0.0) || !std::isfinite(s)) fail(ErrorCode::invalid_argument, "scale factor must be positive");
  if (s == 1.0) return normalize(f);
  const SpectralCoeffs coeffs = detail::interpolant(f, basis, options);
  const Grid& grid = f.grid();
  std::vector<double> scaled(grid.size());
  for (std::size_t k = 0; k < grid.size(); ++k) scaled[k] = s * grid.x(k);
  std::vector<Complex> values = evaluate(coeffs, scaled);
  detail::require_contained(values, options);
  return normalize(SampledWave(f.params(), grid, std::move(values)));
}

/// exp(i p x / hbar) f(x)
inline SampledWave boost_momentum(const SampledWave& f, double p_boost) {
  std::vector<Complex> values(f.values().begin(), f.values().end());
  for (std::size_t k = 0; k < values.size(); ++k) {
    values[k] *= std::polar(1.0, p_boost * f.grid().x(k) / f.params().hbar());
  }
  return SampledWave(f.params(), f.grid(), std::move(values));
}

/// Stable form of a centered state. The output is normalized and has Dxp = 0,
/// Dx^2 = alpha^2 K and Dp^2 = hbar^2 K / alpha^2.
inline StableForm to_stable(const SampledWave& f, const EigenbasisTable& basis, TransformOptions options = {}) {
  const OscillatorParams& params = f.params();
  const SampledWave unit = normalize(f);
  const SpectralCoeffs coeffs = detail::interpolant(unit, basis, options);
  const FirstMoments m1 = first_moments(coeffs, options.moments);
  if (std::abs(m1.x_mean) > options.centered_tolerance * params.alpha() ||
      std::abs(m1.p_mean) > options.centered_tolerance * params.momentum_unit()) {
    fail(ErrorCode::invalid_argument, "to_stable needs a centered state; run remove_centroid first");
  }
  const SecondMoments m2 = second_moments(coeffs, options.moments);
  if (!(m2.dx2 > 0.0) || !(m2.dp2 > 0.0)) fail(ErrorCode::moment_error, "degenerate second moments");
  const MomentConstants constants = moment_constants(m2, params);

  const double alpha = params.alpha();
  const double s = std::sqrt(m2.dx2) / (alpha * std::sqrt(constants.K));
  std::optional<double> b2;
  if (std::abs(m2.dxp) / params.hbar() > options.zero_dxp) b2 = alpha * alpha * params.hbar() * constants.K / m2.dxp;

  const Grid& grid = f.grid();
  std::vector<double> scaled(grid.size());
  for (std::size_t k = 0; k < grid.size(); ++k) scaled[k] = s * grid.x(k);
  std::vector<Complex> values = evaluate(coeffs, scaled);
  const double root_s = std::sqrt(s);
  for (std::size_t k = 0; k < grid.size(); ++k) {
    values[k] *= root_s;
    if (b2) {
      const double x = grid.x(k);
      values[k] *= std::polar(1.0, -0.5 * x * x / *b2);
    }
  }
  detail::require_contained(values, options);
  return {SampledWave(params, grid, std::move(values)), s, b2, constants};
}

/// tau(t) = (1/w) arctan[((eps + A)/K) tan w(t - t0)], continued to a
/// monotone function with tau(t0) = 0.
inline double distorted_time(const MomentConstants& c, double t, const OscillatorParams& params) {
  const double w = params.omega();
  if (c.amp == 0.0) return t - c.t0;
  return detail::continued_arctan((c.eps + c.amp) / c.K, w * (t - c.t0)) / w;
}

/// d tau / dt = K alpha^2 / Dx^2(t)
inline double distorted_rate(const MomentConstants& c, double t, const OscillatorParams& params) {
  return c.K / (c.eps - c.amp * std::cos(2.0 * params.omega() * (t - c.t0)));
}

/// Evolution of the stable state: a callable taking the elapsed distorted time
/// and returning the stable wave at that time on the basis grid.
template <class F>
concept StableEvolution = std::invocable<const F&, double> &&
                          std::convertible_to<std::invoke_result_t<const F&, double>, SampledWave>;

/// Spectral evolution of `wave` as a StableEvolution.
inline auto spectral_evolution(const SampledWave& wave, const EigenbasisTable& basis) {
  return [coeffs = project(wave, basis), &basis](double tau) { return synthesize(evolve_spectral(coeffs, tau), basis); };
}

/// psi(x, t) = (sqrt(K) alpha / Dx)^(1/2) exp[(i/hbar) Dxp x^2 / (2 Dx^2)] phi(sqrt(K) alpha x / Dx, tau),
/// with Dx, Dxp from the closed-form moments of the original state and tau
/// the distorted time elapsed since t = 0.
template <StableEvolution Oracle>
SampledWave evolve_via_stable(const StableForm& sf, const Oracle& stable_evolution, double t,
                              const EigenbasisTable& basis, TransformOptions options = {}) {
  const OscillatorParams& params = sf.wave.params();
  const MomentConstants& c = sf.constants;
  const SecondMoments m = second_moments_at(c, t, params);
  const double dx = std::sqrt(m.dx2);
  const double tau = distorted_time(c, t, params) - distorted_time(c, 0.0, params);
  const SampledWave phi_tau = stable_evolution(tau);
  const SpectralCoeffs coeffs = detail::interpolant(phi_tau, basis, options);

  const double ratio = std::sqrt(c.K) * params.alpha() / dx;
  const Grid& grid = sf.wave.grid();
  std::vector<double> scaled(grid.size());
  for (std::size_t k = 0; k < grid.size(); ++k) scaled[k] = ratio * grid.x(k);
  std::vector<Complex> values = evaluate(coeffs, scaled);
  const double amplitude = std::sqrt(ratio);
  const double chirp = m.dxp / (2.0 * params.hbar() * m.dx2);
  for (std::size_t k = 0; k < grid.size(); ++k) {
    const double x = grid.x(k);
    values[k] *= std::polar(amplitude, chirp * x * x);
  }
  detail::require_contained(values, options);
  return SampledWave(params, grid, std::move(values));
}

}  // namespace hosc
