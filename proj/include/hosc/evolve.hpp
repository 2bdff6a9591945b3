#pragma once

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>
#include <vector>

#include "hosc/basis.hpp"
#include "hosc/core.hpp"
#include "hosc/detail/angles.hpp"

namespace hosc {

// ---------------------------------------------------------------------------
// Spectral backend and the exact periodicity maps
// ---------------------------------------------------------------------------

/// c_n -> exp(-i omega t (n + 1/2)) c_n
inline SpectralCoeffs evolve_spectral(const SpectralCoeffs& coeffs, double t) {
  SpectralCoeffs out = coeffs;
  const double wt = coeffs.params.omega() * t;
  for (std::size_t n = 0; n < out.c.size(); ++n) {
    out.c[n] *= std::polar(1.0, -wt * (static_cast<double>(n) + 0.5));
  }
  return out;
}

/// Project, evolve, synthesize.
inline SampledWave evolve_spectral(const SampledWave& f, const EigenbasisTable& basis, double t,
                                   ProjectOptions options = {}) {
  return synthesize(evolve_spectral(project(f, basis, options), t), basis);
}

/// psi(x, t + T/2) = -i psi(-x, t)
inline SampledWave half_period_map(const SampledWave& f) { return reflect(f) * Complex(0.0, -1.0); }

/// psi(x, t + T/4) = exp(-i pi/4) Phi(x/alpha)
inline SampledWave quarter_period_map(const SampledWave& f) {
  return fourier_dimensionless(f) * std::polar(1.0, -std::numbers::pi / 4.0);
}

/// Given psi(., t) of a state that was real at t = 0, returns
/// psi(x, T/2 - t) = -i conj(psi(-x, t)). Says nothing useful for complex
/// initial states.
inline SampledWave reflect_real_initial(const SampledWave& f_t) {
  const SampledWave r = reflect(f_t);
  std::vector<Complex> out(r.size());
  for (std::size_t k = 0; k < r.size(); ++k) out[k] = Complex(0.0, -1.0) * std::conj(r[k]);
  return SampledWave(f_t.params(), f_t.grid(), std::move(out));
}

// ---------------------------------------------------------------------------
// Propagator backend
// ---------------------------------------------------------------------------

struct KernelSample {
  Complex value;
  /// floor(omega t / pi); negated for negative t.
  long maslov_index = 0;
};

struct KernelOptions {
  /// Kernel evaluation is refused when |sin omega t| falls below this.
  double sin_threshold = 1e-3;
};

namespace detail {

inline void require_off_caustic(double t, const OscillatorParams& params, const KernelOptions& options) {
  const double s = std::sin(params.omega() * t);
  if (!(std::abs(s) >= options.sin_threshold)) {
    fail(ErrorCode::near_caustic_error,
         "|sin(omega t)| = " + std::to_string(std::abs(s)) +
             " is too close to a caustic; use the half/quarter period maps");
  }
}

}  // namespace detail

/// Oscillator propagator with the Maslov factor (-i)^k, k = floor(omega t/pi).
/// Negative times use K(x', x, -t) = conj K(x, x', t).
inline KernelSample propagator_kernel(double x, double x_prime, double t, const OscillatorParams& params,
                                      KernelOptions options = {}) {
  if (t < 0.0) {
    const KernelSample forward = propagator_kernel(x_prime, x, -t, params, options);
    return {std::conj(forward.value), -forward.maslov_index};
  }
  detail::require_off_caustic(t, params, options);
  const double wt = params.omega() * t;
  const double s = std::sin(wt);
  const double c = std::cos(wt);
  const double alpha = params.alpha();
  const long k = static_cast<long>(std::floor(wt / std::numbers::pi));
  const double modulus = 1.0 / (alpha * std::sqrt(2.0 * std::numbers::pi * std::abs(s)));
  const double phase = ((x * x + x_prime * x_prime) * c - 2.0 * x * x_prime) / (2.0 * alpha * alpha * s);
  const Complex value = minus_i_pow(k) * std::polar(modulus, phase - std::numbers::pi / 4.0);
  return {value, k};
}

struct PropagatorOptions {
  KernelOptions kernel{};
  /// Kernel phase change per grid step above which the integrand is flagged.
  double warn_phase_step = std::numbers::pi / 4.0;
  /// Above this the quadrature is aliased and the call is refused.
  double max_phase_step = std::numbers::pi;
  /// Samples below this fraction of max|f| are treated as outside the support.
  double support_cutoff = 1e-14;
};

struct PropagatorResult {
  SampledWave wave;
  /// Largest kernel phase change per grid step over the support of f.
  double max_phase_step = 0.0;
  bool oscillation_warning = false;
};

/// psi(x, t) = int K(x, x', t) psi(x') dx' by trapezoid quadrature. O(N^2).
inline PropagatorResult evolve_propagator(const SampledWave& f, double t, PropagatorOptions options = {}) {
  const OscillatorParams& params = f.params();
  const Grid& grid = f.grid();
  detail::require_off_caustic(t, params, options.kernel);

  const double peak = f.max_abs();
  if (!(peak > 0.0)) fail(ErrorCode::degenerate_state, "cannot propagate a zero wave");
  std::size_t lo = 0;
  std::size_t hi = f.size() - 1;
  while (lo < hi && std::abs(f[lo]) <= options.support_cutoff * peak) ++lo;
  while (hi > lo && std::abs(f[hi]) <= options.support_cutoff * peak) --hi;

  const double wt = params.omega() * t;
  const double s = std::sin(wt);
  const double c = std::cos(wt);
  const double alpha2 = params.alpha() * params.alpha();
  // d(phase)/dx' = (x' cos - x) / (alpha^2 sin) is bilinear, so its extreme is at a corner.
  double rate = 0.0;
  for (double xp : {grid.x(lo), grid.x(hi)}) {
    for (double x : {grid.x_min(), grid.x_max()}) rate = std::max(rate, std::abs(xp * c - x));
  }
  const double step = grid.spacing() * rate / (alpha2 * std::abs(s));
  if (step > options.max_phase_step) {
    fail(ErrorCode::resolution_error,
         "propagator integrand changes phase by " + std::to_string(step) + " rad per grid step");
  }

  std::vector<Complex> weighted(f.size());
  for (std::size_t k = 0; k < f.size(); ++k) weighted[k] = grid.weight(k) * f[k];
  std::vector<Complex> out(f.size());
  for (std::size_t j = 0; j < f.size(); ++j) {
    const double x = grid.x(j);
    Complex sum{};
    for (std::size_t k = lo; k <= hi; ++k) {
      sum += propagator_kernel(x, grid.x(k), t, params, options.kernel).value * weighted[k];
    }
    out[j] = sum;
  }
  return {SampledWave(params, grid, std::move(out)), step, step > options.warn_phase_step};
}

// ---------------------------------------------------------------------------
// Analytic families
// ---------------------------------------------------------------------------

namespace detail {

inline void require_coverage(const Grid& grid, double lo, double hi, const char* what) {
  if (lo < grid.x_min() || hi > grid.x_max()) {
    fail(ErrorCode::grid_coverage_error, std::string(what) + " needs [" + std::to_string(lo) + ", " +
                                             std::to_string(hi) + "] inside the grid");
  }
}

}  // namespace detail

/// Displaced ground state started at rest at x = a:
///   psi = exp(i theta - (x - a cos wt)^2 / 2 alpha^2),
///   theta = -a sin wt (x - a cos wt / 2) / alpha^2 - wt / 2,
/// normalized analytically.
inline SampledWave displaced_ground_state(double a, double t, const OscillatorParams& params, const Grid& grid) {
  if (!std::isfinite(a)) fail(ErrorCode::invalid_argument, "displacement must be finite");
  const double alpha = params.alpha();
  detail::require_coverage(grid, -std::abs(a) - 4.0 * alpha, std::abs(a) + 4.0 * alpha, "displaced ground state");
  const double wt = params.omega() * t;
  const double center = a * std::cos(wt);
  const double kick = -a * std::sin(wt) / (alpha * alpha);
  const double amplitude = std::pow(std::numbers::pi * alpha * alpha, -0.25);
  return SampledWave::from_function(params, grid, [&](double x) {
    const double theta = kick * (x - 0.5 * center) - 0.5 * wt;
    const double d = x - center;
    return std::polar(amplitude * std::exp(-d * d / (2.0 * alpha * alpha)), theta);
  });
}

struct DisplacedEigenstateSpec {
  int n = 0;
  double x0 = 0.0;
  double p0 = 0.0;
};

/// exp(i theta_n) psi_n(x - xbar(t)) with
/// theta_n = [pbar xi + pbar xbar / 2 - E_n t] / hbar, xi = x - xbar.
inline SampledWave displaced_eigenstate(const DisplacedEigenstateSpec& spec, double t, const OscillatorParams& params,
                                        const Grid& grid) {
  if (spec.n < 0) fail(ErrorCode::invalid_argument, "eigenstate index must be non-negative");
  const double alpha = params.alpha();
  const double m_omega = params.mass() * params.omega();
  const double orbit = std::hypot(spec.x0, spec.p0 / m_omega);
  const double reach = orbit + (std::sqrt(2.0 * spec.n + 1.0) + 4.0) * alpha;
  detail::require_coverage(grid, -reach, reach, "displaced eigenstate");

  const double wt = params.omega() * t;
  const double xbar = spec.x0 * std::cos(wt) + spec.p0 / m_omega * std::sin(wt);
  const double pbar = spec.p0 * std::cos(wt) - m_omega * spec.x0 * std::sin(wt);
  const double energy = params.energy_quantum() * (spec.n + 0.5);
  const double inv_sqrt_alpha = 1.0 / std::sqrt(alpha);
  std::vector<double> h(static_cast<std::size_t>(spec.n) + 1);
  return SampledWave::from_function(params, grid, [&](double x) {
    const double xi = x - xbar;
    hermite_functions(xi / alpha, h);
    const double theta = (pbar * xi + 0.5 * pbar * xbar - energy * t) / params.hbar();
    return std::polar(h.back() * inv_sqrt_alpha, theta);
  });
}

enum class SqueezeAxis {
  position,  ///< narrow in position at t = 0
  momentum,  ///< narrow in momentum at t = 0
};

struct SqueezedSpec {
  /// Amplitude A >= 0 of the second-moment oscillation.
  double amp = 0.0;
  SqueezeAxis axis = SqueezeAxis::position;

  double eps() const noexcept { return std::sqrt(amp * amp + 0.25); }
};

/// Squeezed Gaussian (K = 1/2):
///   psi = sqrt(D0/Dx) exp[(i Dxp/hbar - 1/2) x^2 / (2 Dx^2) - i omega tau / 2],
/// with Dx^2 = alpha^2 (eps - A cos 2w(t - t0)), Dxp = hbar A sin 2w(t - t0) and
/// distorted time tau measured from t = 0. t0 is 0 (position-narrow) or T/4.
inline SampledWave squeezed_state(const SqueezedSpec& spec, double t, const OscillatorParams& params,
                                  const Grid& grid) {
  if (!(spec.amp >= 0.0) || !std::isfinite(spec.amp)) {
    fail(ErrorCode::invalid_argument, "squeeze amplitude must be finite and non-negative");
  }
  const double alpha = params.alpha();
  const double eps = spec.eps();
  const double amp = spec.amp;
  const double max_dx = alpha * std::sqrt(eps + amp);
  detail::require_coverage(grid, -6.0 * max_dx, 6.0 * max_dx, "squeezed state");

  const double w = params.omega();
  const double t0 = spec.axis == SqueezeAxis::position ? 0.0 : 0.25 * params.period();
  auto dx2_at = [&](double time) { return alpha * alpha * (eps - amp * std::cos(2.0 * w * (time - t0))); };
  const double dx2 = dx2_at(t);
  const double d0 = std::sqrt(dx2_at(0.0));
  const double dxp_over_hbar = amp * std::sin(2.0 * w * (t - t0));
  const double ratio = 2.0 * (eps + amp);
  const double omega_tau =
      detail::continued_arctan(ratio, w * (t - t0)) - detail::continued_arctan(ratio, -w * t0);
  const double amplitude = std::pow(2.0 * std::numbers::pi * d0 * d0, -0.25) * std::sqrt(d0 / std::sqrt(dx2));
  return SampledWave::from_function(params, grid, [&](double x) {
    const double q = x * x / (2.0 * dx2);
    return amplitude * std::exp(Complex(-0.5 * q, dxp_over_hbar * q - 0.5 * omega_tau));
  });
}

}  // namespace hosc
