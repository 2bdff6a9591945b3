#pragma once

#include <algorithm>
#include <cmath>
#include <functional>
#include <numbers>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "hosc/basis.hpp"
#include "hosc/core.hpp"
#include "hosc/evolve.hpp"
#include "hosc/moments.hpp"

namespace hosc {

/// Two ground-state Gaussians at rest at a1 and a2; the second has relative
/// amplitude rel_amp.
struct TwoGaussianSpec {
  double a1 = 20.0;
  double a2 = 17.0;
  double rel_amp = 0.4;
};

/// Triangle 1 - |x|/a on |x| <= a.
struct TriangleSpec {
  double a = 1.0;
};

/// Scale factor that normalizes the t = 0 superposition (computed in closed
/// form, so it does not depend on the grid).
inline double two_gaussian_scale(const TwoGaussianSpec& spec, const OscillatorParams& params) {
  const double alpha = params.alpha();
  const double d = spec.a1 - spec.a2;
  const double overlap = std::exp(-d * d / (4.0 * alpha * alpha));
  const double norm2 = std::sqrt(std::numbers::pi) * alpha *
                       (1.0 + spec.rel_amp * spec.rel_amp + 2.0 * spec.rel_amp * overlap);
  return 1.0 / std::sqrt(norm2);
}

/// psi(x, t) = N [psi_1(x, t) + b psi_2(x, t)] with each packet
///   psi_k = exp[i theta_k - (x - x_k(t))^2 / 2 alpha^2],
///   x_k = a_k cos wt,  p_k = -m w a_k sin wt,
///   theta_k = p_k (x - x_k / 2) / hbar - wt / 2.
inline SampledWave two_gaussian_state(const TwoGaussianSpec& spec, double t, const OscillatorParams& params,
                                      const Grid& grid) {
  const double alpha = params.alpha();
  const double reach = std::max(std::abs(spec.a1), std::abs(spec.a2)) + 6.0 * alpha;
  detail::require_coverage(grid, -reach, reach, "two-Gaussian state");
  const double wt = params.omega() * t;
  const double m_omega = params.mass() * params.omega();
  const double scale = two_gaussian_scale(spec, params);
  auto packet = [&](double a, double x) {
    const double xk = a * std::cos(wt);
    const double pk = -m_omega * a * std::sin(wt);
    const double theta = pk * (x - 0.5 * xk) / params.hbar() - 0.5 * wt;
    const double d = x - xk;
    return std::polar(std::exp(-d * d / (2.0 * alpha * alpha)), theta);
  };
  return SampledWave::from_function(params, grid, [&](double x) {
    return scale * (packet(spec.a1, x) + spec.rel_amp * packet(spec.a2, x));
  });
}

/// Normalized (by quadrature) real triangle.
inline SampledWave triangle_state(const TriangleSpec& spec, const OscillatorParams& params, const Grid& grid) {
  if (!(spec.a > 0.0)) fail(ErrorCode::invalid_argument, "triangle half-width must be positive");
  detail::require_coverage(grid, -spec.a, spec.a, "triangle");
  return normalize(SampledWave::from_function(params, grid, [&](double x) {
    return std::max(0.0, 1.0 - std::abs(x) / spec.a);
  }));
}

/// Closed-form moments of the normalized triangle: a^2/10, 3 hbar^2/a^2, 0.
inline SecondMoments triangle_moments(const TriangleSpec& spec, const OscillatorParams& params) {
  const double hbar = params.hbar();
  return {spec.a * spec.a / 10.0, 3.0 * hbar * hbar / (spec.a * spec.a), 0.0};
}

/// Half-width of the minimum-energy triangle, 30^(1/4) alpha.
inline double stable_triangle_half_width(const OscillatorParams& params) {
  return std::pow(30.0, 0.25) * params.alpha();
}

struct OverlapReport {
  /// |<psi_0|psi>|^2
  double c0_sq = 0.0;
  /// ||psi - c0 psi_0||^2, the weight of the part orthogonal to the ground state.
  double chi_sq = 0.0;
};

inline OverlapReport gaussian_overlap_report(const TriangleSpec& spec, const EigenbasisTable& basis) {
  const SampledWave psi = triangle_state(spec, basis.params(), basis.grid());
  const SampledWave ground = basis.wave(0);
  const Complex c0 = inner_product(ground, psi);
  std::vector<Complex> rest(psi.size());
  for (std::size_t k = 0; k < psi.size(); ++k) rest[k] = psi[k] - c0 * ground[k];
  return {std::norm(c0), norm_squared(SampledWave(psi.params(), psi.grid(), std::move(rest)))};
}

// ---------------------------------------------------------------------------
// Named scenarios shared by the CLI and the tests
// ---------------------------------------------------------------------------

struct DemoScenario {
  std::string name;
  std::string description;
  OscillatorParams params;
  Grid grid;
  int n_max = kDefaultNmax;
  ProjectOptions projection{};
  MomentOptions moments{};
  SampledWave initial;
  /// Closed-form evolution, when the scenario has one.
  std::function<SampledWave(double)> analytic;
  /// Default time list, as a CLI time expression.
  std::string default_times;
  /// Factor that normalizes the scenario's unnormalized defining formula.
  double scale = 1.0;
};

inline std::vector<std::string_view> demo_names() {
  return {"two-gaussian-fig1", "triangle-stable", "triangle-wide", "squeezed"};
}

/// Builds a named scenario. Grid and mode count default to values that
/// resolve the scenario; pass overrides to replace them.
inline DemoScenario make_demo(std::string_view name, const OscillatorParams& params,
                              std::optional<Grid> grid_override = std::nullopt,
                              std::optional<int> nmax_override = std::nullopt) {
  const double alpha = params.alpha();
  auto pick = [&](double extent, std::size_t points, int n_max) {
    const Grid grid = grid_override.value_or(make_grid(extent * alpha, points));
    return std::pair{grid, nmax_override.value_or(std::min(n_max, max_resolved_mode(params, grid)))};
  };
  if (name == "two-gaussian-fig1") {
    const TwoGaussianSpec spec{20.0 * alpha, 17.0 * alpha, 0.4};
    auto [grid, n_max] = pick(32.0, 2048, 384);
    return {std::string(name), "two Gaussians at rest at 20 and 17 alpha, relative amplitude 0.4",
            params, grid, n_max, ProjectOptions{}, MomentOptions{},
            two_gaussian_state(spec, 0.0, params, grid),
            [spec, params, grid](double t) { return two_gaussian_state(spec, t, params, grid); },
            "0:T/2:5", two_gaussian_scale(spec, params)};
  }
  if (name == "triangle-stable" || name == "triangle-wide") {
    const bool stable = name == "triangle-stable";
    const TriangleSpec spec{stable ? stable_triangle_half_width(params) : 4.0 * alpha};
    auto [grid, n_max] = pick(28.0, 2048, 256);
    return {std::string(name),
            stable ? "minimum-energy triangle, a = 30^(1/4) alpha" : "wide triangle, a = 4 alpha",
            params, grid, n_max, ProjectOptions::kink_state(), MomentOptions::kink_state(),
            triangle_state(spec, params, grid), nullptr, "0:T/4:9", std::sqrt(1.5 / spec.a)};
  }
  if (name == "squeezed") {
    const SqueezedSpec spec{1.0, SqueezeAxis::position};
    auto [grid, n_max] = pick(kDefaultHalfExtent, kDefaultPoints, kDefaultNmax);
    return {std::string(name), "squeezed ground state with moment amplitude A = 1",
            params, grid, n_max, ProjectOptions{}, MomentOptions{},
            squeezed_state(spec, 0.0, params, grid),
            [spec, params, grid](double t) { return squeezed_state(spec, t, params, grid); },
            "0:T/2:9"};
  }
  fail(ErrorCode::invalid_argument, "unknown demo '" + std::string(name) + "'");
}

}  // namespace hosc
