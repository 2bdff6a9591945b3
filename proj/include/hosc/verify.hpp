#pragma once

#include <cmath>
#include <cstdint>
#include <functional>
#include <numbers>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "hosc/basis.hpp"
#include "hosc/core.hpp"
#include "hosc/evolve.hpp"
#include "hosc/moments.hpp"
#include "hosc/random.hpp"
#include "hosc/transform.hpp"

namespace hosc {

struct CheckResult {
  std::string id;
  bool passed = false;
  /// Worst measured error, or NaN when the check raised.
  double measured = 0.0;
  double tolerance = 0.0;
  std::string detail;
};

struct VerifyConfig {
  OscillatorParams params{};
  /// Empty extent/points/n_max fall back to the defaults.
  double half_extent = 0.0;
  std::size_t points = 0;
  int n_max = -1;
  std::uint64_t seed = 1;
  /// Random states per property check.
  int samples = 10;
  /// Multiplies every tolerance.
  double tolerance_scale = 1.0;
};

namespace detail {

struct VerifyContext {
  const VerifyConfig& config;
  const EigenbasisTable& basis;

  std::mt19937_64 rng(std::uint64_t salt) const { return std::mt19937_64(config.seed * 0x9E3779B97F4A7C15ULL + salt); }
  double period() const { return config.params.period(); }
};

inline CheckResult run_check(const std::string& id, double tolerance, const std::function<double()>& body) {
  CheckResult r{id, false, 0.0, tolerance, {}};
  try {
    r.measured = body();
    r.passed = r.measured < tolerance;
  } catch (const Error& e) {
    r.measured = std::nan("");
    r.detail = e.what();
  }
  return r;
}

}  // namespace detail

/// Runs the invariant suite and returns one result per named check. Errors
/// raised inside a check (including basis construction) are reported as
/// failures of that check, never thrown.
inline std::vector<CheckResult> run_verification(const VerifyConfig& config) {
  const OscillatorParams& params = config.params;
  const double alpha = params.alpha();
  const double scale = config.tolerance_scale;
  std::vector<CheckResult> results;

  std::optional<EigenbasisTable> basis;
  try {
    const Grid grid = make_grid((config.half_extent > 0.0 ? config.half_extent : kDefaultHalfExtent * alpha),
                                config.points > 0 ? config.points : kDefaultPoints);
    const int n_max = config.n_max >= 0 ? config.n_max : kDefaultNmax;
    basis.emplace(build_basis(params, grid, n_max));
  } catch (const Error& e) {
    results.push_back({"basis.build", false, std::nan(""), 0.0, e.what()});
    return results;
  }
  const detail::VerifyContext ctx{config, *basis};
  const double period = ctx.period();
  const int top = std::min(24, basis->n_max() / 2);

  results.push_back(detail::run_check("periodicity.full_period", 1e-10 * scale, [&] {
    auto rng = ctx.rng(1);
    double worst = 0.0;
    for (int i = 0; i < config.samples; ++i) {
      const SampledWave f = random_state(rng, ctx.basis, top);
      worst = std::max(worst, l2_distance(evolve_spectral(f, ctx.basis, period), -f));
    }
    return worst;
  }));

  results.push_back(detail::run_check("periodicity.half_period", 1e-8 * scale, [&] {
    auto rng = ctx.rng(2);
    double worst = 0.0;
    for (int i = 0; i < config.samples; ++i) {
      const SampledWave f = random_state(rng, ctx.basis, top);
      worst = std::max(worst, l2_distance(evolve_spectral(f, ctx.basis, period / 2), half_period_map(f)));
    }
    return worst;
  }));

  results.push_back(detail::run_check("periodicity.quarter_period", 1e-8 * scale, [&] {
    auto rng = ctx.rng(3);
    const SampledWave f = random_state(rng, ctx.basis, top);
    const SampledWave q = quarter_period_map(f);
    double worst = l2_distance(evolve_spectral(f, ctx.basis, period / 4), q);
    const SampledWave q4 = quarter_period_map(quarter_period_map(quarter_period_map(q)));
    return std::max(worst, l2_distance(q4, -f));
  }));

  results.push_back(detail::run_check("periodicity.real_reflection", 1e-8 * scale, [&] {
    auto rng = ctx.rng(4);
    SpectralCoeffs c = random_coeffs(rng, params, top, ctx.basis.n_max());
    // A real initial state: real coefficients.
    for (auto& v : c.c) v = v.real();
    const SampledWave f = normalize(synthesize(c, ctx.basis));
    const double t = 0.13 * period;
    return l2_distance(reflect_real_initial(evolve_spectral(f, ctx.basis, t)),
                       evolve_spectral(f, ctx.basis, period / 2 - t));
  }));

  results.push_back(detail::run_check("basis.ft_identity", 1e-8 * scale, [&] {
    double worst = 0.0;
    for (int n = 0; n <= std::min(20, ctx.basis.n_max()); ++n) worst = std::max(worst, verify_eigen_ft(ctx.basis, n));
    return worst;
  }));

  results.push_back(detail::run_check("propagator.gaussian", 1e-6 * scale, [&] {
    // The quadrature needs a narrower grid than the spectral checks: at T/16 the
    // kernel phase step on the default grid exceeds the resolution limit.
    const Grid grid = make_grid(12.0 * alpha, 1024);
    const SampledWave f = displaced_ground_state(2.0 * alpha, 0.0, params, grid);
    double worst = 0.0;
    for (double t : {period / 16, period / 8, 3 * period / 16}) {
      const auto r = evolve_propagator(f, t);
      worst = std::max(worst, l2_distance(r.wave, displaced_ground_state(2.0 * alpha, t, params, grid)));
    }
    return worst;
  }));

  results.push_back(detail::run_check("moments.k_constancy", 1e-8 * scale, [&] {
    auto rng = ctx.rng(5);
    const SpectralCoeffs c0 = random_coeffs(rng, params, top, ctx.basis.n_max());
    const double k0 = moment_constants(second_moments(c0), params).K;
    double worst = 0.0;
    for (int i = 1; i <= 20; ++i) {
      const SpectralCoeffs ct = evolve_spectral(c0, 2.0 * period * i / 20.0);
      worst = std::max(worst, std::abs(moment_constants(second_moments(ct), params).K - k0) / k0);
    }
    return worst;
  }));

  results.push_back(detail::run_check("moments.uncertainty_chain", 1e-10 * scale, [&] {
    auto rng = ctx.rng(6);
    double worst = 0.0;  // largest violation of eps >= Dx Dp / hbar >= K >= 1/2
    for (int i = 0; i < config.samples; ++i) {
      const SpectralCoeffs c0 = random_coeffs(rng, params, top, ctx.basis.n_max());
      for (int j = 0; j < 8; ++j) {
        const SecondMoments m = second_moments(evolve_spectral(c0, period * j / 8.0));
        const MomentConstants k = moment_constants(m, params);
        const double product = std::sqrt(m.dx2 * m.dp2) / params.hbar();
        worst = std::max({worst, product - k.eps, k.K - product, 0.5 - k.K});
      }
    }
    return std::max(worst, 0.0);
  }));

  results.push_back(detail::run_check("transform.reduction_pipeline", 1e-5 * scale, [&] {
    auto rng = ctx.rng(7);
    double worst = 0.0;
    for (int i = 0; i < std::max(1, config.samples / 2); ++i) {
      const SampledWave f = random_state(rng, ctx.basis, std::min(top, 8));
      const CenteredState cs = remove_centroid(f, ctx.basis);
      const StableForm sf = to_stable(cs.wave, ctx.basis);
      const auto oracle = spectral_evolution(sf.wave, ctx.basis);
      for (double t : {0.1 * period, 0.37 * period}) {
        const SampledWave phi_t = evolve_via_stable(sf, oracle, t, ctx.basis);
        const SampledWave via = attach_centroid(phi_t, cs.frame, t, ctx.basis);
        worst = std::max(worst, max_modulus_difference(via, evolve_spectral(f, ctx.basis, t)));
      }
    }
    return worst;
  }));

  return results;
}

inline bool all_passed(const std::vector<CheckResult>& results) {
  for (const auto& r : results) {
    if (!r.passed) return false;
  }
  return !results.empty();
}

}  // namespace hosc
