#pragma once

#include <cstdint>
#include <random>

#include "hosc/basis.hpp"
#include "hosc/core.hpp"

namespace hosc {

/// Normalized coefficients with independent complex-normal entries on modes
/// 0..top and zeros up to n_max.
inline SpectralCoeffs random_coeffs(std::mt19937_64& rng, const OscillatorParams& params, int top, int n_max) {
  std::normal_distribution<double> normal(0.0, 1.0);
  SpectralCoeffs coeffs{params, std::vector<Complex>(static_cast<std::size_t>(n_max) + 1)};
  for (int n = 0; n <= top; ++n) {
    const double re = normal(rng);
    const double im = normal(rng);
    coeffs.c[static_cast<std::size_t>(n)] = Complex(re, im);
  }
  const double scale = 1.0 / std::sqrt(coeffs.norm_squared());
  for (auto& c : coeffs.c) c *= scale;
  return coeffs;
}

/// Random normalized wave built from modes 0..top of `basis`.
inline SampledWave random_state(std::mt19937_64& rng, const EigenbasisTable& basis, int top = 24) {
  return synthesize(random_coeffs(rng, basis.params(), top, basis.n_max()), basis);
}

}  // namespace hosc
