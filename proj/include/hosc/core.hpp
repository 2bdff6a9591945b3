#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <numbers>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "hosc/error.hpp"

namespace hosc {

using Complex = std::complex<double>;

inline constexpr Complex kI{0.0, 1.0};

/// (-i)^k, exact for any integer k.
constexpr Complex minus_i_pow(long k) noexcept {
  switch (((k % 4) + 4) % 4) {
    case 0: return {1.0, 0.0};
    case 1: return {0.0, -1.0};
    case 2: return {-1.0, 0.0};
    default: return {0.0, 1.0};
  }
}

// Defaults, in units of the oscillator length. The extent is chosen so that the
// default 128-mode basis passes the coverage rule sqrt(2 n_max + 1) + 4.
inline constexpr double kDefaultHalfExtent = 24.0;
inline constexpr std::size_t kDefaultPoints = 1024;
inline constexpr int kDefaultNmax = 128;

/// Physical constants of the oscillator. alpha is derived and cached.
class OscillatorParams {
 public:
  OscillatorParams() : OscillatorParams(1.0, 1.0, 1.0) {}

  static OscillatorParams make(double hbar, double mass, double omega) {
    if (!(hbar > 0.0) || !(mass > 0.0) || !(omega > 0.0) || !std::isfinite(hbar) ||
        !std::isfinite(mass) || !std::isfinite(omega)) {
      fail(ErrorCode::invalid_argument, "hbar, mass and omega must be positive and finite");
    }
    return OscillatorParams(hbar, mass, omega);
  }

  double hbar() const noexcept { return hbar_; }
  double mass() const noexcept { return mass_; }
  double omega() const noexcept { return omega_; }
  /// sqrt(hbar / (mass omega))
  double alpha() const noexcept { return alpha_; }
  double period() const noexcept { return 2.0 * std::numbers::pi / omega_; }
  /// hbar / alpha, the natural momentum unit.
  double momentum_unit() const noexcept { return hbar_ / alpha_; }
  double energy_quantum() const noexcept { return hbar_ * omega_; }

  friend bool operator==(const OscillatorParams&, const OscillatorParams&) = default;

 private:
  OscillatorParams(double hbar, double mass, double omega)
      : hbar_(hbar), mass_(mass), omega_(omega), alpha_(std::sqrt(hbar / (mass * omega))) {}

  double hbar_;
  double mass_;
  double omega_;
  double alpha_;
};

/// Uniform grid on [x_min, x_max]. Points are generated from the midpoint so a
/// grid with x_min == -x_max is exactly antisymmetric: x(k) == -x(n-1-k).
class Grid {
 public:
  static Grid make(double x_min, double x_max, std::size_t n_points) {
    if (n_points < 2) fail(ErrorCode::invalid_argument, "grid needs at least 2 points");
    if (!(x_max > x_min) || !std::isfinite(x_min) || !std::isfinite(x_max)) {
      fail(ErrorCode::invalid_argument, "grid bounds must be finite with x_max > x_min");
    }
    return Grid(x_min, x_max, n_points);
  }

  double x_min() const noexcept { return x_min_; }
  double x_max() const noexcept { return x_max_; }
  std::size_t size() const noexcept { return n_; }
  double spacing() const noexcept { return (x_max_ - x_min_) / static_cast<double>(n_ - 1); }
  bool is_symmetric() const noexcept { return x_min_ == -x_max_; }
  double half_extent() const noexcept { return 0.5 * (x_max_ - x_min_); }

  double x(std::size_t k) const noexcept {
    const double center = 0.5 * (x_min_ + x_max_);
    const double half_step = (x_max_ - x_min_) / (2.0 * static_cast<double>(n_ - 1));
    return center + (2.0 * static_cast<double>(k) - static_cast<double>(n_ - 1)) * half_step;
  }

  std::vector<double> points() const {
    std::vector<double> xs(n_);
    for (std::size_t k = 0; k < n_; ++k) xs[k] = x(k);
    return xs;
  }

  /// Trapezoid weight of node k.
  double weight(std::size_t k) const noexcept {
    return (k == 0 || k + 1 == n_) ? 0.5 * spacing() : spacing();
  }

  friend bool operator==(const Grid&, const Grid&) = default;

 private:
  Grid(double x_min, double x_max, std::size_t n) : x_min_(x_min), x_max_(x_max), n_(n) {}

  double x_min_;
  double x_max_;
  std::size_t n_;
};

inline Grid make_grid(double x_half_extent, std::size_t n_points) {
  if (!(x_half_extent > 0.0)) fail(ErrorCode::invalid_argument, "half extent must be positive");
  return Grid::make(-x_half_extent, x_half_extent, n_points);
}

/// Default grid for the given oscillator: [-24 alpha, 24 alpha] with 1024 points.
inline Grid default_grid(const OscillatorParams& params) {
  return make_grid(kDefaultHalfExtent * params.alpha(), kDefaultPoints);
}

/// A complex wave function sampled on a grid.
class SampledWave {
 public:
  SampledWave(OscillatorParams params, Grid grid, std::vector<Complex> values)
      : params_(params), grid_(grid), values_(std::move(values)) {
    if (values_.size() != grid_.size()) {
      fail(ErrorCode::invalid_argument, "wave has " + std::to_string(values_.size()) +
                                            " values for a grid of " +
                                            std::to_string(grid_.size()) + " points");
    }
  }

  template <class F>
  static SampledWave from_function(const OscillatorParams& params, const Grid& grid, F&& fn) {
    std::vector<Complex> values(grid.size());
    for (std::size_t k = 0; k < grid.size(); ++k) values[k] = Complex(fn(grid.x(k)));
    return SampledWave(params, grid, std::move(values));
  }

  const OscillatorParams& params() const noexcept { return params_; }
  const Grid& grid() const noexcept { return grid_; }
  std::span<const Complex> values() const noexcept { return values_; }
  std::size_t size() const noexcept { return values_.size(); }
  const Complex& operator[](std::size_t k) const noexcept { return values_[k]; }

  bool is_real(double tolerance = 0.0) const noexcept {
    for (const auto& v : values_) {
      if (std::abs(v.imag()) > tolerance) return false;
    }
    return true;
  }

  double max_abs() const noexcept {
    double m = 0.0;
    for (const auto& v : values_) m = std::max(m, std::abs(v));
    return m;
  }

  SampledWave operator*(Complex factor) const {
    auto out = values_;
    for (auto& v : out) v *= factor;
    return SampledWave(params_, grid_, std::move(out));
  }

  SampledWave operator-() const { return *this * Complex(-1.0); }

 private:
  OscillatorParams params_;
  Grid grid_;
  std::vector<Complex> values_;
};

inline void require_compatible(const SampledWave& f, const SampledWave& g) {
  if (!(f.grid() == g.grid()) || !(f.params() == g.params())) {
    fail(ErrorCode::incompatible_operands, "waves live on different grids or oscillators");
  }
}

inline void require_symmetric(const Grid& grid) {
  if (!grid.is_symmetric()) {
    fail(ErrorCode::grid_symmetry_error, "operation requires a grid with x_min == -x_max");
  }
}

/// Trapezoid rule for the integral of conj(f) g.
inline Complex inner_product(const SampledWave& f, const SampledWave& g) {
  require_compatible(f, g);
  const Grid& grid = f.grid();
  Complex sum{};
  for (std::size_t k = 0; k < grid.size(); ++k) sum += grid.weight(k) * std::conj(f[k]) * g[k];
  return sum;
}

inline double norm_squared(const SampledWave& f) {
  const Grid& grid = f.grid();
  double sum = 0.0;
  for (std::size_t k = 0; k < grid.size(); ++k) sum += grid.weight(k) * std::norm(f[k]);
  return sum;
}

inline double norm(const SampledWave& f) { return std::sqrt(norm_squared(f)); }

inline SampledWave normalize(const SampledWave& f) {
  const double n2 = norm_squared(f);
  if (!(n2 > 0.0) || !std::isfinite(n2)) fail(ErrorCode::degenerate_state, "cannot normalize a zero wave");
  return f * Complex(1.0 / std::sqrt(n2));
}

inline double l2_distance(const SampledWave& f, const SampledWave& g) {
  require_compatible(f, g);
  const Grid& grid = f.grid();
  double sum = 0.0;
  for (std::size_t k = 0; k < grid.size(); ++k) sum += grid.weight(k) * std::norm(f[k] - g[k]);
  return std::sqrt(sum);
}

/// Largest pointwise difference of |f| and |g|.
inline double max_modulus_difference(const SampledWave& f, const SampledWave& g) {
  require_compatible(f, g);
  double m = 0.0;
  for (std::size_t k = 0; k < f.size(); ++k) m = std::max(m, std::abs(std::abs(f[k]) - std::abs(g[k])));
  return m;
}

/// f(x) -> f(-x) on a symmetric grid.
inline SampledWave reflect(const SampledWave& f) {
  require_symmetric(f.grid());
  std::vector<Complex> out(f.size());
  for (std::size_t k = 0; k < f.size(); ++k) out[k] = f[f.size() - 1 - k];
  return SampledWave(f.params(), f.grid(), std::move(out));
}

}  // namespace hosc
