#pragma once

#include <algorithm>
#include <cmath>
#include <numbers>
#include <span>
#include <string>
#include <vector>

#include "hosc/core.hpp"

namespace hosc {

/// Fills out[n] = h_n(xi) for n = 0..out.size()-1, where h_n are the
/// orthonormal Hermite functions in the dimensionless coordinate xi:
///   h_0 = pi^(-1/4) exp(-xi^2/2),
///   h_{n+1} = xi sqrt(2/(n+1)) h_n - sqrt(n/(n+1)) h_{n-1}.
/// The Gaussian factor is applied at the end with a running exponent so large
/// |xi| neither underflows h_0 nor overflows the polynomial part.
inline void hermite_functions(double xi, std::span<double> out) {
  if (out.empty()) return;
  static const double kPiQuarter = std::pow(std::numbers::pi, -0.25);
  constexpr double kBig = 1e150;
  const double base_log = -0.5 * xi * xi;
  double log_scale = 0.0;
  double prev = 0.0;
  double cur = 1.0;
  out[0] = kPiQuarter * std::exp(base_log);
  for (std::size_t n = 0; n + 1 < out.size(); ++n) {
    const double nd = static_cast<double>(n);
    double next = xi * std::sqrt(2.0 / (nd + 1.0)) * cur - std::sqrt(nd / (nd + 1.0)) * prev;
    prev = cur;
    cur = next;
    if (std::abs(cur) > kBig) {
      cur /= kBig;
      prev /= kBig;
      log_scale += std::log(kBig);
    }
    out[n + 1] = kPiQuarter * std::exp(base_log + log_scale) * cur;
  }
}

/// Single normalized Hermite function h_n(xi).
inline double hermite_function(int n, double xi) {
  std::vector<double> buf(static_cast<std::size_t>(n) + 1);
  hermite_functions(xi, buf);
  return buf.back();
}

/// Largest mode the grid resolves: the half extent must exceed the turning
/// point sqrt(2n+1) alpha by 4 alpha, and the spacing must give at least six
/// points per shortest local wavelength 2 pi alpha / sqrt(2n+1).
inline int max_resolved_mode(const OscillatorParams& params, const Grid& grid) {
  const double extent = grid.half_extent() / params.alpha();
  const double h = grid.spacing() / params.alpha();
  const double k_extent = extent - 4.0;
  if (k_extent <= 1.0) return -1;
  const double k_resolve = 2.0 * std::numbers::pi / (6.0 * h);
  const double k = std::min(k_extent, k_resolve);
  return static_cast<int>(std::floor((k * k - 1.0) / 2.0));
}

/// Default mode count for a grid: 128, or fewer if the grid cannot hold it.
inline int default_nmax(const OscillatorParams& params, const Grid& grid) {
  return std::min(kDefaultNmax, max_resolved_mode(params, grid));
}

/// Energy eigenfunctions psi_n(x_k) for n = 0..n_max, each unit-normalized.
class EigenbasisTable {
 public:
  EigenbasisTable(OscillatorParams params, Grid grid, int n_max, std::vector<double> rows)
      : params_(params), grid_(grid), n_max_(n_max), rows_(std::move(rows)) {}

  const OscillatorParams& params() const noexcept { return params_; }
  const Grid& grid() const noexcept { return grid_; }
  int n_max() const noexcept { return n_max_; }

  std::span<const double> row(int n) const noexcept {
    return std::span<const double>(rows_).subspan(static_cast<std::size_t>(n) * grid_.size(), grid_.size());
  }

  SampledWave wave(int n) const {
    auto r = row(n);
    return SampledWave(params_, grid_, std::vector<Complex>(r.begin(), r.end()));
  }

 private:
  OscillatorParams params_;
  Grid grid_;
  int n_max_;
  std::vector<double> rows_;
};

inline EigenbasisTable build_basis(const OscillatorParams& params, const Grid& grid, int n_max) {
  if (n_max < 0) fail(ErrorCode::invalid_argument, "n_max must be non-negative");
  require_symmetric(grid);
  const int resolved = max_resolved_mode(params, grid);
  if (n_max > resolved) {
    fail(ErrorCode::resolution_error,
         "grid resolves modes up to " + std::to_string(resolved) + ", requested " + std::to_string(n_max));
  }
  const std::size_t n_pts = grid.size();
  const std::size_t n_rows = static_cast<std::size_t>(n_max) + 1;
  const double inv_sqrt_alpha = 1.0 / std::sqrt(params.alpha());
  std::vector<double> rows(n_rows * n_pts);
  std::vector<double> column(n_rows);
  for (std::size_t k = 0; k < n_pts; ++k) {
    hermite_functions(grid.x(k) / params.alpha(), column);
    for (std::size_t n = 0; n < n_rows; ++n) rows[n * n_pts + k] = column[n] * inv_sqrt_alpha;
  }
  return EigenbasisTable(params, grid, n_max, std::move(rows));
}

inline EigenbasisTable build_default_basis(const OscillatorParams& params, const Grid& grid) {
  return build_basis(params, grid, default_nmax(params, grid));
}

/// Expansion coefficients c_n over the energy eigenfunctions.
struct SpectralCoeffs {
  OscillatorParams params;
  std::vector<Complex> c;
  /// 1 - sum |c_n|^2 / ||f||^2 at projection time.
  double residual = 0.0;
  bool truncation_warning = false;

  int n_max() const noexcept { return static_cast<int>(c.size()) - 1; }

  double norm_squared() const noexcept {
    double s = 0.0;
    for (const auto& v : c) s += std::norm(v);
    return s;
  }
};

struct ProjectOptions {
  /// Residual above which the projection is flagged as truncated.
  double tolerance = 1e-8;

  static ProjectOptions kink_state() { return ProjectOptions{1e-4}; }
};

inline void require_basis_for(const SampledWave& f, const EigenbasisTable& basis) {
  if (!(f.grid() == basis.grid()) || !(f.params() == basis.params())) {
    fail(ErrorCode::incompatible_operands, "wave and basis use different grids or oscillators");
  }
}

inline SpectralCoeffs project(const SampledWave& f, const EigenbasisTable& basis, ProjectOptions options = {}) {
  require_basis_for(f, basis);
  const Grid& grid = f.grid();
  std::vector<Complex> weighted(grid.size());
  for (std::size_t k = 0; k < grid.size(); ++k) weighted[k] = grid.weight(k) * f[k];
  SpectralCoeffs out{f.params(), std::vector<Complex>(static_cast<std::size_t>(basis.n_max()) + 1)};
  for (int n = 0; n <= basis.n_max(); ++n) {
    auto row = basis.row(n);
    Complex sum{};
    for (std::size_t k = 0; k < grid.size(); ++k) sum += row[k] * weighted[k];
    out.c[static_cast<std::size_t>(n)] = sum;
  }
  const double f2 = norm_squared(f);
  out.residual = f2 > 0.0 ? 1.0 - out.norm_squared() / f2 : 0.0;
  out.truncation_warning = out.residual > options.tolerance;
  return out;
}

inline SampledWave synthesize(const SpectralCoeffs& coeffs, const EigenbasisTable& basis) {
  if (coeffs.n_max() > basis.n_max() || !(coeffs.params == basis.params())) {
    fail(ErrorCode::incompatible_operands, "coefficients exceed the basis or use another oscillator");
  }
  const Grid& grid = basis.grid();
  std::vector<Complex> values(grid.size());
  for (int n = 0; n <= coeffs.n_max(); ++n) {
    const Complex cn = coeffs.c[static_cast<std::size_t>(n)];
    if (cn == Complex{}) continue;
    auto row = basis.row(n);
    for (std::size_t k = 0; k < grid.size(); ++k) values[k] += cn * row[k];
  }
  return SampledWave(basis.params(), grid, std::move(values));
}

/// Sum c_n psi_n(x) at arbitrary positions; the band-limited interpolant used
/// for all off-grid resampling.
inline std::vector<Complex> evaluate(const SpectralCoeffs& coeffs, std::span<const double> xs) {
  const double alpha = coeffs.params.alpha();
  const double inv_sqrt_alpha = 1.0 / std::sqrt(alpha);
  std::vector<double> h(coeffs.c.size());
  std::vector<Complex> out(xs.size());
  for (std::size_t j = 0; j < xs.size(); ++j) {
    hermite_functions(xs[j] / alpha, h);
    Complex sum{};
    for (std::size_t n = 0; n < h.size(); ++n) sum += coeffs.c[n] * h[n];
    out[j] = sum * inv_sqrt_alpha;
  }
  return out;
}

/// Throws aliasing-error unless |f| at both grid ends is below 1e-12 max|f|.
inline void require_edge_decay(const SampledWave& f, double relative = 1e-12) {
  const double peak = f.max_abs();
  const double edge = std::max(std::abs(f[0]), std::abs(f[f.size() - 1]));
  if (edge > relative * peak) {
    fail(ErrorCode::aliasing_error, "wave does not decay at the grid edges (|f| = " + std::to_string(edge) + ")");
  }
}

/// Fourier transform in the oscillator's dimensionless variables,
///   Phi(rho) = (2 pi)^(-1/2) int exp(-i rho xi) Psi(xi) dxi,  psi(x) = Psi(x/alpha),
/// evaluated by direct trapezoid quadrature and resampled as a function of x
/// through rho = x/alpha. O(N^2).
inline SampledWave fourier_dimensionless(const SampledWave& f) {
  require_symmetric(f.grid());
  require_edge_decay(f);
  const Grid& grid = f.grid();
  const double alpha = f.params().alpha();
  const std::size_t n = grid.size();
  const double prefactor = 1.0 / (std::sqrt(2.0 * std::numbers::pi) * alpha);
  std::vector<double> xi(n);
  std::vector<Complex> weighted(n);
  for (std::size_t k = 0; k < n; ++k) {
    xi[k] = grid.x(k) / alpha;
    weighted[k] = grid.weight(k) * f[k];
  }
  std::vector<Complex> out(n);
  for (std::size_t j = 0; j < n; ++j) {
    Complex sum{};
    for (std::size_t k = 0; k < n; ++k) {
      const double phase = -xi[j] * xi[k];
      sum += Complex(std::cos(phase), std::sin(phase)) * weighted[k];
    }
    out[j] = prefactor * sum;
  }
  return SampledWave(f.params(), grid, std::move(out));
}

/// Fast route to the same transform: F psi_n = (-i)^n psi_n applied to the
/// projection. Only valid for states the basis resolves.
inline SampledWave fourier_spectral(const SampledWave& f, const EigenbasisTable& basis) {
  SpectralCoeffs coeffs = project(f, basis);
  for (std::size_t n = 0; n < coeffs.c.size(); ++n) coeffs.c[n] *= minus_i_pow(static_cast<long>(n));
  return synthesize(coeffs, basis);
}

/// Max pointwise |F psi_n - (-i)^n psi_n| with F the quadrature transform.
inline double verify_eigen_ft(const EigenbasisTable& basis, int n) {
  if (n < 0 || n > basis.n_max()) fail(ErrorCode::invalid_argument, "mode outside the basis");
  const SampledWave psi = basis.wave(n);
  const SampledWave transformed = fourier_dimensionless(psi);
  const Complex factor = minus_i_pow(n);
  double worst = 0.0;
  for (std::size_t k = 0; k < psi.size(); ++k) worst = std::max(worst, std::abs(transformed[k] - factor * psi[k]));
  return worst;
}

}  // namespace hosc
