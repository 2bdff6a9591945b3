#include <boost/math/special_functions/factorials.hpp>
#include <boost/math/special_functions/hermite.hpp>
#include <cmath>

#include "support/fixtures.hpp"
#include "support/oracles.hpp"

using namespace hosc;

namespace {

double hermite_oracle(unsigned n, double xi) {
  const double norm = 1.0 / std::sqrt(std::pow(2.0, n) * boost::math::factorial<double>(n) * std::sqrt(std::numbers::pi));
  return norm * boost::math::hermite(n, xi) * std::exp(-xi * xi / 2);
}

}  // namespace

TEST(Hermite, MatchesPolynomialDefinition) {
  for (unsigned n = 0; n <= 30; ++n) {
    for (double xi : {-5.5, -2.0, -0.3, 0.0, 0.7, 3.1, 6.0}) {
      EXPECT_NEAR(hermite_function(static_cast<int>(n), xi), hermite_oracle(n, xi), 1e-12) << n << " " << xi;
    }
  }
}

TEST(Hermite, ParityAndFarTails) {
  std::vector<double> a(201), b(201);
  hermite_functions(4.2, a);
  hermite_functions(-4.2, b);
  for (std::size_t n = 0; n < a.size(); ++n) EXPECT_NEAR(b[n], (n % 2 ? -1.0 : 1.0) * a[n], 1e-14);
  // Far beyond the turning point the recursion must neither overflow nor give NaN.
  std::vector<double> far(300);
  hermite_functions(60.0, far);
  for (double v : far) EXPECT_TRUE(std::isfinite(v));
  EXPECT_LT(std::abs(far[299]), 1e-100);
}

TEST(Basis, OrthonormalOnDefaultGrid) {
  const auto& basis = fixture::default_basis();
  double worst = 0.0;
  for (int m = 0; m <= basis.n_max(); m += 7) {
    for (int n = m; n <= basis.n_max(); n += 5) {
      const double ip = inner_product(basis.wave(m), basis.wave(n)).real();
      worst = std::max(worst, std::abs(ip - (m == n ? 1.0 : 0.0)));
    }
  }
  EXPECT_LT(worst, 1e-12);
}

TEST(Basis, DefaultSizesAndResolutionRule) {
  const auto& p = fixture::unit_params();
  EXPECT_EQ(fixture::default_basis().n_max(), kDefaultNmax);
  EXPECT_EQ(default_grid(p).size(), kDefaultPoints);
  EXPECT_GE(max_resolved_mode(p, default_grid(p)), 128);
  EXPECT_HOSC_ERROR(build_basis(p, make_grid(6.0, 1024), 40), ErrorCode::resolution_error);
  EXPECT_HOSC_ERROR(build_basis(p, make_grid(24.0, 64), 40), ErrorCode::resolution_error);
  EXPECT_HOSC_ERROR(build_basis(p, Grid::make(-20.0, 24.0, 1024), 20), ErrorCode::grid_symmetry_error);
}

TEST(Basis, ProjectSynthesizeRoundTripRandomCoefficients) {
  for (const auto* p : {&fixture::unit_params(), &fixture::odd_params()}) {
    const auto& basis = fixture::default_basis(*p);
    std::mt19937_64 rng(11);
    for (int trial = 0; trial < 10; ++trial) {
      const SpectralCoeffs c = random_coeffs(rng, *p, 60, basis.n_max());
      const SpectralCoeffs back = project(synthesize(c, basis), basis);
      double worst = 0.0;
      for (std::size_t n = 0; n < c.c.size(); ++n) worst = std::max(worst, std::abs(c.c[n] - back.c[n]));
      EXPECT_LT(worst, 1e-12);
      EXPECT_LT(std::abs(back.residual), 1e-12);
      EXPECT_FALSE(back.truncation_warning);
    }
  }
}

TEST(Basis, ProjectFlagsTruncation) {
  const auto& p = fixture::unit_params();
  const auto& basis = fixture::default_basis();
  // A box of width 2 alpha has a slowly decaying spectrum.
  const SampledWave box = SampledWave::from_function(p, basis.grid(), [](double x) { return std::abs(x) < 1 ? 1.0 : 0.0; });
  const SpectralCoeffs c = project(box, basis);
  EXPECT_TRUE(c.truncation_warning);
  EXPECT_GT(c.residual, 1e-8);
}

TEST(Basis, EvaluateOffGridMatchesClosedForm) {
  const auto& p = fixture::odd_params();
  const auto& basis = fixture::default_basis(p);
  const double a = p.alpha();
  auto gauss = [&](double x) { return std::exp(-(x - 0.4 * a) * (x - 0.4 * a) / (2 * a * a)); };
  const SpectralCoeffs c = project(SampledWave::from_function(p, basis.grid(), gauss), basis);
  const std::vector<double> xs{-3.3 * a, -0.01 * a, 0.123 * a, 2.9 * a};
  const auto values = evaluate(c, xs);
  for (std::size_t j = 0; j < xs.size(); ++j) EXPECT_NEAR(std::abs(values[j] - gauss(xs[j])), 0.0, 1e-12);
}

TEST(Basis, RequireBasisForMismatch) {
  const SampledWave f(fixture::odd_params(), default_grid(fixture::unit_params()),
                      std::vector<Complex>(kDefaultPoints, 0.0));
  EXPECT_HOSC_ERROR(project(f, fixture::default_basis()), ErrorCode::incompatible_operands);
}

TEST(Fourier, EigenfunctionIdentity) {
  for (const auto* p : {&fixture::unit_params(), &fixture::odd_params()}) {
    for (int n = 0; n <= 20; ++n) EXPECT_LT(verify_eigen_ft(fixture::default_basis(*p), n), 1e-10) << n;
  }
}

TEST(Fourier, GroundStateIsFixedPoint) {
  const auto& basis = fixture::default_basis();
  EXPECT_LT(l2_distance(fourier_dimensionless(basis.wave(0)), basis.wave(0)), 1e-12);
}

TEST(Fourier, QuadratureAndSpectralRoutesAgree) {
  const auto& p = fixture::odd_params();
  const auto& basis = fixture::default_basis(p);
  std::mt19937_64 rng(5);
  const SampledWave f = random_state(rng, basis, 30);
  EXPECT_LT(l2_distance(fourier_dimensionless(f), fourier_spectral(f, basis)), 1e-10);
}

TEST(Fourier, UnitaryOnRandomStates) {
  const auto& basis = fixture::default_basis();
  std::mt19937_64 rng(9);
  for (int i = 0; i < 3; ++i) {
    const SampledWave f = random_state(rng, basis, 24);
    EXPECT_NEAR(norm(fourier_dimensionless(f)), 1.0, 1e-12);
  }
}

// The triangle's transform has a kink-limited trapezoid error of a few 1e-5
// at this resolution, so the comparison is at 2e-4.
TEST(Fourier, TriangleClosedForm) {
  const auto& p = fixture::unit_params();
  const Grid g = make_grid(40.0, 4096);
  const double lambda = 2.0;
  const SampledWave tri =
      SampledWave::from_function(p, g, [&](double x) { return std::max(0.0, 1.0 - std::abs(x) / lambda); });
  const SampledWave ft = fourier_dimensionless(tri);
  auto expected = [&](double rho) {
    return rho == 0.0 ? lambda / std::sqrt(2 * std::numbers::pi)
                      : 4 * std::pow(std::sin(lambda * rho / 2), 2) / (std::sqrt(2 * std::numbers::pi) * lambda * rho * rho);
  };
  double worst = 0.0;
  for (std::size_t k = 0; k < g.size(); ++k) worst = std::max(worst, std::abs(ft[k] - expected(g.x(k))));
  EXPECT_LT(worst, 2e-4);
  // With the quarter-period phase, the map produces exp(-i pi/4) times that.
  const SampledWave q = quarter_period_map(tri);
  const Complex phase = std::polar(1.0, -std::numbers::pi / 4);
  for (std::size_t k = 0; k < g.size(); k += 97) EXPECT_LT(std::abs(q[k] - phase * expected(g.x(k))), 2e-4);
}

TEST(Fourier, RefusesWavesThatDoNotDecay) {
  const auto& p = fixture::unit_params();
  const SampledWave flat(p, make_grid(10.0, 128), std::vector<Complex>(128, 1.0));
  EXPECT_HOSC_ERROR(fourier_dimensionless(flat), ErrorCode::aliasing_error);
  const SampledWave lopsided(p, Grid::make(-5.0, 10.0, 128), std::vector<Complex>(128, 0.0));
  EXPECT_HOSC_ERROR(fourier_dimensionless(lopsided), ErrorCode::grid_symmetry_error);
}
