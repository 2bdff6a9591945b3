#include <cmath>

#include "support/fixtures.hpp"
#include "support/oracles.hpp"

using namespace hosc;

TEST(TwoGaussian, ZeroSecondAmplitudeIsDisplacedGroundState) {
  const auto& p = fixture::odd_params();
  const Grid g = default_grid(p);
  const TwoGaussianSpec spec{3.0 * p.alpha(), 2.0 * p.alpha(), 0.0};
  for (double t : {0.0, 0.4, 1.9}) {
    EXPECT_LT(l2_distance(two_gaussian_state(spec, t, p, g), displaced_ground_state(spec.a1, t, p, g)), 1e-12);
  }
}

TEST(TwoGaussian, NormalizedAndMatchesSpectralEvolution) {
  const auto& p = fixture::unit_params();
  const DemoScenario demo = make_demo("two-gaussian-fig1", p);
  const EigenbasisTable basis = build_basis(p, demo.grid, demo.n_max);
  EXPECT_NEAR(norm(demo.initial), 1.0, 1e-12);
  const SpectralCoeffs c = project(demo.initial, basis);
  for (double frac : {0.1, 0.25, 0.5, 0.9}) {
    const double t = frac * p.period();
    EXPECT_LT(l2_distance(synthesize(evolve_spectral(c, t), basis), demo.analytic(t)), 1e-8) << frac;
  }
  EXPECT_LT(l2_distance(demo.analytic(p.period() / 2), half_period_map(demo.initial)), 1e-10);
}

TEST(Triangle, MomentsByQuadrature) {
  // Position-space quadrature on a fine grid with kinks on grid points.
  const auto& p = fixture::unit_params();
  const double a = 2.0;
  const Grid g = make_grid(8.0, 8001);
  const SampledWave tri = triangle_state({a}, p, g);
  EXPECT_TRUE(tri.is_real());
  EXPECT_NEAR(norm(tri), 1.0, 1e-14);
  const auto [f1, m] = oracle::grid_moments(tri);
  const SecondMoments exact = triangle_moments({a}, p);
  EXPECT_NEAR(m.dx2, exact.dx2, 1e-6 * a * a);
  EXPECT_NEAR(m.dp2, exact.dp2, 2e-3 * exact.dp2);  // the derivative jumps at the kinks
  EXPECT_NEAR(m.dxp, 0.0, 1e-12);
  EXPECT_NEAR(f1.x_mean, 0.0, 1e-14);
}

TEST(Triangle, ClosedFormConstants) {
  const auto& p = fixture::odd_params();
  for (double a : {0.5, 1.0, 3.0}) {
    const SecondMoments m = triangle_moments({a * p.alpha()}, p);
    const MomentConstants c = moment_constants(m, p);
    EXPECT_NEAR(c.K * c.K, 0.3, 1e-14);
  }
  const double stable = stable_triangle_half_width(p);
  const MomentConstants c = moment_constants(triangle_moments({stable}, p), p);
  EXPECT_NEAR(c.eps, std::sqrt(0.3), 1e-14);
  EXPECT_NEAR(c.amp, 0.0, 1e-14);
  EXPECT_NEAR(std::sqrt(0.3), 0.5477, 1e-4);
  EXPECT_NEAR(stable / p.alpha(), 2.34, 5e-3);
}

TEST(Triangle, OverlapReport) {
  const auto& p = fixture::unit_params();
  const DemoScenario demo = make_demo("triangle-stable", p);
  const EigenbasisTable basis = build_basis(p, demo.grid, demo.n_max);
  const OverlapReport r = gaussian_overlap_report({stable_triangle_half_width(p)}, basis);
  EXPECT_NEAR(r.c0_sq, 0.9953, 5e-4);
  EXPECT_NEAR(r.chi_sq, 0.0047, 5e-4);
  EXPECT_NEAR(r.c0_sq + r.chi_sq, 1.0, 1e-10);
  for (double a : {0.5, 1.0, 4.0}) EXPECT_LT(gaussian_overlap_report({a}, basis).c0_sq, 1.0);
}

TEST(Triangle, GroundOverlapIsInvariantUnderEvolution) {
  const auto& p = fixture::unit_params();
  const DemoScenario demo = make_demo("triangle-wide", p);
  const EigenbasisTable basis = build_basis(p, demo.grid, demo.n_max);
  const SpectralCoeffs c = project(demo.initial, basis, demo.projection);
  const double c0 = std::norm(inner_product(basis.wave(0), demo.initial));
  for (double frac : {0.1, 0.3, 0.77}) {
    const SampledWave ft = synthesize(evolve_spectral(c, frac * p.period()), basis);
    EXPECT_NEAR(std::norm(inner_product(basis.wave(0), ft)), c0, 1e-12);
  }
}

TEST(Triangle, StableTriangleBarelyChangesShape) {
  // Over a quarter period at steps of T/32 the stable triangle's |psi| stays
  // close to its initial shape. Only the part orthogonal to the ground state
  // changes shape, so the l2 change of |psi| is at most 2 |c_chi|.
  const auto& p = fixture::unit_params();
  const DemoScenario demo = make_demo("triangle-stable", p);
  const EigenbasisTable basis = build_basis(p, demo.grid, demo.n_max);
  const SpectralCoeffs c = project(demo.initial, basis, demo.projection);
  double worst = 0.0;
  for (int j = 1; j <= 8; ++j) {
    const SampledWave ft = synthesize(evolve_spectral(c, j * p.period() / 32), basis);
    std::vector<Complex> moduli(ft.size());
    for (std::size_t k = 0; k < ft.size(); ++k) moduli[k] = std::abs(ft[k]);
    worst = std::max(worst, l2_distance(SampledWave(p, ft.grid(), moduli), demo.initial));
  }
  const double chi = std::sqrt(gaussian_overlap_report({stable_triangle_half_width(p)}, basis).chi_sq);
  EXPECT_LT(worst, 2 * chi);
  EXPECT_GT(worst, 0.01);
}

TEST(Triangle, WideTriangleNarrowsOverFirstQuarter) {
  const auto& p = fixture::unit_params();
  const DemoScenario demo = make_demo("triangle-wide", p);
  const EigenbasisTable basis = build_basis(p, demo.grid, demo.n_max);
  const MomentConstants c = moment_constants(triangle_moments({4.0}, p), p);
  double prev = 1e300;
  for (int j = 0; j <= 8; ++j) {
    const double dx2 = second_moments_at(c, j * p.period() / 32, p).dx2;
    EXPECT_LT(dx2, prev);
    prev = dx2;
  }
  // Same trend in the evolved wave itself.
  const SpectralCoeffs c0 = project(demo.initial, basis, demo.projection);
  const auto at = [&](double t) { return oracle::grid_moments(synthesize(evolve_spectral(c0, t), basis)).second.dx2; };
  EXPECT_LT(at(p.period() / 4), at(p.period() / 8));
  EXPECT_LT(at(p.period() / 8), at(0.0));
}

TEST(Demos, ScaleNormalizesTheDefiningFormula) {
  const auto& p = fixture::unit_params();
  const DemoScenario tri = make_demo("triangle-wide", p);
  const SampledWave raw = SampledWave::from_function(p, tri.grid, [](double x) { return std::max(0.0, 1 - std::abs(x) / 4); });
  // Trapezoid error at the off-node corners is O(h^2).
  EXPECT_NEAR(tri.scale * norm(raw), 1.0, 1e-4);
  const DemoScenario two = make_demo("two-gaussian-fig1", p);
  const TwoGaussianSpec spec{20, 17, 0.4};
  const SampledWave unscaled = SampledWave::from_function(p, two.grid, [&](double x) {
    return std::exp(-(x - 20) * (x - 20) / 2) + 0.4 * std::exp(-(x - 17) * (x - 17) / 2);
  });
  EXPECT_NEAR(two.scale * norm(unscaled), 1.0, 1e-12);
  EXPECT_EQ(two.scale, two_gaussian_scale(spec, p));
}

TEST(Demos, NamesBuildAndUnknownIsRejected) {
  const auto& p = fixture::unit_params();
  for (auto name : demo_names()) {
    const DemoScenario d = make_demo(name, p);
    EXPECT_EQ(d.name, name);
    EXPECT_NEAR(norm(d.initial), 1.0, 1e-12);
    EXPECT_FALSE(d.default_times.empty());
    EXPECT_LE(d.n_max, max_resolved_mode(p, d.grid));
  }
  EXPECT_HOSC_ERROR(make_demo("nope", p), ErrorCode::invalid_argument);
  EXPECT_HOSC_ERROR(make_demo("two-gaussian-fig1", p, make_grid(10.0, 512)), ErrorCode::grid_coverage_error);
}
