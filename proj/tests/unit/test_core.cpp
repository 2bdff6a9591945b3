#include <cmath>
#include <set>

#include "support/fixtures.hpp"
#include "support/oracles.hpp"

using namespace hosc;

TEST(OscillatorParams, DerivedScales) {
  const auto p = OscillatorParams::make(2.0, 0.5, 4.0);
  EXPECT_DOUBLE_EQ(p.alpha(), 1.0);
  EXPECT_DOUBLE_EQ(p.period(), std::numbers::pi / 2);
  EXPECT_DOUBLE_EQ(p.momentum_unit(), 2.0);
  EXPECT_DOUBLE_EQ(p.energy_quantum(), 8.0);
  EXPECT_DOUBLE_EQ(OscillatorParams::make(1.0, 1.0, 1.0).alpha(), 1.0);
}

TEST(OscillatorParams, RejectsNonPositive) {
  EXPECT_HOSC_ERROR(OscillatorParams::make(0.0, 1.0, 1.0), ErrorCode::invalid_argument);
  EXPECT_HOSC_ERROR(OscillatorParams::make(1.0, -1.0, 1.0), ErrorCode::invalid_argument);
  EXPECT_HOSC_ERROR(OscillatorParams::make(1.0, 1.0, INFINITY), ErrorCode::invalid_argument);
}

TEST(Grid, SymmetricGridIsExactlyAntisymmetric) {
  for (std::size_t n : {2u, 7u, 1024u, 2047u}) {
    const Grid g = make_grid(13.7, n);
    EXPECT_TRUE(g.is_symmetric());
    for (std::size_t k = 0; k < n; ++k) ASSERT_EQ(g.x(k), -g.x(n - 1 - k)) << "n=" << n << " k=" << k;
    EXPECT_EQ(g.x(0), -13.7);
    EXPECT_EQ(g.x(n - 1), 13.7);
  }
}

TEST(Grid, TrapezoidWeightsIntegratePolynomialsExactlyToSecondOrder) {
  const Grid g = Grid::make(-1.0, 3.0, 401);
  double w = 0, x1 = 0;
  for (std::size_t k = 0; k < g.size(); ++k) {
    w += g.weight(k);
    x1 += g.weight(k) * g.x(k);
  }
  EXPECT_NEAR(w, 4.0, 1e-13);
  EXPECT_NEAR(x1, 4.0, 1e-13);
}

TEST(Grid, RejectsBadBounds) {
  EXPECT_HOSC_ERROR(Grid::make(1.0, 1.0, 10), ErrorCode::invalid_argument);
  EXPECT_HOSC_ERROR(Grid::make(-1.0, 1.0, 1), ErrorCode::invalid_argument);
}

TEST(SampledWave, SizeMismatchIsRejected) {
  EXPECT_HOSC_ERROR(SampledWave(OscillatorParams{}, make_grid(1.0, 5), std::vector<Complex>(4)),
                    ErrorCode::invalid_argument);
}

TEST(SampledWave, NormalizeAndInnerProduct) {
  const auto& p = fixture::unit_params();
  const Grid g = default_grid(p);
  const SampledWave f = SampledWave::from_function(p, g, [](double x) { return std::exp(-x * x); });
  const SampledWave u = normalize(f);
  EXPECT_NEAR(norm(u), 1.0, 1e-14);
  // int exp(-2x^2) = sqrt(pi/2)
  EXPECT_NEAR(norm_squared(f), std::sqrt(std::numbers::pi / 2), 1e-13);
  EXPECT_NEAR(std::abs(inner_product(u, u * kI) - kI), 0.0, 1e-14);
  EXPECT_HOSC_ERROR(normalize(f * Complex(0.0)), ErrorCode::degenerate_state);
}

TEST(SampledWave, IncompatibleOperands) {
  const auto& p = fixture::unit_params();
  const SampledWave a(p, make_grid(5.0, 64), std::vector<Complex>(64, 1.0));
  const SampledWave b(p, make_grid(6.0, 64), std::vector<Complex>(64, 1.0));
  const SampledWave c(fixture::odd_params(), make_grid(5.0, 64), std::vector<Complex>(64, 1.0));
  EXPECT_HOSC_ERROR(l2_distance(a, b), ErrorCode::incompatible_operands);
  EXPECT_HOSC_ERROR(inner_product(a, c), ErrorCode::incompatible_operands);
}

TEST(SampledWave, ReflectRequiresSymmetricGrid) {
  const auto& p = fixture::unit_params();
  const SampledWave f(p, Grid::make(-1.0, 2.0, 8), std::vector<Complex>(8, 1.0));
  EXPECT_HOSC_ERROR(reflect(f), ErrorCode::grid_symmetry_error);
  const SampledWave g = SampledWave::from_function(p, make_grid(3.0, 9), [](double x) { return Complex(x, x * x); });
  const SampledWave r = reflect(g);
  for (std::size_t k = 0; k < g.size(); ++k) EXPECT_EQ(r[k], Complex(-g.grid().x(k), g.grid().x(k) * g.grid().x(k)));
}

TEST(Phases, MinusIPowerIsExact) {
  Complex acc{1.0, 0.0};
  for (long k = 0; k < 40; ++k) {
    EXPECT_EQ(minus_i_pow(k), acc);
    EXPECT_EQ(minus_i_pow(-k), std::conj(acc));
    acc *= Complex(0.0, -1.0);
  }
}

TEST(Errors, NamesAndExitStatusesAreDistinct) {
  std::set<std::string_view> names;
  std::set<int> statuses;
  for (int i = 0; i <= static_cast<int>(ErrorCode::parse_error); ++i) {
    const auto code = static_cast<ErrorCode>(i);
    names.insert(to_string(code));
    statuses.insert(exit_status(code));
    EXPECT_GE(exit_status(code), 10);
  }
  EXPECT_EQ(names.size(), statuses.size());
  EXPECT_EQ(to_string(ErrorCode::near_caustic_error), "near-caustic-error");
  const Error e(ErrorCode::aliasing_error, "x");
  EXPECT_EQ(std::string(e.what()), "aliasing-error: x");
}

TEST(Angles, ContinuedArctanIsMonotoneAndMatchesAtQuarterTurns) {
  oracle::Gen gen(7);
  for (int trial = 0; trial < 20; ++trial) {
    const double ratio = std::exp(gen.uniform(-3.0, 3.0));
    double prev = -1e300;
    for (int j = -400; j <= 400; ++j) {
      const double u = j * 0.01 * std::numbers::pi;
      const double v = detail::continued_arctan(ratio, u);
      ASSERT_GT(v, prev);
      prev = v;
      if (j % 50 == 0) {
        EXPECT_NEAR(v, u, 1e-12);
      }
    }
  }
}
