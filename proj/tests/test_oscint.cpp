#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "mlfc/error.hpp"
#include "mlfc/oscint.hpp"

using namespace mlfc;
using std::numbers::pi;

namespace {

template <class F>
ErrorKind kind_of(F&& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.kind();
  }
  ADD_FAILURE() << "no mlfc::Error thrown";
  return ErrorKind::InvalidArgument;
}

OscIntegralSpec fourier(double lambda) {
  OscIntegralSpec s;
  s.params = {1, 1};
  s.lambda = lambda;
  return s;
}

// Brute-force GL20 value with 64 panels per oscillation, frozen.
const complex kPinned08{0.045074124426533656, 0.060917726665825359};

}  // namespace

TEST(Oscint, FullPeriodVanishes) {
  IntegralResult r = compute_integral(fourier(2 * pi));
  EXPECT_LT(std::abs(r.value), 1e-9);
  EXPECT_LE(r.est_error, 1e-9);
}

TEST(Oscint, HalfPeriod) {
  IntegralResult r = compute_integral(fourier(pi));
  EXPECT_NEAR(r.value.real(), 0.0, 1e-9);
  EXPECT_NEAR(r.value.imag(), 2 / pi, 1e-9);
  EXPECT_NEAR(r.abs_value, 2 / pi, 1e-9);
}

TEST(Oscint, ZeroAmplitudeIsExactlyZero) {
  OscIntegralSpec s = fourier(50);
  s.amplitude = Amplitude::poly({0});
  IntegralResult r = compute_integral(s);
  EXPECT_EQ(r.value, complex(0.0));
  EXPECT_EQ(r.est_error, 0.0);
}

TEST(Oscint, PinnedFractionalValue) {
  OscIntegralSpec s;
  s.params = {0.8, 0.8};
  s.lambda = 100;
  s.phase = Phase::quadratic(0);
  s.amplitude = Amplitude::indicator(0, 1);
  IntegralResult a = compute_integral(s);
  EXPECT_LT(std::abs(a.value - kPinned08), 1e-9);
  EXPECT_LT(std::abs(a.value - kPinned08), 2 * a.est_error + 1e-11);
  IntegralResult o = compute_integral_oracle(s);
  EXPECT_LT(std::abs(o.value - kPinned08), 1e-9);
}

TEST(Oscint, RealWhenAlphaIsTwo) {
  OscIntegralSpec s;
  s.params = {2, 2};
  s.lambda = 9;
  s.phase = Phase::mass_shell(1);
  s.amplitude = Amplitude::gaussian(1);
  s.domain = Domain::interval(-5, 5);
  IntegralResult r = compute_integral(s);
  EXPECT_LE(std::abs(r.value.imag()), 1e-14);
  EXPECT_GT(std::abs(r.value.real()), 1e-6);
}

TEST(OscintProperty, AdaptiveMatchesBruteForce) {
  std::mt19937_64 rng(7321);
  std::uniform_real_distribution<double> ua(0.5, 2.0), ub(0.5, 3.0), ulog(0.0, 2.0), uc(-0.5, 0.5);
  const std::vector<Amplitude> amps{Amplitude::one(), Amplitude::indicator(0.2, 0.7), Amplitude::gaussian(0.5),
                                    Amplitude::poly({1, -1, 0.5}), Amplitude::smooth_bump(0, 1)};
  for (int i = 0; i < 50; ++i) {
    OscIntegralSpec s;
    s.params = {ua(rng), ub(rng)};
    s.lambda = std::pow(10.0, ulog(rng));
    switch (i % 4) {
      case 0: s.phase = Phase::affine(1 + uc(rng), uc(rng)); break;
      case 1: s.phase = Phase::quadratic(uc(rng)); break;
      case 2: s.phase = Phase::mass_shell(1 + uc(rng)); break;
      default: s.phase = Phase::monomial(3, uc(rng)); break;
    }
    s.amplitude = amps[i % amps.size()];
    s.domain = Domain::interval(0, 1);
    IntegralResult a = compute_integral(s);
    IntegralResult o = compute_integral_oracle(s);
    EXPECT_LE(std::abs(a.value - o.value), 2 * std::max(a.est_error, o.est_error) + 1e-12)
        << s.params.alpha << "," << s.params.beta << " lambda " << s.lambda << " " << s.phase.to_string() << " "
        << s.amplitude.to_string();
  }
}

TEST(OscintProperty, SignFlipConjugatesForAlphaOne) {
  for (double beta : {1.0, 1.5, 2.5}) {
    OscIntegralSpec s;
    s.params = {1, beta};
    s.lambda = 37;
    s.phase = Phase::affine(1, 0.2);
    s.amplitude = Amplitude::gaussian(0.6);
    s.domain = Domain::interval(-1, 2);
    IntegralResult p = compute_integral(s);
    s.phase = Phase::affine(-1, -0.2);
    IntegralResult m = compute_integral(s);
    EXPECT_LT(std::abs(p.value - std::conj(m.value)), p.est_error + m.est_error + 1e-13) << beta;
  }
}

TEST(OscintProperty, TighterToleranceCostsNoLess) {
  OscIntegralSpec s;
  s.params = {1.3, 1.7};
  s.lambda = 200;
  s.phase = Phase::quadratic(0.1);
  s.amplitude = Amplitude::gaussian(0.8);
  long prev = 0;
  double prev_err = INFINITY;
  for (double tol : {1e-4, 1e-6, 1e-8, 1e-10}) {
    s.quad_tol = tol;
    IntegralResult r = compute_integral(s);
    EXPECT_GE(r.n_evals, prev) << tol;
    EXPECT_LE(r.est_error, std::max(tol, 1e-12)) << tol;
    EXPECT_LE(r.est_error, prev_err);
    prev = r.n_evals;
    prev_err = r.est_error;
  }
}

TEST(OscintProperty, WholeLineTruncationConverges) {
  OscIntegralSpec s;
  s.params = {1, 1};
  s.lambda = 20;
  s.phase = Phase::affine(1, 0);
  s.amplitude = Amplitude::gaussian(1);
  s.domain = Domain::whole_line();
  IntegralResult r = compute_integral(s);
  // Fourier transform of the Gaussian: sqrt(2 pi) exp(-lambda^2 / 2) ~ 0
  EXPECT_LT(std::abs(r.value), 1e-9);
  EXPECT_GT(r.truncation, 0.0);
  s.domain = Domain::whole_line(2 * r.truncation);
  IntegralResult r2 = compute_integral(s);
  EXPECT_LT(std::abs(r.value - r2.value), r.est_error + r2.est_error);

  s.lambda = 2;
  IntegralResult r3 = compute_integral(s);
  EXPECT_NEAR(r3.value.real(), std::sqrt(2 * pi) * std::exp(-2.0), 1e-9);
}

TEST(OscintErrors, Validation) {
  EXPECT_EQ(kind_of([] { compute_integral(fourier(0.5)); }), ErrorKind::InvalidArgument);
  OscIntegralSpec s = fourier(10);
  s.quad_tol = 0;
  EXPECT_EQ(kind_of([&] { compute_integral(s); }), ErrorKind::InvalidArgument);
  s = fourier(10);
  s.domain = Domain::whole_line();
  EXPECT_EQ(kind_of([&] { compute_integral(s); }), ErrorKind::TailBoundFailure);
  EXPECT_EQ(kind_of([&] { compute_integral_oracle(s); }), ErrorKind::InvalidArgument);
}

TEST(OscintErrors, Budgets) {
  OscIntegralSpec s = fourier(1e4);
  s.quad_tol = 1e-12;
  OscConfig cfg;
  cfg.max_evals = 500;
  EXPECT_EQ(kind_of([&] { compute_integral(s, cfg); }), ErrorKind::QuadratureFailure);
  OracleConfig ocfg;
  ocfg.max_evals = 1000;
  EXPECT_EQ(kind_of([&] { compute_integral_oracle(s, ocfg); }), ErrorKind::BudgetExceeded);
}

TEST(Oscint, ThreadCountDoesNotChangeResult) {
  OscIntegralSpec s;
  s.params = {0.8, 0.8};
  s.lambda = 300;
  s.phase = Phase::quadratic(0);
  s.amplitude = Amplitude::indicator(0, 1);
  OscConfig c1, c2;
  c2.threads = 2;
  IntegralResult a = compute_integral(s, c1), b = compute_integral(s, c2);
  EXPECT_EQ(a.value, b.value);
  EXPECT_EQ(a.est_error, b.est_error);
  EXPECT_EQ(a.n_evals, b.n_evals);
}

TEST(OscCuts, PhaseVariationPerPanel) {
  Phase ph = Phase::quadratic(0);
  auto cuts = oscillation_cuts(ph, 500, 0.8, 0, 1, 2 * pi, 100000);
  ASSERT_GE(cuts.size(), 2u);
  EXPECT_EQ(cuts.front(), 0.0);
  EXPECT_EQ(cuts.back(), 1.0);
  for (std::size_t i = 0; i + 1 < cuts.size(); ++i)
    EXPECT_LE(oscillation_phase(ph, 500, 0.8, cuts[i], cuts[i + 1]), 2 * pi * (1 + 1e-9));
  EXPECT_NEAR(oscillation_phase(ph, 500, 0.8, 0, 1), std::pow(500.0, 1 / 0.8), 1e-9 * std::pow(500.0, 1 / 0.8));
  EXPECT_EQ(kind_of([&] { oscillation_cuts(ph, 500, 0.8, 0, 1, 2 * pi, 10); }), ErrorKind::QuadratureFailure);
}

TEST(OscCuts, DampedCap) {
  EXPECT_TRUE(std::isinf(damped_phase_cap(1.0)));
  EXPECT_TRUE(std::isfinite(damped_phase_cap(0.8)));
  EXPECT_GT(damped_phase_cap(0.8), damped_phase_cap(0.7));
}
