#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <random>
#include <thread>

#include "mlfc/error.hpp"
#include "mlfc/mittag_leffler.hpp"

using namespace mlfc;
using std::numbers::pi;

namespace {

double rel_err(complex a, complex b) { return std::abs(a - b) / std::max(std::abs(b), 1e-30); }

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

// Frozen with a 200-digit series evaluation (mpmath) and cross-checked
// against the in-repo MPFR series.
const complex kE07_13_at_2p3i{1.882459538836225627529546654645560179604, -1.057439736482070274944703075101695388693};
const double kE05_05_at_1 = 5.573169664310039753257904049775582400538;
const double kE2_3_at_m100 = 0.0183907152907645245225886394782406483452;
const complex kE08_08_far{3.556453506565501012947e-6, 2.604993014135232049947e-6};

}  // namespace

TEST(MlEval, ExponentialAtOne) {
  EXPECT_NEAR(ml_eval({1, 1}, 1.0, 1e-14).real(), std::exp(1.0), 1e-15 * std::exp(1.0));
}

TEST(MlEval, CosineZeroAtQuarterPiSquared) {
  complex v = ml_eval({2, 1}, -(pi / 2) * (pi / 2), 1e-12);
  // scale of cos near its zero: |sin| = 1, so absolute error ~ rel_tol
  EXPECT_LT(std::abs(v), 1e-12);
}

TEST(MlEval, PinnedComplexArgument) {
  EXPECT_LT(rel_err(ml_eval({0.7, 1.3}, {2, 3}, 1e-14), kE07_13_at_2p3i), 1e-13);
}

TEST(MlEval, TelescopingSeries) {
  EXPECT_LT(rel_err(ml_eval({1, 2}, 2.0, 1e-14), (std::exp(2.0) - 1) / 2), 1e-14);
}

TEST(MlEval, ZeroGivesReciprocalGamma) {
  for (double b : {0.3, 1.0, 2.5, 3.0}) EXPECT_DOUBLE_EQ(ml_eval({0.7, b}, 0.0, 1e-14).real(), 1 / std::tgamma(b));
  EXPECT_EQ(ml_eval({0.7, 0.0}, 0.0, 1e-14), complex(0.0));
  EXPECT_EQ(ml_eval({0.7, -2.0}, 0.0, 1e-14), complex(0.0));
}

TEST(MlEval, RejectsBadInput) {
  EXPECT_EQ(kind_of([] { ml_eval({1, 1}, 1.0, 1e-15); }), ErrorKind::InvalidArgument);
  EXPECT_EQ(kind_of([] { ml_eval({1, 1}, 1.0, 1e-3); }), ErrorKind::InvalidArgument);
  EXPECT_EQ(kind_of([] { ml_eval({2.5, 1}, 1.0, 1e-10); }), ErrorKind::InvalidArgument);
  EXPECT_EQ(kind_of([] { ml_eval({0, 1}, 1.0, 1e-10); }), ErrorKind::InvalidArgument);
}

TEST(MlEval, OverflowIsReported) {
  EXPECT_EQ(kind_of([] { ml_eval({1, 1}, 800.0, 1e-10); }), ErrorKind::NonFinite);
  EXPECT_EQ(kind_of([] { ml_eval({0.5, 1}, 1000.0, 1e-10); }), ErrorKind::NonFinite);
}

TEST(MlOracle, ExpWithCancellation) {
  EXPECT_LT(rel_err(ml_eval_oracle({1, 1}, -30.0, 50), 9.357622968840174604915832e-14), 1e-15);
}

TEST(MlOracle, SineOverW) {
  EXPECT_LT(rel_err(ml_eval_oracle({2, 2}, -4.0, 50), std::sin(2.0) / 2), 1e-15);
}

TEST(MlOracle, HalfOrderPinnedAndIdentity) {
  complex v = ml_eval_oracle({0.5, 0.5}, 1.0, 50);
  EXPECT_LT(rel_err(v, kE05_05_at_1), 1e-15);
  // E_{1/2,1/2}(w) = w E_{1/2,1}(w) + 1/Gamma(1/2)
  complex w{1.3, -0.4};
  complex lhs = ml_eval_oracle({0.5, 0.5}, w, 50);
  complex rhs = w * ml_eval_oracle({0.5, 1.0}, w, 50) + 1 / std::sqrt(pi);
  EXPECT_LT(rel_err(lhs, rhs), 1e-14);
}

TEST(MlOracle, Errors) {
  EXPECT_EQ(kind_of([] { ml_eval_oracle({1, 1}, 1.0, 40); }), ErrorKind::InvalidArgument);
  MLConfig tight;
  tight.guard_cap_digits = 20;
  EXPECT_EQ(kind_of([&] { ml_eval_oracle({1, 1}, -100.0, 50, tight); }), ErrorKind::PrecisionExhausted);
}

TEST(MlAsymptotic, AlphaTwoAgainstOracle) {
  complex v = ml_eval_asymptotic({2, 3}, -100.0, 3);
  EXPECT_LT(rel_err(v, kE2_3_at_m100), 1e-8);
  EXPECT_LT(rel_err(ml_eval_oracle({2, 3}, -100.0, 50), kE2_3_at_m100), 1e-14);
}

TEST(MlAsymptotic, ExponentialOnly) {
  EXPECT_LT(rel_err(ml_eval_asymptotic({1, 1}, 50.0, 1), std::exp(50.0)), 1e-10);
}

TEST(MlAsymptotic, NonExponentialSector) {
  complex z = std::polar(200.0, 0.9 * pi);
  EXPECT_LT(rel_err(ml_eval_asymptotic({0.8, 0.8}, z, 5), kE08_08_far), 1e-6);
  EXPECT_LT(rel_err(ml_eval_oracle({0.8, 0.8}, z, 50), kE08_08_far), 1e-12);
}

TEST(MlAsymptotic, Errors) {
  EXPECT_EQ(kind_of([] { ml_eval_asymptotic({1, 1}, 10.0, 3); }), ErrorKind::OutsideValidity);
  EXPECT_EQ(kind_of([] { ml_eval_asymptotic({1, 1}, 50.0, 0); }), ErrorKind::InvalidArgument);
  EXPECT_EQ(kind_of([] { ml_eval_asymptotic({1, 1}, 50.0, 21); }), ErrorKind::InvalidArgument);
}

TEST(MlDerivative, Examples) {
  EXPECT_LE(ml_derivative_check(1.0, 0.5, 1e-5), 1e-9);
  EXPECT_LE(ml_derivative_check(0.6, {1, 1}, 1e-5), 1e-8);
  EXPECT_LE(ml_derivative_check(2.0, -2.0, 1e-5), 1e-8);
  EXPECT_EQ(kind_of([] { ml_derivative_check(1.0, 0.5, 1e-3); }), ErrorKind::InvalidArgument);
}

TEST(MlDerivative, BoundedByHSquaredScale) {
  for (double a : {0.4, 0.9, 1.3, 1.8})
    for (complex z : {complex(0.2, 0.1), complex(-1.5, 0.5), complex(2.0, -1.0)})
      for (double h : {1e-4, 3e-5, 1e-5})
        EXPECT_LE(ml_derivative_check(a, z, h), 10 * h * h * ml_derivative_scale(a, z)) << a << " " << z;
}

TEST(SectorEnvelope, DirectSubstitution) {
  SectorBoundParams sb{1, 1, 0.75 * pi};
  EXPECT_NEAR(sector_envelope({1, 2}, {0, 10}, sb), 2.0 / 11, 1e-15);
}

TEST(SectorEnvelope, OutsideSectorAndFormula) {
  SectorBoundParams sb{2, 3, 0.4 * pi};
  EXPECT_EQ(kind_of([&] { sector_envelope({0.5, 1.5}, {0, 4}, sb); }), ErrorKind::OutsideSector);
  EXPECT_NEAR(envelope_formula({0.5, 1.5}, {0, 4}, 2, 3), 0.4 * std::exp(-16.0) + 0.6, 1e-15);
}

TEST(SectorEnvelope, FittedConstantsDominate) {
  for (auto [a, b] : {std::pair{0.5, 1.5}, std::pair{0.8, 1.0}, std::pair{1.5, 2.0}}) {
    MLParams p{a, b};
    const double theta = 0.5 * pi * a + 0.5 * (std::min(pi, pi * a) - 0.5 * pi * a);
    std::vector<complex> ray;
    for (int i = 0; i <= 60; ++i) ray.push_back(std::polar(std::pow(10.0, -1 + 4.0 * i / 60), 0.5 * pi * a));
    SectorFit fit = fit_sector_constants(p, ray);
    ASSERT_TRUE(std::isfinite(fit.c1) && std::isfinite(fit.c2));
    SectorBoundParams sb{std::max(fit.c1, 1e-3) * 1.01, std::max(fit.c2, 1e-3) * 1.01, theta};
    for (int i = 0; i <= 30; ++i)
      for (int j = -6; j <= 6; ++j) {
        complex z = std::polar(std::pow(10.0, -1 + 4.0 * i / 30), j / 6.0 * 0.5 * pi * a);
        if (std::pow(std::abs(z), 1 / a) > 500) continue;  // E itself overflows double
        EXPECT_GE(sector_envelope(p, z, sb), std::abs(ml_eval(p, z, 1e-10)) * (1 - 1e-9)) << a << "," << b << " " << z;
      }
  }
}

TEST(MlProperty, DecayOnTheAlphaRay) {
  for (auto [a, b] : {std::pair{0.5, 2.0}, std::pair{0.8, 1.5}, std::pair{1.5, 2.0}, std::pair{1.2, 3.0}}) {
    double worst = 0;
    for (int i = 0; i <= 60; ++i) {
      double r = std::pow(10.0, 3.0 * i / 60);
      complex z = std::polar(r, 0.5 * pi * a);
      worst = std::max(worst, std::abs(ml_eval({a, b}, z, 1e-10)) * std::pow(1 + r, std::min((b - 1) / a, 1.0)));
    }
    EXPECT_LT(worst, 10.0) << a << "," << b;
  }
}

TEST(MlProperty, RandomPointsAgreeWithOracle) {
  std::mt19937_64 rng(20240611);
  std::uniform_real_distribution<double> ua(0.1, 2.0), ub(0.2, 3.0), ulr(-1.0, 2.5), uarg(-pi, pi);
  for (int i = 0; i < 150; ++i) {
    MLParams p{ua(rng), ub(rng)};
    complex z = std::polar(std::pow(10.0, ulr(rng)), uarg(rng));
    if (oracle_guard_digits(p, z) > 300) continue;
    complex ref;
    try {
      ref = ml_eval_oracle(p, z, 50);
    } catch (const Error& e) {
      ASSERT_EQ(e.kind(), ErrorKind::NonFinite);
      continue;
    }
    EXPECT_LT(rel_err(ml_eval(p, z, 1e-10), ref), 1e-10) << p.alpha << "," << p.beta << " " << z;
  }
}

TEST(MlProperty, ContourOracleAgreesWithSeries) {
  for (auto [a, b] : {std::pair{0.6, 1.0}, std::pair{1.3, 0.7}, std::pair{1.9, 2.2}})
    for (complex z : {complex(3, 1), complex(-4, 2), complex(0, -6)})
      EXPECT_LT(rel_err(ml_eval_contour({a, b}, z), ml_eval_oracle({a, b}, z, 50)), 1e-11) << a << "," << b << z;
}

TEST(MlProperty, EvaluatorIsThreadSafe) {
  MittagLeffler ml({0.8, 1.1}, 1e-12);
  std::vector<complex> zs, serial, parallel(64);
  for (int i = 0; i < 64; ++i) zs.push_back(std::polar(0.5 + i, 0.1 * i));
  for (auto z : zs) serial.push_back(ml(z));
  std::vector<std::thread> pool;
  for (int t = 0; t < 4; ++t)
    pool.emplace_back([&, t] {
      for (size_t i = t; i < zs.size(); i += 4) parallel[i] = ml(zs[i]);
    });
  for (auto& th : pool) th.join();
  EXPECT_EQ(serial, parallel);
}

TEST(MlParams, RegimeTags) {
  MLParams p{1, 1};
  EXPECT_TRUE(p.has(kBetaEq1));
  EXPECT_TRUE(p.has(kBetaEqAlpha));
  EXPECT_FALSE(p.has(kOther));
  EXPECT_TRUE((MLParams{0.5, 2}).has(kBetaGeAlphaPlus1));
  EXPECT_TRUE((MLParams{1.5, 2}).has(kBetaBetween1AndAlphaPlus1));
  EXPECT_TRUE((MLParams{2, 0.5}).has(kAlphaEq2));
  EXPECT_TRUE((MLParams{0.7, 0.5}).has(kOther));
  for (double a : {0.3, 1.0, 1.7, 2.0})
    for (double b : {-1.0, 0.2, 1.0, 1.5, 2.0, 3.5}) {
      auto tags = MLParams{a, b}.regime_tags();
      EXPECT_EQ((tags & kOther) != 0, (tags & ~std::uint32_t(kOther)) == 0) << a << "," << b;
      EXPECT_FALSE((tags & kBetaGeAlphaPlus1) && (tags & kBetaBetween1AndAlphaPlus1));
    }
}

TEST(Rgamma, PolesAreZero) {
  for (int n = 0; n <= 10; ++n) EXPECT_EQ(rgamma(-n), 0.0);
  EXPECT_NEAR(rgamma(0.5), 1 / std::sqrt(pi), 1e-16);
}
