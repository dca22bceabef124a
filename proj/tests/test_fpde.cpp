#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "mlfc/error.hpp"
#include "mlfc/fpde.hpp"
#include "mlfc/quadrature.hpp"

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

// Composite Gauss-Legendre of e^{i x xi} kernel(xi) psi_hat(xi) over [-12, 12].
complex reference(double x, const std::function<complex(double)>& kernel, const Amplitude& psi_hat) {
  static const quad::Rule rule = quad::gauss_legendre(20);
  const int panels = 2000;
  const double a = -12, h = 24.0 / panels;
  complex s = 0;
  for (int p = 0; p < panels; ++p) {
    double mid = a + (p + 0.5) * h;
    for (size_t q = 0; q < rule.nodes.size(); ++q) {
      double xi = mid + 0.5 * h * rule.nodes[q];
      s += 0.5 * h * rule.weights[q] * std::polar(1.0, x * xi) * kernel(xi) * psi_hat.value(xi);
    }
  }
  return s;
}

// Default problems, frozen at tol 1e-11 with twice the xi truncation.
const complex kKgAt2{0.5745117940682184, 0.014909235899232256};
const complex kKgAt0{1.2841630128149055, 0.85049131582311921};
const complex kSchAt2{-0.45095862931356689, -0.67048405022250657};
const complex kSchAt0{-0.36036785624316819, -0.32508665421328925};

}  // namespace

TEST(Fpde, ZeroDataGivesZeroField) {
  KGProblem p;
  p.psi_hat = Amplitude::poly({0});
  p.x_grid = UniformGrid::parse("-1:1:5");
  FieldSnapshot s = kg_solve(p, 1.0);
  ASSERT_EQ(s.values.size(), 5u);
  for (const complex& v : s.values) EXPECT_EQ(v, complex(0.0));
  EXPECT_EQ(s.sup_norm, 0.0);
  EXPECT_EQ(s.n_evals, 0);

  DispersiveReport r = dispersive_check(p, std::vector<double>{1, 2, 4});
  EXPECT_TRUE(r.pass);
  EXPECT_EQ(r.max_ratio, 0.0);
}

TEST(Fpde, KleinGordonReducesToSine) {
  KGProblem p;
  p.alpha = 2;
  p.mu = 1;
  p.x_grid = UniformGrid::parse("-5:5:5");
  PdeConfig cfg;
  cfg.tol = 1e-10;
  for (double t : {0.5, 3.0}) {
    FieldSnapshot s = kg_solve(p, t, cfg);
    for (std::size_t j = 0; j < s.x.size(); ++j) {
      auto kernel = [&](double xi) {
        double w = std::sqrt(xi * xi + 1);
        return complex(std::sin(t * w) / w);
      };
      EXPECT_LT(std::abs(s.values[j] - reference(s.x[j], kernel, p.psi_hat)), 1e-9) << t << " " << s.x[j];
    }
  }
}

TEST(Fpde, SchrodingerReducesToExponential) {
  SchrodingerProblem p;
  p.alpha = 1;
  p.gamma = 0;
  p.mu = 1;
  p.x_grid = UniformGrid::parse("-5:5:5");
  PdeConfig cfg;
  cfg.tol = 1e-10;
  for (double t : {0.5, 3.0}) {
    FieldSnapshot s = schrodinger_solve(p, t, cfg);
    for (std::size_t j = 0; j < s.x.size(); ++j) {
      auto kernel = [&](double xi) {
        double w = xi * xi + 1;
        return (std::polar(1.0, w * t) - 1.0) / complex(0, w);
      };
      EXPECT_LT(std::abs(s.values[j] - reference(s.x[j], kernel, p.psi_hat)), 1e-9) << t << " " << s.x[j];
    }
  }
}

TEST(Fpde, PinnedKleinGordon) {
  KGProblem p;
  p.x_grid = UniformGrid::parse("-2:2:3");
  FieldSnapshot s = kg_solve(p, 1.0);
  EXPECT_LT(std::abs(s.values[0] - kKgAt2), s.quad_error + 1e-11);
  EXPECT_LT(std::abs(s.values[1] - kKgAt0), s.quad_error + 1e-11);
  EXPECT_LT(std::abs(s.values[2] - kKgAt2), s.quad_error + 1e-11);
  EXPECT_LE(s.quad_error, 1e-9);
  EXPECT_NEAR(s.sup_norm, std::abs(kKgAt0), 1e-9);
}

TEST(Fpde, PinnedSchrodinger) {
  SchrodingerProblem p;
  p.x_grid = UniformGrid::parse("-2:2:3");
  FieldSnapshot s = schrodinger_solve(p, 2.0);
  EXPECT_LT(std::abs(s.values[0] - kSchAt2), s.quad_error + 1e-11);
  EXPECT_LT(std::abs(s.values[1] - kSchAt0), s.quad_error + 1e-11);
  EXPECT_LT(std::abs(s.values[2] - kSchAt2), s.quad_error + 1e-11);
}

TEST(FpdeProperty, EvenDataGivesEvenField) {
  KGProblem p;
  p.x_grid = UniformGrid::parse("-4:4:9");
  FieldSnapshot s = kg_solve(p, 2.0);
  for (int j = 0; j < 4; ++j) EXPECT_LT(std::abs(s.values[j] - s.values[8 - j]), 2 * s.quad_error);
}

TEST(FpdeProperty, SelfConvergence) {
  SchrodingerProblem p;
  p.x_grid = UniformGrid::parse("-3:3:7");
  PdeConfig loose, tight;
  loose.tol = 1e-6;
  tight.tol = 1e-10;
  FieldSnapshot a = schrodinger_solve(p, 1.5, loose), b = schrodinger_solve(p, 1.5, tight);
  for (std::size_t j = 0; j < a.x.size(); ++j) EXPECT_LE(std::abs(a.values[j] - b.values[j]), 2 * loose.tol);
  EXPECT_LE(a.quad_error, loose.tol);
  EXPECT_LE(b.quad_error, tight.tol);
}

TEST(Dispersive, EnvelopeFormulas) {
  EXPECT_DOUBLE_EQ(kg_envelope(1.5, 1.0), std::pow(2.0, -0.5));
  EXPECT_DOUBLE_EQ(kg_envelope(2.0, 3.0), 0.75);
  EXPECT_DOUBLE_EQ(schrodinger_envelope(0.8, 0.3, 1.0), std::pow(2.0, -0.5));
  EXPECT_NEAR(schrodinger_envelope(1.0, 0.0, 1e6), 1.0, 1e-6);
}

TEST(Dispersive, ShortRunPasses) {
  KGProblem p;
  p.x_grid = UniformGrid::parse("-10:10:41");
  std::vector<double> ts{1, 3, 10};
  DispersiveReport r = dispersive_check(p, ts);
  EXPECT_EQ(r.model, "kg");
  EXPECT_TRUE(r.pass);
  EXPECT_NEAR(r.psi_hat_l1, std::sqrt(2 * pi), 1e-12);
  ASSERT_EQ(r.ratios.size(), 3u);
  for (std::size_t i = 0; i < 3; ++i) EXPECT_DOUBLE_EQ(r.ratios[i], r.sup_norms[i] / r.envelopes[i]);
}

TEST(Dispersive, Validation) {
  KGProblem p;
  std::vector<double> bad{2, 1};
  EXPECT_EQ(kind_of([&] { dispersive_check(p, bad); }), ErrorKind::InvalidArgument);
  EXPECT_EQ(kind_of([&] { dispersive_check(p, std::vector<double>{}); }), ErrorKind::InvalidArgument);
}

TEST(FpdeErrors, Validation) {
  KGProblem kg;
  kg.alpha = 1.0;
  EXPECT_EQ(kind_of([&] { kg_solve(kg, 1); }), ErrorKind::InvalidArgument);
  kg = KGProblem{};
  EXPECT_EQ(kind_of([&] { kg_solve(kg, 0); }), ErrorKind::InvalidArgument);
  kg.psi_hat = Amplitude::one();
  EXPECT_EQ(kind_of([&] { kg_solve(kg, 1); }), ErrorKind::InvalidArgument);
  SchrodingerProblem s;
  s.gamma = 0.8;
  EXPECT_EQ(kind_of([&] { schrodinger_solve(s, 1); }), ErrorKind::InvalidArgument);
  s = SchrodingerProblem{};
  s.mu = 0;
  EXPECT_EQ(kind_of([&] { schrodinger_solve(s, 1); }), ErrorKind::InvalidArgument);
  EXPECT_EQ(kind_of([] { UniformGrid::parse("1:0:3"); }), ErrorKind::ParseError);
}

TEST(Fpde, GridGrammar) {
  UniformGrid g = UniformGrid::parse("-10:10:401");
  EXPECT_EQ(g, UniformGrid{});
  EXPECT_EQ(UniformGrid::parse(g.to_string()), g);
  auto pts = UniformGrid::parse("3:3:1").points();
  ASSERT_EQ(pts.size(), 1u);
  EXPECT_EQ(pts[0], 3);
}

TEST(Fpde, GaussianTransform) {
  Amplitude h = gaussian_transform(Amplitude::gaussian(2.0, 3.0));
  EXPECT_EQ(h, Amplitude::gaussian(0.5, 3.0 * 2.0 * std::sqrt(2 / pi)));
  // (1/pi) integral of e^{-i y xi} e^{-y^2/8} dy at xi = 0.7
  double direct = 3.0 / pi * std::sqrt(8 * pi) * std::exp(-2.0 * 0.49);
  EXPECT_NEAR(h.value(0.7), direct, 1e-14);
  EXPECT_EQ(kind_of([] { gaussian_transform(Amplitude::one()); }), ErrorKind::InvalidArgument);
}
