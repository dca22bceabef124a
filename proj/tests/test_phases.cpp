#include <gtest/gtest.h>

#include <cmath>
#include <limits>

#include "mlfc/error.hpp"
#include "mlfc/phases.hpp"
#include "mlfc/quadrature.hpp"

using namespace mlfc;

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

std::vector<Phase> families() {
  return {Phase::affine(3, -1),          Phase::affine(-0.5, 2),       Phase::monomial(3, 0.25),
          Phase::monomial(5, -1),        Phase::quadratic(0),          Phase::quadratic(-2),
          Phase::shifted_power(4, 0.3), Phase::shifted_power(3, -0.7), Phase::mass_shell(1.5)};
}

// Composite Gauss-Legendre on [a, b].
double integrate(const std::function<double(double)>& f, double a, double b, int panels = 2000) {
  static const quad::Rule rule = quad::gauss_legendre(20);
  double h = (b - a) / panels, s = 0;
  for (int p = 0; p < panels; ++p) {
    double mid = a + (p + 0.5) * h;
    for (size_t q = 0; q < rule.nodes.size(); ++q) s += 0.5 * h * rule.weights[q] * f(mid + 0.5 * h * rule.nodes[q]);
  }
  return s;
}

}  // namespace

TEST(PhaseEval, Examples) {
  EXPECT_EQ(phase_eval(Phase::quadratic(0), 3, 1), 6);
  EXPECT_EQ(phase_eval(Phase::quadratic(0), 3, 2), 2);
  EXPECT_EQ(phase_eval(Phase::mass_shell(1), 0, 0), 1);
  EXPECT_EQ(kind_of([] { phase_eval(Phase::quadratic(0), 1, 9); }), ErrorKind::UnsupportedOrder);
}

TEST(Certify, Examples) {
  PhaseCert c = certify(Phase::quadratic(0), 2, Domain::interval(0, 1));
  EXPECT_EQ(c.inf_abs, 2);
  EXPECT_TRUE(c.monotone_deriv);
  EXPECT_EQ(kind_of([] { certify(Phase::quadratic(0), 1, Domain::interval(0, 1)); }), ErrorKind::NotCertifiable);
  PhaseCert line = analyze(Phase::affine(3, -1), 1, Domain::whole_line());
  EXPECT_EQ(line.inf_abs_deriv, 3);
  EXPECT_TRUE(line.invertible);
}

TEST(Certify, WitnessReported) {
  try {
    certify(Phase::quadratic(0), 1, Domain::interval(0, 1));
  } catch (const Error& e) {
    EXPECT_NE(std::string(e.what()).find("x = 0"), std::string::npos) << e.what();
  }
}

TEST(PhaseProperty, FiniteDifferencesMatchNextOrder) {
  for (const auto& ph : families())
    for (int order = 0; order < 6; ++order)
      for (double x : {-1.3, -0.2, 0.4, 1.7}) {
        const double h = 1e-4;
        double fd = (ph.eval(x + h, order) - ph.eval(x - h, order)) / (2 * h);
        double exact = ph.eval(x, order + 1);
        double scale = 1 + std::abs(ph.eval(x, order)) + std::abs(exact) + std::abs(ph.eval(x, std::min(order + 3, 8)));
        EXPECT_NEAR(fd, exact, 1e-6 * scale) << ph.to_string() << " order " << order << " x " << x;
      }
}

TEST(PhaseProperty, CertifiedBoundBelowSampledMinimum) {
  const Domain ds[] = {Domain::interval(0, 1), Domain::interval(-2, 1.5), Domain::interval(0.5, 3)};
  for (const auto& ph : families())
    for (const auto& d : ds)
      for (int k = 1; k <= 4; ++k) {
        PhaseCert c = analyze(ph, k, d);
        double sampled = std::numeric_limits<double>::infinity(), slope = 0;
        const double h = (d.b - d.a) / 9999.0;
        for (int i = 0; i < 10000; ++i) {
          double x = d.a + h * i;
          sampled = std::min(sampled, std::abs(ph.eval(x, k)));
          slope = std::max(slope, std::abs(ph.eval(x, k + 1)));
        }
        EXPECT_LE(c.inf_abs, sampled * (1 + 1e-12) + 1e-300) << ph.to_string() << " k " << k;
        // within one grid step of the true infimum
        EXPECT_GE(c.inf_abs, sampled - slope * h * (1 + 1e-9)) << ph.to_string() << " k " << k;
      }
}

TEST(PhaseProperty, MonotoneDerivativeFromSecondDerivative) {
  EXPECT_TRUE(analyze(Phase::shifted_power(3, 0), 1, Domain::interval(0, 1)).monotone_deriv);
  EXPECT_FALSE(analyze(Phase::shifted_power(3, 0.5), 1, Domain::interval(0, 1)).monotone_deriv);
  EXPECT_TRUE(analyze(Phase::affine(2, 0), 1, Domain::interval(0, 1)).monotone_deriv);
}

TEST(PhaseGrammar, RoundTrip) {
  for (const auto& ph : families()) {
    Phase back = Phase::parse(ph.to_string());
    EXPECT_EQ(back, ph);
    EXPECT_EQ(back.to_string(), ph.to_string());
  }
  EXPECT_EQ(Phase::parse("quadratic:c=0"), Phase::quadratic(0));
  EXPECT_EQ(kind_of([] { Phase::parse("cubic:c=1"); }), ErrorKind::ParseError);
  EXPECT_EQ(kind_of([] { Phase::parse("quadratic:q=1"); }), ErrorKind::ParseError);
  EXPECT_EQ(kind_of([] { Phase::parse("mass_shell:mu=-1"); }), ErrorKind::InvalidArgument);
}

TEST(AmplitudeGrammar, RoundTrip) {
  std::vector<Amplitude> amps{Amplitude::one(), Amplitude::indicator(-1, 2), Amplitude::gaussian(0.7),
                              Amplitude::gaussian(2, 3), Amplitude::poly({1, -2, 0.5}), Amplitude::smooth_bump(0, 1)};
  for (const auto& a : amps) {
    Amplitude back = Amplitude::parse(a.to_string());
    EXPECT_EQ(back, a);
    EXPECT_EQ(back.to_string(), a.to_string());
  }
  EXPECT_EQ(Amplitude::parse("gaussian:sigma=1"), Amplitude::gaussian(1));
}

TEST(DomainGrammar, RoundTrip) {
  for (auto d : {Domain::interval(0, 1), Domain::interval(-2.5, 3), Domain::whole_line(), Domain::whole_line(7.5)})
    EXPECT_EQ(Domain::parse(d.to_string()), d);
  EXPECT_EQ(kind_of([] { Domain::parse("1,0"); }), ErrorKind::InvalidArgument);
}

TEST(AmplitudeProperty, L1NormsMatchQuadrature) {
  EXPECT_NEAR(Amplitude::gaussian(0.7).l1_norm(), integrate([](double x) { return std::exp(-x * x / 0.98); }, -20, 20),
              1e-10);
  Amplitude bump = Amplitude::smooth_bump(-1, 2);
  EXPECT_NEAR(bump.l1_norm(), integrate([&](double x) { return std::abs(bump.value(x)); }, -1, 2), 1e-10);
  EXPECT_NEAR(bump.l1_norm(), 1.5 * kSmoothBumpMass, 1e-15);
  Amplitude p = Amplitude::poly({1, -2, 0.5});
  EXPECT_NEAR(p.l1_norm(-1, 3), integrate([&](double x) { return std::abs(p.value(x)); }, -1, 3, 20000), 1e-10);
  EXPECT_EQ(Amplitude::indicator(0.5, 2).l1_norm(), 1.5);
  EXPECT_TRUE(std::isinf(Amplitude::one().l1_norm()));
}

TEST(AmplitudeProperty, BoundaryFunctional) {
  Amplitude p = Amplitude::poly({0, 0, 1});  // x^2 on [-1, 2]: |psi(2)| + 1 + 4
  EXPECT_NEAR(p.boundary_functional(-1, 2), 4 + 1 + 4, 1e-12);
  Amplitude bump = Amplitude::smooth_bump(0, 1);
  EXPECT_NEAR(bump.boundary_functional(0, 1), 2 * std::exp(-1.0), 1e-12);
}

TEST(AmplitudeProperty, DerivativeMatchesFiniteDifference) {
  for (const auto& a : {Amplitude::gaussian(0.8, 2), Amplitude::poly({1, -2, 0.5}), Amplitude::smooth_bump(-1, 1)})
    for (double x : {-0.6, 0.1, 0.7}) {
      const double h = 1e-5;
      EXPECT_NEAR((a.value(x + h) - a.value(x - h)) / (2 * h), a.derivative(x), 1e-7) << a.to_string();
    }
}

TEST(AmplitudeProperty, TailMassAndTruncation) {
  Amplitude g = Amplitude::gaussian(1);
  double r = g.truncation_for(1e-12);
  EXPECT_LE(g.tail_mass(r), 1e-12);
  EXPECT_GT(g.tail_mass(0.9 * r), 1e-12);
  EXPECT_EQ(Amplitude::smooth_bump(0, 1).tail_mass(2), 0.0);
}
