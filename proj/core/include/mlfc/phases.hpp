#pragma once

#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace mlfc {

// Integration domain: a finite interval [a, b] or the whole real line. For the
// whole line `truncation` is the half-width R actually integrated (0 = pick R
// from the amplitude tail).
struct Domain {
  enum class Kind { Interval, WholeLine };
  Kind kind = Kind::Interval;
  double a = 0.0;
  double b = 1.0;
  double truncation = 0.0;

  static Domain interval(double a, double b);
  static Domain whole_line(double truncation = 0.0);

  bool finite() const { return kind == Kind::Interval; }
  double lo() const;
  double hi() const;

  // "a,b" | "line" | "line:R"
  std::string to_string() const;
  static Domain parse(std::string_view text);
  bool operator==(const Domain&) const = default;
};

// p-th power of (x - shift), scaled and offset: scale (x - shift)^power + offset.
// Every derivative of every phase family has this form.
struct PowerForm {
  double scale = 0.0;
  double shift = 0.0;
  int power = 0;
  double offset = 0.0;

  double eval(double x) const;
};

// Range of a PowerForm over a domain; bounds may be infinite.
struct ValueRange {
  double lo = 0.0;
  double hi = 0.0;
  bool contains_zero() const { return lo <= 0.0 && hi >= 0.0; }
};

class Phase {
 public:
  enum class Kind { Affine, Monomial, Quadratic, ShiftedPower, MassShell };

  static constexpr int kMaxOrder = 8;
  static constexpr int kMaxPower = 12;

  // a x + b
  static Phase affine(double a, double b);
  // x^k / k! + c
  static Phase monomial(int k, double c);
  // x^2 + c
  static Phase quadratic(double c);
  // (x - c)^k
  static Phase shifted_power(int k, double c);
  // x^2 + mu, mu > 0
  static Phase mass_shell(double mu);

  Kind kind() const { return kind_; }
  int degree() const;

  // order-th derivative; order in [0, 8], else UnsupportedOrder.
  double eval(double x, int order = 0) const;
  PowerForm derivative_form(int order) const;

  // Exact range of the order-th derivative on the domain.
  ValueRange derivative_range(int order, const Domain& d) const;

  // Roots of phi' (resp. phi) strictly inside (lo, hi), ascending.
  std::vector<double> critical_points(double lo, double hi) const;
  std::vector<double> zeros(double lo, double hi) const;

  std::string to_string() const;
  static Phase parse(std::string_view text);
  bool operator==(const Phase&) const = default;

 private:
  Phase(Kind kind, int k, double p1, double p2) : kind_(kind), k_(k), p1_(p1), p2_(p2) {}

  Kind kind_ = Kind::Affine;
  int k_ = 1;
  double p1_ = 1.0;
  double p2_ = 0.0;
};

double phase_eval(const Phase& phase, double x, int order);

struct PhaseCert {
  int k = 1;
  Domain interval;
  double inf_abs = 0.0;          // inf |phi^(k)|
  double witness = 0.0;          // point attaining inf_abs
  bool monotone_deriv = false;   // phi' monotone on the domain
  double inf_abs_phase = 0.0;    // inf |phi|
  double inf_abs_deriv = 0.0;    // inf |phi'|
  bool invertible = false;       // phi strictly monotone on the domain
};

// Exact infima without judging them.
PhaseCert analyze(const Phase& phase, int k, const Domain& d);

// As analyze, but NotCertifiable unless inf |phi^(k)| >= 1.
PhaseCert certify(const Phase& phase, int k, const Domain& d);

// inf |f| over [lo, hi] (bounds may be infinite) with the attaining point.
std::pair<double, double> power_form_inf_abs(const PowerForm& f, double lo, double hi);
ValueRange power_form_range(const PowerForm& f, double lo, double hi);

class Amplitude {
 public:
  enum class Kind { One, Indicator, Gaussian, Poly, SmoothBump };

  static Amplitude one();
  // 1 on the closed interval [a, b]
  static Amplitude indicator(double a, double b);
  // scale exp(-x^2 / (2 sigma^2))
  static Amplitude gaussian(double sigma, double scale = 1.0);
  // coeffs[0] + coeffs[1] x + ...
  static Amplitude poly(std::vector<double> coeffs);
  // exp(-1/(1-u^2)), u = (2x - a - b)/(b - a), zero outside (a, b)
  static Amplitude smooth_bump(double a, double b);

  Kind kind() const { return kind_; }
  const std::vector<double>& coeffs() const { return coeffs_; }
  double param_a() const { return a_; }
  double param_b() const { return b_; }

  double value(double x) const;
  double derivative(double x) const;

  bool is_zero() const;
  // Smooth on [lo, hi] (an Indicator is, if no edge lies strictly inside).
  bool is_c1_on(double lo, double hi) const;
  // Identically 1 on [lo, hi].
  bool is_one_on(double lo, double hi) const;

  // Closed support hull; infinite for One, Gaussian and nonzero Poly.
  std::pair<double, double> support() const;
  // Jump or kink locations the quadrature should respect.
  std::vector<double> breakpoints() const;

  // L1 norm on the real line (inf when not integrable).
  double l1_norm() const;
  double l1_norm(double lo, double hi) const;
  // |psi(b)| + total variation on [lo, hi] (for C1 amplitudes, the integral of |psi'|).
  double boundary_functional(double lo, double hi) const;
  // Integral of |psi| over |x| > R.
  double tail_mass(double r) const;
  // Smallest R (to a few digits) with tail_mass(R) <= eps; inf if none.
  double truncation_for(double eps) const;
  // sup |psi| over the real line.
  double sup_abs() const;

  std::string to_string() const;
  static Amplitude parse(std::string_view text);
  bool operator==(const Amplitude&) const = default;

 private:
  Amplitude(Kind kind, double a, double b, std::vector<double> c = {})
      : kind_(kind), a_(a), b_(b), coeffs_(std::move(c)) {}

  Kind kind_ = Kind::One;
  double a_ = 0.0;
  double b_ = 0.0;
  std::vector<double> coeffs_;
};

// Integral of exp(-1/(1-u^2)) over (-1, 1).
inline constexpr double kSmoothBumpMass = 0.44399381616807943782;

}  // namespace mlfc
