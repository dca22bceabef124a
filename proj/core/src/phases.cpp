#include "mlfc/phases.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <numbers>

#include "mlfc/error.hpp"
#include "mlfc/text.hpp"

namespace mlfc {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

double ipow(double t, int p) {
  double r = 1.0;
  for (int i = 0; i < p; ++i) r *= t;
  return r;
}

double factorial(int n) {
  double r = 1.0;
  for (int i = 2; i <= n; ++i) r *= i;
  return r;
}

// name[:key=value[,key=value]*] split into a name and a key map.
struct Spec {
  std::string name;
  std::map<std::string, std::string, std::less<>> kv;
};

Spec parse_spec(std::string_view text, std::string_view what) {
  text = trim(text);
  Spec s;
  size_t colon = text.find(':');
  s.name = std::string(trim(text.substr(0, colon)));
  if (s.name.empty()) fail(ErrorKind::ParseError, "empty " + std::string(what));
  if (colon == std::string_view::npos) return s;
  for (std::string_view item : split(text.substr(colon + 1), ',')) {
    item = trim(item);
    size_t eq = item.find('=');
    if (eq == std::string_view::npos) {
      fail(ErrorKind::ParseError, std::string(what) + " parameter without '=': '" + std::string(item) + "'");
    }
    std::string key(trim(item.substr(0, eq)));
    if (!s.kv.emplace(key, std::string(trim(item.substr(eq + 1)))).second) {
      fail(ErrorKind::ParseError, "duplicate " + std::string(what) + " parameter '" + key + "'");
    }
  }
  return s;
}

class KeyReader {
 public:
  KeyReader(Spec& s, std::string_view what) : s_(s), what_(what) {}

  double real(const char* key, double def) {
    auto it = s_.kv.find(key);
    if (it == s_.kv.end()) return def;
    double v = parse_double(it->second, what_ + "." + key);
    s_.kv.erase(it);
    return v;
  }

  int integer(const char* key, int def) {
    auto it = s_.kv.find(key);
    if (it == s_.kv.end()) return def;
    long v = parse_long(it->second, what_ + "." + key);
    s_.kv.erase(it);
    return static_cast<int>(v);
  }

  std::vector<double> list(const char* key) {
    auto it = s_.kv.find(key);
    if (it == s_.kv.end()) fail(ErrorKind::ParseError, what_ + " requires '" + key + "'");
    std::vector<double> out;
    for (auto part : split(it->second, ';')) out.push_back(parse_double(part, what_ + "." + key));
    s_.kv.erase(it);
    return out;
  }

  void done() const {
    if (!s_.kv.empty()) {
      fail(ErrorKind::ParseError, "unknown " + what_ + " parameter '" + s_.kv.begin()->first + "'");
    }
  }

 private:
  Spec& s_;
  std::string what_;
};

void require_finite(double v, const char* what) {
  if (!std::isfinite(v)) fail(ErrorKind::InvalidArgument, std::string(what) + " must be finite");
}

// Real roots of the polynomial strictly inside (lo, hi), ascending.
std::vector<double> poly_roots(std::vector<double> c, double lo, double hi) {
  while (!c.empty() && c.back() == 0.0) c.pop_back();
  if (c.size() <= 1) return {};
  double bound = 0.0;
  for (size_t i = 0; i + 1 < c.size(); ++i) bound = std::max(bound, std::fabs(c[i] / c.back()));
  bound += 1.0;
  lo = std::max(lo, -bound);
  hi = std::min(hi, bound);
  if (!(lo < hi)) return {};
  auto eval = [&](double x) {
    double r = 0.0;
    for (size_t i = c.size(); i-- > 0;) r = r * x + c[i];
    return r;
  };
  std::vector<double> d(c.size() - 1);
  for (size_t i = 1; i < c.size(); ++i) d[i - 1] = c[i] * static_cast<double>(i);
  std::vector<double> pts{lo};
  for (double x : poly_roots(d, lo, hi)) pts.push_back(x);
  pts.push_back(hi);
  std::vector<double> roots;
  for (size_t i = 0; i + 1 < pts.size(); ++i) {
    double a = pts[i], b = pts[i + 1];
    double fa = eval(a), fb = eval(b);
    if (fa == 0.0) {
      if (a > lo) roots.push_back(a);
      continue;
    }
    if ((fa < 0.0) == (fb < 0.0) || fb == 0.0) continue;
    for (int it = 0; it < 200 && b - a > 0.0; ++it) {
      double m = 0.5 * (a + b);
      if (m <= a || m >= b) break;
      double fm = eval(m);
      if ((fm < 0.0) == (fa < 0.0)) {
        a = m;
        fa = fm;
      } else {
        b = m;
      }
    }
    roots.push_back(0.5 * (a + b));
  }
  std::sort(roots.begin(), roots.end());
  roots.erase(std::unique(roots.begin(), roots.end()), roots.end());
  return roots;
}

double poly_eval(const std::vector<double>& c, double x) {
  double r = 0.0;
  for (size_t i = c.size(); i-- > 0;) r = r * x + c[i];
  return r;
}

double poly_deriv(const std::vector<double>& c, double x) {
  double r = 0.0;
  for (size_t i = c.size(); i-- > 1;) r = r * x + c[i] * static_cast<double>(i);
  return r;
}

double poly_antideriv(const std::vector<double>& c, double x) {
  double r = 0.0;
  for (size_t i = c.size(); i-- > 0;) r = r * x + c[i] / static_cast<double>(i + 1);
  return r * x;
}

std::vector<double> poly_derivative_coeffs(const std::vector<double>& c) {
  std::vector<double> d;
  for (size_t i = 1; i < c.size(); ++i) d.push_back(c[i] * static_cast<double>(i));
  return d;
}

double bump_unit(double u) { return std::fabs(u) < 1.0 ? std::exp(-1.0 / (1.0 - u * u)) : 0.0; }

// Integral of the unit bump over [u0, u1] within [-1, 1]; composite
// 20-point Gauss-Legendre on 64 panels (the integrand is flat at +-1).
double bump_unit_integral(double u0, double u1) {
  static const double x[10] = {0.0765265211334973337546404, 0.2277858511416450780804962,
                               0.3737060887154195606725482, 0.5108670019508270980043641,
                               0.6360536807265150254528367, 0.7463319064601507926143051,
                               0.8391169718222188233945291, 0.9122344282513259058677524,
                               0.9639719272779137912676661, 0.9931285991850949247861224};
  static const double w[10] = {0.1527533871307258506980843, 0.1491729864726037467878287,
                               0.1420961093183820513292983, 0.1316886384491766268984945,
                               0.1181945319615184173123774, 0.1019301198172404350367501,
                               0.0832767415767047487247581, 0.0626720483341090635695065,
                               0.0406014298003869413310400, 0.0176140071391521183118620};
  u0 = std::max(u0, -1.0);
  u1 = std::min(u1, 1.0);
  if (!(u0 < u1)) return 0.0;
  const int panels = 64;
  double h = (u1 - u0) / panels, s = 0.0;
  for (int p = 0; p < panels; ++p) {
    double c = u0 + (p + 0.5) * h, r = 0.5 * h;
    for (int i = 0; i < 10; ++i) s += w[i] * r * (bump_unit(c - r * x[i]) + bump_unit(c + r * x[i]));
  }
  return s;
}

// Total variation over [lo, hi] of a function nondecreasing left of `peak`
// and nonincreasing right of it.
template <class F>
double unimodal_variation(F f, double peak, double lo, double hi) {
  if (!(lo < hi)) return 0.0;
  if (hi <= peak || lo >= peak) return std::fabs(f(hi) - f(lo));
  return std::fabs(f(peak) - f(lo)) + std::fabs(f(peak) - f(hi));
}

}  // namespace

// ---------------------------------------------------------------- Domain

Domain Domain::interval(double a, double b) {
  if (!std::isfinite(a) || !std::isfinite(b) || !(a < b)) {
    fail(ErrorKind::InvalidArgument, "interval needs finite a < b");
  }
  Domain d;
  d.kind = Kind::Interval;
  d.a = a;
  d.b = b;
  return d;
}

Domain Domain::whole_line(double truncation) {
  if (!(truncation >= 0.0) || !std::isfinite(truncation)) {
    fail(ErrorKind::InvalidArgument, "whole-line truncation must be finite and >= 0");
  }
  Domain d;
  d.kind = Kind::WholeLine;
  d.a = 0.0;
  d.b = 0.0;
  d.truncation = truncation;
  return d;
}

double Domain::lo() const { return finite() ? a : -kInf; }
double Domain::hi() const { return finite() ? b : kInf; }

std::string Domain::to_string() const {
  if (finite()) return format_double(a) + "," + format_double(b);
  if (truncation > 0.0) return "line:" + format_double(truncation);
  return "line";
}

Domain Domain::parse(std::string_view text) {
  text = trim(text);
  if (text == "line") return whole_line();
  if (text.starts_with("line:")) return whole_line(parse_double(text.substr(5), "line truncation"));
  auto parts = split(text, ',');
  if (parts.size() != 2) fail(ErrorKind::ParseError, "domain must be 'a,b', 'line' or 'line:R'");
  return interval(parse_double(parts[0], "domain a"), parse_double(parts[1], "domain b"));
}

// ---------------------------------------------------------------- PowerForm

double PowerForm::eval(double x) const {
  if (scale == 0.0) return offset;
  return scale * ipow(x - shift, power) + offset;
}

ValueRange power_form_range(const PowerForm& f, double lo, double hi) {
  if (f.scale == 0.0) return {f.offset, f.offset};
  double tlo = lo - f.shift, thi = hi - f.shift;
  double ulo, uhi;
  if (f.power == 0) {
    ulo = uhi = 1.0;
  } else if (f.power % 2 == 1) {
    ulo = ipow(tlo, f.power);
    uhi = ipow(thi, f.power);
  } else {
    double alo = std::fabs(tlo), ahi = std::fabs(thi);
    if (tlo <= 0.0 && thi >= 0.0) {
      ulo = 0.0;
      uhi = ipow(std::max(alo, ahi), f.power);
    } else {
      ulo = ipow(std::min(alo, ahi), f.power);
      uhi = ipow(std::max(alo, ahi), f.power);
    }
  }
  double v1 = f.scale * ulo + f.offset, v2 = f.scale * uhi + f.offset;
  return {std::min(v1, v2), std::max(v1, v2)};
}

std::pair<double, double> power_form_inf_abs(const PowerForm& f, double lo, double hi) {
  auto clamp_witness = [&](double x) {
    if (std::isfinite(x)) return x;
    if (std::isfinite(lo)) return lo;
    if (std::isfinite(hi)) return hi;
    return 0.0;
  };
  ValueRange r = power_form_range(f, lo, hi);
  if (f.scale == 0.0 || f.power == 0) {
    double v = f.scale == 0.0 ? f.offset : f.scale + f.offset;
    return {std::fabs(v), clamp_witness(std::isfinite(lo) ? lo : 0.0)};
  }
  const double tlo = lo - f.shift, thi = hi - f.shift;
  if (r.contains_zero()) {
    // Root of scale t^p + offset = 0 inside [tlo, thi].
    double q = -f.offset / f.scale;
    double t = 0.0;
    if (f.power % 2 == 1) {
      t = std::copysign(std::pow(std::fabs(q), 1.0 / f.power), q);
    } else {
      double root = std::pow(std::max(q, 0.0), 1.0 / f.power);
      t = (root >= tlo && root <= thi) ? root : -root;
    }
    t = std::clamp(t, tlo, thi);
    return {0.0, clamp_witness(t + f.shift)};
  }
  // |f| is minimised at a finite endpoint or at t = 0 (even power).
  double best = kInf, arg = 0.0;
  auto consider = [&](double t) {
    if (!std::isfinite(t) || t < tlo || t > thi) return;
    double v = std::fabs(f.scale * ipow(t, f.power) + f.offset);
    if (v < best) {
      best = v;
      arg = t;
    }
  };
  consider(tlo);
  consider(thi);
  if (f.power % 2 == 0) consider(0.0);
  double exact = std::min(std::fabs(r.lo), std::fabs(r.hi));
  return {exact, clamp_witness(arg + f.shift)};
}

// ---------------------------------------------------------------- Phase

Phase Phase::affine(double a, double b) {
  require_finite(a, "affine a");
  require_finite(b, "affine b");
  return Phase(Kind::Affine, 1, a, b);
}

Phase Phase::monomial(int k, double c) {
  if (k < 1 || k > kMaxPower) fail(ErrorKind::InvalidArgument, "monomial k must lie in [1, 12]");
  require_finite(c, "monomial c");
  return Phase(Kind::Monomial, k, 1.0, c);
}

Phase Phase::quadratic(double c) {
  require_finite(c, "quadratic c");
  return Phase(Kind::Quadratic, 2, 1.0, c);
}

Phase Phase::shifted_power(int k, double c) {
  if (k < 1 || k > kMaxPower) fail(ErrorKind::InvalidArgument, "shifted_power k must lie in [1, 12]");
  require_finite(c, "shifted_power c");
  return Phase(Kind::ShiftedPower, k, 1.0, c);
}

Phase Phase::mass_shell(double mu) {
  if (!(mu > 0.0) || !std::isfinite(mu)) fail(ErrorKind::InvalidArgument, "mass_shell mu must be > 0");
  return Phase(Kind::MassShell, 2, 1.0, mu);
}

int Phase::degree() const {
  if (kind_ == Kind::Affine) return p1_ == 0.0 ? 0 : 1;
  return k_;
}

PowerForm Phase::derivative_form(int n) const {
  if (n < 0 || n > kMaxOrder) {
    fail(ErrorKind::UnsupportedOrder, "derivative order " + std::to_string(n) + " outside [0, 8]");
  }
  PowerForm f;
  switch (kind_) {
    case Kind::Affine:
      if (n == 0) f = {p1_, 0.0, 1, p2_};
      else if (n == 1) f = {0.0, 0.0, 0, p1_};
      break;
    case Kind::Monomial:
      if (n <= k_) f = {1.0 / factorial(k_ - n), 0.0, k_ - n, n == 0 ? p2_ : 0.0};
      break;
    case Kind::Quadratic:
    case Kind::MassShell:
      if (n == 0) f = {1.0, 0.0, 2, p2_};
      else if (n == 1) f = {2.0, 0.0, 1, 0.0};
      else if (n == 2) f = {0.0, 0.0, 0, 2.0};
      break;
    case Kind::ShiftedPower:
      if (n <= k_) f = {factorial(k_) / factorial(k_ - n), p2_, k_ - n, 0.0};
      break;
  }
  if (f.power == 0 && f.scale != 0.0) {
    f.offset += f.scale;
    f.scale = 0.0;
  }
  return f;
}

double Phase::eval(double x, int order) const { return derivative_form(order).eval(x); }

double phase_eval(const Phase& phase, double x, int order) { return phase.eval(x, order); }

ValueRange Phase::derivative_range(int order, const Domain& d) const {
  return power_form_range(derivative_form(order), d.lo(), d.hi());
}

namespace {

std::vector<double> form_roots(const PowerForm& f, double lo, double hi) {
  if (f.scale == 0.0 || f.power == 0) return {};
  double q = -f.offset / f.scale;
  std::vector<double> ts;
  if (f.power % 2 == 1) {
    ts.push_back(std::copysign(std::pow(std::fabs(q), 1.0 / f.power), q));
  } else if (q == 0.0) {
    ts.push_back(0.0);
  } else if (q > 0.0) {
    double r = std::pow(q, 1.0 / f.power);
    ts = {-r, r};
  }
  std::vector<double> out;
  for (double t : ts) {
    double x = t + f.shift;
    if (x > lo && x < hi) out.push_back(x);
  }
  return out;
}

}  // namespace

std::vector<double> Phase::critical_points(double lo, double hi) const {
  return form_roots(derivative_form(1), lo, hi);
}

std::vector<double> Phase::zeros(double lo, double hi) const {
  return form_roots(derivative_form(0), lo, hi);
}

std::string Phase::to_string() const {
  switch (kind_) {
    case Kind::Affine: return "affine:a=" + format_double(p1_) + ",b=" + format_double(p2_);
    case Kind::Monomial: return "monomial:k=" + std::to_string(k_) + ",c=" + format_double(p2_);
    case Kind::Quadratic: return "quadratic:c=" + format_double(p2_);
    case Kind::ShiftedPower: return "shifted_power:k=" + std::to_string(k_) + ",c=" + format_double(p2_);
    case Kind::MassShell: return "mass_shell:mu=" + format_double(p2_);
  }
  return "";
}

Phase Phase::parse(std::string_view text) {
  Spec s = parse_spec(text, "phase");
  KeyReader r(s, "phase " + s.name);
  Phase out = affine(1.0, 0.0);
  if (s.name == "affine") {
    double a = r.real("a", 1.0), b = r.real("b", 0.0);
    out = affine(a, b);
  } else if (s.name == "monomial") {
    int k = r.integer("k", 2);
    out = monomial(k, r.real("c", 0.0));
  } else if (s.name == "quadratic") {
    out = quadratic(r.real("c", 0.0));
  } else if (s.name == "shifted_power") {
    int k = r.integer("k", 2);
    out = shifted_power(k, r.real("c", 0.0));
  } else if (s.name == "mass_shell") {
    out = mass_shell(r.real("mu", 1.0));
  } else {
    fail(ErrorKind::ParseError, "unknown phase family '" + s.name + "'");
  }
  r.done();
  return out;
}

PhaseCert analyze(const Phase& phase, int k, const Domain& d) {
  if (k < 1 || k > Phase::kMaxOrder) {
    fail(ErrorKind::UnsupportedOrder, "certificate order k=" + std::to_string(k) + " outside [1, 8]");
  }
  PhaseCert c;
  c.k = k;
  c.interval = d;
  const double lo = d.lo(), hi = d.hi();
  auto [inf_k, wit] = power_form_inf_abs(phase.derivative_form(k), lo, hi);
  c.inf_abs = inf_k;
  c.witness = wit;
  c.inf_abs_phase = power_form_inf_abs(phase.derivative_form(0), lo, hi).first;
  c.inf_abs_deriv = power_form_inf_abs(phase.derivative_form(1), lo, hi).first;
  ValueRange r2 = phase.derivative_range(2, d);
  c.monotone_deriv = r2.lo >= 0.0 || r2.hi <= 0.0;
  PowerForm d1 = phase.derivative_form(1);
  ValueRange r1 = power_form_range(d1, lo, hi);
  bool nonzero = d1.scale != 0.0 || d1.offset != 0.0;
  // A nonzero polynomial derivative of one sign vanishes only at isolated points.
  c.invertible = nonzero && (r1.lo >= 0.0 || r1.hi <= 0.0);
  return c;
}

PhaseCert certify(const Phase& phase, int k, const Domain& d) {
  PhaseCert c = analyze(phase, k, d);
  if (!(c.inf_abs >= 1.0)) {
    fail(ErrorKind::NotCertifiable,
         "inf |phi^(" + std::to_string(k) + ")| = " + format_double(c.inf_abs) + " < 1 for " +
             phase.to_string() + " on " + d.to_string() + ", attained at x = " + format_double(c.witness));
  }
  return c;
}

// ---------------------------------------------------------------- Amplitude

Amplitude Amplitude::one() { return Amplitude(Kind::One, 0.0, 0.0); }

Amplitude Amplitude::indicator(double a, double b) {
  if (!std::isfinite(a) || !std::isfinite(b) || !(a < b)) {
    fail(ErrorKind::InvalidArgument, "indicator needs finite a < b");
  }
  return Amplitude(Kind::Indicator, a, b);
}

Amplitude Amplitude::gaussian(double sigma, double scale) {
  if (!(sigma > 0.0) || !std::isfinite(sigma)) fail(ErrorKind::InvalidArgument, "gaussian sigma must be > 0");
  require_finite(scale, "gaussian scale");
  return Amplitude(Kind::Gaussian, sigma, scale);
}

Amplitude Amplitude::poly(std::vector<double> coeffs) {
  if (coeffs.empty()) fail(ErrorKind::InvalidArgument, "poly needs at least one coefficient");
  for (double c : coeffs) require_finite(c, "poly coefficient");
  return Amplitude(Kind::Poly, 0.0, 0.0, std::move(coeffs));
}

Amplitude Amplitude::smooth_bump(double a, double b) {
  if (!std::isfinite(a) || !std::isfinite(b) || !(a < b)) {
    fail(ErrorKind::InvalidArgument, "smooth_bump needs finite a < b");
  }
  return Amplitude(Kind::SmoothBump, a, b);
}

double Amplitude::value(double x) const {
  switch (kind_) {
    case Kind::One: return 1.0;
    case Kind::Indicator: return (x >= a_ && x <= b_) ? 1.0 : 0.0;
    case Kind::Gaussian: return b_ * std::exp(-x * x / (2.0 * a_ * a_));
    case Kind::Poly: return poly_eval(coeffs_, x);
    case Kind::SmoothBump: return bump_unit((2.0 * x - a_ - b_) / (b_ - a_));
  }
  return 0.0;
}

double Amplitude::derivative(double x) const {
  switch (kind_) {
    case Kind::One:
    case Kind::Indicator: return 0.0;
    case Kind::Gaussian: return -x / (a_ * a_) * value(x);
    case Kind::Poly: return poly_deriv(coeffs_, x);
    case Kind::SmoothBump: {
      double u = (2.0 * x - a_ - b_) / (b_ - a_);
      if (std::fabs(u) >= 1.0) return 0.0;
      double s = 1.0 - u * u;
      return bump_unit(u) * (-2.0 * u / (s * s)) * (2.0 / (b_ - a_));
    }
  }
  return 0.0;
}

bool Amplitude::is_zero() const {
  if (kind_ == Kind::Gaussian) return b_ == 0.0;
  if (kind_ == Kind::Poly) return std::all_of(coeffs_.begin(), coeffs_.end(), [](double c) { return c == 0.0; });
  return false;
}

bool Amplitude::is_c1_on(double lo, double hi) const {
  if (kind_ != Kind::Indicator) return true;
  auto inside = [&](double e) { return e > lo && e < hi; };
  return !inside(a_) && !inside(b_);
}

bool Amplitude::is_one_on(double lo, double hi) const {
  switch (kind_) {
    case Kind::One: return true;
    case Kind::Indicator: return a_ <= lo && hi <= b_;
    case Kind::Poly:
      if (coeffs_[0] != 1.0) return false;
      return std::all_of(coeffs_.begin() + 1, coeffs_.end(), [](double c) { return c == 0.0; });
    default: return false;
  }
}

std::pair<double, double> Amplitude::support() const {
  if (is_zero()) return {0.0, 0.0};
  if (kind_ == Kind::Indicator || kind_ == Kind::SmoothBump) return {a_, b_};
  return {-kInf, kInf};
}

std::vector<double> Amplitude::breakpoints() const {
  if (kind_ == Kind::Indicator || kind_ == Kind::SmoothBump) return {a_, b_};
  return {};
}

double Amplitude::l1_norm() const {
  if (is_zero()) return 0.0;
  switch (kind_) {
    case Kind::One:
    case Kind::Poly: return kInf;
    case Kind::Indicator: return b_ - a_;
    case Kind::Gaussian: return std::fabs(b_) * a_ * std::sqrt(2.0 * std::numbers::pi);
    case Kind::SmoothBump: return 0.5 * (b_ - a_) * kSmoothBumpMass;
  }
  return kInf;
}

double Amplitude::l1_norm(double lo, double hi) const {
  if (!(lo < hi)) return 0.0;
  switch (kind_) {
    case Kind::One: return hi - lo;
    case Kind::Indicator: return std::max(0.0, std::min(hi, b_) - std::max(lo, a_));
    case Kind::Gaussian: {
      double s = a_ * std::numbers::sqrt2;
      return std::fabs(b_) * a_ * std::sqrt(0.5 * std::numbers::pi) * (std::erf(hi / s) - std::erf(lo / s));
    }
    case Kind::Poly: {
      if (!std::isfinite(lo) || !std::isfinite(hi)) return is_zero() ? 0.0 : kInf;
      std::vector<double> pts{lo};
      for (double r : poly_roots(coeffs_, lo, hi)) pts.push_back(r);
      pts.push_back(hi);
      double s = 0.0;
      for (size_t i = 0; i + 1 < pts.size(); ++i) {
        s += std::fabs(poly_antideriv(coeffs_, pts[i + 1]) - poly_antideriv(coeffs_, pts[i]));
      }
      return s;
    }
    case Kind::SmoothBump: {
      double scale = 0.5 * (b_ - a_);
      if (lo <= a_ && hi >= b_) return scale * kSmoothBumpMass;
      auto u = [&](double x) { return std::clamp((2.0 * x - a_ - b_) / (b_ - a_), -1.0, 1.0); };
      return scale * bump_unit_integral(u(lo), u(hi));
    }
  }
  return 0.0;
}

double Amplitude::boundary_functional(double lo, double hi) const {
  double end = std::fabs(value(hi));
  switch (kind_) {
    case Kind::One: return end;
    case Kind::Indicator: {
      double jumps = 0.0;
      if (a_ > lo && a_ < hi) jumps += 1.0;
      if (b_ > lo && b_ < hi) jumps += 1.0;
      return end + jumps;
    }
    case Kind::Gaussian:
      return end + unimodal_variation([&](double x) { return std::fabs(value(x)); }, 0.0, lo, hi);
    case Kind::SmoothBump:
      return end + unimodal_variation([&](double x) { return value(x); }, 0.5 * (a_ + b_), lo, hi);
    case Kind::Poly: {
      std::vector<double> pts{lo};
      for (double r : poly_roots(poly_derivative_coeffs(coeffs_), lo, hi)) pts.push_back(r);
      pts.push_back(hi);
      double tv = 0.0;
      for (size_t i = 0; i + 1 < pts.size(); ++i) tv += std::fabs(value(pts[i + 1]) - value(pts[i]));
      return end + tv;
    }
  }
  return end;
}

double Amplitude::tail_mass(double r) const {
  if (is_zero()) return 0.0;
  r = std::fabs(r);
  switch (kind_) {
    case Kind::One:
    case Kind::Poly: return kInf;
    case Kind::Gaussian:
      return std::fabs(b_) * a_ * std::sqrt(2.0 * std::numbers::pi) * std::erfc(r / (a_ * std::numbers::sqrt2));
    case Kind::Indicator:
    case Kind::SmoothBump: return l1_norm(a_, std::min(b_, -r)) + l1_norm(std::max(a_, r), b_);
  }
  return kInf;
}

double Amplitude::truncation_for(double eps) const {
  if (is_zero()) return 1.0;
  if (kind_ == Kind::Indicator || kind_ == Kind::SmoothBump) return std::max(std::fabs(a_), std::fabs(b_));
  if (kind_ != Kind::Gaussian) return kInf;
  double lo = 0.0, hi = a_;
  while (tail_mass(hi) > eps) {
    hi *= 2.0;
    if (hi > 1e6 * a_) return kInf;
  }
  for (int it = 0; it < 60; ++it) {
    double m = 0.5 * (lo + hi);
    if (tail_mass(m) > eps) lo = m; else hi = m;
  }
  return hi;
}

double Amplitude::sup_abs() const {
  if (is_zero()) return 0.0;
  switch (kind_) {
    case Kind::One:
    case Kind::Indicator: return 1.0;
    case Kind::Gaussian: return std::fabs(b_);
    case Kind::Poly: return coeffs_.size() == 1 ? std::fabs(coeffs_[0]) : kInf;
    case Kind::SmoothBump: return std::exp(-1.0);
  }
  return kInf;
}

std::string Amplitude::to_string() const {
  switch (kind_) {
    case Kind::One: return "one";
    case Kind::Indicator: return "indicator:a=" + format_double(a_) + ",b=" + format_double(b_);
    case Kind::Gaussian: {
      std::string s = "gaussian:sigma=" + format_double(a_);
      if (b_ != 1.0) s += ",scale=" + format_double(b_);
      return s;
    }
    case Kind::Poly: {
      std::string s = "poly:coeffs=";
      for (size_t i = 0; i < coeffs_.size(); ++i) s += (i ? ";" : "") + format_double(coeffs_[i]);
      return s;
    }
    case Kind::SmoothBump: return "smooth_bump:a=" + format_double(a_) + ",b=" + format_double(b_);
  }
  return "";
}

Amplitude Amplitude::parse(std::string_view text) {
  Spec s = parse_spec(text, "amplitude");
  KeyReader r(s, "amplitude " + s.name);
  Amplitude out = one();
  if (s.name == "one") {
  } else if (s.name == "indicator") {
    double a = r.real("a", 0.0), b = r.real("b", 1.0);
    out = indicator(a, b);
  } else if (s.name == "gaussian") {
    double sigma = r.real("sigma", 1.0), scale = r.real("scale", 1.0);
    out = gaussian(sigma, scale);
  } else if (s.name == "poly") {
    out = poly(r.list("coeffs"));
  } else if (s.name == "smooth_bump") {
    double a = r.real("a", 0.0), b = r.real("b", 1.0);
    out = smooth_bump(a, b);
  } else {
    fail(ErrorKind::ParseError, "unknown amplitude family '" + s.name + "'");
  }
  r.done();
  return out;
}

}  // namespace mlfc
