#include "mlfc/mittag_leffler.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "ml_internal.hpp"
#include "mlfc/error.hpp"
#include "mlfc/text.hpp"

namespace mlfc {
namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon();
constexpr double kTaylorMaxW = 30.0;
constexpr double kRegimeEqTol = 1e-12;

bool near(double a, double b) { return std::fabs(a - b) <= kRegimeEqTol * std::max(1.0, std::fabs(b)); }

std::string fmt_z(complex z) {
  return "(" + format_double(z.real()) + ", " + format_double(z.imag()) + ")";
}

}  // namespace

void MLParams::validate() const {
  if (!(alpha > 0.0 && alpha <= 2.0)) {
    fail(ErrorKind::InvalidArgument, "alpha must lie in (0, 2], got " + format_double(alpha));
  }
  if (!std::isfinite(beta)) fail(ErrorKind::InvalidArgument, "beta must be finite");
}

std::uint32_t MLParams::regime_tags() const {
  std::uint32_t t = 0;
  if (beta > alpha + 1.0 || near(beta, alpha + 1.0)) t |= kBetaGeAlphaPlus1;
  else if (beta > 1.0 && !near(beta, 1.0)) t |= kBetaBetween1AndAlphaPlus1;
  if (near(beta, 1.0)) t |= kBetaEq1;
  if (near(beta, alpha)) t |= kBetaEqAlpha;
  if (near(alpha, 2.0)) t |= kAlphaEq2;
  if (t == 0) t = kOther;
  return t;
}

std::string regime_tags_string(std::uint32_t tags) {
  static const std::pair<RegimeTag, const char*> names[] = {
      {kBetaGeAlphaPlus1, "beta>=alpha+1"},
      {kBetaBetween1AndAlphaPlus1, "1<beta<alpha+1"},
      {kBetaEq1, "beta=1"},
      {kBetaEqAlpha, "beta=alpha"},
      {kAlphaEq2, "alpha=2"},
      {kOther, "other"},
  };
  std::string s;
  for (const auto& [tag, name] : names) {
    if (tags & tag) {
      if (!s.empty()) s += ",";
      s += name;
    }
  }
  return s;
}

double rgamma(double x) {
  if (x <= 0.0 && x == std::floor(x)) return 0.0;
  if (x > 170.0) return std::exp(-std::lgamma(x));
  if (x < -170.0) {
    // Reflection: 1/Gamma(x) = Gamma(1-x) sin(pi x) / pi.
    double s = std::sin(std::numbers::pi * (x - 2.0 * std::floor(0.5 * x)));
    return std::exp(std::lgamma(1.0 - x)) * s / std::numbers::pi;
  }
  return 1.0 / std::tgamma(x);
}

complex i_pow(double alpha) {
  if (alpha == 1.0) return {0.0, 1.0};
  if (alpha == 2.0) return {-1.0, 0.0};
  return std::polar(1.0, 0.5 * std::numbers::pi * alpha);
}

const char* to_string(MittagLeffler::Route r) {
  switch (r) {
    case MittagLeffler::Route::Zero: return "zero";
    case MittagLeffler::Route::Taylor: return "taylor";
    case MittagLeffler::Route::Asymptotic: return "asymptotic";
    case MittagLeffler::Route::Multiprecision: return "multiprecision";
  }
  return "unknown";
}

MittagLeffler::MittagLeffler(MLParams p, double rel_tol, MLConfig cfg)
    : p_(p), rel_tol_(rel_tol), cfg_(cfg) {
  p_.validate();
  if (!(rel_tol >= 1e-14 && rel_tol <= 1e-4)) {
    fail(ErrorKind::InvalidArgument, "rel_tol must lie in [1e-14, 1e-4]");
  }
  // Enough terms to resolve |z|^{1/alpha} <= kTaylorMaxW well below eps.
  const int n = static_cast<int>(std::ceil(200.0 / p_.alpha)) + 24;
  taylor_coef_.resize(n + 1);
  taylor_coef_err_.resize(n + 1);
  for (int k = 0; k <= n; ++k) {
    double x = p_.alpha * k + p_.beta;
    taylor_coef_[k] = rgamma(x);
    double lg = x > 0.0 ? std::fabs(std::lgamma(x)) : 0.0;
    taylor_coef_err_[k] = x > 170.0 ? (lg + 10.0) * 2.0 * kEps : 10.0 * kEps;
  }
  alg_coef_.resize(23);
  for (int k = 0; k < 23; ++k) alg_coef_[k] = rgamma(p_.beta - p_.alpha * k);
}

bool MittagLeffler::try_taylor(complex z, Result& out) const {
  const double az = std::abs(z);
  const double log_az = std::log(az);
  const int n = static_cast<int>(taylor_coef_.size()) - 1;
  complex s = 0.0, zk = 1.0;
  double err = 0.0;
  for (int k = 0; k < n; ++k) {
    complex t = zk * taylor_coef_[k];
    s += t;
    double at = std::abs(t);
    err += at * (2.3 * k * kEps + taylor_coef_err_[k]) + 1.5 * kEps * std::abs(s);
    double x = p_.alpha * k + p_.beta;
    if (x > 0.0 && taylor_coef_[k] != 0.0) {
      double lr = log_az + std::lgamma(x) - std::lgamma(x + p_.alpha);
      if (lr < 0.0) {
        double r = std::exp(lr);
        double tail = at * r / (1.0 - r);
        if (tail <= 1e-3 * rel_tol_ * std::abs(s) || tail <= kEps * std::abs(s) ||
            at == 0.0) {
          double total = err + tail;
          if (!(total <= rel_tol_ * std::abs(s))) return false;
          out.value = s;
          out.est_rel_error = total / std::abs(s);
          out.route = Route::Taylor;
          return true;
        }
      }
    }
    zk *= z;
  }
  return false;
}

bool MittagLeffler::try_asymptotic(complex z, Result& out, double tol) const {
  detail::AsymptoticParts a = detail::asymptotic_parts(p_, z, -1, alg_coef_.data());
  if (a.overflow) {
    fail(ErrorKind::NonFinite, "E_{alpha,beta}(z) overflows double at z = " + fmt_z(z) +
                                   ", regime " + regime_tags_string(p_.regime_tags()));
  }
  double est = a.truncation + a.stokes + a.rounding;
  double mag = std::abs(a.value);
  if (!(2.0 * est <= tol * mag)) return false;
  out.value = a.value;
  out.est_rel_error = 2.0 * est / mag;
  out.route = Route::Asymptotic;
  return true;
}

bool MittagLeffler::try_multiprecision(complex z, Result& out) const {
  const int digits = static_cast<int>(std::ceil(-std::log10(rel_tol_))) + 2;
  const double az = std::abs(z);
  const double w = std::pow(az, 1.0 / p_.alpha);
  double g = w * 0.4342944819032518 + std::log10(1.0 + az) + 4.0;
  if (!(g <= cfg_.guard_cap_digits)) return false;
  try {
    double est = 0.0;
    out.value = detail::certified_series(p_, z, digits, static_cast<int>(std::ceil(g)),
                                         cfg_.guard_cap_digits, cfg_.max_series_terms, &est);
    out.est_rel_error = est;
    out.route = Route::Multiprecision;
    return true;
  } catch (const Error& e) {
    if (e.kind() == ErrorKind::PrecisionExhausted) return false;
    throw;
  }
}

MittagLeffler::Result MittagLeffler::evaluate(complex z) const {
  if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) {
    fail(ErrorKind::InvalidArgument, "z must be finite");
  }
  Result out;
  if (z == complex(0.0, 0.0)) {
    out.value = rgamma(p_.beta);
    out.route = Route::Zero;
    return out;
  }
  const double az = std::abs(z);
  const double w = std::pow(az, 1.0 / p_.alpha);
  if (az <= cfg_.r0 && w <= kTaylorMaxW && try_taylor(z, out)) return out;
  if (az >= 1.0 && try_asymptotic(z, out, rel_tol_)) return out;
  if (try_multiprecision(z, out)) return out;
  fail(ErrorKind::ToleranceUnreachable,
       "cannot certify rel_tol " + format_double(rel_tol_) + " at z = " + fmt_z(z) +
           ", regime " + regime_tags_string(p_.regime_tags()));
}

MittagLeffler::Result MittagLeffler::evaluate_relaxed(complex z, double soft_rel, double max_rel) const {
  if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) {
    fail(ErrorKind::InvalidArgument, "z must be finite");
  }
  Result out;
  if (z == complex(0.0, 0.0)) {
    out.value = rgamma(p_.beta);
    out.route = Route::Zero;
    return out;
  }
  const double az = std::abs(z);
  const double w = std::pow(az, 1.0 / p_.alpha);
  if (az <= cfg_.r0 && w <= kTaylorMaxW && try_taylor(z, out)) return out;
  if (az >= 1.0 && try_asymptotic(z, out, std::max(rel_tol_, soft_rel))) return out;
  if (try_multiprecision(z, out)) return out;
  if (az >= 1.0 && try_asymptotic(z, out, std::max(rel_tol_, max_rel))) return out;
  fail(ErrorKind::ToleranceUnreachable,
       "cannot reach relative accuracy " + format_double(max_rel) + " at z = " + fmt_z(z) +
           ", regime " + regime_tags_string(p_.regime_tags()));
}

complex ml_eval(const MLParams& p, complex z, double rel_tol, const MLConfig& cfg) {
  return MittagLeffler(p, rel_tol, cfg)(z);
}

double ml_derivative_check(double alpha, complex z, double h) {
  if (!(h >= 1e-8 && h <= 1e-4)) fail(ErrorKind::InvalidArgument, "h must lie in [1e-8, 1e-4]");
  MLParams p1{alpha, 1.0}, pa{alpha, alpha};
  p1.validate();
  complex fp = ml_eval_oracle(p1, z + h, 50);
  complex fm = ml_eval_oracle(p1, z - h, 50);
  complex d = ml_eval_oracle(pa, z, 50) / alpha;
  return std::abs((fp - fm) / (2.0 * h) - d);
}

double ml_derivative_scale(double alpha, complex z) {
  // Cauchy estimate on the unit circle: |f'''| <= 6 max |E_{a,1}| <= 6 E_{a,1}(|z|+1),
  // and the central difference error is h^2 |f'''| / 6.
  return std::abs(ml_eval_oracle(MLParams{alpha, 1.0}, complex(std::abs(z) + 1.0, 0.0), 50));
}

}  // namespace mlfc
