#include <cmath>
#include <limits>
#include <numbers>
#include <vector>

#include "ml_internal.hpp"
#include "mlfc/error.hpp"
#include "mlfc/text.hpp"

namespace mlfc::detail {
namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kEps = std::numeric_limits<double>::epsilon();
constexpr double kLogMax = 709.78;
constexpr int kMaxAlgTerms = 20;

bool is_integer(double x) { return std::isfinite(x) && x == std::floor(x); }

struct ExpTerm {
  complex value;
  double log_abs = -INFINITY;
  double rounding = 0.0;
};

constexpr long double kPiL = 3.141592653589793238462643383279502884L;
constexpr long double kEpsL = std::numeric_limits<long double>::epsilon();

// c s^{1-beta} exp(sign s) with s = w e^{i phi}, extra phase shift, as one
// exponential in extended precision. log_c = log of the constant c; w_rel
// bounds the relative error of w, which the exponent amplifies by w.
ExpTerm pole_term(long double log_c, double beta, long double logw, long double w, long double w_rel,
                  long double phi, double sign, long double shift) {
  long double a = (1.0L - beta) * logw + sign * w * std::cos(phi);
  long double b = (1.0L - beta) * phi + sign * w * std::sin(phi) + shift;
  ExpTerm t;
  t.log_abs = static_cast<double>(a + log_c);
  if (t.log_abs > kLogMax) return t;
  long double mag = std::exp(a + log_c);
  t.value = complex(static_cast<double>(mag * std::cos(b)), static_cast<double>(mag * std::sin(b)));
  long double rel = kEpsL * (std::fabs(a) + std::fabs(b) + 8.0L) + w * w_rel +
                    w * kEpsL * (std::fabs(phi) + 1.0L);
  t.rounding = static_cast<double>(mag * rel) + kEps * std::abs(t.value);
  return t;
}

}  // namespace

AsymptoticParts asymptotic_parts(const MLParams& p, complex z, int n_terms,
                                 const double* alg_coef) {
  AsymptoticParts out;
  const double alpha = p.alpha, beta = p.beta;
  const double r = std::abs(z);
  // Extended precision for the exponent: its absolute error is w times the
  // relative error of w and of the angle, which dominates for large w.
  const long double rl = std::hypot(static_cast<long double>(z.real()), static_cast<long double>(z.imag()));
  const long double theta_l = std::atan2(static_cast<long double>(z.imag()), static_cast<long double>(z.real()));
  const double theta = static_cast<double>(theta_l);
  const long double inv_alpha_l = 1.0L / alpha;
  const long double logw = std::log(rl) * inv_alpha_l;
  const long double wl = std::exp(logw);
  const double w = static_cast<double>(wl);
  const long double w_rel = kEpsL * (4.0L + inv_alpha_l * (2.0L + std::fabs(std::log(rl))));
  // alpha, beta integral: the expansion is a finite exponential sum and the
  // half-weights on the cut are exact.
  const bool exact_exp = is_integer(alpha) && is_integer(beta);

  complex exp_sum = 0.0;
  double exp_abs = 0.0;
  if (alpha == 2.0) {
    // 1/2 z^{(1-beta)/2} (e^{sqrt z} + e^{-sqrt z - pi i (1-beta) sign(arg z)})
    double sg = theta > 0.0 ? 1.0 : (theta < 0.0 ? -1.0 : 0.0);
    long double phi0 = 0.5L * theta_l;
    ExpTerm t0 = pole_term(-std::log(2.0L), beta, logw, wl, w_rel, phi0, 1.0, 0.0L);
    ExpTerm t1 = pole_term(-std::log(2.0L), beta, logw, wl, w_rel, phi0, -1.0, -kPiL * (1.0L - beta) * sg);
    for (const ExpTerm* t : {&t0, &t1}) {
      if (t->log_abs > kLogMax) out.overflow = true;
      exp_sum += t->value;
      exp_abs += std::abs(t->value);
      out.rounding += t->rounding;
    }
    // Near the positive axis the second term sits on the Stokes line; the
    // formula is exact there only for integral parameters (and, at arg z = 0,
    // odd beta).
    const double delta = 6.0 / std::sqrt(std::max(w, 1e-300));
    bool exact_here = exact_exp && (sg != 0.0 || std::fmod(std::fabs(beta), 2.0) == 1.0);
    if (std::fabs(static_cast<double>(phi0)) < delta && !exact_here) {
      out.stokes += 2.0 * std::exp(std::min(t1.log_abs, kLogMax));
    }
  } else {
    const double delta = 6.0 / std::sqrt(std::max(w, 1e-300));
    for (int j = -2; j <= 2; ++j) {
      long double phi_l = (theta_l + 2.0L * kPiL * j) * inv_alpha_l;
      double phi = static_cast<double>(phi_l);
      double dist = std::fabs(phi) - kPi;  // > 0 outside the principal sheet
      if (dist > delta) continue;
      double weight = 1.0;
      if (std::fabs(dist) <= 4.0 * kEps * kPi) {
        weight = 0.5;
      } else if (dist > 0.0) {
        weight = 0.0;
      }
      ExpTerm t = pole_term(-std::log(static_cast<long double>(alpha)), beta, logw, wl, w_rel, phi_l, 1.0, 0.0L);
      if (weight > 0.0 && t.log_abs > kLogMax) out.overflow = true;
      if (std::fabs(dist) < delta && !exact_exp) {
        out.stokes += std::exp(std::min(t.log_abs, kLogMax));
      }
      if (weight > 0.0) {
        exp_sum += weight * t.value;
        exp_abs += weight * std::abs(t.value);
        out.rounding += weight * t.rounding;
      }
    }
  }

  // Algebraic part -sum_{k=1}^N z^{-k} / Gamma(beta - alpha k).
  const double inv_r = 1.0 / r;
  auto term_abs = [&](int k) { return std::pow(inv_r, k) * std::fabs(alg_coef[k]); };
  int n = n_terms;
  if (n < 0) {
    double best = INFINITY;
    for (int cand = 0; cand <= kMaxAlgTerms; ++cand) {
      double e = std::max(term_abs(cand + 1), term_abs(cand + 2));
      if (e < best) {
        best = e;
        n = cand;
      }
      if (e == 0.0) break;
    }
  }
  complex zinv = 1.0 / z;
  complex zk = 1.0;
  complex alg = 0.0;
  double alg_abs = 0.0;
  for (int k = 1; k <= n; ++k) {
    zk *= zinv;
    complex t = zk * alg_coef[k];
    alg += t;
    alg_abs += std::abs(t) * (2.5 * k + 4.0);
  }
  out.truncation = std::max(term_abs(n + 1), term_abs(n + 2));
  out.rounding += kEps * (alg_abs + 2.0 * exp_abs);
  out.value = exp_sum - alg;
  return out;
}

}  // namespace mlfc::detail

namespace mlfc {

complex ml_eval_asymptotic(const MLParams& p, complex z, int n_terms,
                           const MLConfig& cfg) {
  p.validate();
  if (n_terms < 1 || n_terms > 20) {
    fail(ErrorKind::InvalidArgument, "n_terms must lie in [1, 20]");
  }
  if (!(std::abs(z) >= cfg.r1)) {
    fail(ErrorKind::OutsideValidity,
         "|z| = " + format_double(std::abs(z)) + " is below the switch radius " +
             format_double(cfg.r1));
  }
  std::vector<double> coef(23);
  for (int k = 0; k < 23; ++k) coef[k] = rgamma(p.beta - p.alpha * k);
  detail::AsymptoticParts a = detail::asymptotic_parts(p, z, n_terms, coef.data());
  if (a.overflow || !std::isfinite(a.value.real()) || !std::isfinite(a.value.imag())) {
    fail(ErrorKind::NonFinite, "asymptotic value overflows at |z| = " +
                                   format_double(std::abs(z)));
  }
  return a.value;
}

}  // namespace mlfc
