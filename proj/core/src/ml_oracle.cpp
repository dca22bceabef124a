#include <algorithm>
#include <cfloat>
#include <cmath>
#include <memory>
#include <vector>

#include "ml_internal.hpp"
#include "mlfc/error.hpp"
#include "mp.hpp"

namespace mlfc::detail {
namespace {

constexpr double kLog2Of10 = 3.321928094887362;

double log2_add(double a, double b) {
  if (a == -INFINITY) return b;
  if (b == -INFINITY) return a;
  double hi = std::max(a, b);
  return hi + std::log2(1.0 + std::exp2(std::min(a, b) - hi));
}

// alpha = num/den exactly (as doubles) with a small denominator, if possible.
bool rational_alpha(double alpha, long& num, long& den) {
  for (long q = 1; q <= 100; ++q) {
    double pr = std::round(alpha * static_cast<double>(q));
    if (pr < 1.0 || pr > 400.0) continue;
    if (pr / static_cast<double>(q) == alpha) {
      num = static_cast<long>(pr);
      den = q;
      return true;
    }
  }
  return false;
}

// Builds 1/Gamma(alpha k + beta) for k = 0, 1, ... in sequence.
class RecipGammaSequence {
 public:
  RecipGammaSequence(double alpha, double beta, mpfr_prec_t prec)
      : alpha_(alpha), beta_(beta), prec_(prec), x_(prec), t_(prec) {
    rational_ = rational_alpha(alpha, num_, den_);
    if (rational_) {
      for (long i = 0; i < den_; ++i) ring_.push_back(std::make_unique<Mp>(prec));
    }
  }

  // Writes 1/Gamma(alpha k + beta) into out; k must increase by one per call.
  void next(long k, Mp& out) {
    double xd = alpha_ * static_cast<double>(k) + beta_;
    long back = k - den_;
    bool recur = rational_ && back >= 0 &&
                 alpha_ * static_cast<double>(back) + beta_ > 0.5;
    if (recur) {
      Mp& prev = *ring_[static_cast<size_t>(back % den_)];
      set_x(back);
      mpfr_set_ui(t_, 1, MPFR_RNDN);
      for (long i = 0; i < num_; ++i) {
        mpfr_mul(t_, t_, x_, MPFR_RNDN);
        mpfr_add_ui(x_, x_, 1, MPFR_RNDN);
      }
      mpfr_div(out, prev, t_, MPFR_RNDN);
    } else {
      set_x(k);
      if (xd <= 0.5 && mpfr_integer_p(x_) && mpfr_sgn(x_) <= 0) {
        mpfr_set_zero(out, 1);
      } else {
        mpfr_gamma(t_, x_, MPFR_RNDN);
        mpfr_ui_div(out, 1, t_, MPFR_RNDN);
      }
    }
    if (rational_) mpfr_set(*ring_[static_cast<size_t>(k % den_)], out, MPFR_RNDN);
  }

 private:
  // x_ = alpha k + beta. A rational alpha is used as exactly num/den so that
  // the recurrence and the directly seeded values describe the same function.
  void set_x(long k) {
    if (rational_) {
      mpfr_set_si(x_, num_ * k, MPFR_RNDN);
      mpfr_div_si(x_, x_, den_, MPFR_RNDN);
    } else {
      mpfr_set_d(x_, alpha_, MPFR_RNDN);
      mpfr_mul_si(x_, x_, k, MPFR_RNDN);
    }
    mpfr_add_d(x_, x_, beta_, MPFR_RNDN);
  }

  double alpha_, beta_;
  mpfr_prec_t prec_;
  bool rational_ = false;
  long num_ = 0, den_ = 1;
  Mp x_, t_;
  std::vector<std::unique_ptr<Mp>> ring_;
};

}  // namespace

SeriesResult mp_series(const MLParams& p, complex z, long prec,
                       double tail_log2, long max_terms) {
  SeriesResult res;
  MpComplex zz(prec), zk(prec), sum(prec), term(prec);
  Mp t1(prec), t2(prec), rg(prec), rg_next(prec);
  mpfr_set_d(zz.re, z.real(), MPFR_RNDN);
  mpfr_set_d(zz.im, z.imag(), MPFR_RNDN);
  mpfr_set_ui(zk.re, 1, MPFR_RNDN);
  mpfr_set_zero(zk.im, 1);

  const double log2_absz = std::log2(std::abs(z));
  RecipGammaSequence seq(p.alpha, p.beta, prec);
  seq.next(0, rg);
  double lsum = -INFINITY;
  long k = 0;
  for (;; ++k) {
    if (k >= max_terms) {
      fail(ErrorKind::PrecisionExhausted,
           "series did not converge within the term budget");
    }
    seq.next(k + 1, rg_next);
    mpfr_mul(term.re, zk.re, rg, MPFR_RNDN);
    mpfr_mul(term.im, zk.im, rg, MPFR_RNDN);
    mpfr_add(sum.re, sum.re, term.re, MPFR_RNDN);
    mpfr_add(sum.im, sum.im, term.im, MPFR_RNDN);
    double lt = term.log2_abs();
    lsum = log2_add(lsum, lt);

    double xk = p.alpha * static_cast<double>(k) + p.beta;
    if (xk > 0.0 && !mpfr_zero_p(rg)) {
      // Gamma(x)/Gamma(x + alpha) decreases for x > 0, so the current term
      // ratio bounds every later one.
      double lr = log2_absz + rg_next.log2_abs() - rg.log2_abs() + 1e-12;
      if (lr < -1e-9) {
        double r = std::exp2(lr);
        double tail = lt + std::log2(r / (1.0 - r));
        double ls = sum.log2_abs();
        double floor = lsum - static_cast<double>(prec);
        if (tail <= tail_log2 + std::max(ls, floor)) break;
      }
    }
    mul(zk, zk, zz, t1, t2);
    mpfr_swap(rg, rg_next);
  }

  res.terms = k + 1;
  res.log2_abs_sum = lsum;
  res.log2_abs_value = sum.log2_abs();
  double re = mpfr_get_d(sum.re, MPFR_RNDN);
  double im = mpfr_get_d(sum.im, MPFR_RNDN);
  res.overflow = !std::isfinite(re) || !std::isfinite(im);
  res.value = complex(re, im);
  return res;
}

double cancellation_digits(const MLParams& p, complex z) {
  double r = std::abs(z);
  double w = std::pow(r, 1.0 / p.alpha);
  return std::max(r, w) * 0.4342944819032518;
}

}  // namespace mlfc::detail

namespace mlfc {

using detail::kLog2Of10;

int oracle_guard_digits(const MLParams& p, complex z) {
  double g = detail::cancellation_digits(p, z);
  if (!(g < 1e9)) return 1000000000;
  return static_cast<int>(std::ceil(g)) + 10;
}

namespace detail {

// Series value with 10^-digits relative accuracy checked after the fact
// against the observed cancellation; precision grows until it holds.
complex certified_series(const MLParams& p, complex z, int digits, int guard,
                         int guard_cap, long max_terms, double* est_rel) {
  for (int attempt = 0; attempt < 8; ++attempt) {
    if (guard > guard_cap) {
      fail(ErrorKind::PrecisionExhausted,
           "cancellation guard of " + std::to_string(guard) +
               " digits exceeds the cap of " + std::to_string(guard_cap));
    }
    long prec = static_cast<long>(std::ceil((digits + guard) * kLog2Of10)) + 32;
    SeriesResult s = mp_series(p, z, prec, -(digits + 1) * kLog2Of10, max_terms);
    if (s.overflow) {
      fail(ErrorKind::NonFinite, "E_{alpha,beta}(z) overflows double");
    }
    double lost = s.log2_abs_sum - s.log2_abs_value +
                  std::log2(static_cast<double>(s.terms)) + 8.0;
    double achieved = static_cast<double>(prec) - std::max(lost, 0.0);
    if (achieved >= digits * kLog2Of10) {
      if (est_rel) *est_rel = std::exp2(-achieved) + std::pow(10.0, -digits - 1);
      return s.value;
    }
    // A value drowned in rounding noise tracks the precision, so the deficit
    // alone underestimates; grow at least geometrically.
    int deficit = static_cast<int>(std::ceil((digits * kLog2Of10 - achieved) / kLog2Of10)) + 5;
    guard += std::max(deficit, guard / 2 + 10);
  }
  fail(ErrorKind::PrecisionExhausted, "precision escalation did not converge");
}

}  // namespace detail

complex ml_eval_oracle(const MLParams& p, complex z, int digits,
                       const MLConfig& cfg) {
  p.validate();
  if (digits < 50) fail(ErrorKind::InvalidArgument, "oracle digits must be >= 50");
  if (!std::isfinite(z.real()) || !std::isfinite(z.imag()) || std::abs(z) > 1e3) {
    fail(ErrorKind::InvalidArgument, "oracle requires finite |z| <= 1e3");
  }
  if (z == complex(0.0, 0.0)) return complex(rgamma(p.beta), 0.0);
  int guard = oracle_guard_digits(p, z);
  if (guard > cfg.guard_cap_digits) {
    fail(ErrorKind::PrecisionExhausted,
         "cancellation guard of " + std::to_string(guard) +
             " digits exceeds the cap of " + std::to_string(cfg.guard_cap_digits));
  }
  return detail::certified_series(p, z, digits, guard, cfg.guard_cap_digits,
                                  cfg.max_series_terms, nullptr);
}

}  // namespace mlfc
