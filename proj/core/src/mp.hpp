#pragma once

#define MPFR_USE_NO_MACRO 1
#include <mpfr.h>

#include <cmath>
#include <utility>

namespace mlfc::detail {

// Minimal RAII holder for an mpfr_t; all arithmetic goes through the C API.
class Mp {
 public:
  explicit Mp(mpfr_prec_t prec) { mpfr_init2(v_, prec); mpfr_set_zero(v_, 1); }
  Mp(const Mp&) = delete;
  Mp& operator=(const Mp&) = delete;
  ~Mp() { mpfr_clear(v_); }

  mpfr_ptr get() { return v_; }
  mpfr_srcptr get() const { return v_; }
  operator mpfr_ptr() { return v_; }
  operator mpfr_srcptr() const { return v_; }

  // log2 |v|, or -inf for zero.
  double log2_abs() const {
    if (mpfr_zero_p(v_)) return -INFINITY;
    long e = 0;
    double m = mpfr_get_d_2exp(&e, v_, MPFR_RNDN);
    return std::log2(std::fabs(m)) + static_cast<double>(e);
  }

 private:
  mpfr_t v_;
};

struct MpComplex {
  Mp re;
  Mp im;
  explicit MpComplex(mpfr_prec_t prec) : re(prec), im(prec) {}

  // log2 |re + i im| (coarse, double accuracy).
  double log2_abs() const {
    double a = re.log2_abs();
    double b = im.log2_abs();
    double hi = a > b ? a : b;
    double lo = a > b ? b : a;
    if (hi == -INFINITY) return -INFINITY;
    return hi + 0.5 * std::log2(1.0 + std::exp2(2.0 * (lo - hi)));
  }
};

// out = x * y; scratch values must be distinct from out.
inline void mul(MpComplex& out, const MpComplex& x, const MpComplex& y,
                Mp& t1, Mp& t2) {
  mpfr_mul(t1, x.re, y.re, MPFR_RNDN);
  mpfr_mul(t2, x.im, y.im, MPFR_RNDN);
  mpfr_sub(t1, t1, t2, MPFR_RNDN);
  mpfr_mul(t2, x.re, y.im, MPFR_RNDN);
  mpfr_fma(out.im, x.im, y.re, t2, MPFR_RNDN);
  mpfr_set(out.re, t1, MPFR_RNDN);
}

}  // namespace mlfc::detail
