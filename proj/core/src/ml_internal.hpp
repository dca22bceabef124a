#pragma once

#include "mlfc/mittag_leffler.hpp"

namespace mlfc::detail {

struct SeriesResult {
  complex value;
  double log2_abs_sum = 0.0;     // log2 of sum of |terms|
  double log2_abs_value = 0.0;   // log2 |value| before rounding
  long terms = 0;
  bool overflow = false;
};

// Sums the defining series with `prec` bits, stopping when the rigorous tail
// bound falls below 2^tail_log2 * max(|S|, rounding floor).
SeriesResult mp_series(const MLParams& p, complex z, long prec,
                       double tail_log2, long max_terms);

// Series value with relative accuracy 10^-digits verified a posteriori
// against the observed cancellation, escalating the guard up to guard_cap.
complex certified_series(const MLParams& p, complex z, int digits, int guard,
                         int guard_cap, long max_terms, double* est_rel);

// Decimal digits needed to absorb cancellation: terms peak near
// exp(max(|z|, |z|^{1/alpha})).
double cancellation_digits(const MLParams& p, complex z);

struct AsymptoticParts {
  complex value;
  double truncation = 0.0;  // estimate of the first omitted terms
  double stokes = 0.0;      // magnitude of exponential terms near a Stokes line
  double rounding = 0.0;
  bool overflow = false;
};

// n_terms < 0 selects the optimal truncation (at most 20 terms).
AsymptoticParts asymptotic_parts(const MLParams& p, complex z, int n_terms,
                                 const double* alg_coef);

}  // namespace mlfc::detail
