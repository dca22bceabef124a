#pragma once

#include <complex>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

namespace mlfc {

using complex = std::complex<double>;

// Regime tags of (alpha, beta). A pair may carry several tags; Other is set
// iff none of the others is.
enum RegimeTag : std::uint32_t {
  kBetaGeAlphaPlus1 = 1u << 0,
  kBetaBetween1AndAlphaPlus1 = 1u << 1,
  kBetaEq1 = 1u << 2,
  kBetaEqAlpha = 1u << 3,
  kAlphaEq2 = 1u << 4,
  kOther = 1u << 5,
};

struct MLParams {
  double alpha = 1.0;
  double beta = 1.0;

  // Throws InvalidArgument unless 0 < alpha <= 2 and beta is finite.
  void validate() const;
  std::uint32_t regime_tags() const;
  bool has(RegimeTag tag) const { return (regime_tags() & tag) != 0; }
};

std::string regime_tags_string(std::uint32_t tags);

struct MLConfig {
  double r0 = 5.0;   // Taylor radius
  double r1 = 40.0;  // validity radius of the standalone asymptotic expansion
  int guard_cap_digits = 2000;
  int max_series_terms = 400000;
};

// Entire reciprocal gamma function; exactly 0 at non-positive integers.
double rgamma(double x);

// i^alpha = exp(i pi alpha / 2), exact for integer alpha.
complex i_pow(double alpha);

// E_{alpha,beta}(z) to relative accuracy rel_tol in [1e-14, 1e-4].
complex ml_eval(const MLParams& p, complex z, double rel_tol,
                const MLConfig& cfg = {});

// Defining series in MPFR arithmetic with `digits` (>= 50) significant digits
// plus a cancellation guard, rounded to double.
complex ml_eval_oracle(const MLParams& p, complex z, int digits,
                       const MLConfig& cfg = {});

// Cancellation guard (decimal digits) used by the oracle at z.
int oracle_guard_digits(const MLParams& p, complex z);

// Exponential-plus-algebraic expansion with n_terms algebraic terms.
// Requires |z| >= cfg.r1.
complex ml_eval_asymptotic(const MLParams& p, complex z, int n_terms,
                           const MLConfig& cfg = {});

// Second independent reference: Hankel-contour representation integrated
// with Boost's Gauss-Kronrod rule in extended precision. Valid for all z.
complex ml_eval_contour(const MLParams& p, complex z);

// |(E_{a,1}(z+h) - E_{a,1}(z-h))/(2h) - E_{a,a}(z)/a| with oracle values.
double ml_derivative_check(double alpha, complex z, double h);

// Bound for the third derivative of E_{a,1} near z used to scale the check.
double ml_derivative_scale(double alpha, complex z);

// Reusable evaluator for fixed (alpha, beta); caches series coefficients.
// Thread-safe for concurrent operator() calls.
class MittagLeffler {
 public:
  enum class Route { Zero, Taylor, Asymptotic, Multiprecision };

  struct Result {
    complex value;
    double est_rel_error = 0.0;
    Route route = Route::Zero;
  };

  MittagLeffler(MLParams p, double rel_tol, MLConfig cfg = {});

  complex operator()(complex z) const { return evaluate(z).value; }
  Result evaluate(complex z) const;
  // For bulk use. Tries the double-precision routes at rel_tol, then the
  // asymptotic route at soft_rel, then multiprecision at rel_tol, and last the
  // asymptotic route at max_rel. ToleranceUnreachable if all of them fail.
  Result evaluate_relaxed(complex z, double soft_rel, double max_rel) const;

  const MLParams& params() const { return p_; }
  double rel_tol() const { return rel_tol_; }

 private:
  bool try_taylor(complex z, Result& out) const;
  bool try_asymptotic(complex z, Result& out, double tol) const;
  bool try_multiprecision(complex z, Result& out) const;

  MLParams p_;
  double rel_tol_;
  MLConfig cfg_;
  std::vector<double> taylor_coef_;
  std::vector<double> taylor_coef_err_;
  std::vector<double> alg_coef_;  // 1/Gamma(beta - alpha k), k = 0..
};

const char* to_string(MittagLeffler::Route r);

// Sector envelope C1 (1+|z|)^{(1-beta)/alpha} exp(Re z^{1/alpha}) + C2/(1+|z|).
struct SectorBoundParams {
  double c1 = 1.0;
  double c2 = 1.0;
  double theta_sector = 0.0;
};

double sector_envelope(const MLParams& p, complex z,
                       const SectorBoundParams& sb);

// The envelope formula without the sector check.
double envelope_formula(const MLParams& p, complex z, double c1, double c2);

struct SectorFit {
  double c1 = 0.0;
  double c2 = 0.0;
  double max_ratio = 0.0;  // max |E| / envelope at the fitted constants
};

// Smallest C1 + C2 with the envelope dominating |E| at every z in zs.
SectorFit fit_sector_constants(const MLParams& p, std::span<const complex> zs,
                               double rel_tol = 1e-10);

}  // namespace mlfc
