#pragma once

#include <complex>
#include <cstddef>
#include <functional>
#include <span>
#include <vector>

namespace mlfc::quad {

using complex = std::complex<double>;

// 21-point Kronrod extension of the 10-point Gauss rule on [-1, 1]
// (QUADPACK qk21 constants). xgk[1], xgk[3], ..., xgk[9] are the Gauss nodes.
struct GK21 {
  static const double xgk[11];
  static const double wgk[11];
  static const double wg[5];
};

struct Rule {
  std::vector<double> nodes;
  std::vector<double> weights;
};

// n-point Gauss-Legendre rule on [-1, 1], nodes by Newton iteration on the
// three-term recurrence.
Rule gauss_legendre(int n);

// Writes f_j(xs[i]) into out[i * m + j] for an m-component integrand, and
// optionally an absolute error bound of those values into err[i] (max over j;
// err arrives zeroed).
using BatchIntegrand = std::function<void(std::span<const double> xs, std::span<complex> out,
                                          std::span<double> err)>;

struct AdaptiveOptions {
  double abs_tol = 1e-9;
  // Relative accuracy of each integrand value; contributes
  // value_rel_error * integral of |f| to the error estimate.
  double value_rel_error = 0.0;
  long max_evals = 20'000'000;
  int threads = 1;
};

struct AdaptiveResult {
  std::vector<complex> values;
  double est_error = 0.0;    // quad_error + value_error + rounding
  double quad_error = 0.0;   // sum over panels of max_j |K21 - G10|
  double value_error = 0.0;  // integrated node error bounds
  double abs_integral = 0.0;  // sum over panels of max_j integral of |f_j|
  long n_evals = 0;
  std::size_t panels = 0;
  int rounds = 0;
};

// Globally adaptive G10/K21 over [cuts.front(), cuts.back()] starting from the
// given panels. Each round bisects the largest-error panels that carry half
// of the total quadrature error; the sequence of rounds does not depend on
// abs_tol, so a smaller tolerance only continues the same trajectory.
// QuadratureFailure if the budget is exhausted or no panel can be split.
AdaptiveResult integrate_adaptive(const BatchIntegrand& f, std::size_t m,
                                  std::span<const double> cuts, const AdaptiveOptions& opt);

// Composite rule: every [cuts[i], cuts[i+1]] gets one copy of `rule`.
std::vector<complex> integrate_fixed(const BatchIntegrand& f, std::size_t m,
                                     std::span<const double> cuts, const Rule& rule,
                                     int threads, long* n_evals = nullptr,
                                     double* abs_integral = nullptr,
                                     double* value_error = nullptr);

}  // namespace mlfc::quad
