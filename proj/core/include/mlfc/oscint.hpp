#pragma once

#include <cmath>
#include <cstddef>
#include <numbers>
#include <vector>

#include "mlfc/mittag_leffler.hpp"
#include "mlfc/phases.hpp"

namespace mlfc {

// I(lambda) = integral over the domain of E_{alpha,beta}(i^alpha lambda phi(x)) psi(x) dx.
struct OscIntegralSpec {
  MLParams params;
  double lambda = 1.0;
  Phase phase = Phase::affine(1.0, 0.0);
  Amplitude amplitude = Amplitude::one();
  Domain domain = Domain::interval(0.0, 1.0);
  double quad_tol = 1e-9;

  // InvalidArgument for lambda < 1, quad_tol <= 0 or bad parameters.
  void validate() const;
};

struct OscConfig {
  double ml_tol = 1e-12;       // accuracy requested from each E evaluation
  double ml_soft_rel = 1e-10;  // accepted from the asymptotic route before multiprecision
  double ml_max_rel = 1e-6;    // worst accepted where nothing better can be certified
  double panel_phase = 2.0 * std::numbers::pi;  // max variation of Phi per initial panel
  long max_evals = 40'000'000;
  int threads = 1;
  MLConfig ml;
};

struct IntegralResult {
  complex value;
  double abs_value = 0.0;
  double est_error = 0.0;
  long n_evals = 0;
  std::size_t panels = 0;
  double truncation = 0.0;  // R used on the whole line
  double tail_error = 0.0;  // part of est_error due to |x| > R
};

// Adaptive G10/K21 after splitting the domain so that
// Phi(x) = (lambda |phi(x)|)^{1/alpha} varies by at most panel_phase per panel.
// Errors: QuadratureFailure, TailBoundFailure, and ML evaluation errors.
IntegralResult compute_integral(const OscIntegralSpec& spec, const OscConfig& cfg = {});

struct OracleConfig {
  int order = 20;                    // Gauss-Legendre points per panel
  int panels_per_oscillation = 32;
  long max_evals = 120'000'000;
  double ml_tol = 1e-12;
  double ml_soft_rel = 1e-10;
  double ml_max_rel = 1e-6;
  int threads = 1;
  MLConfig ml;
};

// Non-adaptive composite Gauss-Legendre with panels_per_oscillation uniform
// panels per 2 pi of Phi variation (at least that many overall); the error
// estimate compares against the rule on half as many panels. Finite domains
// only. BudgetExceeded if the panel count exceeds the budget.
IntegralResult compute_integral_oracle(const OscIntegralSpec& spec, const OracleConfig& cfg = {});

// Total variation of Phi(x) = (lambda |phi(x)|)^{1/alpha} over [lo, hi].
double oscillation_phase(const Phase& phase, double lambda, double alpha, double lo, double hi);

// Ascending cuts from lo to hi with Phi varying by at most per_panel between
// neighbours and every zero or critical point of phi included. Where phi < 0
// only Phi up to negative_cap is resolved. QuadratureFailure if more than
// max_panels would be needed.
std::vector<double> oscillation_cuts(const Phase& phase, double lambda, double alpha, double lo,
                                     double hi, double per_panel, std::size_t max_panels,
                                     double negative_cap = INFINITY);

// Phi beyond which E_{alpha,beta}(i^alpha t), t < 0, has no oscillation left
// above exp(-50): its exponential term is damped (alpha < 1) or absent
// (alpha < 2/3). Infinite for alpha >= 1.
double damped_phase_cap(double alpha);

// Sorted union of cut sets with near-duplicates removed.
std::vector<double> merge_cuts(std::vector<double> a, const std::vector<double>& b);

}  // namespace mlfc
