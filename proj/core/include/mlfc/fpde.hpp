#pragma once

#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "mlfc/mittag_leffler.hpp"
#include "mlfc/oscint.hpp"
#include "mlfc/phases.hpp"

namespace mlfc {

// n equispaced points on [lo, hi]; "lo:hi:n". n = 1 means the single point lo.
struct UniformGrid {
  double lo = -10.0;
  double hi = 10.0;
  int n = 401;

  std::vector<double> points() const;
  std::string to_string() const;
  static UniformGrid parse(std::string_view text);
  bool operator==(const UniformGrid&) const = default;
};

// u(t,x) = integral of e^{i x xi} t^{alpha-1} E_{alpha,alpha}(i^alpha (xi^2+mu) t^alpha) psi_hat(xi) dxi
struct KGProblem {
  double alpha = 1.5;  // (1, 2]
  double mu = 1.0;     // > 0
  Amplitude psi_hat = Amplitude::gaussian(1.0);
  double xi_truncation = 0.0;  // 0: chosen from the tail of psi_hat
  UniformGrid x_grid;

  void validate() const;
};

// u(t,x) = integral of e^{i x xi} Gamma(1-gamma) t^{alpha-gamma}
//          E_{alpha,alpha-gamma+1}(i^alpha (xi^2+mu) t^alpha) psi_hat(xi) dxi
struct SchrodingerProblem {
  double alpha = 0.8;  // (0, 1]
  double gamma = 0.3;  // [0, alpha)
  double mu = 2.0;     // > 0
  Amplitude psi_hat = Amplitude::gaussian(1.0);
  double xi_truncation = 0.0;
  UniformGrid x_grid;

  void validate() const;
};

struct PdeConfig {
  double tol = 1e-9;  // absolute, per grid point, including the xi tail
  OscConfig osc;
};

struct FieldSnapshot {
  double t = 0.0;
  std::vector<double> x;
  std::vector<complex> values;
  double sup_norm = 0.0;
  double quad_error = 0.0;  // max over x of the error estimate
  double xi_truncation = 0.0;
  long n_evals = 0;
};

// Both throw InvalidArgument for t <= 0 or invalid problems; quadrature and
// tail failures propagate.
FieldSnapshot kg_solve(const KGProblem& problem, double t, const PdeConfig& cfg = {});
FieldSnapshot schrodinger_solve(const SchrodingerProblem& problem, double t, const PdeConfig& cfg = {});

// t^{alpha-1} (1+t)^{1-alpha} and t^{alpha-gamma} (1+t)^{gamma-alpha}.
double kg_envelope(double alpha, double t);
double schrodinger_envelope(double alpha, double gamma, double t);

struct DispersiveReport {
  std::string model;
  std::vector<double> t_grid;
  std::vector<double> sup_norms;
  std::vector<double> quad_errors;
  std::vector<double> envelopes;  // envelope times ||psi_hat||_L1
  std::vector<double> ratios;
  double psi_hat_l1 = 0.0;
  double max_ratio = 0.0;
  double ratio_cap = 1e3;
  bool pass = false;
};

// rho(t) = sup_norm(t) / (envelope(t) ||psi_hat||_L1); pass iff max rho <= ratio_cap.
DispersiveReport dispersive_check(const KGProblem& problem, std::span<const double> t_grid,
                                  const PdeConfig& cfg = {}, double ratio_cap = 1e3);
DispersiveReport dispersive_check(const SchrodingerProblem& problem, std::span<const double> t_grid,
                                  const PdeConfig& cfg = {}, double ratio_cap = 1e3);

// psi_hat(xi) = (1/pi) integral of e^{-i y xi} psi(y) dy for a Gaussian psi.
// InvalidArgument for other amplitudes.
Amplitude gaussian_transform(const Amplitude& spatial);

}  // namespace mlfc
