#pragma once

#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "mlfc/mittag_leffler.hpp"
#include "mlfc/oscint.hpp"
#include "mlfc/phases.hpp"

namespace mlfc {

// Decay statements for I(lambda). T21*/T22 live on the real line, T3* on a
// finite interval; RL resolves to one of them for the identity phase.
enum class TheoremSetting { T21i, T21ii, T21iii, T22, T31i, T31ii, T32i, T32ii, T33, T34, T35, RL };

std::string to_string(TheoremSetting s);
TheoremSetting parse_setting(std::string_view text);
std::span<const TheoremSetting> all_settings();

enum class RateBase {
  Lambda,          // lambda^{-exponent}
  OnePlusLambdaM,  // (1 + lambda m)^{-exponent}
  LambdaM,         // (lambda m)^{-exponent}
};

enum class AmplitudeFactor {
  None,               // amplitude is 1 on the interval
  L1Norm,             // ||psi||_L1
  BoundaryVariation,  // |psi(b)| + integral of |psi'|
};

std::string to_string(AmplitudeFactor f);

struct DecayRate {
  double exponent = 0.0;
  double log_power = 0.0;          // times log^{log_power}(1 + lambda)
  double growth_correction = 0.0;  // times (1 + lambda)^{growth_correction}
  RateBase base = RateBase::Lambda;
  double m = 1.0;                  // used by the (1 + lambda m) and (lambda m) bases
  AmplitudeFactor factor = AmplitudeFactor::None;
  std::string constant_functional;
  std::string formula;

  // Rate at lambda with constant 1 and without the amplitude factor.
  double value(double lambda) const;
};

// Exponent triple of the setting; m = 1. RL resolves as in resolve_rl with
// an interval domain when an interval statement matches, else the real line.
// HypothesisViolation if (alpha, beta, k) lie outside the setting's regime.
DecayRate theoretical_rate(const MLParams& params, int k, TheoremSetting setting);

// Setting an RL request stands for: T22 on the real line (beta = 1), and
// T32i / T32ii / T35 on an interval for beta >= alpha + 1 / 1 < beta < alpha + 1 / beta = alpha.
TheoremSetting resolve_rl(const MLParams& params, bool whole_line);

struct HypothesisCheck {
  bool ok = true;
  std::string clause;  // first violated clause, empty when ok
  std::optional<PhaseCert> cert;
  double m = 1.0;      // inf |phi| (T21*) or inf |phi'| (T22)
};

// Executable hypothesis check. Never throws for a violated clause.
HypothesisCheck check_hypotheses(TheoremSetting setting, const MLParams& params, int k,
                                 const Phase& phase, const Amplitude& amplitude, const Domain& domain);

struct FitModel {
  double log_power = 0.0;
  double growth_correction = 0.0;
};

struct DecayFit {
  std::vector<double> lambda_grid;
  std::vector<double> abs_values;
  double slope = 0.0;
  double intercept = 0.0;
  double r_squared = 0.0;
  bool with_log_correction = false;
  std::size_t used = 0;
  std::size_t excluded = 0;  // samples at or below the floor
};

inline constexpr double kFitFloor = 1e-15;

// Least squares of log(|I| / (log^p(1+lambda) (1+lambda)^g)) against log lambda.
// A sample is used if it exceeds kFitFloor and its entry in noise (when
// given, e.g. the quadrature error). DegenerateFit with fewer than 8 used.
DecayFit fit_decay(std::span<const double> lambdas, std::span<const double> values, const FitModel& model = {},
                   std::span<const double> noise = {});

// n points geometric on [lo, hi]; n >= 2, 0 < lo < hi.
std::vector<double> geometric_grid(double lo, double hi, int n);
// "lo:hi:n"
std::vector<double> parse_grid(std::string_view text);
// InvalidArgument unless strictly increasing, >= 8 points and >= 2 decades.
void validate_decay_grid(std::span<const double> grid);

struct BoundConfig {
  double ratio_cap = 1e3;
  double slope_tol = 0.07;
  bool use_oracle = false;  // brute-force quadrature instead of the adaptive path
  double quad_tol = 1e-9;   // for riemann_lebesgue_report; verify_bound uses OscIntegralSpec::quad_tol
  OscConfig osc;
  OracleConfig oracle;
  int threads = 1;
};

struct BoundReport {
  TheoremSetting setting = TheoremSetting::T33;
  TheoremSetting resolved = TheoremSetting::T33;
  MLParams params;
  int k = 1;
  DecayRate rate;
  double amplitude_factor = 1.0;
  std::vector<double> lambdas;
  std::vector<double> abs_values;
  std::vector<double> est_errors;
  std::vector<double> ratios;
  double max_ratio = 0.0;
  std::optional<DecayFit> fit;   // empty when too few samples rise above floor and noise
  double slope_threshold = 0.0;  // pass needs slope <= this
  bool ratio_pass = false;
  bool slope_pass = false;
  bool slope_trivial = false;    // no fit: the samples sank below floor or noise
  bool pass = false;
  std::optional<PhaseCert> cert;
  std::optional<double> inv_phi_prime_sup;  // sampled sup |(1/phi')'| (T34)
};

// Computes I(lambda) over the grid for spec (its lambda is ignored) and
// judges it against the setting. HypothesisViolation before any integral if
// the hypotheses fail; quadrature errors propagate.
BoundReport verify_bound(const OscIntegralSpec& spec, TheoremSetting setting, int k,
                         std::span<const double> grid, const BoundConfig& cfg = {});

// Same verdict for given samples (and optional error bars) against a given
// rate and amplitude factor.
BoundReport verify_samples(const DecayRate& rate, double amplitude_factor, std::span<const double> lambdas,
                           std::span<const double> abs_values, const BoundConfig& cfg = {},
                           std::span<const double> est_errors = {});

// Oscillatory Fourier-type integral of f with the identity phase: whole line
// (beta = 1) or the interval [a, b].
BoundReport riemann_lebesgue_report(const Amplitude& amplitude, const MLParams& params, const Domain& domain,
                                    std::span<const double> k_grid, const BoundConfig& cfg = {});

}  // namespace mlfc
