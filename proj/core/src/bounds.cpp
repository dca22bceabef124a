#include "mlfc/bounds.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <string>

#include "mlfc/error.hpp"
#include "mlfc/parallel.hpp"
#include "mlfc/text.hpp"

namespace mlfc {
namespace {

constexpr std::array<TheoremSetting, 12> kSettings = {
    TheoremSetting::T21i, TheoremSetting::T21ii, TheoremSetting::T21iii, TheoremSetting::T22,
    TheoremSetting::T31i, TheoremSetting::T31ii, TheoremSetting::T32i,  TheoremSetting::T32ii,
    TheoremSetting::T33,  TheoremSetting::T34,   TheoremSetting::T35,   TheoremSetting::RL};

[[noreturn]] void violation(TheoremSetting s, const std::string& clause) {
  fail(ErrorKind::HypothesisViolation, to_string(s) + ": " + clause);
}

std::string ab(const MLParams& p) {
  return "(alpha = " + format_double(p.alpha) + ", beta = " + format_double(p.beta) + ")";
}

bool whole_line_setting(TheoremSetting s) {
  return s == TheoremSetting::T21i || s == TheoremSetting::T21ii || s == TheoremSetting::T21iii ||
         s == TheoremSetting::T22;
}

// First violated clause of the (alpha, beta, k) regime, empty if none.
std::string regime_clause(TheoremSetting s, const MLParams& p, int k) {
  const double a = p.alpha, b = p.beta;
  switch (s) {
    case TheoremSetting::T21i:
      if (!(a < 2.0)) return "needs 0 < alpha < 2 " + ab(p);
      if (!(b >= a + 1.0)) return "needs beta >= alpha + 1 " + ab(p);
      return {};
    case TheoremSetting::T21ii:
      if (!(a < 2.0)) return "needs 0 < alpha < 2 " + ab(p);
      if (!(b > 1.0 && b < a + 1.0)) return "needs 1 < beta < alpha + 1 " + ab(p);
      return {};
    case TheoremSetting::T21iii:
      if (a != 2.0) return "needs alpha = 2 " + ab(p);
      if (!(b > 1.0)) return "needs beta > 1 " + ab(p);
      return {};
    case TheoremSetting::T22:
      if (b != 1.0) return "needs beta = 1 " + ab(p);
      return {};
    case TheoremSetting::T31i:
    case TheoremSetting::T32i:
      if (!(a < 2.0)) return "needs 0 < alpha < 2 " + ab(p);
      if (!(b >= a + 1.0)) return "needs beta >= alpha + 1 " + ab(p);
      if (k < 1) return "needs k >= 1";
      return {};
    case TheoremSetting::T31ii:
    case TheoremSetting::T32ii:
      if (!(a < 2.0)) return "needs 0 < alpha < 2 " + ab(p);
      if (!(b > 1.0 && b < a + 1.0)) return "needs 1 < beta < alpha + 1 " + ab(p);
      if (k < 1) return "needs k >= 1";
      return {};
    case TheoremSetting::T33:
    case TheoremSetting::T35:
      if (!(a < 2.0)) return "needs 0 < alpha < 2 " + ab(p);
      if (b != a) return "needs beta = alpha " + ab(p);
      if (k < 1) return "needs k >= 1";
      return {};
    case TheoremSetting::T34:
      if (!(a < 2.0)) return "needs 0 < alpha < 2 " + ab(p);
      if (b != a) return "needs beta = alpha " + ab(p);
      if (k != 1) return "needs k = 1 (got k = " + std::to_string(k) + ")";
      return {};
    case TheoremSetting::RL:
      return {};
  }
  return {};
}

DecayRate rate_for(TheoremSetting s, const MLParams& p, int k) {
  DecayRate r;
  const double a = p.alpha, b = p.beta, kk = static_cast<double>(k);
  switch (s) {
    case TheoremSetting::T21i:
      r.exponent = 1.0;
      r.base = RateBase::OnePlusLambdaM;
      r.formula = "(1+lambda m)^-1";
      break;
    case TheoremSetting::T21ii:
      r.exponent = (b - 1.0) / a;
      r.base = RateBase::OnePlusLambdaM;
      r.formula = "(1+lambda m)^-((beta-1)/alpha)";
      break;
    case TheoremSetting::T21iii:
      r.exponent = (b - 1.0) / 2.0;
      r.base = RateBase::OnePlusLambdaM;
      r.formula = "(1+lambda m)^-((beta-1)/2)";
      break;
    case TheoremSetting::T22:
      r.exponent = 1.0;
      r.base = RateBase::LambdaM;
      r.formula = "(lambda m)^-1";
      break;
    case TheoremSetting::T31i:
    case TheoremSetting::T32i:
      r.exponent = 1.0 / kk;
      r.log_power = 1.0 / kk;
      r.formula = "lambda^(-1/k) log^(1/k)(1+lambda)";
      break;
    case TheoremSetting::T31ii:
    case TheoremSetting::T32ii:
      r.exponent = 1.0 / kk;
      r.growth_correction = (a + 1.0 - b) / (a * kk);
      r.formula = "lambda^(-1/k) (1+lambda)^((alpha+1-beta)/(alpha k))";
      break;
    case TheoremSetting::T33:
    case TheoremSetting::T35:
      r.exponent = 1.0 / kk;
      r.formula = "lambda^(-1/k)";
      break;
    case TheoremSetting::T34:
      r.exponent = 1.0;
      r.formula = "lambda^-1";
      break;
    case TheoremSetting::RL:
      break;
  }
  switch (s) {
    case TheoremSetting::T21i:
    case TheoremSetting::T21ii:
    case TheoremSetting::T21iii:
    case TheoremSetting::T22:
      r.factor = AmplitudeFactor::L1Norm;
      break;
    case TheoremSetting::T32i:
    case TheoremSetting::T32ii:
    case TheoremSetting::T35:
      r.factor = AmplitudeFactor::BoundaryVariation;
      break;
    default:
      r.factor = AmplitudeFactor::None;
  }
  r.constant_functional = to_string(r.factor);
  return r;
}

double sampled_inv_deriv_sup(const Phase& phase, double lo, double hi) {
  double m = 0.0;
  const int n = 10000;
  for (int i = 0; i <= n; ++i) {
    double x = lo + (hi - lo) * i / n;
    double d1 = phase.eval(x, 1), d2 = phase.eval(x, 2);
    m = std::max(m, std::fabs(d2 / (d1 * d1)));
  }
  return m;
}

double amplitude_factor(const DecayRate& rate, const Amplitude& amp, const Domain& d) {
  switch (rate.factor) {
    case AmplitudeFactor::L1Norm:
      return amp.l1_norm();
    case AmplitudeFactor::BoundaryVariation:
      return amp.boundary_functional(d.a, d.b);
    case AmplitudeFactor::None:
      return 1.0;
  }
  return 1.0;
}

}  // namespace

std::string to_string(TheoremSetting s) {
  switch (s) {
    case TheoremSetting::T21i: return "T21i";
    case TheoremSetting::T21ii: return "T21ii";
    case TheoremSetting::T21iii: return "T21iii";
    case TheoremSetting::T22: return "T22";
    case TheoremSetting::T31i: return "T31i";
    case TheoremSetting::T31ii: return "T31ii";
    case TheoremSetting::T32i: return "T32i";
    case TheoremSetting::T32ii: return "T32ii";
    case TheoremSetting::T33: return "T33";
    case TheoremSetting::T34: return "T34";
    case TheoremSetting::T35: return "T35";
    case TheoremSetting::RL: return "RL";
  }
  return "?";
}

TheoremSetting parse_setting(std::string_view text) {
  for (TheoremSetting s : kSettings) {
    if (to_string(s) == text) return s;
  }
  fail(ErrorKind::ParseError, "unknown theorem setting '" + std::string(text) + "'");
}

std::span<const TheoremSetting> all_settings() { return kSettings; }

std::string to_string(AmplitudeFactor f) {
  switch (f) {
    case AmplitudeFactor::None: return "1";
    case AmplitudeFactor::L1Norm: return "||psi||_L1";
    case AmplitudeFactor::BoundaryVariation: return "|psi(b)| + int |psi'|";
  }
  return "?";
}

double DecayRate::value(double lambda) const {
  double v = 0.0;
  switch (base) {
    case RateBase::Lambda: v = std::pow(lambda, -exponent); break;
    case RateBase::OnePlusLambdaM: v = std::pow(1.0 + lambda * m, -exponent); break;
    case RateBase::LambdaM: v = std::pow(lambda * m, -exponent); break;
  }
  if (log_power != 0.0) v *= std::pow(std::log1p(lambda), log_power);
  if (growth_correction != 0.0) v *= std::pow(1.0 + lambda, growth_correction);
  return v;
}

TheoremSetting resolve_rl(const MLParams& p, bool whole_line) {
  if (whole_line) {
    if (p.beta != 1.0) violation(TheoremSetting::RL, "the real-line statement needs beta = 1 " + ab(p));
    return TheoremSetting::T22;
  }
  if (!(p.alpha < 2.0)) violation(TheoremSetting::RL, "interval statements need 0 < alpha < 2 " + ab(p));
  if (p.beta >= p.alpha + 1.0) return TheoremSetting::T32i;
  if (p.beta > 1.0) return TheoremSetting::T32ii;
  if (p.beta == p.alpha) return TheoremSetting::T35;
  violation(TheoremSetting::RL, "interval statements need beta > 1 or beta = alpha " + ab(p));
}

DecayRate theoretical_rate(const MLParams& params, int k, TheoremSetting setting) {
  params.validate();
  if (setting == TheoremSetting::RL) {
    bool interval = params.alpha < 2.0 && (params.beta > 1.0 || params.beta == params.alpha);
    setting = resolve_rl(params, !interval);
    k = 1;
  }
  if (std::string c = regime_clause(setting, params, k); !c.empty()) violation(setting, c);
  return rate_for(setting, params, k);
}

HypothesisCheck check_hypotheses(TheoremSetting setting, const MLParams& params, int k, const Phase& phase,
                                 const Amplitude& amplitude, const Domain& domain) {
  HypothesisCheck h;
  auto bad = [&](std::string clause) {
    h.ok = false;
    h.clause = std::move(clause);
    return h;
  };
  if (setting == TheoremSetting::RL) {
    if (!(phase == Phase::affine(1.0, 0.0))) return bad("needs the identity phase affine:a=1,b=0");
    try {
      setting = resolve_rl(params, !domain.finite());
    } catch (const Error& e) {
      return bad(e.what());
    }
    k = 1;
  }
  if (std::string c = regime_clause(setting, params, k); !c.empty()) return bad(c);
  if (k < 1 || k > Phase::kMaxOrder) return bad("k must lie in [1, 8]");

  if (whole_line_setting(setting)) {
    if (domain.finite()) return bad("stated on the real line; use domain 'line'");
    if (!std::isfinite(amplitude.l1_norm())) return bad("needs psi in L1(R), " + amplitude.to_string() + " is not");
    PhaseCert c = analyze(phase, 1, domain);
    h.cert = c;
    if (setting == TheoremSetting::T22) {
      if (!c.invertible) return bad("needs phi invertible, " + phase.to_string() + " is not monotone on R");
      if (!(c.inf_abs_deriv > 0.0)) return bad("needs m = inf |phi'| > 0 (got 0)");
      h.m = c.inf_abs_deriv;
    } else {
      if (!(c.inf_abs_phase > 0.0)) return bad("needs m = ess inf |phi| > 0 (got 0)");
      h.m = c.inf_abs_phase;
    }
    return h;
  }

  if (!domain.finite()) return bad("stated on a finite interval [a, b]");
  PhaseCert c = analyze(phase, k, domain);
  h.cert = c;
  if (!(c.inf_abs >= 1.0)) {
    return bad("needs |phi^(" + std::to_string(k) + ")| >= 1 on " + domain.to_string() + ", but inf = " +
               format_double(c.inf_abs) + " at x = " + format_double(c.witness));
  }
  switch (setting) {
    case TheoremSetting::T31i:
    case TheoremSetting::T31ii:
    case TheoremSetting::T33:
    case TheoremSetting::T34:
      if (!amplitude.is_one_on(domain.a, domain.b)) {
        return bad("states the integral of E alone; amplitude must be 1 on " + domain.to_string());
      }
      break;
    default:
      if (!amplitude.is_c1_on(domain.a, domain.b)) {
        return bad("needs psi in C1 on " + domain.to_string() + ", " + amplitude.to_string() + " is not");
      }
  }
  if (setting == TheoremSetting::T33 && k == 1 && !c.monotone_deriv) {
    return bad("k = 1 needs phi' monotone on " + domain.to_string());
  }
  // k = 1 in T35 also holds for phi in C2, which every phase family is.
  return h;
}

DecayFit fit_decay(std::span<const double> lambdas, std::span<const double> values, const FitModel& model,
                   std::span<const double> noise) {
  if (lambdas.size() != values.size() || (!noise.empty() && noise.size() != values.size())) {
    fail(ErrorKind::InvalidArgument, "lambda, value and noise counts differ");
  }
  DecayFit f;
  f.lambda_grid.assign(lambdas.begin(), lambdas.end());
  f.abs_values.assign(values.begin(), values.end());
  f.with_log_correction = model.log_power != 0.0 || model.growth_correction != 0.0;
  std::vector<double> xs, ys;
  for (std::size_t i = 0; i < lambdas.size(); ++i) {
    double v = std::fabs(values[i]);
    const double floor = noise.empty() ? kFitFloor : std::max(kFitFloor, noise[i]);
    if (!(v > floor) || !(lambdas[i] > 0.0)) {
      ++f.excluded;
      continue;
    }
    double y = std::log(v);
    if (model.log_power != 0.0) y -= model.log_power * std::log(std::log1p(lambdas[i]));
    if (model.growth_correction != 0.0) y -= model.growth_correction * std::log1p(lambdas[i]);
    xs.push_back(std::log(lambdas[i]));
    ys.push_back(y);
  }
  f.used = xs.size();
  if (xs.size() < 8) {
    fail(ErrorKind::DegenerateFit, "only " + std::to_string(xs.size()) + " of " + std::to_string(lambdas.size()) +
                                       " samples lie above the floor; need 8");
  }
  const double n = static_cast<double>(xs.size());
  double mx = 0.0, my = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    mx += xs[i];
    my += ys[i];
  }
  mx /= n;
  my /= n;
  double sxx = 0.0, sxy = 0.0, syy = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    sxx += (xs[i] - mx) * (xs[i] - mx);
    sxy += (xs[i] - mx) * (ys[i] - my);
    syy += (ys[i] - my) * (ys[i] - my);
  }
  if (!(sxx > 0.0)) fail(ErrorKind::DegenerateFit, "all lambda values coincide");
  f.slope = sxy / sxx;
  f.intercept = my - f.slope * mx;
  double ssr = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    double r = ys[i] - (f.intercept + f.slope * xs[i]);
    ssr += r * r;
  }
  // Relative to the spread of y; an exact fit (including constant data) gives 1.
  f.r_squared = syy > 0.0 ? std::clamp(1.0 - ssr / syy, 0.0, 1.0) : 1.0;
  if (ssr <= 1e-24 * std::max(1.0, syy)) f.r_squared = 1.0;
  return f;
}

std::vector<double> geometric_grid(double lo, double hi, int n) {
  if (!(lo > 0.0) || !(hi > lo) || !std::isfinite(hi) || n < 2) {
    fail(ErrorKind::InvalidArgument, "geometric grid needs 0 < lo < hi and n >= 2");
  }
  std::vector<double> g(n);
  const double r = std::log(hi / lo);
  for (int i = 0; i < n; ++i) g[i] = lo * std::exp(r * i / (n - 1));
  g.front() = lo;
  g.back() = hi;
  return g;
}

std::vector<double> parse_grid(std::string_view text) {
  auto parts = split(text, ':');
  if (parts.size() != 3) fail(ErrorKind::ParseError, "grid must read lo:hi:n, got '" + std::string(text) + "'");
  long n = parse_long(trim(parts[2]));
  if (n < 2 || n > 100000) fail(ErrorKind::ParseError, "grid point count must lie in [2, 100000]");
  return geometric_grid(parse_double(trim(parts[0])), parse_double(trim(parts[1])), static_cast<int>(n));
}

void validate_decay_grid(std::span<const double> grid) {
  if (grid.size() < 8) fail(ErrorKind::InvalidArgument, "decay grids need at least 8 points");
  for (std::size_t i = 0; i + 1 < grid.size(); ++i) {
    if (!(grid[i] < grid[i + 1])) fail(ErrorKind::InvalidArgument, "decay grid must increase strictly");
  }
  if (!(grid.front() > 0.0) || !(grid.back() >= 100.0 * grid.front() * (1.0 - 1e-12))) {
    fail(ErrorKind::InvalidArgument, "decay grid must be positive and span at least two decades");
  }
}

BoundReport verify_samples(const DecayRate& rate, double factor, std::span<const double> lambdas,
                           std::span<const double> abs_values, const BoundConfig& cfg,
                           std::span<const double> est_errors) {
  if (lambdas.size() != abs_values.size()) fail(ErrorKind::InvalidArgument, "lambda and value counts differ");
  validate_decay_grid(lambdas);
  BoundReport r;
  r.rate = rate;
  r.amplitude_factor = factor;
  r.lambdas.assign(lambdas.begin(), lambdas.end());
  r.abs_values.assign(abs_values.begin(), abs_values.end());
  if (est_errors.empty()) {
    r.est_errors.assign(lambdas.size(), 0.0);
  } else {
    r.est_errors.assign(est_errors.begin(), est_errors.end());
  }
  for (std::size_t i = 0; i < lambdas.size(); ++i) {
    double v = std::fabs(abs_values[i]);
    double denom = factor * rate.value(lambdas[i]);
    double rho = v == 0.0 ? 0.0 : (denom > 0.0 ? v / denom : INFINITY);
    r.ratios.push_back(rho);
    r.max_ratio = std::max(r.max_ratio, rho);
  }
  r.slope_threshold = -rate.exponent + cfg.slope_tol;
  r.ratio_pass = r.max_ratio <= cfg.ratio_cap;
  try {
    r.fit = fit_decay(lambdas, abs_values, FitModel{rate.log_power, rate.growth_correction}, est_errors);
    r.slope_pass = r.fit->slope <= r.slope_threshold;
  } catch (const Error& e) {
    if (e.kind() != ErrorKind::DegenerateFit) throw;
    // Values under the floor decay faster than anything measurable here.
    r.slope_trivial = true;
    r.slope_pass = true;
  }
  r.pass = r.ratio_pass && r.slope_pass;
  return r;
}

BoundReport verify_bound(const OscIntegralSpec& spec, TheoremSetting setting, int k, std::span<const double> grid,
                         const BoundConfig& cfg) {
  spec.params.validate();
  validate_decay_grid(grid);
  HypothesisCheck h = check_hypotheses(setting, spec.params, k, spec.phase, spec.amplitude, spec.domain);
  if (!h.ok) violation(setting, h.clause);
  TheoremSetting resolved = setting;
  if (setting == TheoremSetting::RL) {
    resolved = resolve_rl(spec.params, !spec.domain.finite());
    k = 1;
  }
  DecayRate rate = rate_for(resolved, spec.params, k);
  rate.m = h.m;
  const double factor = amplitude_factor(rate, spec.amplitude, spec.domain);

  std::vector<IntegralResult> res(grid.size());
  const int outer = resolve_threads(cfg.threads);
  parallel_for(grid.size(), outer, [&](std::size_t i) {
    OscIntegralSpec s = spec;
    s.lambda = grid[i];
    if (cfg.use_oracle) {
      OracleConfig oc = cfg.oracle;
      oc.threads = 1;
      res[i] = compute_integral_oracle(s, oc);
    } else {
      OscConfig oc = cfg.osc;
      oc.threads = 1;
      res[i] = compute_integral(s, oc);
    }
  });
  std::vector<double> vals, errs;
  for (const auto& x : res) {
    vals.push_back(x.abs_value);
    errs.push_back(x.est_error);
  }
  BoundReport r = verify_samples(rate, factor, grid, vals, cfg, errs);
  r.setting = setting;
  r.resolved = resolved;
  r.params = spec.params;
  r.k = k;
  r.cert = h.cert;
  if (resolved == TheoremSetting::T34) r.inv_phi_prime_sup = sampled_inv_deriv_sup(spec.phase, spec.domain.a, spec.domain.b);
  return r;
}

BoundReport riemann_lebesgue_report(const Amplitude& amplitude, const MLParams& params, const Domain& domain,
                                    std::span<const double> k_grid, const BoundConfig& cfg) {
  OscIntegralSpec s;
  s.params = params;
  s.phase = Phase::affine(1.0, 0.0);
  s.amplitude = amplitude;
  s.domain = domain;
  s.quad_tol = cfg.quad_tol;
  return verify_bound(s, TheoremSetting::RL, 1, k_grid, cfg);
}

}  // namespace mlfc
