#include "mlfc/oscint.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "mlfc/error.hpp"
#include "mlfc/quadrature.hpp"
#include "mlfc/text.hpp"

namespace mlfc {
namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon();

// Pieces of [lo, hi] on which |phi| is monotone.
std::vector<double> monotone_pieces(const Phase& phase, double lo, double hi) {
  std::vector<double> pts{lo, hi};
  for (double x : phase.critical_points(lo, hi)) pts.push_back(x);
  for (double x : phase.zeros(lo, hi)) pts.push_back(x);
  std::sort(pts.begin(), pts.end());
  pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
  return pts;
}

struct PhiMap {
  const Phase& phase;
  double lambda, inv_alpha;
  double operator()(double x) const { return std::pow(lambda * std::fabs(phase.eval(x)), inv_alpha); }
};

// Integration range: the domain (or [-R, R]) intersected with the support.
struct Range {
  double lo = 0.0, hi = 0.0;
  double truncation = 0.0;
  double tail_error = 0.0;
  bool empty = true;
};

Range integration_range(const OscIntegralSpec& spec, const MittagLeffler& ml, const OscConfig& cfg) {
  Range r;
  const Amplitude& amp = spec.amplitude;
  auto [slo, shi] = amp.support();
  if (spec.domain.finite()) {
    r.lo = std::max(spec.domain.a, slo);
    r.hi = std::min(spec.domain.b, shi);
    r.empty = !(r.lo < r.hi);
    return r;
  }
  if (!std::isfinite(amp.l1_norm())) {
    fail(ErrorKind::TailBoundFailure, "amplitude " + amp.to_string() + " is not integrable on the real line");
  }
  const complex ia = i_pow(spec.params.alpha);
  // |E| beyond R, estimated from a few samples past R.
  auto e_bound = [&](double rad) {
    double m = 1.0;
    for (double f : {1.0, 1.5, 2.0, 4.0}) {
      for (double s : {-1.0, 1.0}) {
        double x = s * f * rad;
        auto res = ml.evaluate_relaxed(ia * (spec.lambda * spec.phase.eval(x)), cfg.ml_soft_rel, cfg.ml_max_rel);
        m = std::max(m, std::abs(res.value));
      }
    }
    return 2.0 * m;
  };
  double rad = spec.domain.truncation;
  double bound = 1.0;
  if (rad > 0.0) {
    bound = e_bound(rad);
  } else {
    rad = amp.truncation_for(0.25 * spec.quad_tol);
    if (!std::isfinite(rad)) fail(ErrorKind::TailBoundFailure, "no finite truncation for " + amp.to_string());
    bound = e_bound(rad);
    if (amp.tail_mass(rad) * bound > 0.25 * spec.quad_tol) {
      rad = amp.truncation_for(0.25 * spec.quad_tol / bound);
      bound = std::max(bound, e_bound(rad));
    }
  }
  r.truncation = rad;
  r.tail_error = amp.tail_mass(rad) * bound;
  if (amp.tail_mass(rad) > 0.5 * spec.quad_tol || r.tail_error > 0.5 * spec.quad_tol) {
    fail(ErrorKind::TailBoundFailure,
         "amplitude tail beyond R = " + format_double(rad) + " contributes " +
             format_double(r.tail_error) + " > quad_tol/2");
  }
  r.lo = std::max(-rad, slo);
  r.hi = std::min(rad, shi);
  r.empty = !(r.lo < r.hi);
  return r;
}

quad::BatchIntegrand make_integrand(const OscIntegralSpec& spec, const MittagLeffler& ml, double soft_rel,
                                   double max_rel) {
  const complex ia = i_pow(spec.params.alpha);
  return [&spec, &ml, ia, soft_rel, max_rel](std::span<const double> xs, std::span<complex> out, std::span<double> err) {
    for (std::size_t i = 0; i < xs.size(); ++i) {
      double psi = spec.amplitude.value(xs[i]);
      if (psi == 0.0) {
        out[i] = 0.0;
        continue;
      }
      auto r = ml.evaluate_relaxed(ia * (spec.lambda * spec.phase.eval(xs[i])), soft_rel, max_rel);
      out[i] = r.value * psi;
      err[i] = r.est_rel_error * std::abs(out[i]);
    }
  };
}

}  // namespace

void OscIntegralSpec::validate() const {
  params.validate();
  if (!(lambda >= 1.0) || !std::isfinite(lambda)) {
    fail(ErrorKind::InvalidArgument, "lambda must be finite and >= 1 (the integral is merely bounded below 1), got " +
                                         format_double(lambda));
  }
  if (!(quad_tol > 0.0)) fail(ErrorKind::InvalidArgument, "quad_tol must be > 0");
}

double oscillation_phase(const Phase& phase, double lambda, double alpha, double lo, double hi) {
  PhiMap phi{phase, lambda, 1.0 / alpha};
  std::vector<double> pts = monotone_pieces(phase, lo, hi);
  double total = 0.0;
  for (std::size_t i = 0; i + 1 < pts.size(); ++i) total += std::fabs(phi(pts[i + 1]) - phi(pts[i]));
  return total;
}

std::vector<double> oscillation_cuts(const Phase& phase, double lambda, double alpha, double lo,
                                     double hi, double per_panel, std::size_t max_panels,
                                     double negative_cap) {
  if (!(lo < hi) || !std::isfinite(lo) || !std::isfinite(hi)) {
    fail(ErrorKind::InvalidArgument, "oscillation cuts need a finite nonempty range");
  }
  PhiMap phi{phase, lambda, 1.0 / alpha};
  std::vector<double> pts = monotone_pieces(phase, lo, hi);
  auto cap = [&](double u, double v, double p) {
    return phase.eval(0.5 * (u + v)) < 0.0 ? std::min(p, negative_cap) : p;
  };
  double needed = 0.0;
  for (std::size_t i = 0; i + 1 < pts.size(); ++i) {
    const double u = pts[i], v = pts[i + 1];
    needed += std::ceil(std::fabs(cap(u, v, phi(v)) - cap(u, v, phi(u))) / per_panel);
  }
  if (needed > static_cast<double>(max_panels)) {
    fail(ErrorKind::QuadratureFailure, "oscillation requires " + format_double(needed) +
                                           " panels, above the limit of " + std::to_string(max_panels));
  }
  std::vector<double> cuts{lo};
  for (std::size_t i = 0; i + 1 < pts.size(); ++i) {
    const double u = pts[i], v = pts[i + 1];
    const double pu = cap(u, v, phi(u)), pv = cap(u, v, phi(v));
    const long n = std::max(1L, static_cast<long>(std::ceil(std::fabs(pv - pu) / per_panel)));
    double left = u;
    for (long j = 1; j < n; ++j) {
      double target = pu + (pv - pu) * static_cast<double>(j) / static_cast<double>(n);
      double a = left, b = v;
      bool up = pv > pu;
      for (int it = 0; it < 100; ++it) {
        double m = 0.5 * (a + b);
        if (m <= a || m >= b) break;
        if ((phi(m) < target) == up) a = m; else b = m;
      }
      double x = 0.5 * (a + b);
      if (x > cuts.back()) cuts.push_back(x);
      left = x;
    }
    if (v > cuts.back()) cuts.push_back(v);
  }
  return cuts;
}

double damped_phase_cap(double alpha) {
  if (alpha >= 1.0) return INFINITY;
  if (alpha < 2.0 / 3.0) return 0.0;
  // The exponential term is exp(Phi e^{i(pi/2 - pi/alpha)}).
  return 50.0 / std::fabs(std::sin(std::numbers::pi / alpha));
}

std::vector<double> merge_cuts(std::vector<double> a, const std::vector<double>& b) {
  a.insert(a.end(), b.begin(), b.end());
  std::sort(a.begin(), a.end());
  std::vector<double> out;
  for (double x : a) {
    if (!out.empty() && x - out.back() <= 4.0 * kEps * std::max(std::fabs(x), 1.0)) continue;
    out.push_back(x);
  }
  return out;
}

IntegralResult compute_integral(const OscIntegralSpec& spec, const OscConfig& cfg) {
  spec.validate();
  IntegralResult res;
  if (spec.amplitude.is_zero()) return res;
  MittagLeffler ml(spec.params, cfg.ml_tol, cfg.ml);
  Range range = integration_range(spec, ml, cfg);
  res.truncation = range.truncation;
  res.tail_error = range.tail_error;
  if (range.empty) {
    res.est_error = range.tail_error;
    return res;
  }
  std::vector<double> cuts =
      oscillation_cuts(spec.phase, spec.lambda, spec.params.alpha, range.lo, range.hi,
                       cfg.panel_phase, static_cast<std::size_t>(cfg.max_evals / 21),
                       damped_phase_cap(spec.params.alpha));
  std::vector<double> brk;
  for (double x : spec.amplitude.breakpoints()) {
    if (x > range.lo && x < range.hi) brk.push_back(x);
  }
  cuts = merge_cuts(std::move(cuts), brk);

  quad::AdaptiveOptions opt;
  opt.abs_tol = spec.quad_tol - range.tail_error;
  opt.max_evals = cfg.max_evals;
  opt.threads = cfg.threads;
  auto f = make_integrand(spec, ml, cfg.ml_soft_rel, cfg.ml_max_rel);
  quad::AdaptiveResult q = quad::integrate_adaptive(f, 1, cuts, opt);
  res.value = q.values[0];
  res.abs_value = std::abs(res.value);
  res.est_error = q.est_error + range.tail_error;
  res.n_evals = q.n_evals;
  res.panels = q.panels;
  return res;
}

IntegralResult compute_integral_oracle(const OscIntegralSpec& spec, const OracleConfig& cfg) {
  spec.validate();
  if (!spec.domain.finite()) fail(ErrorKind::InvalidArgument, "the brute-force oracle needs a finite domain");
  if (cfg.order < 10) fail(ErrorKind::InvalidArgument, "oracle order must be >= 10");
  IntegralResult res;
  if (spec.amplitude.is_zero()) return res;
  auto [slo, shi] = spec.amplitude.support();
  const double lo = std::max(spec.domain.a, slo), hi = std::min(spec.domain.b, shi);
  if (!(lo < hi)) return res;

  std::vector<double> pieces{lo, hi};
  for (double x : spec.amplitude.breakpoints()) {
    if (x > lo && x < hi) pieces.push_back(x);
  }
  std::sort(pieces.begin(), pieces.end());
  const double two_pi = 2.0 * std::numbers::pi;
  std::vector<long> counts;
  double total = 0.0;
  for (std::size_t i = 0; i + 1 < pieces.size(); ++i) {
    // The larger of the Phi variation and lambda times the variation of phi.
    double osc = std::max(oscillation_phase(spec.phase, spec.lambda, spec.params.alpha, pieces[i], pieces[i + 1]),
                          oscillation_phase(spec.phase, spec.lambda, 1.0, pieces[i], pieces[i + 1])) /
                 two_pi;
    double n = cfg.panels_per_oscillation * std::max(1.0, std::ceil(osc));
    counts.push_back(static_cast<long>(n));
    total += n;
  }
  if (1.5 * total * cfg.order > static_cast<double>(cfg.max_evals)) {
    fail(ErrorKind::BudgetExceeded, "oracle needs " + format_double(1.5 * total * cfg.order) +
                                        " evaluations, above the budget of " + std::to_string(cfg.max_evals));
  }
  auto build = [&](int divisor) {
    std::vector<double> cuts{pieces[0]};
    for (std::size_t i = 0; i + 1 < pieces.size(); ++i) {
      long n = std::max(1L, counts[i] / divisor);
      double a = pieces[i], b = pieces[i + 1];
      for (long j = 1; j < n; ++j) cuts.push_back(a + (b - a) * static_cast<double>(j) / static_cast<double>(n));
      cuts.push_back(b);
    }
    return cuts;
  };
  MittagLeffler ml(spec.params, cfg.ml_tol, cfg.ml);
  auto f = make_integrand(spec, ml, cfg.ml_soft_rel, cfg.ml_max_rel);
  quad::Rule rule = quad::gauss_legendre(cfg.order);
  double absint = 0.0, verr = 0.0;
  std::vector<double> fine = build(1), coarse = build(2);
  complex v = quad::integrate_fixed(f, 1, fine, rule, cfg.threads, &res.n_evals, &absint, &verr)[0];
  complex vc = quad::integrate_fixed(f, 1, coarse, rule, cfg.threads, &res.n_evals)[0];
  res.value = v;
  res.abs_value = std::abs(v);
  res.est_error = std::abs(v - vc) + verr + 50.0 * kEps * absint;
  res.panels = fine.size() - 1;
  return res;
}

}  // namespace mlfc
