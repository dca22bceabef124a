#include "mlfc/fpde.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "mlfc/error.hpp"
#include "mlfc/parallel.hpp"
#include "mlfc/quadrature.hpp"
#include "mlfc/text.hpp"

namespace mlfc {
namespace {

// Generic solver: u(t,x) = integral of e^{i x xi} c E_{alpha,beta}(i^alpha (xi^2+mu) t^alpha) psi_hat(xi) dxi.
struct Kernel {
  double alpha, beta, mu, scale;  // scale = c
};

FieldSnapshot solve(const Kernel& k, const Amplitude& psi_hat, double xi_trunc, const UniformGrid& grid,
                    double t, const PdeConfig& cfg) {
  if (!(t > 0.0) || !std::isfinite(t)) fail(ErrorKind::InvalidArgument, "t must be finite and > 0");
  if (!(cfg.tol > 0.0)) fail(ErrorKind::InvalidArgument, "tol must be > 0");
  FieldSnapshot snap;
  snap.t = t;
  snap.x = grid.points();
  const std::size_t m = snap.x.size();
  snap.values.assign(m, complex(0.0, 0.0));
  if (psi_hat.is_zero()) return snap;

  const MittagLeffler ml(MLParams{k.alpha, k.beta}, cfg.osc.ml_tol, cfg.osc.ml);
  const complex ia = i_pow(k.alpha);
  const double ta = std::pow(t, k.alpha);
  auto kernel = [&](double xi) {
    auto r = ml.evaluate_relaxed(ia * ((xi * xi + k.mu) * ta), cfg.osc.ml_soft_rel, cfg.osc.ml_max_rel);
    r.value *= k.scale;
    return r;
  };

  // xi truncation from the tail of psi_hat times a sampled kernel bound.
  auto kernel_bound = [&](double r) {
    double b = 0.0;
    for (double f : {0.0, 1.0, 1.5, 2.0, 4.0}) b = std::max(b, std::abs(kernel(f * r).value));
    return 2.0 * b;
  };
  double xi_max = xi_trunc;
  double bound = 0.0;
  if (xi_max > 0.0) {
    bound = kernel_bound(xi_max);
  } else {
    xi_max = psi_hat.truncation_for(0.25 * cfg.tol);
    if (!std::isfinite(xi_max)) fail(ErrorKind::TailBoundFailure, "no finite xi truncation for " + psi_hat.to_string());
    bound = kernel_bound(xi_max);
    if (psi_hat.tail_mass(xi_max) * bound > 0.25 * cfg.tol) {
      xi_max = psi_hat.truncation_for(0.25 * cfg.tol / bound);
      bound = std::max(bound, kernel_bound(xi_max));
    }
  }
  const double tail = psi_hat.tail_mass(xi_max) * bound;
  if (!(tail <= 0.5 * cfg.tol)) {
    fail(ErrorKind::TailBoundFailure, "psi_hat tail beyond xi = " + format_double(xi_max) + " contributes " +
                                          format_double(tail) + " > tol/2");
  }
  snap.xi_truncation = xi_max;
  auto [slo, shi] = psi_hat.support();
  const double lo = std::max(-xi_max, slo), hi = std::min(xi_max, shi);
  if (!(lo < hi)) {
    snap.quad_error = tail;
    return snap;
  }

  // Half a period per panel from each oscillation, so the combined phase
  // change stays within 2 pi: e^{i x xi} and Phi = t (xi^2+mu)^{1/alpha}.
  double x_abs = 0.0;
  for (double x : snap.x) x_abs = std::max(x_abs, std::fabs(x));
  const auto max_panels = static_cast<std::size_t>(cfg.osc.max_evals / 21);
  std::vector<double> cuts =
      oscillation_cuts(Phase::mass_shell(k.mu), ta, k.alpha, lo, hi, std::numbers::pi, max_panels);
  if (x_abs > 0.0) {
    cuts = merge_cuts(std::move(cuts),
                      oscillation_cuts(Phase::affine(1.0, 0.0), x_abs, 1.0, lo, hi, std::numbers::pi, max_panels));
  }
  std::vector<double> brk;
  for (double b : psi_hat.breakpoints()) {
    if (b > lo && b < hi) brk.push_back(b);
  }
  cuts = merge_cuts(std::move(cuts), brk);

  const std::vector<double>& xs = snap.x;
  quad::BatchIntegrand f = [&](std::span<const double> nodes, std::span<complex> out, std::span<double> err) {
    for (std::size_t i = 0; i < nodes.size(); ++i) {
      const double xi = nodes[i];
      const double p = psi_hat.value(xi);
      if (p == 0.0) {
        std::fill(out.begin() + i * m, out.begin() + (i + 1) * m, complex(0.0, 0.0));
        continue;
      }
      auto r = kernel(xi);
      const complex kv = r.value * p;
      err[i] = r.est_rel_error * std::abs(kv);
      for (std::size_t j = 0; j < m; ++j) out[i * m + j] = kv * std::polar(1.0, xs[j] * xi);
    }
  };
  quad::AdaptiveOptions opt;
  opt.abs_tol = cfg.tol - tail;
  opt.max_evals = cfg.osc.max_evals;
  opt.threads = cfg.osc.threads;
  quad::AdaptiveResult q = quad::integrate_adaptive(f, m, cuts, opt);
  snap.values = std::move(q.values);
  snap.quad_error = q.est_error + tail;
  snap.n_evals = q.n_evals;
  for (const complex& v : snap.values) snap.sup_norm = std::max(snap.sup_norm, std::abs(v));
  return snap;
}

Kernel kg_kernel(const KGProblem& p, double t) { return {p.alpha, p.alpha, p.mu, std::pow(t, p.alpha - 1.0)}; }

Kernel schrodinger_kernel(const SchrodingerProblem& p, double t) {
  return {p.alpha, p.alpha - p.gamma + 1.0, p.mu, std::tgamma(1.0 - p.gamma) * std::pow(t, p.alpha - p.gamma)};
}

template <class Solve, class Env>
DispersiveReport run_dispersive(std::string model, const Amplitude& psi_hat, std::span<const double> t_grid,
                                const PdeConfig& cfg, double ratio_cap, Solve solve_at, Env envelope) {
  if (t_grid.empty()) fail(ErrorKind::InvalidArgument, "t grid is empty");
  for (std::size_t i = 0; i < t_grid.size(); ++i) {
    if (!(t_grid[i] > 0.0) || (i > 0 && !(t_grid[i] > t_grid[i - 1]))) {
      fail(ErrorKind::InvalidArgument, "t grid must be positive and strictly increasing");
    }
  }
  DispersiveReport r;
  r.model = std::move(model);
  r.ratio_cap = ratio_cap;
  r.t_grid.assign(t_grid.begin(), t_grid.end());
  r.psi_hat_l1 = psi_hat.l1_norm();
  if (!std::isfinite(r.psi_hat_l1)) fail(ErrorKind::InvalidArgument, "psi_hat must be integrable");
  std::vector<FieldSnapshot> snaps(t_grid.size());
  PdeConfig inner = cfg;
  inner.osc.threads = 1;
  parallel_for(t_grid.size(), resolve_threads(cfg.osc.threads),
               [&](std::size_t i) { snaps[i] = solve_at(t_grid[i], inner); });
  for (std::size_t i = 0; i < t_grid.size(); ++i) {
    double env = envelope(t_grid[i]) * r.psi_hat_l1;
    double rho = snaps[i].sup_norm == 0.0 ? 0.0 : snaps[i].sup_norm / env;
    r.sup_norms.push_back(snaps[i].sup_norm);
    r.quad_errors.push_back(snaps[i].quad_error);
    r.envelopes.push_back(env);
    r.ratios.push_back(rho);
    r.max_ratio = std::max(r.max_ratio, rho);
  }
  r.pass = r.max_ratio <= ratio_cap;
  return r;
}

}  // namespace

std::vector<double> UniformGrid::points() const {
  if (n < 1) fail(ErrorKind::InvalidArgument, "grid needs n >= 1");
  if (n == 1) return {lo};
  std::vector<double> p(n);
  for (int i = 0; i < n; ++i) p[i] = lo + (hi - lo) * i / (n - 1);
  p.back() = hi;
  return p;
}

std::string UniformGrid::to_string() const {
  return format_double(lo) + ":" + format_double(hi) + ":" + std::to_string(n);
}

UniformGrid UniformGrid::parse(std::string_view text) {
  auto parts = split(text, ':');
  if (parts.size() != 3) fail(ErrorKind::ParseError, "grid must read lo:hi:n, got '" + std::string(text) + "'");
  UniformGrid g;
  g.lo = parse_double(trim(parts[0]));
  g.hi = parse_double(trim(parts[1]));
  long n = parse_long(trim(parts[2]));
  if (n < 1 || n > 100000) fail(ErrorKind::ParseError, "grid point count must lie in [1, 100000]");
  if (!(g.lo <= g.hi)) fail(ErrorKind::ParseError, "grid needs lo <= hi");
  g.n = static_cast<int>(n);
  return g;
}

void KGProblem::validate() const {
  if (!(alpha > 1.0 && alpha <= 2.0)) fail(ErrorKind::InvalidArgument, "Klein-Gordon alpha must lie in (1, 2]");
  if (!(mu > 0.0) || !std::isfinite(mu)) fail(ErrorKind::InvalidArgument, "mu must be > 0");
  if (!std::isfinite(psi_hat.l1_norm())) fail(ErrorKind::InvalidArgument, "psi_hat must be integrable");
  if (!(xi_truncation >= 0.0)) fail(ErrorKind::InvalidArgument, "xi_truncation must be >= 0");
  (void)x_grid.points();
}

void SchrodingerProblem::validate() const {
  if (!(alpha > 0.0 && alpha <= 1.0)) fail(ErrorKind::InvalidArgument, "Schrodinger alpha must lie in (0, 1]");
  if (!(gamma >= 0.0 && gamma < alpha)) fail(ErrorKind::InvalidArgument, "gamma must satisfy 0 <= gamma < alpha");
  if (!(mu > 0.0) || !std::isfinite(mu)) fail(ErrorKind::InvalidArgument, "mu must be > 0");
  if (!std::isfinite(psi_hat.l1_norm())) fail(ErrorKind::InvalidArgument, "psi_hat must be integrable");
  if (!(xi_truncation >= 0.0)) fail(ErrorKind::InvalidArgument, "xi_truncation must be >= 0");
  (void)x_grid.points();
}

FieldSnapshot kg_solve(const KGProblem& problem, double t, const PdeConfig& cfg) {
  problem.validate();
  return solve(kg_kernel(problem, t), problem.psi_hat, problem.xi_truncation, problem.x_grid, t, cfg);
}

FieldSnapshot schrodinger_solve(const SchrodingerProblem& problem, double t, const PdeConfig& cfg) {
  problem.validate();
  return solve(schrodinger_kernel(problem, t), problem.psi_hat, problem.xi_truncation, problem.x_grid, t, cfg);
}

double kg_envelope(double alpha, double t) { return std::pow(t, alpha - 1.0) * std::pow(1.0 + t, 1.0 - alpha); }

double schrodinger_envelope(double alpha, double gamma, double t) {
  return std::pow(t, alpha - gamma) * std::pow(1.0 + t, gamma - alpha);
}

DispersiveReport dispersive_check(const KGProblem& problem, std::span<const double> t_grid, const PdeConfig& cfg,
                                  double ratio_cap) {
  problem.validate();
  return run_dispersive(
      "kg", problem.psi_hat, t_grid, cfg, ratio_cap,
      [&](double t, const PdeConfig& c) { return kg_solve(problem, t, c); },
      [&](double t) { return kg_envelope(problem.alpha, t); });
}

DispersiveReport dispersive_check(const SchrodingerProblem& problem, std::span<const double> t_grid,
                                  const PdeConfig& cfg, double ratio_cap) {
  problem.validate();
  return run_dispersive(
      "schrodinger", problem.psi_hat, t_grid, cfg, ratio_cap,
      [&](double t, const PdeConfig& c) { return schrodinger_solve(problem, t, c); },
      [&](double t) { return schrodinger_envelope(problem.alpha, problem.gamma, t); });
}

Amplitude gaussian_transform(const Amplitude& spatial) {
  if (spatial.kind() != Amplitude::Kind::Gaussian) {
    fail(ErrorKind::InvalidArgument, "closed-form transform is available for gaussian amplitudes only");
  }
  const double sigma = spatial.param_a(), scale = spatial.param_b();
  // (1/pi) s sigma sqrt(2 pi) exp(-sigma^2 xi^2 / 2)
  return Amplitude::gaussian(1.0 / sigma, scale * sigma * std::sqrt(2.0 / std::numbers::pi));
}

}  // namespace mlfc
