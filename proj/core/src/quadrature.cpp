#include "mlfc/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <numeric>
#include <string>

#include "mlfc/error.hpp"
#include "mlfc/parallel.hpp"
#include "mlfc/text.hpp"

namespace mlfc::quad {

const double GK21::xgk[11] = {
    0.995657163025808080735527280689003, 0.973906528517171720077964012084452,
    0.930157491355708226001207180059508, 0.865063366688984510732096688423493,
    0.780817726586416897063717578345042, 0.679409568299024406234327365114874,
    0.562757134668604683339000099272694, 0.433395394129247190799265943165784,
    0.294392862701460198131126603103866, 0.148874338981631210884826001129720,
    0.000000000000000000000000000000000};
const double GK21::wgk[11] = {
    0.011694638867371874278064396062192, 0.032558162307964727478818972459390,
    0.054755896574351996031381300244580, 0.075039674810919952767043140916190,
    0.093125454583697605535065465083366, 0.109387158802297641899210590325805,
    0.123491976262065851077600525452184, 0.134709217311473325928054001771707,
    0.142775938577060080797094273138717, 0.147739104901338491374841515972068,
    0.149445554002916905664936468389821};
const double GK21::wg[5] = {
    0.066671344308688137593568809893332, 0.149451349150580593145776339657697,
    0.219086362515982043995534934228163, 0.269266719309996355091226921569469,
    0.295524224714752870173892994651338};

Rule gauss_legendre(int n) {
  if (n < 1 || n > 512) fail(ErrorKind::InvalidArgument, "Gauss-Legendre order must lie in [1, 512]");
  Rule r;
  r.nodes.assign(n, 0.0);
  r.weights.assign(n, 0.0);
  for (int i = 0; i < (n + 1) / 2; ++i) {
    // Tricomi initial guess, then Newton on P_n.
    double x = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
    double dp = 1.0;
    for (int it = 0; it < 100; ++it) {
      double p0 = 1.0, p1 = x;
      for (int k = 2; k <= n; ++k) {
        double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = p2;
      }
      dp = n * (x * p1 - p0) / (x * x - 1.0);
      double dx = p1 / dp;
      x -= dx;
      if (std::fabs(dx) <= 1e-16 * std::fabs(x) + 1e-300) break;
    }
    double w = 2.0 / ((1.0 - x * x) * dp * dp);
    r.nodes[i] = -x;
    r.nodes[n - 1 - i] = x;
    r.weights[i] = r.weights[n - 1 - i] = w;
  }
  if (n % 2 == 1) r.nodes[n / 2] = 0.0;
  return r;
}

namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon();

struct Panel {
  double a = 0.0, b = 0.0;
  std::vector<complex> k;  // Kronrod value per component
  double err = 0.0;        // max_j |K - G|
  double resabs = 0.0;     // max_j integral of |f_j|
  double verr = 0.0;       // integrated node error bounds
};

void eval_panel(const BatchIntegrand& f, std::size_t m, Panel& p) {
  const double c = 0.5 * (p.a + p.b), h = 0.5 * (p.b - p.a);
  double xs[21];
  for (int i = 0; i < 10; ++i) {
    xs[2 * i] = c - h * GK21::xgk[i];
    xs[2 * i + 1] = c + h * GK21::xgk[i];
  }
  xs[20] = c;
  std::vector<complex> out(21 * m);
  double nerr[21] = {};
  f(std::span<const double>(xs, 21), out, std::span<double>(nerr, 21));
  double ve = GK21::wgk[10] * nerr[20];
  for (int i = 0; i < 10; ++i) ve += GK21::wgk[i] * (nerr[2 * i] + nerr[2 * i + 1]);
  p.verr = ve * h;
  p.k.assign(m, complex(0.0, 0.0));
  p.err = 0.0;
  p.resabs = 0.0;
  for (std::size_t j = 0; j < m; ++j) {
    complex kk = GK21::wgk[10] * out[20 * m + j];
    complex gg = 0.0;
    double ra = GK21::wgk[10] * std::abs(out[20 * m + j]);
    for (int i = 0; i < 10; ++i) {
      complex s = out[(2 * i) * m + j] + out[(2 * i + 1) * m + j];
      kk += GK21::wgk[i] * s;
      ra += GK21::wgk[i] * (std::abs(out[(2 * i) * m + j]) + std::abs(out[(2 * i + 1) * m + j]));
      if (i % 2 == 1) gg += GK21::wg[i / 2] * s;
    }
    p.k[j] = kk * h;
    p.err = std::max(p.err, std::abs(kk - gg) * h);
    p.resabs = std::max(p.resabs, ra * h);
  }
  if (!std::isfinite(p.err) || !std::isfinite(p.resabs) || !std::isfinite(p.verr)) {
    fail(ErrorKind::NonFinite, "integrand is not finite on [" + format_double(p.a) + ", " +
                                   format_double(p.b) + "]");
  }
}

}  // namespace

AdaptiveResult integrate_adaptive(const BatchIntegrand& f, std::size_t m,
                                  std::span<const double> cuts, const AdaptiveOptions& opt) {
  if (cuts.size() < 2) fail(ErrorKind::InvalidArgument, "need at least one panel");
  if (!(opt.abs_tol > 0.0)) fail(ErrorKind::InvalidArgument, "abs_tol must be > 0");
  std::vector<Panel> panels;
  panels.reserve(cuts.size() - 1);
  for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
    if (!(cuts[i] < cuts[i + 1])) fail(ErrorKind::InvalidArgument, "cuts must increase strictly");
    panels.push_back(Panel{cuts[i], cuts[i + 1], {}, 0.0, 0.0, 0.0});
  }
  AdaptiveResult res;
  if (static_cast<long>(panels.size()) * 21 > opt.max_evals) {
    fail(ErrorKind::QuadratureFailure,
         "initial subdivision of " + std::to_string(panels.size()) +
             " panels exceeds the evaluation budget of " + std::to_string(opt.max_evals));
  }
  parallel_for(panels.size(), opt.threads, [&](std::size_t i) { eval_panel(f, m, panels[i]); });
  res.n_evals = static_cast<long>(panels.size()) * 21;
  const double span_scale = std::max(std::fabs(cuts.front()), std::fabs(cuts.back()));

  for (;;) {
    double quad = 0.0, absint = 0.0, verr = 0.0;
    for (const Panel& p : panels) {
      quad += p.err;
      absint += p.resabs;
      verr += p.verr;
    }
    const double extra = verr + (opt.value_rel_error + 50.0 * kEps) * absint;
    res.quad_error = quad;
    res.value_error = verr;
    res.abs_integral = absint;
    res.est_error = quad + extra;
    if (res.est_error <= opt.abs_tol) break;
    if (extra > opt.abs_tol) {
      fail(ErrorKind::QuadratureFailure,
           "integrand value accuracy alone (" + format_double(extra) +
               ") exceeds the tolerance " + format_double(opt.abs_tol));
    }
    // Largest errors first, ties by position, until half the error is covered.
    std::vector<std::size_t> order(panels.size());
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t x, std::size_t y) { return panels[x].err > panels[y].err; });
    std::vector<char> split(panels.size(), 0);
    double covered = 0.0;
    std::size_t nsplit = 0;
    for (std::size_t idx : order) {
      if (covered >= 0.5 * quad) break;
      const Panel& p = panels[idx];
      double mid = 0.5 * (p.a + p.b);
      if (p.b - p.a <= 1e-13 * std::max(span_scale, 1e-300) || !(mid > p.a && mid < p.b)) continue;
      split[idx] = 1;
      covered += p.err;
      ++nsplit;
    }
    if (nsplit == 0) {
      fail(ErrorKind::QuadratureFailure, "no panel can be subdivided further; error estimate " +
                                             format_double(res.est_error));
    }
    if (res.n_evals + static_cast<long>(nsplit) * 42 > opt.max_evals) {
      fail(ErrorKind::QuadratureFailure,
           "evaluation budget of " + std::to_string(opt.max_evals) + " exhausted with error estimate " +
               format_double(res.est_error) + " > " + format_double(opt.abs_tol));
    }
    std::vector<Panel> next;
    next.reserve(panels.size() + nsplit);
    std::vector<std::size_t> fresh;
    for (std::size_t i = 0; i < panels.size(); ++i) {
      if (!split[i]) {
        next.push_back(std::move(panels[i]));
        continue;
      }
      double mid = 0.5 * (panels[i].a + panels[i].b);
      fresh.push_back(next.size());
      next.push_back(Panel{panels[i].a, mid, {}, 0.0, 0.0, 0.0});
      fresh.push_back(next.size());
      next.push_back(Panel{mid, panels[i].b, {}, 0.0, 0.0, 0.0});
    }
    parallel_for(fresh.size(), opt.threads, [&](std::size_t i) { eval_panel(f, m, next[fresh[i]]); });
    res.n_evals += static_cast<long>(fresh.size()) * 21;
    panels = std::move(next);
    ++res.rounds;
  }

  res.values.assign(m, complex(0.0, 0.0));
  for (const Panel& p : panels) {
    for (std::size_t j = 0; j < m; ++j) res.values[j] += p.k[j];
  }
  res.panels = panels.size();
  return res;
}

std::vector<complex> integrate_fixed(const BatchIntegrand& f, std::size_t m,
                                     std::span<const double> cuts, const Rule& rule, int threads,
                                     long* n_evals, double* abs_integral, double* value_error) {
  if (cuts.size() < 2) fail(ErrorKind::InvalidArgument, "need at least one panel");
  const std::size_t np = cuts.size() - 1, n = rule.nodes.size();
  std::vector<complex> partial(np * m);
  std::vector<double> partial_abs(np), partial_verr(np);
  parallel_for(np, threads, [&](std::size_t i) {
    const double c = 0.5 * (cuts[i] + cuts[i + 1]), h = 0.5 * (cuts[i + 1] - cuts[i]);
    std::vector<double> xs(n);
    for (std::size_t q = 0; q < n; ++q) xs[q] = c + h * rule.nodes[q];
    std::vector<complex> out(n * m);
    std::vector<double> nerr(n, 0.0);
    f(xs, out, nerr);
    double ve = 0.0;
    for (std::size_t q = 0; q < n; ++q) ve += rule.weights[q] * nerr[q];
    partial_verr[i] = ve * h;
    double amax = 0.0;
    for (std::size_t j = 0; j < m; ++j) {
      complex s = 0.0;
      double a = 0.0;
      for (std::size_t q = 0; q < n; ++q) {
        s += rule.weights[q] * out[q * m + j];
        a += rule.weights[q] * std::abs(out[q * m + j]);
      }
      partial[i * m + j] = s * h;
      amax = std::max(amax, a * h);
    }
    partial_abs[i] = amax;
  });
  std::vector<complex> total(m, complex(0.0, 0.0));
  double abs_total = 0.0, verr_total = 0.0;
  for (std::size_t i = 0; i < np; ++i) {
    for (std::size_t j = 0; j < m; ++j) total[j] += partial[i * m + j];
    abs_total += partial_abs[i];
    verr_total += partial_verr[i];
  }
  if (value_error) *value_error = verr_total;
  if (n_evals) *n_evals += static_cast<long>(np * n);
  if (abs_integral) *abs_integral = abs_total;
  return total;
}

}  // namespace mlfc::quad
