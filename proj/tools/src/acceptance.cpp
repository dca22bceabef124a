#include "mlfc_cli/acceptance.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <functional>
#include <mutex>
#include <numbers>
#include <sstream>

#include "mlfc/bounds.hpp"
#include "mlfc/error.hpp"
#include "mlfc/fpde.hpp"
#include "mlfc/mittag_leffler.hpp"
#include "mlfc/parallel.hpp"
#include "mlfc/quadrature.hpp"
#include "mlfc/text.hpp"
#include "mlfc_cli/cli.hpp"
#include "mlfc_cli/report.hpp"

namespace mlfc::cli {
namespace {

using clock_type = std::chrono::steady_clock;
using std::numbers::pi;

CriterionOutcome outcome(int id, std::string title) {
  CriterionOutcome c;
  c.id = id;
  c.title = std::move(title);
  return c;
}

double since(clock_type::time_point t0) {
  return std::chrono::duration<double>(clock_type::now() - t0).count();
}

std::string g(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3g", v);
  return buf;
}

// ---- 1: evaluator against the oracles

CriterionOutcome oracle_equivalence(int threads) {
  CriterionOutcome c = outcome(1, "ML evaluator vs 50-digit oracle");
  c.time_limit = 60;
  struct Point {
    MLParams p;
    complex z;
  };
  std::vector<Point> pts;
  for (int ia = 1; ia <= 8; ++ia) {
    double a = 0.25 * ia;
    for (double b : {0.5, 0.8, 1.0, 1.2, a, a + 1, 3.0})
      for (double r : {0.0, 0.5, 2.0, 5.0, 10.0, 20.0, 40.0, 100.0, 300.0, 1000.0})
        for (int j = -4; j <= 4; ++j)
          pts.push_back({{a, b}, r == 0 ? complex(0, 0) : std::polar(r, j * pi / 4)});
  }
  const double rel_tol = 1e-8;
  std::vector<double> rel(pts.size(), 0.0);
  std::vector<int> source(pts.size(), 0);  // 0 series, 1 contour, 2 both non-finite
  std::vector<std::string> note(pts.size());
  MLConfig cfg;
  parallel_for(pts.size(), threads, [&](size_t i) {
    const auto& [p, z] = pts[i];
    complex ref, val;
    bool ref_overflow = false;
    try {
      if (oracle_guard_digits(p, z) <= cfg.guard_cap_digits) {
        ref = ml_eval_oracle(p, z, 50, cfg);
      } else {
        source[i] = 1;
        ref = ml_eval_contour(p, z);
      }
    } catch (const Error& e) {
      if (e.kind() != ErrorKind::NonFinite) throw;
      ref_overflow = true;
    }
    try {
      val = ml_eval(p, z, rel_tol, cfg);
    } catch (const Error& e) {
      if (ref_overflow && e.kind() == ErrorKind::NonFinite) {
        source[i] = 2;
        return;
      }
      rel[i] = INFINITY;
      note[i] = e.what();
      return;
    }
    rel[i] = ref_overflow ? INFINITY : std::abs(val - ref) / std::max(std::abs(ref), 1e-30);
  });
  size_t bad = 0, worst_i = 0;
  for (size_t i = 0; i < pts.size(); ++i) {
    if (!(rel[i] <= rel_tol)) ++bad;
    if (!(rel[i] <= rel[worst_i])) worst_i = i;
  }
  auto count = [&](int s) { return std::count(source.begin(), source.end(), s); };
  c.pass = bad == 0 && pts.size() >= 5000;
  c.metrics = {{"points", pts.size()},
               {"failures", bad},
               {"worst_rel_error", number(rel[worst_i])},
               {"rel_tol", rel_tol},
               {"series_oracle", count(0)},
               {"contour_oracle", count(1)},
               {"both_overflow", count(2)}};
  c.summary = std::to_string(pts.size()) + " points, worst rel error " + g(rel[worst_i]) + ", " +
              std::to_string(bad) + " above " + g(rel_tol);
  if (bad) {
    const auto& [p, z] = pts[worst_i];
    c.summary += "; worst at alpha=" + g(p.alpha) + " beta=" + g(p.beta) + " z=" + g(z.real()) + "," +
                 g(z.imag()) + (note[worst_i].empty() ? "" : " (" + note[worst_i] + ")");
  }
  return c;
}

// ---- 2: closed-form identities and the derivative identity

complex e12_reference(complex z) {
  if (std::abs(z) < 1.0) {
    // sum of z^k / (k+1)!
    complex s = 0.0, t = 1.0;
    for (int k = 0; k < 40; ++k) {
      t /= static_cast<double>(k + 1);
      s += t;
      t *= z;
    }
    return s;
  }
  return (std::exp(z) - 1.0) / z;
}

CriterionOutcome identity_suite() {
  CriterionOutcome c = outcome(2, "Identity suite");
  c.time_limit = 5;
  const double tol = 1e-10;
  std::vector<complex> args{0.0};
  for (double r : {0.3, 1.1, 2.7, 5.3, 9.1, 13.7, 19.9})
    for (int j = -4; j < 4; ++j) args.push_back(std::polar(r, j * pi / 4));
  struct Case {
    const char* name;
    MLParams p;
    std::function<complex(complex)> arg;
    std::function<complex(complex)> ref;
  };
  std::vector<Case> cases{
      {"E_{1,1}(z) = exp z", {1, 1}, [](complex z) { return z; }, [](complex z) { return std::exp(z); }},
      {"E_{2,1}(-w^2) = cos w", {2, 1}, [](complex w) { return -w * w; }, [](complex w) { return std::cos(w); }},
      {"E_{2,2}(-w^2) = sin w / w", {2, 2}, [](complex w) { return -w * w; },
       [](complex w) { return w == 0.0 ? complex(1.0) : std::sin(w) / w; }},
      {"E_{1,2}(z) = (exp z - 1) / z", {1, 2}, [](complex z) { return z; }, e12_reference},
  };
  bool ok = true;
  nlohmann::json per = nlohmann::json::array();
  for (const auto& cs : cases) {
    double worst = 0;
    for (complex w : args) {
      complex ref = cs.ref(w);
      complex val = ml_eval(cs.p, cs.arg(w), 1e-12);
      worst = std::max(worst, std::abs(val - ref) / std::abs(ref));
    }
    ok &= worst <= tol;
    per.push_back({{"identity", cs.name}, {"worst_rel_error", number(worst)}, {"points", args.size()}});
  }
  double worst_deriv = 0;
  size_t n_deriv = 0;
  for (double a : {0.6, 1.0, 1.5, 2.0})
    for (complex z : {complex(0.5, 0), complex(1, 1), complex(-2, 0), complex(0, 3)})
      for (double h : {1e-4, 1e-5}) {
        double d = ml_derivative_check(a, z, h);
        double bound = 10 * h * h * ml_derivative_scale(a, z);
        worst_deriv = std::max(worst_deriv, d / bound);
        ++n_deriv;
      }
  ok &= worst_deriv <= 1.0;
  per.push_back({{"identity", "d/dz E_{a,1} = E_{a,a} / a"},
                 {"worst_ratio_to_bound", number(worst_deriv)},
                 {"points", n_deriv}});
  c.pass = ok;
  c.metrics = {{"rel_tol", tol}, {"identities", per}};
  double worst_id = 0;
  for (size_t i = 0; i + 1 < per.size(); ++i) worst_id = std::max(worst_id, per[i]["worst_rel_error"].get<double>());
  c.summary = "worst identity rel error " + g(worst_id) + " (tol " + g(tol) + "), derivative check at " +
              g(worst_deriv) + " of 10 h^2 scale";
  return c;
}

// ---- 3 to 7: decay statements

BoundConfig bound_config(int threads) {
  BoundConfig cfg;
  cfg.threads = threads;
  return cfg;
}

OscIntegralSpec spec_of(double a, double b, Phase ph, Amplitude amp, Domain d) {
  OscIntegralSpec s;
  s.params = {a, b};
  s.phase = ph;
  s.amplitude = amp;
  s.domain = d;
  return s;
}

std::string slope_text(const BoundReport& r) {
  if (!r.fit) return "no fit (samples below noise)";
  return "slope " + g(r.fit->slope);
}

nlohmann::json bound_metrics(const BoundReport& r) {
  return {{"setting", to_string(r.resolved)},
          {"exponent", number(r.rate.exponent)},
          {"slope", r.fit ? number(r.fit->slope) : nlohmann::json(nullptr)},
          {"r_squared", r.fit ? number(r.fit->r_squared) : nlohmann::json(nullptr)},
          {"slope_threshold", number(r.slope_threshold)},
          {"max_ratio", number(r.max_ratio)},
          {"ratio_pass", r.ratio_pass},
          {"slope_pass", r.slope_pass},
          {"slope_trivial", r.slope_trivial},
          {"pass", r.pass}};
}

CriterionOutcome classical_van_der_corput(int threads) {
  CriterionOutcome c = outcome(3, "Classical van der Corput slope");
  c.time_limit = 60;
  auto spec = spec_of(1, 1, Phase::quadratic(0), Amplitude::indicator(0, 1), Domain::interval(0, 1));
  auto grid = geometric_grid(10, 1e4, 16);
  auto cfg = bound_config(threads);
  BoundReport adaptive = verify_bound(spec, TheoremSetting::T33, 2, grid, cfg);
  cfg.use_oracle = true;
  BoundReport brute = verify_bound(spec, TheoremSetting::T33, 2, grid, cfg);
  const double target = -0.5, band = 0.07;
  auto in_band = [&](const BoundReport& r) { return r.fit && std::abs(r.fit->slope - target) <= band; };
  double worst_gap = 0;
  for (size_t i = 0; i < grid.size(); ++i) {
    double allowed = 2 * std::max(adaptive.est_errors[i], brute.est_errors[i]);
    worst_gap = std::max(worst_gap, std::abs(adaptive.abs_values[i] - brute.abs_values[i]) / allowed);
  }
  c.pass = in_band(adaptive) && in_band(brute) && worst_gap <= 1.0;
  c.metrics = {{"adaptive", bound_metrics(adaptive)},
               {"oracle", bound_metrics(brute)},
               {"target_slope", target},
               {"band", band},
               {"worst_gap_over_2_est_error", number(worst_gap)}};
  c.summary = "adaptive " + slope_text(adaptive) + ", oracle " + slope_text(brute) + " (target -0.5 +- 0.07), " +
              "route gap " + g(worst_gap) + " of 2 est_error";
  return c;
}

CriterionOutcome decay_case(int id, std::string title, const OscIntegralSpec& spec, TheoremSetting s, int k,
                            bool ratio_only, int threads) {
  CriterionOutcome c = outcome(id, std::move(title));
  auto grid = geometric_grid(10, 1e4, 16);
  BoundReport r = verify_bound(spec, s, k, grid, bound_config(threads));
  c.pass = ratio_only ? r.ratio_pass : r.pass;
  c.metrics = bound_metrics(r);
  c.summary = to_string(r.resolved) + ": max ratio " + g(r.max_ratio) + ", " + slope_text(r) + " (threshold " +
              g(r.slope_threshold) + ")" + (ratio_only ? ", ratio test only" : "");
  return c;
}

// ---- 8: hypothesis gating through the command line

CriterionOutcome hypothesis_gating() {
  CriterionOutcome c = outcome(8, "Hypothesis gating");
  struct Case {
    const char* name;
    std::vector<std::string> args;
  };
  std::vector<Case> cases{
      {"k=1 with phi=x^2 on [0,1]",
       {"decay", "verify", "--theorem", "T33", "--alpha", "1", "--beta", "1", "--k", "1", "--phase", "quadratic:c=0",
        "--domain", "0,1"}},
      {"T21i with beta < alpha+1",
       {"decay", "verify", "--theorem", "T21i", "--alpha", "1.5", "--beta", "2", "--phase", "mass_shell:mu=1",
        "--amp", "gaussian:sigma=1", "--domain", "line"}},
      {"T22 with non-invertible phi",
       {"decay", "verify", "--theorem", "T22", "--alpha", "0.8", "--beta", "1", "--phase", "quadratic:c=1",
        "--amp", "gaussian:sigma=1", "--domain", "line"}},
  };
  bool ok = true;
  nlohmann::json per = nlohmann::json::array();
  for (const auto& cs : cases) {
    std::ostringstream out, err;
    int code = run(cs.args, out, err);
    std::string kind;
    try {
      auto j = nlohmann::json::parse(out.str());
      kind = j.at("error").at("kind").get<std::string>();
    } catch (const std::exception&) {
      kind = "no error report";
    }
    bool good = code == 2 && kind == "HypothesisViolation";
    ok &= good;
    per.push_back({{"case", cs.name}, {"exit_code", code}, {"error_kind", kind}, {"pass", good}});
  }
  c.pass = ok;
  c.metrics = {{"cases", per}};
  c.summary = ok ? "all three configurations exit 2 with HypothesisViolation" : "a configuration was not gated";
  return c;
}

// ---- 9: reductions of the PDE kernels

// Composite Gauss-Legendre of kern(xi) exp(-xi^2/2) exp(i x xi) over [-12, 12].
complex classical_synthesis(const std::function<complex(double)>& kern, double x) {
  static const quad::Rule rule = quad::gauss_legendre(30);
  const int panels = 4000;
  const double a = -12, b = 12, h = (b - a) / panels;
  complex s = 0;
  for (int p = 0; p < panels; ++p) {
    double mid = a + (p + 0.5) * h;
    for (size_t q = 0; q < rule.nodes.size(); ++q) {
      double xi = mid + 0.5 * h * rule.nodes[q];
      s += 0.5 * h * rule.weights[q] * kern(xi) * std::exp(-xi * xi / 2) * std::polar(1.0, x * xi);
    }
  }
  return s;
}

CriterionOutcome pde_reductions() {
  CriterionOutcome c = outcome(9, "PDE kernel reductions");
  const double tol = 1e-8;
  KGProblem kg;
  kg.alpha = 2;
  kg.mu = 1;
  kg.x_grid = {-5, 5, 5};
  SchrodingerProblem sp;
  sp.alpha = 1;
  sp.gamma = 0;
  sp.mu = 1;
  sp.x_grid = {-5, 5, 5};
  double kg_err = 0, sch_err = 0;
  int n_kg = 0, n_sch = 0;
  for (double t : {0.5, 3.0}) {
    auto s = kg_solve(kg, t);
    for (size_t j = 0; j < s.x.size(); ++j, ++n_kg) {
      auto ref = classical_synthesis(
          [t](double xi) {
            double w = std::sqrt(xi * xi + 1);
            return complex(std::sin(t * w) / w, 0);
          },
          s.x[j]);
      kg_err = std::max(kg_err, std::abs(ref - s.values[j]));
    }
    auto u = schrodinger_solve(sp, t);
    for (size_t j = 0; j < u.x.size(); ++j, ++n_sch) {
      auto ref = classical_synthesis(
          [t](double xi) {
            double w = xi * xi + 1;
            return (std::exp(complex(0, t * w)) - 1.0) / complex(0, w);
          },
          u.x[j]);
      sch_err = std::max(sch_err, std::abs(ref - u.values[j]));
    }
  }
  c.pass = kg_err <= tol && sch_err <= tol && n_kg >= 10 && n_sch >= 10;
  c.metrics = {{"tol", tol},
               {"kg_points", n_kg},
               {"kg_max_error", number(kg_err)},
               {"schrodinger_points", n_sch},
               {"schrodinger_max_error", number(sch_err)}};
  c.summary = "KG alpha=2 vs sine kernel " + g(kg_err) + ", Schrodinger alpha=1 vs closed form " + g(sch_err) +
              " (tol " + g(tol) + ")";
  return c;
}

// ---- 10: dispersive envelopes

CriterionOutcome dispersive(int threads) {
  CriterionOutcome c = outcome(10, "Dispersive envelopes");
  c.time_limit = 240;
  auto tg = geometric_grid(1, 100, 12);
  PdeConfig cfg;
  cfg.osc.threads = threads;
  auto t0 = clock_type::now();
  auto kg = dispersive_check(KGProblem{}, tg, cfg);
  double kg_s = since(t0);
  t0 = clock_type::now();
  auto sch = dispersive_check(SchrodingerProblem{}, tg, cfg);
  double sch_s = since(t0);
  const double limit_each = 120;
  c.pass = kg.pass && sch.pass && kg_s <= limit_each && sch_s <= limit_each;
  c.metrics = {{"kg_max_ratio", number(kg.max_ratio)},
               {"kg_seconds", kg_s},
               {"schrodinger_max_ratio", number(sch.max_ratio)},
               {"schrodinger_seconds", sch_s},
               {"ratio_cap", kg.ratio_cap},
               {"seconds_limit_each", limit_each}};
  c.summary = "max ratio KG " + g(kg.max_ratio) + " (" + g(kg_s) + " s), Schrodinger " + g(sch.max_ratio) + " (" +
              g(sch_s) + " s), cap 1e3";
  return c;
}

// ---- 11: Riemann-Lebesgue decay

CriterionOutcome riemann_lebesgue(int threads) {
  CriterionOutcome c = outcome(11, "Riemann-Lebesgue rates");
  auto cfg = bound_config(threads);
  bool ok = true;
  nlohmann::json per = nlohmann::json::array();
  std::string summary;
  auto grid = geometric_grid(10, 1e4, 16);
  for (auto [a, b] : {std::pair{1.2, 2.5}, std::pair{1.2, 1.5}, std::pair{0.8, 0.8}}) {
    auto r = riemann_lebesgue_report(Amplitude::smooth_bump(0, 1), {a, b}, Domain::interval(0, 1), grid, cfg);
    ok &= r.pass;
    auto m = bound_metrics(r);
    m["alpha"] = a;
    m["beta"] = b;
    per.push_back(m);
    summary += "(" + g(a) + "," + g(b) + ") " + to_string(r.resolved) + " " + slope_text(r) + " thr " +
               g(r.slope_threshold) + (r.pass ? " ok; " : " FAIL; ");
  }
  auto line_grid = geometric_grid(10, 1e3, 12);
  for (double a : {1.0, 0.8}) {
    auto r = riemann_lebesgue_report(Amplitude::gaussian(1), {a, 1.0}, Domain::whole_line(), line_grid, cfg);
    double last = r.abs_values.back();
    bool good = last < 1e-3 && r.pass;
    ok &= good;
    auto m = bound_metrics(r);
    m["alpha"] = a;
    m["beta"] = 1.0;
    m["abs_at_1e3"] = number(last);
    per.push_back(m);
    summary += "line alpha=" + g(a) + " |I(1e3)| " + g(last) + (good ? " ok; " : " FAIL; ");
  }
  summary.resize(summary.size() - 2);
  c.pass = ok;
  c.metrics = {{"cases", per}};
  c.summary = summary;
  return c;
}

template <class F>
CriterionOutcome guarded(int id, const char* title, F&& f) {
  auto t0 = clock_type::now();
  CriterionOutcome c;
  try {
    c = f();
  } catch (const std::exception& e) {
    c = outcome(id, title);
    c.pass = false;
    c.summary = std::string("error: ") + e.what();
  }
  c.seconds = since(t0);
  if (c.time_limit > 0 && c.seconds > c.time_limit) {
    c.pass = false;
    c.summary += "; took " + g(c.seconds) + " s, limit " + g(c.time_limit) + " s";
  }
  return c;
}

}  // namespace

nlohmann::json to_json(const CriterionOutcome& c) {
  return {{"id", c.id},       {"title", c.title},           {"pass", c.pass},      {"seconds", c.seconds},
          {"time_limit", c.time_limit}, {"summary", c.summary}, {"metrics", c.metrics}};
}

std::vector<CriterionOutcome> run_acceptance(const AcceptanceOptions& opt) {
  const int threads = resolve_threads(opt.threads);
  std::vector<std::pair<const char*, std::function<CriterionOutcome()>>> steps{
      {"ML evaluator vs 50-digit oracle", [&] { return oracle_equivalence(threads); }},
      {"Identity suite", [&] { return identity_suite(); }},
      {"Classical van der Corput slope", [&] { return classical_van_der_corput(threads); }},
      {"T33 at alpha = beta = 0.8",
       [&] {
         return decay_case(4, "T33 at alpha = beta = 0.8",
                           spec_of(0.8, 0.8, Phase::quadratic(0), Amplitude::indicator(0, 1), Domain::interval(0, 1)),
                           TheoremSetting::T33, 2, false, threads);
       }},
      {"T21ii on the real line",
       [&] {
         return decay_case(5, "T21ii on the real line",
                           spec_of(1.5, 2, Phase::mass_shell(1), Amplitude::gaussian(1), Domain::whole_line()),
                           TheoremSetting::T21ii, 1, false, threads);
       }},
      {"T21iii at alpha = 2",
       [&] {
         return decay_case(6, "T21iii at alpha = 2",
                           spec_of(2, 2, Phase::mass_shell(1), Amplitude::gaussian(1), Domain::whole_line()),
                           TheoremSetting::T21iii, 1, true, threads);
       }},
      {"T31i log-corrected",
       [&] {
         return decay_case(7, "T31i log-corrected",
                           spec_of(1.2, 2.5, Phase::affine(1, 0), Amplitude::one(), Domain::interval(0, 1)),
                           TheoremSetting::T31i, 1, false, threads);
       }},
      {"Hypothesis gating", [&] { return hypothesis_gating(); }},
      {"PDE kernel reductions", [&] { return pde_reductions(); }},
      {"Dispersive envelopes", [&] { return dispersive(threads); }},
      {"Riemann-Lebesgue rates", [&] { return riemann_lebesgue(threads); }},
  };
  std::vector<CriterionOutcome> out;
  auto t0 = clock_type::now();
  int id = 0;
  for (auto& [title, fn] : steps) {
    ++id;
    out.push_back(guarded(id, title, fn));
    if (opt.progress)
      *opt.progress << "criterion " << id << ": " << (out.back().pass ? "PASS" : "FAIL") << " (" << g(out.back().seconds)
                    << " s) " << out.back().summary << std::endl;
  }
  CriterionOutcome total = outcome(12, "Full acceptance run");
  total.time_limit = 600;
  total.seconds = since(t0);
  size_t failed = std::count_if(out.begin(), out.end(), [](const auto& c) { return !c.pass; });
  total.pass = failed == 0 && total.seconds <= total.time_limit;
  total.metrics = {{"failed_criteria", failed}, {"threads", threads}};
  total.summary = std::to_string(out.size() - failed) + " of " + std::to_string(out.size()) + " criteria passed in " +
                  g(total.seconds) + " s (limit 600 s)";
  if (opt.progress)
    *opt.progress << "criterion 12: " << (total.pass ? "PASS" : "FAIL") << " " << total.summary << std::endl;
  out.push_back(total);
  return out;
}

}  // namespace mlfc::cli
