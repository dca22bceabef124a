#include "mlfc_cli/cli.hpp"

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <iostream>
#include <list>
#include <map>

#include <CLI11.hpp>

#include "mlfc/bounds.hpp"
#include "mlfc/error.hpp"
#include "mlfc/fpde.hpp"
#include "mlfc/mittag_leffler.hpp"
#include "mlfc/oscint.hpp"
#include "mlfc/text.hpp"
#include "mlfc_cli/acceptance.hpp"
#include "mlfc_cli/report.hpp"
#include "mlfc_cli/run_config.hpp"
#include "mlfc_cli/svg.hpp"

namespace mlfc::cli {
namespace {

std::string g(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6g", v);
  return buf;
}

int exit_code_for(ErrorKind kind) {
  if (kind == ErrorKind::HypothesisViolation) return kExitHypothesis;
  if (is_numerical_failure(kind)) return kExitNumerical;
  return kExitUsage;
}

complex parse_complex(const std::string& text) {
  auto parts = split(text, ',');
  if (parts.size() == 1) return {parse_double(parts[0], "z"), 0.0};
  if (parts.size() != 2) fail(ErrorKind::ParseError, "bad z: '" + text + "' (expected RE,IM)");
  return {parse_double(parts[0], "Re z"), parse_double(parts[1], "Im z")};
}

MLConfig ml_config(const RunConfig& cfg) {
  MLConfig m;
  m.r0 = cfg.number("r0");
  m.r1 = cfg.number("r1");
  if (!(m.r0 > 0) || !(m.r1 > 0)) fail(ErrorKind::InvalidArgument, "r0 and r1 must be positive");
  return m;
}

int threads_of(const RunConfig& cfg) {
  long t = cfg.integer("threads");
  if (t < 0) fail(ErrorKind::InvalidArgument, "threads must be >= 0");
  return static_cast<int>(t);
}

BoundConfig bound_config(const RunConfig& cfg) {
  BoundConfig b;
  b.ratio_cap = cfg.number("ratio_cap");
  b.slope_tol = cfg.number("slope_tol");
  b.use_oracle = cfg.flag("oracle");
  b.quad_tol = cfg.number("quad_tol");
  b.threads = threads_of(cfg);
  b.osc.ml = ml_config(cfg);
  b.oracle.ml = b.osc.ml;
  return b;
}

void emit(std::ostream& out, json j, const RunConfig& cfg) {
  j["config"] = cfg.echo();
  out << j.dump(2) << "\n";
}

// ---- commands

int cmd_mlf_eval(const RunConfig& cfg, std::ostream& out, std::ostream& err, bool as_json) {
  MLParams p{cfg.number("alpha"), cfg.number("beta")};
  p.validate();
  complex z = parse_complex(cfg.text("z"));
  MLConfig ml = ml_config(cfg);
  long digits = cfg.integer("oracle_digits");
  double tol = cfg.number("tol");
  complex v;
  std::string route;
  double est = 0.0;
  if (digits > 0) {
    v = ml_eval_oracle(p, z, static_cast<int>(digits), ml);
    route = "oracle";
  } else {
    if (!(tol >= 1e-14 && tol <= 1e-4)) fail(ErrorKind::InvalidArgument, "tol must lie in [1e-14, 1e-4]");
    auto r = MittagLeffler(p, tol, ml).evaluate(z);
    v = r.value;
    est = r.est_rel_error;
    route = to_string(r.route);
  }
  char line[160];
  std::snprintf(line, sizeof line, "%.17g %.17g %.17g %.17g", v.real(), v.imag(), std::abs(v), std::arg(v));
  if (as_json) {
    emit(out,
         {{"kind", "mlf_eval"},
          {"re", number(v.real())},
          {"im", number(v.imag())},
          {"abs", number(std::abs(v))},
          {"arg", number(std::arg(v))},
          {"route", route},
          {"est_rel_error", number(est)}},
         cfg);
  } else {
    out << line << "\n";
  }
  err << "E_{" << g(p.alpha) << "," << g(p.beta) << "}(" << g(z.real()) << (z.imag() < 0 ? "" : "+") << g(z.imag())
      << "i) via " << route << "\n";
  return kExitOk;
}

OscIntegralSpec integral_spec(const RunConfig& cfg) {
  OscIntegralSpec s;
  s.params = {cfg.number("alpha"), cfg.number("beta")};
  s.phase = Phase::parse(cfg.text("phase"));
  s.amplitude = Amplitude::parse(cfg.text("amp"));
  s.domain = Domain::parse(cfg.text("domain"));
  s.quad_tol = cfg.number("quad_tol");
  return s;
}

int cmd_oscint(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  OscIntegralSpec s = integral_spec(cfg);
  s.lambda = cfg.number("lambda");
  s.validate();
  IntegralResult r;
  const bool oracle = cfg.flag("oracle");
  if (oracle) {
    OracleConfig oc;
    oc.ml = ml_config(cfg);
    oc.threads = threads_of(cfg);
    r = compute_integral_oracle(s, oc);
  } else {
    OscConfig oc;
    oc.ml = ml_config(cfg);
    oc.threads = threads_of(cfg);
    r = compute_integral(s, oc);
  }
  json j = to_json(r);
  j["kind"] = "oscint";
  j["method"] = oracle ? "oracle" : "adaptive";
  j["phase"] = s.phase.to_string();
  j["amp"] = s.amplitude.to_string();
  j["domain"] = s.domain.to_string();
  emit(out, j, cfg);
  err << "I = " << g(r.value.real()) << (r.value.imag() < 0 ? " - " : " + ") << g(std::abs(r.value.imag()))
      << "i, |I| = " << g(r.abs_value) << ", est_error " << g(r.est_error) << ", " << r.n_evals << " evaluations\n";
  return kExitOk;
}

void bound_outputs(const BoundReport& r, const RunConfig& cfg, const std::string& title) {
  if (auto path = cfg.text("svg"); !path.empty())
    write_svg(decay_plot(r.lambdas, r.abs_values, r.rate.exponent, title), path);
  if (auto path = cfg.text("csv"); !path.empty()) write_text_file(path, decay_csv(r));
}

void bound_summary(const BoundReport& r, std::ostream& err) {
  err << to_string(r.setting);
  if (r.resolved != r.setting) err << " -> " << to_string(r.resolved);
  err << ": rate " << r.rate.formula << ", max ratio " << g(r.max_ratio);
  if (r.fit)
    err << ", slope " << g(r.fit->slope) << " (threshold " << g(r.slope_threshold) << ", r^2 " << g(r.fit->r_squared)
        << ")";
  else
    err << ", samples below noise (slope test passes trivially)";
  err << ": " << (r.pass ? "PASS" : "FAIL") << "\n";
}

int cmd_decay_verify(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  OscIntegralSpec s = integral_spec(cfg);
  TheoremSetting setting = parse_setting(cfg.text("theorem"));
  long k = cfg.integer("k");
  auto grid = parse_grid(cfg.text("grid"));
  BoundReport r = verify_bound(s, setting, static_cast<int>(k), grid, bound_config(cfg));
  bound_outputs(r, cfg, to_string(r.resolved) + ": alpha=" + g(s.params.alpha) + ", beta=" + g(s.params.beta));
  emit(out,
       {{"kind", "decay_verify"},
        {"phase", s.phase.to_string()},
        {"amp", s.amplitude.to_string()},
        {"domain", s.domain.to_string()},
        {"report", to_json(r)}},
       cfg);
  bound_summary(r, err);
  return r.pass ? kExitOk : kExitVerdict;
}

int cmd_rl(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  MLParams p{cfg.number("alpha"), cfg.number("beta")};
  Amplitude amp = Amplitude::parse(cfg.text("amp"));
  Domain d = Domain::parse(cfg.text("domain"));
  auto grid = parse_grid(cfg.text("grid"));
  BoundReport r = riemann_lebesgue_report(amp, p, d, grid, bound_config(cfg));
  bound_outputs(r, cfg, "RL -> " + to_string(r.resolved) + ": alpha=" + g(p.alpha) + ", beta=" + g(p.beta));
  emit(out, {{"kind", "rl"}, {"amp", amp.to_string()}, {"domain", d.to_string()}, {"report", to_json(r)}}, cfg);
  bound_summary(r, err);
  return r.pass ? kExitOk : kExitVerdict;
}

PdeConfig pde_config(const RunConfig& cfg) {
  PdeConfig c;
  c.tol = cfg.number("quad_tol");
  c.osc.ml = ml_config(cfg);
  c.osc.threads = threads_of(cfg);
  return c;
}

KGProblem kg_problem(const RunConfig& cfg) {
  KGProblem p;
  p.alpha = cfg.number("alpha");
  p.mu = cfg.number("mu");
  p.psi_hat = Amplitude::parse(cfg.text("psi_hat"));
  p.x_grid = UniformGrid::parse(cfg.text("xgrid"));
  p.validate();
  return p;
}

SchrodingerProblem schrodinger_problem(const RunConfig& cfg) {
  SchrodingerProblem p;
  p.alpha = cfg.number("alpha");
  p.gamma = cfg.number("gamma");
  p.mu = cfg.number("mu");
  p.psi_hat = Amplitude::parse(cfg.text("psi_hat"));
  p.x_grid = UniformGrid::parse(cfg.text("xgrid"));
  p.validate();
  return p;
}

int cmd_pde_snapshot(const RunConfig& cfg, std::ostream& out, std::ostream& err, bool kg) {
  double t = cfg.number("t");
  FieldSnapshot s = kg ? kg_solve(kg_problem(cfg), t, pde_config(cfg))
                       : schrodinger_solve(schrodinger_problem(cfg), t, pde_config(cfg));
  const std::string model = kg ? "kg" : "schrodinger";
  if (auto path = cfg.text("svg"); !path.empty()) {
    std::vector<double> mag;
    for (const auto& v : s.values) mag.push_back(std::abs(v));
    write_svg(field_plot(s.x, mag, (kg ? "Klein-Gordon" : "Schrodinger") + std::string(", t = ") + g(t)), path);
  }
  if (auto path = cfg.text("csv"); !path.empty()) write_text_file(path, field_csv(s));
  emit(out, {{"kind", "pde_snapshot"}, {"model", model}, {"snapshot", to_json(s)}}, cfg);
  err << model << " t=" << g(t) << ": sup |u| = " << g(s.sup_norm) << " over " << s.x.size()
      << " points, quad_error " << g(s.quad_error) << "\n";
  return kExitOk;
}

int cmd_pde_decay(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  const std::string model = cfg.text("model");
  auto tg = parse_grid(cfg.text("tgrid"));
  double cap = cfg.number("ratio_cap");
  DispersiveReport r;
  if (model == "kg") r = dispersive_check(kg_problem(cfg), tg, pde_config(cfg), cap);
  else if (model == "schrodinger") r = dispersive_check(schrodinger_problem(cfg), tg, pde_config(cfg), cap);
  else fail(ErrorKind::ParseError, "bad model: '" + model + "' (expected kg or schrodinger)");
  if (auto path = cfg.text("svg"); !path.empty()) {
    Plot p;
    p.title = "sup |u(t,.)| against the envelope (" + model + ")";
    p.x_label = "t";
    p.y_label = "sup norm";
    p.log_axes = true;
    p.series.push_back({"sup |u|", r.t_grid, r.sup_norms, PlotSeries::Role::Data});
    p.series.push_back({"envelope", r.t_grid, r.envelopes, PlotSeries::Role::Reference});
    write_svg(p, path);
  }
  if (auto path = cfg.text("csv"); !path.empty()) write_text_file(path, dispersive_csv(r));
  emit(out, {{"kind", "pde_decay"}, {"report", to_json(r)}}, cfg);
  err << model << ": max ratio " << g(r.max_ratio) << " over " << r.t_grid.size() << " times (cap " << g(cap)
      << "): " << (r.pass ? "PASS" : "FAIL") << "\n";
  return r.pass ? kExitOk : kExitVerdict;
}

int cmd_suite(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  AcceptanceOptions opt;
  opt.threads = threads_of(cfg);
  opt.progress = &err;
  auto results = run_acceptance(opt);
  json list = json::array();
  bool all = true;
  for (const auto& c : results) {
    list.push_back(to_json(c));
    all &= c.pass;
  }
  emit(out, {{"kind", "suite"}, {"suite", "acceptance"}, {"pass", all}, {"criteria", list}}, cfg);
  return all ? kExitOk : kExitVerdict;
}

int dispatch(const RunConfig& cfg, std::ostream& out, std::ostream& err, bool as_json) {
  const std::string& c = cfg.command();
  if (c == "mlf eval") return cmd_mlf_eval(cfg, out, err, as_json);
  if (c == "oscint") return cmd_oscint(cfg, out, err);
  if (c == "decay verify") return cmd_decay_verify(cfg, out, err);
  if (c == "pde kg") return cmd_pde_snapshot(cfg, out, err, true);
  if (c == "pde schrodinger") return cmd_pde_snapshot(cfg, out, err, false);
  if (c == "pde decay") return cmd_pde_decay(cfg, out, err);
  if (c == "rl") return cmd_rl(cfg, out, err);
  if (c == "suite acceptance") return cmd_suite(cfg, out, err);
  fail(ErrorKind::ParseError, "no command given");
}

// ---- argument parsing

struct Leaf {
  std::string command;
  CLI::App* app = nullptr;
  std::map<std::string, std::string> text;
  std::map<std::string, bool> flags;
  std::map<std::string, CLI::Option*> opts;
};

std::string flag_name(std::string_view key) {
  std::string s(key);
  for (char& c : s)
    if (c == '_') c = '-';
  return "--" + s;
}

void add_keys(Leaf& leaf) {
  for (auto key : command_keys(leaf.command)) {
    const KeyInfo* info = find_key(key);
    std::string k(key);
    std::string help(info->help);
    if (auto d = default_value(leaf.command, key); !d.empty()) help += " [" + d + "]";
    if (info->type == ValueType::Flag)
      leaf.opts[k] = leaf.app->add_flag(flag_name(key), leaf.flags[k], help);
    else
      leaf.opts[k] = leaf.app->add_option(flag_name(key), leaf.text[k], help)->allow_extra_args(false);
  }
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Mittag-Leffler oscillatory integrals, decay checks and fractional PDE envelopes", "mlfc"};
  app.require_subcommand(1);
  app.fallthrough();
  std::vector<std::string> config_files;
  app.add_option("--config", config_files, "key = value settings file (repeatable; JSON reports accepted)");
  bool as_json = false;

  std::list<Leaf> leaves;
  auto leaf = [&](CLI::App* parent, const std::string& name, const std::string& command, const std::string& help) {
    Leaf& l = leaves.emplace_back();
    l.command = command;
    l.app = parent->add_subcommand(name, help);
    add_keys(l);
    return &l;
  };
  auto* mlf = app.add_subcommand("mlf", "Mittag-Leffler function")->require_subcommand(1);
  Leaf* eval = leaf(mlf, "eval", "mlf eval", "E_{alpha,beta}(z); prints 're im abs arg'");
  eval->app->add_flag("--json", as_json, "print a JSON report instead of the value line");
  leaf(&app, "oscint", "oscint", "oscillatory integral I(lambda)");
  auto* decay = app.add_subcommand("decay", "decay statements")->require_subcommand(1);
  leaf(decay, "verify", "decay verify", "verify a decay statement over a lambda grid");
  auto* pde = app.add_subcommand("pde", "time-fractional model problems")->require_subcommand(1);
  leaf(pde, "kg", "pde kg", "Klein-Gordon field snapshot");
  leaf(pde, "schrodinger", "pde schrodinger", "Schrodinger field snapshot");
  leaf(pde, "decay", "pde decay", "sup-norm against the dispersive envelope over a t grid");
  leaf(&app, "rl", "rl", "Riemann-Lebesgue decay of an amplitude");
  auto* suite = app.add_subcommand("suite", "test batteries")->require_subcommand(1);
  leaf(suite, "acceptance", "suite acceptance", "run the acceptance criteria");
  auto* run_cmd = app.add_subcommand("run", "run the command stored in --config files");

  std::vector<std::string> storage{"mlfc"};
  storage.insert(storage.end(), args.begin(), args.end());
  std::vector<char*> argv;
  for (auto& s : storage) argv.push_back(s.data());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  }

  RunConfig cfg;
  try {
    for (auto& l : leaves)
      if (l.app->parsed()) cfg.set_command(l.command);
    if (const char* env = std::getenv("MLFC_CONFIG"); env && *env) cfg.load_file(env);
    for (const auto& f : config_files) cfg.load_file(f);
    if (run_cmd->parsed() && cfg.command().empty())
      fail(ErrorKind::ParseError, "run: the --config files name no command");
    for (auto& l : leaves) {
      if (!l.app->parsed()) continue;
      for (auto& [key, opt] : l.opts) {
        if (opt->count() == 0) continue;
        cfg.set(key, find_key(key)->type == ValueType::Flag ? (l.flags[key] ? "true" : "false") : l.text[key],
                flag_name(key));
      }
    }
    return dispatch(cfg, out, err, as_json);
  } catch (const Error& e) {
    int code = exit_code_for(e.kind());
    err << "error: " << e.what() << "\n";
    json j{{"kind", "error"},
           {"error", {{"kind", std::string(to_string(e.kind()))}, {"message", e.what()}, {"exit_code", code}}}};
    try {
      j["config"] = cfg.echo();
    } catch (const Error&) {
      j["config"] = {{"command", cfg.command()}};
    }
    out << j.dump(2) << "\n";
    return code;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    out << json{{"kind", "error"},
                {"error", {{"kind", "Internal"}, {"message", e.what()}, {"exit_code", kExitNumerical}}},
                {"config", {{"command", cfg.command()}}}}
               .dump(2)
        << "\n";
    return kExitNumerical;
  }
}

int main_entry(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return run(args, std::cout, std::cerr);
}

}  // namespace mlfc::cli
