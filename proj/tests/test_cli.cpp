#include <gtest/gtest.h>

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "mlfc/error.hpp"
#include "mlfc_cli/cli.hpp"
#include "mlfc_cli/report.hpp"
#include "mlfc_cli/svg.hpp"

using namespace mlfc;
using namespace mlfc::cli;
namespace fs = std::filesystem;

namespace {

struct Outcome {
  int code;
  std::string out;
  std::string err;
  json doc() const { return json::parse(out); }
};

Outcome call(std::vector<std::string> args) {
  std::ostringstream out, err;
  int code = run(args, out, err);
  return {code, out.str(), err.str()};
}

fs::path scratch(const std::string& name) {
  fs::path dir = fs::temp_directory_path() / "mlfc_cli_test";
  fs::create_directories(dir);
  return dir / name;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void spit(const fs::path& p, const std::string& text) { std::ofstream(p, std::ios::binary) << text; }

// Compares against tests/golden/<name>; MLFC_UPDATE_GOLDEN=1 rewrites it.
void expect_golden(const std::string& name, const std::string& text) {
  fs::path path = fs::path(MLFC_GOLDEN_DIR) / name;
  if (const char* up = std::getenv("MLFC_UPDATE_GOLDEN"); up && std::string(up) == "1") {
    spit(path, text);
    return;
  }
  ASSERT_TRUE(fs::exists(path)) << path << " missing; run with MLFC_UPDATE_GOLDEN=1";
  EXPECT_EQ(slurp(path), text) << "golden mismatch for " << name;
}

std::vector<double> synthetic_lambdas() {
  std::vector<double> l;
  for (int i = 0; i < 16; ++i) l.push_back(10 * std::pow(1e3, i / 15.0));
  return l;
}

}  // namespace

TEST(Cli, MlfEvalPrintsLine) {
  Outcome o = call({"mlf", "eval", "--alpha", "1", "--beta", "1", "--z", "1"});
  EXPECT_EQ(o.code, kExitOk);
  double re, im, ab, arg;
  std::istringstream(o.out) >> re >> im >> ab >> arg;
  EXPECT_NEAR(re, std::exp(1.0), 1e-15);
  EXPECT_EQ(im, 0);
  EXPECT_EQ(arg, 0);
}

TEST(Cli, MlfEvalJson) {
  Outcome o = call({"mlf", "eval", "--alpha", "2", "--beta", "1", "--z", "-1,0", "--json"});
  ASSERT_EQ(o.code, kExitOk) << o.err;
  json j = o.doc();
  EXPECT_EQ(j["kind"], "mlf_eval");
  EXPECT_EQ(j["config"]["command"], "mlf eval");
  EXPECT_EQ(j["config"]["alpha"], 2.0);
}

TEST(Cli, ExitCodes) {
  EXPECT_EQ(call({}).code, kExitUsage);
  EXPECT_EQ(call({"mlf", "eval", "--z", "1", "--bogus", "2"}).code, kExitUsage);
  EXPECT_EQ(call({"mlf", "eval", "--alpha", "3", "--z", "1"}).code, kExitUsage);
  EXPECT_EQ(call({"mlf", "eval", "--z", "800"}).code, kExitNumerical);

  Outcome gate = call({"decay", "verify", "--theorem", "T33", "--alpha", "0.8", "--beta", "0.8", "--k", "1",
                       "--phase", "quadratic:c=0", "--amp", "indicator:a=0,b=1"});
  EXPECT_EQ(gate.code, kExitHypothesis);
  json e = gate.doc();
  EXPECT_EQ(e["kind"], "error");
  EXPECT_EQ(e["error"]["kind"], "HypothesisViolation");
  EXPECT_EQ(e["error"]["exit_code"], kExitHypothesis);

  Outcome verdict = call({"decay", "verify", "--theorem", "T31i", "--alpha", "1.2", "--beta", "2.5", "--grid",
                          "10:1e3:8", "--ratio-cap", "1e-6"});
  EXPECT_EQ(verdict.code, kExitVerdict);
  EXPECT_EQ(verdict.doc()["kind"], "decay_verify");
  EXPECT_EQ(verdict.doc()["report"]["pass"], false);
}

TEST(Cli, ConfigPrecedence) {
  fs::path env_file = scratch("env.conf"), a = scratch("a.conf"), b = scratch("b.conf");
  spit(env_file, "# from the environment\nalpha = 0.5\nbeta = 0.7\nz = 2\n");
  spit(a, "beta = 1.5\n");
  spit(b, "beta = 2.5\ntol = 1e-12\n");
  setenv("MLFC_CONFIG", env_file.c_str(), 1);
  Outcome o = call({"--config", a.string(), "--config", b.string(), "mlf", "eval", "--json", "--tol", "1e-10"});
  unsetenv("MLFC_CONFIG");
  ASSERT_EQ(o.code, kExitOk) << o.err;
  json c = o.doc()["config"];
  EXPECT_EQ(c["alpha"], 0.5);  // environment file
  EXPECT_EQ(c["beta"], 2.5);   // later --config wins
  EXPECT_EQ(c["tol"], 1e-10);  // explicit flag wins
  EXPECT_EQ(c["z"], "2");
}

TEST(Cli, UnknownConfigKeyIsParseError) {
  fs::path f = scratch("bad.conf");
  spit(f, "alpah = 1\n");
  Outcome o = call({"--config", f.string(), "mlf", "eval", "--z", "1", "--json"});
  EXPECT_EQ(o.code, kExitUsage);
  EXPECT_EQ(o.doc()["error"]["kind"], "ParseError");
}

TEST(Cli, ConfigEchoRoundTrip) {
  Outcome first = call({"oscint", "--alpha", "0.8", "--beta", "0.8", "--lambda", "50", "--phase", "quadratic:c=0",
                        "--amp", "indicator:a=0,b=1", "--threads", "1"});
  ASSERT_EQ(first.code, kExitOk) << first.err;
  fs::path report = scratch("report.json");
  spit(report, first.out);
  Outcome again = call({"run", "--config", report.string()});
  ASSERT_EQ(again.code, kExitOk) << again.err;
  EXPECT_EQ(first.out, again.out);

  // The flat key = value form of the echo replays the same way.
  json cfg = first.doc()["config"];
  std::string text;
  for (auto& [k, v] : cfg.items()) text += k + " = " + (v.is_string() ? v.get<std::string>() : v.dump()) + "\n";
  fs::path flat = scratch("flat.conf");
  spit(flat, text);
  Outcome third = call({"run", "--config", flat.string()});
  ASSERT_EQ(third.code, kExitOk) << third.err;
  EXPECT_EQ(first.out, third.out);
}

TEST(Cli, ThreadCountOnlyChangesTheEcho) {
  std::vector<std::string> base{"decay", "verify", "--theorem", "T31i", "--alpha", "1.2", "--beta", "2.5",
                                "--grid", "10:1e3:8"};
  auto with = [&](const char* n) {
    auto v = base;
    v.insert(v.end(), {"--threads", n});
    return call(v);
  };
  Outcome one = with("1"), two = with("2");
  ASSERT_EQ(one.code, kExitOk) << one.err;
  ASSERT_EQ(two.code, kExitOk) << two.err;
  json a = one.doc(), b = two.doc();
  EXPECT_EQ(a["config"]["threads"], 1);
  a.erase("config");
  b.erase("config");
  EXPECT_EQ(a.dump(), b.dump());
}

TEST(Cli, DeterministicBytes) {
  std::vector<std::string> args{"pde", "schrodinger", "--xgrid", "-3:3:7", "--t", "2"};
  Outcome a = call(args), b = call(args);
  ASSERT_EQ(a.code, kExitOk) << a.err;
  EXPECT_EQ(a.out, b.out);
  EXPECT_EQ(a.doc()["kind"], "pde_snapshot");
}

TEST(Cli, CsvHeaders) {
  fs::path f = scratch("field.csv"), d = scratch("decay.csv"), p = scratch("disp.csv");
  ASSERT_EQ(call({"pde", "kg", "--xgrid", "-2:2:5", "--csv", f.string()}).code, kExitOk);
  ASSERT_EQ(call({"decay", "verify", "--theorem", "T31i", "--alpha", "1.2", "--beta", "2.5", "--grid", "10:1e3:8",
                  "--csv", d.string()})
                .code,
            kExitOk);
  ASSERT_EQ(call({"pde", "decay", "--model", "kg", "--tgrid", "1:10:3", "--xgrid", "-5:5:11", "--csv", p.string()})
                .code,
            kExitOk);
  auto header = [](const fs::path& path) {
    std::ifstream in(path);
    std::string line;
    std::getline(in, line);
    return line;
  };
  EXPECT_EQ(header(f), "x,re,im,abs");
  EXPECT_EQ(header(d), "lambda,abs_I,ratio");
  EXPECT_EQ(header(p), "t,sup_norm,envelope,ratio");
}

TEST(Svg, EmptyDataSeriesIsAnError) {
  Plot p;
  p.series.push_back({"reference", {1, 10}, {1, 0.1}, PlotSeries::Role::Reference});
  try {
    render_svg(p);
    FAIL() << "expected SvgError";
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::SvgError);
  }
  p.series.push_back({"data", {}, {}, PlotSeries::Role::Data});
  EXPECT_THROW(render_svg(p), Error);
  p.series.back() = {"data", {-1, 0}, {1, 2}, PlotSeries::Role::Data};
  p.log_axes = true;
  EXPECT_THROW(render_svg(p), Error);
}

TEST(Svg, GoldenDecayPlot) {
  auto l = synthetic_lambdas();
  std::vector<double> v;
  for (double x : l) v.push_back(0.8 * std::pow(x, -0.5));
  std::string svg = render_svg(decay_plot(l, v, 0.5, "synthetic lambda^-1/2"));
  EXPECT_EQ(svg, render_svg(decay_plot(l, v, 0.5, "synthetic lambda^-1/2")));
  EXPECT_NE(svg.find("class=\"reference\""), std::string::npos);
  EXPECT_NE(svg.find("class=\"data\""), std::string::npos);
  expect_golden("decay_synthetic.svg", svg);
}

TEST(Svg, GoldenFieldSnapshot) {
  fs::path f = scratch("kg.svg");
  Outcome o = call({"pde", "kg", "--xgrid", "-4:4:41", "--svg", f.string()});
  ASSERT_EQ(o.code, kExitOk) << o.err;
  expect_golden("kg_field.svg", slurp(f));
}

TEST(Report, NonFiniteNumbersAreStrings) {
  EXPECT_EQ(number(INFINITY), "inf");
  EXPECT_EQ(number(-INFINITY), "-inf");
  EXPECT_EQ(number(NAN), "nan");
  EXPECT_EQ(number(0.5), 0.5);
}

TEST(Report, UnwritableSvgPathIsIoError) {
  Outcome o = call({"pde", "kg", "--xgrid", "-1:1:3", "--svg", "/nonexistent-dir/x.svg"});
  EXPECT_EQ(o.code, kExitUsage);
  EXPECT_EQ(o.doc()["error"]["kind"], "IoError");
}
