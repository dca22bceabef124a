#include "mlfc_cli/report.hpp"

#include <cmath>
#include <fstream>

#include "mlfc/error.hpp"
#include "mlfc/text.hpp"

namespace mlfc::cli {
namespace {

json numbers(const std::vector<double>& v) {
  json a = json::array();
  for (double x : v) a.push_back(number(x));
  return a;
}

}  // namespace

json number(double v) {
  if (std::isfinite(v)) return v;
  return format_double(v);
}

json to_json(const IntegralResult& r) {
  return json{{"value_re", number(r.value.real())},
              {"value_im", number(r.value.imag())},
              {"abs", number(r.abs_value)},
              {"est_error", number(r.est_error)},
              {"n_evals", r.n_evals},
              {"panels", r.panels},
              {"truncation", number(r.truncation)},
              {"tail_error", number(r.tail_error)}};
}

json to_json(const PhaseCert& c) {
  return json{{"k", c.k},
              {"interval", c.interval.to_string()},
              {"inf_abs", number(c.inf_abs)},
              {"witness", number(c.witness)},
              {"monotone_deriv", c.monotone_deriv},
              {"inf_abs_phase", number(c.inf_abs_phase)},
              {"inf_abs_deriv", number(c.inf_abs_deriv)},
              {"invertible", c.invertible}};
}

json to_json(const DecayRate& r) {
  const char* base = r.base == RateBase::Lambda           ? "lambda"
                     : r.base == RateBase::OnePlusLambdaM ? "one_plus_lambda_m"
                                                          : "lambda_m";
  return json{{"exponent", number(r.exponent)},
              {"log_power", number(r.log_power)},
              {"growth_correction", number(r.growth_correction)},
              {"base", base},
              {"m", number(r.m)},
              {"constant_functional", r.constant_functional},
              {"formula", r.formula}};
}

json to_json(const DecayFit& f) {
  return json{{"slope", number(f.slope)},
              {"intercept", number(f.intercept)},
              {"r_squared", number(f.r_squared)},
              {"with_log_correction", f.with_log_correction},
              {"used", f.used},
              {"excluded", f.excluded}};
}

json to_json(const BoundReport& r) {
  json j{{"setting", to_string(r.setting)},
         {"resolved", to_string(r.resolved)},
         {"alpha", number(r.params.alpha)},
         {"beta", number(r.params.beta)},
         {"k", r.k},
         {"rate", to_json(r.rate)},
         {"amplitude_factor", number(r.amplitude_factor)},
         {"lambdas", numbers(r.lambdas)},
         {"abs_values", numbers(r.abs_values)},
         {"est_errors", numbers(r.est_errors)},
         {"ratios", numbers(r.ratios)},
         {"max_ratio", number(r.max_ratio)},
         {"fit", r.fit ? to_json(*r.fit) : json(nullptr)},
         {"slope_threshold", number(r.slope_threshold)},
         {"ratio_pass", r.ratio_pass},
         {"slope_pass", r.slope_pass},
         {"slope_trivial", r.slope_trivial},
         {"pass", r.pass},
         {"cert", r.cert ? to_json(*r.cert) : json(nullptr)},
         {"inv_phi_prime_sup", r.inv_phi_prime_sup ? number(*r.inv_phi_prime_sup) : json(nullptr)}};
  return j;
}

json to_json(const FieldSnapshot& s) {
  json re = json::array(), im = json::array(), ab = json::array();
  for (const auto& v : s.values) {
    re.push_back(number(v.real()));
    im.push_back(number(v.imag()));
    ab.push_back(number(std::abs(v)));
  }
  return json{{"t", number(s.t)},
              {"x", numbers(s.x)},
              {"re", re},
              {"im", im},
              {"abs", ab},
              {"sup_norm", number(s.sup_norm)},
              {"quad_error", number(s.quad_error)},
              {"xi_truncation", number(s.xi_truncation)},
              {"n_evals", s.n_evals}};
}

json to_json(const DispersiveReport& r) {
  return json{{"model", r.model},
              {"t_grid", numbers(r.t_grid)},
              {"sup_norms", numbers(r.sup_norms)},
              {"quad_errors", numbers(r.quad_errors)},
              {"envelopes", numbers(r.envelopes)},
              {"ratios", numbers(r.ratios)},
              {"psi_hat_l1", number(r.psi_hat_l1)},
              {"max_ratio", number(r.max_ratio)},
              {"ratio_cap", number(r.ratio_cap)},
              {"pass", r.pass}};
}

std::string decay_csv(const BoundReport& r) {
  std::string out = "lambda,abs_I,ratio\n";
  for (size_t i = 0; i < r.lambdas.size(); ++i)
    out += format_double(r.lambdas[i]) + "," + format_double(r.abs_values[i]) + "," + format_double(r.ratios[i]) + "\n";
  return out;
}

std::string dispersive_csv(const DispersiveReport& r) {
  std::string out = "t,sup_norm,envelope,ratio\n";
  for (size_t i = 0; i < r.t_grid.size(); ++i)
    out += format_double(r.t_grid[i]) + "," + format_double(r.sup_norms[i]) + "," + format_double(r.envelopes[i]) +
           "," + format_double(r.ratios[i]) + "\n";
  return out;
}

std::string field_csv(const FieldSnapshot& s) {
  std::string out = "x,re,im,abs\n";
  for (size_t i = 0; i < s.x.size(); ++i)
    out += format_double(s.x[i]) + "," + format_double(s.values[i].real()) + "," +
           format_double(s.values[i].imag()) + "," + format_double(std::abs(s.values[i])) + "\n";
  return out;
}

void write_text_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) fail(ErrorKind::IoError, "cannot write '" + path + "'");
  out << text;
  if (!out) fail(ErrorKind::IoError, "write to '" + path + "' failed");
}

}  // namespace mlfc::cli
