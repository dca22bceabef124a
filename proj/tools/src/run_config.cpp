#include "mlfc_cli/run_config.hpp"

#include <algorithm>
#include <array>
#include <cstdlib>
#include <fstream>
#include <sstream>

#include "mlfc/error.hpp"
#include "mlfc/text.hpp"

namespace mlfc::cli {
namespace {

constexpr std::array<KeyInfo, 29> kKeys{{
    {"alpha", ValueType::Number, "Mittag-Leffler alpha in (0, 2]"},
    {"beta", ValueType::Number, "Mittag-Leffler beta"},
    {"z", ValueType::Text, "complex argument RE,IM"},
    {"tol", ValueType::Number, "relative tolerance of mlf eval"},
    {"oracle_digits", ValueType::Integer, "use the multiprecision series with this many digits (0: off)"},
    {"r0", ValueType::Number, "Taylor radius"},
    {"r1", ValueType::Number, "asymptotic validity radius"},
    {"lambda", ValueType::Number, "frequency parameter lambda >= 1"},
    {"phase", ValueType::Text, "phase, e.g. quadratic:c=0"},
    {"amp", ValueType::Text, "amplitude, e.g. gaussian:sigma=1"},
    {"domain", ValueType::Text, "a,b | line | line:R"},
    {"quad_tol", ValueType::Number, "absolute quadrature tolerance"},
    {"theorem", ValueType::Text, "decay setting T21i .. T35 or RL"},
    {"k", ValueType::Integer, "derivative order of the phase bound"},
    {"grid", ValueType::Text, "geometric lambda grid lo:hi:n"},
    {"slope_tol", ValueType::Number, "slack of the one-sided slope test"},
    {"ratio_cap", ValueType::Number, "bound on the normalized ratio"},
    {"oracle", ValueType::Flag, "use brute-force quadrature"},
    {"model", ValueType::Text, "kg | schrodinger"},
    {"mu", ValueType::Number, "mass mu > 0"},
    {"gamma", ValueType::Number, "forcing exponent gamma in [0, alpha)"},
    {"t", ValueType::Number, "time t > 0"},
    {"xgrid", ValueType::Text, "uniform x grid lo:hi:n"},
    {"tgrid", ValueType::Text, "geometric t grid lo:hi:n"},
    {"psi_hat", ValueType::Text, "initial data in frequency space"},
    {"threads", ValueType::Integer, "thread cap (0: all hardware threads)"},
    {"svg", ValueType::Text, "SVG output path"},
    {"csv", ValueType::Text, "CSV output path"},
    {"command", ValueType::Text, "subcommand the settings belong to"},
}};

constexpr std::array<std::string_view, 8> kCommands{
    "mlf eval", "oscint", "decay verify", "pde kg", "pde schrodinger", "pde decay", "rl", "suite acceptance"};

std::string defaults_for(std::string_view command, std::string_view key, std::string_view model) {
  const bool kg = command == "pde kg" || (command == "pde decay" && model == "kg");
  const bool schr = command == "pde schrodinger" || (command == "pde decay" && model == "schrodinger");
  if (key == "alpha") return kg ? "1.5" : schr ? "0.8" : "1";
  if (key == "mu") return schr ? "2" : "1";
  if (key == "beta") return "1";
  if (key == "tol") return "1e-14";
  if (key == "oracle_digits") return "0";
  if (key == "r0") return "5";
  if (key == "r1") return "40";
  if (key == "phase") return "affine:a=1,b=0";
  if (key == "amp") return "one";
  if (key == "domain") return "0,1";
  if (key == "quad_tol") return "1e-9";
  if (key == "k") return "1";
  if (key == "grid") return "10:1e4:16";
  if (key == "slope_tol") return "0.07";
  if (key == "ratio_cap") return "1e3";
  if (key == "oracle") return "false";
  if (key == "model") return "kg";
  if (key == "gamma") return "0.3";
  if (key == "t") return "1";
  if (key == "xgrid") return "-10:10:401";
  if (key == "tgrid") return "1:100:12";
  if (key == "psi_hat") return "gaussian:sigma=1";
  if (key == "threads") return "0";
  if (key == "svg" || key == "csv") return "";
  return {};  // z, lambda, theorem: required
}

bool is_required(std::string_view key) { return key == "z" || key == "lambda" || key == "theorem"; }

void check_value(const KeyInfo& info, std::string_view value, std::string_view origin) {
  const std::string what = std::string(info.key) + " (" + std::string(origin) + ")";
  switch (info.type) {
    case ValueType::Number: parse_double(value, what); break;
    case ValueType::Integer: parse_long(value, what); break;
    case ValueType::Flag: parse_flag(value, what); break;
    case ValueType::Text: break;
  }
}

std::string json_to_text(const nlohmann::json& v) {
  if (v.is_string()) return v.get<std::string>();
  if (v.is_boolean()) return v.get<bool>() ? "true" : "false";
  if (v.is_number_integer()) return std::to_string(v.get<long>());
  if (v.is_number()) return format_double(v.get<double>());
  fail(ErrorKind::ParseError, "config value " + v.dump() + " is not a scalar");
}

}  // namespace

std::span<const KeyInfo> known_keys() { return kKeys; }

const KeyInfo* find_key(std::string_view key) {
  for (const auto& k : kKeys)
    if (k.key == key) return &k;
  return nullptr;
}

std::span<const std::string_view> known_commands() { return kCommands; }

std::vector<std::string_view> command_keys(std::string_view command) {
  if (command == "mlf eval") return {"alpha", "beta", "z", "tol", "oracle_digits", "r0", "r1"};
  if (command == "oscint")
    return {"alpha", "beta", "lambda", "phase", "amp", "domain", "quad_tol", "oracle", "r0", "r1", "threads"};
  if (command == "decay verify")
    return {"theorem", "alpha", "beta", "k", "phase", "amp", "domain", "grid", "quad_tol", "slope_tol",
            "ratio_cap", "oracle", "r0", "r1", "threads", "svg", "csv"};
  if (command == "pde kg")
    return {"alpha", "mu", "t", "xgrid", "psi_hat", "quad_tol", "r0", "r1", "threads", "svg", "csv"};
  if (command == "pde schrodinger")
    return {"alpha", "gamma", "mu", "t", "xgrid", "psi_hat", "quad_tol", "r0", "r1", "threads", "svg", "csv"};
  if (command == "pde decay")
    return {"model", "alpha", "gamma", "mu", "tgrid", "xgrid", "psi_hat", "quad_tol", "ratio_cap",
            "r0", "r1", "threads", "svg", "csv"};
  if (command == "rl")
    return {"alpha", "beta", "amp", "domain", "grid", "quad_tol", "slope_tol", "ratio_cap", "oracle",
            "r0", "r1", "threads", "svg", "csv"};
  if (command == "suite acceptance") return {"threads"};
  return {};
}

std::string default_value(std::string_view command, std::string_view key) {
  return defaults_for(command, key, "kg");
}

bool parse_flag(std::string_view text, std::string_view what) {
  text = trim(text);
  for (auto t : {"true", "1", "yes", "on"})
    if (text == t) return true;
  for (auto f : {"false", "0", "no", "off"})
    if (text == f) return false;
  fail(ErrorKind::ParseError, "bad " + std::string(what) + ": '" + std::string(text) + "' (expected true/false)");
}

RunConfig::RunConfig(std::string command) : command_(std::move(command)) {}

void RunConfig::set(std::string_view key, std::string_view value, std::string_view origin) {
  const KeyInfo* info = find_key(key);
  if (!info) fail(ErrorKind::ParseError, "unknown key '" + std::string(key) + "' (" + std::string(origin) + ")");
  value = trim(value);
  if (key == "command") {
    std::string cmd(value);
    if (std::find(kCommands.begin(), kCommands.end(), cmd) == kCommands.end())
      fail(ErrorKind::ParseError, "unknown command '" + cmd + "' (" + std::string(origin) + ")");
    if (command_.empty()) command_ = cmd;
    else if (command_ != cmd)
      fail(ErrorKind::ParseError, std::string(origin) + " belongs to '" + cmd + "', not '" + command_ + "'");
    return;
  }
  check_value(*info, value, origin);
  values_[std::string(key)] = std::string(value);
}

bool RunConfig::has(std::string_view key) const { return values_.find(key) != values_.end(); }

std::string RunConfig::text(std::string_view key) const {
  if (auto it = values_.find(key); it != values_.end()) return it->second;
  if (is_required(key)) fail(ErrorKind::InvalidArgument, "missing required setting '" + std::string(key) + "'");
  std::string model = key == "model" ? "kg" : text("model");
  return defaults_for(command_, key, model);
}

double RunConfig::number(std::string_view key) const { return parse_double(text(key), key); }
long RunConfig::integer(std::string_view key) const { return parse_long(text(key), key); }
bool RunConfig::flag(std::string_view key) const { return parse_flag(text(key), key); }

void RunConfig::load_text(std::string_view text, std::string_view origin) {
  std::string_view body = trim(text);
  if (body.starts_with("{")) {
    nlohmann::json j;
    try {
      j = nlohmann::json::parse(body);
    } catch (const nlohmann::json::exception& e) {
      fail(ErrorKind::ParseError, std::string(origin) + ": " + e.what());
    }
    if (j.contains("config") && j["config"].is_object()) j = j["config"];
    if (!j.is_object()) fail(ErrorKind::ParseError, std::string(origin) + ": expected a JSON object");
    if (j.contains("command")) set("command", json_to_text(j["command"]), origin);
    for (auto it = j.begin(); it != j.end(); ++it)
      if (it.key() != "command") set(it.key(), json_to_text(it.value()), origin);
    return;
  }
  int line_no = 0;
  for (auto line : split(text, '\n')) {
    ++line_no;
    if (auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;
    auto eq = line.find('=');
    std::string where = std::string(origin) + ":" + std::to_string(line_no);
    if (eq == std::string_view::npos) fail(ErrorKind::ParseError, where + ": expected key = value");
    set(trim(line.substr(0, eq)), trim(line.substr(eq + 1)), where);
  }
}

void RunConfig::load_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) fail(ErrorKind::IoError, "cannot read config file '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  load_text(ss.str(), path);
}

nlohmann::json RunConfig::echo() const {
  nlohmann::json j = nlohmann::json::object();
  j["command"] = command_;
  for (auto key : command_keys(command_)) {
    const KeyInfo* info = find_key(key);
    std::string k(key);
    if (is_required(key) && !has(key)) continue;
    std::string v = text(key);
    switch (info->type) {
      case ValueType::Number: j[k] = parse_double(v, key); break;
      case ValueType::Integer: j[k] = parse_long(v, key); break;
      case ValueType::Flag: j[k] = parse_flag(v, key); break;
      case ValueType::Text: j[k] = v; break;
    }
  }
  return j;
}

std::string RunConfig::to_text() const {
  std::string out = "command = " + command_ + "\n";
  for (auto key : command_keys(command_)) {
    if (is_required(key) && !has(key)) continue;
    out += std::string(key) + " = " + text(key) + "\n";
  }
  return out;
}

}  // namespace mlfc::cli
