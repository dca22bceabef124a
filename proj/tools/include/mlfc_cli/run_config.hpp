#pragma once

#include <map>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

namespace mlfc::cli {

enum class ValueType { Number, Integer, Text, Flag };

struct KeyInfo {
  std::string_view key;
  ValueType type;
  std::string_view help;
};

// Every key a configuration file or flag may set.
std::span<const KeyInfo> known_keys();
const KeyInfo* find_key(std::string_view key);

// Commands are "mlf eval", "oscint", "decay verify", "pde kg",
// "pde schrodinger", "pde decay", "rl" and "suite acceptance".
std::span<const std::string_view> known_commands();

// Keys a command reads, in echo order.
std::vector<std::string_view> command_keys(std::string_view command);

// Default of key for a command; empty when the key has none there.
std::string default_value(std::string_view command, std::string_view key);

// Flat key -> text settings. Layers are applied in order: defaults, the file
// named by MLFC_CONFIG, --config files, then explicit flags.
class RunConfig {
 public:
  explicit RunConfig(std::string command = {});

  const std::string& command() const { return command_; }
  void set_command(std::string command) { command_ = std::move(command); }

  // ParseError for unknown keys or values of the wrong type.
  void set(std::string_view key, std::string_view value, std::string_view origin = "flag");
  bool has(std::string_view key) const;

  // Value after defaults; InvalidArgument if the key has no value.
  std::string text(std::string_view key) const;
  double number(std::string_view key) const;
  long integer(std::string_view key) const;
  bool flag(std::string_view key) const;

  // "key = value" lines; '#' starts a comment. A file whose first
  // non-blank character is '{' is read as JSON: either a flat object or a
  // report whose "config" member is one. The "command" entry of a file
  // selects the command when none is set yet and must match otherwise.
  void load_text(std::string_view text, std::string_view origin);
  void load_file(const std::string& path);

  // Effective values of the command's keys, typed.
  nlohmann::json echo() const;
  // The same as key = value text.
  std::string to_text() const;

 private:
  std::string command_;
  std::map<std::string, std::string, std::less<>> values_;
};

// Parses "true/false/1/0/yes/no/on/off".
bool parse_flag(std::string_view text, std::string_view what);

}  // namespace mlfc::cli
