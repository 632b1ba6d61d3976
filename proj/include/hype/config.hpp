#pragma once

#include <map>
#include <stdexcept>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "hype/semantics.hpp"

namespace hype::config {

/// The TOML subset used by universe files: comments, [tables], key = value
/// with basic strings, integers, booleans and (possibly multi-line) arrays.
struct Value {
  std::variant<bool, long long, std::string, std::vector<Value>> v;
  bool is_bool() const { return v.index() == 0; }
  bool is_int() const { return v.index() == 1; }
  bool is_string() const { return v.index() == 2; }
  bool is_array() const { return v.index() == 3; }
};
/// Keys are qualified by their table: "p.extension".
using Table = std::map<std::string, Value>;

class ConfigError : public std::runtime_error {
 public:
  ConfigError(int line, const std::string& msg)
      : std::runtime_error("line " + std::to_string(line) + ": " + msg), line(line) {}
  int line;
};

Table parse_toml(std::string_view text);

struct UniverseFile {
  std::string name;
  sem::UniverseSpec spec;
  sem::PExt p;
};
/// Keys: name, seeds, depth, domain, liar, truthteller, max_size, and an
/// optional [p] table with extension = [..] and/or evens_upto = n.
UniverseFile universe_from_toml(std::string_view text);
UniverseFile load_universe(const std::string& path);

}  // namespace hype::config
