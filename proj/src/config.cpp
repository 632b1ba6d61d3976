#include "hype/config.hpp"

#include <cctype>
#include <fstream>
#include <set>
#include <sstream>

#include "hype/parse.hpp"

namespace hype::config {

namespace {

struct Reader {
  std::string_view s;
  std::size_t i = 0;
  int line = 1;

  bool eof() const { return i >= s.size(); }
  char peek() const { return eof() ? '\0' : s[i]; }
  char get() {
    char c = s[i++];
    if (c == '\n') ++line;
    return c;
  }
  [[noreturn]] void fail(const std::string& msg) const { throw ConfigError(line, msg); }

  // Spaces and tabs; inside arrays also newlines and comments.
  void blank(bool newlines) {
    while (!eof()) {
      char c = peek();
      if (c == ' ' || c == '\t' || c == '\r' || (newlines && c == '\n')) {
        get();
      } else if (c == '#' && newlines) {
        while (!eof() && peek() != '\n') get();
      } else {
        break;
      }
    }
  }

  void end_of_line() {
    blank(false);
    if (peek() == '#')
      while (!eof() && peek() != '\n') get();
    if (!eof() && get() != '\n') fail("unexpected text after value");
  }

  std::string key() {
    std::string k;
    while (!eof() && (std::isalnum(static_cast<unsigned char>(peek())) || peek() == '_' || peek() == '-' ||
                      peek() == '.'))
      k += get();
    if (k.empty()) fail("expected a key");
    return k;
  }

  std::string string() {
    get();  // opening quote
    std::string out;
    for (;;) {
      if (eof() || peek() == '\n') fail("unterminated string");
      char c = get();
      if (c == '"') return out;
      if (c != '\\') {
        out += c;
        continue;
      }
      if (eof()) fail("unterminated string");
      switch (char e = get()) {
        case '"': out += '"'; break;
        case '\\': out += '\\'; break;
        case 'n': out += '\n'; break;
        case 't': out += '\t'; break;
        default: fail(std::string("unsupported escape \\") + e);
      }
    }
  }

  Value value() {
    char c = peek();
    if (c == '"') return {string()};
    if (c == '[') {
      get();
      std::vector<Value> items;
      for (;;) {
        blank(true);
        if (peek() == ']') {
          get();
          return {std::move(items)};
        }
        items.push_back(value());
        blank(true);
        if (peek() == ',') {
          get();
        } else if (peek() != ']') {
          fail("expected , or ] in array");
        }
      }
    }
    std::string word;
    while (!eof() && (std::isalnum(static_cast<unsigned char>(peek())) || peek() == '-' || peek() == '+' ||
                      peek() == '_'))
      word += get();
    if (word == "true") return {true};
    if (word == "false") return {false};
    if (word.empty()) fail("expected a value");
    std::string digits;
    for (char d : word)
      if (d != '_') digits += d;
    try {
      std::size_t used = 0;
      long long n = std::stoll(digits, &used, 10);
      if (used != digits.size()) fail("bad integer " + word);
      return {n};
    } catch (const std::logic_error&) {
      fail("bad value " + word);
    }
  }
};

const Value* get(const Table& t, const std::string& k) {
  auto it = t.find(k);
  return it == t.end() ? nullptr : &it->second;
}

long long get_int(const Table& t, const std::string& k, long long dflt, long long lo, long long hi) {
  const Value* v = get(t, k);
  if (!v) return dflt;
  if (!v->is_int()) throw ConfigError(0, k + " must be an integer");
  long long n = std::get<long long>(v->v);
  if (n < lo || n > hi) throw ConfigError(0, k + " out of range");
  return n;
}

bool get_bool(const Table& t, const std::string& k) {
  const Value* v = get(t, k);
  if (!v) return false;
  if (!v->is_bool()) throw ConfigError(0, k + " must be true or false");
  return std::get<bool>(v->v);
}

}  // namespace

Table parse_toml(std::string_view text) {
  Reader r{text};
  Table out;
  std::string prefix;
  for (;;) {
    r.blank(true);
    if (r.eof()) return out;
    if (r.peek() == '[') {
      r.get();
      r.blank(false);
      prefix = r.key() + ".";
      r.blank(false);
      if (r.eof() || r.get() != ']') r.fail("expected ] after table name");
      r.end_of_line();
      continue;
    }
    int line = r.line;
    std::string k = prefix + r.key();
    r.blank(false);
    if (r.eof() || r.get() != '=') r.fail("expected = after key");
    r.blank(false);
    Value v = r.value();
    if (!out.emplace(k, std::move(v)).second) throw ConfigError(line, "duplicate key " + k);
    r.end_of_line();
  }
}

UniverseFile universe_from_toml(std::string_view text) {
  Table t = parse_toml(text);
  static const std::set<std::string> known = {"name",     "seeds",    "depth",       "domain",
                                              "liar",     "truthteller", "max_size", "p.extension",
                                              "p.evens_upto"};
  for (const auto& [k, v] : t)
    if (!known.count(k)) throw ConfigError(0, "unknown key " + k);
  UniverseFile u;
  if (const Value* n = get(t, "name")) {
    if (!n->is_string()) throw ConfigError(0, "name must be a string");
    u.name = std::get<std::string>(n->v);
  }
  if (const Value* s = get(t, "seeds")) {
    if (!s->is_array()) throw ConfigError(0, "seeds must be an array of strings");
    for (const Value& x : std::get<std::vector<Value>>(s->v)) {
      if (!x.is_string()) throw ConfigError(0, "seeds must be an array of strings");
      u.spec.seeds.push_back(parse_formula(std::get<std::string>(x.v)));
    }
  }
  u.spec.tr_depth = static_cast<unsigned>(get_int(t, "depth", 0, 0, 64));
  u.spec.domain = static_cast<unsigned>(get_int(t, "domain", 3, 1, 1000));
  u.spec.max_size = static_cast<std::size_t>(get_int(t, "max_size", 20000, 1, 10000000));
  u.spec.liar = get_bool(t, "liar");
  u.spec.truthteller = get_bool(t, "truthteller");
  const Value* ext = get(t, "p.extension");
  const Value* evens = get(t, "p.evens_upto");
  if (ext || evens) {
    std::set<Nat> p;
    if (ext) {
      if (!ext->is_array()) throw ConfigError(0, "p.extension must be an array of integers");
      for (const Value& x : std::get<std::vector<Value>>(ext->v)) {
        if (!x.is_int() || std::get<long long>(x.v) < 0)
          throw ConfigError(0, "p.extension must be an array of naturals");
        p.insert(Nat(static_cast<long>(std::get<long long>(x.v))));
      }
    }
    if (evens)
      for (long long n = 0; n <= get_int(t, "p.evens_upto", 0, 0, 1000000); n += 2) p.insert(Nat(static_cast<long>(n)));
    u.p = std::move(p);
  }
  return u;
}

UniverseFile load_universe(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError(0, "cannot open " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  UniverseFile u = universe_from_toml(ss.str());
  if (u.name.empty()) {
    auto slash = path.find_last_of('/');
    u.name = path.substr(slash == std::string::npos ? 0 : slash + 1);
  }
  return u;
}

}  // namespace hype::config
