#pragma once

#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "hype/syntax.hpp"

namespace hype {

class ParseError : public std::runtime_error {
 public:
  ParseError(std::size_t pos, const std::string& msg)
      : std::runtime_error("parse error at column " + std::to_string(pos + 1) + ": " + msg), pos_(pos) {}
  std::size_t position() const { return pos_; }

 private:
  std::size_t pos_;
};

std::string print(const Term& t);
std::string print(const Formula& f);
inline std::string print(const TermPtr& t) { return print(*t); }
inline std::string print(const FormulaPtr& f) { return print(*f); }

TermPtr parse_term(std::string_view text);
/// Parses a formula and checks it against lang (throws ParseError).
FormulaPtr parse_formula(std::string_view text, Lang lang = Lang::Any);
/// Parses `A, B => C, D`.
std::pair<std::vector<FormulaPtr>, std::vector<FormulaPtr>> parse_sequent_text(std::string_view text);

/// Name used for variable i in printed output (v<i>).
std::string var_name(unsigned i);

}  // namespace hype
