#include "hype/parse.hpp"

#include <algorithm>
#include <cctype>
#include <optional>

#include "hype/code.hpp"
#include "hype/ordinal.hpp"

namespace hype {

std::string var_name(unsigned i) { return "v" + std::to_string(i); }

namespace {

std::string atom_name(unsigned i) {
  static const char* letters[] = {"p", "q", "r", "s"};
  if (i < 4) return letters[i];
  return "p" + std::to_string(i);
}

// Term precedence: 0 sum, 1 product, 2 atomic.
std::string print_term(const Term& t, int ctx) {
  switch (t.kind) {
    case Term::Kind::Var:
      return var_name(t.var);
    case Term::Kind::Num:
      // Large numerals that are codes print as quotations (q(...) reads back to the same numeral).
      if (mpz_sizeinbase(t.num.get_mpz_t(), 2) > 32) {
        if (auto f = decode_formula(t.num)) return "q(" + print(**f) + ")";
        if (auto u = decode_term(t.num)) return "q(" + print(**u) + ")";
      }
      return t.num.get_str();
    case Term::Kind::Succ:
      return "S(" + print_term(*t.args[0], 0) + ")";
    case Term::Kind::Plus: {
      std::string s = print_term(*t.args[0], 0) + " + " + print_term(*t.args[1], 1);
      return ctx > 0 ? "(" + s + ")" : s;
    }
    case Term::Kind::Times: {
      std::string s = print_term(*t.args[0], 1) + " * " + print_term(*t.args[1], 2);
      return ctx > 1 ? "(" + s + ")" : s;
    }
    case Term::Kind::App: {
      std::string s = std::string(fn_info(t.fn).name) + "(";
      for (std::size_t i = 0; i < t.args.size(); ++i) {
        if (i) s += ", ";
        s += print_term(*t.args[i], 0);
      }
      return s + ")";
    }
  }
  return "?";
}

// Formula precedence: 0 conditional, 1 disjunction, 2 conjunction, 3 unary.
std::string print_formula(const FormulaPtr& f, int ctx) {
  auto wrap = [&](int level, std::string s) { return ctx > level ? "(" + s + ")" : s; };
  FormulaPtr a, b;
  TermPtr s, t;
  unsigned v;
  if (as_lt(f, s, t)) return print_term(*s, 0) + " < " + print_term(*t, 0);
  if (as_le(f, s, t)) return print_term(*s, 0) + " <= " + print_term(*t, 0);
  switch (f->kind) {
    case Formula::Kind::Bot:
      return "bot";
    case Formula::Kind::Eq:
      return print_term(*f->lhs, 0) + " = " + print_term(*f->rhs, 0);
    case Formula::Kind::Tr:
      return "Tr(" + print_term(*f->lhs, 0) + ")";
    case Formula::Kind::F:
      return "F(" + print_term(*f->lhs, 0) + ")";
    case Formula::Kind::P:
      return "P(" + print_term(*f->lhs, 0) + ")";
    case Formula::Kind::Atom:
      return atom_name(f->index);
    case Formula::Kind::Neg:
      if (f->a->kind == Formula::Kind::Bot) return "top";
      if (as_conj(f, a, b)) return wrap(2, print_formula(a, 2) + " & " + print_formula(b, 3));
      if (as_exists(f, v, a)) return "ex " + var_name(v) + ". " + print_formula(a, 3);
      if (f->a->kind == Formula::Kind::Eq && !as_lt(f->a, s, t) && !as_le(f->a, s, t))
        return print_term(*f->a->lhs, 0) + " != " + print_term(*f->a->rhs, 0);
      return "!" + print_formula(f->a, 3);
    case Formula::Kind::Or:
      return wrap(1, print_formula(f->a, 1) + " | " + print_formula(f->b, 2));
    case Formula::Kind::Imp:
      return wrap(0, print_formula(f->a, 1) + " -> " + print_formula(f->b, 0));
    case Formula::Kind::All:
      return "all " + var_name(f->index) + ". " + print_formula(f->a, 3);
  }
  return "?";
}

class Parser {
 public:
  explicit Parser(std::string_view s) : s_(s) {}

  std::size_t pos = 0;

  [[noreturn]] void fail(const std::string& msg) const { throw ParseError(pos, msg); }

  void skip() {
    while (pos < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos]))) ++pos;
  }
  bool at_end() {
    skip();
    return pos >= s_.size();
  }
  bool peek(std::string_view tok) {
    skip();
    return s_.substr(pos, tok.size()) == tok;
  }
  bool eat(std::string_view tok) {
    if (!peek(tok)) return false;
    pos += tok.size();
    return true;
  }
  void expect(std::string_view tok) {
    if (!eat(tok)) fail("expected '" + std::string(tok) + "'");
  }
  std::string peek_ident() {
    skip();
    std::size_t p = pos;
    if (p >= s_.size() || !(std::isalpha(static_cast<unsigned char>(s_[p])) || s_[p] == '_')) return {};
    while (p < s_.size() && (std::isalnum(static_cast<unsigned char>(s_[p])) || s_[p] == '_')) ++p;
    return std::string(s_.substr(pos, p - pos));
  }
  char next_char_after(std::size_t len) {
    std::size_t p = pos + len;
    while (p < s_.size() && std::isspace(static_cast<unsigned char>(s_[p]))) ++p;
    return p < s_.size() ? s_[p] : '\0';
  }

  static std::optional<unsigned> var_of(const std::string& id) {
    if (id == "x") return 0;
    if (id == "y") return 1;
    if (id == "z") return 2;
    if (id == "u") return 3;
    if (id.size() > 1 && id[0] == 'v' && std::all_of(id.begin() + 1, id.end(), ::isdigit))
      return static_cast<unsigned>(std::stoul(id.substr(1)));
    return std::nullopt;
  }
  static std::optional<unsigned> atom_of(const std::string& id) {
    if (id == "p") return 0;
    if (id == "q") return 1;
    if (id == "r") return 2;
    if (id == "s") return 3;
    if (id.size() > 1 && id[0] == 'p' && std::all_of(id.begin() + 1, id.end(), ::isdigit))
      return static_cast<unsigned>(std::stoul(id.substr(1)));
    return std::nullopt;
  }

  unsigned parse_var() {
    std::string id = peek_ident();
    auto v = var_of(id);
    if (!v) fail("expected a variable");
    pos += id.size();
    return *v;
  }

  // ---- terms ----
  TermPtr term() {
    TermPtr t = product();
    while (peek("+")) {
      ++pos;
      t = plus(t, product());
    }
    return t;
  }
  TermPtr product() {
    TermPtr t = term_atom();
    while (peek("*")) {
      ++pos;
      t = times(t, term_atom());
    }
    return t;
  }
  TermPtr term_atom() {
    skip();
    if (pos >= s_.size()) fail("unexpected end of input in term");
    char c = s_[pos];
    if (std::isdigit(static_cast<unsigned char>(c))) {
      std::size_t start = pos;
      while (pos < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos]))) ++pos;
      return num(Nat(std::string(s_.substr(start, pos - start)), 10));
    }
    if (c == '(') {
      ++pos;
      TermPtr t = term();
      expect(")");
      return t;
    }
    std::string id = peek_ident();
    if (id.empty()) fail(std::string("unexpected '") + c + "' in term");
    if (id == "S" && next_char_after(1) == '(') {
      pos += 1;
      expect("(");
      TermPtr t = term();
      expect(")");
      return succ(t);
    }
    if (id == "q" && next_char_after(1) == '(') {
      pos += 1;
      expect("(");
      Nat code = quoted();
      expect(")");
      return num(code);
    }
    if (id == "o" && next_char_after(1) == '[') {
      pos += 1;
      expect("[");
      std::size_t close = s_.find(']', pos);
      if (close == std::string_view::npos) fail("unterminated ordinal");
      try {
        auto o = ord::parse(s_.substr(pos, close - pos));
        pos = close + 1;
        return ord_numeral(o);
      } catch (const std::invalid_argument& e) {
        fail(e.what());
      }
    }
    if (auto f = fn_by_name(id); f && next_char_after(id.size()) == '(') {
      pos += id.size();
      expect("(");
      std::vector<TermPtr> args;
      if (!peek(")")) {
        args.push_back(term());
        while (eat(",")) args.push_back(term());
      }
      expect(")");
      if (static_cast<int>(args.size()) != fn_info(*f).arity)
        fail(std::string(fn_info(*f).name) + " expects " + std::to_string(fn_info(*f).arity) + " arguments");
      return app(*f, std::move(args));
    }
    if (auto v = var_of(id)) {
      pos += id.size();
      return var(*v);
    }
    fail("unknown identifier '" + id + "'");
  }

  Nat quoted() {
    std::size_t save = pos;
    try {
      FormulaPtr f = formula();
      skip();
      if (peek(")")) return encode(*f);
    } catch (const ParseError&) {
    }
    pos = save;
    return encode(*term());
  }

  // ---- formulas ----
  FormulaPtr formula() {
    FormulaPtr a = disjunction();
    if (eat("->")) return imp(a, formula());
    if (eat("<->")) return iff(a, formula());
    return a;
  }
  FormulaPtr disjunction() {
    FormulaPtr a = conjunction();
    while (peek("|")) {
      ++pos;
      a = disj(a, conjunction());
    }
    return a;
  }
  FormulaPtr conjunction() {
    FormulaPtr a = unary();
    while (peek("&")) {
      ++pos;
      a = conj(a, unary());
    }
    return a;
  }
  FormulaPtr unary() {
    skip();
    if (peek("!") && !peek("!=")) {
      ++pos;
      return neg(unary());
    }
    if (peek("~")) {
      ++pos;
      return inot(unary());
    }
    std::string id = peek_ident();
    if (id == "all" || id == "ex") {
      pos += id.size();
      unsigned v = parse_var();
      expect(".");
      FormulaPtr body = unary();
      return id == "all" ? forall(v, body) : exists(v, body);
    }
    return primary();
  }
  FormulaPtr primary() {
    skip();
    std::string id = peek_ident();
    char after = next_char_after(id.size());
    if (id == "bot") {
      pos += 3;
      return bot();
    }
    if (id == "top") {
      pos += 3;
      return top();
    }
    if ((id == "Tr" || id == "F" || id == "P") && after == '(') {
      pos += id.size();
      expect("(");
      TermPtr t = term();
      expect(")");
      if (id == "Tr") return tr(t);
      return id == "F" ? fpred(t) : ppred(t);
    }
    if (auto a = atom_of(id); a && after != '(') {
      pos += id.size();
      return atom(*a);
    }
    if (peek("(")) {
      std::size_t save = pos;
      try {
        return relation();
      } catch (const ParseError&) {
        pos = save;
      }
      ++pos;
      FormulaPtr f = formula();
      expect(")");
      return f;
    }
    return relation();
  }
  FormulaPtr relation() {
    TermPtr s = term();
    if (eat("!=")) return neg(eq(s, term()));
    if (eat("<=")) return le(s, term());
    if (eat("<")) return lt(s, term());
    if (eat("=")) {
      if (peek(">")) fail("unexpected '=>'");
      return eq(s, term());
    }
    fail("expected a relation symbol");
  }

 private:
  std::string_view s_;
};

}  // namespace

std::string print(const Term& t) { return print_term(t, 0); }

std::string print(const Formula& f) {
  // The printer inspects shared sub-nodes; wrap a non-owning pointer.
  FormulaPtr p(std::shared_ptr<const Formula>{}, &f);
  return print_formula(p, 0);
}

TermPtr parse_term(std::string_view text) {
  Parser p(text);
  TermPtr t = p.term();
  if (!p.at_end()) p.fail("trailing input");
  return t;
}

FormulaPtr parse_formula(std::string_view text, Lang lang) {
  Parser p(text);
  FormulaPtr f = p.formula();
  if (!p.at_end()) p.fail("trailing input");
  if (!in_language(*f, lang))
    throw ParseError(0, "formula uses symbols outside " + lang_name(lang) + " (needs " +
                            lang_name(minimal_language(*f)) + ")");
  return f;
}

std::pair<std::vector<FormulaPtr>, std::vector<FormulaPtr>> parse_sequent_text(std::string_view text) {
  Parser p(text);
  std::vector<FormulaPtr> left, right;
  if (!p.peek("=>")) {
    left.push_back(p.formula());
    while (p.eat(",")) left.push_back(p.formula());
  }
  p.expect("=>");
  if (!p.at_end()) {
    right.push_back(p.formula());
    while (p.eat(",")) right.push_back(p.formula());
  }
  if (!p.at_end()) p.fail("trailing input");
  return {std::move(left), std::move(right)};
}

}  // namespace hype
