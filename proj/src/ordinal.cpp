#include "hype/ordinal.hpp"

#include <cctype>

namespace hype::ord {

namespace {

std::shared_ptr<const VeblenTerm> make_term(Ordinal index, Ordinal arg) {
  return std::make_shared<const VeblenTerm>(VeblenTerm{std::move(index), std::move(arg)});
}

std::strong_ordering compare_unchecked(const Ordinal& a, const Ordinal& b);

Ordinal single(const std::shared_ptr<const VeblenTerm>& t) {
  return Ordinal::raw({{t->index, t->arg}});
}

std::strong_ordering compare_terms(const VeblenTerm& s, const VeblenTerm& t) {
  auto c = compare_unchecked(s.index, t.index);
  if (c == 0) return compare_unchecked(s.arg, t.arg);
  if (c < 0) {
    // phi(a1,b1) with a1 < a2 lies below phi(a2,b2) iff b1 does.
    auto r = compare_unchecked(s.arg, Ordinal::raw({{t.index, t.arg}}));
    return r < 0 ? std::strong_ordering::less : r;
  }
  auto r = compare_unchecked(Ordinal::raw({{s.index, s.arg}}), t.arg);
  return r > 0 ? std::strong_ordering::greater : r;
}

std::strong_ordering compare_unchecked(const Ordinal& a, const Ordinal& b) {
  const auto& x = a.terms();
  const auto& y = b.terms();
  std::size_t n = std::min(x.size(), y.size());
  for (std::size_t i = 0; i < n; ++i) {
    if (x[i] == y[i]) continue;
    auto c = compare_terms(*x[i], *y[i]);
    if (c != 0) return c;
  }
  return x.size() <=> y.size();
}

bool term_equal(const VeblenTerm& s, const VeblenTerm& t) {
  return s.index == t.index && s.arg == t.arg;
}

bool is_one(const VeblenTerm& t) { return t.index.is_zero() && t.arg.is_zero(); }

}  // namespace

Ordinal Ordinal::one() { return veblen(zero(), zero()); }

Ordinal Ordinal::omega() { return veblen(zero(), one()); }

Ordinal Ordinal::from_nat(unsigned long n) {
  Ordinal r;
  auto unit = make_term(zero(), zero());
  r.terms_.assign(n, unit);
  return r;
}

Ordinal Ordinal::raw(std::vector<std::pair<Ordinal, Ordinal>> terms) {
  Ordinal r;
  for (auto& [i, a] : terms) r.terms_.push_back(make_term(std::move(i), std::move(a)));
  return r;
}

bool Ordinal::is_normal() const {
  for (std::size_t i = 0; i < terms_.size(); ++i) {
    const auto& t = *terms_[i];
    if (!t.index.is_normal() || !t.arg.is_normal()) return false;
    // phi(a, phi(c, d)) with c > a collapses to phi(c, d).
    if (t.arg.terms_.size() == 1) {
      const auto& inner = *t.arg.terms_[0];
      if (compare_unchecked(inner.index, t.index) > 0) return false;
    }
    if (i > 0 && compare_terms(*terms_[i - 1], t) < 0) return false;
  }
  return true;
}

std::size_t Ordinal::size() const {
  std::size_t n = 0;
  for (const auto& t : terms_) n += 1 + t->index.size() + t->arg.size();
  return n;
}

bool operator==(const Ordinal& a, const Ordinal& b) {
  if (a.terms_.size() != b.terms_.size()) return false;
  for (std::size_t i = 0; i < a.terms_.size(); ++i)
    if (a.terms_[i] != b.terms_[i] && !term_equal(*a.terms_[i], *b.terms_[i])) return false;
  return true;
}

std::strong_ordering compare(const Ordinal& a, const Ordinal& b) {
  if (!a.is_normal()) throw NotNormal("not in normal form: " + to_string(a));
  if (!b.is_normal()) throw NotNormal("not in normal form: " + to_string(b));
  return compare_unchecked(a, b);
}

Ordinal add(const Ordinal& a, const Ordinal& b) {
  if (b.is_zero()) return a;
  const auto& lead = *b.terms_.front();
  Ordinal r;
  for (const auto& t : a.terms_) {
    if (compare_terms(*t, lead) < 0) break;
    r.terms_.push_back(t);
  }
  r.terms_.insert(r.terms_.end(), b.terms_.begin(), b.terms_.end());
  return r;
}

Ordinal veblen(const Ordinal& index, const Ordinal& arg) {
  if (arg.terms_.size() == 1 && compare_unchecked(arg.terms_[0]->index, index) > 0) return arg;
  Ordinal r;
  r.terms_.push_back(make_term(index, arg));
  return r;
}

Ordinal mul_nat(const Ordinal& a, const Nat& n) {
  if (n == 0 || a.is_zero()) return Ordinal::zero();
  const auto& ts = a.terms();
  std::size_t lead_count = 1;
  while (lead_count < ts.size() && term_equal(*ts[lead_count], *ts[0])) ++lead_count;
  Nat total = n * static_cast<unsigned long>(lead_count);
  if (total > 1000000) throw std::length_error("ordinal multiplication too large");
  std::vector<std::pair<Ordinal, Ordinal>> out;
  for (unsigned long i = 0; i < total.get_ui(); ++i) out.emplace_back(ts[0]->index, ts[0]->arg);
  for (std::size_t i = lead_count; i < ts.size(); ++i) out.emplace_back(ts[i]->index, ts[i]->arg);
  return Ordinal::raw(std::move(out));
}

Ordinal e_of(const Ordinal& xi) {
  if (xi.is_zero()) return Ordinal::zero();
  const auto& last = xi.terms().back();
  // phi(a, b) with a > 0 is its own exponent: omega^{phi(a,b)} = phi(a,b).
  if (last->index.is_zero()) return last->arg;
  return single(last);
}

Ordinal h_of(const Ordinal& xi) {
  Ordinal r;
  if (xi.is_zero()) return r;
  r.terms_.assign(xi.terms_.begin(), xi.terms_.end() - 1);
  return r;
}

Ordinal omega_tower(unsigned n) {
  Ordinal r = Ordinal::one();
  for (unsigned i = 0; i < n; ++i) r = omega_pow(r);
  return r;
}

Ordinal gamma_seq(unsigned n) {
  Ordinal r = Ordinal::omega();
  for (unsigned i = 0; i < n; ++i) r = veblen(r, Ordinal::zero());
  return r;
}

Classification classify(const Ordinal& a) {
  if (a.is_zero()) return {Kind::Zero, {}};
  if (is_one(*a.terms().back())) return {Kind::Successor, h_of(a)};
  return {Kind::Limit, {}};
}

std::optional<unsigned long> finite_value(const Ordinal& a) {
  for (const auto& t : a.terms())
    if (!is_one(*t)) return std::nullopt;
  return a.terms().size();
}

namespace {

bool prints_atomic(const Ordinal& a) {
  if (finite_value(a)) return true;
  return a.terms().size() == 1;
}

std::string term_string(const VeblenTerm& t) {
  if (t.index.is_zero()) {
    if (t.arg.is_zero()) return "1";
    if (t.arg == Ordinal::one()) return "w";
    std::string e = to_string(t.arg);
    return prints_atomic(t.arg) ? "w^" + e : "w^(" + e + ")";
  }
  return "phi(" + to_string(t.index) + "," + to_string(t.arg) + ")";
}

}  // namespace

std::string to_string(const Ordinal& a) {
  if (a.is_zero()) return "0";
  std::string out;
  const auto& ts = a.terms();
  for (std::size_t i = 0; i < ts.size();) {
    if (!out.empty()) out += "+";
    if (is_one(*ts[i])) {
      std::size_t j = i;
      while (j < ts.size() && is_one(*ts[j])) ++j;
      out += std::to_string(j - i);
      i = j;
    } else {
      out += term_string(*ts[i]);
      ++i;
    }
  }
  return out;
}

namespace {

class OrdinalParser {
 public:
  explicit OrdinalParser(std::string_view s) : s_(s) {}

  Ordinal run() {
    Ordinal r = sum();
    skip();
    if (pos_ != s_.size()) fail("trailing input");
    return r;
  }

 private:
  std::string_view s_;
  std::size_t pos_ = 0;

  [[noreturn]] void fail(const std::string& what) {
    throw std::invalid_argument("ordinal parse error at " + std::to_string(pos_) + ": " + what);
  }
  void skip() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }
  bool eat(std::string_view tok) {
    skip();
    if (s_.substr(pos_, tok.size()) == tok) {
      pos_ += tok.size();
      return true;
    }
    return false;
  }
  Ordinal sum() {
    Ordinal r = atom();
    while (eat("+")) r = add(r, atom());
    return r;
  }
  Ordinal atom() {
    skip();
    if (pos_ >= s_.size()) fail("unexpected end");
    char c = s_[pos_];
    if (std::isdigit(static_cast<unsigned char>(c))) {
      std::size_t start = pos_;
      while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
      return Ordinal::from_nat(std::stoul(std::string(s_.substr(start, pos_ - start))));
    }
    if (eat("phi")) {
      if (!eat("(")) fail("expected (");
      Ordinal a = sum();
      if (!eat(",")) fail("expected ,");
      Ordinal b = sum();
      if (!eat(")")) fail("expected )");
      return veblen(a, b);
    }
    if (eat("w")) {
      if (eat("^")) return omega_pow(atom());
      return Ordinal::omega();
    }
    if (eat("(")) {
      Ordinal r = sum();
      if (!eat(")")) fail("expected )");
      return r;
    }
    fail(std::string("unexpected '") + c + "'");
  }
};

}  // namespace

Ordinal parse(std::string_view text) { return OrdinalParser(text).run(); }

Nat encode(const Ordinal& a) {
  Nat code = 0;
  const auto& ts = a.terms();
  for (auto it = ts.rbegin(); it != ts.rend(); ++it)
    code = 1 + pair(pair(encode((*it)->index), encode((*it)->arg)), code);
  return code;
}

namespace {

std::optional<Ordinal> decode_raw(const Nat& code, int depth) {
  if (depth > 4096) return std::nullopt;
  std::vector<std::pair<Ordinal, Ordinal>> terms;
  Nat rest = code;
  while (rest != 0) {
    auto [head, tail] = unpair(rest - 1);
    auto [ci, ca] = unpair(head);
    auto i = decode_raw(ci, depth + 1);
    if (!i) return std::nullopt;
    auto a = decode_raw(ca, depth + 1);
    if (!a) return std::nullopt;
    terms.emplace_back(std::move(*i), std::move(*a));
    rest = tail;
  }
  return Ordinal::raw(std::move(terms));
}

}  // namespace

std::optional<Ordinal> decode(const Nat& code) {
  auto r = decode_raw(code, 0);
  if (!r || !r->is_normal()) return std::nullopt;
  return r;
}

}  // namespace hype::ord
