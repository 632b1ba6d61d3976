#include "hype/code.hpp"

#include <map>

#include <functional>

#include "hype/jump.hpp"
#include "hype/translate.hpp"

namespace hype {

Nat tagged(unsigned long t, const Nat& payload) { return payload * kTagRadix + t; }

std::pair<unsigned long, Nat> untag(const Nat& c) {
  Nat q, r;
  mpz_fdiv_qr_ui(q.get_mpz_t(), r.get_mpz_t(), c.get_mpz_t(), kTagRadix);
  return {r.get_ui(), q};
}

namespace {

Nat fold_args(const std::vector<Nat>& xs) {
  Nat r = xs.back();
  for (std::size_t i = xs.size() - 1; i-- > 0;) r = pair(xs[i], r);
  return r;
}

std::vector<Nat> unfold_args(Nat payload, int arity) {
  std::vector<Nat> out;
  for (int i = 0; i + 1 < arity; ++i) {
    auto [h, t] = unpair(payload);
    out.push_back(h);
    payload = t;
  }
  out.push_back(payload);
  return out;
}

std::optional<unsigned> small_index(const Nat& n) {
  if (n < 0 || n > 1u << 30) return std::nullopt;
  return static_cast<unsigned>(n.get_ui());
}

}  // namespace

Nat var_code(unsigned i) { return tagged(tag::Var, i); }
Nat numeral_code(const Nat& n) { return tagged(tag::Num, n); }

namespace {
constexpr std::size_t kMemoBits = 4096;

Nat remember(std::shared_ptr<const Nat>& slot, Nat v) {
  if (mpz_sizeinbase(v.get_mpz_t(), 2) > kMemoBits) slot = std::make_shared<const Nat>(v);
  return v;
}

Nat encode_term(const Term& t);
Nat encode_formula(const Formula& f);
Nat eval_uncached(const Term& t);
}  // namespace

Nat encode(const Term& t) {
  if (t.code_cache) return *t.code_cache;
  return remember(t.code_cache, encode_term(t));
}

Nat encode(const Formula& f) {
  if (f.code_cache) return *f.code_cache;
  return remember(f.code_cache, encode_formula(f));
}

namespace {
Nat encode_term(const Term& t) {
  switch (t.kind) {
    case Term::Kind::Var: return tagged(tag::Var, t.var);
    case Term::Kind::Num: return tagged(tag::Num, t.num);
    case Term::Kind::Succ: return tagged(tag::Succ, encode(*t.args[0]));
    case Term::Kind::Plus: return tagged(tag::Plus, pair(encode(*t.args[0]), encode(*t.args[1])));
    case Term::Kind::Times: return tagged(tag::Times, pair(encode(*t.args[0]), encode(*t.args[1])));
    case Term::Kind::App: {
      std::vector<Nat> xs;
      for (const auto& a : t.args) xs.push_back(encode(*a));
      return tagged(tag::FnBase + static_cast<unsigned long>(t.fn), fold_args(xs));
    }
  }
  return 0;
}

Nat encode_formula(const Formula& f) {
  switch (f.kind) {
    case Formula::Kind::Bot: return tagged(tag::Bot, 0);
    case Formula::Kind::Eq: return tagged(tag::Eq, pair(encode(*f.lhs), encode(*f.rhs)));
    case Formula::Kind::Tr: return tagged(tag::Tr, encode(*f.lhs));
    case Formula::Kind::F: return tagged(tag::F, encode(*f.lhs));
    case Formula::Kind::P: return tagged(tag::P, encode(*f.lhs));
    case Formula::Kind::Atom: return tagged(tag::Atom, f.index);
    case Formula::Kind::Neg: return tagged(tag::Neg, encode(*f.a));
    case Formula::Kind::Or: return tagged(tag::Or, pair(encode(*f.a), encode(*f.b)));
    case Formula::Kind::Imp: return tagged(tag::Imp, pair(encode(*f.a), encode(*f.b)));
    case Formula::Kind::All: return tagged(tag::All, pair(var_code(f.index), encode(*f.a)));
  }
  return 0;
}
}  // namespace

namespace {

struct Decoder {
  std::string error;

  // The code of a decoded node is known; keep it when large.
  template <class P>
  static std::optional<P> seed(std::optional<P> r, const Nat& c) {
    if (r && !(*r)->code_cache && mpz_sizeinbase(c.get_mpz_t(), 2) > kMemoBits)
      (*r)->code_cache = std::make_shared<const Nat>(c);
    return r;
  }

  std::optional<TermPtr> term(const Nat& c) { return seed(term_(c), c); }
  std::optional<FormulaPtr> formula(const Nat& c) { return seed(formula_(c), c); }

  std::optional<TermPtr> term_(const Nat& c) {
    auto [t, p] = untag(c);
    if (t == tag::Num) return num(p);
    if (t == tag::Var) {
      auto i = small_index(p);
      if (!i) return fail("variable index too large");
      return var(*i);
    }
    if (t == tag::Succ) {
      auto a = term(p);
      if (!a) return std::nullopt;
      return succ(*a);
    }
    if (t == tag::Plus || t == tag::Times) {
      auto [x, y] = unpair(p);
      auto a = term(x);
      if (!a) return std::nullopt;
      auto b = term(y);
      if (!b) return std::nullopt;
      return t == tag::Plus ? plus(*a, *b) : times(*a, *b);
    }
    if (t >= tag::FnBase && t < tag::FnBase + kFnCount) {
      Fn f = static_cast<Fn>(t - tag::FnBase);
      std::vector<TermPtr> args;
      for (const auto& x : unfold_args(p, fn_info(f).arity)) {
        auto a = term(x);
        if (!a) return std::nullopt;
        args.push_back(*a);
      }
      return app(f, std::move(args));
    }
    return fail("no term constructor with tag " + std::to_string(t));
  }

  std::optional<FormulaPtr> formula_(const Nat& c) {
    auto [t, p] = untag(c);
    if (t == tag::Bot) {
      if (p != 0) return failf("bottom with nonzero payload");
      return bot();
    }
    if (t == tag::Eq) {
      auto [x, y] = unpair(p);
      auto a = term(x);
      if (!a) return std::nullopt;
      auto b = term(y);
      if (!b) return std::nullopt;
      return eq(*a, *b);
    }
    if (t == tag::Tr || t == tag::F || t == tag::P) {
      auto a = term(p);
      if (!a) return std::nullopt;
      if (t == tag::Tr) return tr(*a);
      return t == tag::F ? fpred(*a) : ppred(*a);
    }
    if (t == tag::Atom) {
      auto i = small_index(p);
      if (!i) return failf("letter index too large");
      return atom(*i);
    }
    if (t == tag::Neg) {
      auto a = formula(p);
      if (!a) return std::nullopt;
      return neg(*a);
    }
    if (t == tag::Or || t == tag::Imp) {
      auto [x, y] = unpair(p);
      auto a = formula(x);
      if (!a) return std::nullopt;
      auto b = formula(y);
      if (!b) return std::nullopt;
      return t == tag::Or ? disj(*a, *b) : imp(*a, *b);
    }
    if (t == tag::All) {
      auto [vc, body] = unpair(p);
      auto [vt, vi] = untag(vc);
      auto i = small_index(vi);
      if (vt != tag::Var || !i) return failf("quantifier over a non-variable");
      auto a = formula(body);
      if (!a) return std::nullopt;
      return forall(*i, *a);
    }
    return failf("no formula constructor with tag " + std::to_string(t));
  }

  std::nullopt_t fail(std::string msg) {
    if (error.empty()) error = std::move(msg);
    return std::nullopt;
  }
  std::nullopt_t failf(std::string msg) { return fail(std::move(msg)); }
};

}  // namespace

std::optional<TermPtr> decode_term(const Nat& c) {
  if (c < 0) return std::nullopt;
  Decoder d;
  return d.term(c);
}

std::optional<FormulaPtr> decode_formula(const Nat& c) {
  if (c < 0) return std::nullopt;
  Decoder d;
  return d.formula(c);
}

TermPtr decode_term_or_throw(const Nat& c) {
  Decoder d;
  auto r = d.term(c);
  if (!r) throw DecodeError("not a term code: " + d.error);
  return *r;
}

FormulaPtr decode_formula_or_throw(const Nat& c) {
  Decoder d;
  auto r = d.formula(c);
  if (!r) throw DecodeError("not a formula code: " + d.error);
  return *r;
}

bool is_closed_term_code(const Nat& x) {
  auto t = decode_term(x);
  return t && (*t)->fv.empty();
}

namespace {
bool lt_sentence_uncached(const Nat& x);
}

bool is_lt_sentence_code(const Nat& x) {
  if (mpz_sizeinbase(x.get_mpz_t(), 2) <= kMemoBits) return lt_sentence_uncached(x);
  // Quoted codes grow quickly; audits ask about the same few many times.
  thread_local std::map<Nat, bool> memo;
  if (auto it = memo.find(x); it != memo.end()) return it->second;
  if (memo.size() > 4096) memo.clear();
  bool r = lt_sentence_uncached(x);
  memo.emplace(x, r);
  return r;
}

namespace {
bool lt_sentence_uncached(const Nat& x) {
  auto f = decode_formula(x);
  if (!f || !(*f)->fv.empty()) return false;
  if ((*f)->features & (kFeatImp | kFeatF)) return false;
  // Sentence letters are not part of the object language of truth.
  std::function<bool(const Formula&)> no_letters = [&](const Formula& g) {
    switch (g.kind) {
      case Formula::Kind::Atom: return false;
      case Formula::Kind::Neg:
      case Formula::Kind::All: return no_letters(*g.a);
      case Formula::Kind::Or:
      case Formula::Kind::Imp: return no_letters(*g.a) && no_letters(*g.b);
      default: return true;
    }
  };
  return no_letters(**f);
}
}  // namespace

Nat sub_code(const Nat& x, const Nat& v, const Nat& y) {
  auto [vt, vi] = untag(v);
  if (vt != tag::Var || vi > (1u << 30)) return 0;
  auto s = decode_term(y);
  if (!s) return 0;
  unsigned i = static_cast<unsigned>(vi.get_ui());
  if (auto f = decode_formula(x)) return encode(*substitute(*f, i, *s));
  if (auto t = decode_term(x)) return encode(*substitute_term(*t, i, *s));
  return 0;
}

namespace {

std::optional<ord::Ordinal> as_ordinal(const Nat& c) { return ord::decode(c); }

Nat ord_value(const std::optional<ord::Ordinal>& o) { return o ? ord::encode(*o) : Nat(0); }

}  // namespace

Nat eval_fn(Fn f, const std::vector<Nat>& a) {
  switch (f) {
    case Fn::Num: return numeral_code(a[0]);
    case Fn::Sub: return sub_code(a[0], a[1], a[2]);
    case Fn::NegDot: return tagged(tag::Neg, a[0]);
    case Fn::VorDot: return tagged(tag::Or, pair(a[0], a[1]));
    case Fn::AllDot: return tagged(tag::All, pair(a[0], a[1]));
    case Fn::EqDot: return tagged(tag::Eq, pair(a[0], a[1]));
    case Fn::TrDot: return tagged(tag::Tr, a[0]);
    case Fn::Pair: return pair(a[0], a[1]);
    case Fn::Proj1: return unpair(a[0]).first;
    case Fn::Proj2: return unpair(a[0]).second;
    case Fn::Val: {
      auto t = decode_term(a[0]);
      if (!t || !(*t)->fv.empty()) return 0;
      return eval_term(**t);
    }
    case Fn::CTerm: return is_closed_term_code(a[0]) ? 1 : 0;
    case Fn::Sent: return is_lt_sentence_code(a[0]) ? 1 : 0;
    case Fn::IsVar: return untag(a[0]).first == tag::Var ? 1 : 0;
    case Fn::OAdd: {
      auto x = as_ordinal(a[0]), y = as_ordinal(a[1]);
      if (!x || !y) return 0;
      return ord::encode(ord::add(*x, *y));
    }
    case Fn::OWExp: {
      auto x = as_ordinal(a[0]);
      if (!x) return 0;
      return ord::encode(ord::omega_pow(*x));
    }
    case Fn::OMul: {
      auto x = as_ordinal(a[0]);
      if (!x) return 0;
      try {
        return ord::encode(ord::mul_nat(*x, a[1]));
      } catch (const std::length_error&) {
        return 0;
      }
    }
    case Fn::OPhi: {
      auto x = as_ordinal(a[0]), y = as_ordinal(a[1]);
      if (!x || !y) return 0;
      return ord::encode(ord::veblen(*x, *y));
    }
    case Fn::OE: {
      auto x = as_ordinal(a[0]);
      return x ? ord::encode(ord::e_of(*x)) : Nat(0);
    }
    case Fn::OH: {
      auto x = as_ordinal(a[0]);
      return ord_value(x ? std::optional(ord::h_of(*x)) : std::nullopt);
    }
    case Fn::OLt:
    case Fn::OLe: {
      auto x = as_ordinal(a[0]), y = as_ordinal(a[1]);
      if (!x || !y) return 0;
      auto c = ord::compare(*x, *y);
      return (f == Fn::OLt ? c < 0 : c <= 0) ? 1 : 0;
    }
    case Fn::Tau: return tau_code(a[0]);
    case Fn::FH: return fh_code(a[0], a[1]);
    case Fn::FHR: return fhr_code(a[0], a[1]);
    case Fn::SentLt: {
      auto x = as_ordinal(a[0]);
      return x && sent_below(*x, a[1]) ? 1 : 0;
    }
  }
  return 0;
}

Nat eval_term(const Term& t) {
  if (!t.fv.empty()) throw OpenTermError("cannot evaluate a term with free variables");
  if (t.kind == Term::Kind::Num) return t.num;
  if (t.value_cache) return *t.value_cache;
  return remember(t.value_cache, eval_uncached(t));
}

namespace {
Nat eval_uncached(const Term& t) {
  switch (t.kind) {
    case Term::Kind::Var: return 0;
    case Term::Kind::Num: return t.num;
    case Term::Kind::Succ: return eval_term(*t.args[0]) + 1;
    case Term::Kind::Plus: return eval_term(*t.args[0]) + eval_term(*t.args[1]);
    case Term::Kind::Times: return eval_term(*t.args[0]) * eval_term(*t.args[1]);
    case Term::Kind::App: {
      std::vector<Nat> xs;
      for (const auto& a : t.args) xs.push_back(eval_term(*a));
      return eval_fn(t.fn, xs);
    }
  }
  return 0;
}
}  // namespace

namespace {

std::optional<unsigned long> formula_rank_level(const Formula& f) {
  switch (f.kind) {
    case Formula::Kind::Bot:
    case Formula::Kind::Eq:
      return 0;
    case Formula::Kind::Tr: {
      if (f.lhs->kind != Term::Kind::Num) return std::nullopt;
      auto inner = decode_formula(f.lhs->num);
      if (!inner || !(*inner)->fv.empty()) return std::nullopt;
      auto r = formula_rank_level(**inner);
      if (!r) return std::nullopt;
      return *r + 1;
    }
    case Formula::Kind::Neg:
    case Formula::Kind::All:
      return formula_rank_level(*f.a);
    case Formula::Kind::Or: {
      auto x = formula_rank_level(*f.a);
      auto y = formula_rank_level(*f.b);
      if (!x || !y) return std::nullopt;
      return std::max(*x, *y);
    }
    default:
      return std::nullopt;
  }
}

}  // namespace

std::optional<unsigned long> sent_rank(const Nat& c) {
  auto f = decode_formula(c);
  if (!f || !(*f)->fv.empty()) return std::nullopt;
  return formula_rank_level(**f);
}

bool sent_level(const ord::Ordinal& alpha, const Nat& c) {
  auto r = sent_rank(c);
  return r && !ord::less(alpha, ord::Ordinal::from_nat(*r));
}

bool sent_below(const ord::Ordinal& alpha, const Nat& c) {
  auto r = sent_rank(c);
  return r && ord::less(ord::Ordinal::from_nat(*r), alpha);
}

TermPtr ord_numeral(const ord::Ordinal& a) { return num(ord::encode(a)); }

FormulaPtr tr_below(const ord::Ordinal& alpha, TermPtr t) {
  return conj(eq(app(Fn::SentLt, {ord_numeral(alpha), t}), num(1)), tr(t));
}

}  // namespace hype
