#include "hype/syntax.hpp"

#include <algorithm>
#include <array>
#include <stdexcept>

namespace hype {

namespace {

constexpr std::array<FnInfo, kFnCount> kFns{{
    {"num", 1},   {"sub", 3},    {"negdot", 1}, {"vordot", 2}, {"alldot", 2}, {"eqdot", 2},
    {"trdot", 1}, {"pair", 2},   {"proj1", 1},  {"proj2", 1},  {"val", 1},    {"cterm", 1},
    {"sent", 1},  {"isvar", 1},  {"oadd", 2},   {"owexp", 1},  {"omul", 2},   {"ophi", 2},
    {"oe", 1},    {"oh", 1},     {"olt", 2},    {"ole", 2},    {"tau", 1},    {"fh", 2},
    {"fhr", 2},   {"sentlt", 2},
}};

VarSet merge(const VarSet& a, const VarSet& b) {
  VarSet out;
  out.reserve(a.size() + b.size());
  std::set_union(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return out;
}

VarSet erase(VarSet s, unsigned v) {
  auto it = std::lower_bound(s.begin(), s.end(), v);
  if (it != s.end() && *it == v) s.erase(it);
  return s;
}

std::shared_ptr<Term> new_term(Term::Kind k) {
  auto t = std::make_shared<Term>();
  t->kind = k;
  return t;
}

void absorb(Term& t) {
  for (const auto& a : t.args) {
    t.fv = merge(t.fv, a->fv);
    t.max_var = std::max(t.max_var, a->max_var);
  }
}

std::shared_ptr<Formula> new_formula(Formula::Kind k) {
  auto f = std::make_shared<Formula>();
  f->kind = k;
  return f;
}

FormulaPtr pred(Formula::Kind k, TermPtr t, std::uint8_t feat) {
  auto f = new_formula(k);
  f->fv = t->fv;
  f->max_var = t->max_var;
  f->features = feat;
  f->lhs = std::move(t);
  return f;
}

}  // namespace

const FnInfo& fn_info(Fn f) { return kFns[static_cast<int>(f)]; }

std::optional<Fn> fn_by_name(std::string_view name) {
  for (int i = 0; i < kFnCount; ++i)
    if (name == kFns[i].name) return static_cast<Fn>(i);
  return std::nullopt;
}

TermPtr var(unsigned index) {
  auto t = new_term(Term::Kind::Var);
  t->var = index;
  t->fv = {index};
  t->max_var = static_cast<int>(index);
  return t;
}

TermPtr num(const Nat& n) {
  if (n < 0) throw std::invalid_argument("negative numeral");
  auto t = new_term(Term::Kind::Num);
  t->num = n;
  return t;
}

TermPtr succ(TermPtr a) {
  auto t = new_term(Term::Kind::Succ);
  t->args = {std::move(a)};
  absorb(*t);
  return t;
}

TermPtr plus(TermPtr a, TermPtr b) {
  auto t = new_term(Term::Kind::Plus);
  t->args = {std::move(a), std::move(b)};
  absorb(*t);
  return t;
}

TermPtr times(TermPtr a, TermPtr b) {
  auto t = new_term(Term::Kind::Times);
  t->args = {std::move(a), std::move(b)};
  absorb(*t);
  return t;
}

TermPtr app(Fn f, std::vector<TermPtr> args) {
  if (static_cast<int>(args.size()) != fn_info(f).arity)
    throw std::invalid_argument(std::string("wrong number of arguments for ") + fn_info(f).name);
  auto t = new_term(Term::Kind::App);
  t->fn = f;
  t->args = std::move(args);
  absorb(*t);
  return t;
}

FormulaPtr bot() {
  static const FormulaPtr b = new_formula(Formula::Kind::Bot);
  return b;
}

FormulaPtr eq(TermPtr s, TermPtr t) {
  auto f = new_formula(Formula::Kind::Eq);
  f->fv = merge(s->fv, t->fv);
  f->max_var = std::max(s->max_var, t->max_var);
  f->lhs = std::move(s);
  f->rhs = std::move(t);
  return f;
}

FormulaPtr tr(TermPtr t) { return pred(Formula::Kind::Tr, std::move(t), kFeatTr); }
FormulaPtr fpred(TermPtr t) { return pred(Formula::Kind::F, std::move(t), kFeatF); }
FormulaPtr ppred(TermPtr t) { return pred(Formula::Kind::P, std::move(t), kFeatP); }

FormulaPtr atom(unsigned index) {
  auto f = new_formula(Formula::Kind::Atom);
  f->index = index;
  return f;
}

FormulaPtr neg(FormulaPtr a) {
  auto f = new_formula(Formula::Kind::Neg);
  f->fv = a->fv;
  f->max_var = a->max_var;
  f->rank = a->rank + 1;
  f->features = a->features;
  f->a = std::move(a);
  return f;
}

namespace {

FormulaPtr binary(Formula::Kind k, FormulaPtr a, FormulaPtr b) {
  auto f = new_formula(k);
  f->fv = merge(a->fv, b->fv);
  f->max_var = std::max(a->max_var, b->max_var);
  f->rank = std::max(a->rank, b->rank) + 1;
  f->features = a->features | b->features | (k == Formula::Kind::Imp ? kFeatImp : 0);
  f->a = std::move(a);
  f->b = std::move(b);
  return f;
}

}  // namespace

FormulaPtr disj(FormulaPtr a, FormulaPtr b) { return binary(Formula::Kind::Or, std::move(a), std::move(b)); }
FormulaPtr imp(FormulaPtr a, FormulaPtr b) { return binary(Formula::Kind::Imp, std::move(a), std::move(b)); }

FormulaPtr forall(unsigned v, FormulaPtr a) {
  auto f = new_formula(Formula::Kind::All);
  f->index = v;
  f->fv = erase(a->fv, v);
  f->max_var = std::max(a->max_var, static_cast<int>(v));
  f->rank = a->rank + 1;
  f->features = a->features;
  f->a = std::move(a);
  return f;
}

FormulaPtr conj(FormulaPtr a, FormulaPtr b) { return neg(disj(neg(std::move(a)), neg(std::move(b)))); }
FormulaPtr exists(unsigned v, FormulaPtr a) { return neg(forall(v, neg(std::move(a)))); }
FormulaPtr iff(FormulaPtr a, FormulaPtr b) { return conj(imp(a, b), imp(b, a)); }
FormulaPtr top() { return neg(bot()); }
FormulaPtr inot(FormulaPtr a) { return imp(std::move(a), bot()); }
FormulaPtr mimp(FormulaPtr a, FormulaPtr b) { return disj(neg(std::move(a)), std::move(b)); }
FormulaPtr mequiv(FormulaPtr a, FormulaPtr b) { return conj(mimp(a, b), mimp(b, a)); }
FormulaPtr lt(TermPtr s, TermPtr t) { return eq(app(Fn::OLt, {std::move(s), std::move(t)}), num(1)); }
FormulaPtr le(TermPtr s, TermPtr t) { return eq(app(Fn::OLe, {std::move(s), std::move(t)}), num(1)); }

bool as_conj(const FormulaPtr& f, FormulaPtr& a, FormulaPtr& b) {
  if (f->kind != Formula::Kind::Neg || f->a->kind != Formula::Kind::Or) return false;
  const auto& o = f->a;
  if (o->a->kind != Formula::Kind::Neg || o->b->kind != Formula::Kind::Neg) return false;
  a = o->a->a;
  b = o->b->a;
  return true;
}

bool as_exists(const FormulaPtr& f, unsigned& v, FormulaPtr& a) {
  if (f->kind != Formula::Kind::Neg || f->a->kind != Formula::Kind::All) return false;
  if (f->a->a->kind != Formula::Kind::Neg) return false;
  v = f->a->index;
  a = f->a->a->a;
  return true;
}

namespace {

bool as_ord_rel(const FormulaPtr& f, Fn which, TermPtr& s, TermPtr& t) {
  if (f->kind != Formula::Kind::Eq) return false;
  const auto& l = f->lhs;
  const auto& r = f->rhs;
  if (l->kind != Term::Kind::App || l->fn != which) return false;
  if (r->kind != Term::Kind::Num || r->num != 1) return false;
  s = l->args[0];
  t = l->args[1];
  return true;
}

}  // namespace

bool as_lt(const FormulaPtr& f, TermPtr& s, TermPtr& t) { return as_ord_rel(f, Fn::OLt, s, t); }
bool as_le(const FormulaPtr& f, TermPtr& s, TermPtr& t) { return as_ord_rel(f, Fn::OLe, s, t); }

std::string lang_name(Lang l) {
  switch (l) {
    case Lang::LN: return "LN";
    case Lang::LNimp: return "LN->";
    case Lang::LNimpP: return "LN->P";
    case Lang::LT: return "LT";
    case Lang::LTimp: return "LT->";
    case Lang::LTimpP: return "LT->P";
    case Lang::LTF: return "LTF";
    case Lang::Any: return "ANY";
  }
  return "?";
}

std::optional<Lang> lang_by_name(std::string_view name) {
  for (Lang l : {Lang::LN, Lang::LNimp, Lang::LNimpP, Lang::LT, Lang::LTimp, Lang::LTimpP, Lang::LTF, Lang::Any})
    if (name == lang_name(l)) return l;
  return std::nullopt;
}

std::uint8_t lang_features(Lang l) {
  switch (l) {
    case Lang::LN: return 0;
    case Lang::LNimp: return kFeatImp;
    case Lang::LNimpP: return kFeatImp | kFeatP;
    case Lang::LT: return kFeatTr;
    case Lang::LTimp: return kFeatTr | kFeatImp;
    case Lang::LTimpP: return kFeatTr | kFeatImp | kFeatP;
    case Lang::LTF: return kFeatTr | kFeatF | kFeatP;
    case Lang::Any: return 0xff;
  }
  return 0;
}

bool in_language(const Formula& f, Lang l) { return (f.features & ~lang_features(l)) == 0; }

Lang minimal_language(const Formula& f) {
  for (Lang l : {Lang::LN, Lang::LNimp, Lang::LNimpP, Lang::LT, Lang::LTimp, Lang::LTimpP, Lang::LTF})
    if (in_language(f, l)) return l;
  return Lang::Any;
}

int term_compare(const Term& a, const Term& b) {
  if (&a == &b) return 0;
  if (a.kind != b.kind) return a.kind < b.kind ? -1 : 1;
  switch (a.kind) {
    case Term::Kind::Var:
      return a.var == b.var ? 0 : (a.var < b.var ? -1 : 1);
    case Term::Kind::Num: {
      int c = cmp(a.num, b.num);
      return c == 0 ? 0 : (c < 0 ? -1 : 1);
    }
    case Term::Kind::App:
      if (a.fn != b.fn) return a.fn < b.fn ? -1 : 1;
      [[fallthrough]];
    default:
      for (std::size_t i = 0; i < a.args.size(); ++i) {
        int c = term_compare(*a.args[i], *b.args[i]);
        if (c) return c;
      }
      return 0;
  }
}

bool term_equal(const Term& a, const Term& b) { return term_compare(a, b) == 0; }

namespace {

// Binder environments: innermost binder last.
struct Env {
  std::vector<unsigned> vars;
  // Position of the innermost binder of v, or -1 when v is free.
  int lookup(unsigned v) const {
    for (int i = static_cast<int>(vars.size()) - 1; i >= 0; --i)
      if (vars[i] == v) return i;
    return -1;
  }
};

int var_key_compare(unsigned x, const Env& ex, unsigned y, const Env& ey) {
  int bx = ex.lookup(x), by = ey.lookup(y);
  if (bx >= 0 && by >= 0) return bx == by ? 0 : (bx < by ? -1 : 1);
  if (bx >= 0) return -1;
  if (by >= 0) return 1;
  return x == y ? 0 : (x < y ? -1 : 1);
}

int alpha_term(const Term& a, const Env& ea, const Term& b, const Env& eb) {
  if (ea.vars.empty() && eb.vars.empty()) return term_compare(a, b);
  if (a.kind != b.kind) return a.kind < b.kind ? -1 : 1;
  switch (a.kind) {
    case Term::Kind::Var:
      return var_key_compare(a.var, ea, b.var, eb);
    case Term::Kind::Num: {
      int c = cmp(a.num, b.num);
      return c == 0 ? 0 : (c < 0 ? -1 : 1);
    }
    case Term::Kind::App:
      if (a.fn != b.fn) return a.fn < b.fn ? -1 : 1;
      [[fallthrough]];
    default:
      for (std::size_t i = 0; i < a.args.size(); ++i) {
        int c = alpha_term(*a.args[i], ea, *b.args[i], eb);
        if (c) return c;
      }
      return 0;
  }
}

int alpha_formula(const Formula& a, Env& ea, const Formula& b, Env& eb) {
  if (&a == &b && ea.vars == eb.vars) return 0;
  if (a.kind != b.kind) return a.kind < b.kind ? -1 : 1;
  switch (a.kind) {
    case Formula::Kind::Bot:
      return 0;
    case Formula::Kind::Atom:
      return a.index == b.index ? 0 : (a.index < b.index ? -1 : 1);
    case Formula::Kind::Eq: {
      int c = alpha_term(*a.lhs, ea, *b.lhs, eb);
      return c ? c : alpha_term(*a.rhs, ea, *b.rhs, eb);
    }
    case Formula::Kind::Tr:
    case Formula::Kind::F:
    case Formula::Kind::P:
      return alpha_term(*a.lhs, ea, *b.lhs, eb);
    case Formula::Kind::Neg:
      return alpha_formula(*a.a, ea, *b.a, eb);
    case Formula::Kind::Or:
    case Formula::Kind::Imp: {
      int c = alpha_formula(*a.a, ea, *b.a, eb);
      return c ? c : alpha_formula(*a.b, ea, *b.b, eb);
    }
    case Formula::Kind::All: {
      ea.vars.push_back(a.index);
      eb.vars.push_back(b.index);
      int c = alpha_formula(*a.a, ea, *b.a, eb);
      ea.vars.pop_back();
      eb.vars.pop_back();
      return c;
    }
  }
  return 0;
}

}  // namespace

int alpha_compare(const Formula& a, const Formula& b) {
  Env ea, eb;
  return alpha_formula(a, ea, b, eb);
}

bool formula_equal(const Formula& a, const Formula& b) {
  if (&a == &b) return true;
  if (a.kind != b.kind || a.index != b.index) return false;
  switch (a.kind) {
    case Formula::Kind::Bot:
    case Formula::Kind::Atom:
      return true;
    case Formula::Kind::Eq:
      return term_equal(*a.lhs, *b.lhs) && term_equal(*a.rhs, *b.rhs);
    case Formula::Kind::Tr:
    case Formula::Kind::F:
    case Formula::Kind::P:
      return term_equal(*a.lhs, *b.lhs);
    case Formula::Kind::Neg:
    case Formula::Kind::All:
      return formula_equal(*a.a, *b.a);
    case Formula::Kind::Or:
    case Formula::Kind::Imp:
      return formula_equal(*a.a, *b.a) && formula_equal(*a.b, *b.b);
  }
  return false;
}

bool is_free(unsigned v, const Formula& f) { return std::binary_search(f.fv.begin(), f.fv.end(), v); }
bool is_closed(const Term& t) { return t.fv.empty(); }

TermPtr substitute_term(const TermPtr& t, unsigned v, const TermPtr& s) {
  if (!std::binary_search(t->fv.begin(), t->fv.end(), v)) return t;
  switch (t->kind) {
    case Term::Kind::Var:
      return s;
    case Term::Kind::Num:
      return t;
    case Term::Kind::Succ:
      return succ(substitute_term(t->args[0], v, s));
    case Term::Kind::Plus:
      return plus(substitute_term(t->args[0], v, s), substitute_term(t->args[1], v, s));
    case Term::Kind::Times:
      return times(substitute_term(t->args[0], v, s), substitute_term(t->args[1], v, s));
    case Term::Kind::App: {
      std::vector<TermPtr> args;
      for (const auto& a : t->args) args.push_back(substitute_term(a, v, s));
      return app(t->fn, std::move(args));
    }
  }
  return t;
}

unsigned fresh_var(std::initializer_list<int> max_vars) {
  int m = -1;
  for (int x : max_vars) m = std::max(m, x);
  return static_cast<unsigned>(m + 1);
}

FormulaPtr rename_bound(const FormulaPtr& all, unsigned w) {
  if (all->index == w) return all;
  return forall(w, substitute(all->a, all->index, var(w)));
}

FormulaPtr substitute(const FormulaPtr& f, unsigned v, const TermPtr& s) {
  if (!is_free(v, *f)) return f;
  switch (f->kind) {
    case Formula::Kind::Bot:
    case Formula::Kind::Atom:
      return f;
    case Formula::Kind::Eq:
      return eq(substitute_term(f->lhs, v, s), substitute_term(f->rhs, v, s));
    case Formula::Kind::Tr:
      return tr(substitute_term(f->lhs, v, s));
    case Formula::Kind::F:
      return fpred(substitute_term(f->lhs, v, s));
    case Formula::Kind::P:
      return ppred(substitute_term(f->lhs, v, s));
    case Formula::Kind::Neg:
      return neg(substitute(f->a, v, s));
    case Formula::Kind::Or:
      return disj(substitute(f->a, v, s), substitute(f->b, v, s));
    case Formula::Kind::Imp:
      return imp(substitute(f->a, v, s), substitute(f->b, v, s));
    case Formula::Kind::All: {
      unsigned x = f->index;
      if (std::binary_search(s->fv.begin(), s->fv.end(), x)) {
        unsigned w = fresh_var({f->max_var, s->max_var, static_cast<int>(v)});
        return forall(w, substitute(substitute(f->a, x, var(w)), v, s));
      }
      return forall(x, substitute(f->a, v, s));
    }
  }
  return f;
}

std::size_t formula_size(const Formula& f) {
  switch (f.kind) {
    case Formula::Kind::Neg:
    case Formula::Kind::All:
      return 1 + formula_size(*f.a);
    case Formula::Kind::Or:
    case Formula::Kind::Imp:
      return 1 + formula_size(*f.a) + formula_size(*f.b);
    default:
      return 1;
  }
}

}  // namespace hype
