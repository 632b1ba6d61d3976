#include "hype/translate.hpp"

#include "hype/code.hpp"
#include "hype/parse.hpp"

namespace hype {

namespace {

TermPtr tau_term(const TermPtr& t) { return app(Fn::Tau, {t}); }

[[noreturn]] void uncovered(const FormulaPtr& a) {
  throw TranslationError("no translation clause for " + print(*a));
}

}  // namespace

FormulaPtr tau(const FormulaPtr& a) {
  using K = Formula::Kind;
  switch (a->kind) {
    case K::Bot:
    case K::Eq:
    case K::P:
    case K::Atom:
      return a;
    case K::Tr:
      return tr(tau_term(a->lhs));
    case K::Or:
      return disj(tau(a->a), tau(a->b));
    case K::All:
      return forall(a->index, tau(a->a));
    case K::Neg: {
      const FormulaPtr& b = a->a;
      switch (b->kind) {
        case K::Bot:
        case K::Eq:
        case K::P:
        case K::Atom:
          return a;
        case K::Tr:
          return fpred(tau_term(b->lhs));
        case K::Neg:
          return tau(b->a);
        case K::Or:
          return conj(tau(neg(b->a)), tau(neg(b->b)));
        case K::All:
          return exists(b->index, tau(neg(b->a)));
        default:
          uncovered(a);
      }
    }
    default:
      uncovered(a);
  }
}

FormulaPtr sigma(const FormulaPtr& a) {
  using K = Formula::Kind;
  switch (a->kind) {
    case K::Bot:
    case K::Eq:
    case K::P:
    case K::Atom:
      return a;
    case K::Tr:
      return tr(tau_term(a->lhs));
    case K::F:
      throw TranslationError("F is not in the source language");
    case K::Neg:
      if (a->a->kind == K::Tr) return fpred(tau_term(a->a->lhs));
      return neg(sigma(a->a));
    case K::Or:
      return disj(sigma(a->a), sigma(a->b));
    case K::Imp:
      return disj(neg(sigma(a->a)), sigma(a->b));
    case K::All:
      return forall(a->index, sigma(a->a));
  }
  return a;
}

Nat tau_code(const Nat& x) {
  if (auto f = decode_formula(x)) {
    try {
      return encode(*tau(*f));
    } catch (const TranslationError&) {
    }
  }
  return tagged(tag::Var, x);
}


// ---------------------------------------------------------------- classical evaluation

namespace {

bool has_letters(const Formula& f) {
  if (f.kind == Formula::Kind::Atom) return true;
  return (f.a && has_letters(*f.a)) || (f.b && has_letters(*f.b));
}

bool eval_closed(const ClassicalInterp& m, const FormulaPtr& a) {
  using K = Formula::Kind;
  switch (a->kind) {
    case K::Bot: return false;
    case K::Eq: return eval_term(*a->lhs) == eval_term(*a->rhs);
    case K::Tr: return m.in_t(eval_term(*a->lhs));
    case K::F: return m.in_f(eval_term(*a->lhs));
    case K::P:
      if (!m.p) throw TranslationError("P is uninterpreted");
      return m.p->count(eval_term(*a->lhs)) != 0;
    case K::Atom: throw TranslationError("sentence letter in classical evaluation: " + print(*a));
    case K::Neg: return !eval_closed(m, a->a);
    case K::Or: return eval_closed(m, a->a) || eval_closed(m, a->b);
    case K::Imp: return !eval_closed(m, a->a) || eval_closed(m, a->b);
    case K::All:
      for (unsigned d = 0; d < m.domain; ++d)
        if (!eval_closed(m, substitute(a->a, a->index, num(d)))) return false;
      return true;
  }
  return false;
}

}  // namespace

bool classical_eval(const ClassicalInterp& m, const FormulaPtr& a) {
  if (!a->fv.empty()) throw TranslationError("free variable in classical evaluation: " + print(*a));
  return eval_closed(m, a);
}

// ---------------------------------------------------------------- 𝕋, 𝔽 and the audit

TranslationContext::TranslationContext(const sem::Universe& u, sem::PExt p)
    : u_(&u), p_(std::move(p)), min_(sem::min_fixed_point(u, p_)) {
  for (std::size_t i = 0; i < u.size(); ++i) {
    if (!min_[i]) continue;
    t_codes_.insert(tau_code(u.entries[i].code));
    if (u.pos[i]) neg_codes_.insert(tau_code(u.entries[*u.pos[i]].code));
  }
}

bool TranslationContext::in_t(const Nat& x) const { return t_codes_.count(x) != 0; }

bool TranslationContext::in_f(const Nat& x) const {
  if (neg_codes_.count(x)) return true;
  auto [t, y] = untag(x);
  if (t == tag::Var) return tau_code(y) == x;  // τ rejected y, so y is no sentence
  auto f = decode_formula(x);
  return f && (!(*f)->fv.empty() || has_letters(**f));
}

ClassicalInterp TranslationContext::interp() const {
  ClassicalInterp m;
  m.in_t = [this](const Nat& x) { return in_t(x); };
  m.in_f = [this](const Nat& x) { return in_f(x); };
  m.domain = u_->domain;
  m.p = p_;
  return m;
}

TranslationReport audit_translation(const TranslationContext& ctx) {
  TranslationReport r;
  const sem::Universe& u = ctx.universe();
  ClassicalInterp m = ctx.interp();
  for (std::size_t i = 0; i < u.size(); ++i) {
    const FormulaPtr& f = u.entries[i].formula;
    ++r.members;
    bool in_min = ctx.min()[i], truth = classical_eval(m, tau(f));
    if (in_min != truth)
      r.failures.push_back("member " + print(*f) + (in_min ? " in MIN but tau false" : " not in MIN but tau true"));
    if (u.neg[i]) {
      ++r.neg_transfer;
      const Nat& c = u.entries[i].code;
      if (ctx.in_t(tau_code(u.entries[*u.neg[i]].code)) != ctx.in_f(tau_code(c)))
        r.failures.push_back("negation transfer fails at " + print(*f));
    }
  }
  for (const auto& inst : sem::kfl_instances(u, ctx.interp().p.has_value())) {
    ++r.kfl;
    FormulaPtr g, d;
    for (const auto& a : inst.sequent.ante) g = g ? conj(g, a) : a;
    for (const auto& b : inst.sequent.succ) d = d ? disj(d, b) : b;
    if (!classical_eval(m, sigma(imp(g ? g : neg(bot()), d ? d : bot()))))
      r.failures.push_back(inst.axiom + " instance " + print(inst.sequent) + " sigma false");
  }
  return r;
}

}  // namespace hype
