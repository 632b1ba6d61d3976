#include "hype/derive.hpp"

#include "hype/code.hpp"
#include "hype/parse.hpp"

namespace hype::derive {

namespace {

/// target minus have; throws when have is not contained in target.
std::vector<FormulaPtr> missing(const std::vector<FormulaPtr>& target, const std::vector<FormulaPtr>& have) {
  std::vector<FormulaPtr> rest = target;
  for (const auto& f : have) {
    auto r = remove_one(rest, *f);
    if (!r) throw RuleError("cannot weaken away " + print(f));
    rest = std::move(*r);
  }
  return rest;
}

RuleApp with_formula(Rule r, FormulaPtr f) {
  RuleApp a;
  a.rule = r;
  a.formula = std::move(f);
  return a;
}

std::vector<FormulaPtr> without(const std::vector<FormulaPtr>& side, const FormulaPtr& f) {
  auto r = remove_one(side, *f);
  if (!r) throw RuleError("premise lacks " + print(f));
  return *r;
}

}  // namespace

DerivationPtr axiom(Sequent s, std::string id) {
  auto d = std::make_shared<Derivation>();
  d->conclusion = std::move(s);
  d->app.rule = Rule::Axiom;
  d->app.axiom = std::move(id);
  return d;
}

DerivationPtr hyp(Sequent s) {
  auto d = std::make_shared<Derivation>();
  d->conclusion = std::move(s);
  d->app.rule = Rule::Hyp;
  return d;
}

DerivationPtr identity(const FormulaPtr& a) { return axiom(make_sequent({a}, {a}), "ID"); }

DerivationPtr node(RuleApp app, std::vector<DerivationPtr> premises) {
  std::vector<Sequent> ps;
  for (const auto& p : premises) ps.push_back(p->conclusion);
  auto d = std::make_shared<Derivation>();
  d->conclusion = apply_rule(app, ps);
  d->app = std::move(app);
  d->premises = std::move(premises);
  return d;
}

DerivationPtr lw(const DerivationPtr& d, const FormulaPtr& a) { return node(with_formula(Rule::LW, a), {d}); }
DerivationPtr rw(const DerivationPtr& d, const FormulaPtr& a) { return node(with_formula(Rule::RW, a), {d}); }

DerivationPtr weaken_to(const DerivationPtr& d, const Sequent& target) {
  DerivationPtr cur = d;
  for (const auto& f : missing(target.ante, d->conclusion.ante)) cur = lw(cur, f);
  for (const auto& f : missing(target.succ, d->conclusion.succ)) cur = rw(cur, f);
  return cur;
}

DerivationPtr contract(const DerivationPtr& d) {
  DerivationPtr cur = d;
  for (bool changed = true; changed;) {
    changed = false;
    for (Rule r : {Rule::LC, Rule::RC}) {
      const auto& side = r == Rule::LC ? cur->conclusion.ante : cur->conclusion.succ;
      for (std::size_t i = 0; i + 1 < side.size(); ++i) {
        if (alpha_equal(*side[i], *side[i + 1])) {
          cur = node(with_formula(r, side[i]), {cur});
          changed = true;
          break;
        }
      }
      if (changed) break;
    }
  }
  return cur;
}

namespace {

/// Weakens l (Γ1⇒Δ1,x) and r (y,Γ2⇒Δ2) to the shared context and applies rule.
DerivationPtr binary(Rule rule, const DerivationPtr& l, const DerivationPtr& r, const FormulaPtr& param,
                     const FormulaPtr& l_ante_extra, const FormulaPtr& l_succ_extra, const FormulaPtr& r_ante_extra) {
  auto la = l_ante_extra ? without(l->conclusion.ante, l_ante_extra) : l->conclusion.ante;
  auto ls = l_succ_extra ? without(l->conclusion.succ, l_succ_extra) : l->conclusion.succ;
  auto ra = without(r->conclusion.ante, r_ante_extra);
  auto gamma = merge_max(la, ra);
  auto delta = merge_max(ls, r->conclusion.succ);
  Sequent lt{gamma, delta}, rt{insert(gamma, r_ante_extra), delta};
  if (l_ante_extra) lt.ante = insert(lt.ante, l_ante_extra);
  if (l_succ_extra) lt.succ = insert(lt.succ, l_succ_extra);
  return node(with_formula(rule, param), {weaken_to(l, lt), weaken_to(r, rt)});
}

}  // namespace

DerivationPtr cut(const DerivationPtr& left, const DerivationPtr& right, const FormulaPtr& a) {
  return binary(Rule::Cut, left, right, a, nullptr, a, a);
}

DerivationPtr lor(const DerivationPtr& left, const DerivationPtr& right, const FormulaPtr& d) {
  if (d->kind != Formula::Kind::Or) throw RuleError("lor needs a disjunction");
  return binary(Rule::Lor, left, right, d, d->a, nullptr, d->b);
}

DerivationPtr limp(const DerivationPtr& left, const DerivationPtr& right, const FormulaPtr& i) {
  if (i->kind != Formula::Kind::Imp) throw RuleError("limp needs a conditional");
  return binary(Rule::Limp, left, right, i, nullptr, i->a, i->b);
}

DerivationPtr ror(const DerivationPtr& d, const FormulaPtr& f) { return node(with_formula(Rule::Ror, f), {d}); }
DerivationPtr rimp(const DerivationPtr& d, const FormulaPtr& f) { return node(with_formula(Rule::Rimp, f), {d}); }

DerivationPtr lall(const DerivationPtr& d, const FormulaPtr& all, const TermPtr& t) {
  RuleApp a = with_formula(Rule::Lall, all);
  a.term = t;
  return node(std::move(a), {d});
}

DerivationPtr rall(const DerivationPtr& d, const FormulaPtr& all, unsigned y) {
  RuleApp a = with_formula(Rule::Rall, all);
  a.var = y;
  return node(std::move(a), {d});
}

DerivationPtr concp(const DerivationPtr& d) { return node(RuleApp{Rule::ConCp, {}, {}, {}, 0, 0, {}}, {d}); }
DerivationPtr clcp(const DerivationPtr& d) { return node(RuleApp{Rule::ClCp, {}, {}, {}, 0, 0, {}}, {d}); }

// ---------------------------------------------------------------- basic package

DerivationPtr top() { return concp(axiom(make_sequent({bot()}, {}), "Lbot")); }
DerivationPtr dn_intro(const FormulaPtr& a) { return concp(identity(neg(a))); }
DerivationPtr dn_elim(const FormulaPtr& a) { return clcp(identity(neg(a))); }

DerivationPtr contrapose(const DerivationPtr& d) {
  DerivationPtr cur = d;
  for (const auto& f : d->conclusion.succ) cur = cut(cur, dn_intro(f), f);
  return concp(cur);
}

namespace {

/// ¬(¬A∨¬B) ⇒ A.
DerivationPtr conj_elim(const FormulaPtr& a, const FormulaPtr& b, bool first) {
  FormulaPtr na = neg(a), nb = neg(b);
  FormulaPtr keep = first ? na : nb, other = first ? nb : na;
  return clcp(ror(rw(identity(keep), other), disj(na, nb)));
}

}  // namespace

DerivationPtr land(const DerivationPtr& d, const FormulaPtr& a, const FormulaPtr& b) {
  DerivationPtr cur = cut(conj_elim(a, b, true), d, a);
  return cut(conj_elim(a, b, false), cur, b);
}

DerivationPtr rand(const DerivationPtr& da, const DerivationPtr& db, const FormulaPtr& a, const FormulaPtr& b) {
  FormulaPtr na = neg(a), nb = neg(b), dj = disj(na, nb);
  DerivationPtr k = concp(lor(rw(identity(na), nb), rw(identity(nb), na), dj));  // A,B ⇒ A∧B
  return cut(db, cut(da, k, a), b);
}

DerivationPtr lex(const DerivationPtr& d, unsigned v, const FormulaPtr& a, unsigned y) {
  FormulaPtr ay = substitute(a, v, var(y));
  auto gamma = without(d->conclusion.ante, ay);
  auto delta = d->conclusion.succ;
  DerivationPtr cur = contrapose(d);                 // ¬Δ ⇒ ¬A(y), ¬Γ
  cur = rall(cur, forall(v, neg(a)), y);             // ¬Δ ⇒ ∀v¬A, ¬Γ
  cur = contrapose(cur);                             // ¬∀v¬A, ¬¬Γ ⇒ ¬¬Δ
  for (const auto& g : gamma) cur = cut(dn_intro(g), cur, neg(neg(g)));
  for (const auto& f : delta) cur = cut(cur, dn_elim(f), neg(neg(f)));
  return cur;
}

DerivationPtr rex(const DerivationPtr& d, unsigned v, const FormulaPtr& a, const TermPtr& t) {
  FormulaPtr at = substitute(a, v, t);
  DerivationPtr k = contrapose(lall(identity(neg(at)), forall(v, neg(a)), t));  // ¬¬A(t) ⇒ ∃vA
  k = cut(dn_intro(at), k, neg(neg(at)));
  return cut(d, k, at);
}

DerivationPtr derive_basic(Basic which, const FormulaPtr& a, const DerivationPtr& d) {
  switch (which) {
    case Basic::Top: return top();
    case Basic::DnIntro:
      if (!a) throw PreconditionError("dn-intro needs a formula");
      return dn_intro(a);
    case Basic::DnElim:
      if (!a) throw PreconditionError("dn-elim needs a formula");
      return dn_elim(a);
    case Basic::Contrapose:
      if (!d) throw PreconditionError("contrapose needs a derivation");
      return contrapose(d);
  }
  throw PreconditionError("unknown basic derivation");
}

// ---------------------------------------------------------------- recapture

DerivationPtr eq_lem(const TermPtr& s, const TermPtr& t) {
  FormulaPtr st = eq(s, t), tt = eq(t, t);
  DerivationPtr rep = axiom(make_sequent({st, neg(st)}, {neg(tt)}), "Rep");
  DerivationPtr ref = clcp(axiom(make_sequent({}, {tt}), "Ref"));  // ¬t=t ⇒
  DerivationPtr gap = concp(cut(rep, ref, neg(tt)));               // ⇒ ¬s=t, ¬¬s=t
  return cut(gap, dn_elim(st), neg(neg(st)));
}

DerivationPtr derive_lem(const FormulaPtr& a) {
  using K = Formula::Kind;
  switch (a->kind) {
    case K::Eq: return eq_lem(a->lhs, a->rhs);
    case K::Bot: return rw(top(), a);
    case K::Neg: return cut(derive_lem(a->a), dn_intro(a->a), a->a);
    case K::Or: {
      FormulaPtr b = a->a, c = a->b;
      DerivationPtr k = lor(rw(dn_intro(b), neg(neg(c))), rw(dn_intro(c), neg(neg(b))), a);
      k = concp(k);                                   // ¬B, ¬C ⇒ ¬(B∨C)
      k = cut(derive_lem(b), k, neg(b));
      k = cut(derive_lem(c), k, neg(c));
      if (alpha_equal(*b, *c) && count(k->conclusion.succ, *b) < 2) k = rw(k, b);  // merge_max kept one copy
      return ror(k, a);
    }
    case K::All: {
      unsigned x = a->index;
      DerivationPtr k = contrapose(lall(identity(a->a), a, var(x)));  // ¬B ⇒ ¬∀xB
      k = cut(derive_lem(a->a), k, neg(a->a));
      return rall(k, a, x);
    }
    case K::Imp: throw PreconditionError("conditional in " + print(a));
    case K::Tr:
    case K::F:
    case K::P:
    case K::Atom: throw PreconditionError("atom not classical-certified: " + print(a));
  }
  throw PreconditionError("unsupported formula");
}

// ---------------------------------------------------------------- transfinite induction

namespace {

FormulaPtr ltf(const TermPtr& s, const TermPtr& t) { return lt(s, t); }
TermPtr oadd(TermPtr a, TermPtr b) { return app(Fn::OAdd, {std::move(a), std::move(b)}); }
TermPtr owexp(TermPtr a) { return app(Fn::OWExp, {std::move(a)}); }
TermPtr omul(TermPtr a, TermPtr b) { return app(Fn::OMul, {std::move(a), std::move(b)}); }

/// ∀ζ≺b A(ζ), ζ ≺ b ⇒ A(ζ).
DerivationPtr use_below(const OrdinalPredicate& a, const TermPtr& b, const TermPtr& z) {
  FormulaPtr step = imp(ltf(z, b), a.at(z));
  return lall(limp(identity(ltf(z, b)), identity(a.at(z)), step), below(a, b), z);
}

/// From Γ, ζ≺b ⇒ A(ζ) (ζ eigen) to Γ ⇒ ∀ζ≺b A(ζ).
DerivationPtr intro_below(const DerivationPtr& d, const OrdinalPredicate& a, const TermPtr& b, unsigned z) {
  return rall(rimp(d, imp(ltf(var(z), b), a.at(var(z)))), below(a, b), z);
}

/// ⇒ ∀ζ≺0 A(ζ).
DerivationPtr below_zero(const OrdinalPredicate& a, unsigned z) {
  DerivationPtr e = axiom(make_sequent({ltf(var(z), num(0))}, {}), "ord-lemma:lt-zero");
  return intro_below(rw(e, a.at(var(z))), a, num(0), z);
}

unsigned max_var_of(std::initializer_list<FormulaPtr> fs) {
  int m = -1;
  for (const auto& f : fs) m = std::max(m, f->max_var);
  return static_cast<unsigned>(m + 1);
}

}  // namespace

DerivationPtr derive_prog_jump(const OrdinalPredicate& a) {
  OrdinalPredicate ap = gentzen_jump(a);
  FormulaPtr pa = prog(a), pap = prog(ap);
  unsigned base = std::max(max_var_of({pa, pap}), static_cast<unsigned>(a.slot) + 1);
  unsigned th = base, xi = base + 1, eta = base + 2, n = base + 3, th0 = base + 4, x = base + 5, z = base + 6;
  TermPtr vth = var(th), vxi = var(xi), veta = var(eta), vn = var(n), vth0 = var(th0), vx = var(x);

  FormulaPtr hxi = below(a, vxi);
  FormulaPtr g = bounded_all(z, vth, ap.at(var(z)));      // ∀ζ≺θ A⁺(ζ)
  TermPtr bound = oadd(vxi, owexp(vth));                   // ξ+ω^θ
  FormulaPtr eta_lt = ltf(veta, bound);
  FormulaPtr th_zero = eq(vth, num(0)), th_pos = ltf(num(0), vth);

  // Case θ = 0.
  DerivationPtr d2 = use_below(a, vxi, veta);              // H(ξ), η≺ξ ⇒ A(η)
  DerivationPtr rep = axiom(make_sequent({eq(vxi, veta), a.at(vxi)}, {a.at(veta)}), "Rep");
  DerivationPtr d3 = lall(limp(identity(hxi), rep, imp(hxi, a.at(vxi))), pa, vxi);  // Prog(A), H(ξ), ξ=η ⇒ A(η)
  DerivationPtr cz = axiom(make_sequent({th_zero, eta_lt}, {ltf(veta, vxi), eq(vxi, veta)}), "ord-lemma:case-zero");
  DerivationPtr case0 = cut(cut(cz, d2, ltf(veta, vxi)), d3, eq(vxi, veta));

  // Case θ ≻ 0: ω-induction on B(x) := ∀ζ≺ξ+ω^θ0·x A(ζ).
  auto btm = [&](const TermPtr& k) { return oadd(vxi, omul(owexp(vth0), k)); };
  auto bf = [&](const TermPtr& k) { return below(a, btm(k)); };
  TermPtr vz = var(z);
  DerivationPtr mz = axiom(make_sequent({ltf(vz, btm(num(0)))}, {ltf(vz, vxi)}), "ord-lemma:mul-zero");
  DerivationPtr ind_base = intro_below(cut(mz, use_below(a, vxi, vz), ltf(vz, vxi)), a, btm(num(0)), z);

  TermPtr stepped = oadd(btm(vx), owexp(vth0));
  DerivationPtr ms = axiom(make_sequent({ltf(vz, btm(succ(vx)))}, {ltf(vz, stepped)}), "ord-lemma:mul-succ");
  DerivationPtr to_next = intro_below(cut(ms, use_below(a, stepped, vz), ltf(vz, stepped)), a, btm(succ(vx)), z);
  FormulaPtr jump_inst = imp(bf(vx), below(a, stepped));
  DerivationPtr ind_step = lall(limp(identity(bf(vx)), to_next, jump_inst), ap.at(vth0), btm(vx));

  RuleApp ind;
  ind.rule = Rule::Ind;
  ind.formula = bf(vx);
  ind.var = x;
  ind.term = vn;
  DerivationPtr all_n = cut(ind_base, node(ind, {ind_step}), bf(num(0)));   // H(ξ), A⁺(θ0) ⇒ B(n)
  DerivationPtr at_eta = cut(all_n, use_below(a, btm(vn), veta), bf(vn));  // ..., η≺ξ+ω^θ0·n ⇒ A(η)
  FormulaPtr th0_lt = ltf(vth0, vth);
  DerivationPtr from_g = lall(limp(identity(th0_lt), identity(ap.at(vth0)), imp(th0_lt, ap.at(vth0))), g, vth0);
  DerivationPtr body = cut(from_g, at_eta, ap.at(vth0));                    // G, θ0≺θ, H(ξ), η≺.. ⇒ A(η)
  FormulaPtr eta_lt_n = ltf(veta, btm(vn));
  body = land(body, th0_lt, eta_lt_n);
  FormulaPtr inner = conj(th0_lt, eta_lt_n);
  body = lex(body, th0, inner, th0);
  FormulaPtr outer = exists(th0, inner);
  body = lex(body, n, outer, n);
  DerivationPtr cnf = axiom(make_sequent({th_pos, eta_lt}, {exists(n, outer)}), "ord-lemma:cnf");
  DerivationPtr case_pos = cut(cnf, body, exists(n, outer));

  // Combine the cases and close off.
  DerivationPtr zp = axiom(make_sequent({}, {th_zero, th_pos}), "ord-lemma:zero-or-pos");
  DerivationPtr both = cut(cut(zp, case0, th_zero), case_pos, th_pos);     // Prog(A), G, H(ξ), η≺ξ+ω^θ ⇒ A(η)
  DerivationPtr d = intro_below(both, a, bound, eta);                        // ... ⇒ H(ξ+ω^θ)
  d = rimp(d, imp(hxi, below(a, bound)));
  d = rall(d, ap.at(vth), xi);                                               // Prog(A), G ⇒ A⁺(θ)
  d = rimp(d, imp(g, ap.at(vth)));
  return rall(d, pap, th);
}

DerivationPtr derive_ti(const OrdinalPredicate& a, unsigned n) {
  if (n > kMaxTower) throw PreconditionError("tower height above " + std::to_string(kMaxTower));
  FormulaPtr pa = prog(a);
  unsigned z = std::max(max_var_of({pa}), static_cast<unsigned>(a.slot) + 1);
  if (n == 0) {
    TermPtr vz = var(z);
    DerivationPtr one = axiom(make_sequent({ltf(vz, num(1))}, {eq(num(0), vz)}), "ord-lemma:lt-one");
    FormulaPtr h0 = below(a, num(0));
    DerivationPtr p0 = lall(limp(below_zero(a, z + 1), identity(a.at(num(0))), imp(h0, a.at(num(0)))), pa, num(0));
    DerivationPtr rep = axiom(make_sequent({eq(num(0), vz), a.at(num(0))}, {a.at(vz)}), "Rep");
    DerivationPtr d = cut(one, cut(p0, rep, a.at(num(0))), eq(num(0), vz));
    return intro_below(d, a, ord_numeral(ord::Ordinal::one()), z);
  }
  ord::Ordinal alpha = ord::omega_tower(n - 1);
  TermPtr na = ord_numeral(alpha);
  OrdinalPredicate ap = gentzen_jump(a);
  FormulaPtr pap = prog(ap);
  DerivationPtr d1 = derive_ti(ap, n - 1);                                   // Prog(A⁺) ⇒ ∀ξ≺α A⁺(ξ)
  FormulaPtr ba = below(ap, na);
  DerivationPtr inst = lall(limp(identity(ba), identity(ap.at(na)), imp(ba, ap.at(na))), pap, na);
  DerivationPtr b = cut(d1, inst, ba);                                       // Prog(A⁺) ⇒ A⁺(α)
  DerivationPtr c = cut(derive_prog_jump(a), b, pap);                        // Prog(A) ⇒ A⁺(α)
  TermPtr t0 = oadd(num(0), owexp(na));
  FormulaPtr h0 = below(a, num(0)), ht0 = below(a, t0);
  unsigned zz = std::max(z, static_cast<unsigned>(ap.at(na)->max_var + 1));
  DerivationPtr at0 = lall(limp(below_zero(a, zz), identity(ht0), imp(h0, ht0)), ap.at(na), num(0));
  DerivationPtr e = cut(c, at0, ap.at(na));                                  // Prog(A) ⇒ ∀η≺0+ω^α A(η)
  TermPtr target = ord_numeral(ord::omega_tower(n));
  FormulaPtr ht = below(a, target);
  DerivationPtr ev = axiom(make_sequent({}, {eq(t0, target)}), "eval");
  DerivationPtr rp = axiom(make_sequent({eq(t0, target), ht0}, {ht}), "Rep");
  return cut(e, cut(ev, rp, eq(t0, target)), ht0);
}

}  // namespace hype::derive
