#include "hype/kernel.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <sstream>
#include <unordered_map>

#include "hype/code.hpp"
#include "hype/jump.hpp"
#include "hype/parse.hpp"

namespace hype {

// ---------------------------------------------------------------- sequents

namespace {

bool formula_less(const FormulaPtr& a, const FormulaPtr& b) { return alpha_compare(*a, *b) < 0; }

bool list_equal(const std::vector<FormulaPtr>& a, const std::vector<FormulaPtr>& b) {
  if (a.size() != b.size()) return false;
  for (std::size_t i = 0; i < a.size(); ++i)
    if (!alpha_equal(*a[i], *b[i])) return false;
  return true;
}

std::string print_list(const std::vector<FormulaPtr>& fs) {
  std::string out;
  for (std::size_t i = 0; i < fs.size(); ++i) {
    if (i) out += ", ";
    out += print(fs[i]);
  }
  return out;
}

}  // namespace

Sequent make_sequent(std::vector<FormulaPtr> ante, std::vector<FormulaPtr> succ) {
  std::stable_sort(ante.begin(), ante.end(), formula_less);
  std::stable_sort(succ.begin(), succ.end(), formula_less);
  return {std::move(ante), std::move(succ)};
}

bool sequent_equal(const Sequent& a, const Sequent& b) {
  return list_equal(a.ante, b.ante) && list_equal(a.succ, b.succ);
}

std::string print(const Sequent& s) {
  std::string l = print_list(s.ante), r = print_list(s.succ);
  return (l.empty() ? "" : l + " ") + "=>" + (r.empty() ? "" : " " + r);
}

Sequent parse_sequent(std::string_view text) {
  auto [l, r] = parse_sequent_text(text);
  return make_sequent(std::move(l), std::move(r));
}

VarSet free_vars(const std::vector<FormulaPtr>& fs) {
  VarSet out;
  for (const auto& f : fs) out.insert(out.end(), f->fv.begin(), f->fv.end());
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

std::size_t count(const std::vector<FormulaPtr>& fs, const Formula& f) {
  return static_cast<std::size_t>(
      std::count_if(fs.begin(), fs.end(), [&](const FormulaPtr& g) { return alpha_equal(*g, f); }));
}

std::optional<std::vector<FormulaPtr>> remove_one(const std::vector<FormulaPtr>& fs, const Formula& f) {
  for (std::size_t i = 0; i < fs.size(); ++i) {
    if (alpha_equal(*fs[i], f)) {
      std::vector<FormulaPtr> out = fs;
      out.erase(out.begin() + static_cast<std::ptrdiff_t>(i));
      return out;
    }
  }
  return std::nullopt;
}

std::vector<FormulaPtr> insert(std::vector<FormulaPtr> fs, FormulaPtr f) {
  auto it = std::upper_bound(fs.begin(), fs.end(), f, formula_less);
  fs.insert(it, std::move(f));
  return fs;
}

std::vector<FormulaPtr> merge_max(const std::vector<FormulaPtr>& a, const std::vector<FormulaPtr>& b) {
  std::vector<FormulaPtr> out = a;
  std::vector<FormulaPtr> rest = a;
  for (const auto& f : b) {
    if (auto r = remove_one(rest, *f)) {
      rest = std::move(*r);
    } else {
      out = insert(std::move(out), f);
    }
  }
  return out;
}

// ---------------------------------------------------------------- names

namespace {

const std::vector<std::pair<Rule, const char*>>& rule_names() {
  static const std::vector<std::pair<Rule, const char*>> names = {
      {Rule::Axiom, "axiom"}, {Rule::Hyp, "hyp"},   {Rule::Cut, "Cut"},     {Rule::LW, "LW"},
      {Rule::RW, "RW"},       {Rule::LC, "LC"},     {Rule::RC, "RC"},       {Rule::Lor, "Lor"},
      {Rule::Ror, "Ror"},     {Rule::Limp, "Limp"}, {Rule::Rimp, "Rimp"},   {Rule::ConCp, "ConCp"},
      {Rule::ClCp, "ClCp"},   {Rule::Lall, "Lall"}, {Rule::Rall, "Rall"},   {Rule::Ind, "IND"},
      {Rule::TI, "TI"},       {Rule::Subst, "Subst"},
  };
  return names;
}

}  // namespace

std::string rule_name(Rule r) {
  for (const auto& [k, n] : rule_names())
    if (k == r) return n;
  return "?";
}

std::optional<Rule> rule_by_name(std::string_view name) {
  for (const auto& [k, n] : rule_names())
    if (name == n) return k;
  return std::nullopt;
}

std::string theory_name(Theory t) {
  switch (t) {
    case Theory::G1h: return "G1h";
    case Theory::G1hEq: return "G1h=";
    case Theory::HYA: return "HYA";
    case Theory::KFL: return "KFL";
    case Theory::KFLStar: return "KFL*";
  }
  return "?";
}

std::optional<Theory> theory_by_name(std::string_view name) {
  for (Theory t : {Theory::G1h, Theory::G1hEq, Theory::HYA, Theory::KFL, Theory::KFLStar})
    if (theory_name(t) == name) return t;
  if (name == "G1hEq") return Theory::G1hEq;
  if (name == "KFLstar" || name == "KFLStar") return Theory::KFLStar;
  return std::nullopt;
}

// ---------------------------------------------------------------- schema helpers

FormulaPtr ind_axiom_formula(const FormulaPtr& a, unsigned x) {
  FormulaPtr step = forall(x, imp(a, substitute(a, x, succ(var(x)))));
  return imp(conj(substitute(a, x, num(0)), step), forall(x, a));
}

Sequent ti_sequent(const FormulaPtr& a, unsigned slot, const ord::Ordinal& alpha) {
  OrdinalPredicate p{a, slot};
  return make_sequent({prog(p)}, {below(p, ord_numeral(alpha))});
}

FormulaPtr subst_pred(const FormulaPtr& f, const FormulaPtr& b, unsigned x) {
  using K = Formula::Kind;
  switch (f->kind) {
    case K::P: return substitute(b, x, f->lhs);
    case K::Bot:
    case K::Eq:
    case K::Tr:
    case K::F:
    case K::Atom: return f;
    case K::Neg: return neg(subst_pred(f->a, b, x));
    case K::Or: return disj(subst_pred(f->a, b, x), subst_pred(f->b, b, x));
    case K::Imp: return imp(subst_pred(f->a, b, x), subst_pred(f->b, b, x));
    case K::All: {
      unsigned v = f->index;
      bool clash = v != x && std::binary_search(b->fv.begin(), b->fv.end(), v);
      if (clash) {
        unsigned w = fresh_var({f->max_var, b->max_var, static_cast<int>(x)});
        return forall(w, subst_pred(substitute(f->a, v, var(w)), b, x));
      }
      return forall(v, subst_pred(f->a, b, x));
    }
  }
  return f;
}

// ---------------------------------------------------------------- apply_rule

namespace {

std::vector<FormulaPtr> take(const std::vector<FormulaPtr>& side, const FormulaPtr& f, const char* where) {
  auto r = remove_one(side, *f);
  if (!r) throw RuleError(std::string("premise ") + where + " lacks " + print(f));
  return *r;
}

void expect_kind(const FormulaPtr& f, Formula::Kind k, const char* what) {
  if (!f || f->kind != k) throw RuleError(std::string("parameter must be ") + what);
}

void expect_same(const std::vector<FormulaPtr>& a, const std::vector<FormulaPtr>& b, const char* what) {
  if (!list_equal(a, b))
    throw RuleError(std::string(what) + " differ: [" + print_list(a) + "] vs [" + print_list(b) + "]");
}

bool mentions(const VarSet& fv, unsigned v) { return std::binary_search(fv.begin(), fv.end(), v); }

}  // namespace

Sequent apply_rule(const RuleApp& r, const std::vector<Sequent>& ps) {
  auto arity = [&](std::size_t n) {
    if (ps.size() != n)
      throw RuleError(rule_name(r.rule) + " takes " + std::to_string(n) + " premise(s), got " +
                      std::to_string(ps.size()));
  };
  auto need_formula = [&] {
    if (!r.formula) throw RuleError(rule_name(r.rule) + " needs a formula parameter");
  };
  switch (r.rule) {
    case Rule::Axiom:
    case Rule::Hyp: throw RuleError("leaves have no premises to apply to");
    case Rule::Cut: {
      arity(2);
      need_formula();
      auto delta = take(ps[0].succ, r.formula, "1 succedent");
      auto gamma = take(ps[1].ante, r.formula, "2 antecedent");
      expect_same(ps[0].ante, gamma, "antecedent contexts");
      expect_same(delta, ps[1].succ, "succedent contexts");
      return {gamma, delta};
    }
    case Rule::LW:
      arity(1);
      need_formula();
      return {insert(ps[0].ante, r.formula), ps[0].succ};
    case Rule::RW:
      arity(1);
      need_formula();
      return {ps[0].ante, insert(ps[0].succ, r.formula)};
    case Rule::LC: {
      arity(1);
      need_formula();
      if (count(ps[0].ante, *r.formula) < 2) throw RuleError("premise antecedent lacks two copies");
      return {take(ps[0].ante, r.formula, "antecedent"), ps[0].succ};
    }
    case Rule::RC: {
      arity(1);
      need_formula();
      if (count(ps[0].succ, *r.formula) < 2) throw RuleError("premise succedent lacks two copies");
      return {ps[0].ante, take(ps[0].succ, r.formula, "succedent")};
    }
    case Rule::Lor: {
      arity(2);
      expect_kind(r.formula, Formula::Kind::Or, "a disjunction");
      auto g0 = take(ps[0].ante, r.formula->a, "1 antecedent");
      auto g1 = take(ps[1].ante, r.formula->b, "2 antecedent");
      expect_same(g0, g1, "antecedent contexts");
      expect_same(ps[0].succ, ps[1].succ, "succedent contexts");
      return {insert(g0, r.formula), ps[0].succ};
    }
    case Rule::Ror: {
      arity(1);
      expect_kind(r.formula, Formula::Kind::Or, "a disjunction");
      auto d = take(take(ps[0].succ, r.formula->a, "succedent"), r.formula->b, "succedent");
      return {ps[0].ante, insert(d, r.formula)};
    }
    case Rule::Limp: {
      arity(2);
      expect_kind(r.formula, Formula::Kind::Imp, "a conditional");
      auto delta = take(ps[0].succ, r.formula->a, "1 succedent");
      auto gamma = take(ps[1].ante, r.formula->b, "2 antecedent");
      expect_same(ps[0].ante, gamma, "antecedent contexts");
      expect_same(delta, ps[1].succ, "succedent contexts");
      return {insert(gamma, r.formula), delta};
    }
    case Rule::Rimp: {
      arity(1);
      expect_kind(r.formula, Formula::Kind::Imp, "a conditional");
      if (ps[0].succ.size() != 1 || !alpha_equal(*ps[0].succ[0], *r.formula->b))
        throw RuleError("premise succedent must be exactly " + print(r.formula->b));
      return {take(ps[0].ante, r.formula->a, "antecedent"), {r.formula}};
    }
    case Rule::ConCp: {
      arity(1);
      std::vector<FormulaPtr> delta, neg_gamma;
      for (const auto& f : ps[0].succ) {
        if (f->kind != Formula::Kind::Neg) throw RuleError("premise succedent has unnegated " + print(f));
        delta.push_back(f->a);
      }
      for (const auto& f : ps[0].ante) neg_gamma.push_back(neg(f));
      return make_sequent(std::move(delta), std::move(neg_gamma));
    }
    case Rule::ClCp: {
      arity(1);
      std::vector<FormulaPtr> gamma, neg_delta;
      for (const auto& f : ps[0].ante) {
        if (f->kind != Formula::Kind::Neg) throw RuleError("premise antecedent has unnegated " + print(f));
        gamma.push_back(f->a);
      }
      for (const auto& f : ps[0].succ) neg_delta.push_back(neg(f));
      return make_sequent(std::move(neg_delta), std::move(gamma));
    }
    case Rule::Lall: {
      arity(1);
      expect_kind(r.formula, Formula::Kind::All, "a universal");
      if (!r.term) throw RuleError("Lall needs a witness term");
      auto inst = substitute(r.formula->a, r.formula->index, r.term);
      return {insert(take(ps[0].ante, inst, "antecedent"), r.formula), ps[0].succ};
    }
    case Rule::Rall: {
      arity(1);
      expect_kind(r.formula, Formula::Kind::All, "a universal");
      auto inst = substitute(r.formula->a, r.formula->index, var(r.var));
      auto delta = take(ps[0].succ, inst, "succedent");
      if (mentions(free_vars(ps[0].ante), r.var) || mentions(free_vars(delta), r.var) ||
          mentions(r.formula->fv, r.var))
        throw RuleError("eigenvariable " + var_name(r.var) + " occurs free in the context");
      return {ps[0].ante, insert(delta, r.formula)};
    }
    case Rule::Ind: {
      arity(1);
      need_formula();
      if (!r.term) throw RuleError("IND needs a term");
      unsigned x = r.var;
      auto gamma = take(ps[0].ante, r.formula, "antecedent");
      auto delta = take(ps[0].succ, substitute(r.formula, x, succ(var(x))), "succedent");
      if (mentions(free_vars(gamma), x) || mentions(free_vars(delta), x))
        throw RuleError("induction variable " + var_name(x) + " occurs free in the context");
      return {insert(gamma, substitute(r.formula, x, num(0))), insert(delta, substitute(r.formula, x, r.term))};
    }
    case Rule::TI: {
      arity(1);
      need_formula();
      OrdinalPredicate a{r.formula, r.var};
      unsigned eta = r.var2;
      if (mentions(forall(r.var, r.formula)->fv, eta))
        throw RuleError("eigenvariable " + var_name(eta) + " occurs free in the induction formula");
      if (ps[0].succ.size() != 1 || !alpha_equal(*ps[0].succ[0], *a.at(var(eta))))
        throw RuleError("premise succedent must be exactly " + print(a.at(var(eta))));
      auto gamma = take(ps[0].ante, below(a, var(eta)), "antecedent");
      if (mentions(free_vars(gamma), eta))
        throw RuleError("eigenvariable " + var_name(eta) + " occurs free in the context");
      if (!ord::less(r.ordinal, ord::veblen(ord::Ordinal::one(), ord::Ordinal::zero())))
        throw RuleError("TI ordinal must lie below epsilon_0");
      return {gamma, {below(a, ord_numeral(r.ordinal))}};
    }
    case Rule::Subst: {
      arity(2);
      need_formula();
      FormulaPtr lem = forall(r.var, disj(r.formula, neg(r.formula)));
      if (!ps[0].ante.empty() || ps[0].succ.size() != 1 || !alpha_equal(*ps[0].succ[0], *lem))
        throw RuleError("first premise must be => " + print(lem));
      if (!in_language(*r.formula, Lang::LTimpP)) throw RuleError("substituted formula outside L_T->(P)");
      std::vector<FormulaPtr> ante, succ;
      for (const auto& f : ps[1].ante) {
        if (!in_language(*f, Lang::LNimpP)) throw RuleError("side formula outside L_N->(P): " + print(f));
        ante.push_back(subst_pred(f, r.formula, r.var));
      }
      for (const auto& f : ps[1].succ) {
        if (!in_language(*f, Lang::LNimpP)) throw RuleError("side formula outside L_N->(P): " + print(f));
        succ.push_back(subst_pred(f, r.formula, r.var));
      }
      return make_sequent(std::move(ante), std::move(succ));
    }
  }
  throw RuleError("unknown rule");
}

// ---------------------------------------------------------------- axioms

namespace {

/// Matches a pattern against a target; free pattern variables are term
/// metavariables, bound ones must correspond to bound target variables.
struct Matcher {
  std::map<unsigned, TermPtr> bind;
  std::vector<std::pair<unsigned, unsigned>> env;

  int lookup_p(unsigned v) const {
    for (int i = static_cast<int>(env.size()) - 1; i >= 0; --i)
      if (env[static_cast<std::size_t>(i)].first == v) return i;
    return -1;
  }
  int lookup_t(unsigned v) const {
    for (int i = static_cast<int>(env.size()) - 1; i >= 0; --i)
      if (env[static_cast<std::size_t>(i)].second == v) return i;
    return -1;
  }

  bool term(const Term& p, const TermPtr& t) {
    if (p.kind == Term::Kind::Var) {
      int i = lookup_p(p.var);
      if (i >= 0) return t->kind == Term::Kind::Var && lookup_t(t->var) == i;
      for (unsigned v : t->fv)
        if (lookup_t(v) >= 0) return false;
      auto it = bind.find(p.var);
      if (it != bind.end()) return term_equal(*it->second, *t);
      bind.emplace(p.var, t);
      return true;
    }
    if (p.kind != t->kind) return false;
    if (p.kind == Term::Kind::Num) return p.num == t->num;
    if (p.kind == Term::Kind::App && p.fn != t->fn) return false;
    for (std::size_t i = 0; i < p.args.size(); ++i)
      if (!term(*p.args[i], t->args[i])) return false;
    return true;
  }

  bool formula(const Formula& p, const Formula& t) {
    using K = Formula::Kind;
    if (p.kind != t.kind) return false;
    switch (p.kind) {
      case K::Bot: return true;
      case K::Atom: return p.index == t.index;
      case K::Eq: return term(*p.lhs, t.lhs) && term(*p.rhs, t.rhs);
      case K::Tr:
      case K::F:
      case K::P: return term(*p.lhs, t.lhs);
      case K::Neg: return formula(*p.a, *t.a);
      case K::Or:
      case K::Imp: return formula(*p.a, *t.a) && formula(*p.b, *t.b);
      case K::All: {
        env.emplace_back(p.index, t.index);
        bool ok = formula(*p.a, *t.a);
        env.pop_back();
        return ok;
      }
    }
    return false;
  }
};

bool match_side(const std::vector<FormulaPtr>& pat, const std::vector<FormulaPtr>& tgt, std::vector<bool>& used,
                std::size_t i, Matcher& m, const std::function<bool(Matcher&)>& rest) {
  if (i == pat.size()) return rest(m);
  for (std::size_t j = 0; j < tgt.size(); ++j) {
    if (used[j]) continue;
    Matcher trial = m;
    if (!trial.formula(*pat[i], *tgt[j])) continue;
    used[j] = true;
    if (match_side(pat, tgt, used, i + 1, trial, rest)) return true;
    used[j] = false;
  }
  return false;
}

bool match_sequent(const Sequent& pat, const Sequent& s) {
  if (pat.ante.size() != s.ante.size() || pat.succ.size() != s.succ.size()) return false;
  Matcher m;
  std::vector<bool> ua(s.ante.size()), us(s.succ.size());
  return match_side(pat.ante, s.ante, ua, 0, m, [&](Matcher& m1) {
    return match_side(pat.succ, s.succ, us, 0, m1, [](Matcher&) { return true; });
  });
}

struct PatternEntry {
  const char* id;
  Theory theory;
  const char* text;  // empty for coded recognizers
};

// Variables x, y, z, u, v4 are schematic; the bound ones inside quantifiers
// are matched up to renaming.
const std::vector<PatternEntry>& entries() {
  static const std::vector<PatternEntry> e = {
      {"ID", Theory::G1h, ""},
      {"Lbot", Theory::G1h, "bot =>"},
      {"Ref", Theory::G1hEq, "=> x = x"},
      {"Rep", Theory::G1hEq, ""},
      {"Q1", Theory::HYA, "S(x) = S(y) => x = y"},
      {"Q2", Theory::HYA, "S(x) = 0 =>"},
      {"Q4", Theory::HYA, "=> x + 0 = x"},
      {"Q5", Theory::HYA, "=> x + S(y) = S(x + y)"},
      {"Q6", Theory::HYA, "=> x * 0 = 0"},
      {"Q7", Theory::HYA, "=> x * S(y) = x * y + x"},
      {"eval", Theory::HYA, ""},
      {"evalneg", Theory::HYA, ""},
      {"IND", Theory::HYA, ""},
      {"TI", Theory::HYA, ""},
      {"ord-lemma:zero-or-pos", Theory::HYA, "=> x = 0, 0 < x"},
      {"ord-lemma:case-zero", Theory::HYA, "x = 0, y < oadd(z, owexp(x)) => y < z, z = y"},
      {"ord-lemma:cnf", Theory::HYA,
       "0 < x, y < oadd(z, owexp(x)) => ex u. ex v4. (v4 < x & y < oadd(z, omul(owexp(v4), u)))"},
      {"ord-lemma:mul-zero", Theory::HYA, "y < oadd(z, omul(owexp(x), 0)) => y < z"},
      {"ord-lemma:mul-succ", Theory::HYA,
       "y < oadd(z, omul(owexp(x), S(u))) => y < oadd(oadd(z, omul(owexp(x), u)), owexp(x))"},
      {"ord-lemma:lt-zero", Theory::HYA, "y < 0 =>"},
      {"ord-lemma:lt-one", Theory::HYA, "y < 1 => 0 = y"},
      {"KFL1", Theory::KFL, "cterm(x) = 1 & cterm(y) = 1 => (Tr(eqdot(x, y)) <-> val(x) = val(y))"},
      {"KFL2", Theory::KFL, "=> (Tr(trdot(num(x))) <-> Tr(x))"},
      {"KFL3", Theory::KFL, "sent(x) = 1 => (Tr(negdot(x)) <-> !Tr(x))"},
      {"KFL4", Theory::KFL, "sent(x) = 1 & sent(y) = 1 => (Tr(vordot(x, y)) <-> Tr(x) | Tr(y))"},
      {"KFL5", Theory::KFL,
       "sent(alldot(z, x)) = 1 & isvar(z) = 1 => (Tr(alldot(z, x)) <-> all y. (cterm(y) = 1 -> Tr(sub(x, z, y))))"},
      {"KFL6", Theory::KFL, "Tr(x) => sent(x) = 1"},
      {"KFLP", Theory::KFLStar, "=> (Tr(sub(q(P(v0)), q(v0), num(x))) <-> P(x))"},
      {"PLEM", Theory::KFLStar, "=> all x. (P(x) | !P(x))"},
  };
  return e;
}

const std::map<std::string, Sequent>& patterns() {
  static const std::map<std::string, Sequent> p = [] {
    std::map<std::string, Sequent> out;
    for (const auto& e : entries())
      if (*e.text) out.emplace(e.id, parse_sequent(e.text));
    return out;
  }();
  return p;
}

/// Walks c and d in parallel; they may differ only where c has s and d has t.
struct RepWalk {
  const Term& s;
  const Term& t;
  std::vector<std::pair<unsigned, unsigned>> env;

  int depth_l(unsigned v) const {
    for (int i = static_cast<int>(env.size()) - 1; i >= 0; --i)
      if (env[static_cast<std::size_t>(i)].first == v) return i;
    return -1;
  }
  int depth_r(unsigned v) const {
    for (int i = static_cast<int>(env.size()) - 1; i >= 0; --i)
      if (env[static_cast<std::size_t>(i)].second == v) return i;
    return -1;
  }
  bool captured_l(const Term& x) const {
    return std::any_of(x.fv.begin(), x.fv.end(), [&](unsigned v) { return depth_l(v) >= 0; });
  }
  bool captured_r(const Term& x) const {
    return std::any_of(x.fv.begin(), x.fv.end(), [&](unsigned v) { return depth_r(v) >= 0; });
  }

  bool same(const Term& a, const Term& b) const {
    if (a.kind != b.kind) return false;
    switch (a.kind) {
      case Term::Kind::Var: {
        int i = depth_l(a.var), j = depth_r(b.var);
        return i == j && (i >= 0 || a.var == b.var);
      }
      case Term::Kind::Num: return a.num == b.num;
      default:
        if (a.kind == Term::Kind::App && a.fn != b.fn) return false;
        for (std::size_t k = 0; k < a.args.size(); ++k)
          if (!same(*a.args[k], *b.args[k])) return false;
        return true;
    }
  }

  bool term(const Term& a, const Term& b) const {
    if (same(a, b)) return true;
    if (term_equal(a, s) && term_equal(b, t) && !captured_l(a) && !captured_r(b)) return true;
    if (a.kind != b.kind || a.kind == Term::Kind::Var || a.kind == Term::Kind::Num) return false;
    if (a.kind == Term::Kind::App && a.fn != b.fn) return false;
    for (std::size_t k = 0; k < a.args.size(); ++k)
      if (!term(*a.args[k], *b.args[k])) return false;
    return true;
  }

  bool formula(const Formula& a, const Formula& b) {
    using K = Formula::Kind;
    if (a.kind != b.kind) return false;
    switch (a.kind) {
      case K::Bot: return true;
      case K::Atom: return a.index == b.index;
      case K::Eq: return term(*a.lhs, *b.lhs) && term(*a.rhs, *b.rhs);
      case K::Tr:
      case K::F:
      case K::P: return term(*a.lhs, *b.lhs);
      case K::Neg: return formula(*a.a, *b.a);
      case K::Or:
      case K::Imp: return formula(*a.a, *b.a) && formula(*a.b, *b.b);
      case K::All: {
        env.emplace_back(a.index, b.index);
        bool ok = formula(*a.a, *b.a);
        env.pop_back();
        return ok;
      }
    }
    return false;
  }
};

bool is_rep(const Sequent& s) {
  if (s.ante.size() != 2 || s.succ.size() != 1) return false;
  for (int i = 0; i < 2; ++i) {
    const auto& e = s.ante[static_cast<std::size_t>(i)];
    const auto& c = s.ante[static_cast<std::size_t>(1 - i)];
    if (e->kind != Formula::Kind::Eq) continue;
    RepWalk w{*e->lhs, *e->rhs, {}};
    if (w.formula(*c, *s.succ[0])) return true;
  }
  return false;
}

std::optional<std::pair<Nat, Nat>> closed_values(const Formula& e) {
  if (e.kind != Formula::Kind::Eq || !e.fv.empty()) return std::nullopt;
  return std::make_pair(eval_term(*e.lhs), eval_term(*e.rhs));
}

bool is_ind(const Sequent& s) {
  if (!s.ante.empty() || s.succ.size() != 1) return false;
  const auto& f = s.succ[0];
  if (f->kind != Formula::Kind::Imp || f->b->kind != Formula::Kind::All) return false;
  return alpha_equal(*f, *ind_axiom_formula(f->b->a, f->b->index));
}

bool is_ti(const Sequent& s) {
  if (s.ante.size() != 1 || s.succ.size() != 1) return false;
  const auto& f = s.succ[0];
  if (f->kind != Formula::Kind::All || f->a->kind != Formula::Kind::Imp) return false;
  TermPtr lhs, bound;
  if (!as_lt(f->a->a, lhs, bound)) return false;
  if (lhs->kind != Term::Kind::Var || lhs->var != f->index || bound->kind != Term::Kind::Num) return false;
  auto alpha = ord::decode(bound->num);
  if (!alpha || !ord::less(*alpha, ord::veblen(ord::Ordinal::one(), ord::Ordinal::zero()))) return false;
  return sequent_equal(s, ti_sequent(f->a->b, f->index, *alpha));
}

}  // namespace

bool is_axiom(const Sequent& s, std::string_view id) {
  try {
    if (id == "ID") return s.ante.size() == 1 && s.succ.size() == 1 && alpha_equal(*s.ante[0], *s.succ[0]);
    if (id == "Rep") return is_rep(s);
    if (id == "eval") {
      if (!s.ante.empty() || s.succ.size() != 1) return false;
      auto v = closed_values(*s.succ[0]);
      return v && v->first == v->second;
    }
    if (id == "evalneg") {
      if (s.ante.size() != 1 || !s.succ.empty()) return false;
      auto v = closed_values(*s.ante[0]);
      return v && v->first != v->second;
    }
    if (id == "IND") return is_ind(s);
    if (id == "TI") return is_ti(s);
    auto it = patterns().find(std::string(id));
    if (it == patterns().end()) return false;
    return match_sequent(it->second, s);
  } catch (const std::exception&) {
    return false;
  }
}

const std::vector<AxiomInfo>& axiom_catalogue() {
  static const std::vector<AxiomInfo> c = [] {
    std::vector<AxiomInfo> out;
    for (const auto& e : entries()) out.push_back({e.id, e.theory});
    return out;
  }();
  return c;
}

std::optional<Theory> axiom_theory(std::string_view id) {
  for (const auto& e : entries())
    if (id == e.id) return e.theory;
  return std::nullopt;
}

std::string axiom_pattern(std::string_view id) {
  for (const auto& e : entries())
    if (id == e.id) return e.text;
  return "";
}

// ---------------------------------------------------------------- check

namespace {

Theory rule_theory(Rule r) {
  switch (r) {
    case Rule::Ind:
    case Rule::TI: return Theory::HYA;
    case Rule::Subst: return Theory::KFLStar;
    default: return Theory::G1h;
  }
}

struct Checker {
  const CheckOptions& opts;
  std::unordered_map<const Derivation*, unsigned> done;  // node -> height
  CheckReport report;

  void fail(const Derivation& d, const std::string& msg, const std::string& expected = "",
            const std::string& found = "") {
    CheckError e;
    e.line = d.line;
    e.rule = d.app.rule == Rule::Axiom ? "axiom:" + d.app.axiom : rule_name(d.app.rule);
    e.message = msg;
    e.expected = expected;
    e.found = found;
    report.error = e;
  }

  bool local(const Derivation& d) {
    for (const auto* side : {&d.conclusion.ante, &d.conclusion.succ})
      for (const auto& f : *side)
        if (!in_language(*f, opts.lang)) {
          fail(d, "formula outside " + lang_name(opts.lang) + ": " + print(f));
          return false;
        }
    const RuleApp& r = d.app;
    if (r.rule == Rule::Hyp) {
      if (!d.premises.empty()) return fail(d, "hyp leaf with premises"), false;
      if (!opts.allow_hyp) return fail(d, "open hypothesis not allowed", "", print(d.conclusion)), false;
      report.hypotheses.push_back(d.conclusion);
      return true;
    }
    if (r.rule == Rule::Axiom) {
      if (!d.premises.empty()) return fail(d, "axiom leaf with premises"), false;
      auto th = axiom_theory(r.axiom);
      if (!th) return fail(d, "unknown axiom schema '" + r.axiom + "'"), false;
      if (*th > opts.theory) return fail(d, "schema not available in " + theory_name(opts.theory)), false;
      if (!is_axiom(d.conclusion, r.axiom))
        return fail(d, "not an instance of " + r.axiom, axiom_pattern(r.axiom), print(d.conclusion)), false;
      return true;
    }
    if (rule_theory(r.rule) > opts.theory)
      return fail(d, "rule not available in " + theory_name(opts.theory)), false;
    std::vector<Sequent> prem;
    for (const auto& p : d.premises) prem.push_back(p->conclusion);
    Sequent core;
    try {
      core = apply_rule(r, prem);
    } catch (const RuleError& e) {
      return fail(d, e.what(), "", print(d.conclusion)), false;
    }
    bool ok;
    if (r.rule == Rule::Rimp || r.rule == Rule::TI) {
      ok = list_equal(core.ante, d.conclusion.ante);
      auto rest = d.conclusion.succ;
      for (const auto& f : core.succ) {
        auto rr = remove_one(rest, *f);
        if (!rr) {
          ok = false;
          break;
        }
        rest = std::move(*rr);
      }
    } else {
      ok = sequent_equal(core, d.conclusion);
    }
    if (!ok) return fail(d, "conclusion does not match the rule", print(core), print(d.conclusion)), false;
    return true;
  }

  std::optional<unsigned> visit(const DerivationPtr& d) {
    auto it = done.find(d.get());
    if (it != done.end()) return it->second;
    unsigned h = 0;
    for (const auto& p : d->premises) {
      if (!p) {
        fail(*d, "missing premise");
        return std::nullopt;
      }
      auto hp = visit(p);
      if (!hp) return std::nullopt;
      h = std::max(h, *hp + 1);
    }
    if (!local(*d)) return std::nullopt;
    done.emplace(d.get(), h);
    return h;
  }
};

}  // namespace

CheckReport check(const DerivationPtr& d, const CheckOptions& opts) {
  Checker c{opts, {}, {}};
  auto h = c.visit(d);
  c.report.ok = h.has_value();
  c.report.height = h.value_or(0);
  c.report.nodes = c.done.size();
  return c.report;
}

unsigned height(const DerivationPtr& d) {
  std::unordered_map<const Derivation*, unsigned> memo;
  std::function<unsigned(const DerivationPtr&)> go = [&](const DerivationPtr& n) -> unsigned {
    auto it = memo.find(n.get());
    if (it != memo.end()) return it->second;
    unsigned h = 0;
    for (const auto& p : n->premises) h = std::max(h, go(p) + 1);
    memo.emplace(n.get(), h);
    return h;
  };
  return go(d);
}

// ---------------------------------------------------------------- scripts

namespace {

std::string trim(std::string_view s) {
  std::size_t b = s.find_first_not_of(" \t\r"), e = s.find_last_not_of(" \t\r");
  if (b == std::string_view::npos) return "";
  return std::string(s.substr(b, e - b + 1));
}

unsigned parse_var_text(const std::string& s, int line) {
  TermPtr t;
  try {
    t = parse_term(s);
  } catch (const ParseError& e) {
    throw ScriptError(line, e.what());
  }
  if (t->kind != Term::Kind::Var) throw ScriptError(line, "expected a variable, got '" + s + "'");
  return t->var;
}

std::vector<std::string> bracket_params(std::string_view s, std::size_t& pos, int line) {
  std::vector<std::string> out;
  while (pos < s.size() && s[pos] == '[') {
    int depth = 0;
    std::size_t start = pos + 1;
    for (; pos < s.size(); ++pos) {
      if (s[pos] == '[') ++depth;
      else if (s[pos] == ']' && --depth == 0) break;
    }
    if (pos >= s.size()) throw ScriptError(line, "unbalanced '['");
    out.push_back(std::string(s.substr(start, pos - start)));
    ++pos;
  }
  return out;
}

RuleApp parse_rule(const std::string& name, const std::vector<std::string>& ps, int line) {
  RuleApp r;
  if (name.rfind("axiom:", 0) == 0) {
    r.rule = Rule::Axiom;
    r.axiom = name.substr(6);
    return r;
  }
  auto rule = rule_by_name(name);
  if (!rule) throw ScriptError(line, "unknown rule '" + name + "'");
  r.rule = *rule;
  auto need = [&](std::size_t n) {
    if (ps.size() != n)
      throw ScriptError(line, name + " expects " + std::to_string(n) + " parameter(s), got " +
                                  std::to_string(ps.size()));
  };
  try {
    switch (r.rule) {
      case Rule::Hyp:
      case Rule::ConCp:
      case Rule::ClCp: need(0); break;
      case Rule::Lall:
        need(2);
        r.formula = parse_formula(ps[0]);
        r.term = parse_term(ps[1]);
        break;
      case Rule::Rall:
        need(2);
        r.formula = parse_formula(ps[0]);
        r.var = parse_var_text(ps[1], line);
        break;
      case Rule::Ind:
        need(3);
        r.formula = parse_formula(ps[0]);
        r.var = parse_var_text(ps[1], line);
        r.term = parse_term(ps[2]);
        break;
      case Rule::TI:
        need(4);
        r.formula = parse_formula(ps[0]);
        r.var = parse_var_text(ps[1], line);
        r.var2 = parse_var_text(ps[2], line);
        r.ordinal = ord::parse(ps[3]);
        break;
      case Rule::Subst:
        need(2);
        r.formula = parse_formula(ps[0]);
        r.var = parse_var_text(ps[1], line);
        break;
      default:
        need(1);
        r.formula = parse_formula(ps[0]);
    }
  } catch (const ScriptError&) {
    throw;
  } catch (const std::exception& e) {
    throw ScriptError(line, e.what());
  }
  return r;
}

}  // namespace

DerivationPtr read_script(std::string_view text) {
  std::map<long, DerivationPtr> nodes;
  DerivationPtr last;
  std::istringstream in{std::string(text)};
  std::string raw;
  int lineno = 0;
  while (std::getline(in, raw)) {
    ++lineno;
    std::string l = trim(raw);
    if (l.empty() || l[0] == '#') continue;
    auto colon = l.find(':');
    auto semi = l.find(';');
    if (colon == std::string::npos || semi == std::string::npos || semi < colon)
      throw ScriptError(lineno, "expected 'n: <sequent> ; <rule> ...'");
    long id;
    try {
      id = std::stol(l.substr(0, colon));
    } catch (const std::exception&) {
      throw ScriptError(lineno, "bad line number");
    }
    if (nodes.count(id)) throw ScriptError(lineno, "duplicate line number " + std::to_string(id));
    auto d = std::make_shared<Derivation>();
    d->line = lineno;
    try {
      d->conclusion = parse_sequent(l.substr(colon + 1, semi - colon - 1));
    } catch (const ParseError& e) {
      throw ScriptError(lineno, e.what());
    }
    std::string rest = trim(l.substr(semi + 1));
    std::size_t pos = 0;
    while (pos < rest.size() && rest[pos] != '[' && rest[pos] != ' ') ++pos;
    std::string name = rest.substr(0, pos);
    auto params = bracket_params(rest, pos, lineno);
    d->app = parse_rule(name, params, lineno);
    std::istringstream refs(rest.substr(pos));
    std::string tok;
    while (refs >> tok) {
      long ref;
      try {
        ref = std::stol(tok);
      } catch (const std::exception&) {
        throw ScriptError(lineno, "bad premise reference '" + tok + "'");
      }
      auto it = nodes.find(ref);
      if (it == nodes.end()) throw ScriptError(lineno, "premise " + tok + " not defined above");
      d->premises.push_back(it->second);
    }
    nodes.emplace(id, d);
    last = d;
  }
  if (!last) throw ScriptError(lineno, "empty proof script");
  return last;
}

std::string write_script(const DerivationPtr& root) {
  std::unordered_map<const Derivation*, long> ids;
  std::ostringstream out;
  long next = 1;
  std::function<long(const DerivationPtr&)> go = [&](const DerivationPtr& d) -> long {
    auto it = ids.find(d.get());
    if (it != ids.end()) return it->second;
    std::vector<long> refs;
    for (const auto& p : d->premises) refs.push_back(go(p));
    long id = next++;
    ids.emplace(d.get(), id);
    const RuleApp& r = d->app;
    out << id << ": " << print(d->conclusion) << " ; ";
    if (r.rule == Rule::Axiom) {
      out << "axiom:" << r.axiom;
    } else {
      out << rule_name(r.rule);
      switch (r.rule) {
        case Rule::Hyp:
        case Rule::ConCp:
        case Rule::ClCp: break;
        case Rule::Lall: out << '[' << print(r.formula) << "][" << print(r.term) << ']'; break;
        case Rule::Rall:
        case Rule::Subst: out << '[' << print(r.formula) << "][" << var_name(r.var) << ']'; break;
        case Rule::Ind:
          out << '[' << print(r.formula) << "][" << var_name(r.var) << "][" << print(r.term) << ']';
          break;
        case Rule::TI:
          out << '[' << print(r.formula) << "][" << var_name(r.var) << "][" << var_name(r.var2) << "]["
              << ord::to_string(r.ordinal) << ']';
          break;
        default: out << '[' << print(r.formula) << ']';
      }
    }
    for (long ref : refs) out << ' ' << ref;
    out << '\n';
    return id;
  };
  go(root);
  return out.str();
}

}  // namespace hype
