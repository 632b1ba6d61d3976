#include <gtest/gtest.h>

#include <functional>
#include <random>
#include <unordered_map>

#include "hype/code.hpp"
#include "hype/derive.hpp"
#include "hype/jump.hpp"
#include "hype/parse.hpp"
#include "support.hpp"

using namespace hype;
namespace dv = hype::derive;
using ord::Ordinal;

namespace {

FormulaPtr F(const char* s) { return parse_formula(s); }

bool accepted(const DerivationPtr& d) {
  auto r = check(d);
  if (!r.ok && r.error) ADD_FAILURE() << r.error->rule << ": " << r.error->message;
  return r.ok && r.hypotheses.empty();
}

bool uses_axiom(const DerivationPtr& d, const std::string& id) {
  std::unordered_map<const Derivation*, bool> memo;
  std::function<bool(const DerivationPtr&)> go = [&](const DerivationPtr& n) {
    auto it = memo.find(n.get());
    if (it != memo.end()) return it->second;
    bool r = n->app.rule == Rule::Axiom && n->app.axiom == id;
    for (const auto& p : n->premises) r = r || go(p);
    return memo[n.get()] = r;
  };
  return go(d);
}

// Copy of d with the topmost subtree that uses `inside` but not `outside`
// replaced by a node claiming its conclusion without premises.
DerivationPtr drop_branch(const DerivationPtr& d, const std::string& inside, const std::string& outside) {
  if (uses_axiom(d, inside) && !uses_axiom(d, outside)) {
    auto n = std::make_shared<Derivation>(*d);
    n->premises.clear();
    return n;
  }
  auto n = std::make_shared<Derivation>(*d);
  for (auto& p : n->premises) p = drop_branch(p, inside, outside);
  return n;
}

std::size_t tree_size(const DerivationPtr& d) {
  std::size_t n = 1;
  for (const auto& p : d->premises) n += tree_size(p);
  return n;
}

void collect_apps(const Term& t, Fn f, std::vector<const Term*>& out) {
  if (t.kind == Term::Kind::App && t.fn == f) out.push_back(&t);
  for (const auto& a : t.args) collect_apps(*a, f, out);
}
void collect_apps(const Formula& g, Fn f, std::vector<const Term*>& out) {
  if (g.lhs) collect_apps(*g.lhs, f, out);
  if (g.rhs) collect_apps(*g.rhs, f, out);
  if (g.a) collect_apps(*g.a, f, out);
  if (g.b) collect_apps(*g.b, f, out);
}

OrdinalPredicate tr_f0() { return {tr(app(Fn::FH, {num(0), var(0)})), 0}; }

}  // namespace

TEST(Basic, TopAndDoubleNegation) {
  auto t = dv::derive_basic(dv::Basic::Top);
  EXPECT_TRUE(sequent_equal(t->conclusion, make_sequent({}, {neg(bot())})));
  EXPECT_TRUE(accepted(t));
  auto d = dv::derive_basic(dv::Basic::DnIntro, F("0 = 0"));
  EXPECT_TRUE(sequent_equal(d->conclusion, parse_sequent("0 = 0 => !!0 = 0")));
  EXPECT_TRUE(accepted(d));
  auto e = dv::derive_basic(dv::Basic::DnElim, F("p | q"));
  EXPECT_TRUE(sequent_equal(e->conclusion, parse_sequent("!!(p | q) => p | q")));
  EXPECT_TRUE(accepted(e));
  auto c = dv::derive_basic(dv::Basic::Contrapose, nullptr, dv::identity(F("p")));
  EXPECT_TRUE(sequent_equal(c->conclusion, parse_sequent("!p => !p")));
  EXPECT_TRUE(accepted(c));
  EXPECT_THROW(dv::derive_basic(dv::Basic::DnIntro), dv::PreconditionError);
}

TEST(Basic, ContraposeMultiple) {
  auto d = dv::lw(dv::rw(dv::identity(F("p")), F("q")), F("r"));
  auto c = dv::contrapose(d);
  EXPECT_TRUE(sequent_equal(c->conclusion, parse_sequent("!p, !q => !p, !r")));
  EXPECT_TRUE(accepted(c));
}

TEST(Recapture, Examples) {
  auto a = dv::derive_lem(F("0 = 0"));
  EXPECT_TRUE(sequent_equal(a->conclusion, parse_sequent("=> 0 = 0, !0 = 0")));
  EXPECT_TRUE(accepted(a));
  auto b = dv::derive_lem(F("all x. x = x"));
  EXPECT_TRUE(sequent_equal(b->conclusion, parse_sequent("=> all x. x = x, !all x. x = x")));
  EXPECT_TRUE(accepted(b));
  EXPECT_TRUE(accepted(dv::derive_lem(F("x = S(y)"))));
  EXPECT_TRUE(accepted(dv::derive_lem(bot())));
  EXPECT_TRUE(accepted(dv::derive_lem(F("all y. (bot | bot)"))));
  EXPECT_THROW(dv::derive_lem(F("Tr(q(0 = 0))")), dv::PreconditionError);
  EXPECT_THROW(dv::derive_lem(F("0 = 0 -> 0 = 0")), dv::PreconditionError);
  EXPECT_THROW(dv::derive_lem(F("p | 0 = 0")), dv::PreconditionError);
}

TEST(Recapture, EqualityLemmaAvoidsTruth) {
  CheckOptions o;
  o.theory = Theory::G1hEq;
  o.allow_hyp = false;
  EXPECT_TRUE(check(dv::eq_lem(parse_term("x + 1"), parse_term("y")), o).ok);
  EXPECT_TRUE(check(dv::derive_lem(F("all x. !(x = 0 | all y. y = S(x))")), o).ok);
}

TEST(Recapture, RandomSentences) {
  std::mt19937 rng(2024);
  CheckOptions o;
  o.lang = Lang::LN;
  o.theory = Theory::G1hEq;
  o.allow_hyp = false;
  for (int i = 0; i < 40; ++i) {
    FormulaPtr a = testsupport::random_arith_sentence(rng, 6);
    auto d = dv::derive_lem(a);
    ASSERT_TRUE(sequent_equal(d->conclusion, make_sequent({}, {a, neg(a)}))) << print(*a);
    auto r = check(d, o);
    ASSERT_TRUE(r.ok) << print(*a) << ": " << (r.error ? r.error->message : "");
  }
}

TEST(Jump, GentzenTemplate) {
  auto plus = gentzen_jump(tr_f0());
  FormulaPtr expected = F(
      "all v5. (all v6. (v6 < v5 -> Tr(fh(0, v6))) -> all v6. (v6 < oadd(v5, owexp(v9)) -> Tr(fh(0, v6))))");
  EXPECT_TRUE(alpha_equal(*plus.at(var(9)), *expected)) << print(*plus.at(var(9)));
  EXPECT_TRUE(alpha_equal(*plus.at(num(3)), *substitute(expected, 9, num(3))));
}

TEST(Jump, RankGrowsAndInjective) {
  std::mt19937 rng(9);
  std::vector<std::pair<OrdinalPredicate, OrdinalPredicate>> seen;
  for (int i = 0; i < 200; ++i) {
    OrdinalPredicate a{testsupport::random_formula(rng, 3), 0};
    auto p = gentzen_jump(a);
    EXPECT_GT(p.body->rank, a.body->rank);
    seen.emplace_back(a, p);
  }
  for (std::size_t i = 0; i < seen.size(); ++i)
    for (std::size_t j = i + 1; j < seen.size(); ++j) {
      bool src = alpha_equal(*seen[i].first.body, *seen[j].first.body);
      bool dst = alpha_equal(*seen[i].second.at(var(40)), *seen[j].second.at(var(40)));
      EXPECT_EQ(src, dst);
    }
}

TEST(Jump, ProgressivenessLifts) {
  auto d = dv::derive_prog_jump(tr_f0());
  EXPECT_TRUE(sequent_equal(d->conclusion, make_sequent({prog(tr_f0())}, {prog(gentzen_jump(tr_f0()))})));
  EXPECT_TRUE(accepted(d));
  EXPECT_TRUE(uses_axiom(d, "ord-lemma:cnf"));
  CheckOptions o;
  o.lang = Lang::LNimp;
  EXPECT_FALSE(check(d, o).ok);  // Tr is outside the arithmetic language
  o.lang = Lang::LTimp;
  o.theory = Theory::HYA;
  EXPECT_TRUE(check(d, o).ok);
}

TEST(Jump, ProgressivenessArithmetic) {
  OrdinalPredicate a{F("0 < S(x) | x = x"), 0};
  auto d = dv::derive_prog_jump(a);
  CheckOptions o;
  o.theory = Theory::HYA;
  o.allow_hyp = false;
  EXPECT_TRUE(check(d, o).ok);
}

TEST(Jump, DroppingZeroCaseIsRejected) {
  auto d = dv::derive_prog_jump(tr_f0());
  auto bad = drop_branch(d, "ord-lemma:case-zero", "ord-lemma:mul-zero");
  ASSERT_NE(bad.get(), d.get());
  EXPECT_FALSE(check(bad).ok);
}

TEST(TI, SmallTowers) {
  std::size_t last = 0;
  for (unsigned n = 0; n <= 2; ++n) {
    auto d = dv::derive_ti(tr_f0(), n);
    EXPECT_TRUE(sequent_equal(d->conclusion, ti_sequent(tr_f0().body, 0, ord::omega_tower(n)))) << n;
    EXPECT_TRUE(accepted(d)) << n;
    std::size_t size = tree_size(d);
    EXPECT_GT(size, last);
    last = size;
  }
  EXPECT_THROW(dv::derive_ti(tr_f0(), dv::kMaxTower + 1), dv::PreconditionError);
}

TEST(FHierarchy, BaseCase) {
  EXPECT_EQ(build_f(Ordinal::zero()), encode(ppred(var(0))));
  EXPECT_TRUE(alpha_equal(*f_template(Ordinal::zero()), *ppred(var(0))));
}

TEST(FHierarchy, VeblenJumpSlots) {
  Ordinal ww = ord::omega_pow(Ordinal::omega());
  FormulaPtr a = veblen_jump(ww, 3);
  std::vector<const Term*> phis, les;
  collect_apps(*a, Fn::OPhi, phis);
  ASSERT_FALSE(phis.empty());
  for (const Term* t : phis) {
    ASSERT_EQ(t->args[0]->kind, Term::Kind::Num);
    EXPECT_EQ(t->args[0]->num, ord::encode(Ordinal::omega()));
  }
  collect_apps(*a, Fn::OLe, les);
  ASSERT_EQ(les.size(), 1u);
  ASSERT_EQ(les[0]->args[0]->kind, Term::Kind::Num);
  EXPECT_EQ(les[0]->args[0]->num, 0);
  EXPECT_THROW(veblen_jump(Ordinal::zero(), 0), std::invalid_argument);
}

TEST(FHierarchy, OneIsJumpShaped) {
  FormulaPtr f1 = f_template(Ordinal::one());
  EXPECT_TRUE(alpha_equal(*f1, *veblen_jump(Ordinal::one(), 0)));
  std::vector<const Term*> refs;
  collect_apps(*f1, Fn::FHR, refs);
  ASSERT_FALSE(refs.empty());
  for (const Term* t : refs) EXPECT_EQ(t->args[0]->num, ord::encode(Ordinal::one()));
}

TEST(FHierarchy, WellFoundedReferences) {
  std::mt19937 rng(17);
  Ordinal w3 = ord::omega_pow(Ordinal::from_nat(3));
  int tried = 0;
  for (int i = 0; i < 300 && tried < 60; ++i) {
    Ordinal z = testsupport::random_ordinal(rng, 2, false);
    if (!ord::less(z, w3) || z == Ordinal::zero()) continue;
    ++tried;
    Nat c = build_f(z);
    auto f = decode_formula(c);
    ASSERT_TRUE(f);
    EXPECT_EQ(encode(*f), c);
    std::vector<const Term*> refs, lows;
    collect_apps(**f, Fn::FHR, refs);
    for (const Term* t : refs) EXPECT_EQ(t->args[0]->num, ord::encode(z));
    collect_apps(**f, Fn::FH, lows);
    for (const Term* t : lows)
      if (t->args[0]->kind == Term::Kind::Num) {
        auto o = ord::decode(t->args[0]->num);
        ASSERT_TRUE(o);
        EXPECT_TRUE(ord::less(*o, z));
      }
  }
  EXPECT_GT(tried, 20);
}

TEST(FHierarchy, CodeFunctions) {
  EXPECT_EQ(fh_code(0, 5), encode(ppred(num(5))));
  Nat junk = 2;
  while (ord::decode(junk)) ++junk;
  EXPECT_EQ(fh_code(junk, 2), 0);
  Nat p = pair(0, 4);
  Nat code = fhr_code(ord::encode(Ordinal::one()), p);
  auto f = decode_formula(code);
  ASSERT_TRUE(f);
}
