#include <gtest/gtest.h>

#include "hype/code.hpp"
#include "hype/parse.hpp"
#include "support.hpp"

using namespace hype;
using testsupport::random_formula;

namespace {

// Independent Cantor pairing and tag attachment for oracle computations.
Nat cantor(const Nat& x, const Nat& y) { return (x + y) * (x + y + 1) / 2 + y; }
Nat tg(unsigned long t, const Nat& payload) { return payload * 128 + t; }

// Longest branch computed from the code alone.
unsigned rank_from_code(const Nat& c) {
  unsigned long t = Nat(c % 128).get_ui();
  Nat p = c / 128;
  if (t == tag::Neg) return 1 + rank_from_code(p);
  if (t == tag::Or || t == tag::Imp) {
    auto [a, b] = unpair(p);
    return 1 + std::max(rank_from_code(a), rank_from_code(b));
  }
  if (t == tag::All) return 1 + rank_from_code(unpair(p).second);
  return 1;
}

}  // namespace

TEST(Parse, QuotedTruthAscription) {
  FormulaPtr f = parse_formula("Tr(q(0=0))", Lang::LT);
  ASSERT_EQ(f->kind, Formula::Kind::Tr);
  ASSERT_EQ(f->lhs->kind, Term::Kind::Num);
  EXPECT_EQ(f->lhs->num, encode(*eq(num(0), num(0))));
}

TEST(Parse, ConditionalRejectedInLT) {
  EXPECT_THROW(parse_formula("p -> q", Lang::LT), ParseError);
  EXPECT_NO_THROW(parse_formula("p -> q", Lang::LTimp));
  EXPECT_THROW(parse_formula("F(0)", Lang::LTimpP), ParseError);
  EXPECT_THROW(parse_formula("Tr(0)", Lang::LNimp), ParseError);
  EXPECT_THROW(parse_formula("P(0)", Lang::LTimp), ParseError);
  EXPECT_NO_THROW(parse_formula("P(0) -> 0 = 0", Lang::LNimpP));
}

TEST(Parse, GrammarShape) {
  FormulaPtr f = parse_formula("!(x=y) | Tr(v0)", Lang::LT);
  ASSERT_EQ(f->kind, Formula::Kind::Or);
  ASSERT_EQ(f->a->kind, Formula::Kind::Neg);
  EXPECT_EQ(f->a->a->kind, Formula::Kind::Eq);
  ASSERT_EQ(f->b->kind, Formula::Kind::Tr);
  EXPECT_EQ(f->b->lhs->kind, Term::Kind::Var);
  EXPECT_EQ(f->b->lhs->var, 0u);
}

TEST(Parse, ErrorsCarryPosition) {
  try {
    parse_formula("0 = 0 | | p");
    FAIL();
  } catch (const ParseError& e) {
    EXPECT_EQ(e.position(), 8u);
  }
}

TEST(Parse, DefinedConnectivesExpand) {
  EXPECT_TRUE(formula_equal(*parse_formula("p & q"), *neg(disj(neg(atom(0)), neg(atom(1))))));
  EXPECT_TRUE(formula_equal(*parse_formula("ex x. p"), *neg(forall(0, neg(atom(0))))));
  EXPECT_TRUE(formula_equal(*parse_formula("top"), *neg(bot())));
  EXPECT_TRUE(formula_equal(*parse_formula("~p"), *imp(atom(0), bot())));
  EXPECT_TRUE(formula_equal(*parse_formula("p <-> q"),
                            *conj(imp(atom(0), atom(1)), imp(atom(1), atom(0)))));
  EXPECT_TRUE(formula_equal(*parse_formula("x < y"), *lt(var(0), var(1))));
}

TEST(Parse, PrintParseRoundTrip) {
  std::mt19937 rng(1);
  for (int i = 0; i < 2000; ++i) {
    FormulaPtr f = random_formula(rng, 11);
    ASSERT_LE(rank(*f), 12u);
    std::string s = print(*f);
    FormulaPtr g = parse_formula(s);
    ASSERT_TRUE(formula_equal(*f, *g)) << s << "\n" << print(*g);
    ASSERT_EQ(print(*g), s);
  }
}

TEST(Substitute, Examples) {
  FormulaPtr f = substitute(tr(var(0)), 0, num(5));
  EXPECT_TRUE(formula_equal(*f, *tr(num(5))));
  FormulaPtr closed = eq(num(0), num(0));
  EXPECT_EQ(substitute(closed, 0, var(3)), closed);
}

TEST(Substitute, AvoidsCapture) {
  // ∀x.(x = y)[y := x]
  FormulaPtr f = forall(0, eq(var(0), var(1)));
  FormulaPtr g = substitute(f, 1, var(0));
  ASSERT_EQ(g->kind, Formula::Kind::All);
  EXPECT_NE(g->index, 0u);
  EXPECT_EQ(g->fv, VarSet{0});
  EXPECT_TRUE(alpha_equal(*g, *forall(7, eq(var(7), var(0)))));
  EXPECT_FALSE(alpha_equal(*g, *forall(0, eq(var(0), var(0)))));
}

TEST(Substitute, FreeVariablesBound) {
  std::mt19937 rng(2);
  for (int i = 0; i < 1000; ++i) {
    FormulaPtr f = random_formula(rng, 6);
    TermPtr t = testsupport::random_term(rng, 2);
    unsigned v = std::uniform_int_distribution<unsigned>(0, 3)(rng);
    FormulaPtr g = substitute(f, v, t);
    for (unsigned w : g->fv) {
      bool from_f = w != v && is_free(w, *f);
      bool from_t = is_free(v, *f) && std::binary_search(t->fv.begin(), t->fv.end(), w);
      ASSERT_TRUE(from_f || from_t);
    }
  }
}

TEST(Substitute, Compositional) {
  std::mt19937 rng(3);
  for (int i = 0; i < 1000; ++i) {
    FormulaPtr a = random_formula(rng, 5);
    TermPtr t = testsupport::random_term(rng, 2);
    TermPtr s = testsupport::random_term(rng, 2);
    unsigned v = 0, w = 1;
    if (std::binary_search(s->fv.begin(), s->fv.end(), v)) continue;
    FormulaPtr lhs = substitute(substitute(a, v, t), w, s);
    FormulaPtr rhs = substitute(substitute(a, w, s), v, substitute_term(t, w, s));
    ASSERT_TRUE(alpha_equal(*lhs, *rhs)) << print(*a);
  }
}

TEST(Rank, Examples) {
  EXPECT_EQ(rank(*parse_formula("0=0")), 1u);
  EXPECT_EQ(rank(*parse_formula("!(0=0)")), 2u);
  EXPECT_EQ(rank(*parse_formula("0=0 | !(0=0)")), 3u);
}

TEST(Rank, MatchesCodeWalk) {
  std::mt19937 rng(4);
  for (int i = 0; i < 1000; ++i) {
    FormulaPtr f = random_formula(rng, 8);
    ASSERT_EQ(rank(*f), rank_from_code(encode(*f)));
  }
}

TEST(Code, RoundTrip) {
  std::mt19937 rng(5);
  for (int i = 0; i < 1000; ++i) {
    FormulaPtr f = random_formula(rng, 8);
    auto g = decode_formula(encode(*f));
    ASSERT_TRUE(g);
    ASSERT_TRUE(formula_equal(*f, **g));
    TermPtr t = testsupport::random_term(rng, 4);
    auto u = decode_term(encode(*t));
    ASSERT_TRUE(u);
    ASSERT_TRUE(term_equal(*t, **u));
  }
}

TEST(Code, DistinctTreesDistinctCodes) {
  std::mt19937 rng(6);
  std::map<Nat, FormulaPtr> seen;
  for (int i = 0; i < 3000; ++i) {
    FormulaPtr f = random_formula(rng, 4);
    Nat c = encode(*f);
    auto [it, fresh] = seen.emplace(c, f);
    if (!fresh) ASSERT_TRUE(formula_equal(*it->second, *f));
  }
}

TEST(Code, IllFormedRejected) {
  EXPECT_FALSE(decode_formula(tg(60, 5)));  // bottom with payload
  EXPECT_FALSE(decode_formula(tg(59, 0)));  // unused tag
  EXPECT_THROW(decode_formula_or_throw(tg(99, 0)), DecodeError);
  EXPECT_FALSE(decode_formula(tg(69, cantor(tg(0, 0), 0))));  // binder over a numeral
}

TEST(Code, TagsAreCantorPairs) {
  EXPECT_EQ(encode(*num(7)), tg(0, 7));
  EXPECT_EQ(encode(*var(2)), tg(1, 2));
  EXPECT_EQ(encode(*eq(num(0), num(0))), tg(61, cantor(tg(0, 0), tg(0, 0))));
}

TEST(Eval, Arithmetic) {
  EXPECT_EQ(eval_term(*parse_term("S(S(0)) + S(0)")), 3);
  EXPECT_EQ(eval_term(*parse_term("(2 + 3) * 4")), 20);
  EXPECT_THROW(eval_term(*parse_term("x + 1")), OpenTermError);
}

TEST(Eval, NumeralFunction) {
  EXPECT_EQ(eval_term(*parse_term("num(7)")), tg(0, 7));
}

TEST(Eval, DotFunctionsMatchConstructors) {
  Nat zz = encode(*eq(num(0), num(0)));
  EXPECT_EQ(eval_term(*app(Fn::NegDot, {num(zz)})), encode(*neg(eq(num(0), num(0)))));
  for (unsigned n : {0u, 3u, 41u}) {
    Nat via_fn = eval_term(*app(Fn::TrDot, {app(Fn::Num, {num(n)})}));
    EXPECT_EQ(via_fn, encode(*tr(num(n))));
  }
  FormulaPtr a = parse_formula("0 = 1"), b = parse_formula("Tr(2)");
  EXPECT_EQ(eval_term(*app(Fn::VorDot, {num(encode(*a)), num(encode(*b))})), encode(*disj(a, b)));
  EXPECT_EQ(eval_term(*app(Fn::AllDot, {num(var_code(3)), num(encode(*a))})), encode(*forall(3, a)));
  EXPECT_EQ(eval_term(*app(Fn::EqDot, {num(encode(*num(1))), num(encode(*num(2)))})),
            encode(*eq(num(1), num(2))));
}

TEST(Eval, SubstitutionFunction) {
  Nat lhs = eval_term(*parse_term("sub(q(Tr(v0)), q(v0), num(4))"));
  // Right side built by hand from the tags: Tr applied to the numeral 4.
  EXPECT_EQ(lhs, tg(62, tg(0, 4)));
  EXPECT_EQ(lhs, encode(*tr(num(4))));
}

TEST(Eval, ValAndPredicates) {
  EXPECT_EQ(eval_term(*parse_term("val(q(2 + 3))")), 5);
  EXPECT_EQ(eval_term(*parse_term("cterm(q(2 + 3))")), 1);
  EXPECT_EQ(eval_term(*parse_term("cterm(q(x + 3))")), 0);
  EXPECT_EQ(eval_term(*parse_term("sent(q(0 = 0))")), 1);
  EXPECT_EQ(eval_term(*parse_term("sent(q(x = 0))")), 0);
  EXPECT_EQ(eval_term(*parse_term("sent(q(0 = 0 -> 0 = 0))")), 0);
  EXPECT_EQ(eval_term(*parse_term("isvar(q(v3))")), 1);
  EXPECT_EQ(eval_term(*parse_term("proj2(pair(4, 9))")), 9);
}

TEST(Eval, OrdinalFunctions) {
  EXPECT_EQ(eval_term(*parse_term("olt(o[w], o[w^w])")), 1);
  EXPECT_EQ(eval_term(*parse_term("olt(o[w^w], o[w])")), 0);
  EXPECT_EQ(eval_term(*parse_term("oadd(o[1], o[w])")), ord::encode(ord::Ordinal::omega()));
  EXPECT_EQ(eval_term(*parse_term("oe(o[w^2+w])")), ord::encode(ord::Ordinal::one()));
  EXPECT_EQ(eval_term(*parse_term("omul(o[w], 3)")), ord::encode(ord::parse("w+w+w")));
}

TEST(SentLevel, Examples) {
  Nat zz = encode(*parse_formula("0=0"));
  EXPECT_TRUE(sent_level(ord::Ordinal::zero(), zz));
  Nat trzz = encode(*tr(num(zz)));
  EXPECT_FALSE(sent_level(ord::Ordinal::zero(), trzz));
  EXPECT_TRUE(sent_level(ord::Ordinal::one(), trzz));
  Nat c = zz;
  for (int n = 0; n <= 10; ++n) {
    EXPECT_TRUE(sent_level(ord::Ordinal::omega(), c));
    EXPECT_TRUE(sent_level(ord::Ordinal::from_nat(n), c));
    if (n > 0) EXPECT_FALSE(sent_level(ord::Ordinal::from_nat(n - 1), c));
    c = encode(*tr(num(c)));
  }
}

TEST(SentLevel, MonotoneInLevel) {
  std::mt19937 rng(8);
  std::vector<ord::Ordinal> levels;
  for (unsigned n = 0; n < 5; ++n) levels.push_back(ord::Ordinal::from_nat(n));
  levels.push_back(ord::Ordinal::omega());
  levels.push_back(ord::parse("w+1"));
  levels.push_back(ord::parse("w^w"));
  for (int i = 0; i < 500; ++i) {
    // Sentences whose Tr arguments are codes of earlier sentences.
    FormulaPtr f = random_formula(rng, 3, 0, false);
    if (!f->fv.empty()) continue;
    for (int d = 0; d < 2; ++d)
      if (rng() % 2) f = disj(f, tr(num(encode(*f))));
    Nat c = encode(*f);
    std::vector<bool> in;
    for (const auto& l : levels) in.push_back(sent_level(l, c));
    for (std::size_t a = 0; a + 1 < in.size(); ++a)
      if (in[a]) ASSERT_TRUE(in[a + 1]);
  }
}

TEST(SentLevel, TrBelowConstructor) {
  FormulaPtr g = tr_below(ord::Ordinal::from_nat(2), num(7));
  FormulaPtr a, b;
  ASSERT_TRUE(as_conj(g, a, b));
  EXPECT_EQ(b->kind, Formula::Kind::Tr);
  Nat zz = encode(*parse_formula("0=0"));
  EXPECT_EQ(eval_term(*app(Fn::SentLt, {ord_numeral(ord::Ordinal::one()), num(zz)})), 1);
  EXPECT_EQ(eval_term(*app(Fn::SentLt, {ord_numeral(ord::Ordinal::zero()), num(zz)})), 0);
}

TEST(Printer, LargeCodesPrintAsQuotations) {
  FormulaPtr f = parse_formula("0 = 0");
  for (int i = 0; i < 4; ++i) f = tr(num(encode(*f)));
  std::string text = print(*f);
  EXPECT_EQ(text.rfind("Tr(q(", 0), 0u) << text;
  // ⌜Tr ⌜0=0⌝⌝ is below 32 bits and stays numeric
  std::string inner = "Tr(" + tg(62, tg(0, tg(61, cantor(tg(0, 0), tg(0, 0))))).get_str() + ")";
  EXPECT_NE(text.find(inner), std::string::npos) << text;
  EXPECT_TRUE(formula_equal(*parse_formula(text), *f));
  FormulaPtr g = eq(num(encode(*parse_term("S(x) + y * 3"))), num(12345));
  EXPECT_TRUE(formula_equal(*parse_formula(print(*g)), *g));
}
