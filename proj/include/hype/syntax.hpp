#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "hype/nat.hpp"

namespace hype {

/// Syntactic function symbols beyond 0, S, +, *. Codes for the quotation
/// machinery, the ordinal notation functions and a few helpers.
enum class Fn : std::uint8_t {
  Num, Sub, NegDot, VorDot, AllDot, EqDot, TrDot, Pair, Proj1, Proj2,
  Val, CTerm, Sent, IsVar,
  OAdd, OWExp, OMul, OPhi, OE, OH, OLt, OLe,
  Tau, FH, FHR, SentLt,
};
inline constexpr int kFnCount = static_cast<int>(Fn::SentLt) + 1;

struct FnInfo {
  const char* name;
  int arity;
};
const FnInfo& fn_info(Fn f);
std::optional<Fn> fn_by_name(std::string_view name);

struct Term;
struct Formula;
using TermPtr = std::shared_ptr<const Term>;
using FormulaPtr = std::shared_ptr<const Formula>;
using VarSet = std::vector<unsigned>;  // sorted, unique

struct Term {
  enum class Kind : std::uint8_t { Var, Num, Succ, Plus, Times, App };
  Kind kind;
  Fn fn = Fn::Num;       // App only
  unsigned var = 0;      // Var only
  Nat num;               // Num only
  std::vector<TermPtr> args;
  VarSet fv;
  int max_var = -1;      // largest variable index occurring, -1 if none
  // Nodes are immutable; large codes and values are memoized on first use.
  mutable std::shared_ptr<const Nat> code_cache, value_cache;
};

struct Formula {
  enum class Kind : std::uint8_t { Bot, Eq, Tr, F, P, Atom, Neg, Or, Imp, All };
  Kind kind;
  unsigned index = 0;    // Atom number or bound variable of All
  TermPtr lhs, rhs;      // Eq uses both; Tr, F, P use lhs
  FormulaPtr a, b;       // Neg, All use a; Or, Imp use a and b
  VarSet fv;
  int max_var = -1;      // includes bound variables
  unsigned rank = 1;
  std::uint8_t features = 0;
  mutable std::shared_ptr<const Nat> code_cache;
};

// Term constructors.
TermPtr var(unsigned index);
TermPtr num(const Nat& n);
TermPtr succ(TermPtr t);
TermPtr plus(TermPtr a, TermPtr b);
TermPtr times(TermPtr a, TermPtr b);
/// Throws std::invalid_argument on arity mismatch.
TermPtr app(Fn f, std::vector<TermPtr> args);

// Primitive formula constructors.
FormulaPtr bot();
FormulaPtr eq(TermPtr s, TermPtr t);
FormulaPtr tr(TermPtr t);
FormulaPtr fpred(TermPtr t);
FormulaPtr ppred(TermPtr t);
FormulaPtr atom(unsigned index);
FormulaPtr neg(FormulaPtr a);
FormulaPtr disj(FormulaPtr a, FormulaPtr b);
FormulaPtr imp(FormulaPtr a, FormulaPtr b);
FormulaPtr forall(unsigned v, FormulaPtr a);

// Defined connectives, expanded on construction.
FormulaPtr conj(FormulaPtr a, FormulaPtr b);         // ¬(¬A ∨ ¬B)
FormulaPtr exists(unsigned v, FormulaPtr a);         // ¬∀v¬A
FormulaPtr iff(FormulaPtr a, FormulaPtr b);          // (A→B) ∧ (B→A)
FormulaPtr top();                                    // ¬⊥
FormulaPtr inot(FormulaPtr a);                       // A → ⊥
FormulaPtr mimp(FormulaPtr a, FormulaPtr b);         // ¬A ∨ B
FormulaPtr mequiv(FormulaPtr a, FormulaPtr b);       // (A ⊃ B) ∧ (B ⊃ A)
/// s ≺ t, i.e. olt(s,t) = 1; likewise s ⪯ t.
FormulaPtr lt(TermPtr s, TermPtr t);
FormulaPtr le(TermPtr s, TermPtr t);

/// Recognizers for the expanded shapes (used by the printer and derivers).
bool as_conj(const FormulaPtr& f, FormulaPtr& a, FormulaPtr& b);
bool as_exists(const FormulaPtr& f, unsigned& v, FormulaPtr& a);
bool as_lt(const FormulaPtr& f, TermPtr& s, TermPtr& t);
bool as_le(const FormulaPtr& f, TermPtr& s, TermPtr& t);

// Feature bits used for language membership.
inline constexpr std::uint8_t kFeatImp = 1, kFeatTr = 2, kFeatF = 4, kFeatP = 8;

/// Any admits every symbol (used when no tag is requested).
enum class Lang : std::uint8_t { LN, LNimp, LNimpP, LT, LTimp, LTimpP, LTF, Any };
std::string lang_name(Lang l);
std::optional<Lang> lang_by_name(std::string_view name);
std::uint8_t lang_features(Lang l);
bool in_language(const Formula& f, Lang l);
/// Smallest tag admitting f.
Lang minimal_language(const Formula& f);

bool term_equal(const Term& a, const Term& b);
bool formula_equal(const Formula& a, const Formula& b);
int term_compare(const Term& a, const Term& b);
/// Total preorder whose equivalence classes are the alpha-equivalence classes.
int alpha_compare(const Formula& a, const Formula& b);
inline bool alpha_equal(const Formula& a, const Formula& b) { return alpha_compare(a, b) == 0; }

bool is_free(unsigned v, const Formula& f);
bool is_closed(const Term& t);
inline bool is_sentence(const Formula& f) { return f.fv.empty(); }

TermPtr substitute_term(const TermPtr& t, unsigned v, const TermPtr& s);
/// Capture-avoiding substitution of s for the free occurrences of v.
FormulaPtr substitute(const FormulaPtr& f, unsigned v, const TermPtr& s);
/// Renames the outer binder of an All to w (w must be fresh for the body).
FormulaPtr rename_bound(const FormulaPtr& all, unsigned w);
/// An index not occurring in any of the given formulas/terms.
unsigned fresh_var(std::initializer_list<int> max_vars);

/// Nodes on the longest branch of the syntax tree.
inline unsigned rank(const Formula& f) { return f.rank; }
/// Total node count.
std::size_t formula_size(const Formula& f);

}  // namespace hype
