#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <variant>

#include "hype/nat.hpp"
#include "hype/ordinal.hpp"
#include "hype/syntax.hpp"

namespace hype {

/// Constructor tags: code = payload * kTagRadix + tag; tuple payloads are
/// folded with the Cantor pairing.
inline constexpr unsigned long kTagRadix = 128;
namespace tag {
inline constexpr unsigned long Num = 0, Var = 1, Succ = 20, Plus = 21, Times = 22, FnBase = 23;
inline constexpr unsigned long Bot = 60, Eq = 61, Tr = 62, F = 63, P = 64, Atom = 65, Neg = 66,
                               Or = 67, Imp = 68, All = 69;
}  // namespace tag

Nat tagged(unsigned long t, const Nat& payload);
/// (tag, payload) of a code.
std::pair<unsigned long, Nat> untag(const Nat& c);

Nat encode(const Term& t);
Nat encode(const Formula& f);
inline Nat encode(const TermPtr& t) { return encode(*t); }
inline Nat encode(const FormulaPtr& f) { return encode(*f); }

/// Code of the variable v_i, i.e. encode(var(i)).
Nat var_code(unsigned i);
/// Code of the numeral n, i.e. encode(num(n)).
Nat numeral_code(const Nat& n);

class DecodeError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

std::optional<TermPtr> decode_term(const Nat& c);
std::optional<FormulaPtr> decode_formula(const Nat& c);
/// Throwing variants with a diagnostic naming the offending tag.
TermPtr decode_term_or_throw(const Nat& c);
FormulaPtr decode_formula_or_throw(const Nat& c);

class OpenTermError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Value of a closed term. Throws OpenTermError on free variables.
Nat eval_term(const Term& t);
inline Nat eval_term(const TermPtr& t) { return eval_term(*t); }
/// Value of a function symbol on argument values. Total: ill-formed
/// inputs map to 0.
Nat eval_fn(Fn f, const std::vector<Nat>& args);

/// The syntactic functions on codes.
Nat sub_code(const Nat& x, const Nat& v, const Nat& y);
/// 1 iff x codes a sentence of L_T (P permitted, no conditional, no F, no letters).
bool is_lt_sentence_code(const Nat& x);
bool is_closed_term_code(const Nat& x);

/// Level in the ramified sentence hierarchy (Sent_{L_T}(n, .) is the least n
/// containing the code), or nullopt when the code is outside every level.
std::optional<unsigned long> sent_rank(const Nat& c);
/// Sent_{L_T}(alpha, c).
bool sent_level(const ord::Ordinal& alpha, const Nat& c);
/// Sent^{<alpha}_{L_T}(c).
bool sent_below(const ord::Ordinal& alpha, const Nat& c);
/// Tr_alpha(t) := Sent^{<alpha}(t) ∧ Tr(t), as a formula.
FormulaPtr tr_below(const ord::Ordinal& alpha, TermPtr t);

/// Numeral of an ordinal notation's code.
TermPtr ord_numeral(const ord::Ordinal& a);

}  // namespace hype
