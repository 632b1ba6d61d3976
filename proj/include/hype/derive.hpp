#pragma once

#include <stdexcept>
#include <string>

#include "hype/jump.hpp"
#include "hype/kernel.hpp"

namespace hype::derive {

// Forward-mode node builders. Each computes the conclusion with apply_rule and
// throws RuleError when the premises do not fit.
DerivationPtr axiom(Sequent s, std::string id);
DerivationPtr hyp(Sequent s);
DerivationPtr identity(const FormulaPtr& a);
DerivationPtr node(RuleApp app, std::vector<DerivationPtr> premises);

DerivationPtr lw(const DerivationPtr& d, const FormulaPtr& a);
DerivationPtr rw(const DerivationPtr& d, const FormulaPtr& a);
/// Adds whatever the target has beyond d's conclusion (must be a superset).
DerivationPtr weaken_to(const DerivationPtr& d, const Sequent& target);
/// Contracts every repeated formula.
DerivationPtr contract(const DerivationPtr& d);

// These weaken both premises to the shared context first.
DerivationPtr cut(const DerivationPtr& left, const DerivationPtr& right, const FormulaPtr& a);
DerivationPtr lor(const DerivationPtr& left, const DerivationPtr& right, const FormulaPtr& disj);
DerivationPtr limp(const DerivationPtr& left, const DerivationPtr& right, const FormulaPtr& imp);

DerivationPtr ror(const DerivationPtr& d, const FormulaPtr& disj);
DerivationPtr rimp(const DerivationPtr& d, const FormulaPtr& imp);
DerivationPtr lall(const DerivationPtr& d, const FormulaPtr& all, const TermPtr& t);
DerivationPtr rall(const DerivationPtr& d, const FormulaPtr& all, unsigned y);
DerivationPtr concp(const DerivationPtr& d);
DerivationPtr clcp(const DerivationPtr& d);

// Basic facts and admissible rules, expanded into primitive inferences.
DerivationPtr top();                                   // ⇒ ¬⊥
DerivationPtr dn_intro(const FormulaPtr& a);           // A ⇒ ¬¬A
DerivationPtr dn_elim(const FormulaPtr& a);            // ¬¬A ⇒ A
DerivationPtr contrapose(const DerivationPtr& d);      // Γ⇒Δ to ¬Δ⇒¬Γ
DerivationPtr land(const DerivationPtr& d, const FormulaPtr& a, const FormulaPtr& b);   // A,B,Γ⇒Δ to A∧B,Γ⇒Δ
DerivationPtr rand(const DerivationPtr& da, const DerivationPtr& db, const FormulaPtr& a, const FormulaPtr& b);
/// A(y),Γ⇒Δ to ∃vA,Γ⇒Δ with y the eigenvariable.
DerivationPtr lex(const DerivationPtr& d, unsigned v, const FormulaPtr& a, unsigned y);
/// Γ⇒Δ,A(t) to Γ⇒Δ,∃vA.
DerivationPtr rex(const DerivationPtr& d, unsigned v, const FormulaPtr& a, const TermPtr& t);

enum class Basic { Top, DnIntro, DnElim, Contrapose };
/// For Contrapose the input derivation is required; for the others the formula.
DerivationPtr derive_basic(Basic which, const FormulaPtr& a = nullptr, const DerivationPtr& d = nullptr);

class PreconditionError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// ⇒ s=t, ¬s=t from Ref and Rep.
DerivationPtr eq_lem(const TermPtr& s, const TermPtr& t);
/// ⇒ A, ¬A for A built from equations and ⊥ by ¬, ∨, ∀.
DerivationPtr derive_lem(const FormulaPtr& a);

/// Prog(A) ⇒ Prog(A⁺).
DerivationPtr derive_prog_jump(const OrdinalPredicate& a);
/// Prog(A) ⇒ ∀ξ≺ω_n A(ξ), n ≤ 3.
DerivationPtr derive_ti(const OrdinalPredicate& a, unsigned n);
inline constexpr unsigned kMaxTower = 3;

}  // namespace hype::derive
