#pragma once

#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "hype/ordinal.hpp"
#include "hype/syntax.hpp"

namespace hype {

/// Antecedent and succedent are kept sorted under alpha_compare, so multiset
/// equality modulo alpha-renaming is elementwise equality.
struct Sequent {
  std::vector<FormulaPtr> ante, succ;
};

Sequent make_sequent(std::vector<FormulaPtr> ante, std::vector<FormulaPtr> succ);
bool sequent_equal(const Sequent& a, const Sequent& b);
std::string print(const Sequent& s);
Sequent parse_sequent(std::string_view text);
/// Free variables of every formula in the list.
VarSet free_vars(const std::vector<FormulaPtr>& fs);

// Multiset helpers (alpha-aware).
std::size_t count(const std::vector<FormulaPtr>& fs, const Formula& f);
std::optional<std::vector<FormulaPtr>> remove_one(const std::vector<FormulaPtr>& fs, const Formula& f);
std::vector<FormulaPtr> insert(std::vector<FormulaPtr> fs, FormulaPtr f);
/// Multiset union taking the larger multiplicity.
std::vector<FormulaPtr> merge_max(const std::vector<FormulaPtr>& a, const std::vector<FormulaPtr>& b);

enum class Rule {
  Axiom, Hyp, Cut, LW, RW, LC, RC, Lor, Ror, Limp, Rimp, ConCp, ClCp, Lall, Rall, Ind, TI, Subst,
};
std::string rule_name(Rule r);
std::optional<Rule> rule_by_name(std::string_view name);

/// Which parameters a rule reads:
///   Cut, LW, RW, LC, RC: formula (cut / weakened / contracted formula)
///   Lor, Ror, Limp, Rimp: formula (the principal disjunction / conditional)
///   Lall: formula (∀xA) and term (witness); Rall: formula (∀xA) and var (eigenvariable)
///   Ind: formula A, var x, term t;  TI: formula A with slot var, var2 = η, ordinal
///   Subst: formula B with slot var;  Axiom: axiom id
struct RuleApp {
  Rule rule = Rule::Hyp;
  std::string axiom;
  FormulaPtr formula;
  TermPtr term;
  unsigned var = 0, var2 = 0;
  ord::Ordinal ordinal;
};

struct Derivation;
using DerivationPtr = std::shared_ptr<const Derivation>;
struct Derivation {
  Sequent conclusion;
  RuleApp app;
  std::vector<DerivationPtr> premises;
  int line = -1;  // proof-script line, when read from a script
};

enum class Theory { G1h, G1hEq, HYA, KFL, KFLStar };
std::string theory_name(Theory t);
std::optional<Theory> theory_by_name(std::string_view name);

class RuleError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Forward mode: the conclusion of the rule applied to the premises (with no
/// extra succedent formulas for R→ and TI). Throws RuleError on a mismatch.
Sequent apply_rule(const RuleApp& app, const std::vector<Sequent>& premises);

/// Schema membership. Ids: ID Lbot Ref Rep Q1 Q2 Q4 Q5 Q6 Q7 eval evalneg IND TI
/// KFL1..KFL6 KFLP PLEM ord-lemma:<name>.
bool is_axiom(const Sequent& s, std::string_view id);
/// All ids, with the weakest theory that has them.
struct AxiomInfo {
  std::string id;
  Theory theory;
};
const std::vector<AxiomInfo>& axiom_catalogue();
std::optional<Theory> axiom_theory(std::string_view id);
/// Schema text for the pattern-defined entries (empty for coded ones).
std::string axiom_pattern(std::string_view id);

struct CheckOptions {
  Theory theory = Theory::KFLStar;
  Lang lang = Lang::Any;
  bool allow_hyp = true;
};

struct CheckError {
  int line = -1;
  std::string rule;
  std::string message;
  std::string expected, found;
};

struct CheckReport {
  bool ok = false;
  std::size_t nodes = 0;   // distinct nodes
  unsigned height = 0;
  std::vector<Sequent> hypotheses;
  std::optional<CheckError> error;
};

/// Checks every node. Shared subderivations are checked once.
CheckReport check(const DerivationPtr& d, const CheckOptions& opts = {});
unsigned height(const DerivationPtr& d);

// Proof scripts: `n: <sequent> ; <rule>[p1][p2] m1 m2`, last line is the root.
class ScriptError : public std::runtime_error {
 public:
  ScriptError(int line, const std::string& msg)
      : std::runtime_error("line " + std::to_string(line) + ": " + msg), line_(line) {}
  int line() const { return line_; }

 private:
  int line_;
};
DerivationPtr read_script(std::string_view text);
std::string write_script(const DerivationPtr& d);

// Schema constructors shared with the derivers.
FormulaPtr ind_axiom_formula(const FormulaPtr& a, unsigned x);
/// Prog(A) ⇒ ∀ξ≺α A(ξ) with slot var of A.
Sequent ti_sequent(const FormulaPtr& a, unsigned slot, const ord::Ordinal& alpha);
/// Replace every P(t) by B(t) (capture-avoiding).
FormulaPtr subst_pred(const FormulaPtr& f, const FormulaPtr& b, unsigned x);

}  // namespace hype
