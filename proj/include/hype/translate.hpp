#pragma once

#include <functional>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include "hype/nat.hpp"
#include "hype/semantics.hpp"
#include "hype/syntax.hpp"

namespace hype {

class TranslationError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Internal translation L_T -> L_TF by positive complexity. Tr plays the role
/// of the classical truth predicate and F of the falsity predicate in the
/// target. Throws TranslationError on shapes outside the clause table.
FormulaPtr tau(const FormulaPtr& a);
/// External translation L_T->(P) -> L_TF.
FormulaPtr sigma(const FormulaPtr& a);

/// tau on codes: encode(tau(decode x)) when x codes a formula tau accepts,
/// otherwise <1, x> (a variable code, disjoint from every formula code).
Nat tau_code(const Nat& x);

/// Classical structure for L_{T,F}: standard arithmetic, quantifiers over
/// 0..domain-1, Tr and F read through the two predicates.
struct ClassicalInterp {
  std::function<bool(const Nat&)> in_t, in_f;
  unsigned domain = 3;
  std::optional<std::set<Nat>> p;
};
/// Throws TranslationError on letters, free variables or an uninterpreted P.
bool classical_eval(const ClassicalInterp& m, const FormulaPtr& a);

/// 𝕋 and 𝔽 derived from the minimal fixed point of a universe.
class TranslationContext {
 public:
  TranslationContext(const sem::Universe& u, sem::PExt p = std::nullopt);

  const sem::Universe& universe() const { return *u_; }
  const sem::Members& min() const { return min_; }
  /// x = τ(φ) for some φ ∈ MIN.
  bool in_t(const Nat& x) const;
  /// x = τ(φ) for some φ with ¬φ ∈ MIN, or x = τ(y) for some y that is not a
  /// sentence (decided exactly on the image of tau_code).
  bool in_f(const Nat& x) const;
  ClassicalInterp interp() const;

 private:
  const sem::Universe* u_;
  sem::PExt p_;
  sem::Members min_;
  std::set<Nat> t_codes_, neg_codes_;  // τ-codes of MIN, of the φ with ¬φ ∈ MIN
};

struct TranslationReport {
  std::size_t members = 0, neg_transfer = 0, kfl = 0;
  std::vector<std::string> failures;
  bool ok() const { return failures.empty(); }
};
/// (a) φ ∈ MIN iff φ^τ is classically true, (b) 𝕋τ(¬̇x) ≡ 𝔽τ(x) on universe
/// sentences, (c) (⋀Γ→⋁Δ)^σ true for every KFL instance over the universe.
TranslationReport audit_translation(const TranslationContext& ctx);

}  // namespace hype
