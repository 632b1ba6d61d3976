#pragma once

#include "hype/nat.hpp"
#include "hype/ordinal.hpp"
#include "hype/syntax.hpp"

namespace hype {

/// A formula with one distinguished free ordinal variable.
struct OrdinalPredicate {
  FormulaPtr body;
  unsigned slot;

  FormulaPtr at(const TermPtr& t) const { return substitute(body, slot, t); }
  /// Smallest variable index unused by the body and the slot.
  unsigned fresh() const;
};

/// ∀v(v ≺ bound → body).
FormulaPtr bounded_all(unsigned v, TermPtr bound, FormulaPtr body);

/// Prog(A) := ∀η(∀ζ(ζ≺η → A(ζ)) → A(η)).
FormulaPtr prog(const OrdinalPredicate& a);
/// ∀ξ(ξ ≺ bound → A(ξ)).
FormulaPtr below(const OrdinalPredicate& a, const TermPtr& bound);

/// A⁺(θ) := ∀ξ(∀η(η≺ξ→A(η)) → ∀η(η≺ξ+ω^θ→A(η))), slot θ.
OrdinalPredicate gentzen_jump(const OrdinalPredicate& a);

/// 𝒥(B, c) := ∀η(∀ζ(ζ≺η→B(ζ)) → ∀ζ(ζ≺η+c→B(ζ))).
FormulaPtr jump_pattern(const OrdinalPredicate& b, const TermPtr& c);

/// 𝒜(Tr f^ξ, ξ, y) := ∀z(h(ξ) ⪯ z ∧ z ≺ ξ → 𝒥(Tr f^ξ_z, φ_{e(ξ)} y)), with
/// h(ξ), e(ξ) and ξ as numerals. Throws std::invalid_argument for ξ = 0.
FormulaPtr veblen_jump(const ord::Ordinal& xi, unsigned y);

/// Code of f_ζ(x) with x = v0 free: ⌜P v0⌝ for ζ = 0, else ⌜𝒜(Tr f^ζ, ζ, v0)⌝.
Nat build_f(const ord::Ordinal& zeta);
/// Formula decoded from build_f(zeta).
FormulaPtr f_template(const ord::Ordinal& zeta);

/// f_z(n): build_f(z) with the numeral of n for v0; 0 when z is not a notation.
Nat fh_code(const Nat& z, const Nat& n);
/// f^ζ(p) := ⌜p0 ≺ ζ ∧ Tr f_{p0}(p1)⌝ for p = (p0, p1).
Nat fhr_code(const Nat& zeta, const Nat& p);

}  // namespace hype
