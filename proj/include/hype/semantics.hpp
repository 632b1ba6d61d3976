#pragma once

#include <map>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include "hype/kernel.hpp"
#include "hype/nat.hpp"
#include "hype/syntax.hpp"

namespace hype::sem {

/// ⟨W, ≤, *⟩ with W = {0..n-1}.
struct Frame {
  unsigned n = 1;
  std::vector<std::vector<bool>> le;  // le[w][v]: w ≤ v
  std::vector<unsigned> star;

  static Frame single();
  /// Preorder, * antimonotone and involutive.
  bool is_routley() const;
};

/// Constant-domain model. Letters, Tr, F and P get per-state extensions;
/// = and the function symbols are the standard ones at every state.
struct Model {
  Frame frame;
  std::vector<Nat> domain;
  std::vector<std::vector<bool>> letters;  // letters[w][i]
  std::vector<std::set<Nat>> tr, f, p;     // per state; empty vector = uninterpreted

  /// v ≤ w implies every extension at v is contained in the one at w.
  bool hereditary() const;
};

class SemanticsError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

using Assignment = std::map<unsigned, Nat>;

bool force(const Model& m, unsigned w, const Assignment& sigma, const FormulaPtr& a);
inline bool force(const Model& m, unsigned w, const FormulaPtr& a) { return force(m, w, {}, a); }
/// Forced at every state.
bool valid(const Model& m, const Sequent& s);
bool forces_sequent(const Model& m, unsigned w, const Sequent& s);

struct SearchResult {
  enum class Status { Found, None, Inconclusive } status = Status::None;
  std::optional<Model> model;
  unsigned state = 0;          // refuting state when found
  std::size_t frames = 0;      // canonical frames visited
  std::string note;
};
/// Exhaustive search over Routley frames with at most max_states states (one
/// per isomorphism class) and hereditary letter valuations. The sequent must
/// be propositional (letters, ⊥, closed equations).
SearchResult countermodel(const Sequent& s, unsigned max_states, unsigned max_atoms);
/// All Routley frames of size n, one per isomorphism class.
std::vector<Frame> canonical_frames(unsigned n);

// ------------------------------------------------------------ sentence universes

struct UniverseSpec {
  std::vector<FormulaPtr> seeds;
  unsigned tr_depth = 0;
  bool liar = false, truthteller = false;
  unsigned domain = 3;           // ∀ ranges over numerals 0..domain-1
  std::size_t max_size = 20000;
};

/// Finite closure of the seeds: subformulas, ∀-instances over the domain,
/// Tr-unfolding, Tr-wrapping up to tr_depth, plus one negation of each.
struct Universe {
  struct Entry {
    Nat code;
    FormulaPtr formula;
    unsigned tr_depth = 0;
  };
  /// One step of the positive inductive definition for an entry.
  struct Clause {
    enum class Kind { Const, Any, All, PAtom, NegPAtom } kind = Kind::Const;
    bool value = false;
    std::vector<std::size_t> deps;
    Nat pval;
  };
  std::vector<Entry> entries;
  std::vector<Clause> clauses;
  // neg[i]: index of ¬φ_i; pos[i]: index of ψ when φ_i = ¬ψ.
  std::vector<std::optional<std::size_t>> neg, pos;
  std::map<Nat, std::size_t> index;
  unsigned domain = 3;
  std::optional<Nat> liar, truthteller;

  std::size_t size() const { return entries.size(); }
  bool contains(const Nat& c) const { return index.count(c) != 0; }
  std::optional<std::size_t> find(const Nat& c) const;
  std::optional<std::size_t> find(const FormulaPtr& f) const;
};

using Members = std::vector<bool>;  // indexed like Universe::entries

class ClosureError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

Universe build_universe(const UniverseSpec& spec);
/// L with val(t) = ⌜L⌝ for L = ¬Tr(t), and T = Tr(t') with val(t') = ⌜T⌝.
FormulaPtr liar_sentence();
FormulaPtr truthteller_sentence();

/// Extension of P, when the operator is relativized.
using PExt = std::optional<std::set<Nat>>;

Members phi_step(const Universe& u, const Members& x, const PExt& p = std::nullopt);
Members min_fixed_point(const Universe& u, const PExt& p = std::nullopt);
Members max_fixed_point(const Universe& u, const PExt& p = std::nullopt);
/// {φ ∈ u | ¬φ ∉ S}; ¬¬ψ outside u is read through ψ.
Members star(const Universe& u, const Members& s);
bool subset(const Members& a, const Members& b);
std::set<Nat> codes(const Universe& u, const Members& s);

/// States 0 = MIN, 1 = MAX, MIN ≤ MAX, * swaps them, Tr^w the fixed point.
Model build_model(const Universe& u, const PExt& p = std::nullopt);

struct KflInstance {
  std::string axiom;
  Sequent sequent;
};
/// KFL1-6 instances (KFL5 in numeral form) over the universe, and KFL-P when p is set.
std::vector<KflInstance> kfl_instances(const Universe& u, bool with_p);

struct AuditReport {
  std::size_t checked = 0;
  std::vector<std::pair<KflInstance, unsigned>> violations;  // instance, state
  bool ok() const { return violations.empty(); }
};
AuditReport audit_kfl(const Model& m, const Universe& u, bool with_p = false);

/// Members A of u (→-free) at which m fails to force Tr⌜A⌝ ↔ A at state w.
std::vector<Nat> disquotation_failures(const Model& m, const Universe& u, unsigned w);

// Model dump as JSON (states, ≤, *, extensions as sorted code lists).
std::string model_to_json(const Model& m);
Model model_from_json(const std::string& text);

}  // namespace hype::sem
