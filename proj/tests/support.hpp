#pragma once

#include <random>
#include <string>
#include <utility>
#include <vector>

#include "hype/ordinal.hpp"

namespace testsupport {

using hype::ord::Ordinal;

// Random normal notation built through the public constructors.
inline Ordinal random_ordinal(std::mt19937& rng, int depth, bool allow_veblen = true) {
  std::uniform_int_distribution<int> terms(0, 3);
  Ordinal r;
  int n = terms(rng);
  for (int i = 0; i < n; ++i) {
    Ordinal t;
    int kind = depth <= 0 ? 0 : std::uniform_int_distribution<int>(0, allow_veblen ? 3 : 2)(rng);
    if (kind == 0) {
      t = Ordinal::one();
    } else if (kind == 3) {
      t = hype::ord::veblen(random_ordinal(rng, depth - 1, allow_veblen),
                            random_ordinal(rng, depth - 1, allow_veblen));
    } else {
      t = hype::ord::omega_pow(random_ordinal(rng, depth - 1, allow_veblen));
    }
    r = hype::ord::add(r, t);
  }
  return r;
}

}  // namespace testsupport

#include "hype/syntax.hpp"

namespace testsupport {

inline hype::TermPtr random_term(std::mt19937& rng, int depth) {
  using namespace hype;
  int k = std::uniform_int_distribution<int>(0, depth <= 0 ? 1 : 5)(rng);
  switch (k) {
    case 0: return var(std::uniform_int_distribution<unsigned>(0, 3)(rng));
    case 1: return num(std::uniform_int_distribution<unsigned>(0, 20)(rng));
    case 2: return succ(random_term(rng, depth - 1));
    case 3: return plus(random_term(rng, depth - 1), random_term(rng, depth - 1));
    case 4: return times(random_term(rng, depth - 1), random_term(rng, depth - 1));
    default: {
      Fn f = static_cast<Fn>(std::uniform_int_distribution<int>(0, kFnCount - 1)(rng));
      std::vector<TermPtr> args;
      for (int i = 0; i < fn_info(f).arity; ++i) args.push_back(random_term(rng, depth - 1));
      return app(f, std::move(args));
    }
  }
}

// Random formula over all constructors; feature_mask limits Imp/Tr/F/P.
inline hype::FormulaPtr random_formula(std::mt19937& rng, int depth, std::uint8_t feature_mask = 0xff,
                                       bool letters = true) {
  using namespace hype;
  std::uniform_int_distribution<int> pick(0, depth <= 0 ? 5 : 9);
  for (;;) {
    int k = pick(rng);
    switch (k) {
      case 0: return bot();
      case 1: return eq(random_term(rng, 2), random_term(rng, 2));
      case 2:
        if (feature_mask & kFeatTr) return tr(random_term(rng, 2));
        break;
      case 3:
        if (feature_mask & kFeatF) return fpred(random_term(rng, 2));
        break;
      case 4:
        if (feature_mask & kFeatP) return ppred(random_term(rng, 2));
        break;
      case 5:
        if (letters) return atom(std::uniform_int_distribution<unsigned>(0, 5)(rng));
        break;
      case 6: return neg(random_formula(rng, depth - 1, feature_mask, letters));
      case 7:
        return disj(random_formula(rng, depth - 1, feature_mask, letters),
                    random_formula(rng, depth - 1, feature_mask, letters));
      case 8:
        if (feature_mask & kFeatImp)
          return imp(random_formula(rng, depth - 1, feature_mask, letters),
                     random_formula(rng, depth - 1, feature_mask, letters));
        break;
      case 9:
        return forall(std::uniform_int_distribution<unsigned>(0, 4)(rng),
                      random_formula(rng, depth - 1, feature_mask, letters));
    }
  }
}

// Closed arithmetic formula (no Tr, F, P, letters or →) of rank at most max_rank.
inline hype::FormulaPtr random_arith_sentence(std::mt19937& rng, unsigned max_rank) {
  using namespace hype;
  for (;;) {
    FormulaPtr f = random_formula(rng, 4, 0, false);
    for (unsigned v : VarSet(f->fv)) f = forall(v, f);
    if (f->rank <= max_rank && f->rank >= 2) return f;
  }
}

// Propositional QN° axiom instances, metavariables ranging over `pool`.
inline std::vector<std::pair<std::string, hype::FormulaPtr>> qn_instances(
    const std::vector<hype::FormulaPtr>& pool) {
  using namespace hype;
  std::vector<std::pair<std::string, FormulaPtr>> out;
  for (const auto& a : pool) {
    out.emplace_back("dn-elim", imp(neg(neg(a)), a));
    out.emplace_back("dn-intro", imp(a, neg(neg(a))));
    for (const auto& b : pool) {
      out.emplace_back("k", imp(a, imp(b, a)));
      out.emplace_back("and-l", imp(conj(a, b), a));
      out.emplace_back("and-r", imp(conj(a, b), b));
      out.emplace_back("or-l", imp(a, disj(a, b)));
      out.emplace_back("or-r", imp(b, disj(a, b)));
      out.emplace_back("and-i", imp(a, imp(b, conj(a, b))));
      for (const auto& c : pool) {
        out.emplace_back("s", imp(imp(a, imp(b, c)), imp(imp(a, b), imp(a, c))));
        out.emplace_back("or-e", imp(imp(a, c), imp(imp(b, c), imp(disj(a, b), c))));
      }
    }
  }
  return out;
}

}  // namespace testsupport
