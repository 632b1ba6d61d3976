#include "hype/semantics.hpp"

#include <algorithm>
#include <deque>
#include <functional>
#include <numeric>

#include "json.hpp"

#include "hype/code.hpp"
#include "hype/parse.hpp"

namespace hype::sem {

// ---------------------------------------------------------------- frames

Frame Frame::single() {
  Frame f;
  f.n = 1;
  f.le = {{true}};
  f.star = {0};
  return f;
}

bool Frame::is_routley() const {
  if (le.size() != n || star.size() != n) return false;
  for (unsigned w = 0; w < n; ++w) {
    if (!le[w][w] || star[w] >= n || star[star[w]] != w) return false;
    for (unsigned v = 0; v < n; ++v) {
      if (!le[w][v]) continue;
      if (!le[star[v]][star[w]]) return false;
      for (unsigned x = 0; x < n; ++x)
        if (le[v][x] && !le[w][x]) return false;
    }
  }
  return true;
}

bool Model::hereditary() const {
  auto mono = [&](const std::vector<std::set<Nat>>& ext, unsigned v, unsigned w) {
    return ext.empty() || std::includes(ext[w].begin(), ext[w].end(), ext[v].begin(), ext[v].end());
  };
  for (unsigned v = 0; v < frame.n; ++v)
    for (unsigned w = 0; w < frame.n; ++w) {
      if (!frame.le[v][w]) continue;
      if (!mono(tr, v, w) || !mono(f, v, w) || !mono(p, v, w)) return false;
      if (!letters.empty())
        for (std::size_t i = 0; i < letters[v].size(); ++i)
          if (letters[v][i] && !letters[w][i]) return false;
    }
  return true;
}

// ---------------------------------------------------------------- forcing

namespace {

bool member(const std::vector<std::set<Nat>>& ext, unsigned w, const Nat& x, const char* what) {
  if (ext.empty()) throw SemanticsError(std::string("uninterpreted predicate ") + what);
  return ext[w].count(x) != 0;
}

bool force_closed(const Model& m, unsigned w, const FormulaPtr& a) {
  using K = Formula::Kind;
  switch (a->kind) {
    case K::Bot: return false;
    case K::Eq: return eval_term(*a->lhs) == eval_term(*a->rhs);
    case K::Tr: return member(m.tr, w, eval_term(*a->lhs), "Tr");
    case K::F: return member(m.f, w, eval_term(*a->lhs), "F");
    case K::P: return member(m.p, w, eval_term(*a->lhs), "P");
    case K::Atom:
      if (m.letters.empty() || a->index >= m.letters[w].size())
        throw SemanticsError("uninterpreted letter " + print(*a));
      return m.letters[w][a->index];
    case K::Neg: return !force_closed(m, m.frame.star[w], a->a);
    case K::Or: return force_closed(m, w, a->a) || force_closed(m, w, a->b);
    case K::Imp:
      for (unsigned v = 0; v < m.frame.n; ++v)
        if (m.frame.le[w][v] && force_closed(m, v, a->a) && !force_closed(m, v, a->b)) return false;
      return true;
    case K::All:
      for (const Nat& d : m.domain)
        if (!force_closed(m, w, substitute(a->a, a->index, num(d)))) return false;
      return true;
  }
  return false;
}

}  // namespace

bool force(const Model& m, unsigned w, const Assignment& sigma, const FormulaPtr& a) {
  FormulaPtr b = a;
  for (const auto& [v, d] : sigma) b = substitute(b, v, num(d));
  if (!b->fv.empty()) throw SemanticsError("unassigned variable in " + print(*a));
  return force_closed(m, w, b);
}

bool forces_sequent(const Model& m, unsigned w, const Sequent& s) {
  for (const auto& g : s.ante)
    if (!force(m, w, g)) return true;
  for (const auto& d : s.succ)
    if (force(m, w, d)) return true;
  return false;
}

bool valid(const Model& m, const Sequent& s) {
  for (unsigned w = 0; w < m.frame.n; ++w)
    if (!forces_sequent(m, w, s)) return false;
  return true;
}

// ---------------------------------------------------------------- countermodel search

namespace {

// Frame key under a relabelling perm (new name of state i is perm[i]).
std::vector<unsigned> frame_key(const Frame& f, const std::vector<unsigned>& perm) {
  std::vector<unsigned> inv(f.n);
  for (unsigned i = 0; i < f.n; ++i) inv[perm[i]] = i;
  std::vector<unsigned> key;
  for (unsigned a = 0; a < f.n; ++a)
    for (unsigned b = 0; b < f.n; ++b) key.push_back(f.le[inv[a]][inv[b]]);
  for (unsigned a = 0; a < f.n; ++a) key.push_back(perm[f.star[inv[a]]]);
  return key;
}

using Mask = unsigned;

Mask mask_of(const FormulaPtr& a, const Frame& fr, const std::vector<Mask>& letters) {
  using K = Formula::Kind;
  Mask all = (1u << fr.n) - 1;
  switch (a->kind) {
    case K::Bot: return 0;
    case K::Eq: return eval_term(*a->lhs) == eval_term(*a->rhs) ? all : 0;
    case K::Atom: return letters[a->index];
    case K::Neg: {
      Mask m = mask_of(a->a, fr, letters), r = 0;
      for (unsigned w = 0; w < fr.n; ++w)
        if (!(m >> fr.star[w] & 1)) r |= 1u << w;
      return r;
    }
    case K::Or: return mask_of(a->a, fr, letters) | mask_of(a->b, fr, letters);
    case K::Imp: {
      Mask x = mask_of(a->a, fr, letters), y = mask_of(a->b, fr, letters), r = 0;
      for (unsigned w = 0; w < fr.n; ++w) {
        bool ok = true;
        for (unsigned v = 0; v < fr.n && ok; ++v)
          if (fr.le[w][v] && (x >> v & 1) && !(y >> v & 1)) ok = false;
        if (ok) r |= 1u << w;
      }
      return r;
    }
    default: throw SemanticsError("not propositional: " + print(*a));
  }
}

void collect_letters(const FormulaPtr& a, std::set<unsigned>& out) {
  if (a->kind == Formula::Kind::Atom) out.insert(a->index);
  if (a->kind == Formula::Kind::Tr || a->kind == Formula::Kind::F || a->kind == Formula::Kind::P ||
      a->kind == Formula::Kind::All)
    throw SemanticsError("not propositional: " + print(*a));
  if (a->kind == Formula::Kind::Eq && !a->fv.empty()) throw SemanticsError("open equation " + print(*a));
  if (a->a) collect_letters(a->a, out);
  if (a->b) collect_letters(a->b, out);
}

std::vector<Mask> upsets(const Frame& fr) {
  std::vector<Mask> out;
  for (Mask m = 0; m < (1u << fr.n); ++m) {
    bool ok = true;
    for (unsigned w = 0; w < fr.n && ok; ++w)
      for (unsigned v = 0; v < fr.n && ok; ++v)
        if ((m >> w & 1) && fr.le[w][v] && !(m >> v & 1)) ok = false;
    if (ok) out.push_back(m);
  }
  return out;
}

}  // namespace

std::vector<Frame> canonical_frames(unsigned n) {
  std::vector<Frame> out;
  if (n == 0 || n > 4) throw std::invalid_argument("frame size must be 1..4");
  std::vector<std::pair<unsigned, unsigned>> off;
  for (unsigned a = 0; a < n; ++a)
    for (unsigned b = 0; b < n; ++b)
      if (a != b) off.emplace_back(a, b);
  std::vector<std::vector<unsigned>> perms;
  std::vector<unsigned> perm(n);
  std::iota(perm.begin(), perm.end(), 0u);
  do perms.push_back(perm);
  while (std::next_permutation(perm.begin(), perm.end()));
  std::vector<std::vector<unsigned>> involutions;
  for (const auto& p : perms) {
    bool inv = true;
    for (unsigned i = 0; i < n; ++i) inv = inv && p[p[i]] == i;
    if (inv) involutions.push_back(p);
  }
  for (unsigned long bits = 0; bits < (1ul << off.size()); ++bits) {
    Frame f;
    f.n = n;
    f.le.assign(n, std::vector<bool>(n, false));
    for (unsigned i = 0; i < n; ++i) f.le[i][i] = true;
    for (std::size_t k = 0; k < off.size(); ++k)
      if (bits >> k & 1) f.le[off[k].first][off[k].second] = true;
    for (const auto& s : involutions) {
      f.star = s;
      if (!f.is_routley()) continue;
      auto key = frame_key(f, perms[0]);
      bool minimal = true;
      for (const auto& p : perms)
        if (frame_key(f, p) < key) {
          minimal = false;
          break;
        }
      if (minimal) out.push_back(f);
    }
  }
  return out;
}

SearchResult countermodel(const Sequent& s, unsigned max_states, unsigned max_atoms) {
  SearchResult res;
  std::set<unsigned> used;
  for (const auto& f : s.ante) collect_letters(f, used);
  for (const auto& f : s.succ) collect_letters(f, used);
  if (used.size() > max_atoms) {
    res.status = SearchResult::Status::Inconclusive;
    res.note = "sequent has " + std::to_string(used.size()) + " letters, bound is " + std::to_string(max_atoms);
    return res;
  }
  if (max_states > 4) {
    res.status = SearchResult::Status::Inconclusive;
    res.note = "state bound above 4 not supported";
    return res;
  }
  std::vector<unsigned> letters(used.begin(), used.end());
  unsigned nletters = letters.empty() ? 0 : letters.back() + 1;
  for (unsigned n = 1; n <= max_states; ++n)
    for (const Frame& fr : canonical_frames(n)) {
      ++res.frames;
      auto ups = upsets(fr);
      std::vector<std::size_t> choice(letters.size(), 0);
      for (;;) {
        std::vector<Mask> val(nletters, 0);
        for (std::size_t i = 0; i < letters.size(); ++i) val[letters[i]] = ups[choice[i]];
        Mask bad = (1u << n) - 1;
        for (const auto& g : s.ante) bad &= mask_of(g, fr, val);
        for (const auto& d : s.succ) bad &= ~mask_of(d, fr, val);
        if (bad) {
          Model m;
          m.frame = fr;
          m.domain = {0};
          m.letters.assign(n, std::vector<bool>(nletters, false));
          for (unsigned w = 0; w < n; ++w)
            for (unsigned i = 0; i < nletters; ++i) m.letters[w][i] = val[i] >> w & 1;
          res.status = SearchResult::Status::Found;
          res.state = static_cast<unsigned>(__builtin_ctz(bad));
          res.model = std::move(m);
          return res;
        }
        std::size_t k = 0;
        while (k < choice.size() && ++choice[k] == ups.size()) choice[k++] = 0;
        if (k == choice.size()) break;
      }
    }
  res.status = SearchResult::Status::None;
  return res;
}

// ---------------------------------------------------------------- universes

std::optional<std::size_t> Universe::find(const Nat& c) const {
  auto it = index.find(c);
  if (it == index.end()) return std::nullopt;
  return it->second;
}

std::optional<std::size_t> Universe::find(const FormulaPtr& f) const { return find(encode(*f)); }

namespace {

Nat tagged_neg(const Nat& c) { return tagged(tag::Neg, c); }

FormulaPtr diagonal(bool negated) {
  // D(v0) := [¬]Tr(sub(v0, ⌜v0⌝, num(v0))), sentence D(⌜D⌝).
  TermPtr t = app(Fn::Sub, {var(0), num(var_code(0)), app(Fn::Num, {var(0)})});
  FormulaPtr d = tr(t);
  if (negated) d = neg(d);
  return substitute(d, 0, num(encode(*d)));
}

void require_lt(const FormulaPtr& f) {
  using K = Formula::Kind;
  switch (f->kind) {
    case K::Imp: throw ClosureError("conditional in universe sentence");
    case K::F: throw ClosureError("F in universe sentence");
    case K::Atom: throw ClosureError("sentence letter in universe sentence");
    default: break;
  }
}

}  // namespace

FormulaPtr liar_sentence() { return diagonal(true); }
FormulaPtr truthteller_sentence() { return diagonal(false); }

Universe build_universe(const UniverseSpec& spec) {
  Universe u;
  u.domain = spec.domain;
  std::vector<std::pair<Nat, FormulaPtr>> closed;  // C, in insertion order
  std::map<Nat, std::size_t> seen;
  std::deque<FormulaPtr> work;
  auto add = [&](const FormulaPtr& f) -> bool {
    if (!f->fv.empty()) throw ClosureError("not a sentence: " + print(*f));
    Nat c = encode(*f);
    if (seen.count(c)) return false;
    if (seen.size() >= spec.max_size) throw ClosureError("universe exceeds size cap");
    seen.emplace(c, closed.size());
    closed.emplace_back(c, f);
    work.push_back(f);
    return true;
  };
  auto saturate = [&] {
    while (!work.empty()) {
      FormulaPtr f = work.front();
      work.pop_front();
      require_lt(f);
      using K = Formula::Kind;
      switch (f->kind) {
        case K::Neg: add(f->a); break;
        case K::Or:
          add(f->a);
          add(f->b);
          break;
        case K::All:
          for (unsigned n = 0; n < spec.domain; ++n) add(substitute(f->a, f->index, num(n)));
          break;
        case K::Tr: {
          Nat v = eval_term(*f->lhs);
          if (!seen.count(v) && is_lt_sentence_code(v)) add(decode_formula_or_throw(v));
          break;
        }
        default: break;
      }
    }
  };
  for (const auto& s : spec.seeds) add(s);
  if (spec.liar) {
    u.liar = encode(*liar_sentence());
    add(liar_sentence());
  }
  if (spec.truthteller) {
    u.truthteller = encode(*truthteller_sentence());
    add(truthteller_sentence());
  }
  saturate();
  std::size_t level_begin = 0, level_end = closed.size();
  for (unsigned k = 0; k < spec.tr_depth; ++k) {
    for (std::size_t i = level_begin; i < level_end; ++i) add(tr(num(closed[i].first)));
    level_begin = level_end;
    saturate();
    level_end = closed.size();
  }
  std::size_t base = closed.size();
  std::vector<std::optional<std::size_t>> negs(base), poss;
  for (std::size_t i = 0; i < base; ++i) {
    FormulaPtr n = neg(closed[i].second);
    Nat c = tagged_neg(closed[i].first);
    auto it = seen.find(c);
    if (it == seen.end()) {
      it = seen.emplace(c, closed.size()).first;
      closed.emplace_back(c, n);
    }
    negs[i] = it->second;
  }
  if (closed.size() > spec.max_size) throw ClosureError("universe exceeds size cap");
  negs.resize(closed.size());
  poss.resize(closed.size());
  for (std::size_t i = 0; i < closed.size(); ++i)
    if (negs[i]) poss[*negs[i]] = i;
  for (std::size_t i = 0; i < closed.size(); ++i) {
    const FormulaPtr& f = closed[i].second;
    if (f->kind == Formula::Kind::Neg && !poss[i]) {
      auto it = seen.find(encode(*f->a));
      if (it != seen.end()) poss[i] = it->second;
    }
  }
  u.neg = std::move(negs);
  u.pos = std::move(poss);
  for (auto& [c, f] : closed) {
    u.index.emplace(c, u.entries.size());
    u.entries.push_back({c, f, 0});
  }
  // Quotation depth, via membership of quoted codes.
  std::vector<int> depth(u.size(), -1);
  std::function<unsigned(std::size_t)> qd = [&](std::size_t i) -> unsigned {
    if (depth[i] >= 0) return unsigned(depth[i]);
    depth[i] = 0;  // cycles (diagonal sentences) bottom out here
    std::function<unsigned(const FormulaPtr&)> go = [&](const FormulaPtr& f) -> unsigned {
      if (f->kind == Formula::Kind::Tr && f->lhs->kind == Term::Kind::Num)
        if (auto j = u.find(f->lhs->num)) return 1 + qd(*j);
      unsigned d = 0;
      if (f->a) d = std::max(d, go(f->a));
      if (f->b) d = std::max(d, go(f->b));
      return d;
    };
    unsigned d = go(u.entries[i].formula);
    depth[i] = int(d);
    return d;
  };
  for (std::size_t i = 0; i < u.size(); ++i) u.entries[i].tr_depth = qd(i);

  // Φ clauses.
  auto need = [&](const FormulaPtr& f) {
    auto i = u.find(f);
    if (!i) throw ClosureError("closure violation: " + print(*f) + " missing");
    return *i;
  };
  using C = Universe::Clause::Kind;
  u.clauses.resize(u.entries.size());
  for (std::size_t i = 0; i < u.entries.size(); ++i) {
    const FormulaPtr& f = u.entries[i].formula;
    auto& cl = u.clauses[i];
    using K = Formula::Kind;
    auto constant = [&](bool v) {
      cl.kind = C::Const;
      cl.value = v;
    };
    switch (f->kind) {
      case K::Bot: constant(false); break;
      case K::Eq: constant(eval_term(*f->lhs) == eval_term(*f->rhs)); break;
      case K::P:
        cl.kind = C::PAtom;
        cl.pval = eval_term(*f->lhs);
        break;
      case K::Tr: {
        Nat v = eval_term(*f->lhs);
        if (auto j = u.find(v)) {
          cl.kind = C::Any;
          cl.deps = {*j};
        } else if (!is_lt_sentence_code(v)) {
          constant(false);
        } else {
          throw ClosureError("closure violation: " + print(*f) + " unfolds outside the universe");
        }
        break;
      }
      case K::Or:
        cl.kind = C::Any;
        cl.deps = {need(f->a), need(f->b)};
        break;
      case K::All:
        cl.kind = C::All;
        for (unsigned n = 0; n < u.domain; ++n) cl.deps.push_back(need(substitute(f->a, f->index, num(n))));
        break;
      case K::Neg: {
        const FormulaPtr& g = f->a;
        switch (g->kind) {
          case K::Bot: constant(true); break;
          case K::Eq: constant(eval_term(*g->lhs) != eval_term(*g->rhs)); break;
          case K::P:
            cl.kind = C::NegPAtom;
            cl.pval = eval_term(*g->lhs);
            break;
          case K::Tr: {
            Nat v = eval_term(*g->lhs);
            auto j = u.find(v);
            if (j && u.neg[*j]) {
              cl.kind = C::Any;
              cl.deps = {*u.neg[*j]};
            } else if (!j && !is_lt_sentence_code(v)) {
              constant(true);
            } else {
              throw ClosureError("closure violation: " + print(*f) + " unfolds outside the universe");
            }
            break;
          }
          case K::Neg: {
            auto j = u.pos[i] ? u.pos[*u.pos[i]] : std::nullopt;
            if (!j) throw ClosureError("closure violation: " + print(*g->a) + " missing");
            cl.kind = C::Any;
            cl.deps = {*j};
            break;
          }
          case K::Or:
            cl.kind = C::All;
            cl.deps = {need(neg(g->a)), need(neg(g->b))};
            break;
          case K::All:
            cl.kind = C::Any;
            for (unsigned n = 0; n < u.domain; ++n) cl.deps.push_back(need(neg(substitute(g->a, g->index, num(n)))));
            break;
          default: throw ClosureError("unsupported sentence " + print(*f));
        }
        break;
      }
      default: throw ClosureError("unsupported sentence " + print(*f));
    }
  }
  return u;
}

// ---------------------------------------------------------------- the operator

Members phi_step(const Universe& u, const Members& x, const PExt& p) {
  if (x.size() != u.size()) throw std::invalid_argument("set is not over this universe");
  Members out(u.size(), false);
  using C = Universe::Clause::Kind;
  for (std::size_t i = 0; i < u.size(); ++i) {
    const auto& cl = u.clauses[i];
    switch (cl.kind) {
      case C::Const: out[i] = cl.value; break;
      case C::Any:
        out[i] = std::any_of(cl.deps.begin(), cl.deps.end(), [&](std::size_t d) { return x[d]; });
        break;
      case C::All:
        out[i] = std::all_of(cl.deps.begin(), cl.deps.end(), [&](std::size_t d) { return x[d]; });
        break;
      case C::PAtom: out[i] = p && p->count(cl.pval); break;
      case C::NegPAtom: out[i] = p && !p->count(cl.pval); break;
    }
  }
  return out;
}

namespace {
Members iterate(const Universe& u, Members s, const PExt& p) {
  for (;;) {
    Members next = phi_step(u, s, p);
    if (next == s) return s;
    s = std::move(next);
  }
}
}  // namespace

Members min_fixed_point(const Universe& u, const PExt& p) { return iterate(u, Members(u.size(), false), p); }
Members max_fixed_point(const Universe& u, const PExt& p) { return iterate(u, Members(u.size(), true), p); }

Members star(const Universe& u, const Members& s) {
  Members out(u.size(), false);
  for (std::size_t i = 0; i < u.size(); ++i) {
    if (u.neg[i]) {
      out[i] = !s[*u.neg[i]];
    } else if (u.pos[i]) {
      out[i] = !s[*u.pos[i]];
    } else {
      throw ClosureError("closure violation under star");
    }
  }
  return out;
}

bool subset(const Members& a, const Members& b) {
  for (std::size_t i = 0; i < a.size(); ++i)
    if (a[i] && !b[i]) return false;
  return true;
}

std::set<Nat> codes(const Universe& u, const Members& s) {
  std::set<Nat> out;
  for (std::size_t i = 0; i < u.size(); ++i)
    if (s[i]) out.insert(u.entries[i].code);
  return out;
}

Model build_model(const Universe& u, const PExt& p) {
  Members lo = min_fixed_point(u, p), hi = max_fixed_point(u, p);
  Model m;
  m.frame.n = 2;
  m.frame.le = {{true, true}, {false, true}};
  m.frame.star = {1, 0};
  for (unsigned d = 0; d < u.domain; ++d) m.domain.push_back(d);
  m.tr = {codes(u, lo), codes(u, star(u, lo))};
  if (p) m.p = {*p, *p};
  if (!m.hereditary()) throw SemanticsError("hereditariness fails: MIN is not below its star");
  return m;
}

// ---------------------------------------------------------------- KFL audit

std::vector<KflInstance> kfl_instances(const Universe& u, bool with_p) {
  std::vector<KflInstance> out;
  auto inst = [&](const std::string& id, const std::string& pattern, std::vector<std::pair<unsigned, Nat>> vals) {
    Sequent s = parse_sequent(pattern);
    auto sub = [&](std::vector<FormulaPtr> fs) {
      for (auto& f : fs)
        for (const auto& [v, c] : vals) f = substitute(f, v, num(c));
      return fs;
    };
    out.push_back({id, make_sequent(sub(s.ante), sub(s.succ))});
  };
  const std::string kfl5n = "sent(alldot(z, x)) = 1 & isvar(z) = 1 => Tr(alldot(z, x)) <-> all y. Tr(sub(x, z, num(y)))";
  // Non-sentence arguments: naturals that code no sentence.
  std::vector<Nat> junk;
  for (Nat k = 1; junk.size() < 3; ++k)
    if (!is_lt_sentence_code(k)) junk.push_back(k);

  for (std::size_t idx = 0; idx < u.size(); ++idx) {
    const auto& e = u.entries[idx];
    const FormulaPtr& f = e.formula;
    using K = Formula::Kind;
    switch (f->kind) {
      case K::Eq:
        inst("KFL1", axiom_pattern("KFL1"), {{0, encode(*f->lhs)}, {1, encode(*f->rhs)}});
        break;
      case K::Tr:
        if (f->lhs->kind == Term::Kind::Num) {
          const Nat& c = f->lhs->num;
          if (u.contains(c) || !is_lt_sentence_code(c)) inst("KFL2", axiom_pattern("KFL2"), {{0, c}});
        }
        break;
      case K::Or:
        inst("KFL4", axiom_pattern("KFL4"), {{0, encode(*f->a)}, {1, encode(*f->b)}});
        break;
      case K::All:
        inst("KFL5n", kfl5n, {{0, encode(*f->a)}, {2, var_code(f->index)}});
        break;
      default: break;
    }
    if (u.neg[idx]) inst("KFL3", axiom_pattern("KFL3"), {{0, e.code}});
    inst("KFL6", axiom_pattern("KFL6"), {{0, e.code}});
  }
  for (const Nat& k : junk) {
    inst("KFL3", axiom_pattern("KFL3"), {{0, k}});
    inst("KFL6", axiom_pattern("KFL6"), {{0, k}});
  }
  if (with_p)
    for (unsigned n = 0; n < u.domain; ++n)
      if (u.contains(encode(*ppred(num(n))))) inst("KFLP", axiom_pattern("KFLP"), {{0, Nat(n)}});
  return out;
}

AuditReport audit_kfl(const Model& m, const Universe& u, bool with_p) {
  AuditReport r;
  for (auto& i : kfl_instances(u, with_p)) {
    ++r.checked;
    for (unsigned w = 0; w < m.frame.n; ++w)
      if (!forces_sequent(m, w, i.sequent)) r.violations.emplace_back(i, w);
  }
  return r;
}

std::vector<Nat> disquotation_failures(const Model& m, const Universe& u, unsigned w) {
  std::vector<Nat> out;
  for (const auto& e : u.entries)
    if (!force(m, w, iff(tr(num(e.code)), e.formula))) out.push_back(e.code);
  return out;
}

// ---------------------------------------------------------------- JSON dump

std::string model_to_json(const Model& m) {
  using nlohmann::json;
  json j;
  j["states"] = m.frame.n;
  json le = json::array();
  for (unsigned w = 0; w < m.frame.n; ++w)
    for (unsigned v = 0; v < m.frame.n; ++v)
      if (m.frame.le[w][v]) le.push_back({w, v});
  j["le"] = le;
  j["star"] = m.frame.star;
  json dom = json::array();
  for (const auto& d : m.domain) dom.push_back(d.get_str());
  j["domain"] = dom;
  auto ext = [](const std::vector<std::set<Nat>>& e) {
    if (e.empty()) return json(nullptr);
    json a = json::array();
    for (const auto& s : e) {
      json l = json::array();
      for (const auto& c : s) l.push_back(c.get_str());
      a.push_back(l);
    }
    return a;
  };
  j["tr"] = ext(m.tr);
  j["f"] = ext(m.f);
  j["p"] = ext(m.p);
  if (!m.letters.empty()) {
    json l = json::array();
    for (const auto& row : m.letters) {
      json r = json::array();
      for (bool b : row) r.push_back(b);
      l.push_back(r);
    }
    j["letters"] = l;
  }
  return j.dump(1);
}

Model model_from_json(const std::string& text) {
  using nlohmann::json;
  json j = json::parse(text);
  Model m;
  m.frame.n = j.at("states").get<unsigned>();
  m.frame.le.assign(m.frame.n, std::vector<bool>(m.frame.n, false));
  for (const auto& e : j.at("le")) m.frame.le[e[0].get<unsigned>()][e[1].get<unsigned>()] = true;
  m.frame.star = j.at("star").get<std::vector<unsigned>>();
  for (const auto& d : j.at("domain")) m.domain.emplace_back(d.get<std::string>());
  auto ext = [&](const char* key) {
    std::vector<std::set<Nat>> e;
    if (!j.contains(key) || j[key].is_null()) return e;
    for (const auto& s : j[key]) {
      std::set<Nat> st;
      for (const auto& c : s) st.emplace(c.get<std::string>());
      e.push_back(std::move(st));
    }
    return e;
  };
  m.tr = ext("tr");
  m.f = ext("f");
  m.p = ext("p");
  if (j.contains("letters"))
    for (const auto& row : j["letters"]) m.letters.push_back(row.get<std::vector<bool>>());
  if (!m.frame.is_routley()) throw SemanticsError("model frame is not a Routley frame");
  return m;
}

}  // namespace hype::sem
