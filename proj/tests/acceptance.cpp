// Acceptance run: one pass/fail line per criterion, each under its time limit.
#include <chrono>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <random>
#include <sstream>
#include <string>

#include "hype/cli.hpp"
#include "hype/code.hpp"
#include "hype/config.hpp"
#include "hype/derive.hpp"
#include "hype/jump.hpp"
#include "hype/kernel.hpp"
#include "hype/parse.hpp"
#include "hype/semantics.hpp"
#include "hype/translate.hpp"
#include "support.hpp"

using namespace hype;
namespace dv = hype::derive;
namespace fs = std::filesystem;
using ord::Ordinal;

namespace {

const std::string kRoot = HYPE_SOURCE_DIR;

std::string slurp(const std::string& rel) {
  std::ifstream in(kRoot + "/" + rel);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

// Failure text, empty when the criterion holds.
struct Outcome {
  std::string failure, note;
};

#define REQUIRE(cond, msg)          \
  do {                              \
    if (!(cond)) return {msg, ""};  \
  } while (0)

std::size_t tree_size(const DerivationPtr& d) {
  std::size_t n = 1;
  for (const auto& p : d->premises) n += tree_size(p);
  return n;
}

Outcome c1_tree_replay() {
  std::size_t nodes = 0;
  for (const char* f : {"top", "dn_intro", "dn_elim", "recapture_i", "recapture_ii", "lemma2_6"}) {
    std::string text = slurp(std::string("proofs/") + f + ".kfl");
    CheckReport r = check(read_script(text));
    REQUIRE(r.ok, std::string(f) + " rejected");
    nodes += r.nodes;
    auto [bad, line] = cli::mutate_script(text);
    REQUIRE(line > 0, std::string(f) + " has no node to mutate");
    CheckReport m = check(read_script(bad));
    REQUIRE(!m.ok && m.error && m.error->line == line, std::string(f) + " mutant not rejected at its node");
  }
  CheckOptions closed;
  closed.allow_hyp = false;
  REQUIRE(check(read_script(slurp("proofs/lemma2_6.kfl")), closed).ok, "lemma2_6 needs hypotheses");
  return {"", "6 trees, " + std::to_string(nodes) + " nodes, 6 mutants rejected"};
}

Outcome c2_recapture() {
  std::mt19937 rng(20);
  CheckOptions o;
  o.lang = Lang::LN;
  o.theory = Theory::G1hEq;
  o.allow_hyp = false;
  unsigned max_rank = 0;
  for (int i = 0; i < 20; ++i) {
    FormulaPtr a = testsupport::random_arith_sentence(rng, 6);
    max_rank = std::max(max_rank, a->rank);
    auto d = dv::derive_lem(a);
    REQUIRE(sequent_equal(d->conclusion, make_sequent({}, {a, neg(a)})), "wrong end sequent for " + print(*a));
    CheckReport r = check(d, o);
    REQUIRE(r.ok, "kernel rejected recapture of " + print(*a));
  }
  return {"", "20 sentences, max rank " + std::to_string(max_rank)};
}

Outcome c3_ti(double& n2_seconds) {
  OrdinalPredicate a{tr(app(Fn::FH, {num(0), var(0)})), 0};
  CheckOptions closed;
  closed.allow_hyp = false;
  std::size_t last = 0;
  std::string sizes;
  for (unsigned n = 0; n <= 2; ++n) {
    auto t0 = std::chrono::steady_clock::now();
    auto d = dv::derive_ti(a, n);
    CheckReport r = check(d, closed);
    double s = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (n == 2) n2_seconds = s;
    REQUIRE(r.ok, "TI n=" + std::to_string(n) + " rejected");
    REQUIRE(sequent_equal(d->conclusion, ti_sequent(a.body, 0, ord::omega_tower(n))), "wrong TI end sequent");
    std::size_t size = tree_size(d);
    REQUIRE(size > last, "derivation sizes not monotone");
    last = size;
    sizes += (n ? ", " : "") + std::string("n=") + std::to_string(n) + ":" + std::to_string(size);
  }
  REQUIRE(n2_seconds < 60.0, "n=2 too slow");
  return {"", "sizes " + sizes};
}

Outcome c4_semantics() {
  using St = sem::SearchResult::Status;
  for (const char* s : {"=> p | !p", "p & !p =>"}) {
    auto r = sem::countermodel(parse_sequent(s), 3, 2);
    REQUIRE(r.status == St::Found, std::string("no countermodel for ") + s);
    REQUIRE(!sem::forces_sequent(*r.model, r.state, parse_sequent(s)), "countermodel does not refute");
  }
  std::vector<FormulaPtr> pool;
  for (const char* s : {"p", "q", "!p", "!q", "p | q", "p & q", "p -> q"}) pool.push_back(parse_formula(s));
  auto inst = testsupport::qn_instances(pool);
  for (const auto& [name, f] : inst) {
    auto r = sem::countermodel(make_sequent({}, {f}), 3, 2);
    REQUIRE(r.status == St::None, name + " refuted: " + print(*f));
  }
  return {"", std::to_string(inst.size()) + " axiom instances valid"};
}

sem::Universe shipped(const std::string& name, sem::PExt* p = nullptr) {
  auto f = config::load_universe(kRoot + "/universes/" + name);
  if (p) *p = f.p;
  return sem::build_universe(f.spec);
}

Outcome c5_fixed_points() {
  sem::Universe u = shipped("liar.toml");
  REQUIRE(u.liar && u.truthteller, "liar universe lacks the diagonal sentences");
  auto mn = sem::min_fixed_point(u), mx = sem::max_fixed_point(u);
  std::size_t l = *u.find(*u.liar);
  REQUIRE(u.neg[l], "no negated liar");
  std::size_t nl = *u.neg[l];
  REQUIRE(!mn[l] && !mn[nl], "MIN contains L or its negation");
  REQUIRE(mx[l] && mx[nl], "MAX misses L or its negation");
  REQUIRE(sem::subset(mn, mx), "MIN not within MAX");
  REQUIRE(sem::star(u, mn) == mx, "star(MIN) differs from MAX");
  std::mt19937 rng(100);
  std::bernoulli_distribution coin(0.3);
  for (int chain = 0; chain < 100; ++chain) {
    sem::Members x(u.size(), false), fx = sem::phi_step(u, x);
    for (int step = 0; step < 4; ++step) {
      sem::Members y = x;
      for (std::size_t i = 0; i < y.size(); ++i) y[i] = y[i] || coin(rng);
      sem::Members fy = sem::phi_step(u, y);
      REQUIRE(sem::subset(fx, fy), "phi_step not monotone");
      x = std::move(y);
      fx = std::move(fy);
    }
  }
  sem::Model m = sem::build_model(u);
  auto audit = sem::audit_kfl(m, u);
  REQUIRE(audit.ok(), "KFL violation: " + audit.violations.front().first.axiom);
  for (unsigned w = 0; w < 2; ++w) REQUIRE(sem::disquotation_failures(m, u, w).empty(), "disquotation fails");
  return {"", std::to_string(u.size()) + " sentences, " + std::to_string(audit.checked) + " KFL instances"};
}

Outcome c6_kfl_star() {
  sem::PExt p;
  sem::Universe u = shipped("kflp.toml", &p);
  REQUIRE(p && p->size() == 11 && p->count(20) && !p->count(21), "kflp universe is not the evens up to 20");
  sem::Model m = sem::build_model(u, p);
  auto audit = sem::audit_kfl(m, u, true);
  std::size_t kflp = 0;
  for (const auto& i : sem::kfl_instances(u, true)) kflp += i.axiom == "KFLP";
  REQUIRE(kflp > 0, "no KFL-P instances");
  REQUIRE(audit.ok(), "violation: " + audit.violations.front().first.axiom);

  RuleApp sub;
  sub.rule = Rule::Subst;
  sub.formula = parse_formula("Tr(x)");
  sub.var = 0;
  auto lem = dv::hyp(parse_sequent("=> all x. (Tr(x) | !Tr(x))"));
  auto good = dv::node(sub, {lem, dv::hyp(parse_sequent("P(0), all y. (P(y) -> P(S(y))) => P(S(0))"))});
  REQUIRE(check(good).ok, "sound substitution rejected");
  auto forged = std::make_shared<Derivation>();
  forged->conclusion = parse_sequent("Tr(1), Tr(0) => Tr(0)");
  forged->app = sub;
  forged->premises = {lem, dv::hyp(parse_sequent("Tr(1), P(0) => P(0)"))};
  CheckReport bad = check(forged);
  REQUIRE(!bad.ok && bad.error, "substitution outside L_N(->,P) accepted");
  return {"", std::to_string(kflp) + " KFL-P instances clean, side condition enforced"};
}

// Descending exponent lists compared lexicographically.
int list_compare(const std::vector<unsigned>& a, const std::vector<unsigned>& b) {
  for (std::size_t i = 0; i < a.size() && i < b.size(); ++i)
    if (a[i] != b[i]) return a[i] < b[i] ? -1 : 1;
  return a.size() == b.size() ? 0 : a.size() < b.size() ? -1 : 1;
}

Outcome c7_ordinals() {
  std::mt19937 rng(7);
  std::vector<Ordinal> xs;
  for (int i = 0; i < 10000; ++i) xs.push_back(testsupport::random_ordinal(rng, 3));
  std::uniform_int_distribution<std::size_t> pick(0, xs.size() - 1);
  for (std::size_t i = 0; i < xs.size(); ++i) {
    const Ordinal &a = xs[i], &b = xs[pick(rng)], &c = xs[pick(rng)];
    REQUIRE(ord::compare(a, a) == 0, "not irreflexive");
    auto ab = ord::compare(a, b), ba = ord::compare(b, a);
    REQUIRE((ab < 0) == (ba > 0) && (ab == 0) == (ba == 0), "not antisymmetric");
    REQUIRE((ab == 0) == (a == b), "equal order but distinct notations");
    if (ab < 0 && ord::less(b, c)) REQUIRE(ord::less(a, c), "not transitive");
  }
  // every notation below w^w of size at most 8
  std::vector<std::pair<Ordinal, std::vector<unsigned>>> small;
  std::function<void(std::vector<unsigned>&, unsigned, unsigned)> gen = [&](std::vector<unsigned>& ex, unsigned max_e,
                                                                             unsigned budget) {
    Ordinal o;
    for (unsigned e : ex) o = ord::add(o, ord::omega_pow(Ordinal::from_nat(e)));
    small.emplace_back(o, ex);
    for (unsigned e = 0; e <= max_e && e + 1 <= budget; ++e) {
      ex.push_back(e);
      gen(ex, e, budget - e - 1);
      ex.pop_back();
    }
  };
  std::vector<unsigned> ex;
  gen(ex, 7, 8);
  for (const auto& [o, e] : small) REQUIRE(o.size() <= 8, "size bound off for " + ord::to_string(o));
  for (const auto& [a, ea] : small)
    for (const auto& [b, eb] : small) {
      auto c = ord::compare(a, b);
      int s = c < 0 ? -1 : c > 0 ? 1 : 0;
      REQUIRE(s == list_compare(ea, eb), "oracle disagrees on " + ord::to_string(a) + " vs " + ord::to_string(b));
    }
  std::size_t decomposed = 0;
  while (decomposed < 10000) {
    Ordinal x = testsupport::random_ordinal(rng, 3);
    if (x.is_zero()) continue;
    REQUIRE(ord::add(ord::h_of(x), ord::omega_pow(ord::e_of(x))) == x, "h + w^e differs at " + ord::to_string(x));
    ++decomposed;
  }
  for (unsigned n = 0; n < 5; ++n)
    REQUIRE(ord::less(ord::gamma_seq(n), ord::gamma_seq(n + 1)), "gamma_seq not increasing");
  return {"", std::to_string(small.size()) + " notations below w^w against the list oracle"};
}

Outcome c8_translation() {
  std::vector<fs::path> files;
  for (const auto& e : fs::directory_iterator(kRoot + "/universes"))
    if (e.path().extension() == ".toml") files.push_back(e.path());
  REQUIRE(!files.empty(), "no shipped universes");
  std::size_t members = 0, kfl = 0;
  for (const auto& f : files) {
    auto file = config::load_universe(f.string());
    sem::Universe u = sem::build_universe(file.spec);
    TranslationReport r = audit_translation(TranslationContext(u, file.p));
    REQUIRE(r.ok(), f.filename().string() + ": " + r.failures.front());
    members += r.members;
    kfl += r.kfl;
  }
  return {"", std::to_string(files.size()) + " universes, " + std::to_string(members) + " memberships, " +
                  std::to_string(kfl) + " KFL instances"};
}

}  // namespace

int main() {
  struct Criterion {
    const char* id;
    const char* title;
    double limit;
    std::function<Outcome()> run;
  };
  double ti2 = 0;
  const Criterion all[] = {
      {"C1", "proof tree replay", 1, c1_tree_replay},
      {"C2", "recapture generator", 10, c2_recapture},
      {"C3", "TI generation n=0..2", 60, [&] { return c3_ti(ti2); }},
      {"C4", "frame search", 30, c4_semantics},
      {"C5", "fixed points", 30, c5_fixed_points},
      {"C6", "relativized truth + substitution", 30, c6_kfl_star},
      {"C7", "ordinal notations", 10, c7_ordinals},
      {"C8", "translation audit", 10, c8_translation},
  };
  int failed = 0;
  for (const auto& c : all) {
    auto t0 = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o.failure = std::string("exception: ") + e.what();
    }
    double s = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (o.failure.empty() && s >= c.limit) o.failure = "over time limit";
    bool ok = o.failure.empty();
    failed += !ok;
    std::printf("%s %s  %-34s %8.3fs (limit %gs)  %s\n", c.id, ok ? "PASS" : "FAIL", c.title, s, c.limit,
                ok ? o.note.c_str() : o.failure.c_str());
  }
  std::printf("TI n=2 alone: %.3fs\n", ti2);
  return failed ? 1 : 0;
}
