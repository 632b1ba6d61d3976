#include "hype/cli.hpp"

#include <algorithm>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <optional>
#include <sstream>

#include "CLI11.hpp"
#include "hype/code.hpp"
#include "hype/config.hpp"
#include "hype/derive.hpp"
#include "hype/jump.hpp"
#include "hype/kernel.hpp"
#include "hype/parse.hpp"
#include "hype/semantics.hpp"
#include "hype/translate.hpp"

#ifndef HYPE_SOURCE_DIR
#define HYPE_SOURCE_DIR "."
#endif

namespace hype::cli {

namespace fs = std::filesystem;
namespace dv = hype::derive;

namespace {

constexpr int kOk = 0, kFail = 1, kUsage = 2;

// Input problems detected after argument parsing; reported with exit 2.
struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

using Fields = std::vector<std::pair<std::string, std::string>>;

std::string quote(const std::string& v) {
  bool plain = !v.empty() && std::none_of(v.begin(), v.end(), [](char c) {
    return c == ' ' || c == '\t' || c == '"' || c == '=' || c == '\\' || c == '\n';
  });
  if (plain) return v;
  std::string out = "\"";
  for (char c : v) {
    if (c == '"' || c == '\\') out += '\\';
    if (c == '\n') {
      out += "\\n";
      continue;
    }
    out += c;
  }
  return out + "\"";
}

// Text for people, or one `kind key=value ...` record per line.
class Report {
 public:
  Report(std::ostream& out, bool machine) : out_(out), machine_(machine) {}
  bool machine() const { return machine_; }
  void text(const std::string& s) {
    if (!machine_) out_ << s << '\n';
  }
  void rec(const std::string& kind, const Fields& fields) {
    if (!machine_) return;
    out_ << kind;
    for (const auto& [k, v] : fields) out_ << ' ' << k << '=' << quote(v);
    out_ << '\n';
  }

 private:
  std::ostream& out_;
  bool machine_;
};

std::string slurp(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw UsageError("cannot read " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void spill(const std::string& path, const std::string& text) {
  std::ofstream out(path);
  if (!out) throw UsageError("cannot write " + path);
  out << text;
}

FormulaPtr formula_arg(const std::string& s) {
  try {
    return parse_formula(s);
  } catch (const ParseError& e) {
    throw UsageError("formula '" + s + "': " + e.what());
  }
}

unsigned var_arg(const std::string& s) {
  try {
    TermPtr t = parse_term(s);
    if (t->kind == Term::Kind::Var) return t->var;
  } catch (const ParseError&) {
  }
  throw UsageError("not a variable: " + s);
}

ord::Ordinal ordinal_arg(const std::string& s) {
  try {
    return ord::parse(s);
  } catch (const std::exception& e) {
    throw UsageError("ordinal '" + s + "': " + e.what());
  }
}

std::string count_str(std::size_t n) { return std::to_string(n); }

std::size_t tree_size(const DerivationPtr& d) {
  std::size_t n = 1;
  for (const auto& p : d->premises) n += tree_size(p);
  return n;
}

// ------------------------------------------------------------------ check

struct CheckArgs {
  std::string file, theory = "KFL*", lang = "ANY";
  bool no_hyp = false;
};

int cmd_check(const CheckArgs& a, Report& rep, std::ostream& err) {
  CheckOptions o;
  auto th = theory_by_name(a.theory);
  if (!th) throw UsageError("unknown theory " + a.theory);
  auto lg = lang_by_name(a.lang);
  if (!lg) throw UsageError("unknown language " + a.lang);
  o.theory = *th;
  o.lang = *lg;
  o.allow_hyp = !a.no_hyp;
  std::string text = slurp(a.file);
  DerivationPtr d;
  try {
    d = read_script(text);
  } catch (const ScriptError& e) {
    err << a.file << ":" << e.line() << ": " << e.what() << '\n';
    rep.rec("check", {{"file", a.file}, {"status", "malformed"}, {"line", std::to_string(e.line())}});
    return kFail;
  }
  CheckReport r = check(d, o);
  if (r.ok) {
    rep.text(a.file + ": accepted in " + theory_name(o.theory) + " (" + count_str(r.nodes) + " nodes, height " +
             std::to_string(r.height) + ", " + count_str(r.hypotheses.size()) + " open hypotheses)");
    rep.text("  end sequent: " + print(d->conclusion));
    for (const auto& h : r.hypotheses) rep.text("  hypothesis: " + print(h));
    rep.rec("check", {{"file", a.file},
                      {"status", "accepted"},
                      {"nodes", count_str(r.nodes)},
                      {"height", std::to_string(r.height)},
                      {"hypotheses", count_str(r.hypotheses.size())},
                      {"sequent", print(d->conclusion)}});
    for (const auto& h : r.hypotheses) rep.rec("hypothesis", {{"sequent", print(h)}});
    return kOk;
  }
  const CheckError& e = *r.error;
  rep.text(a.file + ":" + std::to_string(e.line) + ": rejected at " + e.rule + ": " + e.message);
  if (!e.expected.empty()) rep.text("  expected: " + e.expected);
  if (!e.found.empty()) rep.text("  found:    " + e.found);
  rep.rec("check", {{"file", a.file},
                    {"status", "rejected"},
                    {"line", std::to_string(e.line)},
                    {"rule", e.rule},
                    {"message", e.message},
                    {"expected", e.expected},
                    {"found", e.found}});
  return kFail;
}

// ------------------------------------------------------------------ derive

struct DeriveArgs {
  std::string kind, formula, slot = "x", out;
  unsigned tower = 0;
};

int cmd_derive(const DeriveArgs& a, Report& rep, std::ostream& out) {
  DerivationPtr d;
  try {
    if (a.kind == "top") {
      d = dv::top();
    } else {
      if (a.formula.empty()) throw UsageError("derive " + a.kind + " needs --formula");
      FormulaPtr f = formula_arg(a.formula);
      OrdinalPredicate pred{f, var_arg(a.slot)};
      if (a.kind == "recapture") d = dv::derive_lem(f);
      else if (a.kind == "ti") d = dv::derive_ti(pred, a.tower);
      else if (a.kind == "jump") d = dv::derive_prog_jump(pred);
      else if (a.kind == "dn-intro") d = dv::dn_intro(f);
      else if (a.kind == "dn-elim") d = dv::dn_elim(f);
      else throw UsageError("unknown derivation " + a.kind);
    }
  } catch (const dv::PreconditionError& e) {
    throw UsageError(e.what());
  }
  CheckOptions o;
  o.allow_hyp = false;
  CheckReport r = check(d, o);
  std::string status = r.ok ? "accepted" : "rejected";
  std::string summary = "derived " + print(d->conclusion) + " : " + count_str(r.nodes) + " distinct nodes, " +
                        count_str(tree_size(d)) + " tree nodes, height " + std::to_string(r.height) +
                        ", kernel " + status;
  if (!r.ok && r.error) summary += " (" + r.error->rule + ": " + r.error->message + ")";
  std::string script = write_script(d);
  if (!a.out.empty()) spill(a.out, script);
  if (rep.machine()) {
    rep.rec("derive", {{"kind", a.kind},
                       {"status", status},
                       {"nodes", count_str(r.nodes)},
                       {"tree", count_str(tree_size(d))},
                       {"height", std::to_string(r.height)},
                       {"sequent", print(d->conclusion)}});
  } else if (a.out.empty()) {
    out << "# " << summary << '\n' << script;
  } else {
    rep.text(summary);
    rep.text("script written to " + a.out);
  }
  return r.ok ? kOk : kFail;
}

// ------------------------------------------------------------------ ord

int cmd_ord(const std::string& op, const std::vector<std::string>& args, Report& rep) {
  auto need = [&](std::size_t n) {
    if (args.size() != n)
      throw UsageError("ord " + op + " takes " + std::to_string(n) + " argument" + (n == 1 ? "" : "s"));
  };
  auto nat_arg = [&](const std::string& s) {
    try {
      std::size_t used = 0;
      unsigned long n = std::stoul(s, &used);
      if (used == s.size() && n <= 64) return static_cast<unsigned>(n);
    } catch (const std::exception&) {
    }
    throw UsageError("expected a small natural number: " + s);
  };
  std::string result;
  if (op == "cmp") {
    need(2);
    auto c = ord::compare(ordinal_arg(args[0]), ordinal_arg(args[1]));
    result = c < 0 ? "Less" : c > 0 ? "Greater" : "Equal";
  } else if (op == "add") {
    need(2);
    result = ord::to_string(ord::add(ordinal_arg(args[0]), ordinal_arg(args[1])));
  } else if (op == "phi") {
    need(2);
    result = ord::to_string(ord::veblen(ordinal_arg(args[0]), ordinal_arg(args[1])));
  } else if (op == "e" || op == "h") {
    need(1);
    ord::Ordinal x = ordinal_arg(args[0]);
    if (x.is_zero()) throw UsageError(op + " is undefined at 0");
    result = ord::to_string(op == "e" ? ord::e_of(x) : ord::h_of(x));
  } else if (op == "classify") {
    need(1);
    auto c = ord::classify(ordinal_arg(args[0]));
    result = c.kind == ord::Kind::Zero ? "zero"
             : c.kind == ord::Kind::Limit ? "limit"
                                          : "successor of " + ord::to_string(c.pred);
  } else if (op == "code") {
    need(1);
    result = ord::encode(ordinal_arg(args[0])).get_str();
  } else if (op == "tower") {
    need(1);
    result = ord::to_string(ord::omega_tower(nat_arg(args[0])));
  } else if (op == "gamma") {
    need(1);
    result = ord::to_string(ord::gamma_seq(nat_arg(args[0])));
  } else {
    throw UsageError("unknown ord operation " + op);
  }
  rep.text(result);
  Fields f{{"op", op}};
  for (std::size_t i = 0; i < args.size(); ++i) f.emplace_back("arg" + std::to_string(i + 1), args[i]);
  f.emplace_back("result", result);
  rep.rec("ord", f);
  return kOk;
}

// ------------------------------------------------------------------ models

std::string frame_order(const sem::Frame& fr) {
  std::string s;
  for (unsigned w = 0; w < fr.n; ++w)
    for (unsigned v = 0; v < fr.n; ++v)
      if (w != v && fr.le[w][v]) s += (s.empty() ? "" : ",") + std::to_string(w) + "<=" + std::to_string(v);
  return s.empty() ? "discrete" : s;
}

std::string frame_star(const sem::Frame& fr) {
  std::string s;
  for (unsigned w = 0; w < fr.n; ++w)
    s += (w ? "," : "") + std::to_string(w) + "->" + std::to_string(fr.star[w]);
  return s;
}

struct ModelsArgs {
  std::string sequent;
  unsigned states = 3, atoms = 2;
};

int cmd_models_find(const ModelsArgs& a, Report& rep) {
  Sequent s;
  try {
    s = parse_sequent(a.sequent);
  } catch (const ParseError& e) {
    throw UsageError("sequent '" + a.sequent + "': " + e.what());
  }
  sem::SearchResult r;
  try {
    r = sem::countermodel(s, a.states, a.atoms);
  } catch (const sem::SemanticsError& e) {
    throw UsageError(e.what());
  }
  using St = sem::SearchResult::Status;
  std::string status = r.status == St::Found ? "found" : r.status == St::None ? "none" : "inconclusive";
  rep.rec("models", {{"sequent", print(s)}, {"status", status}, {"frames", count_str(r.frames)}});
  if (r.status == St::Found) {
    const sem::Model& m = *r.model;
    rep.text("countermodel for " + print(s) + " (" + std::to_string(m.frame.n) + " states, fails at state " +
             std::to_string(r.state) + ", " + count_str(r.frames) + " frames searched)");
    rep.text("  order: " + frame_order(m.frame));
    rep.text("  star:  " + frame_star(m.frame));
    rep.rec("frame", {{"states", std::to_string(m.frame.n)},
                      {"order", frame_order(m.frame)},
                      {"star", frame_star(m.frame)},
                      {"refutes_at", std::to_string(r.state)}});
    for (unsigned w = 0; w < m.frame.n; ++w) {
      std::string vals;
      for (unsigned i = 0; i < m.letters[w].size(); ++i)
        if (m.letters[w][i]) vals += (vals.empty() ? "" : ",") + print(*atom(i));
      rep.text("  state " + std::to_string(w) + ": {" + vals + "}");
      rep.rec("valuation", {{"state", std::to_string(w)}, {"true", vals.empty() ? "-" : vals}});
    }
    return kOk;
  }
  if (r.status == St::None) {
    rep.text("no countermodel for " + print(s) + " with at most " + std::to_string(a.states) + " states (" +
             count_str(r.frames) + " frames searched)");
    return kOk;
  }
  rep.text("inconclusive: " + r.note);
  return kFail;
}

// ------------------------------------------------------------------ universes

struct Loaded {
  config::UniverseFile file;
  sem::Universe u;
};

Loaded load(const std::string& path) {
  Loaded l;
  try {
    l.file = config::load_universe(path);
    l.u = sem::build_universe(l.file.spec);
  } catch (const config::ConfigError& e) {
    throw UsageError(path + ": " + e.what());
  } catch (const ParseError& e) {
    throw UsageError(path + ": " + e.what());
  } catch (const sem::ClosureError& e) {
    throw UsageError(path + ": " + e.what());
  }
  return l;
}

struct FixpointSummary {
  std::size_t size = 0, min = 0, max = 0;
  bool min_in_max = false, star_ok = false;
  std::string liar = "-", truthteller = "-";
  bool ok() const { return min_in_max && star_ok; }
};

std::size_t popcount(const sem::Members& m) { return static_cast<std::size_t>(std::count(m.begin(), m.end(), true)); }

// Status of a sentence and its negation: in/out of MIN, in/out of MAX.
std::string membership(const sem::Universe& u, const sem::Members& mn, const sem::Members& mx, const Nat& c) {
  auto i = u.find(c);
  if (!i) return "-";
  auto yn = [](bool b) { return b ? std::string("in") : std::string("out"); };
  std::string s = "MIN:" + yn(mn[*i]) + "/MAX:" + yn(mx[*i]);
  if (auto n = u.neg[*i]) s += " neg MIN:" + yn(mn[*n]) + "/MAX:" + yn(mx[*n]);
  return s;
}

FixpointSummary fixpoint_summary(const Loaded& l) {
  FixpointSummary s;
  auto mn = sem::min_fixed_point(l.u, l.file.p), mx = sem::max_fixed_point(l.u, l.file.p);
  s.size = l.u.size();
  s.min = popcount(mn);
  s.max = popcount(mx);
  s.min_in_max = sem::subset(mn, mx);
  s.star_ok = sem::star(l.u, mn) == mx && sem::star(l.u, mx) == mn;
  if (l.u.liar) s.liar = membership(l.u, mn, mx, *l.u.liar);
  if (l.u.truthteller) s.truthteller = membership(l.u, mn, mx, *l.u.truthteller);
  return s;
}

int cmd_fixpoint(const std::string& path, const std::string& emit, bool list, Report& rep) {
  Loaded l = load(path);
  FixpointSummary s = fixpoint_summary(l);
  rep.text("universe " + l.file.name + ": " + count_str(s.size) + " sentences");
  rep.text("  |MIN| = " + count_str(s.min) + ", |MAX| = " + count_str(s.max));
  rep.text(std::string("  MIN within MAX: ") + (s.min_in_max ? "yes" : "NO"));
  rep.text(std::string("  star swaps MIN and MAX: ") + (s.star_ok ? "yes" : "NO"));
  if (l.u.liar) rep.text("  liar: " + s.liar);
  if (l.u.truthteller) rep.text("  truthteller: " + s.truthteller);
  rep.rec("fixpoint", {{"universe", l.file.name},
                       {"sentences", count_str(s.size)},
                       {"min", count_str(s.min)},
                       {"max", count_str(s.max)},
                       {"min_in_max", s.min_in_max ? "yes" : "no"},
                       {"star_swaps", s.star_ok ? "yes" : "no"},
                       {"liar", s.liar},
                       {"truthteller", s.truthteller}});
  if (list) {
    auto mn = sem::min_fixed_point(l.u, l.file.p), mx = sem::max_fixed_point(l.u, l.file.p);
    for (std::size_t i = 0; i < l.u.size(); ++i) {
      std::string where = mn[i] ? "MIN" : mx[i] ? "MAX" : "-";
      std::string f = print(*l.u.entries[i].formula);
      rep.text("  [" + where + "] " + f);
      rep.rec("sentence", {{"where", where}, {"formula", f}});
    }
  }
  if (!emit.empty()) {
    spill(emit, sem::model_to_json(sem::build_model(l.u, l.file.p)) + "\n");
    rep.text("model written to " + emit);
  }
  return s.ok() ? kOk : kFail;
}

struct AuditSummary {
  std::size_t checked = 0, violations = 0, disquotation = 0, disquotation_failures = 0;
  std::vector<std::string> details;
  bool ok() const { return violations == 0 && disquotation_failures == 0; }
};

AuditSummary audit_summary(const Loaded& l, const sem::Model& m) {
  AuditSummary s;
  sem::AuditReport r = sem::audit_kfl(m, l.u, l.file.p.has_value());
  s.checked = r.checked;
  s.violations = r.violations.size();
  for (const auto& [inst, w] : r.violations)
    if (s.details.size() < 10)
      s.details.push_back(inst.axiom + " at state " + std::to_string(w) + ": " + print(inst.sequent));
  for (unsigned w = 0; w < m.frame.n; ++w) {
    auto bad = sem::disquotation_failures(m, l.u, w);
    s.disquotation_failures += bad.size();
    for (const Nat& c : bad)
      if (s.details.size() < 10)
        s.details.push_back("disquotation at state " + std::to_string(w) + ": " +
                            print(*l.u.entries[*l.u.find(c)].formula));
  }
  for (const auto& e : l.u.entries)
    if (!(e.formula->features & kFeatImp)) ++s.disquotation;
  s.disquotation *= m.frame.n;
  return s;
}

int cmd_audit(const std::string& path, const std::string& model_path, Report& rep) {
  Loaded l = load(path);
  sem::Model m;
  if (model_path.empty()) {
    m = sem::build_model(l.u, l.file.p);
  } else {
    try {
      m = sem::model_from_json(slurp(model_path));
    } catch (const UsageError&) {
      throw;
    } catch (const std::exception& e) {
      throw UsageError(model_path + ": " + e.what());
    }
  }
  AuditSummary s;
  try {
    s = audit_summary(l, m);
  } catch (const sem::SemanticsError& e) {
    throw UsageError(e.what());
  }
  rep.text("universe " + l.file.name + ": " + count_str(s.checked) + " KFL instances checked at " +
           std::to_string(m.frame.n) + " states, " + count_str(s.violations) + " violations");
  rep.text("  disquotation: " + count_str(s.disquotation) + " checks, " + count_str(s.disquotation_failures) +
           " failures");
  for (const auto& d : s.details) rep.text("  " + d);
  rep.rec("audit", {{"universe", l.file.name},
                    {"instances", count_str(s.checked)},
                    {"violations", count_str(s.violations)},
                    {"disquotation", count_str(s.disquotation)},
                    {"disquotation_failures", count_str(s.disquotation_failures)},
                    {"status", s.ok() ? "clean" : "violated"}});
  for (const auto& d : s.details) rep.rec("violation", {{"detail", d}});
  return s.ok() ? kOk : kFail;
}

// ------------------------------------------------------------------ translate

int cmd_translate(bool use_tau, bool use_sigma, const std::string& formula, Report& rep) {
  if (use_tau == use_sigma) throw UsageError("translate needs exactly one of --tau and --sigma");
  if (formula.empty()) throw UsageError("translate needs --formula");
  FormulaPtr f = formula_arg(formula);
  FormulaPtr g;
  try {
    g = use_tau ? tau(f) : sigma(f);
  } catch (const TranslationError& e) {
    throw UsageError(e.what());
  }
  rep.text(print(*g));
  rep.rec("translate", {{"map", use_tau ? "tau" : "sigma"}, {"formula", print(*f)}, {"result", print(*g)}});
  return kOk;
}

TranslationReport translation_audit(const Loaded& l) {
  try {
    return audit_translation(TranslationContext(l.u, l.file.p));
  } catch (const TranslationError& e) {
    throw UsageError(e.what());
  }
}

int cmd_translate_audit(const std::string& path, Report& rep) {
  Loaded l = load(path);
  TranslationReport r = translation_audit(l);
  rep.text("universe " + l.file.name + ": " + count_str(r.members) + " membership checks, " +
           count_str(r.neg_transfer) + " negation transfers, " + count_str(r.kfl) + " KFL instances under sigma, " +
           count_str(r.failures.size()) + " failures");
  for (std::size_t i = 0; i < r.failures.size() && i < 10; ++i) rep.text("  " + r.failures[i]);
  rep.rec("translate-audit", {{"universe", l.file.name},
                              {"members", count_str(r.members)},
                              {"neg_transfer", count_str(r.neg_transfer)},
                              {"kfl", count_str(r.kfl)},
                              {"failures", count_str(r.failures.size())},
                              {"status", r.ok() ? "clean" : "violated"}});
  return r.ok() ? kOk : kFail;
}

// ------------------------------------------------------------------ regress

struct Row {
  std::string section, item;
  bool ok;
  Fields detail;
};

// Closed, →-free, Tr-free sentences for the recapture sweep.
const char* const kRecaptureSample[] = {
    "0 = 0",
    "!(0 = 1)",
    "bot",
    "0 = 0 | bot",
    "all x. x = x",
    "all x. x + 0 = x",
    "!(all x. x = 0)",
    "all x. all y. x + y = y + x",
    "all x. (x = 0 | !(x = 0))",
    "!!(S(0) = 1)",
    "all x. !(S(x) = 0)",
    "all x. all y. (x = y | !(x = y))",
    "!(bot | 0 = 1)",
    "all x. (x * 0 = 0 | bot)",
    "all x. all y. all z. (x + y) + z = x + (y + z)",
    "!(all x. all y. x = y)",
    "all x. !(x = 0 | !(x = 0))",
    "(0 = 0 | 1 = 1) | (2 = 2 | bot)",
    "all x. all y. (S(x) = S(y) | !(x = y))",
    "!!!(2 * 2 = 4)",
};

void regress_proofs(const fs::path& root, std::vector<Row>& rows) {
  std::vector<fs::path> files;
  for (const auto& e : fs::directory_iterator(root / "proofs"))
    if (e.path().extension() == ".kfl") files.push_back(e.path());
  std::sort(files.begin(), files.end());
  for (const auto& p : files) {
    Row row{"proofs", p.stem().string(), false, {}};
    try {
      std::string text = slurp(p.string());
      CheckReport r = check(read_script(text));
      row.detail = {{"nodes", count_str(r.nodes)},
                    {"height", std::to_string(r.height)},
                    {"hyp", count_str(r.hypotheses.size())}};
      auto [bad, line] = mutate_script(text);
      bool mutant_rejected = true;
      if (line > 0) {
        CheckReport m = check(read_script(bad));
        mutant_rejected = !m.ok && m.error && m.error->line == line;
        row.detail.emplace_back("mutant", (mutant_rejected ? "rejected@" : "ACCEPTED@") + std::to_string(line));
      } else {
        row.detail.emplace_back("mutant", "n/a");
      }
      row.ok = r.ok && mutant_rejected;
    } catch (const std::exception& e) {
      row.detail = {{"error", e.what()}};
    }
    rows.push_back(row);
  }
}

void regress_derivations(std::vector<Row>& rows) {
  CheckOptions ln;
  ln.lang = Lang::LN;
  ln.theory = Theory::G1hEq;
  ln.allow_hyp = false;
  std::size_t passed = 0, nodes = 0;
  for (const char* s : kRecaptureSample) {
    auto d = dv::derive_lem(parse_formula(s));
    CheckReport r = check(d, ln);
    if (r.ok) ++passed;
    nodes += r.nodes;
  }
  std::size_t total = std::size(kRecaptureSample);
  rows.push_back({"derive", "recapture-sample", passed == total,
                  {{"accepted", count_str(passed) + "/" + count_str(total)}, {"nodes", count_str(nodes)}}});

  CheckOptions closed;
  closed.allow_hyp = false;
  OrdinalPredicate a{tr(app(Fn::FH, {num(0), var(0)})), 0};
  auto jump = dv::derive_prog_jump(a);
  CheckReport jr = check(jump, closed);
  rows.push_back({"derive", "prog-jump", jr.ok, {{"nodes", count_str(jr.nodes)}, {"height", std::to_string(jr.height)}}});

  std::size_t last = 0;
  for (unsigned n = 0; n <= 2; ++n) {
    auto d = dv::derive_ti(a, n);
    CheckReport r = check(d, closed);
    std::size_t size = tree_size(d);
    bool ok = r.ok && size > last && sequent_equal(d->conclusion, ti_sequent(a.body, 0, ord::omega_tower(n)));
    last = size;
    rows.push_back({"derive", "ti-" + std::to_string(n), ok,
                    {{"bound", ord::to_string(ord::omega_tower(n))},
                     {"tree", count_str(size)},
                     {"nodes", count_str(r.nodes)},
                     {"height", std::to_string(r.height)}}});
  }

  // Substitution: one sound application, one whose side sequent leaves L_N→(P).
  RuleApp sub;
  sub.rule = Rule::Subst;
  sub.formula = parse_formula("Tr(x)");
  sub.var = 0;
  auto lem = dv::hyp(parse_sequent("=> all x. (Tr(x) | !Tr(x))"));
  bool good = false, forged_rejected = false;
  try {
    good = check(dv::node(sub, {lem, dv::hyp(parse_sequent("P(0), all y. (P(y) -> P(S(y))) => P(S(0))"))})).ok;
  } catch (const RuleError&) {
  }
  auto forged = std::make_shared<Derivation>();
  forged->conclusion = parse_sequent("Tr(1), Tr(0) => Tr(0)");
  forged->app = sub;
  forged->premises = {lem, dv::hyp(parse_sequent("Tr(1), P(0) => P(0)"))};
  forged_rejected = !check(forged).ok;
  rows.push_back({"derive", "subst", good && forged_rejected,
                  {{"sound", good ? "accepted" : "REJECTED"}, {"side-condition", forged_rejected ? "rejected" : "ACCEPTED"}}});
}

void regress_ordinals(std::vector<Row>& rows) {
  struct Cmp {
    const char *a, *b;
    int sign;
  };
  const Cmp cases[] = {{"phi(w,0)", "w^w", 1}, {"phi(1,0)", "w^(w^w)", 1}, {"w^w", "w^3 + w", 1},
                       {"phi(phi(1,0),0)", "phi(w,1)", 1}, {"w + 1", "1 + w", 1}, {"phi(0,phi(1,0))", "phi(1,0)", 0}};
  std::size_t agree = 0;
  for (const auto& c : cases) {
    auto r = ord::compare(ord::parse(c.a), ord::parse(c.b));
    int sign = r < 0 ? -1 : r > 0 ? 1 : 0;
    if (sign == c.sign) ++agree;
  }
  rows.push_back({"ordinals", "comparisons", agree == std::size(cases),
                  {{"agree", count_str(agree) + "/" + count_str(std::size(cases))}}});
  bool inc = true;
  for (unsigned n = 0; n < 5; ++n) inc = inc && ord::less(ord::gamma_seq(n), ord::gamma_seq(n + 1));
  rows.push_back({"ordinals", "gamma-increasing", inc, {{"upto", "5"}, {"gamma_2", ord::to_string(ord::gamma_seq(2))}}});
  bool tower = true;
  for (unsigned n = 0; n < 4; ++n) tower = tower && ord::less(ord::omega_tower(n), ord::omega_tower(n + 1));
  tower = tower && ord::less(ord::omega_tower(4), ord::veblen(ord::Ordinal::one(), ord::Ordinal::zero()));
  rows.push_back({"ordinals", "tower-below-e0", tower, {{"upto", "4"}}});
}

void regress_models(std::vector<Row>& rows) {
  using St = sem::SearchResult::Status;
  for (const char* s : {"=> p | !p", "p & !p =>"}) {
    auto r = sem::countermodel(parse_sequent(s), 3, 2);
    rows.push_back({"models", s, r.status == St::Found,
                    {{"status", r.status == St::Found ? "found" : "none"},
                     {"states", r.model ? std::to_string(r.model->frame.n) : "-"}}});
  }
  // QN° propositional axioms over p, q.
  std::vector<FormulaPtr> pool = {atom(0), atom(1)};
  std::size_t n = 0, refuted = 0;
  auto add = [&](const FormulaPtr& f) {
    ++n;
    if (sem::countermodel(make_sequent({}, {f}), 3, 2).status != St::None) ++refuted;
  };
  for (const auto& a : pool) {
    add(imp(neg(neg(a)), a));
    add(imp(a, neg(neg(a))));
    for (const auto& b : pool) {
      add(imp(a, imp(b, a)));
      add(imp(conj(a, b), a));
      add(imp(a, disj(a, b)));
      add(imp(a, imp(b, conj(a, b))));
      for (const auto& c : pool) {
        add(imp(imp(a, imp(b, c)), imp(imp(a, b), imp(a, c))));
        add(imp(imp(a, c), imp(imp(b, c), imp(disj(a, b), c))));
      }
    }
  }
  rows.push_back({"models", "qn-axioms-valid", refuted == 0,
                  {{"instances", count_str(n)}, {"refuted", count_str(refuted)}}});
}

void regress_universes(const fs::path& root, std::vector<Row>& rows) {
  std::vector<fs::path> files;
  for (const auto& e : fs::directory_iterator(root / "universes"))
    if (e.path().extension() == ".toml") files.push_back(e.path());
  std::sort(files.begin(), files.end());
  for (const auto& p : files) {
    std::string name = p.stem().string();
    try {
      Loaded l = load(p.string());
      FixpointSummary f = fixpoint_summary(l);
      rows.push_back({"fixpoint", name, f.ok(),
                      {{"sentences", count_str(f.size)},
                       {"min", count_str(f.min)},
                       {"max", count_str(f.max)},
                       {"liar", f.liar}}});
      AuditSummary a = audit_summary(l, sem::build_model(l.u, l.file.p));
      rows.push_back({"audit", name, a.ok(),
                      {{"instances", count_str(a.checked)},
                       {"violations", count_str(a.violations)},
                       {"disquotation", count_str(a.disquotation)},
                       {"failures", count_str(a.disquotation_failures)}}});
      TranslationReport t = translation_audit(l);
      rows.push_back({"translate", name, t.ok(),
                      {{"members", count_str(t.members)},
                       {"neg_transfer", count_str(t.neg_transfer)},
                       {"kfl", count_str(t.kfl)},
                       {"failures", count_str(t.failures.size())}}});
    } catch (const std::exception& e) {
      rows.push_back({"universe", name, false, {{"error", e.what()}}});
    }
  }
}

int cmd_regress(const fs::path& root, Report& rep) {
  if (!fs::is_directory(root / "proofs") || !fs::is_directory(root / "universes"))
    throw UsageError("no proofs/ and universes/ under " + root.string());
  std::vector<Row> rows;
  regress_proofs(root, rows);
  regress_derivations(rows);
  regress_ordinals(rows);
  regress_models(rows);
  regress_universes(root, rows);
  std::size_t failed = 0;
  for (const auto& r : rows) {
    if (!r.ok) ++failed;
    std::string d;
    for (const auto& [k, v] : r.detail) d += (d.empty() ? "" : " ") + k + "=" + v;
    std::string sec = r.section, item = r.item;
    sec.resize(std::max<std::size_t>(sec.size(), 10), ' ');
    item.resize(std::max<std::size_t>(item.size(), 18), ' ');
    rep.text(sec + item + (r.ok ? "  pass  " : "  FAIL  ") + d);
    Fields f{{"section", r.section}, {"item", r.item}, {"status", r.ok ? "pass" : "fail"}};
    f.insert(f.end(), r.detail.begin(), r.detail.end());
    rep.rec("row", f);
  }
  rep.text(count_str(rows.size()) + " checks, " + count_str(rows.size() - failed) + " passed, " + count_str(failed) +
           " failed");
  rep.rec("summary", {{"checks", count_str(rows.size())},
                      {"passed", count_str(rows.size() - failed)},
                      {"failed", count_str(failed)}});
  return failed ? kFail : kOk;
}

}  // namespace

std::string default_root() {
  if (const char* env = std::getenv("HYPE_ROOT")) return env;
  return HYPE_SOURCE_DIR;
}

std::pair<std::string, int> mutate_script(const std::string& script) {
  std::vector<std::string> lines;
  std::istringstream in(script);
  for (std::string l; std::getline(in, l);) lines.push_back(l);
  int target = -1;
  for (int pass = 0; pass < 2 && target < 0; ++pass)
    for (int i = static_cast<int>(lines.size()) - 1; i >= 0; --i) {
      const auto& l = lines[static_cast<std::size_t>(i)];
      bool hit = pass == 0 ? (l.find("; ConCp") != std::string::npos || l.find("; ClCp") != std::string::npos)
                           : l.find("; Cut") != std::string::npos;
      if (hit) {
        target = i;
        break;
      }
    }
  if (target < 0) return {script, 0};
  auto& l = lines[static_cast<std::size_t>(target)];
  auto colon = l.find(':'), arrow = l.find("=>"), semi = l.find(';');
  std::string left = l.substr(colon + 1, arrow - colon - 1), right = l.substr(arrow + 2, semi - arrow - 2);
  l = l.substr(0, colon + 1) + " " + right + " => " + left + " " + l.substr(semi);
  std::string out;
  for (const auto& x : lines) out += x + "\n";
  return {out, target + 1};
}

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"hype: proof checker, ordinal calculator and fixed-point tools"};
  app.require_subcommand(1, 1);
  app.fallthrough();
  std::string format = "text", root = default_root();
  app.add_option("--format", format, "Report format")->check(CLI::IsMember({"text", "machine"}));
  app.add_option("--root", root, "Directory holding proofs/ and universes/");

  CheckArgs ca;
  auto* check_cmd = app.add_subcommand("check", "Kernel-check a proof script");
  check_cmd->add_option("file", ca.file, "Proof script")->required()->check(CLI::ExistingFile);
  check_cmd->add_option("--theory", ca.theory, "G1h, G1h=, HYA, KFL or KFL*");
  check_cmd->add_option("--lang", ca.lang, "LN, LN->, LN->P, LT, LT->, LT->P, LTF or ANY");
  check_cmd->add_flag("--no-hyp", ca.no_hyp, "Reject open hypotheses");

  DeriveArgs da;
  auto* derive_cmd = app.add_subcommand("derive", "Generate and check a derivation");
  derive_cmd->add_option("kind", da.kind, "recapture, ti, jump, top, dn-intro or dn-elim")
      ->required()
      ->check(CLI::IsMember({"recapture", "ti", "jump", "top", "dn-intro", "dn-elim"}));
  derive_cmd->add_option("--formula", da.formula, "Formula A");
  derive_cmd->add_option("--slot", da.slot, "Ordinal variable of A (ti, jump)");
  derive_cmd->add_option("--tower", da.tower, "n for the bound omega_n (ti)")->check(CLI::Range(0u, dv::kMaxTower));
  derive_cmd->add_option("--out", da.out, "Write the proof script here");

  std::string ord_op;
  std::vector<std::string> ord_args;
  auto* ord_cmd = app.add_subcommand("ord", "Ordinal notation calculator");
  ord_cmd->add_option("op", ord_op, "cmp, add, phi, e, h, classify, code, tower or gamma")->required();
  ord_cmd->add_option("args", ord_args, "Notations or naturals");

  ModelsArgs ma;
  auto* models_cmd = app.add_subcommand("models", "Routley frame countermodel search");
  models_cmd->require_subcommand(1, 1);
  auto* find_cmd = models_cmd->add_subcommand("find", "Search for a countermodel to a sequent");
  find_cmd->add_option("--sequent", ma.sequent, "Propositional sequent")->required();
  find_cmd->add_option("--max-states", ma.states, "At most this many states")->check(CLI::Range(1u, 8u));
  find_cmd->add_option("--max-atoms", ma.atoms, "At most this many letters")->check(CLI::Range(1u, 16u));
  unsigned frame_states = 2;
  auto* frames_cmd = models_cmd->add_subcommand("frames", "Count Routley frames up to isomorphism");
  frames_cmd->add_option("--states", frame_states, "Number of states")->check(CLI::Range(1u, 4u));

  std::string universe, emit, model;
  bool list = false;
  auto* fix_cmd = app.add_subcommand("fixpoint", "Least and greatest fixed points over a universe");
  fix_cmd->add_option("--universe", universe, "Universe file (TOML)")->required()->check(CLI::ExistingFile);
  fix_cmd->add_option("--emit", emit, "Write the two-state model as JSON");
  fix_cmd->add_flag("--list", list, "List every sentence with its status");

  auto* audit_cmd = app.add_subcommand("audit", "Audit KFL instances and disquotation in a model");
  audit_cmd->add_option("--universe", universe, "Universe file (TOML)")->required()->check(CLI::ExistingFile);
  audit_cmd->add_option("--model", model, "Model JSON (default: the fixed-point model)")->check(CLI::ExistingFile);

  bool use_tau = false, use_sigma = false;
  std::string tformula;
  auto* tr_cmd = app.add_subcommand("translate", "Translations into the classical language");
  tr_cmd->require_subcommand(0, 1);
  tr_cmd->add_flag("--tau", use_tau, "Truth translation");
  tr_cmd->add_flag("--sigma", use_sigma, "Conditional translation");
  tr_cmd->add_option("--formula", tformula, "Formula to translate");
  auto* tr_audit = tr_cmd->add_subcommand("audit", "Check the translation against the minimal fixed point");
  tr_audit->add_option("--universe", universe, "Universe file (TOML)")->required()->check(CLI::ExistingFile);

  bool all = false;
  auto* reg_cmd = app.add_subcommand("regress", "Replay every shipped proof and audit");
  reg_cmd->add_flag("--all", all, "Run the full suite")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e, out, err);
    return code == 0 ? kOk : kUsage;
  }

  Report rep(out, format == "machine");
  try {
    if (*check_cmd) return cmd_check(ca, rep, err);
    if (*derive_cmd) return cmd_derive(da, rep, out);
    if (*ord_cmd) return cmd_ord(ord_op, ord_args, rep);
    if (*find_cmd) return cmd_models_find(ma, rep);
    if (*frames_cmd) {
      auto n = sem::canonical_frames(frame_states).size();
      rep.text(count_str(n) + " Routley frames with " + std::to_string(frame_states) + " states");
      rep.rec("frames", {{"states", std::to_string(frame_states)}, {"count", count_str(n)}});
      return kOk;
    }
    if (*fix_cmd) return cmd_fixpoint(universe, emit, list, rep);
    if (*audit_cmd) return cmd_audit(universe, model, rep);
    if (*tr_audit) return cmd_translate_audit(universe, rep);
    if (*tr_cmd) return cmd_translate(use_tau, use_sigma, tformula, rep);
    if (*reg_cmd) return cmd_regress(fs::path(root), rep);
  } catch (const UsageError& e) {
    err << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const ord::NotNormal& e) {
    err << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const std::exception& e) {
    err << "internal error: " << e.what() << '\n';
    return kFail;
  }
  return kUsage;
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  std::vector<const char*> argv;
  argv.push_back("hype");
  for (const auto& a : args) argv.push_back(a.c_str());
  return run(static_cast<int>(argv.size()), argv.data(), out, err);
}

}  // namespace hype::cli
