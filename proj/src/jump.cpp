#include "hype/jump.hpp"

#include <map>
#include <mutex>
#include <stdexcept>

#include "hype/code.hpp"

namespace hype {

unsigned OrdinalPredicate::fresh() const {
  return fresh_var({body->max_var, static_cast<int>(slot)});
}

FormulaPtr bounded_all(unsigned v, TermPtr bound, FormulaPtr body) {
  return forall(v, imp(lt(var(v), std::move(bound)), std::move(body)));
}

FormulaPtr prog(const OrdinalPredicate& a) {
  unsigned eta = a.fresh(), zeta = eta + 1;
  return forall(eta, imp(bounded_all(zeta, var(eta), a.at(var(zeta))), a.at(var(eta))));
}

FormulaPtr below(const OrdinalPredicate& a, const TermPtr& bound) {
  unsigned xi = fresh_var({a.body->max_var, static_cast<int>(a.slot), bound->max_var});
  return bounded_all(xi, bound, a.at(var(xi)));
}

OrdinalPredicate gentzen_jump(const OrdinalPredicate& a) {
  unsigned xi = a.fresh(), eta = xi + 1, theta = xi + 2;
  FormulaPtr a_eta = a.at(var(eta));
  TermPtr bound = app(Fn::OAdd, {var(xi), app(Fn::OWExp, {var(theta)})});
  FormulaPtr body = forall(xi, imp(bounded_all(eta, var(xi), a_eta), bounded_all(eta, bound, a_eta)));
  return {body, theta};
}

FormulaPtr jump_pattern(const OrdinalPredicate& b, const TermPtr& c) {
  unsigned eta = fresh_var({b.body->max_var, static_cast<int>(b.slot), c->max_var}), zeta = eta + 1;
  FormulaPtr b_zeta = b.at(var(zeta));
  TermPtr bound = app(Fn::OAdd, {var(eta), c});
  return forall(eta, imp(bounded_all(zeta, var(eta), b_zeta), bounded_all(zeta, bound, b_zeta)));
}

FormulaPtr veblen_jump(const ord::Ordinal& xi, unsigned y) {
  if (xi.is_zero()) throw std::invalid_argument("veblen_jump needs a positive ordinal");
  TermPtr xi_n = ord_numeral(xi);
  unsigned z = y + 1, u = y + 2;
  OrdinalPredicate b{tr(app(Fn::FHR, {xi_n, app(Fn::Pair, {var(z), var(u)})})), u};
  TermPtr c = app(Fn::OPhi, {ord_numeral(ord::e_of(xi)), var(y)});
  FormulaPtr guard = conj(le(ord_numeral(ord::h_of(xi)), var(z)), lt(var(z), xi_n));
  return forall(z, imp(guard, jump_pattern(b, c)));
}

FormulaPtr f_template(const ord::Ordinal& zeta) {
  if (zeta.is_zero()) return ppred(var(0));
  return veblen_jump(zeta, 0);
}

Nat build_f(const ord::Ordinal& zeta) { return encode(*f_template(zeta)); }

namespace {

std::mutex cache_mutex;
std::map<Nat, FormulaPtr> template_cache;

FormulaPtr cached_template(const Nat& z) {
  std::lock_guard<std::mutex> lock(cache_mutex);
  auto it = template_cache.find(z);
  if (it != template_cache.end()) return it->second;
  auto o = ord::decode(z);
  FormulaPtr f = o ? f_template(*o) : nullptr;
  template_cache.emplace(z, f);
  return f;
}

}  // namespace

Nat fh_code(const Nat& z, const Nat& n) {
  FormulaPtr f = cached_template(z);
  if (!f) return 0;
  return encode(*substitute(f, 0, num(n)));
}

Nat fhr_code(const Nat& zeta, const Nat& p) {
  auto [p0, p1] = unpair(p);
  FormulaPtr f = conj(lt(num(p0), num(zeta)), tr(app(Fn::FH, {num(p0), num(p1)})));
  return encode(*f);
}

}  // namespace hype
