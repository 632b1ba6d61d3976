#include <gtest/gtest.h>

#include <algorithm>
#include <functional>

#include "hype/ordinal.hpp"
#include "support.hpp"

using namespace hype::ord;
using testsupport::random_ordinal;

namespace {

// Hereditary Cantor normal form oracle below epsilon_0: an ordinal is the
// descending list of its exponents.
struct Cnf {
  std::vector<Cnf> exps;
};

int cnf_compare(const Cnf& a, const Cnf& b) {
  std::size_t n = std::min(a.exps.size(), b.exps.size());
  for (std::size_t i = 0; i < n; ++i) {
    int c = cnf_compare(a.exps[i], b.exps[i]);
    if (c != 0) return c;
  }
  if (a.exps.size() == b.exps.size()) return 0;
  return a.exps.size() < b.exps.size() ? -1 : 1;
}

std::optional<Cnf> to_cnf(const Ordinal& a) {
  Cnf r;
  for (const auto& t : a.terms()) {
    if (!t->index.is_zero()) return std::nullopt;
    auto e = to_cnf(t->arg);
    if (!e) return std::nullopt;
    r.exps.push_back(*e);
  }
  return r;
}

int sign(std::strong_ordering o) { return o < 0 ? -1 : (o > 0 ? 1 : 0); }

// Notations below omega^omega as descending multisets of finite exponents.
Ordinal from_multiset(const std::vector<unsigned>& exps) {
  Ordinal r;
  for (unsigned e : exps) r = add(r, omega_pow(Ordinal::from_nat(e)));
  return r;
}

int multiset_compare(const std::vector<unsigned>& a, const std::vector<unsigned>& b) {
  if (std::lexicographical_compare(a.begin(), a.end(), b.begin(), b.end())) return -1;
  if (a == b) return 0;
  return 1;
}

// All descending exponent lists whose notation has at most max_size nodes
// (omega^k costs 1 + k nodes).
void enumerate(unsigned budget, unsigned max_exp, std::vector<unsigned>& cur,
               std::vector<std::vector<unsigned>>& out) {
  out.push_back(cur);
  for (unsigned e = 0; e <= max_exp && 1 + e <= budget; ++e) {
    cur.push_back(e);
    enumerate(budget - 1 - e, e, cur, out);
    cur.pop_back();
  }
}

}  // namespace

TEST(Ordinal, OmegaZeroIsOne) {
  EXPECT_EQ(omega_pow(Ordinal::zero()), Ordinal::one());
  EXPECT_EQ(compare(omega_pow(Ordinal::zero()), Ordinal::omega()), std::strong_ordering::less);
}

TEST(Ordinal, EpsilonZeroAboveOmegaOmega) {
  EXPECT_EQ(compare(parse("phi(1,0)"), parse("w^w")), std::strong_ordering::greater);
  // phi(1,0) sits above every CNF notation the oracle can express.
  std::mt19937 rng(7);
  for (int i = 0; i < 500; ++i) {
    Ordinal a = random_ordinal(rng, 3, false);
    ASSERT_TRUE(less(a, parse("phi(1,0)"))) << to_string(a);
  }
}

TEST(Ordinal, GammaSequence) {
  EXPECT_EQ(gamma_seq(0), Ordinal::omega());
  EXPECT_EQ(gamma_seq(1), veblen(Ordinal::omega(), Ordinal::zero()));
  EXPECT_TRUE(less(gamma_seq(1), gamma_seq(2)));
  for (unsigned n = 0; n < 5; ++n) EXPECT_TRUE(less(gamma_seq(n), gamma_seq(n + 1))) << n;
}

TEST(Ordinal, AdditionAbsorbs) {
  EXPECT_EQ(add(Ordinal::one(), Ordinal::omega()), Ordinal::omega());
  EXPECT_EQ(to_string(add(Ordinal::omega(), Ordinal::one())), "w+1");
}

TEST(Ordinal, VeblenZeroIsOmegaPower) {
  std::mt19937 rng(11);
  for (int i = 0; i < 100; ++i) {
    Ordinal a = random_ordinal(rng, 3);
    EXPECT_EQ(veblen(Ordinal::zero(), a), omega_pow(a));
  }
}

TEST(Ordinal, VeblenCollapsesFixedPoints) {
  Ordinal eps0 = veblen(Ordinal::one(), Ordinal::zero());
  EXPECT_EQ(omega_pow(eps0), eps0);
  EXPECT_FALSE(Ordinal::raw({{Ordinal::zero(), eps0}}).is_normal());
  EXPECT_THROW(compare(Ordinal::raw({{Ordinal::zero(), eps0}}), eps0), NotNormal);
}

TEST(Ordinal, UnsortedSumIsNotNormal) {
  Ordinal bad = Ordinal::raw({{Ordinal::zero(), Ordinal::zero()}, {Ordinal::zero(), Ordinal::one()}});
  EXPECT_FALSE(bad.is_normal());
}

TEST(Ordinal, DecompositionExamples) {
  EXPECT_EQ(e_of(parse("w^w")), Ordinal::omega());
  EXPECT_EQ(h_of(parse("w^w")), Ordinal::zero());
  EXPECT_EQ(e_of(parse("w^2+w")), Ordinal::one());
  EXPECT_EQ(h_of(parse("w^2+w")), parse("w^2"));
  EXPECT_EQ(e_of(Ordinal::zero()), Ordinal::zero());
  EXPECT_EQ(h_of(Ordinal::zero()), Ordinal::zero());
}

TEST(Ordinal, HeadPlusLastPowerIsIdentity) {
  std::mt19937 rng(3);
  int checked = 0;
  while (checked < 10000) {
    Ordinal xi = random_ordinal(rng, 3);
    if (xi.is_zero()) continue;
    ASSERT_EQ(add(h_of(xi), omega_pow(e_of(xi))), xi) << to_string(xi);
    ++checked;
  }
}

TEST(Ordinal, TowerValues) {
  EXPECT_EQ(omega_tower(0), Ordinal::one());
  EXPECT_EQ(omega_tower(1), Ordinal::omega());
  EXPECT_EQ(omega_tower(2), parse("w^w"));
}

TEST(Ordinal, Classification) {
  EXPECT_EQ(classify(Ordinal::zero()).kind, Kind::Zero);
  auto s = classify(parse("w+1"));
  EXPECT_EQ(s.kind, Kind::Successor);
  EXPECT_EQ(s.pred, Ordinal::omega());
  EXPECT_EQ(classify(parse("phi(1,0)")).kind, Kind::Limit);
  // Oracle: below epsilon_0 an ordinal is a limit iff its last exponent is positive.
  std::mt19937 rng(5);
  for (int i = 0; i < 2000; ++i) {
    Ordinal a = random_ordinal(rng, 3, false);
    if (a.is_zero()) continue;
    auto c = to_cnf(a);
    ASSERT_TRUE(c);
    bool limit = !c->exps.back().exps.empty();
    EXPECT_EQ(classify(a).kind == Kind::Limit, limit) << to_string(a);
  }
}

TEST(Ordinal, StrictTotalOrder) {
  std::mt19937 rng(42);
  std::vector<Ordinal> xs;
  for (int i = 0; i < 10000; ++i) xs.push_back(random_ordinal(rng, 3));
  for (std::size_t i = 0; i < xs.size(); ++i) {
    const auto& a = xs[i];
    const auto& b = xs[(i * 7919 + 1) % xs.size()];
    const auto& c = xs[(i * 104729 + 3) % xs.size()];
    ASSERT_FALSE(less(a, a));
    int ab = sign(compare(a, b));
    ASSERT_EQ(ab, -sign(compare(b, a)));
    ASSERT_EQ(ab == 0, a == b);
    if (less(a, b) && less(b, c)) ASSERT_TRUE(less(a, c));
  }
  // Sorting then checking adjacent pairs exercises transitivity globally.
  std::sort(xs.begin(), xs.end(), [](const Ordinal& a, const Ordinal& b) { return less(a, b); });
  for (std::size_t i = 0; i + 1 < xs.size(); ++i) ASSERT_FALSE(less(xs[i + 1], xs[i]));
}

TEST(Ordinal, AgreesWithCnfOracleBelowEpsilonZero) {
  std::mt19937 rng(9);
  for (int i = 0; i < 5000; ++i) {
    Ordinal a = random_ordinal(rng, 3, false);
    Ordinal b = random_ordinal(rng, 3, false);
    auto ca = to_cnf(a), cb = to_cnf(b);
    ASSERT_TRUE(ca && cb);
    ASSERT_EQ(sign(compare(a, b)), cnf_compare(*ca, *cb)) << to_string(a) << " vs " << to_string(b);
  }
}

TEST(Ordinal, AgreesWithMultisetOracleBelowOmegaOmega) {
  std::vector<std::vector<unsigned>> all;
  std::vector<unsigned> cur;
  enumerate(8, 7, cur, all);
  std::vector<Ordinal> notes;
  for (const auto& m : all) {
    notes.push_back(from_multiset(m));
    ASSERT_LE(notes.back().size(), 8u);
  }
  for (std::size_t i = 0; i < all.size(); ++i)
    for (std::size_t j = 0; j < all.size(); ++j)
      ASSERT_EQ(sign(compare(notes[i], notes[j])), multiset_compare(all[i], all[j]));
}

TEST(Ordinal, AdditionLaws) {
  std::mt19937 rng(13);
  for (int i = 0; i < 2000; ++i) {
    Ordinal a = random_ordinal(rng, 2), b = random_ordinal(rng, 2), c = random_ordinal(rng, 2);
    ASSERT_EQ(add(add(a, b), c), add(a, add(b, c)));
    ASSERT_EQ(add(a, Ordinal::zero()), a);
    ASSERT_EQ(add(Ordinal::zero(), a), a);
    Ordinal ab = add(a, b);
    ASSERT_FALSE(less(ab, a));
    ASSERT_TRUE(ab.is_normal());
    ASSERT_EQ(less(a, ab), !b.is_zero());
  }
}

TEST(Ordinal, NothingBelowZero) {
  std::mt19937 rng(17);
  for (int i = 0; i < 1000; ++i) EXPECT_FALSE(less(random_ordinal(rng, 3), Ordinal::zero()));
}

TEST(Ordinal, PrintParseRoundTrip) {
  std::mt19937 rng(19);
  for (int i = 0; i < 3000; ++i) {
    Ordinal a = random_ordinal(rng, 3);
    ASSERT_EQ(parse(to_string(a)), a) << to_string(a);
  }
}

TEST(Ordinal, CodeRoundTrip) {
  std::mt19937 rng(23);
  for (int i = 0; i < 2000; ++i) {
    Ordinal a = random_ordinal(rng, 3);
    auto d = decode(encode(a));
    ASSERT_TRUE(d);
    ASSERT_EQ(*d, a);
  }
  EXPECT_EQ(encode(Ordinal::zero()), 0);
  // Code of a non-normal sum is rejected.
  Ordinal bad = Ordinal::raw({{Ordinal::zero(), Ordinal::zero()}, {Ordinal::zero(), Ordinal::one()}});
  EXPECT_FALSE(decode(encode(bad)));
}

TEST(Ordinal, MultiplyByNatural) {
  EXPECT_EQ(mul_nat(parse("w^2+w"), 3), parse("w^2+w^2+w^2+w"));
  EXPECT_EQ(mul_nat(parse("w"), 0), Ordinal::zero());
  EXPECT_EQ(mul_nat(parse("3"), 2), parse("6"));
}
