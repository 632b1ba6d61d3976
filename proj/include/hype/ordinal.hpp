#pragma once

#include <compare>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "hype/nat.hpp"

namespace hype::ord {

class Ordinal;

/// A single Veblen term phi(index, arg). phi(0, b) is omega^b.
struct VeblenTerm;

/// Notation for an ordinal below Gamma_0: a weakly decreasing sum of Veblen
/// terms, empty for zero. Values built through the public constructors are
/// always in normal form; `raw` exists to feed non-normal input to checks.
class Ordinal {
 public:
  Ordinal() = default;

  static Ordinal zero() { return {}; }
  static Ordinal one();
  static Ordinal omega();
  static Ordinal from_nat(unsigned long n);

  /// Unnormalized sum of phi(index_i, arg_i); only for tests of is_normal.
  static Ordinal raw(std::vector<std::pair<Ordinal, Ordinal>> terms);

  bool is_zero() const { return terms_.empty(); }
  const std::vector<std::shared_ptr<const VeblenTerm>>& terms() const { return terms_; }

  /// Structural normal-form check (sorted summands, no absorbed arguments).
  bool is_normal() const;

  /// Number of phi nodes.
  std::size_t size() const;

  friend bool operator==(const Ordinal& a, const Ordinal& b);

 private:
  std::vector<std::shared_ptr<const VeblenTerm>> terms_;

  friend Ordinal add(const Ordinal&, const Ordinal&);
  friend Ordinal veblen(const Ordinal&, const Ordinal&);
  friend Ordinal h_of(const Ordinal&);
  friend std::optional<Ordinal> decode(const Nat&);
};

struct VeblenTerm {
  Ordinal index;
  Ordinal arg;
};

class NotNormal : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Strict total order on normal notations; throws NotNormal otherwise.
std::strong_ordering compare(const Ordinal& a, const Ordinal& b);
inline bool less(const Ordinal& a, const Ordinal& b) { return compare(a, b) < 0; }

Ordinal add(const Ordinal& a, const Ordinal& b);
Ordinal veblen(const Ordinal& index, const Ordinal& arg);
inline Ordinal omega_pow(const Ordinal& a) { return veblen(Ordinal::zero(), a); }
/// a * n for a natural multiplier n.
Ordinal mul_nat(const Ordinal& a, const Nat& n);

/// Last exponent / remaining head of the Cantor normal form.
Ordinal e_of(const Ordinal& xi);
Ordinal h_of(const Ordinal& xi);

/// omega_0 = 1, omega_{n+1} = omega^{omega_n}.
Ordinal omega_tower(unsigned n);
/// gamma_0 = omega, gamma_{n+1} = phi(gamma_n, 0).
Ordinal gamma_seq(unsigned n);

enum class Kind { Zero, Successor, Limit };
struct Classification {
  Kind kind;
  Ordinal pred;  // set for successors
};
Classification classify(const Ordinal& a);

/// Natural-number value when a < omega.
std::optional<unsigned long> finite_value(const Ordinal& a);

std::string to_string(const Ordinal& a);
/// Grammar: 0 | digits | w | w^a | a+b | phi(a,b) | (a).
Ordinal parse(std::string_view text);

/// Injective coding into the naturals; code(0) = 0.
Nat encode(const Ordinal& a);
/// Inverse of encode on its image; nullopt for codes of non-normal terms.
std::optional<Ordinal> decode(const Nat& code);

}  // namespace hype::ord
