#pragma once

#include <gmpxx.h>

#include <string>
#include <utility>

namespace hype {

/// Arbitrary precision natural number. Codes of quoted syntax grow far past
/// 64 bits after a few levels of nested quotation.
using Nat = mpz_class;

/// Cantor pairing <x,y> = (x+y)(x+y+1)/2 + y, a bijection N x N -> N.
Nat pair(const Nat& x, const Nat& y);

/// Inverse of pair.
std::pair<Nat, Nat> unpair(const Nat& z);

std::string to_string(const Nat& n);

/// Parses a decimal literal; throws std::invalid_argument.
Nat parse_nat(const std::string& digits);

/// Small value of n, or -1 if n does not fit in a long.
long small_value(const Nat& n);

}  // namespace hype
