#include "hype/nat.hpp"

#include <stdexcept>

namespace hype {

Nat pair(const Nat& x, const Nat& y) {
  Nat s = x + y;
  Nat r = s * (s + 1);
  r /= 2;
  r += y;
  return r;
}

std::pair<Nat, Nat> unpair(const Nat& z) {
  // w = floor((sqrt(8z+1) - 1) / 2)
  Nat t = 8 * z + 1;
  Nat root;
  mpz_sqrt(root.get_mpz_t(), t.get_mpz_t());
  Nat w = (root - 1) / 2;
  Nat tri = w * (w + 1) / 2;
  Nat y = z - tri;
  Nat x = w - y;
  return {x, y};
}

std::string to_string(const Nat& n) { return n.get_str(); }

Nat parse_nat(const std::string& digits) {
  if (digits.empty()) throw std::invalid_argument("empty numeral");
  for (char c : digits)
    if (c < '0' || c > '9') throw std::invalid_argument("bad numeral: " + digits);
  return Nat(digits, 10);
}

long small_value(const Nat& n) {
  if (n.fits_slong_p()) return n.get_si();
  return -1;
}

}  // namespace hype
