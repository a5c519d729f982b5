#pragma once

#include <string>
#include <vector>

#include "qsplit/arith.hpp"

// Local Hilbert symbols over Q at every place, the ramification set and
// reduced discriminant of the quaternion algebra H_Q(a, b), and the
// closed-form split/discriminant classification for prime pairs.

namespace qsplit {

struct Place {
  bool finite = true;
  Int p = 0;  // the prime, when finite

  static Place real() { return {false, 0}; }
  static Place at(Int prime) { return {true, std::move(prime)}; }

  std::string str() const { return finite ? p.get_str() : "oo"; }
  bool operator==(const Place& o) const { return finite == o.finite && p == o.p; }
};

// Hilbert symbol (a, b)_v over Q_v (or R), always +1 or -1.
// Real place: -1 iff a < 0 and b < 0.  Odd p with a = p^s u, b = p^t v:
// (-1)^(st (p-1)/2) (u/p)^t (v/p)^s.  p = 2 with odd parts u, v:
// (-1)^(eps(u) eps(v) + s w(v) + t w(u)), eps(x) = (x-1)/2, w(x) = (x^2-1)/8.
SymbolValue hilbert_symbol(const Int& a, const Int& b, const Place& v);

struct Ramification {
  std::vector<Place> places;       // even cardinality, sorted finite-first
  Int reduced_discriminant = 1;    // product of the finite ramified primes
  bool real_ramified = false;
};

// Ramified places of H_Q(a, b).  Only the real place, 2, and primes dividing
// a or b can ramify, so the scan is finite.
Ramification ramified_set(const Int& a, const Int& b,
                          const FactorBudget& budget = {});

// Whether H_Q(p, q) is a matrix algebra, by the four-case prime-pair
// classification (p = q = 2; p = q = 1 mod 4; one of them 2 and the other
// +-1 mod 8; distinct odd with (q/p) = 1 and one of them 1 mod 4).
bool split_pq_over_q(const Int& p, const Int& q);

// Reduced discriminant of H_Q(p, q): 1 when split, else 2p / 2q / pq per the
// prime-pair discriminant table.  Cross-checked against ramified_set in the
// test suites.
Int discriminant_pq(const Int& p, const Int& q);

}  // namespace qsplit
