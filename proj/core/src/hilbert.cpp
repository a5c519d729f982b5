#include "qsplit/hilbert.hpp"

#include <algorithm>
#include <set>

namespace qsplit {

namespace {

int eps2(const Int& u) { return mod_floor(u, 4) == 1 ? 0 : 1; }        // (u-1)/2 mod 2
int omega2(const Int& u) {
  const Int r = mod_floor(u, 8);
  return (r == 1 || r == 7) ? 0 : 1;                                   // (u^2-1)/8 mod 2
}

void require_prime(const Int& p) {
  if (!is_prime(p)) throw std::invalid_argument("expected a prime, got " + p.get_str());
}

}  // namespace

SymbolValue hilbert_symbol(const Int& a, const Int& b, const Place& v) {
  if (a == 0 || b == 0)
    throw std::invalid_argument("Hilbert symbol needs nonzero arguments");
  if (!v.finite) return (a < 0 && b < 0) ? -1 : 1;

  const Int& p = v.p;
  require_prime(p);
  Int u = a, w = b;
  const unsigned long s = valuation_int(a, p);
  const unsigned long t = valuation_int(b, p);
  for (unsigned long i = 0; i < s; ++i) u /= p;
  for (unsigned long i = 0; i < t; ++i) w /= p;

  if (p != 2) {
    int sign = 1;
    if ((s * t) % 2 == 1 && mod_floor(p, 4) == 3) sign = -sign;
    if (t % 2 == 1) sign *= legendre(u, p);
    if (s % 2 == 1) sign *= legendre(w, p);
    return sign;
  }
  const int e = eps2(u) * eps2(w) + static_cast<int>(s % 2) * omega2(w) +
                static_cast<int>(t % 2) * omega2(u);
  return e % 2 == 0 ? 1 : -1;
}

Ramification ramified_set(const Int& a, const Int& b, const FactorBudget& budget) {
  if (a == 0 || b == 0)
    throw std::invalid_argument("ramified_set needs nonzero arguments");

  std::set<Int> candidates{2};
  for (const auto& [p, e] : factor(a, budget).primes) candidates.insert(p);
  for (const auto& [p, e] : factor(b, budget).primes) candidates.insert(p);

  Ramification ram;
  for (const Int& p : candidates) {
    if (hilbert_symbol(a, b, Place::at(p)) == -1) {
      ram.places.push_back(Place::at(p));
      ram.reduced_discriminant *= p;
    }
  }
  if (hilbert_symbol(a, b, Place::real()) == -1) {
    ram.places.push_back(Place::real());
    ram.real_ramified = true;
  }
  if (ram.places.size() % 2 != 0)
    throw std::logic_error("ramification set has odd cardinality");
  return ram;
}

bool split_pq_over_q(const Int& p, const Int& q) {
  require_prime(p);
  require_prime(q);
  if (p == 2 && q == 2) return true;
  if (p == q && mod_floor(p, 4) == 1) return true;
  if (q == 2 && (mod_floor(p, 8) == 1 || mod_floor(p, 8) == 7)) return true;
  if (p == 2 && (mod_floor(q, 8) == 1 || mod_floor(q, 8) == 7)) return true;
  if (p != q && p != 2 && q != 2 && legendre(q, p) == 1 &&
      (mod_floor(p, 4) == 1 || mod_floor(q, 4) == 1))
    return true;
  return false;
}

Int discriminant_pq(const Int& p, const Int& q) {
  if (split_pq_over_q(p, q)) return 1;
  const bool p3 = mod_floor(p, 4) == 3, q3 = mod_floor(q, 4) == 3;
  if (p3 && q3) {
    // Note (q/p) = 0 covers p = q.
    if (p != 2 && legendre(q, p) != 1) return 2 * p;
    return 2 * q;
  }
  if (q == 2) return 2 * p;  // p = 3, 5 (mod 8); the split cases are gone already
  if (p == 2) return 2 * q;
  // Distinct odd primes, one of them 1 mod 4, (p/q) = (q/p) = -1.
  return p * q;
}

}  // namespace qsplit
