#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <stdexcept>
#include <utility>
#include <vector>

// Exact arithmetic over the rational integers: primality, factorization,
// Fibonacci numbers, and the quadratic / biquadratic residue symbols that
// the rest of the library is built on.  All multiprecision values are
// GMP mpz_class; every function here is a pure function of its arguments.

namespace qsplit {

using Int = mpz_class;

// Residue and Hilbert symbols take values in {-1, 0, +1}; 0 only occurs
// for the quadratic residue symbol in the ramified case.
using SymbolValue = int;

// Thrown when a cofactor resists factoring within the configured budget.
struct FactorLimitError : std::runtime_error {
  explicit FactorLimitError(const std::string& what) : std::runtime_error(what) {}
};

struct FactorBudget {
  // Pollard-Brent iterations per composite before giving up.
  std::uint64_t rho_iterations = 20'000'000;
  // Trial division bound (always also capped at sqrt of the remaining part).
  std::uint64_t trial_limit = 100'000;
};

struct Factorization {
  int sign = 1;                                   // -1 for negative inputs
  std::vector<std::pair<Int, unsigned>> primes;   // strictly increasing bases

  Int value() const;                              // sign * prod p^e
  bool contains(const Int& p) const;
};

// a mod m in [0, m), m > 0.  mpz_class{%} truncates toward zero, which is
// wrong for the negative operands that show up all over quadratic fields.
Int mod_floor(const Int& a, const Int& m);

Int powmod(const Int& base, const Int& exp, const Int& mod);

bool is_perfect_square(const Int& n);
Int isqrt(const Int& n);  // floor sqrt, n >= 0

// Exponent of p in n (n != 0); divides n_out by p^e when n_out is given.
unsigned long valuation_int(const Int& n, const Int& p);

// Primality.  Deterministic (fixed Miller-Rabin base set) for n < 2^64;
// above that a Baillie-PSW test: strong base-2 Miller-Rabin followed by a
// strong Lucas test with Selfridge parameters.  No BPSW pseudoprime is
// known, but for n >= 2^64 the result is technically "probable prime".
bool is_prime(const Int& n);

// Complete factorization of n != 0: trial division, then Pollard-Brent on
// what remains, every reported base certified by is_prime.  Throws
// FactorLimitError when the budget runs out (never returns a wrong answer).
Factorization factor(const Int& n, const FactorBudget& budget = {});

bool is_squarefree(const Int& n);

// Largest squarefree divisor with the sign of n:  n = squarefree_part * t^2.
Int squarefree_part(const Int& n);

// Legendre symbol (a/p) for an odd prime p, computed by Euler's criterion.
// Negative and unreduced a are reduced mod p first.  Primality of p is
// verified for word-sized p; multiprecision moduli are the caller's
// responsibility (the check would cost as much as the symbol itself).
SymbolValue legendre(const Int& a, const Int& p);

// Rational biquadratic symbol (a/p)_4 = a^((p-1)/4) mod p, defined only for
// p = 1 (mod 4) with (a/p) = 1; anything else is invalid-argument.
SymbolValue biquadratic_symbol(const Int& a, const Int& p);

// (a/d)_4 for squarefree d = p_1 ... p_n with every p_j = 1 (mod 4):
// the product of the per-prime symbols.  Requires (a/p_j) = 1 for all j.
SymbolValue biquadratic_symbol_composite(const Int& a, const Int& d,
                                         const FactorBudget& budget = {});

// F_n by fast doubling.  F_0 = 0, F_1 = 1.
Int fibonacci(unsigned long n);

}  // namespace qsplit
