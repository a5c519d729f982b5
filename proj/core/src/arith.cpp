#include "qsplit/arith.hpp"

#include <algorithm>
#include <array>
#include <cstdlib>

namespace qsplit {

namespace {

constexpr std::array<unsigned, 54> kSmallPrimes = {
    2,   3,   5,   7,   11,  13,  17,  19,  23,  29,  31,  37,  41,  43,
    47,  53,  59,  61,  67,  71,  73,  79,  83,  89,  97,  101, 103, 107,
    109, 113, 127, 131, 137, 139, 149, 151, 157, 163, 167, 173, 179, 181,
    191, 193, 197, 199, 211, 223, 227, 229, 233, 239, 241, 251};

// Strong probable prime test to base a; n odd > 2, n - 1 = d * 2^s.
bool strong_prp(const Int& n, const Int& a, const Int& d, unsigned long s) {
  Int x = powmod(a, d, n);
  const Int nm1 = n - 1;
  if (x == 1 || x == nm1) return true;
  for (unsigned long r = 1; r < s; ++r) {
    x = (x * x) % n;
    if (x == nm1) return true;
    if (x == 1) return false;
  }
  return false;
}

// Strong Lucas probable prime test with Selfridge's parameter choice
// (D = 5, -7, 9, -11, ... with (D/n) = -1, P = 1, Q = (1-D)/4).
bool strong_lucas_prp(const Int& n) {
  if (mpz_perfect_square_p(n.get_mpz_t())) return false;

  Int d_param = 5;
  while (true) {
    int j = mpz_jacobi(d_param.get_mpz_t(), n.get_mpz_t());
    if (j == -1) break;
    if (j == 0 && abs(d_param) != n) return false;  // proper factor found
    d_param = d_param > 0 ? -(d_param + 2) : -(d_param - 2);
  }
  const Int q_param = (1 - d_param) / 4;

  Int index = n + 1;
  unsigned long s = mpz_scan1(index.get_mpz_t(), 0);
  Int d_odd;
  mpz_tdiv_q_2exp(d_odd.get_mpz_t(), index.get_mpz_t(), s);

  auto mod_n = [&](Int v) {
    Int r;
    mpz_fdiv_r(r.get_mpz_t(), v.get_mpz_t(), n.get_mpz_t());
    return r;
  };
  auto halve = [&](Int v) {
    if (mpz_odd_p(v.get_mpz_t())) v += n;
    return mod_n(v >> 1);
  };

  // Compute U_{d_odd}, V_{d_odd}, Q^{d_odd} by a MSB-first double-and-add
  // chain on the Lucas sequences with P = 1.
  Int u = 1, v = 1, qk = mod_n(q_param);  // U_1, V_1, Q^1
  const size_t bits = mpz_sizeinbase(d_odd.get_mpz_t(), 2);
  for (size_t i = bits - 1; i-- > 0;) {
    u = mod_n(u * v);
    v = mod_n(v * v - 2 * qk);
    qk = mod_n(qk * qk);
    if (mpz_tstbit(d_odd.get_mpz_t(), i)) {
      Int u2 = halve(u + v);                 // U_{2k+1} = (P U + V)/2
      Int v2 = halve(d_param * u + v);       // V_{2k+1} = (D U + P V)/2
      u = std::move(u2);
      v = std::move(v2);
      qk = mod_n(qk * q_param);
    }
  }

  if (u == 0 || v == 0) return true;
  for (unsigned long r = 1; r < s; ++r) {
    v = mod_n(v * v - 2 * qk);
    if (v == 0) return true;
    qk = mod_n(qk * qk);
  }
  return false;
}

// Pollard-Brent with batched gcd; returns a nontrivial factor of odd
// composite n or throws once the iteration budget is exhausted.
Int pollard_brent(const Int& n, std::uint64_t max_iters) {
  std::uint64_t spent = 0;
  for (unsigned long c = 1;; ++c) {
    Int y = 2, r = 1, q = 1, g = 1, x, ys;
    const unsigned long m = 128;
    while (g == 1) {
      x = y;
      for (Int i = 0; i < r; ++i) y = (y * y + c) % n;
      Int k = 0;
      while (k < r && g == 1) {
        ys = y;
        unsigned long lim = m;
        if (r - k < lim) lim = mpz_get_ui(Int(r - k).get_mpz_t());
        for (unsigned long i = 0; i < lim; ++i) {
          y = (y * y + c) % n;
          q = q * abs(x - y) % n;
        }
        g = gcd(q, n);
        k += m;
        spent += lim;
        if (spent > max_iters)
          throw FactorLimitError("factoring budget exhausted for " + n.get_str());
      }
      r *= 2;
    }
    if (g == n) {
      // Backtrack one step at a time to recover the factor.
      do {
        ys = (ys * ys + c) % n;
        g = gcd(abs(x - ys), n);
      } while (g == 1);
    }
    if (g != n) return g;
    // Cycle degenerated for this c; retry with the next polynomial.
  }
}

void factor_into(Int n, std::vector<Int>& out, const FactorBudget& budget) {
  if (n == 1) return;
  if (is_prime(n)) {
    out.push_back(n);
    return;
  }
  Int d = pollard_brent(n, budget.rho_iterations);
  factor_into(d, out, budget);
  factor_into(n / d, out, budget);
}

}  // namespace

Int Factorization::value() const {
  Int v = sign;
  for (const auto& [p, e] : primes)
    for (unsigned i = 0; i < e; ++i) v *= p;
  return v;
}

bool Factorization::contains(const Int& p) const {
  return std::any_of(primes.begin(), primes.end(),
                     [&](const auto& pe) { return pe.first == p; });
}

Int mod_floor(const Int& a, const Int& m) {
  Int r;
  mpz_fdiv_r(r.get_mpz_t(), a.get_mpz_t(), m.get_mpz_t());
  return r;
}

Int powmod(const Int& base, const Int& exp, const Int& mod) {
  Int r;
  mpz_powm(r.get_mpz_t(), base.get_mpz_t(), exp.get_mpz_t(), mod.get_mpz_t());
  return r;
}

bool is_perfect_square(const Int& n) {
  return n >= 0 && mpz_perfect_square_p(n.get_mpz_t());
}

Int isqrt(const Int& n) {
  if (n < 0) throw std::invalid_argument("isqrt of negative value");
  Int r;
  mpz_sqrt(r.get_mpz_t(), n.get_mpz_t());
  return r;
}

unsigned long valuation_int(const Int& n, const Int& p) {
  if (n == 0) throw std::invalid_argument("valuation of 0");
  Int rest;
  return mpz_remove(rest.get_mpz_t(), n.get_mpz_t(), p.get_mpz_t());
}

bool is_prime(const Int& n) {
  if (n < 0) throw std::invalid_argument("is_prime expects n >= 0");
  if (n < 2) return false;
  for (unsigned p : kSmallPrimes) {
    if (n == p) return true;
    if (mpz_divisible_ui_p(n.get_mpz_t(), p)) return false;
  }
  if (n < 64009) return true;  // 253^2; no factor <= 251

  Int nm1 = n - 1;
  unsigned long s = mpz_scan1(nm1.get_mpz_t(), 0);
  Int d;
  mpz_tdiv_q_2exp(d.get_mpz_t(), nm1.get_mpz_t(), s);

  if (mpz_sizeinbase(n.get_mpz_t(), 2) <= 64) {
    // Deterministic for n < 3.3 * 10^24, in particular below 2^64.
    for (unsigned a : {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37})
      if (!strong_prp(n, a, d, s)) return false;
    return true;
  }
  return strong_prp(n, 2, d, s) && strong_lucas_prp(n);
}

Factorization factor(const Int& n, const FactorBudget& budget) {
  if (n == 0) throw std::invalid_argument("factor(0)");
  Factorization f;
  f.sign = n < 0 ? -1 : 1;
  Int rest = abs(n);

  std::vector<Int> found;
  for (std::uint64_t p = 2; p <= budget.trial_limit && rest > 1;
       p += (p == 2 ? 1 : 2)) {
    if (p * p > rest) break;
    while (mpz_divisible_ui_p(rest.get_mpz_t(), p)) {
      found.emplace_back(p);
      rest /= static_cast<unsigned long>(p);
    }
  }
  if (rest > 1) {
    if (Int(budget.trial_limit) * Int(budget.trial_limit) >= rest)
      found.push_back(rest);  // below the trial bound squared, hence prime
    else
      factor_into(rest, found, budget);
  }

  std::sort(found.begin(), found.end());
  for (const Int& p : found) {
    if (!f.primes.empty() && f.primes.back().first == p)
      ++f.primes.back().second;
    else
      f.primes.emplace_back(p, 1);
  }
  return f;
}

bool is_squarefree(const Int& n) {
  if (n == 0) return false;
  const Factorization f = factor(n);
  return std::all_of(f.primes.begin(), f.primes.end(),
                     [](const auto& pe) { return pe.second == 1; });
}

Int squarefree_part(const Int& n) {
  const Factorization f = factor(n);
  Int s = f.sign;
  for (const auto& [p, e] : f.primes)
    if (e % 2 == 1) s *= p;
  return s;
}

SymbolValue legendre(const Int& a, const Int& p) {
  if (p < 3 || mpz_even_p(p.get_mpz_t()))
    throw std::invalid_argument("legendre: modulus must be an odd prime");
  if (mpz_sizeinbase(p.get_mpz_t(), 2) <= 64 && !is_prime(p))
    throw std::invalid_argument("legendre: modulus must be an odd prime");
  const Int r = mod_floor(a, p);
  if (r == 0) return 0;
  const Int e = powmod(r, (p - 1) / 2, p);
  if (e == 1) return 1;
  if (e == p - 1) return -1;
  throw std::invalid_argument("legendre: modulus is composite");
}

SymbolValue biquadratic_symbol(const Int& a, const Int& p) {
  if (mod_floor(p, 4) != 1)
    throw std::invalid_argument("biquadratic symbol needs p = 1 (mod 4)");
  if (legendre(a, p) != 1)
    throw std::invalid_argument("biquadratic symbol needs (a/p) = 1");
  const Int e = powmod(mod_floor(a, p), (p - 1) / 4, p);
  if (e == 1) return 1;
  if (e == p - 1) return -1;
  throw std::invalid_argument("biquadratic symbol: modulus is composite");
}

SymbolValue biquadratic_symbol_composite(const Int& a, const Int& d,
                                         const FactorBudget& budget) {
  if (d < 1) throw std::invalid_argument("composite biquadratic symbol: d must be positive");
  const Factorization f = factor(d, budget);
  SymbolValue s = 1;
  for (const auto& [p, e] : f.primes) {
    if (e != 1) throw std::invalid_argument("composite biquadratic symbol: d not squarefree");
    if (mod_floor(p, 4) != 1)
      throw std::invalid_argument("composite biquadratic symbol: prime factor not 1 (mod 4)");
    s *= biquadratic_symbol(a, p);
  }
  return s;
}

Int fibonacci(unsigned long n) {
  // Fast doubling: F(2k) = F(k) (2 F(k+1) - F(k)), F(2k+1) = F(k)^2 + F(k+1)^2.
  Int a = 0, b = 1;  // (F_k, F_{k+1}) with k = 0
  if (n == 0) return a;
  const int bits = 64 - __builtin_clzll(n);
  for (int i = bits - 1; i >= 0; --i) {
    Int c = a * (2 * b - a);
    Int t = a * a + b * b;
    if ((n >> i) & 1) {
      a = t;
      b = c + t;
    } else {
      a = std::move(c);
      b = std::move(t);
    }
  }
  return a;
}

}  // namespace qsplit
