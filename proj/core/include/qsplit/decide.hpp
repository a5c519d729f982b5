#pragma once

#include <optional>
#include <string>
#include <vector>

#include "qsplit/hilbert.hpp"
#include "qsplit/quadfield.hpp"

// Decision procedures for whether the quaternion algebra H_K(alpha, m) over
// K = Q(sqrt d) splits or is a division algebra: the general residue-symbol
// criterion, its specializations (rational alpha, biquadratic / cyclic
// quartic K(sqrt alpha), fundamental units of either norm), the prime-pair
// classification, and an independent evaluation path through the global
// Hilbert symbol at every candidate prime.

namespace qsplit {

enum class Verdict { Split, Division };
const char* to_string(Verdict v);

// Side conditions the criteria need on (alpha, m, d).  Two admissible modes:
// either alpha is odd (no prime above 2 divides it), or 2 does not split in
// K (d != 1 mod 8), in which case the symbol above 2 is forced by the
// product formula.
enum class HypMode { OddAlpha, NonSplitTwo };
const char* to_string(HypMode m);

struct HypothesisCheck {
  std::string name;
  bool pass;
  std::string detail;
};

struct Hypotheses {
  HypMode mode;
  std::vector<HypothesisCheck> checks;
  bool all_pass() const;
  std::string failure_summary() const;
};

// Thrown by decision procedures when the hypotheses fail.
struct HypothesisError : std::invalid_argument {
  explicit HypothesisError(const std::string& w) : std::invalid_argument(w) {}
};
// Thrown when a specialized criterion's side conditions do not hold; the
// caller falls back to the general criterion.
struct InapplicableError : std::runtime_error {
  explicit InapplicableError(const std::string& w) : std::runtime_error(w) {}
};

Hypotheses check_hypotheses(const QuadraticInteger& alpha, const Int& m,
                            HypMode mode);

// m / gcd(m, d) = (q_1 ... q_t)^lambda (r_1 ... r_s)^gamma with (d/q_i) = -1
// and (d/r_j) = +1.
struct MDecomposition {
  Int m_reduced;
  int lambda = 0, gamma = 0;
  std::vector<Int> q_primes, r_primes;
};
MDecomposition m_decomposition(const Int& m, const QuadraticField& K);

// The prime ideals P with v_P(alpha) odd and prime absolute norm, p odd.
// (Ideals above 2 are excluded: under OddAlpha none exist, and under
// NonSplitTwo the symbol above 2 is determined by the product formula.)
struct OddValuationEntry {
  PrimeIdeal ideal;
  unsigned long v;
};
std::vector<OddValuationEntry> odd_valuation_set(const QuadraticInteger& alpha);

struct Condition {
  std::string name;
  std::string value;
  bool holds;
};

struct Decision {
  Verdict verdict;
  std::string rule;
  std::vector<Condition> evidence;
  std::vector<Int> ramified_hint;  // prime-pair path: Q-ramified primes that split in K

  bool split() const { return verdict == Verdict::Split; }
};

// The general criterion: H_K(alpha, m) splits iff
//   (N(alpha)/q_i) = (alpha/Q_i) = 1 for all i   (when lambda = 1),
//   (N(alpha)/r_j) = (alpha/R_j) = 1 for all j   (when gamma = 1),
//   (m/N(P)) = 1 for every P with odd v_P(alpha) and prime norm.
// Throws HypothesisError when check_hypotheses fails.
Decision decide_general(const QuadraticInteger& alpha, const Int& m, HypMode mode);

// Rational alpha, prime m, NonSplitTwo mode.  Split iff every prime divisor
// of the squarefree part of alpha that splits in K is a quadratic residue
// mod m, and additionally (alpha/m) = 1 when (d/m) = 1.  The evidence names
// the square-class branch that applied.
Decision decide_rational(const Int& alpha, const Int& m, const QuadraticField& K);

// K(sqrt alpha) biquadratic, i.e. N(alpha) a perfect square, alpha = t^2 d1.
// Split iff (d1/r_j) = 1 for all j and (m/p) = 1 for every odd prime p | d1
// with (p, d) = 1 and (d/p) = 1.
Decision decide_biquadratic(const QuadraticInteger& alpha, const Int& m,
                            HypMode mode);

// K(sqrt alpha) cyclic quartic: d = 1 (mod 4), a^2 = d (b^2 + c^2).
// Split iff lambda = 0, each r_j satisfies
//   (-1)^((r_j - 1)(d - 1)/8) (2/r_j)^b (r_j/d)_4 = 1,
// and (m/N(P)) = 1 on the odd-valuation set.
struct CyclicQuarticParams {
  Int a, b, c;
};
Decision decide_cyclic_quartic(const CyclicQuarticParams& params,
                               const QuadraticInteger& alpha, const Int& m,
                               HypMode mode);

// alpha = fundamental unit of norm -1, d = p_1 ... p_n with all p_j and m
// prime and = 1 (mod 4), gamma = 1 and (p_j/r_i) = 1 throughout: split iff
// every r_i = 1 (mod 4) and (r_i/d)_4 (d/r_i)_4 = 1.  Throws
// InapplicableError when the side conditions fail.
Decision decide_unit_negative_norm(const QuadraticField& K, const Int& m);

// alpha = fundamental unit with norm +1 adjusted unit eps = x + y sqrt d,
// gamma = 1: split iff (d1/r_j) = 1 for all j (x odd) or
// (2/r_j) = (d1/r_j) for all j (x even), d1 from the unit decomposition.
Decision decide_unit_positive_norm(const QuadraticField& K, const Int& m);

// H_K(p, q) for positive primes p, q: division iff one of the three cases of
// the prime-pair classification fires (checked in both orientations).
Decision decide_prime_pair(const Int& p, const Int& q, const QuadraticField& K);

// Independent evaluation path: the candidate prime ideals (above primes
// dividing 2 N(alpha) m disc(K)) where the global Hilbert symbol
// (alpha, m / P) is -1.  Empty iff H_K(alpha, m) splits.  Under NonSplitTwo
// the symbol above 2 is filled in by the product formula.
std::vector<PrimeIdeal> global_symbol_ramification(const QuadraticInteger& alpha,
                                                   const Int& m, HypMode mode);

}  // namespace qsplit
