#pragma once

#include <optional>
#include <string>
#include <vector>

#include "qsplit/arith.hpp"

// Arithmetic of the quadratic field K = Q(sqrt(d)): integers of O_K, norms,
// prime splitting, ideal valuations, residue symbols, fundamental units and
// the square decompositions of units the splitting criteria need.
//
// Elements are stored exactly on the integral basis {1, w}, where
// w = (1+sqrt(d))/2 when d = 1 (mod 4) and w = sqrt(d) otherwise.

namespace qsplit {

class QuadraticInteger;

class QuadraticField {
 public:
  // d squarefree, d not in {0, 1}; throws std::invalid_argument otherwise.
  explicit QuadraticField(Int d);

  const Int& d() const { return d_; }
  const Int& discriminant() const { return disc_; }
  bool half_basis() const { return half_; }  // w = (1+sqrt d)/2 ?

  QuadraticInteger from_omega(Int a, Int b) const;  // a + b w
  QuadraticInteger from_sqrt(Int x, Int y) const;   // x + y sqrt(d)
  // (u + v sqrt(d))/2 when that lies in O_K.
  std::optional<QuadraticInteger> from_half(const Int& u, const Int& v) const;
  QuadraticInteger integer(Int n) const;

  bool operator==(const QuadraticField& o) const { return d_ == o.d_; }

 private:
  Int d_;
  Int disc_;
  bool half_ = false;
};

// An element a + b*w of O_K with exact integer coordinates.
class QuadraticInteger {
 public:
  QuadraticInteger(QuadraticField K, Int a, Int b);

  const QuadraticField& field() const { return K_; }
  const Int& a() const { return a_; }
  const Int& b() const { return b_; }

  bool is_zero() const { return a_ == 0 && b_ == 0; }
  bool is_rational() const { return b_ == 0; }

  Int norm() const;   // a rational integer, multiplicative
  Int trace() const;
  QuadraticInteger conjugate() const;

  // Coordinates over sqrt(d):  *this = (u + v sqrt(d)) / w  with w in {1, 2}.
  struct SqrtCoords {
    Int u, v, w;
  };
  SqrtCoords sqrt_coords() const;
  bool in_z_sqrt_d() const;

  QuadraticInteger operator+(const QuadraticInteger& o) const;
  QuadraticInteger operator-(const QuadraticInteger& o) const;
  QuadraticInteger operator*(const QuadraticInteger& o) const;
  QuadraticInteger operator-() const;
  QuadraticInteger operator*(const Int& n) const;
  bool operator==(const QuadraticInteger& o) const;

  std::string str() const;  // "x+y*sqrt(d)" or "a+b*w" rendering

 private:
  QuadraticField K_;
  Int a_, b_;
};

enum class SplitKind { Split, Inert, Ramified };

const char* to_string(SplitKind k);

// A prime of O_K above the rational prime p.  For split p there are two
// conjugates, tagged which = 1, 2; inert and ramified primes carry which = 0.
// root is a residue datum identifying the ideal: for odd split/ramified p a
// square root of d mod p (the conjugate uses p - root); for p = 2 split the
// root in {0,1} of t^2 - t + (1-d)/4 mod 2.
struct PrimeIdeal {
  QuadraticField field;
  Int p;
  SplitKind kind = SplitKind::Inert;
  int which = 0;
  unsigned f = 2;  // inertia degree
  Int root = 0;

  Int absolute_norm() const;
  std::string str() const;
  bool operator==(const PrimeIdeal& o) const {
    return field == o.field && p == o.p && which == o.which;
  }
};

// Splitting behavior of p in O_K: for odd p decided by (d/p) and p | disc,
// for p = 2 by d mod 8 (split iff d = 1, inert iff d = 5, ramified else).
SplitKind splitting_type(const Int& p, const QuadraticField& K);

// The primes of O_K above p: two conjugates for split p, one otherwise.
// Split roots are produced by Tonelli-Shanks and normalized so that ideal
// #1 carries the smaller root.
std::vector<PrimeIdeal> primes_above(const Int& p, const QuadraticField& K);

// Exact P-adic valuation of alpha != 0.  Inert: v_p(N)/2; ramified: v_p(N);
// split: the root is Hensel-lifted far enough to read off the valuation of
// the image of alpha in the completion, capped so the two conjugate
// valuations add up to v_p(N(alpha)).
unsigned long valuation(const QuadraticInteger& alpha, const PrimeIdeal& P);

// Quadratic residue symbol (alpha/P) for an odd prime P of O_K.
// +1 if alpha is a square in K; 0 if alpha lies in P; otherwise evaluated in
// the residue field (inertia degree 1) or through the norm (inert case).
SymbolValue residue_symbol(const QuadraticInteger& alpha, const PrimeIdeal& P);

// Square root in K when it exists.  An element of O_K with a square root in
// K has it in O_K, so the search is over integral candidates.
std::optional<QuadraticInteger> sqrt_in_K(const QuadraticInteger& alpha);
bool is_square_in_K(const QuadraticInteger& alpha);

struct FundamentalUnit {
  QuadraticInteger unit;
  int norm_sign;      // N(unit), +1 or -1
  bool in_z_sqrt_d;   // whether the unit lies in Z[sqrt d]
};

// Fundamental unit of O_K for real d > 1, from the continued fraction of w.
// Throws std::runtime_error if the expansion exceeds max_period steps.
FundamentalUnit fundamental_unit(const QuadraticField& K,
                                 unsigned long max_period = 1'000'000);

// The unit the splitting criteria work with: eps_d^3 when d = 5 (mod 8) and
// eps_d has half-integer coordinates, else eps_d itself.  Always lies in
// Z[sqrt d].
QuadraticInteger adjusted_unit(const QuadraticField& K);

// For a norm +1 adjusted unit eps = x + y sqrt(d): the unique squarefree
// divisor d1 of d with x+1 = 2 d1 y1^2, x-1 = 2 d2 y2^2 (x odd) or
// x+1 = d1 y1^2, x-1 = d2 y2^2 (x even); d1 eps resp. 2 d1 eps is then the
// square of y1 d1 + y2 sqrt(d), which is verified by explicit squaring.
struct D1Decomposition {
  Int d1, d2;
  Int y1, y2;
  bool x_odd;
};
D1Decomposition d1_decomposition(const QuadraticField& K);

// Shape of the quartic extension K(sqrt(alpha))/Q for non-square alpha:
// biquadratic iff N(alpha) is a perfect square (then alpha = t^2 d1 for a
// squarefree integer d1, unique up to square classes shared with d),
// cyclic quartic iff d N(alpha) is a perfect square, generic otherwise.
struct ExtensionClass {
  enum Kind { Biquadratic, CyclicQuartic, Generic } kind;
  Int d1 = 0;  // set for Biquadratic
};
ExtensionClass classify_extension(const QuadraticInteger& alpha);

}  // namespace qsplit
