#include "qsplit/quadfield.hpp"

#include <algorithm>
#include <cassert>

namespace qsplit {

namespace {

void require_same_field(const QuadraticField& a, const QuadraticField& b) {
  if (!(a == b)) throw std::logic_error("mixed quadratic fields");
}

Int pow_int(const Int& p, unsigned long e) {
  Int r;
  mpz_pow_ui(r.get_mpz_t(), p.get_mpz_t(), e);
  return r;
}

// Square root of a mod an odd prime p; requires (a/p) != -1.
Int sqrt_mod_p(const Int& a_in, const Int& p) {
  Int a = mod_floor(a_in, p);
  if (a == 0) return 0;
  if (mod_floor(p, 4) == 3) return powmod(a, (p + 1) / 4, p);

  // Tonelli-Shanks.
  Int q = p - 1;
  unsigned long s = mpz_scan1(q.get_mpz_t(), 0);
  mpz_tdiv_q_2exp(q.get_mpz_t(), q.get_mpz_t(), s);
  Int z = 2;
  while (mpz_jacobi(z.get_mpz_t(), p.get_mpz_t()) != -1) ++z;
  Int m = s;
  Int c = powmod(z, q, p);
  Int t = powmod(a, q, p);
  Int r = powmod(a, (q + 1) / 2, p);
  while (t != 1) {
    Int t2 = t;
    unsigned long i = 0;
    while (t2 != 1) {
      t2 = (t2 * t2) % p;
      ++i;
    }
    Int b = c;
    for (Int j = 0; j < m - i - 1; ++j) b = (b * b) % p;
    r = (r * b) % p;
    c = (b * b) % p;
    t = (t * c) % p;
    m = i;
  }
  return r;
}

// Hensel lift of r0 with r0^2 = d (mod p) to a root mod p^e, p odd, r0 != 0.
Int lift_sqrt_root(const Int& r0, const Int& d, const Int& p, unsigned long e) {
  Int r = r0;
  unsigned long k = 1;
  while (k < e) {
    unsigned long k2 = std::min(2 * k, e);
    const Int pk2 = pow_int(p, k2);
    Int inv;
    Int two_r = mod_floor(2 * r, pk2);
    if (mpz_invert(inv.get_mpz_t(), two_r.get_mpz_t(), pk2.get_mpz_t()) == 0)
      throw std::logic_error("Hensel lift: derivative not invertible");
    r = mod_floor(r - (r * r - d) * inv, pk2);
    k = k2;
  }
  return r;
}

// 2-adic Newton lift of the simple root t0 of f(t) = t^2 - t + c mod 2^e.
Int lift_root_two(const Int& t0, const Int& c, unsigned long e) {
  Int t = t0;
  unsigned long k = 1;
  while (k < e) {
    unsigned long k2 = std::min(2 * k, e);
    const Int mod = pow_int(2, k2);
    Int deriv = mod_floor(2 * t - 1, mod);
    Int inv;
    mpz_invert(inv.get_mpz_t(), deriv.get_mpz_t(), mod.get_mpz_t());
    t = mod_floor(t - (t * t - t + c) * inv, mod);
    k = k2;
  }
  return t;
}

std::string signed_term(const Int& coeff, const std::string& sym, bool leading) {
  std::string s;
  if (coeff >= 0 && !leading) s += "+";
  if (coeff == -1)
    s += "-";
  else if (coeff != 1)
    s += coeff.get_str() + "*";
  s += sym;
  return s;
}

}  // namespace

QuadraticField::QuadraticField(Int d) : d_(std::move(d)) {
  if (d_ == 0 || d_ == 1)
    throw std::invalid_argument("quadratic field needs d not in {0, 1}");
  if (!is_squarefree(d_))
    throw std::invalid_argument("quadratic field needs squarefree d");
  half_ = mod_floor(d_, 4) == 1;
  disc_ = half_ ? d_ : 4 * d_;
}

QuadraticInteger QuadraticField::from_omega(Int a, Int b) const {
  return QuadraticInteger(*this, std::move(a), std::move(b));
}

QuadraticInteger QuadraticField::from_sqrt(Int x, Int y) const {
  if (half_) return QuadraticInteger(*this, x - y, 2 * y);
  return QuadraticInteger(*this, std::move(x), std::move(y));
}

std::optional<QuadraticInteger> QuadraticField::from_half(const Int& u, const Int& v) const {
  if (mpz_even_p(u.get_mpz_t()) && mpz_even_p(v.get_mpz_t()))
    return from_sqrt(u / 2, v / 2);
  if (half_ && mpz_odd_p(u.get_mpz_t()) && mpz_odd_p(v.get_mpz_t()))
    return QuadraticInteger(*this, (u - v) / 2, v);
  return std::nullopt;
}

QuadraticInteger QuadraticField::integer(Int n) const {
  return QuadraticInteger(*this, std::move(n), 0);
}

QuadraticInteger::QuadraticInteger(QuadraticField K, Int a, Int b)
    : K_(std::move(K)), a_(std::move(a)), b_(std::move(b)) {}

Int QuadraticInteger::norm() const {
  if (K_.half_basis()) return a_ * a_ + a_ * b_ + b_ * b_ * ((1 - K_.d()) / 4);
  return a_ * a_ - K_.d() * b_ * b_;
}

Int QuadraticInteger::trace() const {
  if (K_.half_basis()) return 2 * a_ + b_;
  return 2 * a_;
}

QuadraticInteger QuadraticInteger::conjugate() const {
  if (K_.half_basis()) return {K_, a_ + b_, -b_};
  return {K_, a_, -b_};
}

QuadraticInteger::SqrtCoords QuadraticInteger::sqrt_coords() const {
  if (!K_.half_basis()) return {a_, b_, 1};
  if (mpz_even_p(b_.get_mpz_t())) return {a_ + b_ / 2, b_ / 2, 1};
  return {2 * a_ + b_, b_, 2};
}

bool QuadraticInteger::in_z_sqrt_d() const { return sqrt_coords().w == 1; }

QuadraticInteger QuadraticInteger::operator+(const QuadraticInteger& o) const {
  require_same_field(K_, o.K_);
  return {K_, a_ + o.a_, b_ + o.b_};
}

QuadraticInteger QuadraticInteger::operator-(const QuadraticInteger& o) const {
  require_same_field(K_, o.K_);
  return {K_, a_ - o.a_, b_ - o.b_};
}

QuadraticInteger QuadraticInteger::operator*(const QuadraticInteger& o) const {
  require_same_field(K_, o.K_);
  if (K_.half_basis()) {
    // w^2 = w + (d-1)/4
    const Int m = (K_.d() - 1) / 4;
    return {K_, a_ * o.a_ + b_ * o.b_ * m, a_ * o.b_ + b_ * o.a_ + b_ * o.b_};
  }
  return {K_, a_ * o.a_ + K_.d() * b_ * o.b_, a_ * o.b_ + b_ * o.a_};
}

QuadraticInteger QuadraticInteger::operator-() const { return {K_, -a_, -b_}; }

QuadraticInteger QuadraticInteger::operator*(const Int& n) const {
  return {K_, a_ * n, b_ * n};
}

bool QuadraticInteger::operator==(const QuadraticInteger& o) const {
  return K_ == o.K_ && a_ == o.a_ && b_ == o.b_;
}

std::string QuadraticInteger::str() const {
  const auto [u, v, w] = sqrt_coords();
  const std::string sym = "sqrt(" + K_.d().get_str() + ")";
  std::string s;
  if (w == 1) {
    if (v == 0) return u.get_str();
    if (u != 0) s += u.get_str();
    s += signed_term(v, sym, u == 0);
  } else {
    s = "(" + u.get_str() + signed_term(v, sym, false) + ")/2";
  }
  return s;
}

const char* to_string(SplitKind k) {
  switch (k) {
    case SplitKind::Split: return "split";
    case SplitKind::Inert: return "inert";
    case SplitKind::Ramified: return "ramified";
  }
  return "?";
}

Int PrimeIdeal::absolute_norm() const { return f == 2 ? p * p : p; }

std::string PrimeIdeal::str() const {
  if (kind == SplitKind::Inert) return "(" + p.get_str() + ")";
  std::string s = "P" + p.get_str();
  if (which != 0) s += which == 1 ? "" : "'";
  return s;
}

SplitKind splitting_type(const Int& p, const QuadraticField& K) {
  if (p == 2) {
    const Int r = mod_floor(K.d(), 8);
    if (r == 1) return SplitKind::Split;
    if (r == 5) return SplitKind::Inert;
    return SplitKind::Ramified;
  }
  if (mpz_divisible_p(K.discriminant().get_mpz_t(), p.get_mpz_t()))
    return SplitKind::Ramified;
  return legendre(K.d(), p) == 1 ? SplitKind::Split : SplitKind::Inert;
}

std::vector<PrimeIdeal> primes_above(const Int& p, const QuadraticField& K) {
  const SplitKind kind = splitting_type(p, K);
  if (kind == SplitKind::Inert) return {{K, p, kind, 0, 2, 0}};
  if (kind == SplitKind::Ramified) {
    Int root = p == 2 ? mod_floor(K.d(), 2) : Int(0);
    return {{K, p, kind, 0, 1, root}};
  }
  Int r = p == 2 ? Int(0) : sqrt_mod_p(K.d(), p);
  if (p != 2) r = std::min(r, p - r);
  return {{K, p, kind, 1, 1, r}, {K, p, kind, 2, 1, p == 2 ? Int(1) : p - r}};
}

unsigned long valuation(const QuadraticInteger& alpha, const PrimeIdeal& P) {
  if (alpha.is_zero()) throw std::invalid_argument("valuation of 0");
  require_same_field(alpha.field(), P.field);
  const Int& p = P.p;
  const Int n = abs(alpha.norm());
  const unsigned long vn = mpz_divisible_p(n.get_mpz_t(), p.get_mpz_t())
                               ? valuation_int(n, p)
                               : 0;
  if (P.kind == SplitKind::Inert) {
    assert(vn % 2 == 0);
    return vn / 2;
  }
  if (P.kind == SplitKind::Ramified) return vn;
  if (vn == 0) return 0;

  if (p != 2) {
    // Valuation of the image of alpha in the completion K_P = Q_p, where
    // sqrt(d) maps to the Hensel lift of this ideal's root.  Work with
    // 2*alpha = u + v sqrt(d), harmless since p is odd.
    const auto sc = alpha.sqrt_coords();
    const Int u = sc.w == 2 ? sc.u : 2 * sc.u;
    const Int v = sc.w == 2 ? sc.v : 2 * sc.v;
    const Int r = lift_sqrt_root(P.root, alpha.field().d(), p, vn + 1);
    const Int t = mod_floor(u + v * r, pow_int(p, vn + 1));
    if (t == 0) return vn;
    return std::min(valuation_int(t, p), static_cast<unsigned long>(vn));
  }

  // p = 2 split (d = 1 mod 8): lift the root of t^2 - t + (1-d)/4.
  const Int c = (1 - alpha.field().d()) / 4;
  const Int t = lift_root_two(P.root, c, vn + 2);
  const Int x = mod_floor(alpha.a() + alpha.b() * t, pow_int(2, vn + 2));
  if (x == 0) return vn;
  return std::min(valuation_int(x, 2), static_cast<unsigned long>(vn));
}

namespace {

// Image of alpha in the residue field O_K/P = F_p, for odd P of degree 1.
Int residue_image(const QuadraticInteger& alpha, const PrimeIdeal& P) {
  const Int& p = P.p;
  Int omega_image;
  if (alpha.field().half_basis()) {
    Int inv2;
    Int two = 2;
    mpz_invert(inv2.get_mpz_t(), two.get_mpz_t(), p.get_mpz_t());
    omega_image = mod_floor((1 + P.root) * inv2, p);
  } else {
    omega_image = P.root;
  }
  return mod_floor(alpha.a() + alpha.b() * omega_image, p);
}

}  // namespace

SymbolValue residue_symbol(const QuadraticInteger& alpha, const PrimeIdeal& P) {
  if (P.p == 2)
    throw std::invalid_argument("residue symbol implemented for odd primes only");
  if (alpha.is_zero()) throw std::invalid_argument("residue symbol of 0");
  require_same_field(alpha.field(), P.field);
  if (is_square_in_K(alpha)) return 1;
  if (valuation(alpha, P) > 0) return 0;
  if (P.kind == SplitKind::Inert) return legendre(alpha.norm(), P.p);
  return legendre(residue_image(alpha, P), P.p);
}

std::optional<QuadraticInteger> sqrt_in_K(const QuadraticInteger& alpha) {
  const QuadraticField& K = alpha.field();
  if (alpha.is_zero()) return K.integer(0);
  const Int n2 = alpha.norm();
  if (n2 < 0 || !is_perfect_square(n2)) return std::nullopt;
  const Int n = isqrt(n2);
  const Int tr = alpha.trace();

  // beta^2 = alpha forces N(beta) in {n, -n} and Tr(beta)^2 = Tr(alpha) + 2 N(beta).
  for (const Int& s : {n, -n}) {
    const Int t2 = tr + 2 * s;
    if (t2 < 0 || !is_perfect_square(t2)) {
      if (n == 0) break;
      continue;
    }
    const Int t = isqrt(t2);
    // (beta - conj(beta))^2 = t^2 - 4s = v^2 d, with beta = (t + v sqrt d)/2.
    const Int disc = t * t - 4 * s;
    std::vector<Int> vs;
    if (disc == 0) {
      vs.push_back(0);
    } else {
      if (!mpz_divisible_p(disc.get_mpz_t(), K.d().get_mpz_t())) continue;
      const Int v2 = disc / K.d();
      if (v2 < 0 || !is_perfect_square(v2)) continue;
      const Int v = isqrt(v2);
      vs = {v, -v};
    }
    for (const Int& tt : {t, -t}) {
      for (const Int& vv : vs) {
        const auto beta = K.from_half(tt, vv);
        if (beta && (*beta) * (*beta) == alpha) return beta;
      }
      if (t == 0) break;
    }
    if (n == 0) break;
  }
  return std::nullopt;
}

bool is_square_in_K(const QuadraticInteger& alpha) {
  return sqrt_in_K(alpha).has_value();
}

FundamentalUnit fundamental_unit(const QuadraticField& K, unsigned long max_period) {
  if (K.d() < 2)
    throw std::invalid_argument("fundamental unit needs a real field, d > 1");

  // Continued fraction of w: (P + sqrt d)/Q with (P, Q) = (1, 2) in the
  // half-integer case and (0, 1) otherwise.  The fundamental unit is the
  // first convergent h/k with |N(h - k conj(w))| = 1.
  const Int d = K.d();
  const Int s = isqrt(d);
  Int P = K.half_basis() ? 1 : 0;
  Int Q = K.half_basis() ? 2 : 1;
  Int h_prev = 1, h_prev2 = 0;  // h_{-1}, h_{-2}
  Int k_prev = 0, k_prev2 = 1;

  for (unsigned long step = 0; step < max_period; ++step) {
    const Int a = (P + s) / Q;  // floor((P + sqrt d)/Q), Q > 0
    const Int h = a * h_prev + h_prev2;
    const Int k = a * k_prev + k_prev2;

    // candidate = h - k * conj(w)
    QuadraticInteger cand = K.half_basis() ? K.from_omega(h - k, k)
                                           : K.from_sqrt(h, k);
    const Int nrm = cand.norm();
    if (nrm == 1 || nrm == -1) {
      return {cand, nrm == 1 ? 1 : -1, cand.in_z_sqrt_d()};
    }

    h_prev2 = h_prev;
    h_prev = h;
    k_prev2 = k_prev;
    k_prev = k;
    P = a * Q - P;
    Q = (d - P * P) / Q;
    if (Q <= 0) throw std::logic_error("continued fraction left the reduced cycle");
  }
  throw std::runtime_error("continued fraction period exceeds configured bound");
}

QuadraticInteger adjusted_unit(const QuadraticField& K) {
  const FundamentalUnit fu = fundamental_unit(K);
  if (mod_floor(K.d(), 8) == 5 && !fu.in_z_sqrt_d) {
    QuadraticInteger e3 = fu.unit * fu.unit * fu.unit;
    if (!e3.in_z_sqrt_d()) throw std::logic_error("unit cube not in Z[sqrt d]");
    return e3;
  }
  return fu.unit;
}

D1Decomposition d1_decomposition(const QuadraticField& K) {
  const QuadraticInteger eps = adjusted_unit(K);
  if (eps.norm() != 1)
    throw std::invalid_argument("d1 decomposition needs a norm +1 unit");
  const auto sc = eps.sqrt_coords();
  assert(sc.w == 1);
  const Int x = sc.u;
  const bool x_odd = mpz_odd_p(x.get_mpz_t());

  // Positive divisors of the squarefree d, smallest first.
  const Factorization df = factor(K.d());
  std::vector<Int> divisors{1};
  for (const auto& [p, e] : df.primes) {
    const size_t count = divisors.size();
    for (size_t i = 0; i < count; ++i) divisors.push_back(divisors[i] * p);
  }
  std::sort(divisors.begin(), divisors.end());

  for (const Int& d1 : divisors) {
    const Int d2 = K.d() / d1;
    const Int m1 = x_odd ? 2 * d1 : d1;
    const Int m2 = x_odd ? 2 * d2 : d2;
    if (!mpz_divisible_p(Int(x + 1).get_mpz_t(), m1.get_mpz_t())) continue;
    if (!mpz_divisible_p(Int(x - 1).get_mpz_t(), m2.get_mpz_t())) continue;
    const Int q1 = (x + 1) / m1;
    const Int q2 = (x - 1) / m2;
    if (!is_perfect_square(q1) || !is_perfect_square(q2)) continue;
    const Int y1 = isqrt(q1), y2 = isqrt(q2);
    // Certificate: (y1 d1 + y2 sqrt d)^2 equals d1 eps (x odd) or 2 d1 eps.
    const QuadraticInteger tau = K.from_sqrt(y1 * d1, y2);
    const QuadraticInteger target = eps * (x_odd ? d1 : 2 * d1);
    if (tau * tau == target) return {d1, d2, y1, y2, x_odd};
  }
  throw std::logic_error("no divisor satisfies the unit square decomposition");
}

ExtensionClass classify_extension(const QuadraticInteger& alpha) {
  if (alpha.is_zero()) throw std::invalid_argument("classify_extension(0)");
  if (is_square_in_K(alpha))
    throw std::invalid_argument("alpha is a square: K(sqrt(alpha)) is not quartic");
  const Int n2 = alpha.norm();
  if (is_perfect_square(n2)) {
    const Int n = isqrt(n2);
    const Int tr = alpha.trace();
    // (alpha +- n)^2 = alpha (Tr(alpha) +- 2n), so alpha times either value
    // is a square in K; d1 is the squarefree part of whichever is nonzero.
    Int c = tr + 2 * n;
    if (c == 0) c = tr - 2 * n;
    const Int d1 = squarefree_part(c);
    if (!is_square_in_K(alpha * d1))
      throw std::logic_error("biquadratic d1 extraction failed");
    return {ExtensionClass::Biquadratic, d1};
  }
  if (is_perfect_square(alpha.field().d() * n2))
    return {ExtensionClass::CyclicQuartic, 0};
  return {ExtensionClass::Generic, 0};
}

}  // namespace qsplit
