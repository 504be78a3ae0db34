#pragma once

#include <gmpxx.h>

#include <initializer_list>
#include <random>

namespace test_support {

using Rng = std::mt19937_64;

inline long uniform(Rng& rng, long lo, long hi) { return std::uniform_int_distribution<long>(lo, hi)(rng); }

inline unsigned long pick(Rng& rng, std::initializer_list<unsigned long> xs) {
  return *(xs.begin() + uniform(rng, 0, static_cast<long>(xs.size()) - 1));
}

inline mpq_class pow_p(unsigned long p, long e) {
  mpz_class r = 1;
  for (long i = 0; i < (e < 0 ? -e : e); ++i) r *= p;
  return e >= 0 ? mpq_class(r) : mpq_class(mpz_class(1), r);
}

inline constexpr long kInfiniteValuation = 1L << 40;

// Trial division, kept separate from the library's valuation code.
inline long oracle_valuation(const mpz_class& n, unsigned long p) {
  if (n == 0) return kInfiniteValuation;
  mpz_class m = abs(n);
  long v = 0;
  while (m % p == 0) {
    m /= p;
    ++v;
  }
  return v;
}

inline long oracle_valuation(const mpq_class& q, unsigned long p) {
  return oracle_valuation(q.get_num(), p) - oracle_valuation(q.get_den(), p);
}

// Nonzero rational with valuation roughly in [emin, emax].
inline mpq_class random_rational(Rng& rng, unsigned long p, long emin, long emax) {
  mpq_class q(uniform(rng, 1, 60), uniform(rng, 1, 60));
  q.canonicalize();
  if (uniform(rng, 0, 1)) q = -q;
  return q * pow_p(p, uniform(rng, emin, emax));
}

// Fate of the free critical point t under z^3 - (3/2) t z^2 over Q_2, computed
// with plain rationals reduced modulo 2^prec. For v(t) >= -1 an iterate with
// valuation below -2 escapes, and each step costs at most 4 bits of precision.
enum class Fate { Escapes, StaysBounded };

inline mpq_class reduce_mod_2(const mpq_class& x, long prec) {
  const long e = oracle_valuation(mpz_class(x.get_den()), 2);
  const mpz_class odd = x.get_den() >> e;
  const mpz_class mod = mpz_class(1) << (prec + e);
  mpz_class inv;
  mpz_invert(inv.get_mpz_t(), odd.get_mpz_t(), mod.get_mpz_t());
  mpz_class r = (x.get_num() * inv) % mod;
  if (r < 0) r += mod;
  mpq_class out(r, mpz_class(1) << e);
  out.canonicalize();
  return out;
}

inline Fate cubic2_fate(const mpq_class& t, long steps) {
  long prec = 8 * steps + 64;
  mpq_class z = t;
  const mpq_class a = mpq_class(3, 2) * t;
  for (long n = 0; n < steps; ++n) {
    z = z * z * z - a * z * z;
    prec -= 4;
    if (sgn(z) != 0) {
      const long v = oracle_valuation(z, 2);
      if (v < -2 && v < prec) return Fate::Escapes;
    }
    z = reduce_mod_2(z, prec);
  }
  return Fate::StaysBounded;
}

}  // namespace test_support
