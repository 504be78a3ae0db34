#pragma once

#include <gmpxx.h>

#include <string>
#include <vector>

#include "padicdyn/padic.hpp"

namespace padicdyn {

/// d = a p^k + b with p^k < d <= p^(k+1), 1 <= a < p, 1 <= b < p^k and
/// p^l exactly dividing d.
struct Decomposition {
  long k;
  long l;
  long a;
  long b;
};

/// DomainError unless p is a prime below d, d is not a power of p, and b
/// lands in [1, p^k).
Decomposition decompose(long d, Prime p);

/// a(k - l) p^k / (d - 1); zero when p^k divides d (no decomposition exists
/// then, but the bound degenerates to 0 either way).
mpq_class lower_bound(long d, Prime p);

struct RadiusAnswer {
  enum class Kind { Exact, Claimed, Bounds };
  long d;
  Prime p;
  Kind kind;
  mpq_class value;     // Exact/Claimed value, or the lower bound
  std::string source;  // "p>d", "d=p^k", "d=2p", "d/2<p<d", "d=3p", "lower bound"

  /// "Exact 1 (Theorem d/2<p<d)", "Exact 0 (d=2p)", "Bounds [2, unknown)", ...
  std::string describe() const;
};
const char* to_string(RadiusAnswer::Kind k);

/// InvalidArgument unless p is prime and d >= 2.
RadiusAnswer known_radius(long d, Prime p);

/// Rows for 2 <= d <= dmax and primes p <= pmax.
std::vector<RadiusAnswer> radius_table(long dmax, Prime pmax);
/// Five columns: d p kind value source.
std::string format_radius_table(const std::vector<RadiusAnswer>& rows);
std::string radius_table_json(const std::vector<RadiusAnswer>& rows);

/// The post-critically finite map z^b (z - alpha)^A, A = a p^k, with
/// alpha^(d-1) = c = d^d / ((-A)^A b^b).
struct PcfWitness {
  long d;
  Prime p;
  Decomposition decomposition;
  long b;
  long exponent;      // A
  mpq_class c;        // alpha^(d-1)
  mpq_class v_alpha;  // v_p(c) / (d-1)
  std::string shape;  // "z (z - alpha)^2"
};

PcfWitness pcf_witness(long d, Prime p);

/// Q[alpha] / (alpha^n - c), elements as coefficient vectors of length n.
class QuotientRing {
 public:
  QuotientRing(long n, mpq_class c);

  class Element {
   public:
    const std::vector<mpq_class>& coefficients() const { return coeffs_; }
    bool is_zero() const;
    bool operator==(const Element& o) const { return coeffs_ == o.coeffs_; }
    Element operator+(const Element& o) const;
    Element operator-(const Element& o) const;
    Element operator*(const Element& o) const;
    Element operator*(const mpq_class& s) const;
    Element pow(unsigned long e) const;
    std::string to_string() const;

   private:
    friend class QuotientRing;
    Element(const QuotientRing* ring, std::vector<mpq_class> coeffs)
        : ring_(ring), coeffs_(std::move(coeffs)) {}
    const QuotientRing* ring_;
    std::vector<mpq_class> coeffs_;
  };

  long degree() const { return n_; }
  const mpq_class& modulus_constant() const { return c_; }
  Element scalar(const mpq_class& q) const;
  Element alpha() const;
  /// Reduces a polynomial in alpha of any length.
  Element reduce(const std::vector<mpq_class>& coeffs) const;

 private:
  long n_;
  mpq_class c_;
};

struct WitnessCheck {
  bool f_of_alpha_is_zero;
  bool f_of_inner_critical_is_alpha;
  bool critical_set_correct;
  bool all() const {
    return f_of_alpha_is_zero && f_of_inner_critical_is_alpha && critical_set_correct;
  }
};

WitnessCheck verify_pcf_witness(long d, Prime p);

}  // namespace padicdyn
