#pragma once

#include <gmpxx.h>

#include <span>
#include <string>
#include <vector>

#include "padicdyn/padic.hpp"

namespace padicdyn {

// Coefficient lists are indexed low-to-high: coeffs[i] multiplies z^i.

PadicScalar evaluate(std::span<const PadicScalar> coeffs, const PadicScalar& z);
std::vector<PadicScalar> derivative(std::span<const PadicScalar> coeffs);
/// Coefficients b_i of g(a + w) = sum b_i w^i, i.e. b_i = g^(i)(a)/i!.
std::vector<PadicScalar> taylor_shift(std::span<const PadicScalar> coeffs,
                                      const PadicScalar& a);

/// Comma-separated scalar literals, low-to-high.
std::vector<PadicScalar> parse_coefficients(Prime p, std::string_view text);
std::string format_coefficients(std::span<const PadicScalar> coeffs);

/// Dense univariate polynomial over Q.
class RationalPolynomial {
 public:
  RationalPolynomial() = default;
  explicit RationalPolynomial(std::vector<mpq_class> coeffs);
  static RationalPolynomial constant(mpq_class c);
  /// c * x^k
  static RationalPolynomial monomial(mpq_class c, unsigned k);

  const std::vector<mpq_class>& coefficients() const { return coeffs_; }
  /// -1 for the zero polynomial.
  int degree() const { return static_cast<int>(coeffs_.size()) - 1; }
  bool is_zero() const { return coeffs_.empty(); }
  mpq_class coefficient(unsigned i) const;

  mpq_class operator()(const mpq_class& x) const;
  PadicScalar operator()(const PadicScalar& x) const;
  /// The polynomial q(d) = self(c + d).
  RationalPolynomial shifted(const mpq_class& c) const;
  RationalPolynomial derivative() const;

  RationalPolynomial operator+(const RationalPolynomial& o) const;
  RationalPolynomial operator-(const RationalPolynomial& o) const;
  RationalPolynomial operator*(const RationalPolynomial& o) const;
  RationalPolynomial operator*(const mpq_class& c) const;
  bool operator==(const RationalPolynomial& o) const { return coeffs_ == o.coeffs_; }

  std::string to_string(const std::string& var = "t") const;

 private:
  void trim();
  std::vector<mpq_class> coeffs_;
};

}  // namespace padicdyn
