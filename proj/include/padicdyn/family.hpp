#pragma once

#include <gmpxx.h>

#include <string>
#include <vector>

#include "padicdyn/dynamics.hpp"
#include "padicdyn/invariant_union.hpp"
#include "padicdyn/polynomial.hpp"

namespace padicdyn {

/// f_t(z) = sum a_i(t) z^i, monic with a_0 = 0, together with polynomial
/// expressions c_j(t) for its critical points.
class PolynomialFamily {
 public:
  /// Checks that f_t' = d * prod_j (z - c_j(t)) identically in t; throws
  /// NotACriticalPoint otherwise.
  PolynomialFamily(std::string name, Prime p, std::vector<RationalPolynomial> coeffs,
                   std::vector<RationalPolynomial> critical_points);

  /// "cubic2" (z^3 - (3/2) t z^2 over Q_2), "cubic<p>" for that cubic over
  /// another prime, "quadratic<p>" (z^2 - 2 t z). InvalidArgument otherwise.
  static PolynomialFamily builtin(const std::string& name);

  const std::string& name() const { return name_; }
  Prime prime() const { return p_; }
  int degree() const { return static_cast<int>(coeffs_.size()) - 1; }
  const std::vector<RationalPolynomial>& coefficients() const { return coeffs_; }
  const std::vector<RationalPolynomial>& critical_points() const { return critical_; }

  MonicPolynomial instantiate(const PadicScalar& t) const;
  std::vector<PadicScalar> critical_points_at(const PadicScalar& t) const;

  /// Coefficients as parameter models over the disk.
  BallPolynomial over_disk(const PadicBall& disk, long precision) const;
  TaylorModel critical_point_over_disk(std::size_t j, const PadicBall& disk, long precision) const;
  ParametricPolynomial parametric() const;

  std::string to_string() const;

 private:
  std::string name_;
  Prime p_;
  std::vector<RationalPolynomial> coeffs_;
  std::vector<RationalPolynomial> critical_;
};

}  // namespace padicdyn
