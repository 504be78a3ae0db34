#pragma once

#include <gmpxx.h>

#include <string>
#include <vector>

#include "padicdyn/padic.hpp"
#include "padicdyn/polynomial.hpp"

namespace padicdyn {

/// The set { g(d) + e : |d| <= p^s, |e| <= p^err } where g is a polynomial
/// in a parameter offset d shared by every model built over the same disk.
///
/// Ball arithmetic forgets that an orbit point and the parameter that moves
/// it are the same variable; near a repelling cycle that loses one radius
/// doubling per iterate. Keeping g exact (up to rounding folded into err)
/// preserves the cancellation, and the image of g over the disk is read off
/// exactly from its coefficients.
class TaylorModel {
 public:
  TaylorModel() = default;
  TaylorModel(Prime p, RadiusExp param_radius, std::vector<mpq_class> coeffs,
              RadiusExp err, long precision);

  static TaylorModel constant(Prime p, const RadiusExp& param_radius, const mpq_class& c,
                              long precision);
  /// A ball whose points vary independently of the parameter.
  static TaylorModel independent(const PadicBall& ball, const RadiusExp& param_radius,
                                 long precision);
  /// q(c + d) for the parameter disk D(c, p^s).
  static TaylorModel of_parameter(const RationalPolynomial& q, const PadicBall& disk,
                                  long precision);

  Prime prime() const { return p_; }
  const RadiusExp& param_radius() const { return s_; }
  const std::vector<mpq_class>& coefficients() const { return coeffs_; }
  const RadiusExp& error() const { return err_; }
  long precision() const { return precision_; }

  /// Exponent of the largest |value| over the set.
  RadiusExp sup_exponent() const;
  /// Smallest disk containing the set.
  PadicBall enclosure() const;

  TaylorModel operator+(const TaylorModel& o) const;
  TaylorModel operator-(const TaylorModel& o) const;
  TaylorModel operator*(const TaylorModel& o) const;

  std::string to_string() const;

  static constexpr std::size_t kMaxTerms = 192;

 private:
  RadiusExp term_norm(std::size_t j) const;
  RadiusExp poly_norm() const;
  void normalize();

  Prime p_ = 2;
  RadiusExp s_;
  std::vector<mpq_class> coeffs_;
  RadiusExp err_;
  long precision_ = 128;
};

}  // namespace padicdyn
