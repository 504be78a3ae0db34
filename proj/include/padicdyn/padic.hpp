#pragma once

#include <gmpxx.h>

#include <compare>
#include <optional>
#include <string>
#include <string_view>

#include "padicdyn/error.hpp"

namespace padicdyn {

using Prime = unsigned long;

// Number-theoretic helpers shared by every module.
bool is_prime(unsigned long n);
mpz_class prime_power(Prime p, unsigned long e);
/// v_p(n) for n != 0.
long valuation_of(const mpz_class& n, Prime p);
/// v_p(q) for q != 0.
long valuation_of(const mpq_class& q, Prime p);
/// The p-free part of q != 0 reduced to an integer in [1, p^digits).
mpz_class unit_residue(const mpq_class& q, Prime p, long digits);
/// Smallest integer >= q.
long ceil_to_long(const mpq_class& q);
long floor_to_long(const mpq_class& q);
std::string to_string(const mpq_class& q);

/// v_p(x) as reported for a scalar: a value, a lower bound, or +infinity.
struct Valuation {
  enum class Kind { Finite, AtLeast, Infinite };
  Kind kind = Kind::Infinite;
  long value = 0;

  static Valuation finite(long v) { return {Kind::Finite, v}; }
  static Valuation at_least(long v) { return {Kind::AtLeast, v}; }
  static Valuation infinite() { return {Kind::Infinite, 0}; }

  bool is_finite() const { return kind == Kind::Finite; }
  bool is_lower_bound() const { return kind == Kind::AtLeast; }
  bool is_infinite() const { return kind == Kind::Infinite; }
  std::string to_string() const;
  bool operator==(const Valuation&) const = default;
};

/// An element of Q_p. Either an exact rational, a truncated expansion
/// p^v * u + O(p^(v+N)) with p not dividing u, or a zero known only to
/// some absolute precision. Values are immutable.
class PadicScalar {
 public:
  enum class Kind { Exact, Truncated, ZeroToPrecision };

  PadicScalar() = default;

  static PadicScalar exact(Prime p, mpq_class q);
  static PadicScalar integer(Prime p, long n);
  static PadicScalar zero(Prime p) { return integer(p, 0); }
  static PadicScalar one(Prime p) { return integer(p, 1); }
  /// p^valuation * unit + O(p^(valuation + rel_precision)).
  static PadicScalar truncated(Prime p, long valuation, mpz_class unit,
                               long rel_precision);
  /// 0 + O(p^known_valuation).
  static PadicScalar zero_to(Prime p, long known_valuation);
  /// q + O(p^absolute_precision); collapses to zero_to when v(q) >= that.
  static PadicScalar from_absolute(Prime p, const mpq_class& q,
                                   long absolute_precision);
  /// q rounded to rel_precision significant p-digits.
  static PadicScalar from_relative(Prime p, const mpq_class& q,
                                   long rel_precision);

  /// Parses the printed forms: "a/b", "a", "p^v * u", each optionally
  /// followed by "+ O(p^A)", or a bare "O(p^A)".
  static PadicScalar parse(Prime p, std::string_view text);

  Prime prime() const { return p_; }
  Kind kind() const { return kind_; }
  bool is_exact() const { return kind_ == Kind::Exact; }
  bool is_exact_zero() const { return kind_ == Kind::Exact && sgn(exact_) == 0; }
  bool is_zero_to_precision() const { return kind_ == Kind::ZeroToPrecision; }
  /// Exact zero or a zero to precision.
  bool may_be_zero() const { return is_exact_zero() || is_zero_to_precision(); }

  Valuation valuation() const;
  /// v_p(x) when it is a known finite value; AmbiguousValuation otherwise
  /// (callers skip exact zeros before asking).
  long certain_valuation() const;
  /// Absolute precision v+N; nullopt for exact values.
  std::optional<long> absolute_precision() const;
  std::optional<long> relative_precision() const;

  /// The exact rational (Exact kind only).
  const mpq_class& rational() const;
  /// A rational representative: the exact value, p^v*u, or 0.
  mpq_class representative() const;
  const mpz_class& unit() const { return unit_; }

  /// Caps the relative precision at digits; exact values become truncated.
  PadicScalar truncate(long digits) const;

  std::string to_string() const;

  PadicScalar operator-() const;
  friend PadicScalar operator+(const PadicScalar& x, const PadicScalar& y);
  friend PadicScalar operator-(const PadicScalar& x, const PadicScalar& y);
  friend PadicScalar operator*(const PadicScalar& x, const PadicScalar& y);
  friend PadicScalar operator/(const PadicScalar& x, const PadicScalar& y);

  /// Structural equality (same representation and digits).
  bool operator==(const PadicScalar& other) const;

 private:
  Prime p_ = 2;
  Kind kind_ = Kind::Exact;
  mpq_class exact_;
  long val_ = 0;  // Truncated: valuation. ZeroToPrecision: known bound.
  mpz_class unit_;
  long rel_prec_ = 0;
};

enum class ArithOp { Add, Sub, Mul, Div };
PadicScalar arith(const PadicScalar& x, const PadicScalar& y, ArithOp op);

/// Exponent s of a radius p^s, or -infinity for a single point.
class RadiusExp {
 public:
  RadiusExp() = default;  // point
  explicit RadiusExp(mpq_class s) : point_(false), value_(std::move(s)) {}
  RadiusExp(long s) : point_(false), value_(s) {}  // NOLINT: integer radii are the common case

  static RadiusExp point() { return RadiusExp(); }

  bool is_point() const { return point_; }
  const mpq_class& value() const;
  bool is_integer() const { return !point_ && value_.get_den() == 1; }

  RadiusExp operator+(const RadiusExp& o) const;
  std::strong_ordering operator<=>(const RadiusExp& o) const;
  bool operator==(const RadiusExp& o) const;
  std::string to_string() const;

 private:
  bool point_ = true;
  mpq_class value_;
};

RadiusExp max(const RadiusExp& a, const RadiusExp& b);

/// -v(x) as a radius exponent bound: |x| <= p^result. Exact zero gives a point.
RadiusExp abs_exponent_bound(const PadicScalar& x);

/// The closed disk D(center, p^radius_exp).
class PadicBall {
 public:
  PadicBall() = default;
  PadicBall(PadicScalar center, RadiusExp radius)
      : center_(std::move(center)), radius_(std::move(radius)) {}

  static PadicBall point(PadicScalar center) {
    return PadicBall(std::move(center), RadiusExp::point());
  }

  Prime prime() const { return center_.prime(); }
  const PadicScalar& center() const { return center_; }
  const RadiusExp& radius_exp() const { return radius_; }
  bool is_point() const { return radius_.is_point(); }

  /// Upper bound exponent of |z| over the ball.
  RadiusExp sup_abs_exponent() const;

  std::string to_string() const;

  /// Same ball as a set; Undecidable when truncated centres do not settle it.
  bool operator==(const PadicBall& other) const;

 private:
  PadicScalar center_;
  RadiusExp radius_;
};

enum class BallOp { Add, Mul };
PadicBall ball_arith(const PadicBall& a, const PadicBall& b, BallOp op);
bool ball_contains(const PadicBall& ball, const PadicScalar& x);
bool ball_subset(const PadicBall& inner, const PadicBall& outer);

}  // namespace padicdyn
