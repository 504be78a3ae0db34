#include "padicdyn/padic.hpp"

#include <algorithm>
#include <cctype>

namespace padicdyn {

const char* to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::PrecisionExhausted: return "PrecisionExhausted";
    case ErrorCode::DivisionByZero: return "DivisionByZero";
    case ErrorCode::Undecidable: return "Undecidable";
    case ErrorCode::AmbiguousValuation: return "AmbiguousValuation";
    case ErrorCode::NotACriticalPoint: return "NotACriticalPoint";
    case ErrorCode::DomainError: return "DomainError";
    case ErrorCode::ParseError: return "ParseError";
    case ErrorCode::InvalidArgument: return "InvalidArgument";
  }
  return "Unknown";
}

bool is_prime(unsigned long n) {
  if (n < 2) return false;
  for (unsigned long q = 2; q * q <= n; ++q)
    if (n % q == 0) return false;
  return true;
}

mpz_class prime_power(Prime p, unsigned long e) {
  mpz_class r;
  mpz_ui_pow_ui(r.get_mpz_t(), p, e);
  return r;
}

long valuation_of(const mpz_class& n, Prime p) {
  if (sgn(n) == 0) throw Error(ErrorCode::InvalidArgument, "valuation of zero");
  mpz_class rest;
  mpz_class pz(p);
  return static_cast<long>(mpz_remove(rest.get_mpz_t(), n.get_mpz_t(), pz.get_mpz_t()));
}

long valuation_of(const mpq_class& q, Prime p) {
  if (sgn(q) == 0) throw Error(ErrorCode::InvalidArgument, "valuation of zero");
  const mpz_class& num = q.get_num();
  const mpz_class& den = q.get_den();
  return valuation_of(num, p) - (den == 1 ? 0 : valuation_of(den, p));
}

mpz_class unit_residue(const mpq_class& q, Prime p, long digits) {
  if (digits < 1) throw Error(ErrorCode::PrecisionExhausted, "no digits requested");
  mpz_class pz(p), num, den;
  mpz_remove(num.get_mpz_t(), q.get_num_mpz_t(), pz.get_mpz_t());
  mpz_remove(den.get_mpz_t(), q.get_den_mpz_t(), pz.get_mpz_t());
  const mpz_class modulus = prime_power(p, static_cast<unsigned long>(digits));
  mpz_class inv;
  mpz_invert(inv.get_mpz_t(), den.get_mpz_t(), modulus.get_mpz_t());
  mpz_class r = num * inv;
  mpz_mod(r.get_mpz_t(), r.get_mpz_t(), modulus.get_mpz_t());
  return r;
}

long ceil_to_long(const mpq_class& q) {
  mpz_class r;
  mpz_cdiv_q(r.get_mpz_t(), q.get_num_mpz_t(), q.get_den_mpz_t());
  return r.get_si();
}

long floor_to_long(const mpq_class& q) {
  mpz_class r;
  mpz_fdiv_q(r.get_mpz_t(), q.get_num_mpz_t(), q.get_den_mpz_t());
  return r.get_si();
}

std::string to_string(const mpq_class& q) { return q.get_str(); }

std::string Valuation::to_string() const {
  switch (kind) {
    case Kind::Finite: return std::to_string(value);
    case Kind::AtLeast: return ">=" + std::to_string(value);
    case Kind::Infinite: return "inf";
  }
  return "?";
}

// ---------------------------------------------------------------------------
// PadicScalar

PadicScalar PadicScalar::exact(Prime p, mpq_class q) {
  if (p < 2) throw Error(ErrorCode::InvalidArgument, "prime must be >= 2");
  q.canonicalize();
  PadicScalar x;
  x.p_ = p;
  x.kind_ = Kind::Exact;
  x.exact_ = std::move(q);
  return x;
}

PadicScalar PadicScalar::integer(Prime p, long n) { return exact(p, mpq_class(n)); }

PadicScalar PadicScalar::truncated(Prime p, long valuation, mpz_class unit,
                                   long rel_precision) {
  if (p < 2) throw Error(ErrorCode::InvalidArgument, "prime must be >= 2");
  if (rel_precision < 1)
    throw Error(ErrorCode::PrecisionExhausted, "relative precision below 1");
  const mpz_class modulus = prime_power(p, static_cast<unsigned long>(rel_precision));
  mpz_mod(unit.get_mpz_t(), unit.get_mpz_t(), modulus.get_mpz_t());
  if (mpz_divisible_ui_p(unit.get_mpz_t(), p))
    throw Error(ErrorCode::InvalidArgument, "truncated unit must be coprime to p");
  PadicScalar x;
  x.p_ = p;
  x.kind_ = Kind::Truncated;
  x.val_ = valuation;
  x.unit_ = std::move(unit);
  x.rel_prec_ = rel_precision;
  return x;
}

PadicScalar PadicScalar::zero_to(Prime p, long known_valuation) {
  PadicScalar x;
  x.p_ = p;
  x.kind_ = Kind::ZeroToPrecision;
  x.val_ = known_valuation;
  return x;
}

PadicScalar PadicScalar::from_absolute(Prime p, const mpq_class& q,
                                       long absolute_precision) {
  if (sgn(q) == 0) return zero_to(p, absolute_precision);
  const long v = valuation_of(q, p);
  if (v >= absolute_precision) return zero_to(p, absolute_precision);
  const long n = absolute_precision - v;
  return truncated(p, v, unit_residue(q, p, n), n);
}

PadicScalar PadicScalar::from_relative(Prime p, const mpq_class& q,
                                       long rel_precision) {
  if (sgn(q) == 0) return exact(p, 0);
  const long v = valuation_of(q, p);
  return truncated(p, v, unit_residue(q, p, rel_precision), rel_precision);
}

Valuation PadicScalar::valuation() const {
  switch (kind_) {
    case Kind::Exact:
      if (sgn(exact_) == 0) return Valuation::infinite();
      return Valuation::finite(valuation_of(exact_, p_));
    case Kind::Truncated: return Valuation::finite(val_);
    case Kind::ZeroToPrecision: return Valuation::at_least(val_);
  }
  return Valuation::infinite();
}

long PadicScalar::certain_valuation() const {
  const Valuation v = valuation();
  if (!v.is_finite())
    throw Error(ErrorCode::AmbiguousValuation,
                "valuation of " + to_string() + " is not a known finite value");
  return v.value;
}

std::optional<long> PadicScalar::absolute_precision() const {
  switch (kind_) {
    case Kind::Exact: return std::nullopt;
    case Kind::Truncated: return val_ + rel_prec_;
    case Kind::ZeroToPrecision: return val_;
  }
  return std::nullopt;
}

std::optional<long> PadicScalar::relative_precision() const {
  if (kind_ == Kind::Truncated) return rel_prec_;
  if (kind_ == Kind::ZeroToPrecision) return 0;
  return std::nullopt;
}

const mpq_class& PadicScalar::rational() const {
  if (kind_ != Kind::Exact)
    throw Error(ErrorCode::InvalidArgument, "scalar is not exact");
  return exact_;
}

mpq_class PadicScalar::representative() const {
  switch (kind_) {
    case Kind::Exact: return exact_;
    case Kind::Truncated: {
      mpq_class r(unit_);
      const mpz_class pw = prime_power(p_, static_cast<unsigned long>(std::labs(val_)));
      if (val_ >= 0) r *= pw; else r /= pw;
      r.canonicalize();
      return r;
    }
    case Kind::ZeroToPrecision: return mpq_class(0);
  }
  return mpq_class(0);
}

PadicScalar PadicScalar::truncate(long digits) const {
  switch (kind_) {
    case Kind::Exact: return sgn(exact_) == 0 ? *this : from_relative(p_, exact_, digits);
    case Kind::Truncated:
      if (rel_prec_ <= digits) return *this;
      return truncated(p_, val_, unit_, digits);
    case Kind::ZeroToPrecision: return *this;
  }
  return *this;
}

std::string PadicScalar::to_string() const {
  const std::string ps = std::to_string(p_);
  switch (kind_) {
    case Kind::Exact: return exact_.get_str();
    case Kind::Truncated:
      return ps + "^" + std::to_string(val_) + " * " + unit_.get_str() + " + O(" + ps +
             "^" + std::to_string(val_ + rel_prec_) + ")";
    case Kind::ZeroToPrecision: return "O(" + ps + "^" + std::to_string(val_) + ")";
  }
  return "?";
}

PadicScalar PadicScalar::operator-() const {
  PadicScalar r = *this;
  if (kind_ == Kind::Exact) {
    r.exact_ = -exact_;
  } else if (kind_ == Kind::Truncated) {
    const mpz_class modulus = prime_power(p_, static_cast<unsigned long>(rel_prec_));
    r.unit_ = modulus - unit_;
  }
  return r;
}

namespace {

void require_same_prime(const PadicScalar& x, const PadicScalar& y) {
  if (x.prime() != y.prime())
    throw Error(ErrorCode::InvalidArgument, "operands over different primes");
}

std::optional<long> min_precision(std::optional<long> a, std::optional<long> b) {
  if (!a) return b;
  if (!b) return a;
  return std::min(*a, *b);
}

// Unit of a nonzero Truncated or Exact value modulo p^digits.
mpz_class unit_digits(const PadicScalar& x, long digits) {
  if (x.is_exact()) return unit_residue(x.rational(), x.prime(), digits);
  return x.unit();
}

// x +- y + O(p^abs_prec) in integer digits, for operands that are not zeros
// to precision. The same residue the rational route produces, without the
// gcds of canonical fractions.
std::optional<PadicScalar> add_digits(const PadicScalar& x, const PadicScalar& y, bool negate_y,
                                      long abs_prec) {
  if (x.is_zero_to_precision() || y.is_zero_to_precision()) return std::nullopt;
  const Prime p = x.prime();
  struct Term {
    long v;
    mpz_class u;
  };
  std::vector<Term> terms;
  for (const PadicScalar* z : {&x, &y}) {
    if (z->is_exact_zero()) continue;
    const long v = z->certain_valuation();
    if (v >= abs_prec) continue;
    mpz_class u = unit_digits(*z, abs_prec - v);
    if (z == &y && negate_y) u = -u;
    terms.push_back({v, std::move(u)});
  }
  if (terms.empty()) return PadicScalar::zero_to(p, abs_prec);
  long m = terms[0].v;
  for (const auto& t : terms) m = std::min(m, t.v);
  mpz_class sum;
  for (const auto& t : terms) sum += t.u * prime_power(p, static_cast<unsigned long>(t.v - m));
  const mpz_class modulus = prime_power(p, static_cast<unsigned long>(abs_prec - m));
  mpz_mod(sum.get_mpz_t(), sum.get_mpz_t(), modulus.get_mpz_t());
  if (sgn(sum) == 0) return PadicScalar::zero_to(p, abs_prec);
  const mpz_class pz(p);
  const long shift = static_cast<long>(mpz_remove(sum.get_mpz_t(), sum.get_mpz_t(), pz.get_mpz_t()));
  return PadicScalar::truncated(p, m + shift, std::move(sum), abs_prec - m - shift);
}

PadicScalar add_impl(const PadicScalar& x, const PadicScalar& y, bool negate_y) {
  require_same_prime(x, y);
  const Prime p = x.prime();
  if (x.is_exact() && y.is_exact())
    return PadicScalar::exact(p, negate_y ? mpq_class(x.rational() - y.rational())
                                          : mpq_class(x.rational() + y.rational()));
  const long abs_prec = *min_precision(x.absolute_precision(), y.absolute_precision());
  if (auto sum = add_digits(x, y, negate_y, abs_prec)) return *sum;
  mpq_class sum = negate_y ? mpq_class(x.representative() - y.representative())
                           : mpq_class(x.representative() + y.representative());
  return PadicScalar::from_absolute(p, sum, abs_prec);
}

}  // namespace

PadicScalar operator+(const PadicScalar& x, const PadicScalar& y) {
  return add_impl(x, y, false);
}

PadicScalar operator-(const PadicScalar& x, const PadicScalar& y) {
  return add_impl(x, y, true);
}

PadicScalar operator*(const PadicScalar& x, const PadicScalar& y) {
  require_same_prime(x, y);
  const Prime p = x.prime();
  if (x.is_exact() && y.is_exact()) return PadicScalar::exact(p, x.rational() * y.rational());
  if (x.is_exact_zero() || y.is_exact_zero()) return PadicScalar::zero(p);
  const Valuation vx = x.valuation();
  const Valuation vy = y.valuation();
  if (x.is_zero_to_precision() || y.is_zero_to_precision())
    return PadicScalar::zero_to(p, vx.value + vy.value);
  const long digits = *min_precision(x.relative_precision(), y.relative_precision());
  mpz_class u = unit_digits(x, digits) * unit_digits(y, digits);
  return PadicScalar::truncated(p, vx.value + vy.value, std::move(u), digits);
}

PadicScalar operator/(const PadicScalar& x, const PadicScalar& y) {
  require_same_prime(x, y);
  const Prime p = x.prime();
  if (y.is_exact_zero()) throw Error(ErrorCode::DivisionByZero, "division by exact zero");
  if (y.is_zero_to_precision())
    throw Error(ErrorCode::PrecisionExhausted,
                "divisor " + y.to_string() + " has no known valuation");
  if (x.is_exact() && y.is_exact()) return PadicScalar::exact(p, x.rational() / y.rational());
  if (x.is_exact_zero()) return x;
  const long vy = y.certain_valuation();
  if (x.is_zero_to_precision()) return PadicScalar::zero_to(p, x.valuation().value - vy);
  const long digits = *min_precision(x.relative_precision(), y.relative_precision());
  return PadicScalar::from_relative(p, x.representative() / y.representative(), digits);
}

bool PadicScalar::operator==(const PadicScalar& o) const {
  if (p_ != o.p_ || kind_ != o.kind_) return false;
  switch (kind_) {
    case Kind::Exact: return exact_ == o.exact_;
    case Kind::Truncated: return val_ == o.val_ && rel_prec_ == o.rel_prec_ && unit_ == o.unit_;
    case Kind::ZeroToPrecision: return val_ == o.val_;
  }
  return false;
}

PadicScalar arith(const PadicScalar& x, const PadicScalar& y, ArithOp op) {
  switch (op) {
    case ArithOp::Add: return x + y;
    case ArithOp::Sub: return x - y;
    case ArithOp::Mul: return x * y;
    case ArithOp::Div: return x / y;
  }
  throw Error(ErrorCode::InvalidArgument, "unknown arithmetic operation");
}

// ---------------------------------------------------------------------------
// Literal parsing

namespace {

[[noreturn]] void parse_fail(std::string_view text, const std::string& why) {
  throw Error(ErrorCode::ParseError,
              "cannot parse scalar '" + std::string(text) + "': " + why);
}

bool all_digits(std::string_view s) {
  return !s.empty() && std::all_of(s.begin(), s.end(),
                                   [](unsigned char c) { return std::isdigit(c); });
}

long parse_long(std::string_view s, std::string_view whole) {
  std::string_view body = s;
  if (!body.empty() && (body[0] == '-' || body[0] == '+')) body.remove_prefix(1);
  if (!all_digits(body) || body.size() > 18) parse_fail(whole, "bad integer '" + std::string(s) + "'");
  return std::stol(std::string(s));
}

mpq_class parse_rational(std::string_view s, std::string_view whole) {
  std::string_view body = s;
  bool negative = false;
  if (!body.empty() && (body[0] == '-' || body[0] == '+')) {
    negative = body[0] == '-';
    body.remove_prefix(1);
  }
  const auto slash = body.find('/');
  std::string_view num = body.substr(0, slash);
  std::string_view den = slash == std::string_view::npos ? std::string_view("1")
                                                         : body.substr(slash + 1);
  if (!all_digits(num) || !all_digits(den)) parse_fail(whole, "bad rational '" + std::string(s) + "'");
  const mpz_class n{std::string(num)};
  const mpz_class d{std::string(den)};
  if (d == 0) parse_fail(whole, "zero denominator");
  mpq_class q(negative ? mpz_class(-n) : n, d);
  q.canonicalize();
  return q;
}

// "p^e" or "p^{e}"; returns e.
long parse_power(std::string_view s, Prime p, std::string_view whole) {
  const auto caret = s.find('^');
  if (caret == std::string_view::npos) parse_fail(whole, "expected p^e");
  std::string_view base = s.substr(0, caret);
  std::string_view exp = s.substr(caret + 1);
  if (!all_digits(base) || std::stoul(std::string(base)) != p)
    parse_fail(whole, "power base must be the prime " + std::to_string(p));
  if (exp.size() >= 2 && exp.front() == '{' && exp.back() == '}')
    exp = exp.substr(1, exp.size() - 2);
  return parse_long(exp, whole);
}

mpq_class pow_rational(Prime p, long e) {
  mpq_class r(prime_power(p, static_cast<unsigned long>(std::labs(e))));
  if (e < 0) r = 1 / r;
  return r;
}

mpq_class parse_term(std::string_view s, Prime p, std::string_view whole) {
  if (s.empty()) parse_fail(whole, "empty value");
  const auto star = s.find('*');
  if (star != std::string_view::npos) {
    const long e = parse_power(s.substr(0, star), p, whole);
    return pow_rational(p, e) * parse_rational(s.substr(star + 1), whole);
  }
  if (s.find('^') != std::string_view::npos) return pow_rational(p, parse_power(s, p, whole));
  return parse_rational(s, whole);
}

}  // namespace

PadicScalar PadicScalar::parse(Prime p, std::string_view text) {
  std::string s;
  for (char c : text)
    if (!std::isspace(static_cast<unsigned char>(c))) s.push_back(c);
  if (s.empty()) parse_fail(text, "empty literal");
  const auto big_o = s.rfind("O(");
  if (big_o == std::string::npos) return exact(p, parse_term(s, p, text));
  if (s.back() != ')') parse_fail(text, "unterminated O(...)");
  const long abs_prec = parse_power(std::string_view(s).substr(big_o + 2, s.size() - big_o - 3), p, text);
  if (big_o == 0) return zero_to(p, abs_prec);
  if (s[big_o - 1] != '+') parse_fail(text, "expected '+ O(p^n)'");
  const mpq_class value = parse_term(std::string_view(s).substr(0, big_o - 1), p, text);
  return from_absolute(p, value, abs_prec);
}

// ---------------------------------------------------------------------------
// Radii and balls

const mpq_class& RadiusExp::value() const {
  if (point_) throw Error(ErrorCode::InvalidArgument, "point radius has no finite exponent");
  return value_;
}

RadiusExp RadiusExp::operator+(const RadiusExp& o) const {
  if (point_ || o.point_) return point();
  return RadiusExp(mpq_class(value_ + o.value_));
}

std::strong_ordering RadiusExp::operator<=>(const RadiusExp& o) const {
  if (point_ && o.point_) return std::strong_ordering::equal;
  if (point_) return std::strong_ordering::less;
  if (o.point_) return std::strong_ordering::greater;
  const int c = cmp(value_, o.value_);
  return c < 0 ? std::strong_ordering::less
               : (c > 0 ? std::strong_ordering::greater : std::strong_ordering::equal);
}

bool RadiusExp::operator==(const RadiusExp& o) const {
  return (*this <=> o) == std::strong_ordering::equal;
}

std::string RadiusExp::to_string() const { return point_ ? "-inf" : value_.get_str(); }

RadiusExp max(const RadiusExp& a, const RadiusExp& b) { return a < b ? b : a; }

RadiusExp abs_exponent_bound(const PadicScalar& x) {
  const Valuation v = x.valuation();
  if (v.is_infinite()) return RadiusExp::point();
  return RadiusExp(-v.value);
}

RadiusExp PadicBall::sup_abs_exponent() const {
  return max(abs_exponent_bound(center_), radius_);
}

std::string PadicBall::to_string() const {
  return "D(" + center_.to_string() + ", " + std::to_string(prime()) + "^" +
         radius_.to_string() + ")";
}

namespace {

// Decides v(diff) >= -s; Undecidable when diff is a zero of too little precision.
bool within(const PadicScalar& diff, const RadiusExp& s) {
  const Valuation v = diff.valuation();
  if (v.is_infinite()) return true;
  if (s.is_point()) {
    if (v.is_lower_bound())
      throw Error(ErrorCode::Undecidable, "cannot prove equality of truncated values");
    return false;
  }
  const mpq_class needed = -s.value();
  if (v.is_finite()) return cmp(mpq_class(v.value), needed) >= 0;
  if (cmp(mpq_class(v.value), needed) >= 0) return true;
  throw Error(ErrorCode::Undecidable,
              "difference " + diff.to_string() + " is not resolved to radius exponent " +
                  s.to_string());
}

// A truncated centre is only known to p^-A; fold that into the radius.
RadiusExp widen_for_precision(const PadicScalar& c, RadiusExp r) {
  if (const auto a = c.absolute_precision()) return max(r, RadiusExp(-*a));
  return r;
}

}  // namespace

bool PadicBall::operator==(const PadicBall& o) const {
  if (prime() != o.prime() || !(radius_ == o.radius_)) return false;
  return within(center_ - o.center_, radius_);
}

PadicBall ball_arith(const PadicBall& a, const PadicBall& b, BallOp op) {
  if (a.prime() != b.prime()) throw Error(ErrorCode::InvalidArgument, "balls over different primes");
  if (op == BallOp::Add) {
    PadicScalar c = a.center() + b.center();
    RadiusExp r = widen_for_precision(c, max(a.radius_exp(), b.radius_exp()));
    return PadicBall(std::move(c), std::move(r));
  }
  PadicScalar c = a.center() * b.center();
  RadiusExp r = max(max(abs_exponent_bound(a.center()) + b.radius_exp(),
                        abs_exponent_bound(b.center()) + a.radius_exp()),
                    a.radius_exp() + b.radius_exp());
  r = widen_for_precision(c, std::move(r));
  return PadicBall(std::move(c), std::move(r));
}

bool ball_contains(const PadicBall& ball, const PadicScalar& x) {
  if (ball.prime() != x.prime()) throw Error(ErrorCode::InvalidArgument, "different primes");
  return within(x - ball.center(), ball.radius_exp());
}

bool ball_subset(const PadicBall& inner, const PadicBall& outer) {
  if (inner.prime() != outer.prime()) throw Error(ErrorCode::InvalidArgument, "different primes");
  if (outer.radius_exp() < inner.radius_exp()) return false;
  return within(inner.center() - outer.center(), outer.radius_exp());
}

}  // namespace padicdyn
