#include "padicdyn/family.hpp"

#include <charconv>

namespace padicdyn {

namespace {

using Poly = RationalPolynomial;
// Polynomials in z whose coefficients are polynomials in t.
using PolyZ = std::vector<Poly>;

PolyZ mul(const PolyZ& x, const PolyZ& y) {
  PolyZ out(x.size() + y.size() - 1);
  for (std::size_t i = 0; i < x.size(); ++i)
    for (std::size_t j = 0; j < y.size(); ++j) out[i + j] = out[i + j] + x[i] * y[j];
  return out;
}

std::optional<Prime> suffix_prime(const std::string& name, const std::string& prefix) {
  if (name.rfind(prefix, 0) != 0 || name.size() == prefix.size()) return std::nullopt;
  Prime p = 0;
  const char* first = name.data() + prefix.size();
  const char* last = name.data() + name.size();
  auto [ptr, ec] = std::from_chars(first, last, p);
  if (ec != std::errc() || ptr != last || !is_prime(p)) return std::nullopt;
  return p;
}

}  // namespace

PolynomialFamily::PolynomialFamily(std::string name, Prime p, std::vector<RationalPolynomial> coeffs,
                                   std::vector<RationalPolynomial> critical_points)
    : name_(std::move(name)), p_(p), coeffs_(std::move(coeffs)), critical_(std::move(critical_points)) {
  if (!is_prime(p_)) throw Error(ErrorCode::InvalidArgument, std::to_string(p_) + " is not prime");
  if (coeffs_.size() < 3) throw Error(ErrorCode::InvalidArgument, "degree must be at least 2");
  if (!coeffs_.front().is_zero())
    throw Error(ErrorCode::InvalidArgument, "family must satisfy f_t(0) = 0");
  if (!(coeffs_.back() == Poly::constant(1)))
    throw Error(ErrorCode::InvalidArgument, "family must be monic");
  const int d = degree();
  if (static_cast<int>(critical_.size()) != d - 1)
    throw Error(ErrorCode::NotACriticalPoint, "need " + std::to_string(d - 1) + " critical point expressions");

  // f_t'(c_j(t)) = 0 for each j, and together they are all of f_t's critical points.
  PolyZ df;
  for (int i = 1; i <= d; ++i) df.push_back(coeffs_[static_cast<std::size_t>(i)] * mpq_class(i));
  for (std::size_t j = 0; j < critical_.size(); ++j) {
    Poly acc;
    for (auto it = df.rbegin(); it != df.rend(); ++it) acc = acc * critical_[j] + *it;
    if (!acc.is_zero())
      throw Error(ErrorCode::NotACriticalPoint,
                  "f_t'(" + critical_[j].to_string() + ") = " + acc.to_string() + ", not 0");
  }
  PolyZ prod{Poly::constant(d)};
  for (const auto& c : critical_) prod = mul(prod, {c * mpq_class(-1), Poly::constant(1)});
  if (prod != df)
    throw Error(ErrorCode::NotACriticalPoint, "critical point expressions miss a critical point");
}

PolynomialFamily PolynomialFamily::builtin(const std::string& name) {
  const Poly t = Poly::monomial(1, 1);
  auto cubic = [&](Prime p) {
    return PolynomialFamily(name, p,
                            {Poly(), Poly(), t * mpq_class(-3, 2), Poly::constant(1)},
                            {Poly(), t});
  };
  if (name == "cubic2") return cubic(2);
  if (auto p = suffix_prime(name, "cubic")) return cubic(*p);
  if (auto p = suffix_prime(name, "quadratic"))
    return PolynomialFamily(name, *p, {Poly(), t * mpq_class(-2), Poly::constant(1)}, {t});
  throw Error(ErrorCode::InvalidArgument, "unknown family '" + name + "'");
}

MonicPolynomial PolynomialFamily::instantiate(const PadicScalar& t) const {
  std::vector<PadicScalar> all;
  for (const auto& a : coeffs_) all.push_back(a(t));
  all.front() = PadicScalar::zero(p_);
  all.back() = PadicScalar::one(p_);
  return MonicPolynomial::from_coefficients(std::move(all));
}

std::vector<PadicScalar> PolynomialFamily::critical_points_at(const PadicScalar& t) const {
  std::vector<PadicScalar> out;
  for (const auto& c : critical_) out.push_back(c(t));
  return out;
}

BallPolynomial PolynomialFamily::over_disk(const PadicBall& disk, long precision) const {
  BallPolynomial f{p_, {}};
  for (const auto& a : coeffs_) f.coeffs.push_back(TaylorModel::of_parameter(a, disk, precision));
  return f;
}

TaylorModel PolynomialFamily::critical_point_over_disk(std::size_t j, const PadicBall& disk,
                                                       long precision) const {
  return TaylorModel::of_parameter(critical_.at(j), disk, precision);
}

ParametricPolynomial PolynomialFamily::parametric() const { return {p_, coeffs_}; }

std::string PolynomialFamily::to_string() const {
  std::string s = name_ + ": z^" + std::to_string(degree());
  for (int i = degree() - 1; i >= 1; --i) {
    const auto& a = coeffs_[static_cast<std::size_t>(i)];
    if (a.is_zero()) continue;
    s += " + (" + a.to_string() + ")*z";
    if (i > 1) s += "^" + std::to_string(i);
  }
  s += " over Q_" + std::to_string(p_) + "; critical points {";
  for (std::size_t j = 0; j < critical_.size(); ++j) s += (j ? ", " : "") + critical_[j].to_string();
  return s + "}";
}

}  // namespace padicdyn
