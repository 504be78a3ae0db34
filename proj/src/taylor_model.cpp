#include "padicdyn/taylor_model.hpp"

#include <algorithm>

namespace padicdyn {

TaylorModel::TaylorModel(Prime p, RadiusExp param_radius, std::vector<mpq_class> coeffs,
                         RadiusExp err, long precision)
    : p_(p), s_(std::move(param_radius)), coeffs_(std::move(coeffs)),
      err_(std::move(err)), precision_(precision) {
  normalize();
}

TaylorModel TaylorModel::constant(Prime p, const RadiusExp& param_radius, const mpq_class& c,
                                  long precision) {
  return TaylorModel(p, param_radius, {c}, RadiusExp::point(), precision);
}

TaylorModel TaylorModel::independent(const PadicBall& ball, const RadiusExp& param_radius,
                                     long precision) {
  RadiusExp err = ball.radius_exp();
  if (const auto a = ball.center().absolute_precision()) err = max(err, RadiusExp(-*a));
  return TaylorModel(ball.prime(), param_radius, {ball.center().representative()}, err,
                     precision);
}

TaylorModel TaylorModel::of_parameter(const RationalPolynomial& q, const PadicBall& disk,
                                      long precision) {
  const mpq_class c = disk.center().representative();
  RadiusExp s = disk.radius_exp();
  RadiusExp err = RadiusExp::point();
  if (const auto a = disk.center().absolute_precision()) s = max(s, RadiusExp(-*a));
  return TaylorModel(disk.prime(), s, q.shifted(c).coefficients(), err, precision);
}

RadiusExp TaylorModel::term_norm(std::size_t j) const {
  if (sgn(coeffs_[j]) == 0) return RadiusExp::point();
  const RadiusExp base(-valuation_of(coeffs_[j], p_));
  if (j == 0) return base;
  if (s_.is_point()) return RadiusExp::point();
  return RadiusExp(mpq_class(base.value() + s_.value() * static_cast<long>(j)));
}

RadiusExp TaylorModel::poly_norm() const {
  RadiusExp n = RadiusExp::point();
  for (std::size_t j = 0; j < coeffs_.size(); ++j) n = max(n, term_norm(j));
  return n;
}

RadiusExp TaylorModel::sup_exponent() const { return max(poly_norm(), err_); }

PadicBall TaylorModel::enclosure() const {
  RadiusExp r = err_;
  for (std::size_t j = 1; j < coeffs_.size(); ++j) r = max(r, term_norm(j));
  const mpq_class c = coeffs_.empty() ? mpq_class(0) : coeffs_[0];
  return PadicBall(PadicScalar::exact(p_, c), r);
}

void TaylorModel::normalize() {
  for (auto& c : coeffs_) c.canonicalize();
  if (s_.is_point() && coeffs_.size() > 1) coeffs_.resize(1);

  const RadiusExp norm = poly_norm();
  if (!norm.is_point()) err_ = max(err_, norm + RadiusExp(-precision_));

  if (coeffs_.size() > kMaxTerms) {
    for (std::size_t j = kMaxTerms; j < coeffs_.size(); ++j) err_ = max(err_, term_norm(j));
    coeffs_.resize(kMaxTerms);
  }
  if (!err_.is_point()) {
    for (std::size_t j = 0; j < coeffs_.size(); ++j) {
      const RadiusExp nj = term_norm(j);
      if (nj <= err_) {
        coeffs_[j] = 0;
        continue;
      }
      // Any g' with v(g - g') >= j*s - err describes the same set.
      mpq_class bound = -err_.value();
      if (j > 0) bound += s_.value() * static_cast<long>(j);
      const long keep_to = ceil_to_long(bound);
      coeffs_[j] = PadicScalar::from_absolute(p_, coeffs_[j], keep_to).representative();
    }
  }
  while (!coeffs_.empty() && sgn(coeffs_.back()) == 0) coeffs_.pop_back();
}

TaylorModel TaylorModel::operator+(const TaylorModel& o) const {
  std::vector<mpq_class> out(std::max(coeffs_.size(), o.coeffs_.size()));
  for (std::size_t j = 0; j < out.size(); ++j) {
    if (j < coeffs_.size()) out[j] += coeffs_[j];
    if (j < o.coeffs_.size()) out[j] += o.coeffs_[j];
  }
  return TaylorModel(p_, max(s_, o.s_), std::move(out), max(err_, o.err_),
                     std::min(precision_, o.precision_));
}

TaylorModel TaylorModel::operator-(const TaylorModel& o) const {
  std::vector<mpq_class> neg(o.coeffs_.size());
  for (std::size_t j = 0; j < neg.size(); ++j) neg[j] = -o.coeffs_[j];
  return *this + TaylorModel(o.p_, o.s_, std::move(neg), o.err_, o.precision_);
}

TaylorModel TaylorModel::operator*(const TaylorModel& o) const {
  std::vector<mpq_class> out;
  if (!coeffs_.empty() && !o.coeffs_.empty()) {
    out.resize(coeffs_.size() + o.coeffs_.size() - 1);
    for (std::size_t i = 0; i < coeffs_.size(); ++i) {
      if (sgn(coeffs_[i]) == 0) continue;
      for (std::size_t j = 0; j < o.coeffs_.size(); ++j) out[i + j] += coeffs_[i] * o.coeffs_[j];
    }
  }
  const RadiusExp err = max(max(err_ + o.poly_norm(), o.err_ + poly_norm()), err_ + o.err_);
  return TaylorModel(p_, max(s_, o.s_), std::move(out), err, std::min(precision_, o.precision_));
}

std::string TaylorModel::to_string() const {
  std::string s = "TM[";
  for (std::size_t j = 0; j < coeffs_.size(); ++j) {
    if (j) s += ", ";
    s += coeffs_[j].get_str();
  }
  return s + "; s=" + s_.to_string() + ", err=" + err_.to_string() + "]";
}

}  // namespace padicdyn
