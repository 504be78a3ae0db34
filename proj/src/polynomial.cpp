#include "padicdyn/polynomial.hpp"

#include <sstream>

namespace padicdyn {

PadicScalar evaluate(std::span<const PadicScalar> coeffs, const PadicScalar& z) {
  if (coeffs.empty()) return PadicScalar::zero(z.prime());
  PadicScalar acc = coeffs.back();
  for (auto i = coeffs.size() - 1; i-- > 0;) acc = acc * z + coeffs[i];
  return acc;
}

std::vector<PadicScalar> derivative(std::span<const PadicScalar> coeffs) {
  std::vector<PadicScalar> out;
  for (std::size_t i = 1; i < coeffs.size(); ++i)
    out.push_back(coeffs[i] * PadicScalar::integer(coeffs[i].prime(), static_cast<long>(i)));
  return out;
}

std::vector<PadicScalar> taylor_shift(std::span<const PadicScalar> coeffs,
                                      const PadicScalar& a) {
  // Repeated synthetic division by (z - a).
  std::vector<PadicScalar> b(coeffs.begin(), coeffs.end());
  const auto n = b.size();
  for (std::size_t k = 0; k + 1 < n; ++k)
    for (std::size_t i = n - 1; i-- > k;) b[i] = b[i] + a * b[i + 1];
  return b;
}

std::vector<PadicScalar> parse_coefficients(Prime p, std::string_view text) {
  std::vector<PadicScalar> out;
  std::size_t start = 0;
  while (start <= text.size()) {
    const auto comma = text.find(',', start);
    const auto end = comma == std::string_view::npos ? text.size() : comma;
    out.push_back(PadicScalar::parse(p, text.substr(start, end - start)));
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  return out;
}

std::string format_coefficients(std::span<const PadicScalar> coeffs) {
  std::string s;
  for (std::size_t i = 0; i < coeffs.size(); ++i) {
    if (i) s += ",";
    s += coeffs[i].to_string();
  }
  return s;
}

// ---------------------------------------------------------------------------

RationalPolynomial::RationalPolynomial(std::vector<mpq_class> coeffs)
    : coeffs_(std::move(coeffs)) {
  trim();
}

RationalPolynomial RationalPolynomial::constant(mpq_class c) {
  return RationalPolynomial(std::vector<mpq_class>{std::move(c)});
}

RationalPolynomial RationalPolynomial::monomial(mpq_class c, unsigned k) {
  std::vector<mpq_class> v(k + 1);
  v[k] = std::move(c);
  return RationalPolynomial(std::move(v));
}

void RationalPolynomial::trim() {
  for (auto& c : coeffs_) c.canonicalize();
  while (!coeffs_.empty() && sgn(coeffs_.back()) == 0) coeffs_.pop_back();
}

mpq_class RationalPolynomial::coefficient(unsigned i) const {
  return i < coeffs_.size() ? coeffs_[i] : mpq_class(0);
}

mpq_class RationalPolynomial::operator()(const mpq_class& x) const {
  mpq_class acc = 0;
  for (auto i = coeffs_.size(); i-- > 0;) acc = acc * x + coeffs_[i];
  return acc;
}

PadicScalar RationalPolynomial::operator()(const PadicScalar& x) const {
  PadicScalar acc = PadicScalar::zero(x.prime());
  for (auto i = coeffs_.size(); i-- > 0;)
    acc = acc * x + PadicScalar::exact(x.prime(), coeffs_[i]);
  return acc;
}

RationalPolynomial RationalPolynomial::shifted(const mpq_class& c) const {
  std::vector<mpq_class> b = coeffs_;
  const auto n = b.size();
  for (std::size_t k = 0; k + 1 < n; ++k)
    for (std::size_t i = n - 1; i-- > k;) b[i] += c * b[i + 1];
  return RationalPolynomial(std::move(b));
}

RationalPolynomial RationalPolynomial::derivative() const {
  std::vector<mpq_class> out;
  for (std::size_t i = 1; i < coeffs_.size(); ++i)
    out.push_back(coeffs_[i] * static_cast<long>(i));
  return RationalPolynomial(std::move(out));
}

RationalPolynomial RationalPolynomial::operator+(const RationalPolynomial& o) const {
  std::vector<mpq_class> out(std::max(coeffs_.size(), o.coeffs_.size()));
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = coefficient(i) + o.coefficient(i);
  return RationalPolynomial(std::move(out));
}

RationalPolynomial RationalPolynomial::operator-(const RationalPolynomial& o) const {
  return *this + o * mpq_class(-1);
}

RationalPolynomial RationalPolynomial::operator*(const RationalPolynomial& o) const {
  if (is_zero() || o.is_zero()) return {};
  std::vector<mpq_class> out(coeffs_.size() + o.coeffs_.size() - 1);
  for (std::size_t i = 0; i < coeffs_.size(); ++i)
    for (std::size_t j = 0; j < o.coeffs_.size(); ++j) out[i + j] += coeffs_[i] * o.coeffs_[j];
  return RationalPolynomial(std::move(out));
}

RationalPolynomial RationalPolynomial::operator*(const mpq_class& c) const {
  std::vector<mpq_class> out = coeffs_;
  for (auto& x : out) x *= c;
  return RationalPolynomial(std::move(out));
}

std::string RationalPolynomial::to_string(const std::string& var) const {
  if (is_zero()) return "0";
  std::ostringstream os;
  bool first = true;
  for (auto i = coeffs_.size(); i-- > 0;) {
    const mpq_class& c = coeffs_[i];
    if (sgn(c) == 0) continue;
    mpq_class mag = abs(c);
    os << (sgn(c) < 0 ? (first ? "-" : " - ") : (first ? "" : " + "));
    if (i == 0 || mag != 1) os << mag.get_str();
    if (i > 0) {
      if (mag != 1) os << "*";
      os << var;
      if (i > 1) os << "^" << i;
    }
    first = false;
  }
  return os.str();
}

}  // namespace padicdyn
