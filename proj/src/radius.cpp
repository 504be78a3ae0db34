#include "padicdyn/radius.hpp"

#include <iomanip>
#include <sstream>

#include "json.hpp"

namespace padicdyn {

namespace {

// Largest k with p^k < d.
long largest_power_below(long d, Prime p) {
  long k = 0;
  mpz_class pk = p;
  while (pk < d) {
    pk *= p;
    ++k;
  }
  return k;
}

bool is_power_of(long d, Prime p) {
  mpz_class x = d;
  while (x % p == 0) x /= p;
  return x == 1;
}

void require_domain(long d, Prime p) {
  if (!is_prime(p)) throw Error(ErrorCode::DomainError, std::to_string(p) + " is not prime");
  if (static_cast<long>(p) >= d)
    throw Error(ErrorCode::DomainError, "need p < d, got d=" + std::to_string(d) + " p=" + std::to_string(p));
  if (is_power_of(d, p))
    throw Error(ErrorCode::DomainError, std::to_string(d) + " is a power of " + std::to_string(p));
}

}  // namespace

Decomposition decompose(long d, Prime p) {
  require_domain(d, p);
  const long k = largest_power_below(d, p);
  const long pk = prime_power(p, static_cast<unsigned long>(k)).get_si();
  const long l = valuation_of(mpz_class(d), p);
  const long a = (d - 1) / pk;
  const long b = d - a * pk;
  if (b >= pk)
    throw Error(ErrorCode::DomainError, "no decomposition d = a p^k + b with 1 <= b < p^k for d=" +
                                            std::to_string(d) + " p=" + std::to_string(p));
  return {k, l, a, b};
}

mpq_class lower_bound(long d, Prime p) {
  require_domain(d, p);
  const long k = largest_power_below(d, p);
  if (valuation_of(mpz_class(d), p) >= k) return 0;
  const Decomposition dec = decompose(d, p);
  mpq_class r(dec.a * (dec.k - dec.l) * prime_power(p, static_cast<unsigned long>(dec.k)),
              mpz_class(d - 1));
  r.canonicalize();
  return r;
}

const char* to_string(RadiusAnswer::Kind k) {
  switch (k) {
    case RadiusAnswer::Kind::Exact: return "Exact";
    case RadiusAnswer::Kind::Claimed: return "Claimed";
    case RadiusAnswer::Kind::Bounds: return "Bounds";
  }
  return "?";
}

std::string RadiusAnswer::describe() const {
  switch (kind) {
    case Kind::Exact:
      if (source == "d/2<p<d") return "Exact " + value.get_str() + " (Theorem " + source + ")";
      return "Exact " + value.get_str() + " (" + source + ")";
    case Kind::Claimed:
      return "Claimed " + value.get_str() + " (" + source + ", stated without proof)";
    case Kind::Bounds:
      return "Bounds [" + value.get_str() + ", unknown) (" + source + ")";
  }
  return {};
}

RadiusAnswer known_radius(long d, Prime p) {
  if (!is_prime(p)) throw Error(ErrorCode::InvalidArgument, std::to_string(p) + " is not prime");
  if (d < 2) throw Error(ErrorCode::InvalidArgument, "degree must be at least 2");
  const long pl = static_cast<long>(p);
  using K = RadiusAnswer::Kind;
  if (pl > d) return {d, p, K::Exact, 0, "p>d"};
  if (is_power_of(d, p)) return {d, p, K::Exact, 0, "d=p^k"};
  if (d == 2 * pl) return {d, p, K::Exact, 0, "d=2p"};
  if (2 * pl > d) {
    mpq_class v(pl, d - 1);
    v.canonicalize();
    return {d, p, K::Exact, v, "d/2<p<d"};
  }
  // The d = 3p remark cannot cover p = 2: there the lower bound is 4/5.
  if (d == 3 * pl && p >= 3) return {d, p, K::Claimed, 0, "d=3p"};
  return {d, p, K::Bounds, lower_bound(d, p), "lower bound"};
}

std::vector<RadiusAnswer> radius_table(long dmax, Prime pmax) {
  std::vector<RadiusAnswer> rows;
  for (long d = 2; d <= dmax; ++d)
    for (Prime p = 2; p <= pmax; ++p)
      if (is_prime(p)) rows.push_back(known_radius(d, p));
  return rows;
}

std::string format_radius_table(const std::vector<RadiusAnswer>& rows) {
  std::ostringstream os;
  os << std::left << std::setw(4) << "d" << std::setw(4) << "p" << std::setw(9) << "kind"
     << std::setw(14) << "value" << "source\n";
  for (const auto& r : rows) {
    std::string value = r.value.get_str();
    if (r.kind == RadiusAnswer::Kind::Bounds) value = "[" + value + ",?)";
    os << std::setw(4) << r.d << std::setw(4) << r.p << std::setw(9) << to_string(r.kind)
       << std::setw(14) << value << r.source << "\n";
  }
  return os.str();
}

std::string radius_table_json(const std::vector<RadiusAnswer>& rows) {
  nlohmann::ordered_json j = nlohmann::ordered_json::array();
  for (const auto& r : rows) {
    nlohmann::ordered_json row;
    row["d"] = r.d;
    row["p"] = r.p;
    row["kind"] = to_string(r.kind);
    if (r.kind == RadiusAnswer::Kind::Bounds) {
      row["lower"] = r.value.get_str();
      row["upper"] = "unknown";
    } else {
      row["value"] = r.value.get_str();
    }
    row["source"] = r.source;
    j.push_back(row);
  }
  return j.dump();
}

PcfWitness pcf_witness(long d, Prime p) {
  const Decomposition dec = decompose(d, p);
  const long A = dec.a * prime_power(p, static_cast<unsigned long>(dec.k)).get_si();
  mpz_class num, den, negA = -A;
  mpz_pow_ui(num.get_mpz_t(), mpz_class(d).get_mpz_t(), static_cast<unsigned long>(d));
  mpz_class t1, t2;
  mpz_pow_ui(t1.get_mpz_t(), negA.get_mpz_t(), static_cast<unsigned long>(A));
  mpz_pow_ui(t2.get_mpz_t(), mpz_class(dec.b).get_mpz_t(), static_cast<unsigned long>(dec.b));
  den = t1 * t2;
  mpq_class c(num, den);
  c.canonicalize();

  mpq_class v_alpha(valuation_of(c, p), d - 1);
  v_alpha.canonicalize();
  mpq_class expected(-dec.a * (dec.k - dec.l) * prime_power(p, static_cast<unsigned long>(dec.k)),
                     mpz_class(d - 1));
  expected.canonicalize();
  if (v_alpha * (d - 1) != valuation_of(c, p) || v_alpha != expected)
    throw Error(ErrorCode::DomainError, "witness valuation check failed");

  std::string shape = dec.b == 1 ? "z" : "z^" + std::to_string(dec.b);
  shape += " (z - alpha)";
  if (A > 1) shape += "^" + std::to_string(A);
  return {d, p, dec, dec.b, A, c, v_alpha, shape};
}

// ---------------------------------------------------------------------------

QuotientRing::QuotientRing(long n, mpq_class c) : n_(n), c_(std::move(c)) {
  if (n < 1) throw Error(ErrorCode::InvalidArgument, "quotient degree must be positive");
}

QuotientRing::Element QuotientRing::reduce(const std::vector<mpq_class>& coeffs) const {
  std::vector<mpq_class> out(static_cast<std::size_t>(n_));
  // alpha^(q n + r) = c^q alpha^r
  mpq_class cq = 1;
  for (std::size_t i = 0; i < coeffs.size(); ++i) {
    const std::size_t r = i % static_cast<std::size_t>(n_);
    if (i > 0 && r == 0) cq *= c_;
    if (sgn(coeffs[i]) != 0) out[r] += coeffs[i] * cq;
  }
  return Element(this, std::move(out));
}

QuotientRing::Element QuotientRing::scalar(const mpq_class& q) const { return reduce({q}); }

QuotientRing::Element QuotientRing::alpha() const { return reduce({0, 1}); }

bool QuotientRing::Element::is_zero() const {
  for (const auto& c : coeffs_)
    if (sgn(c) != 0) return false;
  return true;
}

QuotientRing::Element QuotientRing::Element::operator+(const Element& o) const {
  std::vector<mpq_class> out = coeffs_;
  for (std::size_t i = 0; i < out.size(); ++i) out[i] += o.coeffs_[i];
  return Element(ring_, std::move(out));
}

QuotientRing::Element QuotientRing::Element::operator-(const Element& o) const {
  std::vector<mpq_class> out = coeffs_;
  for (std::size_t i = 0; i < out.size(); ++i) out[i] -= o.coeffs_[i];
  return Element(ring_, std::move(out));
}

QuotientRing::Element QuotientRing::Element::operator*(const Element& o) const {
  std::vector<mpq_class> prod(2 * coeffs_.size());
  for (std::size_t i = 0; i < coeffs_.size(); ++i) {
    if (sgn(coeffs_[i]) == 0) continue;
    for (std::size_t j = 0; j < o.coeffs_.size(); ++j) prod[i + j] += coeffs_[i] * o.coeffs_[j];
  }
  return ring_->reduce(prod);
}

QuotientRing::Element QuotientRing::Element::operator*(const mpq_class& s) const {
  std::vector<mpq_class> out = coeffs_;
  for (auto& c : out) c *= s;
  return Element(ring_, std::move(out));
}

QuotientRing::Element QuotientRing::Element::pow(unsigned long e) const {
  Element result = ring_->scalar(1);
  Element base = *this;
  while (e) {
    if (e & 1) result = result * base;
    base = base * base;
    e >>= 1;
  }
  return result;
}

std::string QuotientRing::Element::to_string() const {
  std::string s;
  for (std::size_t i = 0; i < coeffs_.size(); ++i) {
    if (sgn(coeffs_[i]) == 0) continue;
    if (!s.empty()) s += " + ";
    s += "(" + coeffs_[i].get_str() + ")";
    if (i == 1) s += "*alpha";
    if (i > 1) s += "*alpha^" + std::to_string(i);
  }
  return s.empty() ? "0" : s;
}

namespace {

using Elem = QuotientRing::Element;
using RingPoly = std::vector<Elem>;  // low-to-high in z

RingPoly poly_mul(const QuotientRing& ring, const RingPoly& x, const RingPoly& y) {
  RingPoly out(x.size() + y.size() - 1, ring.scalar(0));
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (x[i].is_zero()) continue;
    for (std::size_t j = 0; j < y.size(); ++j) out[i + j] = out[i + j] + x[i] * y[j];
  }
  return out;
}

RingPoly poly_pow(const QuotientRing& ring, const RingPoly& x, long e) {
  RingPoly result{ring.scalar(1)};
  RingPoly base = x;
  while (e) {
    if (e & 1) result = poly_mul(ring, result, base);
    e >>= 1;
    if (e) base = poly_mul(ring, base, base);
  }
  return result;
}

Elem poly_eval(const QuotientRing& ring, const RingPoly& f, const Elem& z) {
  Elem acc = ring.scalar(0);
  for (auto it = f.rbegin(); it != f.rend(); ++it) acc = acc * z + *it;
  return acc;
}

}  // namespace

WitnessCheck verify_pcf_witness(long d, Prime p) {
  const PcfWitness w = pcf_witness(d, p);
  const QuotientRing ring(d - 1, w.c);
  const Elem alpha = ring.alpha();
  const RingPoly z_minus_alpha{alpha * mpq_class(-1), ring.scalar(1)};
  const RingPoly z_only{ring.scalar(0), ring.scalar(1)};

  const RingPoly f =
      poly_mul(ring, poly_pow(ring, z_only, w.b), poly_pow(ring, z_minus_alpha, w.exponent));

  WitnessCheck out{};
  out.f_of_alpha_is_zero = poly_eval(ring, f, alpha).is_zero();

  mpq_class ratio(w.b, d);
  ratio.canonicalize();
  const Elem inner = alpha * ratio;
  out.f_of_inner_critical_is_alpha = poly_eval(ring, f, inner) == alpha;

  RingPoly df;
  for (std::size_t i = 1; i < f.size(); ++i) df.push_back(f[i] * mpq_class(static_cast<long>(i)));
  const RingPoly z_minus_inner{inner * mpq_class(-1), ring.scalar(1)};
  RingPoly expected = poly_mul(ring, poly_pow(ring, z_only, w.b - 1),
                               poly_pow(ring, z_minus_alpha, w.exponent - 1));
  expected = poly_mul(ring, expected, z_minus_inner);
  for (auto& e : expected) e = e * mpq_class(d);
  out.critical_set_correct = df.size() == expected.size() && df == expected;
  return out;
}

}  // namespace padicdyn
