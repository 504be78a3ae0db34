#include "padicdyn/dynamics.hpp"

#include <algorithm>
#include <sstream>

#include "json.hpp"

#include "padicdyn/invariant_union.hpp"
#include "padicdyn/newton.hpp"
#include "padicdyn/polynomial.hpp"

namespace padicdyn {

MonicPolynomial::MonicPolynomial(Prime p, std::vector<PadicScalar> middle) : p_(p) {
  coeffs_.reserve(middle.size() + 2);
  coeffs_.push_back(PadicScalar::zero(p));
  for (auto& a : middle) {
    if (a.prime() != p) throw Error(ErrorCode::InvalidArgument, "coefficient over a different prime");
    coeffs_.push_back(std::move(a));
  }
  coeffs_.push_back(PadicScalar::one(p));
}

MonicPolynomial MonicPolynomial::from_coefficients(std::vector<PadicScalar> all) {
  if (all.size() < 3) throw Error(ErrorCode::InvalidArgument, "degree must be at least 2");
  const Prime p = all.front().prime();
  if (!all.front().is_exact_zero())
    throw Error(ErrorCode::InvalidArgument, "normal form needs a zero constant term");
  if (!(all.back() == PadicScalar::one(p)))
    throw Error(ErrorCode::InvalidArgument, "normal form needs a monic polynomial");
  return MonicPolynomial(p, std::vector<PadicScalar>(all.begin() + 1, all.end() - 1));
}

PadicScalar MonicPolynomial::operator()(const PadicScalar& z) const { return evaluate(coeffs_, z); }

std::string MonicPolynomial::to_string() const {
  std::string s = "z^" + std::to_string(degree());
  for (int i = degree() - 1; i >= 1; --i) {
    const PadicScalar& a = coeffs_[static_cast<std::size_t>(i)];
    if (a.is_exact_zero()) continue;
    s += " + (" + a.to_string() + ")*z";
    if (i > 1) s += "^" + std::to_string(i);
  }
  return s;
}

mpq_class escape_radius(int degree, std::span<const std::pair<int, mpq_class>> valuations) {
  mpq_class r = 0;
  for (const auto& [i, v] : valuations) {
    if (i < 1 || i >= degree) throw Error(ErrorCode::InvalidArgument, "coefficient index out of range");
    mpq_class cand = -v / (degree - i);
    cand.canonicalize();
    if (cand > r) r = cand;
  }
  return r;
}

mpq_class escape_radius(const MonicPolynomial& f) {
  std::vector<std::pair<int, mpq_class>> vals;
  for (int i = 1; i < f.degree(); ++i) {
    const PadicScalar& a = f.coefficient(i);
    if (a.is_exact_zero()) continue;
    vals.emplace_back(i, mpq_class(a.certain_valuation()));
  }
  return escape_radius(f.degree(), vals);
}

std::vector<PadicScalar> taylor_shift(const MonicPolynomial& f, const PadicScalar& a) {
  return taylor_shift(f.coefficients(), a);
}

namespace {

struct ImageData {
  PadicScalar center;
  RadiusExp radius;
  int degree = 1;
};

ImageData image_data(const MonicPolynomial& f, const PadicBall& disk) {
  if (disk.prime() != f.prime()) throw Error(ErrorCode::InvalidArgument, "disk over a different prime");
  const auto b = taylor_shift(f, disk.center());
  ImageData out{b[0], RadiusExp::point(), 1};
  if (disk.is_point()) return out;
  const mpq_class& s = disk.radius_exp().value();
  bool first = true;
  for (std::size_t i = 1; i < b.size(); ++i) {
    if (b[i].is_exact_zero()) continue;
    const RadiusExp term(mpq_class(s * static_cast<long>(i) - b[i].certain_valuation()));
    if (first || term >= out.radius) {
      out.radius = term;
      out.degree = static_cast<int>(i);
      first = false;
    }
  }
  return out;
}

}  // namespace

PadicBall disk_image(const MonicPolynomial& f, const PadicBall& disk) {
  ImageData d = image_data(f, disk);
  RadiusExp r = d.radius;
  if (const auto a = d.center.absolute_precision()) r = max(r, RadiusExp(-*a));
  return PadicBall(std::move(d.center), std::move(r));
}

int disk_degree(const MonicPolynomial& f, const PadicBall& disk) {
  if (disk.is_point()) throw Error(ErrorCode::InvalidArgument, "disk degree needs a positive radius");
  return image_data(f, disk).degree;
}

long critical_count_in_disk(const MonicPolynomial& f, const PadicBall& disk) {
  const auto b = taylor_shift(f, disk.center());
  const auto db = derivative(b);
  if (disk.is_point()) return build_polygon(db).zero_root_count();
  return count_roots_in_disk(db, disk.radius_exp().value());
}

MonicPolynomial from_critical_points(Prime p, std::span<const PadicScalar> critical_points) {
  if (critical_points.empty()) throw Error(ErrorCode::InvalidArgument, "need at least one critical point");
  // prod (z - c_i), low-to-high.
  std::vector<PadicScalar> prod{PadicScalar::one(p)};
  for (const auto& c : critical_points) {
    std::vector<PadicScalar> next(prod.size() + 1, PadicScalar::zero(p));
    for (std::size_t i = 0; i < prod.size(); ++i) {
      next[i + 1] = next[i + 1] + prod[i];
      next[i] = next[i] - c * prod[i];
    }
    prod = std::move(next);
  }
  const long d = static_cast<long>(critical_points.size()) + 1;
  std::vector<PadicScalar> middle;
  for (long i = 1; i < d; ++i)
    middle.push_back(PadicScalar::integer(p, d) * prod[static_cast<std::size_t>(i - 1)] /
                     PadicScalar::integer(p, i));
  return MonicPolynomial(p, std::move(middle));
}

std::optional<mpq_class> invariant_zero_disk(const MonicPolynomial& f) {
  const PadicScalar& a1 = f.coefficient(1);
  if (!a1.is_exact_zero() && a1.certain_valuation() < 0) return std::nullopt;
  mpq_class sigma = 0;
  for (int i = 2; i < f.degree(); ++i) {
    const PadicScalar& a = f.coefficient(i);
    if (a.is_exact_zero()) continue;
    mpq_class cand(a.certain_valuation(), i - 1);
    cand.canonicalize();
    if (cand < sigma) sigma = cand;
  }
  return sigma;
}

// ---------------------------------------------------------------------------
// Orbit classification

const char* to_string(UnknownReason r) {
  switch (r) {
    case UnknownReason::IterBudget: return "IterBudget";
    case UnknownReason::PrecisionExhausted: return "PrecisionExhausted";
    case UnknownReason::Undecidable: return "Undecidable";
  }
  return "?";
}

const char* to_string(PcbVerdict v) {
  switch (v) {
    case PcbVerdict::PCB: return "PCB";
    case PcbVerdict::NotPCB: return "NotPCB";
    case PcbVerdict::Unknown: return "Unknown";
  }
  return "?";
}

std::string OrbitClassification::summary() const {
  std::ostringstream os;
  if (const auto* e = std::get_if<Escaped>(&verdict)) {
    os << "Escaped(" << e->iterate << ")";
  } else if (const auto* c = std::get_if<InvariantDiskCertificate>(&verdict)) {
    os << "Bounded(InvariantDisk sigma=" << c->sigma.get_str() << " at iterate " << c->iterate << ")";
  } else if (const auto* c = std::get_if<CycleCertificate>(&verdict)) {
    os << "Bounded(Cycle period " << c->period << ") entered at iterate " << c->iterate
       << " anchor " << c->anchor.to_string();
  } else if (const auto* c = std::get_if<InvariantUnionCertificate>(&verdict)) {
    os << "Bounded(InvariantUnion of " << c->cells << " disks, radius <= " << "p^" << c->rho << ")";
  } else if (const auto* u = std::get_if<Unknown>(&verdict)) {
    os << "Unknown(" << to_string(u->reason) << ")";
  }
  return os.str();
}

std::string OrbitClassification::to_json() const {
  using nlohmann::ordered_json;
  ordered_json j;
  ordered_json cert;
  if (const auto* e = std::get_if<Escaped>(&verdict)) {
    j["verdict"] = "Escaped";
    cert["kind"] = "escape";
    cert["iterate"] = e->iterate;
    cert["valuation"] = e->valuation;
    cert["escape_radius"] = escape_radius.get_str();
  } else if (const auto* c = std::get_if<InvariantDiskCertificate>(&verdict)) {
    j["verdict"] = "Bounded";
    cert["kind"] = "invariant_disk";
    cert["sigma"] = c->sigma.get_str();
    cert["iterate"] = c->iterate;
  } else if (const auto* c = std::get_if<CycleCertificate>(&verdict)) {
    j["verdict"] = "Bounded";
    cert["kind"] = "cycle";
    cert["period"] = c->period;
    cert["anchor"] = c->anchor.to_string();
    cert["iterate"] = c->iterate;
  } else if (const auto* c = std::get_if<InvariantUnionCertificate>(&verdict)) {
    j["verdict"] = "Bounded";
    cert["kind"] = "invariant_union";
    cert["cells"] = c->cells;
    cert["rho"] = c->rho;
    cert["iterate"] = c->iterate;
  } else if (const auto* u = std::get_if<Unknown>(&verdict)) {
    j["verdict"] = "Unknown";
    cert["kind"] = "none";
    cert["reason"] = to_string(u->reason);
    cert["detail"] = u->detail;
  }
  j["certificate"] = cert;
  ordered_json trace_json = ordered_json::array();
  for (const auto& t : trace) trace_json.push_back({t.iterate, t.valuation.to_string(), t.value});
  j["trace"] = trace_json;
  j["budgets"] = {{"max_iter", max_iter}, {"precision", precision_used}};
  return j.dump();
}

namespace {

constexpr std::size_t kMaxTraceValueChars = 96;

std::string trace_value(const PadicScalar& z, long precision) {
  std::string s = z.to_string();
  if (s.size() <= kMaxTraceValueChars) return s;
  return z.truncate(std::min<long>(precision, 32)).to_string();
}

std::size_t exact_bits(const PadicScalar& z) {
  const mpq_class& q = z.rational();
  return mpz_sizeinbase(q.get_num_mpz_t(), 2) + mpz_sizeinbase(q.get_den_mpz_t(), 2);
}

// Tri-state membership in D(0, p^sigma).
enum class Membership { Inside, Outside, Unresolved };

Membership in_zero_disk(const Valuation& v, const mpq_class& sigma) {
  if (v.is_infinite()) return Membership::Inside;
  const bool ok = cmp(mpq_class(v.value), mpq_class(-sigma)) >= 0;
  if (v.is_finite()) return ok ? Membership::Inside : Membership::Outside;
  return ok ? Membership::Inside : Membership::Unresolved;
}

// f^period(anchor) inside anchor, or nullopt when precision cannot settle it.
bool disk_cycle_holds(const MonicPolynomial& f, const PadicBall& anchor, long period) {
  PadicBall image = anchor;
  for (long k = 0; k < period; ++k) image = disk_image(f, image);
  return ball_subset(image, anchor);
}

std::optional<CycleCertificate> find_disk_cycle(const MonicPolynomial& f,
                                                const std::vector<PadicScalar>& history,
                                                long max_period) {
  const long n = static_cast<long>(history.size()) - 1;
  const PadicScalar& z = history.back();
  for (long j = 1; j <= max_period && j <= n; ++j) {
    const PadicScalar& earlier = history[static_cast<std::size_t>(n - j)];
    try {
      const PadicScalar diff = z - earlier;
      if (diff.is_exact_zero()) continue;  // exact repeats are handled separately
      RadiusExp s(-diff.valuation().value);
      if (const auto a = earlier.absolute_precision()) s = max(s, RadiusExp(-*a));
      // Any point of the disk is a centre; p^v*u mod p^(-s) keeps the Taylor
      // shifts small when exact iterates have grown large.
      PadicScalar centre = earlier;
      if (earlier.is_exact() && !earlier.is_exact_zero()) {
        const long digits = -s.value().get_num().get_si() - earlier.valuation().value;
        centre = digits > 0 ? PadicScalar::exact(f.prime(), earlier.truncate(digits).representative())
                            : PadicScalar::zero(f.prime());
      }
      const PadicBall anchor(centre, s);
      if (disk_cycle_holds(f, anchor, j)) return CycleCertificate{j, anchor, n - j};
    } catch (const Error&) {
      // Not enough precision for this period; try the next one.
    }
  }
  return std::nullopt;
}

OrbitClassification run_orbit(const MonicPolynomial& f, const PadicScalar& z0, long precision,
                              const OrbitOptions& opts) {
  OrbitClassification out;
  out.max_iter = opts.max_iter;
  out.precision_used = precision;
  try {
    out.escape_radius = escape_radius(f);
    out.invariant_sigma = invariant_zero_disk(f);
  } catch (const Error& e) {
    out.verdict = Unknown{UnknownReason::Undecidable, e.what()};
    return out;
  }
  const std::size_t bit_limit = static_cast<std::size_t>(4 * precision);
  bool exact_mode = z0.is_exact();
  PadicScalar z = exact_mode ? z0 : z0.truncate(precision);
  std::vector<PadicScalar> history;

  for (long n = 0;; ++n) {
    const Valuation v = z.valuation();
    out.trace.push_back({n, v, trace_value(z, precision)});
    history.push_back(z);

    Membership inside = Membership::Outside;
    if (out.invariant_sigma) {
      inside = in_zero_disk(v, *out.invariant_sigma);
      if (inside == Membership::Inside) {
        out.verdict = InvariantDiskCertificate{*out.invariant_sigma, n};
        return out;
      }
    }
    if (v.is_finite() && cmp(mpq_class(-v.value), out.escape_radius) > 0) {
      out.verdict = Escaped{n, v.value};
      return out;
    }
    if (v.is_lower_bound()) {
      out.verdict = Unknown{UnknownReason::PrecisionExhausted,
                            "iterate " + std::to_string(n) + " is " + z.to_string()};
      return out;
    }
    if (exact_mode) {
      for (std::size_t m = 0; m + 1 < history.size(); ++m) {
        if (history[m] == z) {
          const long period = n - static_cast<long>(m);
          out.verdict = CycleCertificate{period, PadicBall::point(z), static_cast<long>(m)};
          return out;
        }
      }
    }
    if (auto cycle = find_disk_cycle(f, history, opts.max_period)) {
      out.verdict = *cycle;
      return out;
    }
    if (n >= opts.max_iter) {
      out.verdict = Unknown{UnknownReason::IterBudget, "no certificate after " +
                                                           std::to_string(n) + " iterates"};
      return out;
    }
    try {
      z = f(z);
    } catch (const Error& e) {
      out.verdict = Unknown{UnknownReason::PrecisionExhausted, e.what()};
      return out;
    }
    if (exact_mode && exact_bits(z) > bit_limit) {
      exact_mode = false;
      z = z.truncate(precision);
    }
  }
}

}  // namespace

namespace {

std::optional<InvariantUnionCertificate> union_certificate(const MonicPolynomial& f,
                                                           const PadicScalar& z0,
                                                           const mpq_class& escape) {
  if (!z0.is_exact()) return std::nullopt;
  ParametricPolynomial g{f.prime(), {}};
  for (const auto& a : f.coefficients()) {
    if (!a.is_exact()) return std::nullopt;
    g.coeffs.push_back(RationalPolynomial::constant(a.rational()));
  }
  const PadicBall no_param = PadicBall::point(PadicScalar::zero(f.prime()));
  const auto u = find_invariant_union(g, no_param, RationalPolynomial::constant(z0.rational()), escape);
  if (!u) return std::nullopt;
  return InvariantUnionCertificate{static_cast<long>(u->cells.size()), u->rho, 0};
}

}  // namespace

OrbitClassification classify_orbit(const MonicPolynomial& f, const PadicScalar& z0,
                                   const OrbitOptions& opts) {
  OrbitClassification r = run_orbit(f, z0, opts.precision, opts);
  if (opts.retry_with_double_precision) {
    if (const auto* u = std::get_if<Unknown>(&r.verdict);
        u && u->reason == UnknownReason::PrecisionExhausted)
      r = run_orbit(f, z0, 2 * opts.precision, opts);
  }
  if (opts.union_search && r.unknown()) {
    if (auto cert = union_certificate(f, z0, r.escape_radius)) r.verdict = *cert;
  }
  return r;
}

// ---------------------------------------------------------------------------
// Whole-disk classification

TaylorModel BallPolynomial::operator()(const TaylorModel& z) const {
  TaylorModel acc = coeffs.back();
  for (auto i = coeffs.size() - 1; i-- > 0;) acc = acc * z + coeffs[i];
  return acc;
}

namespace {

Valuation ball_valuation(const PadicBall& b) {
  const RadiusExp sup = b.sup_abs_exponent();
  if (sup.is_point()) return Valuation::infinite();
  if (abs_exponent_bound(b.center()) > b.radius_exp())
    return Valuation::finite(b.center().certain_valuation());
  return Valuation::at_least(-ceil_to_long(sup.value()));
}

OrbitClassification run_ball_orbit(const BallPolynomial& f, const TaylorModel& z0, long precision,
                                   const OrbitOptions& opts) {
  OrbitClassification out;
  out.max_iter = opts.max_iter;
  out.precision_used = precision;
  const int d = f.degree();

  // Worst case over the coefficient sets: largest |a_i|.
  std::vector<std::pair<int, mpq_class>> worst;
  for (int i = 1; i < d; ++i) {
    const RadiusExp sup = f.coeffs[static_cast<std::size_t>(i)].sup_exponent();
    if (sup.is_point()) continue;
    worst.emplace_back(i, mpq_class(-sup.value()));
  }
  out.escape_radius = escape_radius(d, worst);

  std::optional<mpq_class> sigma;
  {
    const RadiusExp a1 = f.coeffs[1].sup_exponent();
    if (a1 <= RadiusExp(0L)) {
      mpq_class s = 0;
      for (const auto& [i, v] : worst) {
        if (i < 2) continue;
        mpq_class cand = v / (i - 1);
        cand.canonicalize();
        if (cand < s) s = cand;
      }
      sigma = s;
    }
  }
  out.invariant_sigma = sigma;

  TaylorModel z = z0;
  std::vector<PadicBall> enclosures;
  for (long n = 0;; ++n) {
    const PadicBall b = z.enclosure();
    out.trace.push_back({n, ball_valuation(b), b.to_string()});
    enclosures.push_back(b);

    const RadiusExp sup = b.sup_abs_exponent();
    if (sigma && sup <= RadiusExp(*sigma)) {
      out.verdict = InvariantDiskCertificate{*sigma, n};
      return out;
    }
    const RadiusExp center_abs = abs_exponent_bound(b.center());
    if (center_abs > b.radius_exp() && center_abs > RadiusExp(out.escape_radius)) {
      out.verdict = Escaped{n, b.center().certain_valuation()};
      return out;
    }
    // Past this point the enclosure only grows.
    if (b.radius_exp() > RadiusExp(out.escape_radius)) {
      out.verdict = Unknown{UnknownReason::Undecidable,
                            "enclosure radius exceeds the escape radius at iterate " + std::to_string(n)};
      return out;
    }
    for (long j = 1; j <= opts.max_period && j <= n; ++j) {
      const PadicBall& anchor = enclosures[static_cast<std::size_t>(n - j)];
      if (!ball_subset(b, anchor)) continue;
      TaylorModel w = TaylorModel::independent(anchor, z.param_radius(), precision);
      for (long k = 0; k < j; ++k) w = f(w);
      if (ball_subset(w.enclosure(), anchor)) {
        out.verdict = CycleCertificate{j, anchor, n - j};
        return out;
      }
    }
    if (n >= opts.max_iter) {
      out.verdict = Unknown{UnknownReason::IterBudget,
                            "no whole-disk certificate after " + std::to_string(n) + " iterates"};
      return out;
    }
    z = f(z);
  }
}

}  // namespace

OrbitClassification classify_orbit_ball(const BallPolynomial& f, const TaylorModel& z0,
                                        const OrbitOptions& opts) {
  try {
    return run_ball_orbit(f, z0, opts.precision, opts);
  } catch (const Error& e) {
    OrbitClassification out;
    out.max_iter = opts.max_iter;
    out.precision_used = opts.precision;
    out.verdict = Unknown{UnknownReason::Undecidable, e.what()};
    return out;
  }
}

OrbitClassification classify_orbit_ball(Prime p, std::span<const PadicBall> coeffs,
                                        const PadicBall& z0, const OrbitOptions& opts) {
  if (coeffs.size() < 3) throw Error(ErrorCode::InvalidArgument, "degree must be at least 2");
  const RadiusExp param = RadiusExp::point();
  BallPolynomial f{p, {}};
  for (const auto& c : coeffs) f.coeffs.push_back(TaylorModel::independent(c, param, opts.precision));
  return classify_orbit_ball(f, TaylorModel::independent(z0, param, opts.precision), opts);
}

// ---------------------------------------------------------------------------

namespace {

void verify_critical_points(const MonicPolynomial& f, std::span<const PadicScalar> cps) {
  const Prime p = f.prime();
  if (static_cast<int>(cps.size()) != f.degree() - 1)
    throw Error(ErrorCode::NotACriticalPoint,
                "expected " + std::to_string(f.degree() - 1) + " critical points, got " +
                    std::to_string(cps.size()));
  const auto df = derivative(f.coefficients());
  const bool all_exact = std::all_of(cps.begin(), cps.end(), [](const PadicScalar& c) { return c.is_exact(); }) &&
                         std::all_of(df.begin(), df.end(), [](const PadicScalar& c) { return c.is_exact(); });
  for (const auto& c : cps) {
    if (c.prime() != p) throw Error(ErrorCode::InvalidArgument, "critical point over a different prime");
    if (!evaluate(df, c).may_be_zero())
      throw Error(ErrorCode::NotACriticalPoint, c.to_string() + " is not a critical point of " + f.to_string());
  }
  if (all_exact) {
    // The multiset must be all of f's critical points.
    const MonicPolynomial g = from_critical_points(p, cps);
    if (!(g.coefficients() == f.coefficients()))
      throw Error(ErrorCode::NotACriticalPoint, "critical points do not form the full critical multiset");
  }
}

}  // namespace

PcbResult is_pcb(const MonicPolynomial& f, std::span<const PadicScalar> critical_points,
                 const OrbitOptions& opts) {
  verify_critical_points(f, critical_points);
  PcbResult r{PcbVerdict::PCB, {}};
  bool any_unknown = false;
  for (const auto& c : critical_points) {
    r.orbits.push_back(classify_orbit(f, c, opts));
    if (r.orbits.back().escaped()) r.verdict = PcbVerdict::NotPCB;
    if (r.orbits.back().unknown()) any_unknown = true;
  }
  if (r.verdict != PcbVerdict::NotPCB && any_unknown) r.verdict = PcbVerdict::Unknown;
  return r;
}

}  // namespace padicdyn
