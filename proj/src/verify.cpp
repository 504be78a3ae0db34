#include "padicdyn/verify.hpp"

#include <algorithm>
#include <functional>
#include <random>
#include <sstream>

#include "padicdyn/dynamics.hpp"
#include "padicdyn/family.hpp"
#include "padicdyn/newton.hpp"
#include "padicdyn/radius.hpp"

namespace padicdyn {

bool SuiteReport::passed() const {
  return std::all_of(checks.begin(), checks.end(), [](const CheckResult& c) { return c.passed; });
}

std::string SuiteReport::to_string() const {
  std::ostringstream os;
  for (const auto& c : checks)
    os << (c.passed ? "PASS " : "FAIL ") << suite << "/" << c.name << ": " << c.detail << "\n";
  return os.str();
}

const std::vector<std::string>& suite_names() {
  static const std::vector<std::string> names{"newton", "disk", "pto1", "radius", "witness", "bdry"};
  return names;
}

namespace {

using Rng = std::mt19937_64;

long uniform(Rng& rng, long lo, long hi) { return std::uniform_int_distribution<long>(lo, hi)(rng); }

mpq_class pow_p(Prime p, long e) {
  if (e >= 0) return mpq_class(prime_power(p, static_cast<unsigned long>(e)));
  return mpq_class(mpz_class(1), prime_power(p, static_cast<unsigned long>(-e)));
}

// Nonzero rational with valuation near [emin, emax].
mpq_class random_rational(Rng& rng, Prime p, long emin, long emax) {
  mpq_class q(uniform(rng, 1, 40), uniform(rng, 1, 40));
  q.canonicalize();
  if (uniform(rng, 0, 1)) q = -q;
  return q * pow_p(p, uniform(rng, emin, emax));
}

Prime pick(Rng& rng, std::initializer_list<Prime> primes) {
  return *(primes.begin() + uniform(rng, 0, static_cast<long>(primes.size()) - 1));
}

std::vector<PadicScalar> exact_all(Prime p, const std::vector<mpq_class>& qs) {
  std::vector<PadicScalar> out;
  for (const auto& q : qs) out.push_back(PadicScalar::exact(p, q));
  return out;
}

MonicPolynomial random_normal_form(Rng& rng, Prime p, int d, long emin, long emax) {
  std::vector<PadicScalar> middle;
  for (int i = 1; i < d; ++i) {
    if (uniform(rng, 0, 4) == 0)
      middle.push_back(PadicScalar::zero(p));
    else
      middle.push_back(PadicScalar::exact(p, random_rational(rng, p, emin, emax)));
  }
  return MonicPolynomial(p, std::move(middle));
}

CheckResult tally(const std::string& name, long good, long total, const std::string& extra = "") {
  std::string detail = std::to_string(good) + "/" + std::to_string(total) + " instances";
  if (!extra.empty()) detail += ", " + extra;
  return {name, good == total, detail};
}

CheckResult expect(const std::string& name, bool ok, const std::string& detail) { return {name, ok, detail}; }

// Guards a check so that an exception fails it instead of aborting the suite.
CheckResult guarded(const std::string& name, const std::function<CheckResult()>& body) {
  try {
    return body();
  } catch (const std::exception& e) {
    return {name, false, std::string("exception: ") + e.what()};
  }
}

std::string valuations_string(const std::vector<RootValuation>& v) {
  std::string s = "{";
  for (std::size_t i = 0; i < v.size(); ++i) s += (i ? ", " : "") + (v[i] ? v[i]->get_str() : "inf");
  return s + "}";
}

// ---------------------------------------------------------------------------

SuiteReport newton_suite(Rng& rng) {
  SuiteReport r{"newton", {}};
  r.checks.push_back(guarded("example z^3-(3/2)z^2", [] {
    const auto c = exact_all(2, {0, 0, mpq_class(-3, 2), 1});
    const auto v = root_valuations(c);
    const bool ok = valuations_string(v) == "{-1, inf, inf}" && count_roots_in_disk(c, 0) == 2 &&
                    count_roots_in_disk(c, 1) == 3;
    return expect("example z^3-(3/2)z^2", ok, "root valuations " + valuations_string(v));
  }));
  r.checks.push_back(guarded("example Eisenstein", [] {
    const auto poly = build_polygon(exact_all(2, {2, 2, 1}));
    const bool ok = poly.segments() == std::vector<PolygonSegment>{{mpq_class(-1, 2), 2}};
    return expect("example Eisenstein", ok, "z^2+2z+2 has one segment of slope -1/2");
  }));
  r.checks.push_back(guarded("example z^2+z+2", [] {
    const auto c = exact_all(2, {2, 1, 1});
    const bool ok = build_polygon(c).segments() == std::vector<PolygonSegment>{{-1, 1}, {0, 1}} &&
                    count_roots_in_disk(c, -1) == 1;
    return expect("example z^2+z+2", ok, "segments (-1,1),(0,1)");
  }));

  r.checks.push_back(guarded("split oracle", [&] {
    long good = 0;
    long structural = 0;
    const long total = 1000;
    for (long n = 0; n < total; ++n) {
      const Prime p = pick(rng, {2, 3, 5, 7});
      const int d = static_cast<int>(uniform(rng, 1, 8));
      std::vector<mpq_class> coeffs{1};
      std::vector<RootValuation> expected;
      for (int i = 0; i < d; ++i) {
        mpq_class root = 0;
        if (uniform(rng, 0, 7) != 0) root = random_rational(rng, p, -3, 3);
        expected.push_back(sgn(root) == 0 ? RootValuation{} : RootValuation{mpq_class(valuation_of(root, p))});
        std::vector<mpq_class> next(coeffs.size() + 1);
        for (std::size_t j = 0; j < coeffs.size(); ++j) {
          next[j + 1] += coeffs[j];
          next[j] -= root * coeffs[j];
        }
        coeffs = std::move(next);
      }
      std::sort(expected.begin(), expected.end(), [](const RootValuation& a, const RootValuation& b) {
        if (!a) return false;
        if (!b) return true;
        return *a < *b;
      });
      const auto c = exact_all(p, coeffs);
      if (root_valuations(c) == expected) ++good;
      const auto poly = build_polygon(c);
      long length = poly.zero_root_count();
      bool increasing = true;
      for (std::size_t j = 0; j < poly.segments().size(); ++j) {
        length += poly.segments()[j].length;
        if (j > 0 && !(poly.segments()[j - 1].slope < poly.segments()[j].slope)) increasing = false;
      }
      if (length == d && increasing) ++structural;
    }
    auto out = tally("split oracle", good, total);
    if (structural != total) {
      out.passed = false;
      out.detail += ", polygon structure held in " + std::to_string(structural);
    }
    return out;
  }));

  r.checks.push_back(guarded("shift compare p>d", [&] {
    long good = 0;
    const long total = 1000;
    for (long n = 0; n < total; ++n) {
      const Prime p = pick(rng, {5, 7, 11});
      const int d = static_cast<int>(uniform(rng, 2, std::min<long>(8, static_cast<long>(p) - 1)));
      if (shift_compare(random_normal_form(rng, p, d, -3, 3)).translated_equal) ++good;
    }
    return tally("shift compare p>d", good, total);
  }));
  return r;
}

SuiteReport disk_suite(Rng& rng) {
  SuiteReport r{"disk", {}};
  r.checks.push_back(guarded("image contains sampled images", [&] {
    long good = 0;
    const long total = 300;
    for (long n = 0; n < total; ++n) {
      const Prime p = pick(rng, {2, 3, 5});
      const auto f = random_normal_form(rng, p, static_cast<int>(uniform(rng, 2, 6)), -2, 2);
      const mpq_class a = random_rational(rng, p, -2, 2);
      const long s = uniform(rng, -3, 2);
      const PadicBall disk(PadicScalar::exact(p, a), RadiusExp(s));
      const PadicBall image = disk_image(f, disk);
      bool ok = true;
      for (int k = 0; k < 20 && ok; ++k) {
        const mpq_class z = a + pow_p(p, -s) * uniform(rng, -1000, 1000);
        ok = ball_contains(image, f(PadicScalar::exact(p, z)));
      }
      if (ok) ++good;
    }
    return tally("image contains sampled images", good, total);
  }));
  r.checks.push_back(guarded("degree counts preimages", [&] {
    long good = 0;
    const long total = 300;
    for (long n = 0; n < total; ++n) {
      const Prime p = pick(rng, {2, 3, 5});
      const auto f = random_normal_form(rng, p, static_cast<int>(uniform(rng, 2, 6)), -2, 2);
      const mpq_class a = random_rational(rng, p, -2, 2);
      const long s = uniform(rng, -3, 2);
      const PadicBall disk(PadicScalar::exact(p, a), RadiusExp(s));
      auto shifted = taylor_shift(f, PadicScalar::exact(p, a));
      shifted.front() = PadicScalar::zero(p);
      if (count_roots_in_disk(shifted, s) == disk_degree(f, disk)) ++good;
    }
    return tally("degree counts preimages", good, total);
  }));
  r.checks.push_back(guarded("invariant zero disk", [&] {
    long good = 0;
    long applicable = 0;
    for (long n = 0; n < 300; ++n) {
      const Prime p = pick(rng, {2, 3, 5, 7});
      const auto f = random_normal_form(rng, p, static_cast<int>(uniform(rng, 2, 6)), -2, 3);
      const auto sigma = invariant_zero_disk(f);
      if (!sigma) continue;
      ++applicable;
      const PadicBall disk(PadicScalar::zero(p), RadiusExp(*sigma));
      if (ball_subset(disk_image(f, disk), disk)) ++good;
    }
    return tally("invariant zero disk", good, applicable);
  }));
  return r;
}

SuiteReport pto1_suite(Rng& rng) {
  SuiteReport r{"pto1", {}};
  r.checks.push_back(guarded("critical count", [&] {
    long good = 0;
    long accepted = 0;
    long skipped = 0;
    long nontrivial = 0;
    while (accepted < 1000) {
      const Prime p = pick(rng, {3, 5, 7});
      const auto f = random_normal_form(rng, p, static_cast<int>(uniform(rng, 2, 8)), -3, 3);
      const PadicBall disk(PadicScalar::exact(p, random_rational(rng, p, -2, 2)), RadiusExp(uniform(rng, -3, 3)));
      const int m = disk_degree(f, disk);
      if (m % static_cast<int>(p) == 0) {
        ++skipped;
        continue;
      }
      ++accepted;
      if (m > 1) ++nontrivial;
      if (critical_count_in_disk(f, disk) == m - 1) ++good;
    }
    return tally("critical count", good, accepted,
                 std::to_string(nontrivial) + " with disk degree > 1, " + std::to_string(skipped) +
                     " skipped for p | m");
  }));
  return r;
}

SuiteReport radius_suite(Rng& rng) {
  SuiteReport r{"radius", {}};
  auto radius_is = [&](long d, Prime p, RadiusAnswer::Kind kind, const mpq_class& value) {
    const std::string name = "r(" + std::to_string(d) + "," + std::to_string(p) + ")";
    r.checks.push_back(guarded(name, [&] {
      const RadiusAnswer a = known_radius(d, p);
      return expect(name, a.kind == kind && a.value == value, a.describe());
    }));
  };
  radius_is(3, 2, RadiusAnswer::Kind::Exact, 1);
  radius_is(5, 3, RadiusAnswer::Kind::Exact, mpq_class(3, 4));
  radius_is(4, 2, RadiusAnswer::Kind::Exact, 0);
  radius_is(8, 2, RadiusAnswer::Kind::Exact, 0);
  radius_is(10, 5, RadiusAnswer::Kind::Exact, 0);
  radius_is(6, 3, RadiusAnswer::Kind::Exact, 0);
  radius_is(5, 2, RadiusAnswer::Kind::Bounds, 2);

  r.checks.push_back(guarded("p>d gives 0", [] {
    long good = 0;
    long total = 0;
    for (long d = 2; d <= 10; ++d)
      for (Prime p = static_cast<Prime>(d) + 1; p <= 31; ++p) {
        if (!is_prime(p)) continue;
        ++total;
        const RadiusAnswer a = known_radius(d, p);
        if (a.kind == RadiusAnswer::Kind::Exact && a.value == 0) ++good;
      }
    return tally("p>d gives 0", good, total);
  }));

  r.checks.push_back(guarded("lower bound realised by witness", [] {
    long good = 0;
    long total = 0;
    for (long d = 3; d <= 40; ++d)
      for (Prime p = 2; p < static_cast<Prime>(d); ++p) {
        if (!is_prime(p)) continue;
        try {
          const PcfWitness w = pcf_witness(d, p);
          ++total;
          if (-w.v_alpha == lower_bound(d, p)) ++good;
        } catch (const Error& e) {
          if (e.code() != ErrorCode::DomainError) throw;
        }
      }
    return tally("lower bound realised by witness", good, total);
  }));

  r.checks.push_back(guarded("integral critical points are PCB", [&] {
    long good = 0;
    long total = 0;
    long skipped = 0;
    OrbitOptions opts;
    opts.union_search = false;
    while (total < 500) {
      Prime p;
      long d;
      if (total % 2 == 0) {
        p = pick(rng, {5, 7, 11});
        d = uniform(rng, 2, static_cast<long>(p) - 1);
      } else {
        p = 2;
        d = uniform(rng, 0, 1) ? 4 : 8;
      }
      std::vector<PadicScalar> crit;
      for (long i = 0; i + 1 < d; ++i) crit.push_back(PadicScalar::integer(p, uniform(rng, -30, 30)));
      const MonicPolynomial f = from_critical_points(p, crit);
      bool integral = true;
      for (const auto& a : f.coefficients())
        if (!a.is_exact_zero() && a.certain_valuation() < 0) integral = false;
      if (!integral) {
        ++skipped;
        continue;
      }
      ++total;
      if (is_pcb(f, crit, opts).verdict == PcbVerdict::PCB) ++good;
    }
    return tally("integral critical points are PCB", good, total,
                 std::to_string(skipped) + " skipped for non-integral coefficients");
  }));
  return r;
}

SuiteReport witness_suite() {
  SuiteReport r{"witness", {}};
  r.checks.push_back(guarded("identities d<=40", [] {
    long good = 0;
    long total = 0;
    std::string failures;
    for (long d = 3; d <= 40; ++d)
      for (Prime p = 2; p < static_cast<Prime>(d); ++p) {
        if (!is_prime(p)) continue;
        try {
          pcf_witness(d, p);
        } catch (const Error& e) {
          if (e.code() != ErrorCode::DomainError) throw;
          continue;
        }
        ++total;
        if (verify_pcf_witness(d, p).all())
          ++good;
        else
          failures += " (" + std::to_string(d) + "," + std::to_string(p) + ")";
      }
    return tally("identities d<=40", good, total, failures.empty() ? "" : "failed:" + failures);
  }));
  r.checks.push_back(guarded("witness (3,2)", [] {
    const PcfWitness w = pcf_witness(3, 2);
    const bool ok = w.c == mpq_class(27, 4) && w.v_alpha == -1 && verify_pcf_witness(3, 2).all();
    return expect("witness (3,2)", ok, w.shape + ", c = " + w.c.get_str() + ", v(alpha) = " + w.v_alpha.get_str());
  }));
  return r;
}

// Iterates f_t on t exactly; independent of the classifier.
std::vector<mpq_class> exact_orbit(const mpq_class& t, long steps) {
  std::vector<mpq_class> out{t};
  mpq_class z = t;
  const mpq_class c = mpq_class(3, 2) * t;
  for (long i = 0; i < steps; ++i) {
    z = z * z * (z - c);
    out.push_back(z);
  }
  return out;
}

SuiteReport bdry_suite(Rng& rng) {
  SuiteReport r{"bdry", {}};
  const PolynomialFamily fam = PolynomialFamily::builtin("cubic2");
  auto classify_t = [&](const mpq_class& t) {
    const PadicScalar ts = PadicScalar::exact(2, t);
    return is_pcb(fam.instantiate(ts), fam.critical_points_at(ts));
  };

  // t = 1 is post-critically finite: t maps to the fixed point -1/2.
  r.checks.push_back(guarded("t=1 cycle", [&] {
    const PcbResult res = classify_t(1);
    const auto* cyc = std::get_if<CycleCertificate>(&res.orbits[1].verdict);
    const bool ok = res.verdict == PcbVerdict::PCB && cyc && cyc->iterate == 1 && cyc->period == 1 &&
                    ball_contains(cyc->anchor, PadicScalar::exact(2, mpq_class(-1, 2)));
    return expect("t=1 cycle", ok, res.orbits[1].summary());
  }));

  // t_k = 1 + 2^(2k) escapes at iterate k+2 with v(f^i(t) + 1/2) = 2k - 2i + 2.
  for (long k = 2; k <= 6; ++k) {
    const std::string name = "escape ladder k=" + std::to_string(k);
    r.checks.push_back(guarded(name, [&] {
      const mpq_class t = 1 + pow_p(2, 2 * k);
      const PcbResult res = classify_t(t);
      const auto* esc = std::get_if<Escaped>(&res.orbits[1].verdict);
      bool ok = res.verdict == PcbVerdict::NotPCB && esc && esc->iterate == k + 2;
      const auto orbit = exact_orbit(t, k);
      for (long i = 2; i <= k; ++i)
        ok = ok && valuation_of(mpq_class(orbit[static_cast<std::size_t>(i)] + mpq_class(1, 2)), 2) == 2 * k - 2 * i + 2;
      return expect(name, ok, res.orbits[1].summary());
    }));
  }

  // t_m = 1 + 3 * 2^(2m+1) enters D(0, 1/2) at iterate m+2.
  for (long m = 2; m <= 6; ++m) {
    const std::string name = "bounded ladder m=" + std::to_string(m);
    r.checks.push_back(guarded(name, [&] {
      const PcbResult res = classify_t(1 + 3 * pow_p(2, 2 * m + 1));
      const auto* inv = std::get_if<InvariantDiskCertificate>(&res.orbits[1].verdict);
      const bool ok = res.verdict == PcbVerdict::PCB && inv && inv->iterate == m + 2 && inv->sigma == -1;
      return expect(name, ok, res.orbits[1].summary());
    }));
  }

  // f_t is PCB exactly when f_{-t} is.
  r.checks.push_back(guarded("symmetry t <-> -t", [&] {
    long good = 0;
    const long total = 40;
    for (long n = 0; n < total; ++n) {
      const mpq_class t = random_rational(rng, 2, -2, 6);
      if (classify_t(t).verdict == classify_t(-t).verdict) ++good;
    }
    return tally("symmetry t <-> -t", good, total);
  }));
  return r;
}

}  // namespace

SuiteReport run_suite(const std::string& name, std::uint64_t seed) {
  Rng rng(seed);
  if (name == "newton") return newton_suite(rng);
  if (name == "disk") return disk_suite(rng);
  if (name == "pto1") return pto1_suite(rng);
  if (name == "radius") return radius_suite(rng);
  if (name == "witness") return witness_suite();
  if (name == "bdry") return bdry_suite(rng);
  throw Error(ErrorCode::InvalidArgument, "unknown suite '" + name + "'");
}

}  // namespace padicdyn
