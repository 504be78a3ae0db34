#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <algorithm>

#include "padicdyn/dynamics.hpp"
#include "padicdyn/newton.hpp"
#include "test_support.hpp"

using namespace padicdyn;
using test_support::Rng;
using test_support::oracle_valuation;
using test_support::random_rational;
using test_support::uniform;

namespace {

std::vector<PadicScalar> exact_all(Prime p, const std::vector<mpq_class>& qs) {
  std::vector<PadicScalar> out;
  for (const auto& q : qs) out.push_back(PadicScalar::exact(p, q));
  return out;
}

// Lower envelope sampled at every integer index, from all pairs of points.
std::vector<PolygonSegment> brute_force_segments(const std::vector<mpq_class>& coeffs, Prime p) {
  std::vector<std::pair<long, mpq_class>> pts;
  for (std::size_t i = 0; i < coeffs.size(); ++i)
    if (sgn(coeffs[i]) != 0) pts.emplace_back(static_cast<long>(i), mpq_class(oracle_valuation(coeffs[i], p)));
  const long lo = pts.front().first;
  const long hi = pts.back().first;
  std::vector<mpq_class> env;
  for (long x = lo; x <= hi; ++x) {
    std::optional<mpq_class> best;
    for (const auto& [i, vi] : pts)
      for (const auto& [j, vj] : pts) {
        if (i > x || j < x) continue;
        mpq_class y = i == j ? vi : mpq_class(vi + (vj - vi) * (x - i) / (j - i));
        y.canonicalize();
        if (!best || y < *best) best = y;
      }
    env.push_back(*best);
  }
  std::vector<PolygonSegment> segs;
  for (std::size_t k = 0; k + 1 < env.size(); ++k) {
    mpq_class slope = env[k + 1] - env[k];
    slope.canonicalize();
    if (!segs.empty() && segs.back().slope == slope)
      ++segs.back().length;
    else
      segs.push_back({slope, 1});
  }
  return segs;
}

}  // namespace

TEST_CASE("polygon examples") {
  const auto f = exact_all(2, {0, 0, mpq_class(-3, 2), 1});
  const NewtonPolygon poly = build_polygon(f);
  CHECK(poly.segments() == std::vector<PolygonSegment>{{1, 1}});
  CHECK(poly.zero_root_count() == 2);

  CHECK(build_polygon(exact_all(2, {2, 2, 1})).segments() == std::vector<PolygonSegment>{{mpq_class(-1, 2), 2}});
  CHECK(build_polygon(exact_all(2, {2, 1, 1})).segments() == std::vector<PolygonSegment>{{-1, 1}, {0, 1}});
  CHECK(brute_force_segments({2, 1, 1}, 2) == std::vector<PolygonSegment>{{-1, 1}, {0, 1}});
}

TEST_CASE("root valuation examples") {
  const auto f = exact_all(2, {0, 0, mpq_class(-3, 2), 1});
  const auto v = root_valuations(f);
  REQUIRE(v.size() == 3);
  CHECK(v[0] == mpq_class(-1));
  CHECK_FALSE(v[1].has_value());
  CHECK_FALSE(v[2].has_value());

  const auto w = root_valuations(exact_all(3, {-9, 0, 1}));
  CHECK(w == std::vector<RootValuation>{mpq_class(1), mpq_class(1)});
  CHECK(root_valuations(exact_all(5, {0, 1})) == std::vector<RootValuation>{std::nullopt});
}

TEST_CASE("root counting examples") {
  const auto f = exact_all(2, {0, 0, mpq_class(-3, 2), 1});
  CHECK(count_roots_in_disk(f, 0) == 2);
  CHECK(count_roots_in_disk(f, 1) == 3);
  CHECK(count_roots_in_disk(exact_all(2, {2, 1, 1}), -1) == 1);
}

TEST_CASE("polygon errors") {
  std::vector<PadicScalar> amb{PadicScalar::zero_to(2, 3), PadicScalar::one(2), PadicScalar::one(2)};
  try {
    build_polygon(amb);
    FAIL("expected AmbiguousValuation");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::AmbiguousValuation);
  }
  try {
    build_polygon(exact_all(2, {1, 1, 0}));
    FAIL("expected InvalidArgument");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::InvalidArgument);
  }
}

TEST_CASE("hull matches the brute-force envelope") {
  Rng rng(21);
  for (int n = 0; n < 1000; ++n) {
    const Prime p = test_support::pick(rng, {2, 3, 5});
    const long d = uniform(rng, 1, 8);
    std::vector<mpq_class> c(static_cast<std::size_t>(d + 1));
    for (auto& x : c)
      if (uniform(rng, 0, 3) != 0) x = random_rational(rng, p, -4, 4);
    c.back() = random_rational(rng, p, -4, 4);
    const NewtonPolygon poly = build_polygon(exact_all(p, c));
    CHECK(poly.segments() == brute_force_segments(c, p));
    long total = poly.zero_root_count();
    for (std::size_t k = 0; k < poly.segments().size(); ++k) {
      total += poly.segments()[k].length;
      if (k > 0) CHECK(poly.segments()[k - 1].slope < poly.segments()[k].slope);
    }
    CHECK(total == d);
  }
}

TEST_CASE("split polynomials have the valuations of their roots") {
  Rng rng(22);
  for (int n = 0; n < 1000; ++n) {
    const Prime p = test_support::pick(rng, {2, 3, 5, 7});
    const long d = uniform(rng, 1, 8);
    std::vector<mpq_class> c{1};
    std::vector<mpq_class> roots;
    for (long i = 0; i < d; ++i) {
      const mpq_class r = uniform(rng, 0, 6) == 0 ? mpq_class(0) : random_rational(rng, p, -3, 3);
      roots.push_back(r);
      std::vector<mpq_class> next(c.size() + 1);
      for (std::size_t j = 0; j < c.size(); ++j) {
        next[j + 1] += c[j];
        next[j] -= r * c[j];
      }
      c = next;
    }
    std::vector<long> expected;
    for (const auto& r : roots) expected.push_back(oracle_valuation(r, p));
    std::sort(expected.begin(), expected.end());
    const auto got = root_valuations(exact_all(p, c));
    REQUIRE(got.size() == expected.size());
    for (std::size_t i = 0; i < got.size(); ++i) {
      if (expected[i] == test_support::kInfiniteValuation)
        CHECK_FALSE(got[i].has_value());
      else
        CHECK((got[i].has_value() && *got[i] == expected[i]));
    }
    const long s = uniform(rng, -4, 4);
    const long inside = std::count_if(expected.begin(), expected.end(), [&](long v) { return v >= -s; });
    CHECK(count_roots_in_disk(exact_all(p, c), s) == inside);
  }
}

TEST_CASE("f and f' polygons agree up to translation when p > d") {
  Rng rng(23);
  for (int n = 0; n < 500; ++n) {
    const Prime p = test_support::pick(rng, {7, 11});
    const long d = uniform(rng, 2, std::min<long>(static_cast<long>(p) - 1, 8));
    std::vector<PadicScalar> middle;
    for (long i = 1; i < d; ++i)
      middle.push_back(uniform(rng, 0, 3) == 0 ? PadicScalar::zero(p)
                                                : PadicScalar::exact(p, random_rational(rng, p, -3, 3)));
    const ShiftReport r = shift_compare(MonicPolynomial(p, middle));
    CHECK(r.translated_equal);
  }
  // z^3 + z^2 + z over Q_5.
  const ShiftReport r = shift_compare(MonicPolynomial(5, {PadicScalar::one(5), PadicScalar::one(5)}));
  CHECK(r.translated_equal);
}

TEST_CASE("polygon json") {
  const auto poly = build_polygon(exact_all(2, {2, 1, 1}));
  const std::string j = poly.to_json();
  CHECK(j.find("\"vertices\"") != std::string::npos);
  CHECK(j.find("\"segments\"") != std::string::npos);
  CHECK(j.find("\"zero_roots\"") != std::string::npos);
}
