#include "padicdyn/newton.hpp"

#include <algorithm>

#include "json.hpp"

#include "padicdyn/dynamics.hpp"
#include "padicdyn/polynomial.hpp"

namespace padicdyn {

NewtonPolygon::NewtonPolygon(std::vector<PolygonVertex> vertices, long zero_root_count,
                             long degree)
    : vertices_(std::move(vertices)), zero_roots_(zero_root_count), degree_(degree) {
  for (std::size_t i = 1; i < vertices_.size(); ++i) {
    const long len = vertices_[i].index - vertices_[i - 1].index;
    mpq_class slope = (vertices_[i].valuation - vertices_[i - 1].valuation) / len;
    slope.canonicalize();
    segments_.push_back({std::move(slope), len});
  }
}

std::string NewtonPolygon::to_json() const {
  nlohmann::ordered_json j;
  j["vertices"] = nlohmann::ordered_json::array();
  for (const auto& v : vertices_) j["vertices"].push_back({v.index, v.valuation.get_str()});
  j["segments"] = nlohmann::ordered_json::array();
  for (const auto& s : segments_) j["segments"].push_back({s.slope.get_str(), s.length});
  j["zero_roots"] = zero_roots_;
  return j.dump();
}

NewtonPolygon build_polygon(std::span<const PadicScalar> coeffs) {
  if (coeffs.empty() || coeffs.back().is_exact_zero())
    throw Error(ErrorCode::InvalidArgument, "leading coefficient must be nonzero");
  std::vector<PolygonVertex> points;
  for (std::size_t i = 0; i < coeffs.size(); ++i) {
    if (coeffs[i].is_exact_zero()) continue;
    points.push_back({static_cast<long>(i), mpq_class(coeffs[i].certain_valuation())});
  }
  const long zero_roots = points.front().index;
  const long degree = static_cast<long>(coeffs.size()) - 1;

  // Monotone chain, lower hull; points already sorted by index. Collinear
  // middle points are dropped so slopes strictly increase.
  std::vector<PolygonVertex> hull;
  auto turns_up = [](const PolygonVertex& a, const PolygonVertex& b, const PolygonVertex& c) {
    const mpq_class cross = (b.index - a.index) * (c.valuation - a.valuation) -
                            (b.valuation - a.valuation) * (c.index - a.index);
    return sgn(cross) > 0;
  };
  for (auto& pt : points) {
    while (hull.size() >= 2 && !turns_up(hull[hull.size() - 2], hull.back(), pt)) hull.pop_back();
    hull.push_back(pt);
  }
  return NewtonPolygon(std::move(hull), zero_roots, degree);
}

std::vector<RootValuation> root_valuations(std::span<const PadicScalar> coeffs) {
  const NewtonPolygon poly = build_polygon(coeffs);
  std::vector<RootValuation> out;
  for (const auto& seg : poly.segments())
    for (long k = 0; k < seg.length; ++k) out.emplace_back(mpq_class(-seg.slope));
  std::sort(out.begin(), out.end(), [](const RootValuation& a, const RootValuation& b) {
    if (!a) return false;
    if (!b) return true;
    return *a < *b;
  });
  for (long k = 0; k < poly.zero_root_count(); ++k) out.emplace_back(std::nullopt);
  return out;
}

long count_roots_in_disk(std::span<const PadicScalar> coeffs, const mpq_class& s) {
  const NewtonPolygon poly = build_polygon(coeffs);
  long count = poly.zero_root_count();
  for (const auto& seg : poly.segments())
    if (seg.slope <= s) count += seg.length;
  return count;
}

ShiftReport shift_compare(const MonicPolynomial& f) {
  const auto& coeffs = f.coefficients();
  const auto df = derivative(coeffs);
  NewtonPolygon pf = build_polygon(coeffs);
  NewtonPolygon pd = build_polygon(df);
  const bool equal =
      pf.segments() == pd.segments() && pf.zero_root_count() == pd.zero_root_count() + 1;
  return {std::move(pd), std::move(pf), equal};
}

}  // namespace padicdyn
