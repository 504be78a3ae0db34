#pragma once

#include <gmpxx.h>

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "padicdyn/padic.hpp"

namespace padicdyn {

class MonicPolynomial;

struct PolygonVertex {
  long index;
  mpq_class valuation;
};

/// A hull edge. `length` roots have absolute value p^slope.
struct PolygonSegment {
  mpq_class slope;
  long length;
  bool operator==(const PolygonSegment&) const = default;
};

/// Lower convex hull of {(i, v(b_i)) : b_i != 0}.
class NewtonPolygon {
 public:
  NewtonPolygon(std::vector<PolygonVertex> vertices, long zero_root_count, long degree);

  const std::vector<PolygonVertex>& vertices() const { return vertices_; }
  const std::vector<PolygonSegment>& segments() const { return segments_; }
  /// Index of the lowest nonzero coefficient (roots at z = 0).
  long zero_root_count() const { return zero_roots_; }
  long degree() const { return degree_; }

  /// {"vertices": [[i, v], ...], "segments": [[slope, length], ...], "zero_roots": n}
  std::string to_json() const;

 private:
  std::vector<PolygonVertex> vertices_;
  std::vector<PolygonSegment> segments_;
  long zero_roots_;
  long degree_;
};

/// Throws AmbiguousValuation for zero-to-precision coefficients and
/// InvalidArgument when the leading coefficient is an exact zero.
NewtonPolygon build_polygon(std::span<const PadicScalar> coeffs);

/// Root valuation; nullopt stands for +infinity (a root at 0).
using RootValuation = std::optional<mpq_class>;

/// Multiset of root valuations, sorted ascending with +infinity last.
std::vector<RootValuation> root_valuations(std::span<const PadicScalar> coeffs);

/// Roots (with multiplicity) in D(0, p^s).
long count_roots_in_disk(std::span<const PadicScalar> coeffs, const mpq_class& s);

struct ShiftReport {
  NewtonPolygon derivative_polygon;
  NewtonPolygon polygon;
  bool translated_equal;
};

/// Compares the polygons of f and f' for f in normal form.
ShiftReport shift_compare(const MonicPolynomial& f);

}  // namespace padicdyn
