#pragma once

#include <gmpxx.h>

#include <optional>
#include <vector>

#include "padicdyn/padic.hpp"
#include "padicdyn/polynomial.hpp"

namespace padicdyn {

/// f_t(z) = sum_i a_i(t) z^i with exact polynomial coefficients in t.
struct ParametricPolynomial {
  Prime prime = 2;
  std::vector<RationalPolynomial> coeffs;  // a_0(t) .. a_d(t)
};

/// A polydisk: parameters in `param`, orbit points in `z`.
struct Cell {
  PadicBall param;
  PadicBall z;
};

struct UnionOptions {
  long max_cells = 512;
  long max_depth = 14;
  long max_images = 8000;
  /// How many member radii p^rho to try, starting at rho_max.
  long radius_steps = 10;
  /// New members are at least p^(rho - gap) wide.
  long radius_floor_gap = 4;
};

/// A finite union of cells U with F(U) inside U for F(t, z) = (t, f_t(z)),
/// containing (t, c(t)) for every t in the starting disk. Only Q_p points
/// are covered: members are refined by splitting disks into residue classes.
struct InvariantUnion {
  long rho = 0;
  std::vector<Cell> cells;
};

/// Image of the cell under (t, z) -> f_t(z): the disk of the Gauss norm of
/// the bivariate Taylor expansion at the cell centre.
PadicBall cell_image(const ParametricPolynomial& f, const Cell& cell);

/// Searches for an invariant union containing the graph of `start` over
/// `param` (a point disk for a single parameter). escape_radius bounds R over
/// the parameter disk; member radii are capped at p^rho for
/// rho = floor(R), floor(R) - 1, ...
std::optional<InvariantUnion> find_invariant_union(const ParametricPolynomial& f,
                                                   const PadicBall& param,
                                                   const RationalPolynomial& start,
                                                   const mpq_class& escape_radius,
                                                   const UnionOptions& opts = {});

}  // namespace padicdyn
