#include "padicdyn/invariant_union.hpp"

#include <deque>
#include <set>
#include <string>

namespace padicdyn {

namespace {

mpq_class power_of(Prime p, long e) {
  if (e >= 0) return mpq_class(prime_power(p, static_cast<unsigned long>(e)));
  return mpq_class(mpz_class(1), prime_power(p, static_cast<unsigned long>(-e)));
}

// Q_p disks only have integer radius exponents; the centre is replaced by a
// short representative of the same disk.
PadicBall canonical(const PadicBall& b) {
  if (b.is_point()) return b;
  const long s = floor_to_long(b.radius_exp().value());
  const mpq_class c = b.center().representative();
  const mpq_class rep = PadicScalar::from_absolute(b.prime(), c, -s).representative();
  return PadicBall(PadicScalar::exact(b.prime(), rep), RadiusExp(s));
}

std::vector<PadicBall> children(const PadicBall& b) {
  const Prime p = b.prime();
  const long s = floor_to_long(b.radius_exp().value());
  const mpq_class step = power_of(p, -s);
  const mpq_class c = b.center().representative();
  std::vector<PadicBall> out;
  for (Prime j = 0; j < p; ++j)
    out.emplace_back(PadicScalar::exact(p, mpq_class(c + step * j)), RadiusExp(s - 1));
  return out;
}

struct Expansion {
  PadicBall image;
  RadiusExp param_part;  // largest term involving the parameter offset
  RadiusExp z_part;      // largest term in the orbit offset alone
};

Expansion expand(const ParametricPolynomial& f, const Cell& cell) {
  const Prime p = f.prime;
  const mpq_class t0 = cell.param.center().representative();
  const mpq_class z0 = cell.z.center().representative();
  const std::size_t d = f.coeffs.size();

  // c[j][k] multiplies dt^j dz^k.
  std::vector<std::vector<mpq_class>> c;
  std::vector<mpq_class> zpow{1};  // coefficients of (z0 + w)^i
  for (std::size_t i = 0; i < d; ++i) {
    if (i > 0) {
      std::vector<mpq_class> next(zpow.size() + 1);
      for (std::size_t k = 0; k < zpow.size(); ++k) {
        next[k] += zpow[k] * z0;
        next[k + 1] += zpow[k];
      }
      zpow = std::move(next);
    }
    const auto a = f.coeffs[i].shifted(t0).coefficients();
    if (c.size() < a.size()) c.resize(a.size());
    for (std::size_t j = 0; j < a.size(); ++j) {
      if (sgn(a[j]) == 0) continue;
      if (c[j].size() < zpow.size()) c[j].resize(zpow.size());
      for (std::size_t k = 0; k < zpow.size(); ++k) c[j][k] += a[j] * zpow[k];
    }
  }

  Expansion out{PadicBall(), RadiusExp::point(), RadiusExp::point()};
  mpq_class center = 0;
  if (!c.empty() && !c[0].empty()) center = c[0][0];
  for (std::size_t j = 0; j < c.size(); ++j) {
    if (j > 0 && cell.param.is_point()) break;
    for (std::size_t k = 0; k < c[j].size(); ++k) {
      if ((j == 0 && k == 0) || sgn(c[j][k]) == 0) continue;
      if (k > 0 && cell.z.is_point()) break;
      mpq_class e = -valuation_of(c[j][k], p);
      if (j > 0) e += cell.param.radius_exp().value() * static_cast<long>(j);
      if (k > 0) e += cell.z.radius_exp().value() * static_cast<long>(k);
      const RadiusExp term(e);
      if (j > 0)
        out.param_part = max(out.param_part, term);
      else
        out.z_part = max(out.z_part, term);
    }
  }
  out.image = canonical(PadicBall(PadicScalar::exact(p, center), max(out.param_part, out.z_part)));
  return out;
}

std::string disk_key(const PadicBall& b) {
  if (b.is_point()) return b.center().representative().get_str() + "@pt";
  return b.center().representative().get_str() + "@" + b.radius_exp().value().get_str();
}

// Members keyed by their canonical disks, so containment is a lookup per
// pair of radius levels instead of a scan.
class MemberIndex {
 public:
  bool covers(const Cell& c) const {
    for (const auto& [pr, zr] : levels_) {
      const auto pk = enlarge(c.param, pr);
      const auto zk = enlarge(c.z, zr);
      if (!pk || !zk) continue;
      if (keys_.count(*pk + "|" + *zk)) return true;
    }
    return false;
  }
  void add(const Cell& c) {
    levels_.insert({radius_key(c.param), radius_key(c.z)});
    keys_.insert(disk_key(c.param) + "|" + disk_key(c.z));
    cells_.push_back(c);
  }
  std::size_t size() const { return cells_.size(); }
  std::vector<Cell> take() { return std::move(cells_); }

 private:
  using Level = std::optional<long>;  // nullopt: a point
  static Level radius_key(const PadicBall& b) {
    if (b.is_point()) return std::nullopt;
    return floor_to_long(b.radius_exp().value());
  }
  // Key of the level-r disk containing b, if b fits in one.
  static std::optional<std::string> enlarge(const PadicBall& b, const Level& r) {
    if (!r) {
      if (!b.is_point()) return std::nullopt;
      return disk_key(b);
    }
    if (!b.is_point() && b.radius_exp() > RadiusExp(*r)) return std::nullopt;
    return disk_key(canonical(PadicBall(b.center(), RadiusExp(*r))));
  }

  std::set<std::pair<Level, Level>> levels_;
  std::set<std::string> keys_;
  std::vector<Cell> cells_;
};

struct Piece {
  Cell cell;
  long depth;
  bool is_start;
};

// The image lies entirely outside D(0, p^R).
bool escapes(const PadicBall& image, const mpq_class& escape_radius) {
  const RadiusExp c = abs_exponent_bound(image.center());
  return c > image.radius_exp() && c > RadiusExp(escape_radius);
}

std::optional<InvariantUnion> search(const ParametricPolynomial& f, const ParametricPolynomial& g,
                                     const PadicBall& param, const mpq_class& escape_radius,
                                     long rho, const UnionOptions& opts) {
  const Prime p = f.prime;
  MemberIndex members;
  std::deque<Piece> work;
  work.push_back({{canonical(param), PadicBall::point(PadicScalar::zero(p))}, 0, true});
  long images = 0;
  const RadiusExp cap(rho);
  while (!work.empty()) {
    Piece piece = std::move(work.front());
    work.pop_front();
    if (++images > opts.max_images) return std::nullopt;
    const Expansion ex = expand(piece.is_start ? g : f, piece.cell);
    const Cell target{piece.cell.param, ex.image};
    if (members.covers(target)) continue;
    if (escapes(ex.image, escape_radius)) return std::nullopt;
    const bool param_dominated = !piece.cell.param.is_point() &&
                                 ex.param_part > max(ex.z_part, RadiusExp(rho - opts.radius_floor_gap));
    if (ex.image.radius_exp() <= cap && !param_dominated) {
      // New members are widened to the cap so exact orbits cannot grow forever.
      if (static_cast<long>(members.size()) >= opts.max_cells) return std::nullopt;
      const RadiusExp floor(rho - opts.radius_floor_gap);
      const Cell member{piece.cell.param,
                        canonical(PadicBall(ex.image.center(), max(ex.image.radius_exp(), floor)))};
      members.add(member);
      work.push_back({member, 0, false});
      continue;
    }
    if (piece.depth >= opts.max_depth) return std::nullopt;
    const bool split_param =
        !piece.cell.param.is_point() && (piece.cell.z.is_point() || ex.param_part >= ex.z_part);
    if (split_param) {
      for (auto& t : children(piece.cell.param))
        work.push_back({{std::move(t), piece.cell.z}, piece.depth + 1, piece.is_start});
    } else if (!piece.cell.z.is_point()) {
      for (auto& z : children(piece.cell.z))
        work.push_back({{piece.cell.param, std::move(z)}, piece.depth + 1, piece.is_start});
    } else {
      return std::nullopt;
    }
  }
  return InvariantUnion{rho, members.take()};
}

}  // namespace

PadicBall cell_image(const ParametricPolynomial& f, const Cell& cell) {
  return expand(f, cell).image;
}

std::optional<InvariantUnion> find_invariant_union(const ParametricPolynomial& f,
                                                   const PadicBall& param,
                                                   const RationalPolynomial& start,
                                                   const mpq_class& escape_radius,
                                                   const UnionOptions& opts) {
  if (f.coeffs.size() < 3) throw Error(ErrorCode::InvalidArgument, "degree must be at least 2");
  const ParametricPolynomial g{f.prime, {start}};
  const long rho_max = floor_to_long(escape_radius);
  for (long k = 0; k < opts.radius_steps; ++k)
    if (auto u = search(f, g, param, escape_radius, rho_max - k, opts)) return u;
  return std::nullopt;
}

}  // namespace padicdyn
