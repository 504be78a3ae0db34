#pragma once

#include <gmpxx.h>

#include <optional>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "padicdyn/padic.hpp"
#include "padicdyn/taylor_model.hpp"

namespace padicdyn {

/// z^d + a_{d-1} z^{d-1} + ... + a_1 z. Monic with f(0) = 0 by construction.
class MonicPolynomial {
 public:
  /// middle = (a_1, ..., a_{d-1}); the degree is middle.size() + 1.
  MonicPolynomial(Prime p, std::vector<PadicScalar> middle);
  /// Full low-to-high list; must be monic with zero constant term.
  static MonicPolynomial from_coefficients(std::vector<PadicScalar> all);

  Prime prime() const { return p_; }
  int degree() const { return static_cast<int>(coeffs_.size()) - 1; }
  /// a_0 .. a_d with a_0 = 0 and a_d = 1.
  const std::vector<PadicScalar>& coefficients() const { return coeffs_; }
  const PadicScalar& coefficient(int i) const { return coeffs_.at(static_cast<std::size_t>(i)); }

  PadicScalar operator()(const PadicScalar& z) const;
  std::string to_string() const;

 private:
  Prime p_;
  std::vector<PadicScalar> coeffs_;
};

/// max(0, max_i -v(a_i)/(d-i)). Outside D(0, p^R), |f(z)| = |z|^d.
mpq_class escape_radius(const MonicPolynomial& f);
/// Same quantity from coefficient valuations alone: pairs (i, v(a_i)) for the
/// nonzero a_i with 1 <= i < degree.
mpq_class escape_radius(int degree, std::span<const std::pair<int, mpq_class>> valuations);

std::vector<PadicScalar> taylor_shift(const MonicPolynomial& f, const PadicScalar& a);

/// Exact image D(f(a), p^r), r = max_{i>=1} (s*i - v(b_i)).
PadicBall disk_image(const MonicPolynomial& f, const PadicBall& disk);
/// Largest index attaining the maximum in the disk image formula.
int disk_degree(const MonicPolynomial& f, const PadicBall& disk);
/// Critical points of f (with multiplicity) inside the disk.
long critical_count_in_disk(const MonicPolynomial& f, const PadicBall& disk);

/// The f with f' = d * prod (z - c_i), monic, f(0) = 0; d = count + 1.
MonicPolynomial from_critical_points(Prime p, std::span<const PadicScalar> critical_points);

/// Largest sigma <= 0 of the form min(0, v(a_i)/(i-1)) with f(D(0,p^sigma))
/// inside D(0,p^sigma); nullopt when a_1 is not integral.
std::optional<mpq_class> invariant_zero_disk(const MonicPolynomial& f);

struct OrbitOptions {
  long max_iter = 200;
  long precision = 128;
  /// Retry once with twice the precision before giving up.
  bool retry_with_double_precision = true;
  /// Longest cycle checked for a disk certificate.
  long max_period = 8;
  /// For exact inputs left Unknown, search for an invariant union of Q_p disks.
  bool union_search = true;
};

struct Escaped {
  long iterate;
  long valuation;  // v(z_n), with -v(z_n) > R
};

struct InvariantDiskCertificate {
  mpq_class sigma;
  long iterate;
};

struct CycleCertificate {
  long period;
  PadicBall anchor;
  long iterate;  // first index of the cycle
};

/// A finite union of Q_p disks mapped into itself (see invariant_union.hpp).
struct InvariantUnionCertificate {
  long cells;
  long rho;  // member radii are at most p^rho
  long iterate;
};

enum class UnknownReason { IterBudget, PrecisionExhausted, Undecidable };
const char* to_string(UnknownReason r);

struct Unknown {
  UnknownReason reason;
  std::string detail;
};

using Verdict = std::variant<Escaped, InvariantDiskCertificate, CycleCertificate,
                             InvariantUnionCertificate, Unknown>;

struct TraceEntry {
  long iterate;
  Valuation valuation;
  std::string value;
};

struct OrbitClassification {
  Verdict verdict;
  std::vector<TraceEntry> trace;
  mpq_class escape_radius;
  std::optional<mpq_class> invariant_sigma;
  long max_iter = 0;
  long precision_used = 0;

  bool escaped() const { return std::holds_alternative<Escaped>(verdict); }
  bool bounded() const {
    return std::holds_alternative<InvariantDiskCertificate>(verdict) ||
           std::holds_alternative<CycleCertificate>(verdict) ||
           std::holds_alternative<InvariantUnionCertificate>(verdict);
  }
  bool unknown() const { return std::holds_alternative<Unknown>(verdict); }

  /// "Escaped(4)", "Bounded(Cycle period 1)", "Bounded(InvariantDisk sigma=-1)", ...
  std::string summary() const;
  /// {verdict, certificate, trace, budgets} with a fixed field order.
  std::string to_json() const;
};

OrbitClassification classify_orbit(const MonicPolynomial& f, const PadicScalar& z0,
                                   const OrbitOptions& opts = {});

/// A polynomial whose coefficients range over correlated parameter models.
struct BallPolynomial {
  Prime prime;
  std::vector<TaylorModel> coeffs;  // a_0 .. a_d, a_d = 1

  int degree() const { return static_cast<int>(coeffs.size()) - 1; }
  TaylorModel operator()(const TaylorModel& z) const;
};

/// Certifies a verdict for every parameter and starting point covered by the
/// models at once.
OrbitClassification classify_orbit_ball(const BallPolynomial& f, const TaylorModel& z0,
                                        const OrbitOptions& opts = {});
/// Plain ball form: coefficient and start balls vary independently.
OrbitClassification classify_orbit_ball(Prime p, std::span<const PadicBall> coeffs,
                                        const PadicBall& z0, const OrbitOptions& opts = {});

enum class PcbVerdict { PCB, NotPCB, Unknown };
const char* to_string(PcbVerdict v);

struct PcbResult {
  PcbVerdict verdict;
  std::vector<OrbitClassification> orbits;
};

/// critical_points must be the full critical multiset of f (checked for exact
/// inputs; truncated ones must satisfy f'(c) = 0 to their precision).
PcbResult is_pcb(const MonicPolynomial& f, std::span<const PadicScalar> critical_points,
                 const OrbitOptions& opts = {});

}  // namespace padicdyn
