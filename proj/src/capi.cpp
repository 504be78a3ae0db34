#include "padicdyn/padicdyn.h"

#include <cstdlib>
#include <cstring>
#include <functional>
#include <memory>
#include <sstream>
#include <string>

#include "json.hpp"
#include "padicdyn/family.hpp"
#include "padicdyn/newton.hpp"
#include "padicdyn/polynomial.hpp"
#include "padicdyn/radius.hpp"
#include "padicdyn/tree.hpp"
#include "padicdyn/verify.hpp"

struct padicdyn_family {
  padicdyn::PolynomialFamily family;
};

struct padicdyn_tree {
  padicdyn::TreeNode root;
  padicdyn::ExploreStats stats;
  bool has_stats;
};

namespace {

using namespace padicdyn;

thread_local std::string last_error;

padicdyn_status status_of(ErrorCode code) {
  switch (code) {
    case ErrorCode::PrecisionExhausted: return PADICDYN_ERR_PRECISION_EXHAUSTED;
    case ErrorCode::DivisionByZero: return PADICDYN_ERR_DIVISION_BY_ZERO;
    case ErrorCode::Undecidable: return PADICDYN_ERR_UNDECIDABLE;
    case ErrorCode::AmbiguousValuation: return PADICDYN_ERR_AMBIGUOUS_VALUATION;
    case ErrorCode::NotACriticalPoint: return PADICDYN_ERR_NOT_A_CRITICAL_POINT;
    case ErrorCode::DomainError: return PADICDYN_ERR_DOMAIN;
    case ErrorCode::ParseError: return PADICDYN_ERR_PARSE;
    case ErrorCode::InvalidArgument: return PADICDYN_ERR_INVALID_ARGUMENT;
  }
  return PADICDYN_ERR_INTERNAL;
}

padicdyn_status guard(const std::function<void()>& body) {
  try {
    body();
    last_error.clear();
    return PADICDYN_OK;
  } catch (const Error& e) {
    last_error = e.what();
    return status_of(e.code());
  } catch (const std::bad_alloc&) {
    last_error = "out of memory";
  } catch (const std::exception& e) {
    last_error = e.what();
  } catch (...) {
    last_error = "unknown failure";
  }
  return PADICDYN_ERR_INTERNAL;
}

void require(const void* ptr, const char* what) {
  if (!ptr) throw Error(ErrorCode::InvalidArgument, std::string(what) + " must not be null");
}

char* dup(const std::string& s) {
  char* out = static_cast<char*>(std::malloc(s.size() + 1));
  if (!out) throw std::bad_alloc();
  std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

OrbitOptions orbit_options(const padicdyn_orbit_options* o) {
  OrbitOptions out;
  if (!o) return out;
  if (o->precision <= 0) throw Error(ErrorCode::InvalidArgument, "precision must be positive");
  if (o->max_iter <= 0) throw Error(ErrorCode::InvalidArgument, "max_iter must be positive");
  out.precision = o->precision;
  out.max_iter = o->max_iter;
  out.union_search = o->union_search != 0;
  return out;
}

PadicBall parse_disk(Prime p, const char* center, long radius_exp) {
  require(center, "center");
  return PadicBall(PadicScalar::parse(p, center), RadiusExp(radius_exp));
}

padicdyn_color color_of(Color c) {
  switch (c) {
    case Color::Black: return PADICDYN_BLACK;
    case Color::White: return PADICDYN_WHITE;
    case Color::Gray: return PADICDYN_GRAY;
    case Color::Unknown: return PADICDYN_UNKNOWN;
  }
  return PADICDYN_UNKNOWN;
}

padicdyn_pcb pcb_of(PcbVerdict v) {
  switch (v) {
    case PcbVerdict::PCB: return PADICDYN_PCB;
    case PcbVerdict::NotPCB: return PADICDYN_NOT_PCB;
    case PcbVerdict::Unknown: return PADICDYN_PCB_UNKNOWN;
  }
  return PADICDYN_PCB_UNKNOWN;
}

std::string classification_text(const PolynomialFamily& fam, const PadicScalar& t, const PcbResult& r) {
  std::ostringstream os;
  os << "family " << fam.to_string() << "\n";
  os << "t = " << t.to_string() << "\n";
  os << "verdict: " << to_string(r.verdict) << "\n";
  const auto& crit = fam.critical_points();
  for (std::size_t j = 0; j < r.orbits.size(); ++j) {
    const auto& o = r.orbits[j];
    os << "critical point " << crit[j].to_string() << ": " << o.summary() << "\n";
    os << "  escape radius p^" << o.escape_radius.get_str() << ", max_iter " << o.max_iter << ", precision "
       << o.precision_used << "\n";
    for (const auto& e : o.trace)
      os << "  " << e.iterate << "  v=" << e.valuation.to_string() << "  " << e.value << "\n";
  }
  return os.str();
}

std::string classification_json(const PolynomialFamily& fam, const PadicScalar& t, const PcbResult& r) {
  nlohmann::ordered_json j;
  j["family"] = fam.name();
  j["t"] = t.to_string();
  j["verdict"] = to_string(r.verdict);
  j["orbits"] = nlohmann::ordered_json::array();
  const auto& crit = fam.critical_points();
  for (std::size_t i = 0; i < r.orbits.size(); ++i) {
    nlohmann::ordered_json o;
    o["critical_point"] = crit[i].to_string();
    o["orbit"] = nlohmann::ordered_json::parse(r.orbits[i].to_json());
    j["orbits"].push_back(std::move(o));
  }
  return j.dump(2) + "\n";
}

const TreeNode* find_node(const TreeNode& node, const std::string& label, long depth) {
  if (node.depth == depth && node.label == label) return &node;
  if (node.depth >= depth) return nullptr;
  for (const auto& c : node.children)
    if (const TreeNode* hit = find_node(c, label, depth)) return hit;
  return nullptr;
}

std::string valuation_text(const RootValuation& v) { return v ? v->get_str() : "inf"; }

std::string newton_text(const NewtonPolygon& poly, const std::vector<RootValuation>& roots) {
  std::ostringstream os;
  os << "vertices:";
  for (const auto& v : poly.vertices()) os << " (" << v.index << ", " << v.valuation.get_str() << ")";
  os << "\nsegments:";
  if (poly.segments().empty()) os << " none";
  for (const auto& s : poly.segments()) os << " [slope " << s.slope.get_str() << ", length " << s.length << "]";
  os << "\nzero roots: " << poly.zero_root_count() << "\nroot valuations: {";
  for (std::size_t i = 0; i < roots.size(); ++i) os << (i ? ", " : "") << valuation_text(roots[i]);
  os << "}\n";
  return os.str();
}

std::string witness_text(const PcfWitness& w, const WitnessCheck& check) {
  const auto ok = [](bool b) { return b ? "ok" : "FAILED"; };
  std::ostringstream os;
  os << "d = " << w.d << ", p = " << w.p << ": d = " << w.decomposition.a << "*" << w.p << "^"
     << w.decomposition.k << " + " << w.decomposition.b << ", p^" << w.decomposition.l << " || d\n";
  os << "f(z) = " << w.shape << ", alpha^" << (w.d - 1) << " = " << w.c.get_str() << ", v(alpha) = "
     << w.v_alpha.get_str() << "\n";
  os << "f(alpha) = 0: " << ok(check.f_of_alpha_is_zero) << "\n";
  os << "f((" << w.b << "/" << w.d << ") alpha) = alpha: " << ok(check.f_of_inner_critical_is_alpha) << "\n";
  os << "f'(z) = " << w.d << " z^" << (w.b - 1) << " (z - alpha)^" << (w.exponent - 1) << " (z - (" << w.b
     << "/" << w.d << ") alpha): " << ok(check.critical_set_correct) << "\n";
  return os.str();
}

}  // namespace

extern "C" {

const char* padicdyn_version(void) { return "1.0.0"; }

const char* padicdyn_status_name(padicdyn_status status) {
  switch (status) {
    case PADICDYN_OK: return "OK";
    case PADICDYN_ERR_PRECISION_EXHAUSTED: return "PrecisionExhausted";
    case PADICDYN_ERR_DIVISION_BY_ZERO: return "DivisionByZero";
    case PADICDYN_ERR_UNDECIDABLE: return "Undecidable";
    case PADICDYN_ERR_AMBIGUOUS_VALUATION: return "AmbiguousValuation";
    case PADICDYN_ERR_NOT_A_CRITICAL_POINT: return "NotACriticalPoint";
    case PADICDYN_ERR_DOMAIN: return "DomainError";
    case PADICDYN_ERR_PARSE: return "ParseError";
    case PADICDYN_ERR_INVALID_ARGUMENT: return "InvalidArgument";
    case PADICDYN_ERR_INTERNAL: return "Internal";
  }
  return "Unknown";
}

const char* padicdyn_last_error(void) { return last_error.c_str(); }

void padicdyn_string_free(char* s) { std::free(s); }

padicdyn_orbit_options padicdyn_orbit_options_default(void) {
  const OrbitOptions o;
  return {o.precision, o.max_iter, o.union_search ? 1 : 0};
}

padicdyn_explore_options padicdyn_explore_options_default(void) {
  const ExploreOptions e;
  return {padicdyn_orbit_options_default(), e.max_depth, e.node_max_iter, e.threads};
}

padicdyn_status padicdyn_family_builtin(const char* name, padicdyn_family** out) {
  return guard([&] {
    require(name, "name");
    require(out, "out");
    *out = new padicdyn_family{PolynomialFamily::builtin(name)};
  });
}

void padicdyn_family_free(padicdyn_family* family) { delete family; }

unsigned long padicdyn_family_prime(const padicdyn_family* family) {
  return family ? family->family.prime() : 0;
}

padicdyn_status padicdyn_family_describe(const padicdyn_family* family, char** out) {
  return guard([&] {
    require(family, "family");
    require(out, "out");
    *out = dup(family->family.to_string());
  });
}

padicdyn_status padicdyn_classify_parameter(const padicdyn_family* family, const char* t,
                                            const padicdyn_orbit_options* opts, padicdyn_format format,
                                            padicdyn_pcb* verdict, char** report) {
  return guard([&] {
    require(family, "family");
    require(t, "t");
    const PolynomialFamily& fam = family->family;
    const PadicScalar ts = PadicScalar::parse(fam.prime(), t);
    const PcbResult r = classify_parameter(fam, ts, orbit_options(opts));
    if (verdict) *verdict = pcb_of(r.verdict);
    if (report)
      *report = dup(format == PADICDYN_JSON ? classification_json(fam, ts, r) : classification_text(fam, ts, r));
  });
}

padicdyn_status padicdyn_classify_disk(const padicdyn_family* family, const char* center, long radius_exp,
                                       const padicdyn_orbit_options* opts, padicdyn_color* color,
                                       char** detail) {
  return guard([&] {
    require(family, "family");
    const DiskVerdict v =
        classify_disk(family->family, parse_disk(family->family.prime(), center, radius_exp), orbit_options(opts));
    if (color) *color = color_of(v.color);
    if (detail) *detail = dup(v.certificate.source + ": " + v.certificate.detail);
  });
}

padicdyn_status padicdyn_explore(const padicdyn_family* family, const char* center, long radius_exp,
                                 const padicdyn_explore_options* opts, padicdyn_tree** out) {
  return guard([&] {
    require(family, "family");
    require(out, "out");
    ExploreOptions e;
    if (opts) {
      e.orbit = orbit_options(&opts->orbit);
      e.max_depth = opts->depth;
      e.node_max_iter = opts->node_max_iter;
      e.threads = opts->threads;
    }
    auto tree = std::make_unique<padicdyn_tree>();
    tree->root = explore(family->family, parse_disk(family->family.prime(), center, radius_exp), e, &tree->stats);
    tree->has_stats = true;
    *out = tree.release();
  });
}

void padicdyn_tree_free(padicdyn_tree* tree) { delete tree; }

padicdyn_status padicdyn_tree_emit(const padicdyn_tree* tree, const char* format, char** out) {
  return guard([&] {
    require(tree, "tree");
    require(format, "format");
    require(out, "out");
    *out = dup(emit(tree->root, tree_format_from_string(format)));
  });
}

padicdyn_status padicdyn_tree_stats(const padicdyn_tree* tree, char** out) {
  return guard([&] {
    require(tree, "tree");
    require(out, "out");
    if (!tree->has_stats) throw Error(ErrorCode::InvalidArgument, "tree was parsed, not explored");
    *out = dup(tree->stats.to_string() + "\n");
  });
}

padicdyn_status padicdyn_tree_parse_json(const char* text, unsigned long p, padicdyn_tree** out) {
  return guard([&] {
    require(text, "text");
    require(out, "out");
    if (!is_prime(p)) throw Error(ErrorCode::InvalidArgument, std::to_string(p) + " is not prime");
    *out = new padicdyn_tree{parse_tree_json(text, p), {}, false};
  });
}

padicdyn_status padicdyn_tree_color_at(const padicdyn_tree* tree, const char* label, long depth,
                                       padicdyn_color* color) {
  return guard([&] {
    require(tree, "tree");
    require(label, "label");
    require(color, "color");
    const TreeNode* node = find_node(tree->root, label, depth);
    if (!node) throw Error(ErrorCode::InvalidArgument, std::string("no node ") + label + " at depth " + std::to_string(depth));
    *color = color_of(node->color);
  });
}

padicdyn_status padicdyn_radius(long d, unsigned long p, char** out) {
  return guard([&] {
    require(out, "out");
    *out = dup(known_radius(d, p).describe());
  });
}

padicdyn_status padicdyn_radius_table(long dmax, unsigned long pmax, padicdyn_format format, char** out) {
  return guard([&] {
    require(out, "out");
    const auto rows = radius_table(dmax, pmax);
    *out = dup(format == PADICDYN_JSON ? radius_table_json(rows) + "\n" : format_radius_table(rows));
  });
}

padicdyn_status padicdyn_witness(long d, unsigned long p, int* verified, char** report) {
  return guard([&] {
    const PcfWitness w = pcf_witness(d, p);
    const WitnessCheck check = verify_pcf_witness(d, p);
    if (verified) *verified = check.all() ? 1 : 0;
    if (report) *report = dup(witness_text(w, check));
  });
}

padicdyn_status padicdyn_newton(unsigned long p, const char* coefficients, padicdyn_format format, char** out) {
  return guard([&] {
    require(coefficients, "coefficients");
    require(out, "out");
    if (!is_prime(p)) throw Error(ErrorCode::InvalidArgument, std::to_string(p) + " is not prime");
    const auto coeffs = parse_coefficients(p, coefficients);
    const NewtonPolygon poly = build_polygon(coeffs);
    if (format == PADICDYN_JSON) {
      *out = dup(poly.to_json() + "\n");
    } else {
      *out = dup(newton_text(poly, root_valuations(coeffs)));
    }
  });
}

unsigned long long padicdyn_default_seed(void) { return kDefaultSeed; }

padicdyn_status padicdyn_verify(const char* suite, unsigned long long seed, int* passed, char** report) {
  return guard([&] {
    require(suite, "suite");
    const SuiteReport r = run_suite(suite, seed);
    if (passed) *passed = r.passed() ? 1 : 0;
    if (report) *report = dup(r.to_string());
  });
}

}  // extern "C"
