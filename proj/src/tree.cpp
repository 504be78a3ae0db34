#include "padicdyn/tree.hpp"

#include <atomic>
#include <exception>
#include <functional>
#include <map>
#include <mutex>
#include <sstream>
#include <thread>

#include "json.hpp"

namespace padicdyn {

const char* to_string(Color c) {
  switch (c) {
    case Color::Black: return "black";
    case Color::White: return "white";
    case Color::Gray: return "gray";
    case Color::Unknown: return "unknown";
  }
  return "?";
}

Color color_from_string(const std::string& s) {
  if (s == "black") return Color::Black;
  if (s == "white") return Color::White;
  if (s == "gray") return Color::Gray;
  if (s == "unknown") return Color::Unknown;
  throw Error(ErrorCode::ParseError, "unknown color '" + s + "'");
}

PcbResult classify_parameter(const PolynomialFamily& family, const PadicScalar& t,
                             const OrbitOptions& opts) {
  return is_pcb(family.instantiate(t), family.critical_points_at(t), opts);
}

namespace {

const char* certificate_kind(const Verdict& v) {
  if (std::holds_alternative<InvariantDiskCertificate>(v)) return "invariant_disk";
  if (std::holds_alternative<CycleCertificate>(v)) return "cycle";
  if (std::holds_alternative<InvariantUnionCertificate>(v)) return "invariant_union";
  if (std::holds_alternative<Escaped>(v)) return "escape";
  return "none";
}

void require_qp_disk(const PadicBall& disk) {
  if (disk.is_point() || !disk.radius_exp().is_integer())
    throw Error(ErrorCode::InvalidArgument, "parameter disks need an integer radius exponent");
}

}  // namespace

DiskVerdict classify_disk(const PolynomialFamily& family, const PadicBall& disk,
                          const OrbitOptions& opts) {
  require_qp_disk(disk);
  if (disk.prime() != family.prime())
    throw Error(ErrorCode::InvalidArgument, "disk over a different prime");
  const BallPolynomial f = family.over_disk(disk, opts.precision);
  const auto& crit = family.critical_points();

  std::vector<OrbitClassification> orbits;
  for (std::size_t j = 0; j < crit.size(); ++j) {
    orbits.push_back(classify_orbit_ball(f, family.critical_point_over_disk(j, disk, opts.precision), opts));
    if (const auto* e = std::get_if<Escaped>(&orbits.back().verdict)) {
      return {Color::White,
              {"escape",
               "critical point " + crit[j].to_string() + " escapes at iterate " +
                   std::to_string(e->iterate) + " for every t in " + disk.to_string(),
               {}}};
    }
  }

  std::vector<std::string> parts;
  std::vector<std::string> kinds;
  for (std::size_t j = 0; j < crit.size(); ++j) {
    std::string kind;
    std::string what;
    if (orbits[j].bounded()) {
      kind = certificate_kind(orbits[j].verdict);
      what = orbits[j].summary();
    } else if (opts.union_search) {
      const auto u = find_invariant_union(family.parametric(), disk, crit[j], orbits[j].escape_radius);
      if (!u)
        return {Color::Unknown, {"none", "critical point " + crit[j].to_string() + ": " + orbits[j].summary(), {}}};
      kind = "invariant_union";
      what = "Bounded(InvariantUnion of " + std::to_string(u->cells.size()) + " cells, radius <= p^" +
             std::to_string(u->rho) + ")";
    } else {
      return {Color::Unknown, {"none", "critical point " + crit[j].to_string() + ": " + orbits[j].summary(), {}}};
    }
    if (std::find(kinds.begin(), kinds.end(), kind) == kinds.end()) kinds.push_back(kind);
    parts.push_back(crit[j].to_string() + ": " + what);
  }
  std::string source;
  for (const auto& k : kinds) source += (source.empty() ? "" : "+") + k;
  std::string detail;
  for (const auto& p : parts) detail += (detail.empty() ? "" : "; ") + p;
  return {Color::Black, {source, detail, {}}};
}

// ---------------------------------------------------------------------------
// Labels

namespace {

mpq_class power_of(Prime p, long e) {
  if (e >= 0) return mpq_class(prime_power(p, static_cast<unsigned long>(e)));
  return mpq_class(mpz_class(1), prime_power(p, static_cast<unsigned long>(-e)));
}

long disk_depth(const PadicBall& disk) { return -disk.radius_exp().value().get_num().get_si(); }

}  // namespace

std::string node_label(const PadicBall& disk) {
  require_qp_disk(disk);
  const Prime p = disk.prime();
  const long n = disk_depth(disk);
  const mpq_class c = disk.center().representative();
  if (sgn(c) == 0) return "0";
  const long k = std::max(0L, -valuation_of(c, p));
  const long m = n + k;
  if (m <= 0) return "0";
  const mpz_class mod = prime_power(p, static_cast<unsigned long>(m));
  const mpq_class scaled = c * power_of(p, k);
  mpz_class inv;
  mpz_invert(inv.get_mpz_t(), scaled.get_den().get_mpz_t(), mod.get_mpz_t());
  mpz_class r = (scaled.get_num() * inv) % mod;
  if (r < 0) r += mod;
  if (k == 0) return r.get_str();
  mpq_class q(r, prime_power(p, static_cast<unsigned long>(k)));
  q.canonicalize();
  return q.get_str();
}

PadicBall disk_from_label(Prime p, const std::string& label, long depth) {
  mpq_class q;
  if (q.set_str(label, 10) != 0) throw Error(ErrorCode::ParseError, "bad node label '" + label + "'");
  q.canonicalize();
  return PadicBall(PadicScalar::exact(p, q), RadiusExp(-depth));
}

// ---------------------------------------------------------------------------
// Exploration

namespace {

void parallel_for(std::size_t n, unsigned threads, const std::function<void(std::size_t)>& body) {
  if (threads <= 1 || n <= 1) {
    for (std::size_t i = 0; i < n; ++i) body(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  auto worker = [&] {
    for (std::size_t i = next++; i < n; i = next++) {
      try {
        body(i);
      } catch (...) {
        std::lock_guard<std::mutex> lock(failure_mutex);
        if (!failure) failure = std::current_exception();
      }
    }
  };
  std::vector<std::thread> pool;
  const unsigned count = static_cast<unsigned>(std::min<std::size_t>(threads, n));
  for (unsigned i = 0; i < count; ++i) pool.emplace_back(worker);
  for (auto& t : pool) t.join();
  if (failure) std::rethrow_exception(failure);
}

std::string disk_name(const TreeNode& node) {
  return node.label + " mod " + std::to_string(node.disk.prime()) + "^" + std::to_string(node.depth);
}

struct Evidence {
  std::optional<std::string> black;
  std::optional<std::string> white;
};

// Frontier witnesses: the centre and c + p^(n+i) for i = 0..3.
std::vector<PadicScalar> witness_points(const TreeNode& node) {
  const Prime p = node.disk.prime();
  const mpq_class c = node.disk.center().representative();
  std::vector<PadicScalar> pts{PadicScalar::exact(p, c)};
  for (long i = 0; i < 4; ++i)
    pts.push_back(PadicScalar::exact(p, mpq_class(c + power_of(p, node.depth + i))));
  return pts;
}

void sample_frontier(const PolynomialFamily& family, TreeNode& node, const OrbitOptions& opts) {
  bool pcb = false;
  bool escaping = false;
  for (const auto& t : witness_points(node)) {
    const PcbResult r = classify_parameter(family, t, opts);
    node.certificate.witnesses.push_back("t=" + t.to_string() + ": " + to_string(r.verdict));
    pcb = pcb || r.verdict == PcbVerdict::PCB;
    escaping = escaping || r.verdict == PcbVerdict::NotPCB;
  }
  if (pcb && escaping) {
    node.color = Color::Gray;
    node.certificate.source = "witnesses";
    node.certificate.detail = "sampled parameters include PCB and non-PCB maps";
  }
}

Evidence settle(TreeNode& node) {
  Evidence ev;
  if (node.color == Color::Black) ev.black = disk_name(node) + " black";
  if (node.color == Color::White) ev.white = disk_name(node) + " white";
  if (node.children.empty()) {
    for (const auto& w : node.certificate.witnesses) {
      if (!ev.black && w.ends_with(": PCB")) ev.black = w;
      if (!ev.white && w.ends_with(": NotPCB")) ev.white = w;
    }
    return ev;
  }
  bool all_black = true;
  bool all_white = true;
  for (auto& child : node.children) {
    const Evidence ce = settle(child);
    if (!ev.black && ce.black) ev.black = ce.black;
    if (!ev.white && ce.white) ev.white = ce.white;
    all_black = all_black && child.color == Color::Black;
    all_white = all_white && child.color == Color::White;
  }
  if (all_black) {
    node.color = Color::Black;
    node.certificate = {"children", "every child disk is black", {}};
  } else if (all_white) {
    node.color = Color::White;
    node.certificate = {"children", "every child disk is white", {}};
  } else if (ev.black && ev.white) {
    node.color = Color::Gray;
    node.certificate = {"children", "descendants include PCB and non-PCB parameters", {*ev.black, *ev.white}};
  }
  return ev;
}

void collect_stats(const TreeNode& node, long root_depth, ExploreStats& s) {
  ++s.nodes;
  const long rel = node.depth - root_depth;
  s.levels = std::max(s.levels, rel + 1);
  switch (node.color) {
    case Color::Black: ++s.black; break;
    case Color::White: ++s.white; break;
    case Color::Gray: ++s.gray; break;
    case Color::Unknown: ++s.unknown; break;
  }
  if (node.children.empty() && node.color == Color::Unknown) ++s.unknown_frontier;
  for (const auto& c : node.children) collect_stats(c, root_depth, s);
}

}  // namespace

std::string ExploreStats::to_string() const {
  std::ostringstream os;
  os << "nodes " << nodes << " (black " << black << ", white " << white << ", gray " << gray
     << ", unknown " << unknown << "), levels " << levels << ", unknown frontier "
     << unknown_frontier << "\ncertified per level:";
  for (std::size_t i = 0; i < certified_per_level.size(); ++i) os << " " << certified_per_level[i];
  return os.str();
}

TreeNode explore(const PolynomialFamily& family, const PadicBall& root, const ExploreOptions& opts,
                 ExploreStats* stats) {
  require_qp_disk(root);
  if (opts.max_depth < 1) throw Error(ErrorCode::InvalidArgument, "depth must be positive");
  const unsigned threads = opts.threads ? opts.threads : std::max(1u, std::thread::hardware_concurrency());
  const Prime p = family.prime();

  TreeNode tree;
  tree.depth = disk_depth(root);
  tree.label = node_label(root);
  tree.disk = disk_from_label(p, tree.label, tree.depth);

  std::vector<long> certified;
  std::vector<TreeNode*> level{&tree};
  for (long rel = 0; !level.empty(); ++rel) {
    parallel_for(level.size(), threads, [&](std::size_t i) {
      TreeNode& node = *level[i];
      OrbitOptions o = opts.orbit;
      o.max_iter = opts.node_max_iter ? opts.node_max_iter : std::max(50L, 2 * node.depth);
      const DiskVerdict v = classify_disk(family, node.disk, o);
      node.color = v.color;
      node.certificate = v.certificate;
    });
    long count = 0;
    std::vector<TreeNode*> frontier;
    std::vector<TreeNode*> next;
    for (TreeNode* node : level) {
      if (node->color != Color::Unknown) {
        ++count;
        continue;
      }
      if (rel + 1 >= opts.max_depth) {
        frontier.push_back(node);
        continue;
      }
      const mpq_class c = node->disk.center().representative();
      for (Prime j = 0; j < p; ++j) {
        TreeNode child;
        child.depth = node->depth + 1;
        const PadicBall d(PadicScalar::exact(p, mpq_class(c + power_of(p, node->depth) * j)),
                          RadiusExp(-child.depth));
        child.label = node_label(d);
        child.disk = disk_from_label(p, child.label, child.depth);
        node->children.push_back(std::move(child));
      }
    }
    certified.push_back(count);
    parallel_for(frontier.size(), threads, [&](std::size_t i) {
      OrbitOptions o = opts.orbit;
      o.max_iter = opts.node_max_iter ? opts.node_max_iter : std::max(50L, 2 * frontier[i]->depth);
      sample_frontier(family, *frontier[i], o);
    });
    for (TreeNode* node : level)
      for (auto& c : node->children) next.push_back(&c);
    level = std::move(next);
  }
  settle(tree);
  if (stats) {
    *stats = ExploreStats{};
    collect_stats(tree, tree.depth, *stats);
    stats->certified_per_level = certified;
  }
  return tree;
}

// ---------------------------------------------------------------------------
// Emitters

TreeFormat tree_format_from_string(const std::string& s) {
  if (s == "ascii") return TreeFormat::Ascii;
  if (s == "dot") return TreeFormat::Dot;
  if (s == "json") return TreeFormat::Json;
  throw Error(ErrorCode::InvalidArgument, "unknown format '" + s + "' (ascii, dot, json)");
}

namespace {

char color_letter(Color c) {
  switch (c) {
    case Color::Black: return 'B';
    case Color::White: return 'W';
    case Color::Gray: return 'G';
    case Color::Unknown: return 'U';
  }
  return '?';
}

void emit_ascii(const TreeNode& node, long root_depth, std::ostringstream& os) {
  os << std::string(static_cast<std::size_t>(2 * (node.depth - root_depth)), ' ') << node.label << ' '
     << color_letter(node.color) << '\n';
  for (const auto& c : node.children) emit_ascii(c, root_depth, os);
}

void count_labels(const TreeNode& node, std::map<std::string, int>& counts) {
  ++counts[node.label];
  for (const auto& c : node.children) count_labels(c, counts);
}

std::string dot_id(const TreeNode& node, const std::map<std::string, int>& counts) {
  if (counts.at(node.label) == 1) return node.label;
  return node.label + "@" + std::to_string(node.depth);
}

const char* dot_style(Color c) {
  switch (c) {
    case Color::Black: return "[style=filled, fillcolor=black]";
    case Color::White: return "[style=filled, fillcolor=white]";
    case Color::Gray: return "[style=filled, fillcolor=gray]";
    case Color::Unknown: return "[style=\"filled,diagonals\", fillcolor=lightgray]";
  }
  return "";
}

void emit_dot(const TreeNode& node, const std::map<std::string, int>& counts, std::ostringstream& os) {
  const std::string id = dot_id(node, counts);
  os << "  \"" << id << "\" " << dot_style(node.color);
  std::string extra;
  if (id != node.label) extra = "label=\"" + node.label + "\"";
  if (node.color == Color::Black) extra += std::string(extra.empty() ? "" : ", ") + "fontcolor=white";
  if (!extra.empty()) os << " [" << extra << "]";
  os << ";\n";
  for (const auto& c : node.children) {
    os << "  \"" << id << "\" -> \"" << dot_id(c, counts) << "\";\n";
    emit_dot(c, counts, os);
  }
}

nlohmann::ordered_json to_json(const TreeNode& node) {
  nlohmann::ordered_json j;
  j["label"] = node.label;
  j["depth"] = node.depth;
  j["color"] = to_string(node.color);
  j["certificate"] = {{"source", node.certificate.source},
                      {"detail", node.certificate.detail},
                      {"witnesses", node.certificate.witnesses}};
  j["children"] = nlohmann::ordered_json::array();
  for (const auto& c : node.children) j["children"].push_back(to_json(c));
  return j;
}

TreeNode from_json(const nlohmann::json& j, Prime p) {
  TreeNode node;
  node.label = j.at("label").get<std::string>();
  node.depth = j.at("depth").get<long>();
  node.color = color_from_string(j.at("color").get<std::string>());
  node.disk = disk_from_label(p, node.label, node.depth);
  if (j.contains("certificate")) {
    const auto& c = j.at("certificate");
    node.certificate.source = c.value("source", "");
    node.certificate.detail = c.value("detail", "");
    if (c.contains("witnesses")) node.certificate.witnesses = c.at("witnesses").get<std::vector<std::string>>();
  }
  for (const auto& c : j.at("children")) node.children.push_back(from_json(c, p));
  return node;
}

}  // namespace

std::string emit(const TreeNode& tree, TreeFormat format) {
  std::ostringstream os;
  switch (format) {
    case TreeFormat::Ascii:
      emit_ascii(tree, tree.depth, os);
      break;
    case TreeFormat::Dot: {
      std::map<std::string, int> counts;
      count_labels(tree, counts);
      os << "digraph tree {\n  node [shape=circle];\n";
      emit_dot(tree, counts, os);
      os << "}\n";
      break;
    }
    case TreeFormat::Json:
      os << to_json(tree).dump(2) << "\n";
      break;
  }
  return os.str();
}

TreeNode parse_tree_json(const std::string& text, Prime p) {
  try {
    return from_json(nlohmann::json::parse(text), p);
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::ParseError, std::string("tree json: ") + e.what());
  }
}

}  // namespace padicdyn
