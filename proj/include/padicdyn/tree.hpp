#pragma once

#include <string>
#include <vector>

#include "padicdyn/dynamics.hpp"
#include "padicdyn/family.hpp"

namespace padicdyn {

enum class Color { Black, White, Gray, Unknown };
const char* to_string(Color c);
Color color_from_string(const std::string& s);

struct NodeCertificate {
  std::string source;  // escape, invariant_disk, cycle, invariant_union, children, witnesses, none
  std::string detail;
  std::vector<std::string> witnesses;
};

struct DiskVerdict {
  Color color;  // Black, White or Unknown
  NodeCertificate certificate;
};

PcbResult classify_parameter(const PolynomialFamily& family, const PadicScalar& t,
                             const OrbitOptions& opts = {});

/// Black: every critical orbit bounded for every t in the disk. White: some
/// critical orbit escapes for every t in the disk. The disk must have an
/// integer radius exponent.
DiskVerdict classify_disk(const PolynomialFamily& family, const PadicBall& disk,
                          const OrbitOptions& opts = {});

struct TreeNode {
  PadicBall disk;
  long depth = 0;  // the disk has radius p^-depth
  std::string label;
  Color color = Color::Unknown;
  NodeCertificate certificate;
  std::vector<TreeNode> children;
};

/// Residue of the centre modulo p^depth ("r" or "r/p^k" off the unit disk).
std::string node_label(const PadicBall& disk);
/// The disk a label names at the given depth.
PadicBall disk_from_label(Prime p, const std::string& label, long depth);

struct ExploreOptions {
  /// Number of tree levels, the root included.
  long max_depth = 10;
  OrbitOptions orbit;
  /// Per-node iteration budget; 0 picks max(50, 2 * depth).
  long node_max_iter = 0;
  /// 0 uses the hardware concurrency.
  unsigned threads = 0;
};

struct ExploreStats {
  long nodes = 0;
  long black = 0;
  long white = 0;
  long gray = 0;
  long unknown = 0;
  long levels = 0;
  long unknown_frontier = 0;
  /// Per level below the root: how many nodes were certified there.
  std::vector<long> certified_per_level;
  std::string to_string() const;
};

TreeNode explore(const PolynomialFamily& family, const PadicBall& root, const ExploreOptions& opts,
                 ExploreStats* stats = nullptr);

enum class TreeFormat { Ascii, Dot, Json };
TreeFormat tree_format_from_string(const std::string& s);

std::string emit(const TreeNode& tree, TreeFormat format);
/// Inverse of emit(..., Json).
TreeNode parse_tree_json(const std::string& text, Prime p);

}  // namespace padicdyn
