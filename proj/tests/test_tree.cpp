#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <sstream>

#include "padicdyn/tree.hpp"
#include "test_support.hpp"

using namespace padicdyn;
using test_support::Rng;
using test_support::oracle_valuation;
using test_support::uniform;
using test_support::Fate;

namespace {

const PolynomialFamily& cubic() {
  static const PolynomialFamily f = PolynomialFamily::builtin("cubic2");
  return f;
}

PadicBall disk(const mpq_class& c, long depth) { return PadicBall(PadicScalar::exact(2, c), RadiusExp(-depth)); }

long count_lines(const std::string& s) {
  long n = 0;
  for (char ch : s) n += ch == '\n';
  return n;
}

}  // namespace

TEST_CASE("families check their critical points") {
  const RationalPolynomial t({0, 1});
  const RationalPolynomial zero;
  const RationalPolynomial one = RationalPolynomial::constant(1);
  const RationalPolynomial a2({0, mpq_class(-3, 2)});
  const PolynomialFamily ok("mine", 2, {zero, zero, a2, one}, {zero, t});
  CHECK(ok.degree() == 3);
  try {
    PolynomialFamily("bad", 2, {zero, zero, a2, one}, {zero, RationalPolynomial({0, 2})});
    FAIL("expected NotACriticalPoint");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::NotACriticalPoint);
  }
  CHECK_THROWS_AS(PolynomialFamily::builtin("nonsense"), Error);
  CHECK(PolynomialFamily::builtin("cubic3").prime() == 3);
}

TEST_CASE("parameter examples") {
  CHECK(classify_parameter(cubic(), PadicScalar::one(2)).verdict == PcbVerdict::PCB);
  CHECK(classify_parameter(cubic(), PadicScalar::zero(2)).verdict == PcbVerdict::PCB);
  CHECK(classify_parameter(cubic(), PadicScalar::exact(2, mpq_class(1, 4))).verdict == PcbVerdict::NotPCB);
  CHECK(classify_parameter(cubic(), PadicScalar::integer(2, 17)).verdict == PcbVerdict::NotPCB);
  CHECK(test_support::cubic2_fate(17, 20) == Fate::Escapes);
  CHECK(test_support::cubic2_fate(1, 20) == Fate::StaysBounded);
}

TEST_CASE("disk examples") {
  CHECK(classify_disk(cubic(), disk(17, 5)).color == Color::White);
  CHECK(classify_disk(cubic(), disk(97, 7)).color == Color::Black);
  CHECK(classify_disk(cubic(), disk(0, 1)).color == Color::Black);
  const DiskVerdict w = classify_disk(cubic(), disk(17, 5));
  CHECK(w.certificate.source == "escape");
  CHECK(w.certificate.detail.find("escapes at iterate") != std::string::npos);
  CHECK_THROWS_AS(classify_disk(cubic(), PadicBall(PadicScalar::one(2), RadiusExp(mpq_class(1, 2)))), Error);
}

TEST_CASE("labels name residues and partition disks") {
  CHECK(node_label(disk(17, 5)) == "17");
  CHECK(node_label(disk(49, 5)) == "17");
  CHECK(node_label(disk(0, 3)) == "0");
  CHECK(node_label(disk(mpq_class(1, 2), 0)) == "1/2");
  CHECK(node_label(disk(mpq_class(3, 4), -1)) == "1/4");
  CHECK(node_label(disk(mpq_class(3, 4), -2)) == "0");
  CHECK(node_label(disk(mpq_class(7, 4), 0)) == "3/4");
  for (long depth = 1; depth <= 6; ++depth)
    for (long r = 0; r < (1L << depth); ++r) {
      const PadicBall d = disk(r, depth);
      CHECK(node_label(d) == std::to_string(r));
      CHECK(disk_from_label(2, node_label(d), depth) == d);
    }

  ExploreOptions opts;
  opts.max_depth = 2;
  opts.threads = 1;
  const TreeNode t = explore(cubic(), disk(1, 1), opts);
  CHECK(t.label == "1");
  REQUIRE(t.children.size() == 2);
  CHECK(t.children[0].label == "1");
  CHECK(t.children[1].label == "3");
  for (const auto& c : t.children) {
    CHECK(c.depth == 2);
    CHECK(ball_subset(c.disk, t.disk));
  }
  CHECK_FALSE(ball_subset(t.children[0].disk, t.children[1].disk));
}

TEST_CASE("tree emitters") {
  ExploreOptions opts;
  opts.max_depth = 3;
  opts.threads = 1;
  const TreeNode t = explore(cubic(), disk(1, 1), opts);
  const std::string ascii = emit(t, TreeFormat::Ascii);
  CHECK(count_lines(ascii) == 7);
  CHECK(ascii.rfind("1 ", 0) == 0);
  std::istringstream in(ascii);
  for (std::string line; std::getline(in, line);) {
    const char c = line.back();
    CHECK(std::string("BWGU").find(c) != std::string::npos);
  }

  const TreeNode black = explore(cubic(), disk(0, 1), opts);
  CHECK(black.color == Color::Black);
  CHECK(black.children.empty());
  CHECK(emit(black, TreeFormat::Dot).find("\"0\" [style=filled, fillcolor=black]") != std::string::npos);
  CHECK(emit(t, TreeFormat::Dot).rfind("digraph tree {", 0) == 0);

  const TreeNode back = parse_tree_json(emit(t, TreeFormat::Json), 2);
  CHECK(emit(back, TreeFormat::Json) == emit(t, TreeFormat::Json));
  CHECK(emit(back, TreeFormat::Ascii) == ascii);
  CHECK_THROWS_AS(parse_tree_json("{", 2), Error);
}

TEST_CASE("json roundtrip of a deeper tree") {
  ExploreOptions opts;
  opts.max_depth = 4;
  opts.threads = 1;
  const TreeNode t = explore(cubic(), disk(1, 3), opts);
  const std::string j = emit(t, TreeFormat::Json);
  const TreeNode back = parse_tree_json(j, 2);
  CHECK(emit(back, TreeFormat::Json) == j);
  CHECK(emit(back, TreeFormat::Dot) == emit(t, TreeFormat::Dot));
}

TEST_CASE("colors are symmetric under t -> -t") {
  Rng rng(41);
  for (int n = 0; n < 40; ++n) {
    const long depth = uniform(rng, 1, 6);
    const mpq_class c = test_support::random_rational(rng, 2, -1, 3);
    const Color a = classify_disk(cubic(), disk(c, depth)).color;
    const Color b = classify_disk(cubic(), disk(-c, depth)).color;
    CHECK(a == b);
  }
}

TEST_CASE("refinement never flips a certified color") {
  Rng rng(42);
  for (int n = 0; n < 40; ++n) {
    const long depth = uniform(rng, 1, 5);
    const mpq_class c = test_support::random_rational(rng, 2, 0, 3);
    const Color parent = classify_disk(cubic(), disk(c, depth)).color;
    if (parent == Color::Unknown) continue;
    for (long j = 0; j < 2; ++j) {
      const Color child = classify_disk(cubic(), disk(c + j * test_support::pow_p(2, depth), depth + 1)).color;
      const Color opposite = parent == Color::Black ? Color::White : Color::Black;
      CHECK(child != opposite);
    }
  }
}

TEST_CASE("exploration does not depend on the thread count") {
  ExploreOptions one;
  one.max_depth = 4;
  one.threads = 1;
  ExploreOptions four = one;
  four.threads = 4;
  ExploreStats s1;
  ExploreStats s4;
  const TreeNode a = explore(cubic(), disk(1, 3), one, &s1);
  const TreeNode b = explore(cubic(), disk(1, 3), four, &s4);
  CHECK(emit(a, TreeFormat::Json) == emit(b, TreeFormat::Json));
  CHECK(s1.to_string() == s4.to_string());
  CHECK(s1.nodes == s1.black + s1.white + s1.gray + s1.unknown);
}

TEST_CASE("certified disks agree with exact orbits of their members") {
  Rng rng(43);
  long certified = 0;
  for (int n = 0; n < 60; ++n) {
    const long depth = uniform(rng, 1, 7);
    const mpq_class c = test_support::random_rational(rng, 2, -1, 4);
    if (oracle_valuation(c, 2) < -1) continue;
    const DiskVerdict v = classify_disk(cubic(), disk(c, depth));
    if (v.color == Color::Unknown) continue;
    ++certified;
    for (int k = 0; k < 10; ++k) {
      const mpq_class t = c + test_support::pow_p(2, depth) * uniform(rng, -1000, 1000);
      const Fate fate = test_support::cubic2_fate(t, 40);
      if (v.color == Color::White)
        CHECK(fate == Fate::Escapes);
      else
        CHECK(fate == Fate::StaysBounded);
    }
  }
  CHECK(certified > 20);
}
