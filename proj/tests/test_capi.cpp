#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <string>
#include <thread>

#include "padicdyn/padicdyn.h"

namespace {

std::string take(char* s) {
  std::string out = s ? s : "";
  padicdyn_string_free(s);
  return out;
}

struct Family {
  padicdyn_family* f = nullptr;
  explicit Family(const char* name) { REQUIRE(padicdyn_family_builtin(name, &f) == PADICDYN_OK); }
  ~Family() { padicdyn_family_free(f); }
};

}  // namespace

TEST_CASE("version and status names") {
  CHECK(std::string(padicdyn_version()).size() > 0);
  CHECK(std::string(padicdyn_status_name(PADICDYN_OK)) == "OK");
  CHECK(std::string(padicdyn_status_name(PADICDYN_ERR_PARSE)) == "ParseError");
  CHECK(padicdyn_default_seed() == 20240611ULL);
  const padicdyn_orbit_options o = padicdyn_orbit_options_default();
  CHECK(o.precision > 0);
  CHECK(o.max_iter > 0);
}

TEST_CASE("families") {
  Family f("cubic2");
  CHECK(padicdyn_family_prime(f.f) == 2);
  char* s = nullptr;
  REQUIRE(padicdyn_family_describe(f.f, &s) == PADICDYN_OK);
  CHECK(take(s).find("cubic2") != std::string::npos);

  padicdyn_family* bad = nullptr;
  CHECK(padicdyn_family_builtin("nope", &bad) == PADICDYN_ERR_INVALID_ARGUMENT);
  CHECK(bad == nullptr);
  CHECK(std::string(padicdyn_last_error()).size() > 0);
  CHECK(padicdyn_family_builtin(nullptr, &bad) == PADICDYN_ERR_INVALID_ARGUMENT);
  padicdyn_family_free(nullptr);
}

TEST_CASE("parameter classification") {
  Family f("cubic2");
  padicdyn_pcb v = PADICDYN_PCB_UNKNOWN;
  char* report = nullptr;
  REQUIRE(padicdyn_classify_parameter(f.f, "1", nullptr, PADICDYN_TEXT, &v, &report) == PADICDYN_OK);
  CHECK(v == PADICDYN_PCB);
  const std::string text = take(report);
  CHECK(text.find("verdict: PCB") != std::string::npos);
  CHECK(text.find("Cycle") != std::string::npos);

  REQUIRE(padicdyn_classify_parameter(f.f, "17", nullptr, PADICDYN_JSON, &v, &report) == PADICDYN_OK);
  CHECK(v == PADICDYN_NOT_PCB);
  const std::string json = take(report);
  CHECK(json.find("\"verdict\"") != std::string::npos);
  CHECK(json.find("\"orbits\"") != std::string::npos);

  REQUIRE(padicdyn_classify_parameter(f.f, "1/4", nullptr, PADICDYN_TEXT, &v, nullptr) == PADICDYN_OK);
  CHECK(v == PADICDYN_NOT_PCB);
  CHECK(padicdyn_classify_parameter(f.f, "abc", nullptr, PADICDYN_TEXT, &v, nullptr) == PADICDYN_ERR_PARSE);
  CHECK(padicdyn_classify_parameter(f.f, "1/0", nullptr, PADICDYN_TEXT, &v, nullptr) != PADICDYN_OK);
  CHECK(padicdyn_classify_parameter(nullptr, "1", nullptr, PADICDYN_TEXT, &v, nullptr) ==
        PADICDYN_ERR_INVALID_ARGUMENT);
}

TEST_CASE("disk classification") {
  Family f("cubic2");
  padicdyn_color c = PADICDYN_UNKNOWN;
  char* detail = nullptr;
  REQUIRE(padicdyn_classify_disk(f.f, "17", -5, nullptr, &c, &detail) == PADICDYN_OK);
  CHECK(c == PADICDYN_WHITE);
  CHECK(take(detail).find("escape") != std::string::npos);
  REQUIRE(padicdyn_classify_disk(f.f, "97", -7, nullptr, &c, nullptr) == PADICDYN_OK);
  CHECK(c == PADICDYN_BLACK);
}

TEST_CASE("trees") {
  Family f("cubic2");
  padicdyn_explore_options o = padicdyn_explore_options_default();
  o.depth = 3;
  o.threads = 2;
  padicdyn_tree* t = nullptr;
  REQUIRE(padicdyn_explore(f.f, "1", -1, &o, &t) == PADICDYN_OK);
  char* s = nullptr;
  REQUIRE(padicdyn_tree_emit(t, "ascii", &s) == PADICDYN_OK);
  const std::string ascii = take(s);
  CHECK(ascii.rfind("1 ", 0) == 0);
  REQUIRE(padicdyn_tree_emit(t, "json", &s) == PADICDYN_OK);
  const std::string json = take(s);
  REQUIRE(padicdyn_tree_emit(t, "dot", &s) == PADICDYN_OK);
  CHECK(take(s).rfind("digraph tree {", 0) == 0);
  CHECK(padicdyn_tree_emit(t, "svg", &s) == PADICDYN_ERR_INVALID_ARGUMENT);
  REQUIRE(padicdyn_tree_stats(t, &s) == PADICDYN_OK);
  CHECK(take(s).find("nodes") != std::string::npos);

  padicdyn_color c = PADICDYN_BLACK;
  REQUIRE(padicdyn_tree_color_at(t, "5", 3, &c) == PADICDYN_OK);
  CHECK(c == PADICDYN_WHITE);
  CHECK(padicdyn_tree_color_at(t, "5", 9, &c) == PADICDYN_ERR_INVALID_ARGUMENT);

  padicdyn_tree* back = nullptr;
  REQUIRE(padicdyn_tree_parse_json(json.c_str(), 2, &back) == PADICDYN_OK);
  REQUIRE(padicdyn_tree_emit(back, "ascii", &s) == PADICDYN_OK);
  CHECK(take(s) == ascii);
  CHECK(padicdyn_tree_stats(back, &s) == PADICDYN_ERR_INVALID_ARGUMENT);
  CHECK(padicdyn_tree_parse_json("[1,", 2, &back) == PADICDYN_ERR_PARSE);
  padicdyn_tree_free(back);
  padicdyn_tree_free(t);
}

TEST_CASE("radius, witness and newton") {
  char* s = nullptr;
  REQUIRE(padicdyn_radius(3, 2, &s) == PADICDYN_OK);
  CHECK(take(s) == "Exact 1 (Theorem d/2<p<d)");
  REQUIRE(padicdyn_radius(10, 5, &s) == PADICDYN_OK);
  CHECK(take(s) == "Exact 0 (d=2p)");
  CHECK(padicdyn_radius(10, 4, &s) == PADICDYN_ERR_INVALID_ARGUMENT);
  REQUIRE(padicdyn_radius_table(6, 5, PADICDYN_JSON, &s) == PADICDYN_OK);
  CHECK(take(s).find("\"source\"") != std::string::npos);

  int ok = 0;
  REQUIRE(padicdyn_witness(3, 2, &ok, &s) == PADICDYN_OK);
  CHECK(ok == 1);
  CHECK(take(s).find("27/4") != std::string::npos);
  CHECK(padicdyn_witness(8, 2, &ok, &s) == PADICDYN_ERR_DOMAIN);

  REQUIRE(padicdyn_newton(2, "0,0,-3/2,1", PADICDYN_JSON, &s) == PADICDYN_OK);
  CHECK(take(s).find("\"segments\"") != std::string::npos);
  CHECK(padicdyn_newton(2, "1,x", PADICDYN_TEXT, &s) == PADICDYN_ERR_PARSE);
}

TEST_CASE("verify through the C API") {
  int passed = 0;
  char* s = nullptr;
  REQUIRE(padicdyn_verify("pto1", padicdyn_default_seed(), &passed, &s) == PADICDYN_OK);
  CHECK(passed == 1);
  CHECK(take(s).find("PASS pto1/") != std::string::npos);
  CHECK(padicdyn_verify("nope", 1, &passed, &s) == PADICDYN_ERR_INVALID_ARGUMENT);
}

TEST_CASE("last error is per thread") {
  padicdyn_family* bad = nullptr;
  CHECK(padicdyn_family_builtin("nope", &bad) != PADICDYN_OK);
  std::string other = "unset";
  std::thread th([&] { other = padicdyn_last_error(); });
  th.join();
  CHECK(other.empty());
  CHECK_FALSE(std::string(padicdyn_last_error()).empty());
}
