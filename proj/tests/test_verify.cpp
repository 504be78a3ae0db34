#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "padicdyn/error.hpp"
#include "padicdyn/verify.hpp"

using namespace padicdyn;

TEST_CASE("every suite passes with the default seed") {
  REQUIRE(suite_names() == std::vector<std::string>{"newton", "disk", "pto1", "radius", "witness", "bdry"});
  for (const auto& name : suite_names()) {
    const SuiteReport r = run_suite(name);
    CAPTURE(r.to_string());
    CHECK(r.suite == name);
    CHECK_FALSE(r.checks.empty());
    CHECK(r.passed());
    for (const auto& c : r.checks) CHECK(r.to_string().find("PASS " + name + "/" + c.name) != std::string::npos);
  }
}

TEST_CASE("suites are reproducible from the seed") {
  CHECK(run_suite("newton", 7).to_string() == run_suite("newton", 7).to_string());
  CHECK(run_suite("pto1", 99).passed());
}

TEST_CASE("unknown suites are rejected") {
  try {
    run_suite("nope");
    FAIL("expected InvalidArgument");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::InvalidArgument);
  }
}
