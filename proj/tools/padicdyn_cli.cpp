#include <cstdio>
#include <cstdlib>
#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "padicdyn/padicdyn.h"

namespace {

constexpr int kExitUsage = 64;
constexpr int kExitInternal = 70;

struct Owned {
  char* text = nullptr;
  ~Owned() { padicdyn_string_free(text); }
};

int fail(padicdyn_status status) {
  std::cerr << "error: " << padicdyn_status_name(status) << ": " << padicdyn_last_error() << "\n";
  return status == PADICDYN_ERR_INTERNAL ? kExitInternal : kExitUsage;
}

long default_precision() {
  const char* env = std::getenv("PADIC_PRECISION");
  if (!env || !*env) return padicdyn_orbit_options_default().precision;
  char* end = nullptr;
  const long v = std::strtol(env, &end, 10);
  if (*end != '\0' || v <= 0) {
    std::cerr << "error: PADIC_PRECISION must be a positive integer\n";
    std::exit(kExitUsage);
  }
  return v;
}

unsigned parse_threads(const std::string& s) {
  if (s == "auto") return 0;
  try {
    std::size_t used = 0;
    const long v = std::stol(s, &used);
    if (used == s.size() && v > 0) return static_cast<unsigned>(v);
  } catch (const std::exception&) {
  }
  throw CLI::ValidationError("--threads", "expected a positive integer or auto");
}

struct Family {
  padicdyn_family* handle = nullptr;
  ~Family() { padicdyn_family_free(handle); }
};

struct Tree {
  padicdyn_tree* handle = nullptr;
  ~Tree() { padicdyn_tree_free(handle); }
};

}  // namespace

int main(int argc, char** argv) {
  std::setvbuf(stdout, nullptr, _IOLBF, 0);
  CLI::App app{"p-adic polynomial dynamics: PCB classification, parameter trees, critical radii"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(padicdyn_version()));

  padicdyn_orbit_options orbit = padicdyn_orbit_options_default();
  orbit.precision = default_precision();
  std::string family_name = "cubic2";

  auto add_orbit_flags = [&](CLI::App* sub) {
    sub->add_option("--family", family_name, "cubic2, cubic<p> or quadratic<p>")->capture_default_str();
    sub->add_option("--precision", orbit.precision, "p-adic digits kept (env PADIC_PRECISION)")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
    sub->add_option("--max-iter", orbit.max_iter, "iteration budget")->check(CLI::PositiveNumber)->capture_default_str();
  };

  auto* classify = app.add_subcommand("classify", "classify f_t for one parameter t; exit 0 PCB, 1 not PCB, 2 unknown");
  std::string t;
  std::string classify_format = "ascii";
  add_orbit_flags(classify);
  classify->add_option("--t", t, "parameter literal: a/b or u + O(p^n)")->required();
  classify->add_option("--format", classify_format, "ascii or json")
      ->check(CLI::IsMember({"ascii", "json"}))
      ->capture_default_str();

  auto* explore = app.add_subcommand("explore", "explore the parameter tree below D(center, p^radius-exp)");
  std::string center = "1";
  long radius_exp = -1;
  long depth = 10;
  long node_max_iter = 0;
  std::string format = "ascii";
  std::string threads = "auto";
  bool stats = false;
  add_orbit_flags(explore);
  explore->add_option("--center", center, "disk centre literal")->capture_default_str();
  explore->add_option("--radius-exp", radius_exp, "integer radius exponent (base p)")->capture_default_str();
  explore->add_option("--depth", depth, "tree levels, root included")->check(CLI::PositiveNumber)->capture_default_str();
  explore->add_option("--node-max-iter", node_max_iter, "per-node budget; 0 is max(50, 2*depth)")
      ->check(CLI::NonNegativeNumber);
  explore->add_option("--format", format, "ascii, dot or json")
      ->check(CLI::IsMember({"ascii", "dot", "json"}))
      ->capture_default_str();
  explore->add_option("--threads", threads, "worker threads or auto")->capture_default_str();
  explore->add_flag("--stats", stats, "print depth statistics to stderr");

  auto* radius = app.add_subcommand("radius", "known values and bounds for the critical radius r(d,p)");
  long d = 0;
  unsigned long p = 0;
  bool table = false;
  long dmax = 12;
  unsigned long pmax = 11;
  std::string radius_format = "ascii";
  radius->add_option("--d", d, "degree");
  radius->add_option("--p", p, "prime");
  radius->add_flag("--table", table, "print a table");
  radius->add_option("--dmax", dmax, "largest degree in the table")->capture_default_str();
  radius->add_option("--pmax", pmax, "largest prime in the table")->capture_default_str();
  radius->add_option("--format", radius_format, "ascii or json (tables)")
      ->check(CLI::IsMember({"ascii", "json"}))
      ->capture_default_str();

  auto* witness = app.add_subcommand("witness", "the lower-bound witness map for (d,p) and its identities");
  long wd = 0;
  unsigned long wp = 0;
  witness->add_option("--d", wd, "degree")->required();
  witness->add_option("--p", wp, "prime")->required();

  auto* newton = app.add_subcommand("newton", "Newton polygon of a coefficient list");
  unsigned long np = 0;
  std::string coeffs;
  std::string newton_format = "ascii";
  newton->add_option("--p", np, "prime")->required();
  newton->add_option("--coeffs", coeffs, "comma-separated coefficients, low to high")->required();
  newton->add_option("--format", newton_format, "ascii or json")
      ->check(CLI::IsMember({"ascii", "json"}))
      ->capture_default_str();

  auto* verify = app.add_subcommand("verify", "run a verification suite; exit 0 iff every check passes");
  std::string suite;
  unsigned long long seed = padicdyn_default_seed();
  verify->add_option("--suite", suite, "newton, disk, pto1, radius, witness, bdry or all")
      ->required()
      ->check(CLI::IsMember({"newton", "disk", "pto1", "radius", "witness", "bdry", "all"}));
  verify->add_option("--seed", seed, "random seed")->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitUsage;
  }

  auto load_family = [&](Family& f) { return padicdyn_family_builtin(family_name.c_str(), &f.handle); };

  if (*classify) {
    Family fam;
    if (auto s = load_family(fam); s != PADICDYN_OK) return fail(s);
    padicdyn_pcb verdict = PADICDYN_PCB_UNKNOWN;
    Owned report;
    const auto s = padicdyn_classify_parameter(fam.handle, t.c_str(), &orbit,
                                               classify_format == "json" ? PADICDYN_JSON : PADICDYN_TEXT, &verdict,
                                               &report.text);
    if (s != PADICDYN_OK) return fail(s);
    std::cout << report.text << std::flush;
    return static_cast<int>(verdict);
  }

  if (*explore) {
    Family fam;
    if (auto s = load_family(fam); s != PADICDYN_OK) return fail(s);
    padicdyn_explore_options opts = padicdyn_explore_options_default();
    opts.orbit = orbit;
    opts.depth = depth;
    opts.node_max_iter = node_max_iter;
    try {
      opts.threads = parse_threads(threads);
    } catch (const CLI::ValidationError& e) {
      std::cerr << "error: " << e.what() << "\n";
      return kExitUsage;
    }
    Tree tree;
    if (auto s = padicdyn_explore(fam.handle, center.c_str(), radius_exp, &opts, &tree.handle); s != PADICDYN_OK)
      return fail(s);
    Owned text;
    if (auto s = padicdyn_tree_emit(tree.handle, format.c_str(), &text.text); s != PADICDYN_OK) return fail(s);
    std::cout << text.text << std::flush;
    if (stats) {
      Owned st;
      if (auto s = padicdyn_tree_stats(tree.handle, &st.text); s != PADICDYN_OK) return fail(s);
      std::cerr << st.text;
    }
    return 0;
  }

  if (*radius) {
    Owned out;
    padicdyn_status s;
    if (table) {
      s = padicdyn_radius_table(dmax, pmax, radius_format == "json" ? PADICDYN_JSON : PADICDYN_TEXT, &out.text);
    } else {
      if (d == 0 || p == 0) {
        std::cerr << "error: radius needs --d and --p, or --table\n";
        return kExitUsage;
      }
      s = padicdyn_radius(d, p, &out.text);
    }
    if (s != PADICDYN_OK) return fail(s);
    std::cout << out.text << (table ? "" : "\n") << std::flush;
    return 0;
  }

  if (*witness) {
    int verified = 0;
    Owned report;
    if (auto s = padicdyn_witness(wd, wp, &verified, &report.text); s != PADICDYN_OK) return fail(s);
    std::cout << report.text << std::flush;
    return verified ? 0 : 1;
  }

  if (*newton) {
    Owned out;
    const auto s =
        padicdyn_newton(np, coeffs.c_str(), newton_format == "json" ? PADICDYN_JSON : PADICDYN_TEXT, &out.text);
    if (s != PADICDYN_OK) return fail(s);
    std::cout << out.text << std::flush;
    return 0;
  }

  if (*verify) {
    const std::vector<std::string> all{"newton", "disk", "pto1", "radius", "witness", "bdry"};
    const std::vector<std::string> suites = suite == "all" ? all : std::vector<std::string>{suite};
    bool ok = true;
    for (const auto& name : suites) {
      int passed = 0;
      Owned report;
      if (auto s = padicdyn_verify(name.c_str(), seed, &passed, &report.text); s != PADICDYN_OK) return fail(s);
      std::cout << report.text << std::flush;
      ok = ok && passed;
    }
    return ok ? 0 : 1;
  }
  return kExitUsage;
}
