#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "checks.hpp"

using namespace mverify::checks;

namespace {

Settings settings() {
  Settings s;
  s.data_dir = MVERIFY_TEST_DATA_DIR;
  return s;
}

}  // namespace

TEST_CASE("registry") {
  std::vector<std::string> names;
  for (const auto& c : registry()) names.push_back(c.name);
  for (const char* want : {"theta-e8", "theta-v", "theta-16", "deg2-genus", "eisenstein-n", "unfold-level1",
                           "unfold-gamma0", "nonvanishing", "sk-rankin"})
    CHECK(std::find(names.begin(), names.end(), want) != names.end());
  CHECK_THROWS_AS(run_check("nope", json::object(), settings()), UsageError);
  CHECK_THROWS_AS(run_check("theta-e8", {{"bogus", 1}}, settings()), UsageError);
  CHECK_THROWS_AS(run_check("theta-e8", {{"order", "x"}}, settings()), UsageError);
  CHECK_THROWS_AS(run_check("unfold-level1", {{"k", 8}}, settings()), UsageError);
}

TEST_CASE("report schema") {
  const auto r = run_check("theta-e8", json::object(), settings());
  CHECK(r.pass);
  CHECK(r.value == "exact equality through q^20");
  const auto j = r.to_json();
  for (const char* key : {"check_name", "inputs", "value", "error_bound", "pass", "runtime_ms", "details"})
    CHECK(j.contains(key));
  CHECK(j["inputs"]["order"] == 20);

  Settings s = settings();
  s.order = 12;
  CHECK(run_check("theta-e8", json::object(), s).value == "exact equality through q^12");
  CHECK(run_check("theta-e8", {{"order", "10"}}, s).value == "exact equality through q^10");
}

TEST_CASE("failing and erroring checks") {
  const auto r = run_check("eisenstein-n", {{"N", 3}, {"tol", 1e-30}}, settings());
  CHECK_FALSE(r.pass);
  Settings s = settings();
  s.data_dir = "/nonexistent";
  CHECK_THROWS_AS(run_check("unfold-gamma0", json::object(), s), DataError);
  CHECK_THROWS_AS(run_check("unfold-gamma0", {{"N", 4}}, settings()), UsageError);
}

TEST_CASE("fixtures drive the level-2 unfolding") {
  const auto r = run_check("unfold-gamma0", json::object(), settings());
  CHECK(r.pass);
  CHECK(r.details["margin"].get<double>() > 0);
  CHECK(r.details["relative_bound"].get<double>() < 1e-5);
}
