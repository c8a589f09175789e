#pragma once

// The fixed registry of verification checks and their JSON reports.

#include "json.hpp"

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace mverify::checks {

using json = nlohmann::json;

// Bad check name or parameter.
class UsageError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Missing or invalid fixture file.
class DataError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct Settings {
  std::string data_dir;
  // Override the per-check defaults when set.
  std::optional<int> order;
  std::optional<double> tol;
};

// MVERIFY_DATA if set, otherwise the fixture directory of the source tree.
std::string default_data_dir();

struct Report {
  std::string check_name;
  json inputs = json::object();
  std::string value;
  double error_bound = 0;
  bool pass = false;
  double runtime_ms = 0;
  json details = json::object();

  json to_json() const;
};

struct CheckInfo {
  std::string name;
  std::string summary;
  // Parameter names with their defaults.
  json defaults;
};

const std::vector<CheckInfo>& registry();

// params: object of name -> number or numeric string. Throws UsageError or
// DataError; a check that runs but fails returns pass = false.
Report run_check(const std::string& name, const json& params, const Settings& settings);

}  // namespace mverify::checks
