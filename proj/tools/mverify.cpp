// Command-line front end. Talks to the library only through the C API.

#include "mverify/mverify.h"

#include "CLI11.hpp"
#include "json.hpp"

#include <cctype>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <map>
#include <string>
#include <thread>
#include <vector>

using json = nlohmann::json;

namespace {

constexpr int kExitPass = 0;
constexpr int kExitFail = 1;
constexpr int kExitUsage = 2;

// "det_bound" -> "det-bound", "max_D" -> "max-d", "N" stays.
std::string flag_name(const std::string& key) {
  std::string out = key;
  for (auto& c : out) c = c == '_' ? '-' : c;
  if (out.size() > 1)
    for (auto& c : out) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  return "--" + out;
}

struct Job {
  std::string name;
  json params = json::object();
};

struct Outcome {
  mv_status status = MV_OK;
  json report;
  std::string error;
};

Outcome run(const mv_context* ctx, const Job& job) {
  Outcome o;
  mv_report* rep = nullptr;
  o.status = mv_run_check(ctx, job.name.c_str(), job.params.dump().c_str(), &rep);
  if (rep) {
    o.report = json::parse(mv_report_json(rep));
    mv_report_free(rep);
  } else {
    o.error = mv_last_error();
    o.report = {{"check_name", job.name}, {"inputs", job.params}, {"value", ""},
                {"error_bound", 0.0},     {"pass", false},        {"runtime_ms", 0.0},
                {"details", json::object()}, {"error", o.error}};
  }
  return o;
}

int make_fixtures(const std::string& dir, int order) {
  for (int w : {8, 16}) {
    mv_newform* f = nullptr;
    if (mv_newform_level2(w, order, &f) != MV_OK) {
      std::cerr << "error: " << mv_last_error() << "\n";
      return kExitUsage;
    }
    const std::string path = dir + "/newform_2_" + std::to_string(w) + ".tsv";
    const auto st = mv_newform_write(f, path.c_str());
    mv_newform_free(f);
    if (st != MV_OK) {
      std::cerr << "error: " << mv_last_error() << "\n";
      return kExitUsage;
    }
    std::cout << "wrote " << path << "\n";
  }
  return kExitPass;
}

int ingest(const std::string& path) {
  mv_newform* f = nullptr;
  if (mv_newform_read(path.c_str(), &f) != MV_OK) {
    std::cerr << "rejected: " << mv_last_error() << "\n";
    return kExitUsage;
  }
  std::cout << "accepted " << mv_newform_label(f) << ": weight " << mv_newform_weight(f) << ", level "
            << mv_newform_level(f) << ", coefficients through q^" << mv_newform_order(f)
            << (mv_newform_is_exact(f) ? "" : " (inexact)") << "\n";
  mv_newform_free(f);
  return kExitPass;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Verification checks for theta, Eisenstein and Rankin-Selberg identities"};
  app.require_subcommand(1, 0);
  app.fallthrough();
  int order = 0;
  double tol = 0;
  std::string json_path;
  bool parallel = false;
  app.add_option("--order", order, "truncation order M, overriding each check's default")->check(CLI::PositiveNumber);
  app.add_option("--tol", tol, "tolerance, overriding each check's default")->check(CLI::PositiveNumber);
  app.add_option("--json", json_path, "write the reports as a JSON array to this file");
  app.add_flag("--parallel", parallel, "run the requested checks concurrently");

  // One subcommand per registered check, one option per parameter.
  std::vector<std::map<std::string, std::string>> values(mv_check_count());
  for (size_t i = 0; i < mv_check_count(); ++i) {
    auto* sub = app.add_subcommand(mv_check_name(i), mv_check_summary(i));
    const auto defaults = json::parse(mv_check_defaults(i));
    for (const auto& [key, val] : defaults.items())
      sub->add_option(flag_name(key), values[i][key], "default " + val.dump());
  }
  auto* all = app.add_subcommand("all", "run every check with its defaults");
  auto* list = app.add_subcommand("list", "list the checks and their parameters");
  std::string fixture_dir = "data";
  int fixture_order = 2500;
  auto* fixtures = app.add_subcommand("make-fixtures", "write the level-2 newform files");
  fixtures->add_option("--dir", fixture_dir, "output directory");
  fixtures->add_option("--order", fixture_order, "coefficients through q^order")->check(CLI::PositiveNumber);
  std::string ingest_path;
  auto* ingest_cmd = app.add_subcommand("ingest", "validate a newform coefficient file");
  ingest_cmd->add_option("path", ingest_path, "file to read")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitPass : kExitUsage;
  }

  if (list->parsed()) {
    for (size_t i = 0; i < mv_check_count(); ++i)
      std::cout << mv_check_name(i) << "  " << mv_check_defaults(i) << "\n    " << mv_check_summary(i) << "\n";
    return kExitPass;
  }
  if (fixtures->parsed()) return make_fixtures(fixture_dir, fixture_order);
  if (ingest_cmd->parsed()) return ingest(ingest_path);

  std::vector<Job> jobs;
  if (all->parsed()) {
    for (size_t i = 0; i < mv_check_count(); ++i) jobs.push_back({mv_check_name(i)});
  }
  for (size_t i = 0; i < mv_check_count(); ++i) {
    if (!app.get_subcommand(mv_check_name(i))->parsed()) continue;
    Job job{mv_check_name(i)};
    for (const auto& [key, val] : values[i])
      if (app.get_subcommand(mv_check_name(i))->count(flag_name(key))) job.params[key] = val;
    jobs.push_back(job);
  }

  mv_context* ctx = nullptr;
  if (mv_context_new(&ctx) != MV_OK) {
    std::cerr << "error: " << mv_last_error() << "\n";
    return kExitUsage;
  }
  if (order > 0) mv_context_set_order(ctx, order);
  if (tol > 0) mv_context_set_tol(ctx, tol);

  std::vector<Outcome> outcomes(jobs.size());
  if (parallel) {
    std::vector<std::thread> threads;
    for (size_t i = 0; i < jobs.size(); ++i)
      threads.emplace_back([&, i] { outcomes[i] = run(ctx, jobs[i]); });
    for (auto& t : threads) t.join();
  } else {
    for (size_t i = 0; i < jobs.size(); ++i) outcomes[i] = run(ctx, jobs[i]);
  }
  mv_context_free(ctx);

  int code = kExitPass;
  json reports = json::array();
  for (const auto& o : outcomes) {
    const auto& r = o.report;
    if (o.status == MV_OK || o.status == MV_CHECK_FAILED) {
      std::printf("%s %-14s %s  (%.0f ms)\n", r["pass"].get<bool>() ? "PASS" : "FAIL",
                  r["check_name"].get<std::string>().c_str(), r["value"].get<std::string>().c_str(),
                  r["runtime_ms"].get<double>());
      if (o.status == MV_CHECK_FAILED && code == kExitPass) code = kExitFail;
    } else {
      std::fprintf(stderr, "ERROR %s: %s\n", r["check_name"].get<std::string>().c_str(), o.error.c_str());
      code = kExitUsage;
    }
    reports.push_back(r);
  }
  if (!json_path.empty()) {
    std::ofstream out(json_path);
    if (!out) {
      std::cerr << "error: cannot write " << json_path << "\n";
      return kExitUsage;
    }
    out << reports.dump(2) << "\n";
  }
  return code;
}
