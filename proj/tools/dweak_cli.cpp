// dweak: scenario runner and bundled reproduction suite.
//
// Exit status: 0 when every check passes, 1 when any fails, 2 on usage or
// parse errors.

#include <algorithm>
#include <cstdlib>
#include <iomanip>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "dweak/errors.hpp"
#include "dweak/scenario.hpp"

namespace {

constexpr int kUsage = 2;

std::optional<std::uint64_t> env_seed() {
  const char* s = std::getenv("DWEAK_SEED");
  if (s == nullptr || *s == '\0') return std::nullopt;
  std::size_t used = 0;
  const std::string text(s);
  const unsigned long long v = std::stoull(text, &used);
  if (used != text.size()) throw std::invalid_argument("DWEAK_SEED is not an integer: " + text);
  return v;
}

void print_topics(const dweak::Report& r) {
  const auto j = r.to_json();
  std::size_t width = 0;
  for (const auto& [topic, status] : j["summary"]["topics"].items()) width = std::max(width, topic.size());
  std::cout << "\n";
  for (const auto& [topic, status] : j["summary"]["topics"].items()) {
    std::cout << "  " << std::left << std::setw(static_cast<int>(width + 2)) << topic
              << status.get<std::string>() << "\n";
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"d-weak convergence experiments"};
  app.require_subcommand(1);
  app.fallthrough();

  std::optional<std::uint64_t> seed;
  std::optional<std::size_t> horizon;
  std::optional<double> tol;
  std::optional<std::string> filter;
  bool json = false;
  std::size_t threads = 0;
  app.add_option("--seed", seed, "seed for sampled checks (default: DWEAK_SEED, then the scenario)");
  app.add_option("--horizon", horizon, "number of terms N")->check(CLI::PositiveNumber);
  app.add_option("--tol", tol, "tolerance")->check(CLI::PositiveNumber);
  app.add_option("--filter", filter, "run only this check id (or scenario/check)");
  app.add_option("--threads", threads, "worker threads, 0 for all cores");
  app.add_flag("--json", json, "machine-readable report");

  std::string path;
  auto* run = app.add_subcommand("run", "run one scenario file");
  run->add_option("file", path, "scenario file")->required();
  auto* reproduce = app.add_subcommand("reproduce", "run every bundled scenario");
  auto* list = app.add_subcommand("list-checks", "list check operations");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kUsage;
  }

  if (list->parsed()) {
    if (json) {
      dweak::Json arr = dweak::Json::array();
      for (const auto& op : dweak::list_checks()) {
        arr.push_back({{"name", op.name}, {"summary", op.summary}, {"params", op.params}, {"expect", op.expect}});
      }
      std::cout << arr.dump(2) << "\n";
    } else {
      for (const auto& op : dweak::list_checks()) {
        std::cout << std::left << std::setw(22) << op.name << op.summary << "\n";
      }
    }
    return 0;
  }

  dweak::Overrides o;
  o.horizon = horizon;
  o.tol = tol;
  o.filter = filter;
  o.threads = threads;
  try {
    o.seed = seed ? seed : env_seed();
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  }

  dweak::Report report;
  try {
    report = run->parsed() ? dweak::run_scenario_file(path, o) : dweak::reproduce(o);
  } catch (const dweak::ParseError& e) {
    std::cerr << "parse error";
    if (e.line() > 0) std::cerr << " at line " << e.line() << ", column " << e.column();
    if (!e.path().empty()) std::cerr << " at " << e.path();
    std::cerr << ": " << e.what() << "\n";
    return kUsage;
  }
  if (filter && report.checks.empty()) {
    std::cerr << "error: no check matches --filter " << *filter << "\n";
    return kUsage;
  }

  if (json) {
    std::cout << report.to_json().dump(2) << "\n";
  } else {
    std::cout << report.table();
    if (reproduce->parsed()) print_topics(report);
  }
  return report.pass() ? 0 : 1;
}
