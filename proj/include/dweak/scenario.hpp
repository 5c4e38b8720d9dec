#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "dweak/convergence.hpp"
#include "dweak/functional.hpp"
#include "dweak/sequence.hpp"
#include "dweak/serialize.hpp"
#include "dweak/space.hpp"

namespace dweak {

/// One requested check. `params` and `expect` are validated against the
/// operation's declared keys when the scenario is loaded.
struct CheckSpec {
  std::string id;
  std::string op;
  Json params = Json::object();
  Json expect = Json::object();
};

struct Scenario {
  std::string name;
  std::string topic;  // summary key in the reproduction suite
  std::string description;
  std::optional<Space> space;
  std::optional<SequenceSpec> sequence;
  std::vector<Point> candidates;
  Json grid;  // grid description, expanded when checks are bound
  FamilyBudget family;
  TesterConfig config;
  std::uint64_t seed = 0;
  std::vector<CheckSpec> checks;
};

/// Throws ParseError (with line and column for syntax errors, a JSON pointer
/// otherwise).
Scenario parse_scenario(const std::string& text, const std::string& source = "");
Scenario scenario_from_json(const Json& j);
Json to_json(const Scenario& s);

/// Expands a grid description: {"points": [...]} or
/// {"polar": {"coords": [i, j], "degrees": [...], "radii": [...], "p": 2}}.
std::vector<Point> expand_grid(const Json& grid, const std::string& at = "/grid");

struct OpInfo {
  std::string name;
  std::string summary;
  std::vector<std::string> params;
  std::vector<std::string> expect;
};

const std::vector<OpInfo>& list_checks();

struct Overrides {
  std::optional<std::uint64_t> seed;
  std::optional<std::size_t> horizon;
  std::optional<double> tol;
  std::optional<std::string> filter;  // check id, or "scenario/check"
  std::size_t threads = 0;
};

enum class CheckStatus { Pass, Fail, Error };
const char* status_name(CheckStatus s);

struct CheckResult {
  std::string scenario;
  std::string topic;
  std::string id;
  std::string op;
  CheckStatus status = CheckStatus::Pass;
  std::string headline;  // one-line summary for the table
  Json result = Json::object();
  std::string error;  // "<Code>: message" when status is Error
  double seconds = 0.0;
};

struct Report {
  std::vector<CheckResult> checks;
  bool pass() const;

  /// Deterministic machine report. Runtimes are left out so that output is
  /// byte-identical across runs.
  Json to_json() const;
  /// Fixed-width table with runtimes.
  std::string table() const;
};

Report run_scenario(const Scenario& scenario, const Overrides& overrides = {});
Report run_scenario_file(const std::string& path, const Overrides& overrides = {});

/// Every bundled scenario, in name order, merged into one report.
Report reproduce(const Overrides& overrides = {});

struct EmbeddedScenario {
  const char* name;
  const char* text;
};

const std::vector<EmbeddedScenario>& embedded_scenarios();

/// Re-evaluates a Violation certificate of a d-weak check from its JSON:
/// returns h(z) minus the window minimum of h(x_n).
double replay_certificate(const Space& space, const SequenceSpec& seq, const Json& verdict,
                          const TesterConfig& cfg);

}  // namespace dweak
