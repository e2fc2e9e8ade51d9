#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "gossipage/simulator.hpp"
#include "gossipage/subset_geometry.hpp"
#include "gossipage/topology.hpp"

namespace gossipage {

/// A topology named by family and parameters, resolvable to a node count
/// without building the graph (bound chains run at sizes where building one
/// would be wasteful or impossible).
struct TopologyDescriptor {
  Family family = Family::ring;
  GraphParams params;
  std::optional<double> alpha; // rings: f = max(1, floor(n^alpha))
  double lambda = 1.0;
  double lambda_e = 1.0;

  static TopologyDescriptor parse_json_text(const std::string& text);

  /// Fills derived fields (n, alpha-derived f) and validates ranges.
  void resolve();

  Graph build(const BuildLimits& limits = {}) const;
  std::string params_string() const; // includes alpha when it was given
};

enum class Method { exact, simulate, chain, closed_form };

std::string method_name(Method m);
Method method_from_name(const std::string& name);

struct ExperimentSpec {
  std::string name;
  std::vector<TopologyDescriptor> points;
  std::vector<Method> methods;
  SimConfig sim;
  std::size_t exact_cap = 5'000'000;
  double crosscheck_slack = 2.0; // chain <= slack * closed_form
  bool timestamp = true;
  std::string out; // optional output path

  static ExperimentSpec parse_json_text(const std::string& text);
  static ExperimentSpec load(const std::string& path);
};

struct ResultRow {
  std::string family;
  std::string params;
  std::int64_t n = 0;
  std::string method;
  double value = 0.0;
  bool has_value = false;
  double ci = 0.0;
  bool has_ci = false;
  std::uint64_t events = 0;
  std::uint64_t seed = 0;
  double horizon = 0.0;
  double warmup = 0.0;
  int reps = 0;
  bool conjecture = false;
  std::string sound; // "", "true", "false": bound rows vs exact/simulated at the same point
  std::string error;
};

/// Runs every (point x method) cell; failures land in the row's error column
/// and the run continues. Rows come back canonically sorted.
std::vector<ResultRow> run_experiment(const ExperimentSpec& spec);

/// CSV with a "# schema=1" header line; the timestamp comment is optional so
/// byte-identical reruns can be checked.
std::string to_csv(const std::vector<ResultRow>& rows, bool timestamp);

void write_csv_file(const std::string& path, const std::string& csv);

struct CrosscheckReport {
  bool ok = true;
  std::vector<std::string> violations;
};

/// Sandwich assertions over a finished row set: exact <= chain, |sim - exact|
/// within 3 CI, chain above sim - 3 CI, chain <= slack * closed form.
CrosscheckReport crosscheck_rows(const std::vector<ResultRow>& rows, double slack);

CrosscheckReport crosscheck(const ExperimentSpec& spec);

struct ExtremalRow {
  std::string family;
  std::string params;
  int j = 0;
  double formula_bound = 0.0;
  std::int64_t bruteforce_min = 0;
  std::string witness; // node ids joined with '|'
  bool conjecture = false;
  bool ok = false; // formula <= brute-force minimum
};

/// Certifies the minimum-incoming-edge formulas against the exhaustive oracle
/// for every size in [j_min, j_max].
std::vector<ExtremalRow> verify_extremal(const Graph& g, int j_min, int j_max,
                                         BoundForm form = BoundForm::tight,
                                         const BruteforceOptions& opts = {});

std::string extremal_to_csv(const std::vector<ExtremalRow>& rows, bool timestamp);

} // namespace gossipage
