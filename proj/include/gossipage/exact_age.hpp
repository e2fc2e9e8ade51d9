#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "gossipage/node_set.hpp"
#include "gossipage/topology.hpp"

namespace gossipage {

enum class AgeKind { exact, simulated, bound_upper, bound_lower };

struct AgeResult {
  double value = 0.0;
  AgeKind kind = AgeKind::exact;
  double ci_halfwidth = 0.0; // simulated results only
  bool conjecture = false;
  std::uint64_t seed = 0;  // simulated results only
  double horizon = 0.0;    // simulated results only
};

struct ExactOptions {
  std::size_t memo_cap = 5'000'000; // refuse, never approximate, beyond this
};

/// Stationary version age of a connected subset, by memoized evaluation of
/// the one-node-expansion recursion toward the full set:
///
///   v_S = (lambda_e + sum_{i in N(S)} lambda_i(S) v_{S+i})
///         / (lambda |S| / n + sum_{i in N(S)} lambda_i(S)),   v_full = lambda_e / lambda.
///
/// Deterministic; the dependency structure is a DAG so no iteration is involved.
AgeResult exact_version_age(const Graph& g, const NodeSet& s, const ExactOptions& opts = {});

/// Age of a canonical single node (index 0). Built families are vertex
/// transitive, so this is every node's age.
AgeResult exact_single_node(const Graph& g, const ExactOptions& opts = {});

/// Ages of every connected subset up to max_size, for export. Pairs of
/// (subset, age), enumeration order.
std::vector<std::pair<NodeSet, double>> exact_all_subsets(const Graph& g, int max_size,
                                                          const ExactOptions& opts = {});

} // namespace gossipage
