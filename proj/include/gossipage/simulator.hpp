#pragma once

#include <cstdint>
#include <span>
#include <utility>
#include <vector>

#include "gossipage/exact_age.hpp"
#include "gossipage/topology.hpp"

namespace gossipage {

enum class Estimator {
  single_node_mean, // network-averaged time average (valid on vertex-transitive graphs)
  all_nodes         // additionally keep per-node time averages
};

struct SimConfig {
  double horizon = 0.0; // simulated time; 0 (unset) picks default_horizon(g), negative rejects
  double warmup = -1.0; // simulated time discarded; < 0 means 20% of horizon
  int replications = 1;
  std::uint64_t seed = 0;
  Estimator estimator = Estimator::single_node_mean;
  bool compute_ci = true; // needs replications >= 2
  bool parallel = true;   // replications across OpenMP threads; results identical either way
};

struct EventCounts {
  std::uint64_t source_self = 0;
  std::uint64_t source_send = 0;
  std::uint64_t gossip = 0;
  std::uint64_t total() const { return source_self + source_send + gossip; }
};

struct SimResult {
  double mean = 0.0;
  double ci_halfwidth = 0.0; // 95%, normal approximation over replication means
  std::vector<double> replication_means;
  std::vector<double> per_node_mean; // filled for Estimator::all_nodes
  EventCounts events;                // summed over replications
  std::uint64_t seed = 0;
  double horizon = 0.0;
  double warmup = 0.0;
  int replications = 0;

  AgeResult to_age_result() const {
    AgeResult r;
    r.value = mean;
    r.kind = AgeKind::simulated;
    r.ci_halfwidth = ci_halfwidth;
    r.seed = seed;
    r.horizon = horizon;
    return r;
  }
};

/// Horizon giving at least 1e5 expected source self-updates.
double default_horizon(const Graph& g);

/// Event-driven Monte Carlo estimate of the single-node stationary version
/// age. Event generation superposes one exponential clock at the total rate
/// with a categorical type draw: source self-update, source push to a uniform
/// node, or gossip push along an edge picked by rate. Age is integrated
/// exactly between events. Deterministic in (graph, config, seed).
SimResult simulate(const Graph& g, const SimConfig& cfg);

struct ScalingFit {
  double exponent;
  double coefficient;
};

/// Least squares of log v against log n. Needs >= 3 points with distinct n.
ScalingFit fit_scaling(std::span<const std::pair<double, double>> points);

} // namespace gossipage
