#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <tuple>
#include <vector>

#include "gossipage/errors.hpp"

namespace gossipage {

enum class Family { ring, grid, unit_hypercube, torus_hypercube, fully_connected, custom };

std::string family_name(Family f);
Family family_from_name(const std::string& name);

/// Family parameters; fields that do not apply to a family stay zero.
struct GraphParams {
  std::int64_t n = 0; // node count
  int m = 0;          // grid long side / hypercube dimension / torus side
  int k = 0;          // grid short side
  int d = 0;          // torus dimension
  int f = 0;          // ring neighbors per side
};

struct BuildLimits {
  std::int64_t max_nodes = 1 << 20;
  int max_hypercube_dim = 20;
};

/// Rate-weighted gossip topology, immutable after construction.
///
/// Every built family satisfies: per-node out-rate sum equals lambda, rates
/// are symmetric, and the graph is connected. Parallel wrap-around edges
/// (grids with a side of 2, torus hypercubes with side 2) are merged by
/// summing rates so the per-node total stays lambda.
class Graph {
public:
  /// Ring of n nodes, each linked to the f nearest on both sides at rate lambda/(2f).
  static Graph ring(std::int64_t n, int f, double lambda = 1.0, double lambda_e = 1.0,
                    const BuildLimits& limits = {});

  /// m x k wrap-around grid (m >= k >= 2), row-major ids, rate lambda/4 per directional slot.
  static Graph grid(int m, int k, double lambda = 1.0, double lambda_e = 1.0,
                    const BuildLimits& limits = {});

  /// m-dimensional unit hypercube: 2^m nodes labeled by bit strings, rate lambda/m.
  static Graph unit_hypercube(int m, double lambda = 1.0, double lambda_e = 1.0,
                              const BuildLimits& limits = {});

  /// d-dimensional torus with side m: m^d nodes, coordinate-radix ids, rate lambda/(2d).
  static Graph torus_hypercube(int m, int d, double lambda = 1.0, double lambda_e = 1.0,
                               const BuildLimits& limits = {});

  /// Complete graph on n nodes, rate lambda/(n-1).
  static Graph fully_connected(std::int64_t n, double lambda = 1.0, double lambda_e = 1.0,
                               const BuildLimits& limits = {});

  /// Arbitrary symmetric graph from (i, j, rate) triples. Not a built family:
  /// callers own the rate layout; lambda here is only the total source-to-network rate.
  static Graph from_edge_list(std::int64_t n,
                              const std::vector<std::tuple<int, int, double>>& edges,
                              double lambda, double lambda_e);

  std::int64_t n() const { return n_; }
  double lambda() const { return lambda_; }
  double lambda_e() const { return lambda_e_; }
  Family family() const { return family_; }
  const GraphParams& params() const { return params_; }
  bool vertex_transitive() const { return family_ != Family::custom; }

  int degree(int i) const { return static_cast<int>(offsets_[i + 1] - offsets_[i]); }

  std::span<const std::uint32_t> neighbors(int i) const {
    return {nbr_.data() + offsets_[i], nbr_.data() + offsets_[i + 1]};
  }

  std::span<const double> rates(int i) const {
    return {rate_.data() + offsets_[i], rate_.data() + offsets_[i + 1]};
  }

  double out_rate(int i) const;
  double rate(int i, int j) const; // lambda_ij, 0 when absent
  bool is_connected() const;

  std::string params_string() const;

private:
  Graph() = default;
  void finalize_from_adjacency(std::vector<std::vector<std::pair<std::uint32_t, double>>>& adj);

  std::int64_t n_ = 0;
  double lambda_ = 1.0;
  double lambda_e_ = 1.0;
  Family family_ = Family::custom;
  GraphParams params_;
  std::vector<std::size_t> offsets_;
  std::vector<std::uint32_t> nbr_;
  std::vector<double> rate_;
};

/// Degree histogram and per-node rate-sum extrema, for the inspect command.
struct TopologySummary {
  std::int64_t n;
  std::vector<std::pair<int, std::int64_t>> degree_histogram; // (degree, count)
  double min_rate_sum;
  double max_rate_sum;
};

TopologySummary summarize(const Graph& g);

} // namespace gossipage
