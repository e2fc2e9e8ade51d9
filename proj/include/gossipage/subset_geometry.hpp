#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "gossipage/node_set.hpp"
#include "gossipage/topology.hpp"

namespace gossipage {

/// Edge census of a subset S: incoming counts adjacent pairs crossing the
/// boundary into S, inner counts unordered adjacent pairs inside S, neighbors
/// counts distinct outside nodes with at least one edge into S. On symmetric
/// graphs 2*inner + incoming equals the degree sum over S.
struct EdgeCounts {
  std::int64_t incoming = 0;
  std::int64_t inner = 0;
  std::int64_t neighbors = 0;
};

NodeSet neighbor_set(const Graph& g, const NodeSet& s);
EdgeCounts edge_counts(const Graph& g, const NodeSet& s);
bool is_connected_subset(const Graph& g, const NodeSet& s);

struct EnumLimits {
  std::int64_t max_nodes_sized = 30;    // cap for whole-graph size-bounded enumeration
  std::int64_t max_nodes_anchored = 20; // cap for anchored superset enumeration
};

/// Per-node adjacency bitmasks for graphs of at most 64 nodes.
std::vector<std::uint64_t> neighbor_masks(const Graph& g);

namespace detail {

// Subgraph enumeration on bitmasks.每 connected subset is produced exactly
// once: children of S extend only with exclusive neighbors of the newest node
// plus the not-yet-consumed part of the parent's extension set, so every set
// has a unique generation path. Emission order is deterministic (roots
// ascending, extension candidates consumed lowest-bit first).
template <class F>
void extend_subsets(const std::vector<std::uint64_t>& nmask, std::uint64_t allowed,
                    std::uint64_t s, int size, std::uint64_t ext, std::uint64_t closure,
                    int max_size, F& fn) {
  fn(s, size);
  if (size >= max_size) return;
  std::uint64_t remaining = ext;
  while (remaining) {
    int w = std::countr_zero(remaining);
    remaining &= remaining - 1;
    std::uint64_t exclusive = nmask[w] & ~closure & allowed;
    extend_subsets(nmask, allowed, s | (std::uint64_t{1} << w), size + 1,
                   remaining | exclusive, closure | nmask[w], max_size, fn);
  }
}

} // namespace detail

/// Streams every connected subset of size <= max_size exactly once as
/// (mask, size). Requires n <= 64 and n within limits.
template <class F>
void for_each_connected_subset(const Graph& g, int max_size, F&& fn,
                               const EnumLimits& limits = {}) {
  if (g.n() > 64) throw validation_error("subset enumeration requires n <= 64");
  if (g.n() > limits.max_nodes_sized)
    throw validation_error("subset enumeration exceeds configured node cap");
  auto nmask = neighbor_masks(g);
  const int n = static_cast<int>(g.n());
  for (int root = 0; root < n; ++root) {
    std::uint64_t allowed = ~std::uint64_t{0} << root; // only ids >= root extend this root
    std::uint64_t bit = std::uint64_t{1} << root;
    std::uint64_t ext = nmask[root] & allowed & ~bit;
    detail::extend_subsets(nmask, allowed & ~bit, bit, 1, ext, nmask[root] | bit, max_size, fn);
  }
}

/// Streams every connected subset containing all of `anchor` (itself
/// connected), up to max_size, exactly once.
template <class F>
void for_each_connected_superset(const Graph& g, const NodeSet& anchor, int max_size, F&& fn,
                                 const EnumLimits& limits = {}) {
  if (g.n() > 64) throw validation_error("subset enumeration requires n <= 64");
  if (g.n() > limits.max_nodes_anchored)
    throw validation_error("superset enumeration exceeds configured node cap");
  if (anchor.empty()) throw validation_error("anchor must be nonempty");
  if (!is_connected_subset(g, anchor)) throw validation_error("anchor must be connected");
  auto nmask = neighbor_masks(g);
  std::uint64_t s = anchor.low64();
  std::uint64_t closure = s;
  std::uint64_t ext = 0;
  anchor.for_each([&](int i) { ext |= nmask[i]; closure |= nmask[i]; });
  ext &= ~s;
  int size = anchor.count();
  detail::extend_subsets(nmask, ~std::uint64_t{0} & ~s, s, size, ext, closure, max_size, fn);
}

struct MinIncoming {
  // Incoming count in units of the graph's smallest edge rate, so merged
  // wrap-around duplicates count as two. Equal to the crossing-pair count of
  // edge_counts on every graph without merged edges. -1 when no connected
  // subset of that size exists.
  std::int64_t count = -1;
  NodeSet witness;
};

struct BruteforceOptions {
  EnumLimits limits;
  bool parallel = true;
};

/// Exhaustive minimum incoming-edge count over connected subsets of size j,
/// with one minimizer (smallest bitmask among ties). Independent of the
/// closed-form bounds; used to certify them.
MinIncoming min_incoming_bruteforce(const Graph& g, int j, const BruteforceOptions& opts = {});

/// Same search for every size 1..max_j in a single enumeration sweep.
std::vector<MinIncoming> min_incoming_by_size(const Graph& g, int max_j,
                                              const BruteforceOptions& opts = {});

enum class BoundForm {
  tight,  // ceiling/exact extremal counts
  relaxed // analytic forms used inside the recursive bound chains
};

struct EdgeBound {
  double value = 0.0;
  bool conjecture = false;
};

/// Family lower bound L(j) with |E(S)| >= L(j) for every connected j-set.
/// The torus-hypercube form (d >= 3) is conjectural and flagged as such.
EdgeBound min_incoming_formula(Family family, const GraphParams& p, std::int64_t j,
                               BoundForm form = BoundForm::tight);
EdgeBound min_incoming_formula(const Graph& g, std::int64_t j, BoundForm form = BoundForm::tight);

/// Binary digit sum of i.
int digit_sum(std::uint64_t i);

/// Sum of digit sums over 0..j-1: the maximum inner-edge count of a j-node
/// induced subgraph of a unit hypercube.
std::int64_t hart_sum(std::int64_t j);

/// Closed-form upper bound on hart_sum: j*ceil(log2 j)/2 for j >= 1.
double bush_bound(std::int64_t j);

} // namespace gossipage
