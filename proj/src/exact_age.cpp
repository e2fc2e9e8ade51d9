#include "gossipage/exact_age.hpp"

#include <array>
#include <unordered_map>

#include "gossipage/subset_geometry.hpp"

namespace gossipage {

namespace {

struct Solver {
  const Graph& g;
  const std::vector<std::uint64_t> nmask;
  const std::uint64_t full;
  const double base; // lambda_e / lambda
  std::size_t cap;
  std::unordered_map<std::uint64_t, double> memo;

  explicit Solver(const Graph& graph, std::size_t memo_cap)
      : g(graph),
        nmask(neighbor_masks(graph)),
        full(graph.n() == 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << graph.n()) - 1),
        base(graph.lambda_e() / graph.lambda()),
        cap(memo_cap) {}

  double solve(std::uint64_t s) {
    if (s == full) return base;
    if (auto it = memo.find(s); it != memo.end()) return it->second;
    if (memo.size() >= cap)
      throw cap_exceeded_error("exact solver state space exceeds memo cap", memo.size());

    // accumulate lambda_i(S) over outside neighbors i
    std::array<double, 64> acc{};
    std::uint64_t nbrs = 0;
    std::uint64_t rest = s;
    while (rest) {
      int i = std::countr_zero(rest);
      rest &= rest - 1;
      auto ns = g.neighbors(i);
      auto rs = g.rates(i);
      for (std::size_t e = 0; e < ns.size(); ++e) {
        if (!((s >> ns[e]) & 1u)) {
          acc[ns[e]] += rs[e];
          nbrs |= std::uint64_t{1} << ns[e];
        }
      }
    }

    double num = g.lambda_e();
    double den = g.lambda() * static_cast<double>(std::popcount(s)) / static_cast<double>(g.n());
    while (nbrs) {
      int i = std::countr_zero(nbrs);
      nbrs &= nbrs - 1;
      double r = acc[i];
      num += r * solve(s | (std::uint64_t{1} << i));
      den += r;
    }
    double v = num / den;
    memo.emplace(s, v);
    return v;
  }
};

} // namespace

AgeResult exact_version_age(const Graph& g, const NodeSet& s, const ExactOptions& opts) {
  if (g.n() > 64) throw validation_error("exact solver requires n <= 64");
  if (s.empty()) throw validation_error("exact solver requires a nonempty set");
  if (!is_connected_subset(g, s)) throw validation_error("exact solver requires a connected set");
  Solver solver(g, opts.memo_cap);
  AgeResult r;
  r.value = solver.solve(s.low64());
  r.kind = AgeKind::exact;
  return r;
}

AgeResult exact_single_node(const Graph& g, const ExactOptions& opts) {
  return exact_version_age(g, NodeSet::single(g.n(), 0), opts);
}

std::vector<std::pair<NodeSet, double>> exact_all_subsets(const Graph& g, int max_size,
                                                          const ExactOptions& opts) {
  if (g.n() > 64) throw validation_error("exact solver requires n <= 64");
  Solver solver(g, opts.memo_cap);
  std::vector<std::pair<NodeSet, double>> out;
  EnumLimits limits;
  limits.max_nodes_sized = g.n(); // solver cap is the effective guard here
  for_each_connected_subset(
      g, max_size,
      [&](std::uint64_t mask, int) {
        out.emplace_back(NodeSet::from_mask(g.n(), mask), solver.solve(mask));
      },
      limits);
  return out;
}

} // namespace gossipage
