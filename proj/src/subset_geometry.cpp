#include "gossipage/subset_geometry.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <limits>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace gossipage {

NodeSet neighbor_set(const Graph& g, const NodeSet& s) {
  if (s.empty()) throw validation_error("neighbor_set requires a nonempty set");
  NodeSet out(g.n());
  s.for_each([&](int i) {
    for (std::uint32_t j : g.neighbors(i))
      if (!s.test(static_cast<int>(j))) out.set(static_cast<int>(j));
  });
  return out;
}

EdgeCounts edge_counts(const Graph& g, const NodeSet& s) {
  if (s.empty()) throw validation_error("edge_counts requires a nonempty set");
  EdgeCounts c;
  NodeSet nbrs(g.n());
  s.for_each([&](int i) {
    for (std::uint32_t j : g.neighbors(i)) {
      if (s.test(static_cast<int>(j))) {
        if (i < static_cast<int>(j)) ++c.inner; // count each inside pair once
      } else {
        ++c.incoming;
        nbrs.set(static_cast<int>(j));
      }
    }
  });
  c.neighbors = nbrs.count();
  return c;
}

bool is_connected_subset(const Graph& g, const NodeSet& s) {
  if (s.empty()) return false;
  int start = -1;
  s.for_each([&](int i) {
    if (start < 0) start = i;
  });
  NodeSet seen(g.n());
  seen.set(start);
  std::vector<int> stack{start};
  int reached = 1;
  while (!stack.empty()) {
    int v = stack.back();
    stack.pop_back();
    for (std::uint32_t u : g.neighbors(v)) {
      int ui = static_cast<int>(u);
      if (s.test(ui) && !seen.test(ui)) {
        seen.set(ui);
        ++reached;
        stack.push_back(ui);
      }
    }
  }
  return reached == s.count();
}

std::vector<std::uint64_t> neighbor_masks(const Graph& g) {
  if (g.n() > 64) throw validation_error("neighbor masks require n <= 64");
  std::vector<std::uint64_t> masks(g.n(), 0);
  for (std::int64_t i = 0; i < g.n(); ++i)
    for (std::uint32_t j : g.neighbors(static_cast<int>(i)))
      masks[i] |= std::uint64_t{1} << j;
  return masks;
}

namespace {

// Incoming counts are in slot units: each adjacency contributes its rate
// divided by the graph's smallest edge rate. Families whose wrap-around
// duplicates were merged (grids with a side of 2, tori with side 2) carry
// doubled rates on those edges, and the extremal formulas count the
// underlying slots, not merged pairs. On every other graph slots and pairs
// coincide.
struct SlotMasks {
  std::vector<std::uint64_t> nmask;   // all neighbors
  std::vector<std::uint64_t> doubled; // neighbors reached at twice the base rate
  std::vector<std::int64_t> slot_deg;
};

// Per-slot rate of the family layout; merged duplicates are multiples of it.
double family_slot_rate(const Graph& g) {
  switch (g.family()) {
    case Family::grid: return g.lambda() / 4.0;
    case Family::torus_hypercube: return g.lambda() / (2.0 * g.params().d);
    case Family::ring: return g.lambda() / (2.0 * g.params().f);
    case Family::unit_hypercube: return g.lambda() / g.params().m;
    case Family::fully_connected: return g.lambda() / static_cast<double>(g.n() - 1);
    case Family::custom: break;
  }
  double base = 0.0;
  for (std::int64_t i = 0; i < g.n(); ++i)
    for (double r : g.rates(static_cast<int>(i)))
      if (base == 0.0 || r < base) base = r;
  return base;
}

SlotMasks slot_masks(const Graph& g) {
  SlotMasks sm;
  sm.nmask = neighbor_masks(g);
  sm.doubled.assign(g.n(), 0);
  sm.slot_deg.assign(g.n(), 0);
  const double base = family_slot_rate(g);
  for (std::int64_t i = 0; i < g.n(); ++i) {
    auto nbrs = g.neighbors(static_cast<int>(i));
    auto rates = g.rates(static_cast<int>(i));
    std::int64_t deg = 0;
    for (std::size_t e = 0; e < nbrs.size(); ++e) {
      const double q = rates[e] / base;
      if (std::abs(q - 2.0) <= 1e-9) {
        sm.doubled[i] |= std::uint64_t{1} << nbrs[e];
        deg += 2;
      } else {
        // non-integer ratios (custom graphs) count as single slots
        deg += 1;
      }
    }
    sm.slot_deg[i] = deg;
  }
  return sm;
}

// Rooted enumeration carrying the incoming slot count incrementally:
// adding w changes incoming by slot_deg(w) - 2 * slots(w, S).
struct MinScan {
  const SlotMasks& slots;
  int max_j;
  std::vector<std::int64_t> best;       // best[j]
  std::vector<std::uint64_t> best_mask; // minimizer, smallest mask on ties

  void consider(std::uint64_t s, int size, std::int64_t incoming) {
    if (incoming < best[size] || (incoming == best[size] && s < best_mask[size])) {
      best[size] = incoming;
      best_mask[size] = s;
    }
  }

  void extend(std::uint64_t allowed, std::uint64_t s, int size, std::int64_t incoming,
              std::uint64_t ext, std::uint64_t closure) {
    consider(s, size, incoming);
    if (size >= max_j) return;
    std::uint64_t remaining = ext;
    while (remaining) {
      int w = std::countr_zero(remaining);
      remaining &= remaining - 1;
      std::int64_t crossing = std::popcount(slots.nmask[w] & s) +
                              std::popcount(slots.doubled[w] & s);
      std::int64_t next_incoming = incoming + slots.slot_deg[w] - 2 * crossing;
      std::uint64_t exclusive = slots.nmask[w] & ~closure & allowed;
      extend(allowed, s | (std::uint64_t{1} << w), size + 1, next_incoming,
             remaining | exclusive, closure | slots.nmask[w]);
    }
  }
};

std::vector<MinScan> scan_roots(const Graph& g, const SlotMasks& slots, int max_j,
                                const BruteforceOptions& opts) {
  if (g.n() > 64) throw validation_error("brute-force oracle requires n <= 64");
  if (g.n() > opts.limits.max_nodes_sized)
    throw validation_error("brute-force oracle exceeds configured node cap");

  const int n = static_cast<int>(g.n());
  const std::int64_t sentinel = std::numeric_limits<std::int64_t>::max();
  std::vector<MinScan> scans;
  scans.reserve(n);
  for (int root = 0; root < n; ++root)
    scans.push_back(MinScan{slots, max_j, std::vector<std::int64_t>(max_j + 1, sentinel),
                            std::vector<std::uint64_t>(max_j + 1, 0)});

  const bool parallel = opts.parallel;
#ifdef _OPENMP
#pragma omp parallel for schedule(dynamic) if (parallel)
#endif
  for (int root = 0; root < n; ++root) {
    (void)parallel;
    std::uint64_t allowed = (root == 63) ? 0 : (~std::uint64_t{0} << (root + 1));
    std::uint64_t bit = std::uint64_t{1} << root;
    std::uint64_t ext = slots.nmask[root] & allowed;
    scans[root].extend(allowed, bit, 1, slots.slot_deg[root], ext, slots.nmask[root] | bit);
  }
  return scans;
}

} // namespace

std::vector<MinIncoming> min_incoming_by_size(const Graph& g, int max_j,
                                              const BruteforceOptions& opts) {
  if (max_j < 1 || max_j > g.n()) throw validation_error("subset size out of range");
  const SlotMasks slots = slot_masks(g);
  auto scans = scan_roots(g, slots, max_j, opts);
  const std::int64_t sentinel = std::numeric_limits<std::int64_t>::max();
  std::vector<MinIncoming> out(max_j + 1);
  for (int j = 1; j <= max_j; ++j) {
    std::int64_t best = sentinel;
    std::uint64_t best_mask = 0;
    for (auto& scan : scans) {
      if (scan.best[j] < best || (scan.best[j] == best && scan.best_mask[j] < best_mask)) {
        best = scan.best[j];
        best_mask = scan.best_mask[j];
      }
    }
    if (best != sentinel) {
      out[j].count = best;
      out[j].witness = NodeSet::from_mask(g.n(), best_mask);
    }
  }
  return out;
}

MinIncoming min_incoming_bruteforce(const Graph& g, int j, const BruteforceOptions& opts) {
  return min_incoming_by_size(g, j, opts)[j];
}

namespace {

std::int64_t isqrt_floor(std::int64_t x) {
  if (x < 0) return 0;
  auto r = static_cast<std::int64_t>(std::sqrt(static_cast<double>(x)));
  while (r * r > x) --r;
  while ((r + 1) * (r + 1) <= x) ++r;
  return r;
}

// ceil(2*sqrt(x)) = ceil(sqrt(4x)), exact in integers
std::int64_t ceil_2sqrt(std::int64_t x) {
  std::int64_t s = isqrt_floor(4 * x);
  return s * s == 4 * x ? s : s + 1;
}

int ceil_log2(std::int64_t j) {
  return j <= 1 ? 0 : std::bit_width(static_cast<std::uint64_t>(j - 1));
}

double grid_bound(std::int64_t m, std::int64_t k, std::int64_t j, BoundForm form) {
  const std::int64_t n = m * k;
  const auto t1 = static_cast<std::int64_t>(std::floor(static_cast<double>(k * k) / 4.0));
  const auto t2 = static_cast<std::int64_t>(
      std::floor(static_cast<double>(n) - static_cast<double>(k * k) / 4.0));
  if (j <= t1)
    return form == BoundForm::tight ? static_cast<double>(2 * ceil_2sqrt(j))
                                    : 2.0 * std::sqrt(static_cast<double>(j));
  if (j <= t2) return static_cast<double>(2 * k);
  return form == BoundForm::tight
             ? static_cast<double>(2 * ceil_2sqrt(n - j))
             : static_cast<double>(4 * isqrt_floor(n - j));
}

double ring_bound(std::int64_t n, std::int64_t f, std::int64_t j) {
  if (j <= f) return static_cast<double>(j * (2 * f - (j - 1)));
  if (j < n - f) return static_cast<double>(f * (f + 1));
  const std::int64_t c = n - j;
  return static_cast<double>(c * (2 * f - (c - 1)));
}

double hypercube_bound(int m, std::int64_t j, BoundForm form) {
  const std::int64_t n = std::int64_t{1} << m;
  const std::int64_t a = (2 * j <= n) ? j : n - j;
  if (form == BoundForm::tight) return static_cast<double>(m * a - 2 * hart_sum(a));
  return static_cast<double>(a) * (m - ceil_log2(a));
}

double torus_bound(int d, std::int64_t n, std::int64_t j) {
  const double a = static_cast<double>(2 * j <= n ? j : n - j);
  return std::pow(a, (static_cast<double>(d) - 1.0) / d);
}

} // namespace

EdgeBound min_incoming_formula(Family family, const GraphParams& p, std::int64_t j,
                               BoundForm form) {
  if (j < 1 || j > p.n) throw validation_error("subset size out of range");
  EdgeBound out;
  switch (family) {
    case Family::ring:
      out.value = ring_bound(p.n, p.f, j);
      break;
    case Family::grid:
      out.value = grid_bound(p.m, p.k, j, form);
      break;
    case Family::unit_hypercube:
      out.value = hypercube_bound(p.m, j, form);
      break;
    case Family::torus_hypercube:
      if (p.d == 1) {
        out.value = ring_bound(p.n, 1, j);
      } else if (p.d == 2) {
        out.value = grid_bound(p.m, p.m, j, form);
      } else {
        out.value = torus_bound(p.d, p.n, j);
        out.conjecture = true;
      }
      break;
    case Family::fully_connected:
      out.value = static_cast<double>(j * (p.n - j));
      break;
    case Family::custom:
      throw validation_error("no edge bound formula for custom graphs");
  }
  // Any nonempty proper subset of a connected graph has an incoming edge.
  if (j < p.n && out.value < 1.0) out.value = 1.0;
  return out;
}

EdgeBound min_incoming_formula(const Graph& g, std::int64_t j, BoundForm form) {
  return min_incoming_formula(g.family(), g.params(), j, form);
}

int digit_sum(std::uint64_t i) { return std::popcount(i); }

std::int64_t hart_sum(std::int64_t j) {
  if (j < 0) throw validation_error("hart_sum requires j >= 0");
  std::int64_t total = 0;
  for (std::int64_t i = 0; i < j; ++i) total += std::popcount(static_cast<std::uint64_t>(i));
  return total;
}

double bush_bound(std::int64_t j) {
  if (j < 1) throw validation_error("bush_bound requires j >= 1");
  return 0.5 * static_cast<double>(j) * ceil_log2(j);
}

} // namespace gossipage
