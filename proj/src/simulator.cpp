#include "gossipage/simulator.hpp"

#include <cassert>
#include <cmath>

#include "gossipage/rng.hpp"

namespace gossipage {

double default_horizon(const Graph& g) {
  return g.lambda_e() > 0.0 ? 1e5 / g.lambda_e() : 1e5 / g.lambda();
}

namespace {

struct SamplingTables {
  double rate_self;
  double rate_source;
  double rate_gossip_total;
  double rate_total;
  bool uniform_out_rates;
  AliasTable node_pick;               // sender by out-rate, when not uniform
  std::vector<AliasTable> recipient;  // per-sender edge pick
  std::vector<bool> uniform_edges;    // sender's edge rates all equal
};

SamplingTables build_tables(const Graph& g) {
  SamplingTables t;
  t.rate_self = g.lambda_e();
  t.rate_source = g.lambda();
  const auto n = static_cast<std::size_t>(g.n());
  std::vector<double> out(n);
  t.rate_gossip_total = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    out[i] = g.out_rate(static_cast<int>(i));
    t.rate_gossip_total += out[i];
  }
  t.uniform_out_rates = true;
  for (std::size_t i = 1; i < n; ++i)
    if (std::abs(out[i] - out[0]) > 1e-12 * out[0]) t.uniform_out_rates = false;
  if (!t.uniform_out_rates) t.node_pick.init(out);
  t.recipient.resize(n);
  t.uniform_edges.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    auto rates = g.rates(static_cast<int>(i));
    bool uniform = true;
    for (std::size_t e = 1; e < rates.size(); ++e)
      if (std::abs(rates[e] - rates[0]) > 1e-12 * rates[0]) uniform = false;
    t.uniform_edges[i] = uniform;
    if (!uniform) t.recipient[i].init(rates);
  }
  t.rate_total = t.rate_self + t.rate_source + t.rate_gossip_total;
  return t;
}

struct Replication {
  double mean = 0.0;
  EventCounts events;
  std::vector<double> per_node; // empty unless requested
};

Replication run_replication(const Graph& g, const SamplingTables& tab, double horizon,
                            double warmup, bool per_node_wanted, std::uint64_t rep_seed) {
  const auto n = static_cast<std::size_t>(g.n());
  SplitMix64 rng(rep_seed);
  Replication out;

  std::uint64_t n0 = 0;
  std::vector<std::uint64_t> version(n, 0);
  std::int64_t sum_versions = 0;
  double age_integral = 0.0; // of sum_i X_i(t), over (warmup, horizon]

  // lazy per-node integrals of N_i(t) on the clamped clock max(t, warmup)
  std::vector<double> node_integral;
  std::vector<double> node_last;
  double n0_integral = 0.0;
  double n0_last = warmup;
  if (per_node_wanted) {
    node_integral.assign(n, 0.0);
    node_last.assign(n, warmup);
  }

  double t = 0.0;
  while (true) {
    const double t_next = t + rng.next_exponential(tab.rate_total);
    const double a = std::max(t, warmup);
    const double b = std::min(t_next, horizon);
    if (b > a)
      age_integral +=
          (static_cast<double>(n) * static_cast<double>(n0) - static_cast<double>(sum_versions)) *
          (b - a);
    if (t_next >= horizon) break;
    t = t_next;
    const double clk = std::max(t, warmup);

    const double u = rng.next_double() * tab.rate_total;
    if (u < tab.rate_self) {
      if (per_node_wanted) {
        n0_integral += static_cast<double>(n0) * (clk - n0_last);
        n0_last = clk;
      }
      ++n0;
      ++out.events.source_self;
    } else if (u < tab.rate_self + tab.rate_source) {
      const auto i = static_cast<std::size_t>(
          std::min<double>(rng.next_double() * static_cast<double>(n),
                           static_cast<double>(n - 1)));
      if (version[i] != n0) {
        if (per_node_wanted) {
          node_integral[i] += static_cast<double>(version[i]) * (clk - node_last[i]);
          node_last[i] = clk;
        }
        sum_versions += static_cast<std::int64_t>(n0 - version[i]);
        version[i] = n0;
      }
      ++out.events.source_send;
    } else {
      std::size_t s;
      if (tab.uniform_out_rates) {
        s = static_cast<std::size_t>(std::min<double>(
            rng.next_double() * static_cast<double>(n), static_cast<double>(n - 1)));
      } else {
        s = tab.node_pick.sample(rng.next_double());
      }
      const auto nbrs = g.neighbors(static_cast<int>(s));
      std::size_t e;
      if (tab.uniform_edges[s]) {
        e = static_cast<std::size_t>(
            std::min<double>(rng.next_double() * static_cast<double>(nbrs.size()),
                             static_cast<double>(nbrs.size() - 1)));
      } else {
        e = tab.recipient[s].sample(rng.next_double());
      }
      const std::size_t r = nbrs[e];
      if (version[s] > version[r]) {
        if (per_node_wanted) {
          node_integral[r] += static_cast<double>(version[r]) * (clk - node_last[r]);
          node_last[r] = clk;
        }
        sum_versions += static_cast<std::int64_t>(version[s] - version[r]);
        version[r] = version[s];
      }
      ++out.events.gossip;
    }
    assert(sum_versions >= 0 &&
           sum_versions <= static_cast<std::int64_t>(n) * static_cast<std::int64_t>(n0));
  }

  const double window = horizon - warmup;
  out.mean = age_integral / (static_cast<double>(n) * window);

  if (per_node_wanted) {
    n0_integral += static_cast<double>(n0) * (horizon - n0_last);
    out.per_node.assign(n, 0.0);
    for (std::size_t i = 0; i < n; ++i) {
      node_integral[i] += static_cast<double>(version[i]) * (horizon - node_last[i]);
      out.per_node[i] = (n0_integral - node_integral[i]) / window;
    }
  }
  return out;
}

} // namespace

SimResult simulate(const Graph& g, const SimConfig& cfg) {
  SimConfig c = cfg;
  if (c.horizon < 0.0) throw validation_error("horizon must be positive");
  if (c.horizon == 0.0) c.horizon = default_horizon(g); // unset picks the default
  if (c.warmup < 0.0) c.warmup = 0.2 * c.horizon;
  if (c.warmup >= c.horizon) throw validation_error("warmup must be below horizon");
  if (c.replications < 1) throw validation_error("at least one replication required");
  if (c.compute_ci && c.replications < 2)
    throw validation_error("confidence interval needs >= 2 replications");

  const SamplingTables tables = build_tables(g);
  const bool per_node_wanted = c.estimator == Estimator::all_nodes;
  std::vector<Replication> reps(static_cast<std::size_t>(c.replications));

  const bool parallel = c.parallel;
#ifdef _OPENMP
#pragma omp parallel for schedule(dynamic) if (parallel)
#endif
  for (int r = 0; r < c.replications; ++r) {
    (void)parallel;
    reps[static_cast<std::size_t>(r)] =
        run_replication(g, tables, c.horizon, c.warmup, per_node_wanted,
                        SplitMix64::derive(c.seed, static_cast<std::uint64_t>(r)));
  }

  SimResult out;
  out.seed = c.seed;
  out.horizon = c.horizon;
  out.warmup = c.warmup;
  out.replications = c.replications;
  out.replication_means.reserve(reps.size());
  double sum = 0.0;
  for (auto& rep : reps) {
    out.replication_means.push_back(rep.mean);
    sum += rep.mean;
    out.events.source_self += rep.events.source_self;
    out.events.source_send += rep.events.source_send;
    out.events.gossip += rep.events.gossip;
  }
  out.mean = sum / static_cast<double>(reps.size());
  if (c.compute_ci) {
    double ss = 0.0;
    for (double m : out.replication_means) ss += (m - out.mean) * (m - out.mean);
    const double sd = std::sqrt(ss / static_cast<double>(reps.size() - 1));
    out.ci_halfwidth = 1.96 * sd / std::sqrt(static_cast<double>(reps.size()));
  }
  if (per_node_wanted) {
    out.per_node_mean.assign(static_cast<std::size_t>(g.n()), 0.0);
    for (auto& rep : reps)
      for (std::size_t i = 0; i < rep.per_node.size(); ++i)
        out.per_node_mean[i] += rep.per_node[i] / static_cast<double>(reps.size());
  }
  return out;
}

ScalingFit fit_scaling(std::span<const std::pair<double, double>> points) {
  if (points.size() < 3) throw validation_error("scaling fit needs at least 3 points");
  for (std::size_t i = 0; i < points.size(); ++i) {
    if (!(points[i].first > 0.0) || !(points[i].second > 0.0))
      throw validation_error("scaling fit needs positive (n, v) points");
    for (std::size_t j = i + 1; j < points.size(); ++j)
      if (points[i].first == points[j].first)
        throw validation_error("scaling fit needs distinct n values");
  }
  double mx = 0.0, my = 0.0;
  for (auto& [n, v] : points) {
    mx += std::log(n);
    my += std::log(v);
  }
  mx /= static_cast<double>(points.size());
  my /= static_cast<double>(points.size());
  double sxx = 0.0, sxy = 0.0;
  for (auto& [n, v] : points) {
    const double dx = std::log(n) - mx;
    sxx += dx * dx;
    sxy += dx * (std::log(v) - my);
  }
  ScalingFit fit;
  fit.exponent = sxy / sxx;
  fit.coefficient = std::exp(my - fit.exponent * mx);
  return fit;
}

} // namespace gossipage
