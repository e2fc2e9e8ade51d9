// Acceptance suite. Each criterion prints one PASS/FAIL line; the process
// exit code is the number of failed criteria.
//
// Two sub-checks assert reference values that are unattainable under the
// wrapped-grid model implemented here; they are kept as stated, fail, and
// print the measured values alongside the analysis:
//   - criterion 5 expects a 15-node set on the 6x6 torus grid with 13
//     incoming edges. Every node there has degree 4, so for any subset
//     2*inner + incoming = 60 and the incoming count is even; the exhaustive
//     minimum is 14 (two full rows plus three nodes).
//   - criterion 7 expects a d=3 torus log-log slope of 0.248 +- 0.035 over
//     sides m in {2..8}. The reference slope was fitted over sides up to 16;
//     restricted to m <= 8 the true slope is near 0.29. The suite also fits
//     the full range m in {2,4,...,16}, which does land inside the band.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <functional>
#include <numbers>
#include <sstream>
#include <string>
#include <vector>

#include "gossipage/bounds.hpp"
#include "gossipage/exact_age.hpp"
#include "gossipage/harness.hpp"
#include "gossipage/rng.hpp"
#include "gossipage/simulator.hpp"
#include "gossipage/subset_geometry.hpp"

using namespace gossipage;

namespace {

struct Checker {
  bool ok = true;
  std::vector<std::string> notes;

  void require(bool cond, const std::string& what) {
    if (!cond) {
      ok = false;
      notes.push_back("FAILED: " + what);
    }
  }

  void note(const std::string& msg) { notes.push_back(msg); }
};

std::string fmt(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.6g", v);
  return buf;
}

double rel_err(double got, double want) { return std::abs(got - want) / std::abs(want); }

std::string experiments_path(const std::string& name) {
  return std::string(EXPERIMENTS_DIR) + "/" + name;
}

double sim_row_value(const std::vector<ResultRow>& rows, std::int64_t n, double* ci = nullptr) {
  for (const auto& r : rows)
    if (r.method == "simulate" && r.n == n && r.has_value) {
      if (ci) *ci = r.ci;
      return r.value;
    }
  throw std::runtime_error("missing simulate row for n=" + std::to_string(n));
}

// ---------------------------------------------------------------------------

void criterion1_exact_oracles(Checker& c) {
  const double v2 = exact_single_node(Graph::fully_connected(2)).value;
  c.require(rel_err(v2, 4.0 / 3.0) <= 1e-12, "two-node age " + fmt(v2) + " != 4/3");
  const double v3 = exact_single_node(Graph::ring(3, 1)).value;
  c.require(rel_err(v3, 33.0 / 20.0) <= 1e-12, "triangle age " + fmt(v3) + " != 33/20");

  const auto t0 = std::chrono::steady_clock::now();
  for (int i = 0; i < 100; ++i) {
    exact_single_node(Graph::fully_connected(2));
    exact_single_node(Graph::ring(3, 1));
  }
  const double per_call =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count() / 200.0;
  c.require(per_call < 1e-3, "exact solve took " + fmt(per_call * 1e3) + " ms");
  c.note("per-solve time " + fmt(per_call * 1e6) + " us");
}

void criterion2_full_set(Checker& c) {
  std::vector<Graph> graphs;
  graphs.push_back(Graph::ring(9, 2, 3.0, 2.0));
  graphs.push_back(Graph::grid(4, 3, 0.5, 1.5));
  graphs.push_back(Graph::unit_hypercube(3, 2.0, 1.0));
  graphs.push_back(Graph::torus_hypercube(3, 2, 1.0, 0.25));
  graphs.push_back(Graph::fully_connected(7, 4.0, 4.0));
  for (const Graph& g : graphs) {
    const double v = exact_version_age(g, NodeSet::full(g.n())).value;
    const double want = g.lambda_e() / g.lambda();
    c.require(rel_err(v, want) <= 1e-12,
              family_name(g.family()) + " full-set age " + fmt(v) + " != " + fmt(want));
  }
}

void criterion3_ring_tables(Checker& c) {
  const std::int64_t sizes[4] = {10'000, 100'000, 1'000'000, 10'000'000};
  const double chain_ref[4] = {124.641, 395.658, 1252.645, 3962.659};
  const double closed_ref[4] = {183.515, 566.769, 1778.723, 5611.261};

  const auto t0 = std::chrono::steady_clock::now();
  const double chain_1e7 = ring_bound_chain(sizes[3], 1).v1;
  const double chain_secs =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  c.require(chain_secs <= 5.0, "n=1e7 chain took " + fmt(chain_secs) + " s");
  c.note("n=1e7 chain time " + fmt(chain_secs) + " s");

  for (int i = 0; i < 4; ++i) {
    const double chain = (i == 3) ? chain_1e7 : ring_bound_chain(sizes[i], 1).v1;
    c.require(rel_err(chain, chain_ref[i]) <= 0.01,
              "alpha=0 chain n=" + std::to_string(sizes[i]) + ": " + fmt(chain) + " vs " +
                  fmt(chain_ref[i]));
    const double closed = ring_closed_form(sizes[i], 1.0);
    c.require(rel_err(closed, closed_ref[i]) <= 0.001,
              "alpha=0 closed n=" + std::to_string(sizes[i]) + ": " + fmt(closed) + " vs " +
                  fmt(closed_ref[i]));
    // alpha=0 column against the direct evaluation of the formula
    const double direct = (5.0 + std::log(2.0) + std::numbers::egamma) +
                          std::sqrt(std::numbers::pi) * std::sqrt(static_cast<double>(sizes[i]));
    c.require(rel_err(closed, direct) <= 1e-12, "alpha=0 closed form drifts from its formula");
  }

  // alpha = 0.1..0.3 columns under the documented convention f = floor(n^alpha).
  // (1e5)^0.2 evaluates to 10 + 2 ulp in IEEE doubles, so that cell uses
  // f = 10 while the reference used f = 9; its residual is reported instead.
  struct Cell {
    double alpha;
    std::int64_t n;
    double chain_ref, closed_ref;
  };
  const Cell cells[] = {
      {0.1, 10'000, 102.198, 132.987},    {0.1, 100'000, 280.508, 332.071},
      {0.1, 1'000'000, 886.491, 1031.794}, {0.1, 10'000'000, 2289.000, 2516.117},
      {0.2, 10'000, 67.926, 82.213},      {0.2, 100'000, 178.614, 197.497},
      {0.2, 1'000'000, 445.018, 469.331},  {0.2, 10'000'000, 1101.664, 1133.706},
      {0.3, 10'000, 46.186, 57.45},       {0.3, 100'000, 101.728, 113.806},
      {0.3, 1'000'000, 224.936, 237.864},  {0.3, 10'000'000, 503.411, 517.252},
  };
  for (const Cell& cell : cells) {
    const auto f = static_cast<std::int64_t>(std::max(
        1.0, std::floor(std::pow(static_cast<double>(cell.n), cell.alpha))));
    const double chain = ring_bound_chain(cell.n, f).v1;
    const double closed = ring_closed_form(cell.n, static_cast<double>(f));
    const bool boundary = (cell.alpha == 0.2 && cell.n == 100'000);
    if (boundary) {
      c.note("boundary cell alpha=0.2 n=1e5: f=floor(n^alpha)=" + std::to_string(f) +
             " gives chain " + fmt(chain) + " / closed " + fmt(closed) + " vs reference " +
             fmt(cell.chain_ref) + " / " + fmt(cell.closed_ref) + " (residual " +
             fmt(rel_err(chain, cell.chain_ref)) + "); with f=9 the reference is matched:");
      const double chain9 = ring_bound_chain(cell.n, 9).v1;
      const double closed9 = ring_closed_form(cell.n, 9.0);
      c.require(rel_err(chain9, cell.chain_ref) <= 0.01,
                "boundary cell f=9 chain " + fmt(chain9) + " vs " + fmt(cell.chain_ref));
      c.require(rel_err(closed9, cell.closed_ref) <= 0.01,
                "boundary cell f=9 closed " + fmt(closed9) + " vs " + fmt(cell.closed_ref));
      c.note("  f=9: chain " + fmt(chain9) + ", closed " + fmt(closed9));
      continue;
    }
    c.require(rel_err(chain, cell.chain_ref) <= 0.01,
              "chain alpha=" + fmt(cell.alpha) + " n=" + std::to_string(cell.n) + ": " +
                  fmt(chain) + " vs " + fmt(cell.chain_ref));
    c.require(rel_err(closed, cell.closed_ref) <= 0.01,
              "closed alpha=" + fmt(cell.alpha) + " n=" + std::to_string(cell.n) + ": " +
                  fmt(closed) + " vs " + fmt(cell.closed_ref));
  }
}

void criterion4_constants(Checker& c) {
  Constants k = compute_constants();
  c.require(std::abs(k.beta_prime - 1.882) <= 0.001,
            "beta' = " + fmt(k.beta_prime) + " not within 0.001 of 1.882");
  c.require(std::abs(k.beta_quadrature - k.beta_closed_form) <= 1e-8,
            "beta quadrature " + fmt(k.beta_quadrature) + " vs closed form " +
                fmt(k.beta_closed_form));
  c.note("beta = " + fmt(k.beta_closed_form) + ", beta' = " + fmt(k.beta_prime));
}

void criterion5_extremal(Checker& c) {
  const auto t0 = std::chrono::steady_clock::now();
  BruteforceOptions opts;
  opts.limits.max_nodes_sized = 36;

  Graph g66 = Graph::grid(6, 6);
  for (const ExtremalRow& r : verify_extremal(g66, 1, 10, BoundForm::tight, opts))
    c.require(r.ok, "grid 6x6 j=" + std::to_string(r.j) + ": formula " + fmt(r.formula_bound) +
                        " > brute-force " + std::to_string(r.bruteforce_min));

  for (int n = 3; n <= 20; ++n)
    for (int f = 1; f <= (n - 1) / 2; ++f) {
      Graph g = Graph::ring(n, f);
      for (const ExtremalRow& r : verify_extremal(g, 1, n, BoundForm::tight, opts))
        c.require(r.ok, "ring n=" + std::to_string(n) + " f=" + std::to_string(f) +
                            " j=" + std::to_string(r.j) + " violates the formula");
    }

  for (int m = 1; m <= 4; ++m) {
    Graph g = Graph::unit_hypercube(m);
    const int j_max = static_cast<int>(std::min<std::int64_t>(8, g.n()));
    for (const ExtremalRow& r : verify_extremal(g, 1, j_max, BoundForm::tight, opts))
      c.require(r.ok, "unit hypercube m=" + std::to_string(m) + " j=" + std::to_string(r.j) +
                          " violates the formula");
  }

  bool conjecture_flagged = false;
  Graph torus = Graph::torus_hypercube(3, 3);
  for (const ExtremalRow& r : verify_extremal(torus, 1, 6, BoundForm::tight, opts)) {
    c.require(r.ok, "torus m=3 d=3 j=" + std::to_string(r.j) + " violates the conjecture");
    conjecture_flagged = conjecture_flagged || r.conjecture;
  }
  c.require(conjecture_flagged, "torus bound rows must carry the conjecture flag");

  // fixed witness: the spiral of nine on the 6x6 grid
  MinIncoming spiral = min_incoming_bruteforce(g66, 9, opts);
  c.require(spiral.count == 12, "6x6 j=9 brute-force minimum " +
                                    std::to_string(spiral.count) + " != 12");
  c.require(min_incoming_formula(g66, 9).value == 12.0, "6x6 j=9 formula != 12");

  // fixed witness: the 15-node boundary-hugging set. The reference count is
  // 13; on the wrapped grid incoming counts of 15-node sets are even
  // (2*inner + incoming = 60), so 13 cannot be attained by any set.
  MinIncoming best15 = min_incoming_bruteforce(g66, 15, opts);
  NodeSet band_plus_three(36);
  for (int i = 0; i < 15; ++i) band_plus_three.set(i); // two full rows plus three
  const std::int64_t band_incoming = edge_counts(g66, band_plus_three).incoming;
  c.require(band_incoming == 13,
            "15-node boundary-hugging set has " + std::to_string(band_incoming) +
                " incoming edges, reference says 13 (parity forbids odd counts here; "
                "exhaustive minimum over all 15-node sets is " +
                std::to_string(best15.count) + ")");

  const double secs =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  c.require(secs <= 120.0, "certification took " + fmt(secs) + " s");
  c.note("runtime " + fmt(secs) + " s");
}

void criterion6_sandwich(Checker& c) {
  const auto t0 = std::chrono::steady_clock::now();

  struct Instance {
    std::string label;
    Graph graph;
    double chain_v1;
  };
  std::vector<Instance> instances;
  auto add = [&](const std::string& label, Graph g, double chain) {
    instances.push_back({label, std::move(g), chain});
  };
  add("fc n=2", Graph::fully_connected(2), fully_connected_bound_chain(2).v1);
  add("fc n=6", Graph::fully_connected(6), fully_connected_bound_chain(6).v1);
  add("fc n=12", Graph::fully_connected(12), fully_connected_bound_chain(12).v1);
  add("ring 3,1", Graph::ring(3, 1), ring_bound_chain(3, 1).v1);
  add("ring 8,1", Graph::ring(8, 1), ring_bound_chain(8, 1).v1);
  add("ring 10,2", Graph::ring(10, 2), ring_bound_chain(10, 2).v1);
  add("ring 14,3", Graph::ring(14, 3), ring_bound_chain(14, 3).v1);
  add("grid 2x2", Graph::grid(2, 2), grid_bound_chain(2, 2).v1);
  add("grid 3x3", Graph::grid(3, 3), grid_bound_chain(3, 3).v1);
  add("grid 4x3", Graph::grid(4, 3), grid_bound_chain(4, 3).v1);
  add("cube m=2", Graph::unit_hypercube(2), unit_hypercube_bound_chain(2).v1);
  add("cube m=3", Graph::unit_hypercube(3), unit_hypercube_bound_chain(3).v1);
  add("torus 3,2", Graph::torus_hypercube(3, 2), grid_bound_chain(3, 3).v1);
  add("torus 4,1", Graph::torus_hypercube(4, 1), ring_bound_chain(4, 1).v1);

  c.note(std::to_string(instances.size()) + " exactly solvable instances across 5 families");
  int worst_hits = 20;
  for (const Instance& inst : instances) {
    const double exact = exact_single_node(inst.graph).value;
    c.require(inst.chain_v1 >= exact - 1e-9 * std::max(1.0, exact),
              inst.label + ": chain " + fmt(inst.chain_v1) + " below exact " + fmt(exact));

    int hits = 0;
    for (std::uint64_t seed = 1; seed <= 20; ++seed) {
      SimConfig cfg;
      cfg.horizon = 10'000;
      cfg.warmup = 2'000;
      cfg.replications = 8;
      cfg.seed = SplitMix64::mix(seed * 7919);
      SimResult r = simulate(inst.graph, cfg);
      if (std::abs(r.mean - exact) <= 3.0 * r.ci_halfwidth) ++hits;
    }
    worst_hits = std::min(worst_hits, hits);
    c.require(hits >= 19, inst.label + ": only " + std::to_string(hits) +
                              "/20 seeds within 3 CI of exact");
  }
  c.note("worst seed agreement " + std::to_string(worst_hits) + "/20");

  const double secs =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  c.require(secs <= 600.0, "sandwich checks took " + fmt(secs) + " s");
  c.note("runtime " + fmt(secs) + " s");
}

void criterion7_scaling(Checker& c) {
  const auto t0 = std::chrono::steady_clock::now();

  { // square grids: band around n^(1/3)
    auto rows = run_experiment(ExperimentSpec::load(experiments_path("fig9_square_grid.json")));
    for (int side : {10, 20, 30, 40}) {
      const std::int64_t n = static_cast<std::int64_t>(side) * side;
      const double v = sim_row_value(rows, n);
      const double scale = std::cbrt(static_cast<double>(n));
      c.require(v >= 1.0 * scale && v <= 1.8 * scale,
                "grid side " + std::to_string(side) + ": " + fmt(v) + " outside [" +
                    fmt(scale) + ", " + fmt(1.8 * scale) + "]");
      c.require(v <= grid_asymptotic(static_cast<double>(n)),
                "grid side " + std::to_string(side) + " violates 3.764 n^(1/3)");
    }
  }

  { // bidirectional ring slope
    auto rows = run_experiment(ExperimentSpec::load(experiments_path("ring_scaling.json")));
    std::vector<std::pair<double, double>> pts;
    for (std::int64_t n : {64, 128, 256, 512, 1024})
      pts.emplace_back(static_cast<double>(n), sim_row_value(rows, n));
    const double slope = fit_scaling(pts).exponent;
    c.require(std::abs(slope - 0.50) <= 0.05, "ring slope " + fmt(slope) + " outside 0.50 +- 0.05");
    c.note("ring slope " + fmt(slope));
  }

  { // unit hypercube: above log n, below the closed form
    auto rows =
        run_experiment(ExperimentSpec::load(experiments_path("fig12_unit_hypercube.json")));
    for (int m = 3; m <= 10; ++m) {
      const std::int64_t n = std::int64_t{1} << m;
      const double v = sim_row_value(rows, n);
      const double logn = std::log(static_cast<double>(n));
      c.require(v >= logn - 0.5,
                "cube m=" + std::to_string(m) + ": " + fmt(v) + " below ln n - 0.5");
      const double closed = hypercube_closed_form(m);
      if (closed > 0.0)
        c.require(v <= closed, "cube m=" + std::to_string(m) + ": " + fmt(v) +
                                   " above the closed form " + fmt(closed));
    }
  }

  { // d=3 torus slope over sides 2..8, plus the full reference range
    auto rows = run_experiment(ExperimentSpec::load(experiments_path("fig13_torus_d3.json")));
    std::vector<std::pair<double, double>> pts;
    for (int m = 2; m <= 8; ++m) {
      const std::int64_t n = static_cast<std::int64_t>(m) * m * m;
      pts.emplace_back(static_cast<double>(n), sim_row_value(rows, n));
    }
    const double slope = fit_scaling(pts).exponent;
    c.require(std::abs(slope - 0.248) <= 0.035,
              "torus d=3 slope over m in {2..8} is " + fmt(slope) +
                  ", outside 0.248 +- 0.035 (the reference was fitted over m up to 16)");

    auto full =
        run_experiment(ExperimentSpec::load(experiments_path("fig13_torus_d3_full.json")));
    std::vector<std::pair<double, double>> fpts;
    for (int m = 2; m <= 16; m += 2) {
      const std::int64_t n = static_cast<std::int64_t>(m) * m * m;
      fpts.emplace_back(static_cast<double>(n), sim_row_value(full, n));
    }
    const double full_slope = fit_scaling(fpts).exponent;
    c.note("supplementary: slope over m in {2,4,...,16} is " + fmt(full_slope) +
           (std::abs(full_slope - 0.248) <= 0.035 ? " (inside the band)" : " (outside the band)"));
  }

  const double secs =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  c.require(secs <= 1800.0, "scaling runs took " + fmt(secs) + " s");
  c.note("simulation budget used " + fmt(secs) + " s");
}

void criterion8_determinism(Checker& c) {
  ExperimentSpec spec = ExperimentSpec::load(experiments_path("crosscheck_small.json"));
  spec.timestamp = false;
  const std::string csv_a = to_csv(run_experiment(spec), spec.timestamp);
  const std::string csv_b = to_csv(run_experiment(spec), spec.timestamp);
  c.require(csv_a == csv_b, "re-running the spec changed the CSV bytes");
  c.require(!csv_a.empty() && csv_a.rfind("# schema=1\n", 0) == 0, "missing schema header");

  const std::string path_a = "/tmp/gossipage_det_a.csv";
  const std::string path_b = "/tmp/gossipage_det_b.csv";
  write_csv_file(path_a, csv_a);
  write_csv_file(path_b, csv_b);
  std::ifstream fa(path_a, std::ios::binary), fb(path_b, std::ios::binary);
  std::stringstream sa, sb;
  sa << fa.rdbuf();
  sb << fb.rdbuf();
  c.require(sa.str() == sb.str(), "written CSV files differ");

  CrosscheckReport report = crosscheck_rows(run_experiment(spec), spec.crosscheck_slack);
  c.require(report.ok, "crosscheck violations on the shipped small spec");
}

} // namespace

int main() {
  struct Criterion {
    int id;
    const char* title;
    std::function<void(Checker&)> body;
  };
  const std::vector<Criterion> criteria = {
      {1, "exact solver hand oracles", criterion1_exact_oracles},
      {2, "full-set age equals lambda_e/lambda", criterion2_full_set},
      {3, "generalized-ring table reproduction", criterion3_ring_tables},
      {4, "grid analysis constants", criterion4_constants},
      {5, "extremal edge-bound certification", criterion5_extremal},
      {6, "exact/simulated/bound sandwich", criterion6_sandwich},
      {7, "scaling reproduction", criterion7_scaling},
      {8, "deterministic experiment output", criterion8_determinism},
  };

  int failures = 0;
  for (const Criterion& cr : criteria) {
    Checker c;
    const auto t0 = std::chrono::steady_clock::now();
    try {
      cr.body(c);
    } catch (const std::exception& e) {
      c.ok = false;
      c.notes.push_back(std::string("FAILED: unhandled error: ") + e.what());
    }
    const double secs =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    std::printf("criterion %d: %s - %s (%.1fs)\n", cr.id, c.ok ? "PASS" : "FAIL", cr.title, secs);
    for (const std::string& note : c.notes) std::printf("    %s\n", note.c_str());
    std::fflush(stdout);
    if (!c.ok) ++failures;
  }
  std::printf("%d/%zu criteria passed\n", static_cast<int>(criteria.size()) - failures,
              criteria.size());
  return failures;
}
