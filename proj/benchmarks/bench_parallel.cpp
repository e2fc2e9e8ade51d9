// Compares the serial reference implementations against the OpenMP paths:
// the exhaustive extremal oracle (parallel over enumeration roots) and the
// Monte Carlo simulator (parallel over replications). Results must match
// bit for bit; only the wall time may differ.

#include <chrono>
#include <cstdio>
#include <cstdlib>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "gossipage/simulator.hpp"
#include "gossipage/subset_geometry.hpp"

using namespace gossipage;

namespace {

template <class F>
double time_secs(F&& fn) {
  const auto t0 = std::chrono::steady_clock::now();
  fn();
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

void report(const char* name, double serial, double parallel, bool identical) {
  std::printf("%-34s serial %8.3fs   openmp %8.3fs   speedup %5.2fx   identical %s\n", name,
              serial, parallel, serial / parallel, identical ? "yes" : "NO");
}

} // namespace

int main(int argc, char** argv) {
  int repeats = argc > 1 ? std::atoi(argv[1]) : 1;
#ifdef _OPENMP
  std::printf("openmp max threads: %d\n", omp_get_max_threads());
#else
  std::printf("built without openmp; both columns run serial code\n");
#endif

  {
    Graph g = Graph::grid(6, 6);
    BruteforceOptions serial_opts, parallel_opts;
    serial_opts.parallel = false;
    serial_opts.limits.max_nodes_sized = 36;
    parallel_opts.limits.max_nodes_sized = 36;
    std::vector<MinIncoming> a, b;
    double ts = time_secs([&] {
      for (int r = 0; r < repeats; ++r) a = min_incoming_by_size(g, 12, serial_opts);
    });
    double tp = time_secs([&] {
      for (int r = 0; r < repeats; ++r) b = min_incoming_by_size(g, 12, parallel_opts);
    });
    bool same = true;
    for (int j = 1; j <= 12; ++j)
      same = same && a[j].count == b[j].count && a[j].witness == b[j].witness;
    report("extremal oracle, 6x6 grid j<=12", ts, tp, same);
  }

  {
    Graph g = Graph::ring(18, 4);
    BruteforceOptions serial_opts, parallel_opts;
    serial_opts.parallel = false;
    std::vector<MinIncoming> a, b;
    double ts = time_secs([&] {
      for (int r = 0; r < repeats; ++r) a = min_incoming_by_size(g, 18, serial_opts);
    });
    double tp = time_secs([&] {
      for (int r = 0; r < repeats; ++r) b = min_incoming_by_size(g, 18, parallel_opts);
    });
    bool same = true;
    for (int j = 1; j <= 18; ++j)
      same = same && a[j].count == b[j].count && a[j].witness == b[j].witness;
    report("extremal oracle, ring n=18 f=4", ts, tp, same);
  }

  {
    Graph g = Graph::grid(20, 20);
    SimConfig cfg;
    cfg.horizon = 5'000;
    cfg.replications = 8;
    cfg.seed = 1234;
    SimResult a, b;
    cfg.parallel = false;
    double ts = time_secs([&] {
      for (int r = 0; r < repeats; ++r) a = simulate(g, cfg);
    });
    cfg.parallel = true;
    double tp = time_secs([&] {
      for (int r = 0; r < repeats; ++r) b = simulate(g, cfg);
    });
    report("simulator, 20x20 grid, 8 reps", ts, tp,
           a.mean == b.mean && a.replication_means == b.replication_means);
  }

  return 0;
}
