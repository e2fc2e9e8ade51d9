// gossipage: version-age toolkit for gossip networks on structured graphs.
//
// Subcommands: topology inspect, exact, simulate, bound, verify-extremal,
// run, crosscheck. Exit codes: 0 ok, 1 usage, 2 validation failure,
// 3 soundness violation.

#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "gossipage/bounds.hpp"
#include "gossipage/exact_age.hpp"
#include "gossipage/harness.hpp"
#include "gossipage/simulator.hpp"
#include "gossipage/subset_geometry.hpp"

using namespace gossipage;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitValidation = 2;
constexpr int kExitSoundness = 3;

struct TopologyCliOptions {
  std::string config;
  std::string family;
  std::int64_t n = 0;
  int m = 0, k = 0, d = 0, f = 0;
  double alpha = -1.0;
  double lambda = 1.0;
  double lambda_e = 1.0;

  void attach(CLI::App* cmd) {
    cmd->add_option("--config", config, "topology descriptor JSON file");
    cmd->add_option("--family", family, "ring|grid|unit_hypercube|torus_hypercube|fully_connected");
    cmd->add_option("-n,--nodes", n, "node count (ring, fully_connected)");
    cmd->add_option("-m", m, "long side / dimension / torus side");
    cmd->add_option("-k", k, "grid short side");
    cmd->add_option("-d", d, "torus dimension");
    cmd->add_option("-f", f, "ring neighbors per side");
    cmd->add_option("--alpha", alpha, "ring: f = floor(n^alpha)");
    cmd->add_option("--lambda", lambda, "per-node gossip rate (default 1)");
    cmd->add_option("--lambda-e", lambda_e, "source self-update rate (default 1)");
  }

  TopologyDescriptor descriptor() const {
    if (!config.empty()) {
      std::ifstream in(config);
      if (!in) throw validation_error("cannot open config file: " + config);
      std::stringstream ss;
      ss << in.rdbuf();
      return TopologyDescriptor::parse_json_text(ss.str());
    }
    if (family.empty())
      throw validation_error("either --config or --family with inline parameters is required");
    TopologyDescriptor desc;
    desc.family = family_from_name(family);
    desc.params.n = n;
    desc.params.m = m;
    desc.params.k = k;
    desc.params.d = d;
    desc.params.f = f;
    if (alpha >= 0.0) desc.alpha = alpha;
    desc.lambda = lambda;
    desc.lambda_e = lambda_e;
    desc.resolve();
    return desc;
  }
};

void emit(const std::string& text, const std::string& out_path) {
  if (out_path.empty()) {
    std::cout << text;
  } else {
    write_csv_file(out_path, text);
  }
}

std::string fmt(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.10g", v);
  return buf;
}

} // namespace

int main(int argc, char** argv) {
  CLI::App app{"version age of gossip on structured graphs"};
  app.require_subcommand(1);

  std::string out_path;
  bool quiet = false;
  bool no_timestamp = false;
  app.add_option("--out", out_path, "write CSV output to this path")->configurable(false);
  app.add_flag("--quiet", quiet, "suppress progress chatter");
  app.add_flag("--no-timestamp", no_timestamp, "omit the timestamp header line");

  // topology inspect
  auto* topology = app.add_subcommand("topology", "topology utilities");
  topology->require_subcommand(1);
  auto* inspect = topology->add_subcommand("inspect", "print size, degrees, rate sums");
  TopologyCliOptions inspect_opts;
  inspect_opts.attach(inspect);

  // exact
  auto* exact_cmd = app.add_subcommand("exact", "exact version age of a single node");
  TopologyCliOptions exact_opts;
  exact_opts.attach(exact_cmd);
  int anchor = 0;
  bool all_sets = false;
  int max_size = 3;
  std::size_t memo_cap = 5'000'000;
  exact_cmd->add_option("--anchor", anchor, "anchor node id (default 0)");
  exact_cmd->add_flag("--all-sets", all_sets, "emit a CSV of v_S for all connected sets");
  exact_cmd->add_option("--max-size", max_size, "subset size limit for --all-sets");
  exact_cmd->add_option("--cap", memo_cap, "memoization state cap");

  // simulate
  auto* sim_cmd = app.add_subcommand("simulate", "Monte Carlo version age estimate");
  TopologyCliOptions sim_opts;
  sim_opts.attach(sim_cmd);
  SimConfig sim_cfg;
  sim_cmd->add_option("--horizon", sim_cfg.horizon, "simulated time (default: 1e5 source updates)");
  sim_cmd->add_option("--warmup", sim_cfg.warmup, "discarded prefix (default 20% of horizon)");
  sim_cmd->add_option("--reps", sim_cfg.replications, "replications (default 1)");
  std::uint64_t sim_seed = 0;
  sim_cmd->add_option("--seed", sim_seed, "RNG seed");
  bool per_node = false;
  sim_cmd->add_flag("--per-node", per_node, "report per-node means");
  bool no_ci = false;
  sim_cmd->add_flag("--no-ci", no_ci, "skip the confidence interval");

  // bound
  auto* bound_cmd = app.add_subcommand("bound", "recursive and closed-form upper bounds");
  TopologyCliOptions bound_opts;
  bound_opts.attach(bound_cmd);
  bool want_chain = false, want_closed = false, want_both = false;
  bound_cmd->add_flag("--chain", want_chain, "evaluate the recursive bound chain");
  bound_cmd->add_flag("--closed-form", want_closed, "evaluate the closed form");
  bound_cmd->add_flag("--both", want_both, "evaluate both (default)");

  // verify-extremal
  auto* verify_cmd =
      app.add_subcommand("verify-extremal", "certify edge bounds against the exhaustive oracle");
  TopologyCliOptions verify_opts;
  verify_opts.attach(verify_cmd);
  int j_min = 1, j_max = 0;
  std::string form_name = "tight";
  std::int64_t node_cap = 36;
  bool serial_oracle = false;
  verify_cmd->add_option("--j-min", j_min, "smallest subset size (default 1)");
  verify_cmd->add_option("--j-max", j_max, "largest subset size (default n)");
  verify_cmd->add_option("--form", form_name, "tight|relaxed (default tight)");
  verify_cmd->add_option("--node-cap", node_cap, "enumeration node cap (default 36)");
  verify_cmd->add_flag("--serial", serial_oracle, "disable the parallel oracle");

  // run
  auto* run_cmd = app.add_subcommand("run", "run a declarative experiment spec");
  std::string run_config;
  std::uint64_t run_seed = 0;
  bool run_seed_given = false;
  run_cmd->add_option("--config", run_config, "experiment spec JSON file")->required();
  run_cmd->add_option("--seed", run_seed, "override the spec seed")
      ->each([&run_seed_given](const std::string&) { run_seed_given = true; });

  // crosscheck
  auto* cross_cmd = app.add_subcommand("crosscheck", "exact vs simulated vs bounds sandwich");
  std::string cross_config;
  cross_cmd->add_option("--config", cross_config, "experiment spec JSON file")->required();

  // global flags remain usable after a subcommand name
  for (CLI::App* sub : app.get_subcommands([](const CLI::App*) { return true; })) {
    sub->fallthrough();
    for (CLI::App* nested : sub->get_subcommands([](const CLI::App*) { return true; }))
      nested->fallthrough();
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return (e.get_exit_code() == 0) ? kExitOk : kExitUsage;
  }

  try {
    if (*inspect) {
      TopologyDescriptor desc = inspect_opts.descriptor();
      Graph g = desc.build();
      TopologySummary s = summarize(g);
      std::cout << "family: " << family_name(g.family()) << "\n";
      std::cout << "params: " << desc.params_string() << "\n";
      std::cout << "n: " << s.n << "\n";
      std::cout << "degree histogram:\n";
      for (auto& [deg, count] : s.degree_histogram)
        std::cout << "  degree " << deg << ": " << count << " nodes\n";
      std::cout << "per-node rate sum: min " << fmt(s.min_rate_sum) << ", max "
                << fmt(s.max_rate_sum) << "\n";
      std::cout << "connected: " << (g.is_connected() ? "yes" : "no") << "\n";
      return kExitOk;
    }

    if (*exact_cmd) {
      TopologyDescriptor desc = exact_opts.descriptor();
      Graph g = desc.build();
      ExactOptions eo;
      eo.memo_cap = memo_cap;
      if (all_sets) {
        std::ostringstream os;
        os << "# schema=1\nfamily,params,set,size,age\n";
        for (auto& [s, v] : exact_all_subsets(g, max_size, eo)) {
          os << family_name(g.family()) << ',' << desc.params_string() << ',';
          bool first = true;
          s.for_each([&](int i) {
            if (!first) os << '|';
            os << i;
            first = false;
          });
          os << ',' << s.count() << ',' << fmt(v) << '\n';
        }
        emit(os.str(), out_path);
      } else {
        AgeResult r = exact_version_age(g, NodeSet::single(g.n(), anchor), eo);
        if (quiet) {
          std::cout << fmt(r.value) << "\n";
        } else {
          std::cout << "v1(" << family_name(g.family()) << " " << desc.params_string()
                    << ") = " << fmt(r.value) << "\n";
        }
      }
      return kExitOk;
    }

    if (*sim_cmd) {
      TopologyDescriptor desc = sim_opts.descriptor();
      Graph g = desc.build();
      sim_cfg.seed = sim_seed;
      if (no_ci || sim_cfg.replications < 2) sim_cfg.compute_ci = false;
      if (per_node) sim_cfg.estimator = Estimator::all_nodes;
      SimResult r = simulate(g, sim_cfg);
      std::ostringstream os;
      os << "# schema=1\nfamily,params,n,mean,ci95,events,seed\n";
      os << family_name(g.family()) << ',' << desc.params_string() << ',' << g.n() << ','
         << fmt(r.mean) << ',' << (sim_cfg.compute_ci ? fmt(r.ci_halfwidth) : "") << ','
         << r.events.total() << ',' << r.seed << '\n';
      if (per_node) {
        os << "# per-node means\n";
        for (std::size_t i = 0; i < r.per_node_mean.size(); ++i)
          os << "# node " << i << ": " << fmt(r.per_node_mean[i]) << '\n';
      }
      emit(os.str(), out_path);
      return kExitOk;
    }

    if (*bound_cmd) {
      TopologyDescriptor desc = bound_opts.descriptor();
      if (!want_chain && !want_closed) want_both = true;
      if (want_both) want_chain = want_closed = true;
      ExperimentSpec spec;
      spec.points.push_back(desc);
      if (want_chain) spec.methods.push_back(Method::chain);
      if (want_closed) spec.methods.push_back(Method::closed_form);
      auto rows = run_experiment(spec);
      std::ostringstream os;
      os << "# schema=1\nfamily,params,n,v1_chain,v1_closed,conjecture\n";
      std::string chain_v, closed_v, conjecture = "false";
      for (auto& r : rows) {
        if (!r.error.empty()) throw validation_error(r.error);
        if (r.method == "chain") {
          chain_v = fmt(r.value);
          conjecture = r.conjecture ? "true" : "false";
        }
        if (r.method == "closed_form") closed_v = fmt(r.value);
      }
      os << family_name(desc.family) << ',' << desc.params_string() << ',' << desc.params.n
         << ',' << chain_v << ',' << closed_v << ',' << conjecture << '\n';
      emit(os.str(), out_path);
      return kExitOk;
    }

    if (*verify_cmd) {
      TopologyDescriptor desc = verify_opts.descriptor();
      Graph g = desc.build();
      if (j_max <= 0) j_max = static_cast<int>(std::min<std::int64_t>(g.n(), 64));
      BruteforceOptions opts;
      opts.parallel = !serial_oracle;
      opts.limits.max_nodes_sized = node_cap;
      BoundForm form = form_name == "relaxed" ? BoundForm::relaxed : BoundForm::tight;
      auto rows = verify_extremal(g, j_min, j_max, form, opts);
      emit(extremal_to_csv(rows, !no_timestamp), out_path);
      bool all_ok = true;
      for (auto& r : rows) all_ok = all_ok && r.ok;
      if (!all_ok) {
        std::cerr << "extremal verification FAILED: formula exceeds the brute-force minimum\n";
        return kExitSoundness;
      }
      if (!quiet) std::cerr << "extremal verification passed for " << rows.size() << " sizes\n";
      return kExitOk;
    }

    if (*run_cmd) {
      ExperimentSpec spec = ExperimentSpec::load(run_config);
      if (run_seed_given) spec.sim.seed = run_seed;
      if (no_timestamp) spec.timestamp = false;
      auto rows = run_experiment(spec);
      std::string csv = to_csv(rows, spec.timestamp);
      if (!out_path.empty())
        write_csv_file(out_path, csv);
      else if (!spec.out.empty())
        write_csv_file(spec.out, csv);
      else
        std::cout << csv;
      for (auto& r : rows)
        if (!r.error.empty() && !quiet)
          std::cerr << "point error: " << r.family << "[" << r.params << "] " << r.method << ": "
                    << r.error << "\n";
      return kExitOk;
    }

    if (*cross_cmd) {
      ExperimentSpec spec = ExperimentSpec::load(cross_config);
      CrosscheckReport report = crosscheck(spec);
      if (report.ok) {
        if (!quiet) std::cout << "crosscheck passed (" << spec.points.size() << " points)\n";
        return kExitOk;
      }
      std::cerr << "crosscheck FAILED:\n";
      for (auto& v : report.violations) std::cerr << "  " << v << "\n";
      return kExitSoundness;
    }
  } catch (const validation_error& e) {
    std::cerr << "validation error: " << e.what() << "\n";
    return kExitValidation;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitValidation;
  }
  return kExitUsage;
}
