#include "gossipage/harness.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "gossipage/bounds.hpp"
#include "gossipage/exact_age.hpp"
#include "gossipage/rng.hpp"

namespace gossipage {

using nlohmann::json;

namespace {

std::string fmt_double(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.10g", v);
  return buf;
}

std::string sanitize(std::string s) {
  for (char& c : s)
    if (c == ',' || c == '\n') c = ';';
  return s;
}

TopologyDescriptor descriptor_from_json(const json& j, const TopologyDescriptor& defaults) {
  TopologyDescriptor d = defaults;
  if (j.contains("family")) d.family = family_from_name(j.at("family").get<std::string>());
  const json& p = j.contains("params") ? j.at("params") : j;
  if (p.contains("n")) d.params.n = p.at("n").get<std::int64_t>();
  if (p.contains("m")) d.params.m = p.at("m").get<int>();
  if (p.contains("k")) d.params.k = p.at("k").get<int>();
  if (p.contains("d")) d.params.d = p.at("d").get<int>();
  if (p.contains("f")) d.params.f = p.at("f").get<int>();
  if (p.contains("alpha")) d.alpha = p.at("alpha").get<double>();
  if (j.contains("lambda")) d.lambda = j.at("lambda").get<double>();
  if (j.contains("lambda_e")) d.lambda_e = j.at("lambda_e").get<double>();
  d.resolve();
  return d;
}

} // namespace

TopologyDescriptor TopologyDescriptor::parse_json_text(const std::string& text) {
  json j = json::parse(text);
  if (!j.contains("family")) throw validation_error("topology descriptor needs a family");
  return descriptor_from_json(j, TopologyDescriptor{});
}

void TopologyDescriptor::resolve() {
  switch (family) {
    case Family::ring:
      if (params.n < 3) throw validation_error("ring requires n >= 3");
      if (alpha) {
        if (*alpha < 0.0 || *alpha >= 1.0)
          throw validation_error("ring alpha must lie in [0, 1)");
        // floor(n^alpha), clamped into the ring's valid range (alpha near 1
        // asks for more neighbors than a ring of n nodes has)
        const double derived = std::floor(std::pow(static_cast<double>(params.n), *alpha));
        params.f = static_cast<int>(std::min<double>(
            std::max(1.0, derived), std::floor((static_cast<double>(params.n) - 1.0) / 2.0)));
      }
      if (params.f < 1) throw validation_error("ring requires f >= 1 (or alpha)");
      break;
    case Family::grid:
      if (params.m == 0 && params.k == 0 && params.n > 0) {
        const auto side = static_cast<int>(std::llround(std::sqrt(static_cast<double>(params.n))));
        if (static_cast<std::int64_t>(side) * side != params.n)
          throw validation_error("grid given by n alone must be square");
        params.m = params.k = side;
      }
      params.n = static_cast<std::int64_t>(params.m) * params.k;
      break;
    case Family::unit_hypercube:
      if (params.m < 1 || params.m > 62) throw validation_error("unit hypercube needs 1 <= m <= 62");
      params.n = std::int64_t{1} << params.m;
      break;
    case Family::torus_hypercube: {
      if (params.m < 2 || params.d < 1)
        throw validation_error("torus hypercube needs m >= 2, d >= 1");
      std::int64_t n = 1;
      for (int i = 0; i < params.d; ++i) n *= params.m;
      params.n = n;
      break;
    }
    case Family::fully_connected:
      if (params.n < 2) throw validation_error("fully connected requires n >= 2");
      break;
    case Family::custom:
      throw validation_error("custom graphs cannot come from a descriptor");
  }
}

Graph TopologyDescriptor::build(const BuildLimits& limits) const {
  switch (family) {
    case Family::ring: return Graph::ring(params.n, params.f, lambda, lambda_e, limits);
    case Family::grid: return Graph::grid(params.m, params.k, lambda, lambda_e, limits);
    case Family::unit_hypercube:
      return Graph::unit_hypercube(params.m, lambda, lambda_e, limits);
    case Family::torus_hypercube:
      return Graph::torus_hypercube(params.m, params.d, lambda, lambda_e, limits);
    case Family::fully_connected:
      return Graph::fully_connected(params.n, lambda, lambda_e, limits);
    case Family::custom: break;
  }
  throw validation_error("cannot build custom descriptor");
}

std::string TopologyDescriptor::params_string() const {
  std::ostringstream os;
  switch (family) {
    case Family::ring:
      os << "n=" << params.n << ";f=" << params.f;
      if (alpha) os << ";alpha=" << fmt_double(*alpha);
      break;
    case Family::grid: os << "m=" << params.m << ";k=" << params.k; break;
    case Family::unit_hypercube: os << "m=" << params.m; break;
    case Family::torus_hypercube: os << "m=" << params.m << ";d=" << params.d; break;
    case Family::fully_connected: os << "n=" << params.n; break;
    case Family::custom: os << "n=" << params.n; break;
  }
  return os.str();
}

std::string method_name(Method m) {
  switch (m) {
    case Method::exact: return "exact";
    case Method::simulate: return "simulate";
    case Method::chain: return "chain";
    case Method::closed_form: return "closed_form";
  }
  return "unknown";
}

Method method_from_name(const std::string& name) {
  if (name == "exact") return Method::exact;
  if (name == "simulate") return Method::simulate;
  if (name == "chain") return Method::chain;
  if (name == "closed_form") return Method::closed_form;
  throw validation_error("unknown method: " + name);
}

ExperimentSpec ExperimentSpec::parse_json_text(const std::string& text) {
  json j = json::parse(text);
  ExperimentSpec spec;
  if (j.contains("name")) spec.name = j.at("name").get<std::string>();
  TopologyDescriptor defaults;
  if (j.contains("family")) defaults.family = family_from_name(j.at("family").get<std::string>());
  if (j.contains("lambda")) defaults.lambda = j.at("lambda").get<double>();
  if (j.contains("lambda_e")) defaults.lambda_e = j.at("lambda_e").get<double>();
  if (!j.contains("points") || !j.at("points").is_array() || j.at("points").empty())
    throw validation_error("experiment spec needs a nonempty points array");
  for (const json& p : j.at("points")) {
    if (!p.contains("family") && !j.contains("family"))
      throw validation_error("every point needs a family (given directly or as spec default)");
    spec.points.push_back(descriptor_from_json(p, defaults));
  }
  if (!j.contains("methods") || j.at("methods").empty())
    throw validation_error("experiment spec needs at least one method");
  for (const json& m : j.at("methods")) spec.methods.push_back(method_from_name(m.get<std::string>()));
  if (j.contains("sim")) {
    const json& s = j.at("sim");
    if (s.contains("horizon")) spec.sim.horizon = s.at("horizon").get<double>();
    if (s.contains("warmup")) spec.sim.warmup = s.at("warmup").get<double>();
    if (s.contains("reps")) spec.sim.replications = s.at("reps").get<int>();
    if (s.contains("seed")) spec.sim.seed = s.at("seed").get<std::uint64_t>();
    if (s.contains("estimator"))
      spec.sim.estimator = s.at("estimator").get<std::string>() == "all_nodes"
                               ? Estimator::all_nodes
                               : Estimator::single_node_mean;
  }
  if (j.contains("exact_cap")) spec.exact_cap = j.at("exact_cap").get<std::size_t>();
  if (j.contains("slack")) spec.crosscheck_slack = j.at("slack").get<double>();
  if (j.contains("timestamp")) spec.timestamp = j.at("timestamp").get<bool>();
  if (j.contains("out")) spec.out = j.at("out").get<std::string>();
  return spec;
}

ExperimentSpec ExperimentSpec::load(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw validation_error("cannot open spec file: " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_json_text(ss.str());
}

namespace {

BoundChain chain_for(const TopologyDescriptor& d) {
  ChainOptions opts;
  switch (d.family) {
    case Family::ring: return ring_bound_chain(d.params.n, d.params.f, d.lambda_e, d.lambda, opts);
    case Family::grid: return grid_bound_chain(d.params.m, d.params.k, d.lambda_e, d.lambda, opts);
    case Family::unit_hypercube:
      return unit_hypercube_bound_chain(d.params.m, d.lambda_e, d.lambda, opts);
    case Family::torus_hypercube:
      if (d.params.d == 1) {
        if (d.params.m == 2) return fully_connected_bound_chain(2, d.lambda_e, d.lambda, opts);
        return ring_bound_chain(d.params.m, 1, d.lambda_e, d.lambda, opts);
      }
      if (d.params.d == 2) return grid_bound_chain(d.params.m, d.params.m, d.lambda_e, d.lambda, opts);
      return ddim_bound_chain(d.params.m, d.params.d, d.lambda_e, d.lambda, opts);
    case Family::fully_connected:
      return fully_connected_bound_chain(d.params.n, d.lambda_e, d.lambda, opts);
    case Family::custom: break;
  }
  throw validation_error("no bound chain for custom graphs");
}

double closed_form_for(const TopologyDescriptor& d) {
  switch (d.family) {
    case Family::ring: return ring_closed_form(d.params.n, d.params.f, d.lambda_e, d.lambda);
    case Family::grid: return grid_closed_form(d.params.m, d.params.k, d.lambda_e, d.lambda);
    case Family::unit_hypercube: return hypercube_closed_form(d.params.m, d.lambda_e, d.lambda);
    case Family::torus_hypercube:
      if (d.params.d == 1) return ring_closed_form(d.params.m, 1, d.lambda_e, d.lambda);
      if (d.params.d == 2) return grid_closed_form(d.params.m, d.params.m, d.lambda_e, d.lambda);
      throw validation_error("no closed form for torus hypercubes with d >= 3");
    case Family::fully_connected:
      return fully_connected_closed_form(d.params.n, d.lambda_e, d.lambda);
    case Family::custom: break;
  }
  throw validation_error("no closed form for custom graphs");
}

int method_rank(const std::string& m) {
  if (m == "exact") return 0;
  if (m == "simulate") return 1;
  if (m == "chain") return 2;
  return 3;
}

void sort_rows(std::vector<ResultRow>& rows) {
  std::sort(rows.begin(), rows.end(), [](const ResultRow& a, const ResultRow& b) {
    if (a.family != b.family) return a.family < b.family;
    if (a.n != b.n) return a.n < b.n;
    if (a.params != b.params) return a.params < b.params;
    return method_rank(a.method) < method_rank(b.method);
  });
}

} // namespace

std::vector<ResultRow> run_experiment(const ExperimentSpec& spec) {
  const std::size_t cells = spec.points.size() * spec.methods.size();
  std::vector<ResultRow> rows(cells);

#ifdef _OPENMP
#pragma omp parallel for schedule(dynamic)
#endif
  for (std::size_t cell = 0; cell < cells; ++cell) {
    const std::size_t pi = cell / spec.methods.size();
    const Method method = spec.methods[cell % spec.methods.size()];
    const TopologyDescriptor& point = spec.points[pi];
    ResultRow row;
    row.family = family_name(point.family);
    row.params = point.params_string();
    row.n = point.params.n;
    row.method = method_name(method);
    try {
      switch (method) {
        case Method::exact: {
          ExactOptions eo;
          eo.memo_cap = spec.exact_cap;
          row.value = exact_single_node(point.build(), eo).value;
          row.has_value = true;
          break;
        }
        case Method::simulate: {
          SimConfig cfg = spec.sim;
          cfg.seed = SplitMix64::derive(spec.sim.seed, pi); // per-point stream
          SimResult res = simulate(point.build(), cfg);
          row.value = res.mean;
          row.has_value = true;
          row.ci = res.ci_halfwidth;
          row.has_ci = true;
          row.events = res.events.total();
          row.seed = cfg.seed;
          row.horizon = res.horizon;
          row.warmup = res.warmup;
          row.reps = res.replications;
          break;
        }
        case Method::chain: {
          BoundChain chain = chain_for(point);
          row.value = chain.v1;
          row.has_value = true;
          row.conjecture = chain.conjecture;
          break;
        }
        case Method::closed_form: {
          row.value = closed_form_for(point);
          row.has_value = true;
          break;
        }
      }
    } catch (const std::exception& e) {
      row.error = sanitize(e.what());
    }
    rows[cell] = std::move(row);
  }

  // soundness column: bounds vs measurements at the same point
  for (auto& bound_row : rows) {
    if (bound_row.method != "chain" && bound_row.method != "closed_form") continue;
    if (!bound_row.has_value) continue;
    bool any = false;
    bool sound = true;
    for (const auto& other : rows) {
      if (other.family != bound_row.family || other.params != bound_row.params) continue;
      if (other.method == "exact" && other.has_value) {
        any = true;
        sound = sound && bound_row.value >= other.value - 1e-9 * std::max(1.0, other.value);
      }
      if (other.method == "simulate" && other.has_value) {
        any = true;
        sound = sound && bound_row.value >= other.value - 3.0 * other.ci;
      }
    }
    if (any) bound_row.sound = sound ? "true" : "false";
  }

  sort_rows(rows);
  return rows;
}

std::string to_csv(const std::vector<ResultRow>& rows, bool timestamp) {
  std::ostringstream os;
  os << "# schema=1\n";
  if (timestamp) {
    const auto now = std::chrono::system_clock::now();
    os << "# generated=" << std::chrono::duration_cast<std::chrono::seconds>(
                                now.time_since_epoch())
                                .count()
       << "\n";
  }
  os << "family,params,n,method,value,ci95,events,seed,horizon,warmup,reps,conjecture,sound,error\n";
  for (const auto& r : rows) {
    os << r.family << ',' << r.params << ',' << r.n << ',' << r.method << ','
       << (r.has_value ? fmt_double(r.value) : "") << ',' << (r.has_ci ? fmt_double(r.ci) : "")
       << ',' << (r.method == "simulate" && r.error.empty() ? std::to_string(r.events) : "")
       << ',' << (r.method == "simulate" && r.error.empty() ? std::to_string(r.seed) : "") << ','
       << (r.horizon > 0 ? fmt_double(r.horizon) : "") << ','
       << (r.reps > 0 ? fmt_double(r.warmup) : "") << ','
       << (r.reps > 0 ? std::to_string(r.reps) : "") << ',' << (r.conjecture ? "true" : "false")
       << ',' << r.sound << ',' << r.error << '\n';
  }
  return os.str();
}

void write_csv_file(const std::string& path, const std::string& csv) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw validation_error("cannot write output file: " + path);
  out << csv;
}

CrosscheckReport crosscheck_rows(const std::vector<ResultRow>& rows, double slack) {
  CrosscheckReport report;
  auto fail = [&](const std::string& msg) {
    report.ok = false;
    report.violations.push_back(msg);
  };
  for (const auto& r : rows)
    if (!r.error.empty()) fail(r.family + "[" + r.params + "] " + r.method + ": " + r.error);

  auto find = [&](const ResultRow& like, const std::string& method) -> const ResultRow* {
    for (const auto& r : rows)
      if (r.family == like.family && r.params == like.params && r.method == method &&
          r.has_value)
        return &r;
    return nullptr;
  };

  for (const auto& r : rows) {
    if (r.method != "exact" || !r.has_value) continue;
    if (const ResultRow* sim = find(r, "simulate")) {
      if (std::abs(sim->value - r.value) > 3.0 * sim->ci)
        fail(r.family + "[" + r.params + "] simulated " + fmt_double(sim->value) +
             " outside 3 CI of exact " + fmt_double(r.value));
    }
    if (const ResultRow* chain = find(r, "chain")) {
      if (chain->value < r.value - 1e-9 * std::max(1.0, r.value))
        fail(r.family + "[" + r.params + "] chain " + fmt_double(chain->value) +
             " below exact " + fmt_double(r.value));
    }
  }
  for (const auto& r : rows) {
    if (r.method != "chain" || !r.has_value) continue;
    if (const ResultRow* sim = find(r, "simulate")) {
      if (r.value < sim->value - 3.0 * sim->ci)
        fail(r.family + "[" + r.params + "] chain " + fmt_double(r.value) +
             " below simulated " + fmt_double(sim->value) + " - 3 CI");
    }
    if (const ResultRow* cf = find(r, "closed_form")) {
      if (r.value > slack * cf->value)
        fail(r.family + "[" + r.params + "] chain " + fmt_double(r.value) + " above " +
             fmt_double(slack) + " x closed form " + fmt_double(cf->value));
    }
  }
  return report;
}

CrosscheckReport crosscheck(const ExperimentSpec& spec) {
  return crosscheck_rows(run_experiment(spec), spec.crosscheck_slack);
}

std::vector<ExtremalRow> verify_extremal(const Graph& g, int j_min, int j_max, BoundForm form,
                                         const BruteforceOptions& opts) {
  if (j_min < 1 || j_max > g.n() || j_min > j_max)
    throw validation_error("invalid j range for extremal verification");
  auto minima = min_incoming_by_size(g, j_max, opts);
  std::vector<ExtremalRow> rows;
  for (int j = j_min; j <= j_max; ++j) {
    if (minima[j].count < 0) continue; // no connected subset of that size
    ExtremalRow row;
    row.family = family_name(g.family());
    row.params = g.params_string();
    row.j = j;
    EdgeBound bound = min_incoming_formula(g, j, form);
    row.formula_bound = bound.value;
    row.conjecture = bound.conjecture;
    row.bruteforce_min = minima[j].count;
    std::ostringstream w;
    bool first = true;
    minima[j].witness.for_each([&](int i) {
      if (!first) w << '|';
      w << i;
      first = false;
    });
    row.witness = w.str();
    row.ok = row.formula_bound <= static_cast<double>(row.bruteforce_min) + 1e-9;
    rows.push_back(std::move(row));
  }
  return rows;
}

std::string extremal_to_csv(const std::vector<ExtremalRow>& rows, bool timestamp) {
  std::ostringstream os;
  os << "# schema=1\n";
  if (timestamp) {
    const auto now = std::chrono::system_clock::now();
    os << "# generated="
       << std::chrono::duration_cast<std::chrono::seconds>(now.time_since_epoch()).count()
       << "\n";
  }
  os << "family,params,j,formula_bound,bruteforce_min,witness,conjecture,ok\n";
  for (const auto& r : rows) {
    os << r.family << ',' << r.params << ',' << r.j << ',' << fmt_double(r.formula_bound) << ','
       << r.bruteforce_min << ',' << r.witness << ',' << (r.conjecture ? "true" : "false") << ','
       << (r.ok ? "true" : "false") << '\n';
  }
  return os.str();
}

} // namespace gossipage
