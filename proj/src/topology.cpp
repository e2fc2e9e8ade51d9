#include "gossipage/topology.hpp"

#include <algorithm>
#include <map>
#include <sstream>

namespace gossipage {

std::string family_name(Family f) {
  switch (f) {
    case Family::ring: return "ring";
    case Family::grid: return "grid";
    case Family::unit_hypercube: return "unit_hypercube";
    case Family::torus_hypercube: return "torus_hypercube";
    case Family::fully_connected: return "fully_connected";
    case Family::custom: return "custom";
  }
  return "unknown";
}

Family family_from_name(const std::string& name) {
  if (name == "ring") return Family::ring;
  if (name == "grid") return Family::grid;
  if (name == "unit_hypercube") return Family::unit_hypercube;
  if (name == "torus_hypercube") return Family::torus_hypercube;
  if (name == "fully_connected") return Family::fully_connected;
  if (name == "custom") return Family::custom;
  throw validation_error("unknown topology family: " + name);
}

namespace {

void check_rates(double lambda, double lambda_e) {
  if (!(lambda > 0.0)) throw validation_error("lambda must be positive");
  if (lambda_e < 0.0) throw validation_error("lambda_e must be nonnegative");
}

} // namespace

void Graph::finalize_from_adjacency(std::vector<std::vector<std::pair<std::uint32_t, double>>>& adj) {
  offsets_.assign(static_cast<std::size_t>(n_) + 1, 0);
  std::size_t total = 0;
  for (std::int64_t i = 0; i < n_; ++i) {
    auto& row = adj[i];
    std::sort(row.begin(), row.end());
    total += row.size();
    offsets_[i + 1] = total;
  }
  nbr_.reserve(total);
  rate_.reserve(total);
  for (std::int64_t i = 0; i < n_; ++i) {
    for (auto& [j, r] : adj[i]) {
      nbr_.push_back(j);
      rate_.push_back(r);
    }
  }
}

Graph Graph::ring(std::int64_t n, int f, double lambda, double lambda_e, const BuildLimits& limits) {
  check_rates(lambda, lambda_e);
  if (n < 3) throw validation_error("ring requires n >= 3");
  if (n > limits.max_nodes) throw validation_error("ring exceeds node cap");
  if (f < 1 || f > (n - 1) / 2)
    throw validation_error("ring requires 1 <= f <= floor((n-1)/2)");

  Graph g;
  g.n_ = n;
  g.lambda_ = lambda;
  g.lambda_e_ = lambda_e;
  g.family_ = Family::ring;
  g.params_.n = n;
  g.params_.f = f;

  const double r = lambda / (2.0 * f);
  std::vector<std::vector<std::pair<std::uint32_t, double>>> adj(n);
  for (std::int64_t i = 0; i < n; ++i) {
    for (int step = 1; step <= f; ++step) {
      adj[i].emplace_back(static_cast<std::uint32_t>((i + step) % n), r);
      adj[i].emplace_back(static_cast<std::uint32_t>((i - step + n) % n), r);
    }
  }
  g.finalize_from_adjacency(adj);
  return g;
}

Graph Graph::grid(int m, int k, double lambda, double lambda_e, const BuildLimits& limits) {
  check_rates(lambda, lambda_e);
  if (k < 2) throw validation_error("grid requires k >= 2");
  if (m < k) throw validation_error("grid requires m >= k");
  const std::int64_t n = static_cast<std::int64_t>(m) * k;
  if (n > limits.max_nodes) throw validation_error("grid exceeds node cap");

  Graph g;
  g.n_ = n;
  g.lambda_ = lambda;
  g.lambda_e_ = lambda_e;
  g.family_ = Family::grid;
  g.params_.n = n;
  g.params_.m = m;
  g.params_.k = k;

  // k rows of m columns, id = row*m + col. Wrap-around duplicates on a side
  // of length 2 collapse onto one neighbor; rates are summed.
  const double q = lambda / 4.0;
  std::vector<std::vector<std::pair<std::uint32_t, double>>> adj(n);
  for (int row = 0; row < k; ++row) {
    for (int col = 0; col < m; ++col) {
      const std::int64_t i = static_cast<std::int64_t>(row) * m + col;
      std::map<std::uint32_t, double> merged;
      const int steps[4][2] = {{0, 1}, {0, m - 1}, {1, 0}, {k - 1, 0}};
      for (auto& s : steps) {
        int rr = (row + s[0]) % k;
        int cc = (col + s[1]) % m;
        merged[static_cast<std::uint32_t>(rr) * m + cc] += q;
      }
      for (auto& [j, r] : merged) adj[i].emplace_back(j, r);
    }
  }
  g.finalize_from_adjacency(adj);
  return g;
}

Graph Graph::unit_hypercube(int m, double lambda, double lambda_e, const BuildLimits& limits) {
  check_rates(lambda, lambda_e);
  if (m < 1) throw validation_error("unit hypercube requires m >= 1");
  if (m > limits.max_hypercube_dim) throw validation_error("unit hypercube dimension exceeds cap");
  const std::int64_t n = std::int64_t{1} << m;
  if (n > limits.max_nodes) throw validation_error("unit hypercube exceeds node cap");

  Graph g;
  g.n_ = n;
  g.lambda_ = lambda;
  g.lambda_e_ = lambda_e;
  g.family_ = Family::unit_hypercube;
  g.params_.n = n;
  g.params_.m = m;

  const double r = lambda / m;
  std::vector<std::vector<std::pair<std::uint32_t, double>>> adj(n);
  for (std::int64_t i = 0; i < n; ++i)
    for (int b = 0; b < m; ++b)
      adj[i].emplace_back(static_cast<std::uint32_t>(i ^ (std::int64_t{1} << b)), r);
  g.finalize_from_adjacency(adj);
  return g;
}

Graph Graph::torus_hypercube(int m, int d, double lambda, double lambda_e, const BuildLimits& limits) {
  check_rates(lambda, lambda_e);
  if (m < 2) throw validation_error("torus hypercube requires m >= 2");
  if (d < 1) throw validation_error("torus hypercube requires d >= 1");
  std::int64_t n = 1;
  for (int i = 0; i < d; ++i) {
    n *= m;
    if (n > limits.max_nodes) throw validation_error("torus hypercube exceeds node cap");
  }

  Graph g;
  g.n_ = n;
  g.lambda_ = lambda;
  g.lambda_e_ = lambda_e;
  g.family_ = Family::torus_hypercube;
  g.params_.n = n;
  g.params_.m = m;
  g.params_.d = d;

  // Coordinate-radix ids: id = sum_i c_i * m^i. Side length 2 makes +1 and -1
  // hit the same node; those parallel edges are merged by summing rates.
  const double q = lambda / (2.0 * d);
  std::vector<std::vector<std::pair<std::uint32_t, double>>> adj(n);
  std::vector<std::int64_t> stride(d, 1);
  for (int i = 1; i < d; ++i) stride[i] = stride[i - 1] * m;
  for (std::int64_t id = 0; id < n; ++id) {
    std::map<std::uint32_t, double> merged;
    for (int axis = 0; axis < d; ++axis) {
      const int c = static_cast<int>((id / stride[axis]) % m);
      const std::int64_t base = id - static_cast<std::int64_t>(c) * stride[axis];
      merged[static_cast<std::uint32_t>(base + ((c + 1) % m) * stride[axis])] += q;
      merged[static_cast<std::uint32_t>(base + ((c - 1 + m) % m) * stride[axis])] += q;
    }
    for (auto& [j, r] : merged) adj[id].emplace_back(j, r);
  }
  g.finalize_from_adjacency(adj);
  return g;
}

Graph Graph::fully_connected(std::int64_t n, double lambda, double lambda_e, const BuildLimits& limits) {
  check_rates(lambda, lambda_e);
  if (n < 2) throw validation_error("fully connected requires n >= 2");
  if (n > limits.max_nodes) throw validation_error("fully connected exceeds node cap");

  Graph g;
  g.n_ = n;
  g.lambda_ = lambda;
  g.lambda_e_ = lambda_e;
  g.family_ = Family::fully_connected;
  g.params_.n = n;

  const double r = lambda / static_cast<double>(n - 1);
  std::vector<std::vector<std::pair<std::uint32_t, double>>> adj(n);
  for (std::int64_t i = 0; i < n; ++i)
    for (std::int64_t j = 0; j < n; ++j)
      if (i != j) adj[i].emplace_back(static_cast<std::uint32_t>(j), r);
  g.finalize_from_adjacency(adj);
  return g;
}

Graph Graph::from_edge_list(std::int64_t n, const std::vector<std::tuple<int, int, double>>& edges,
                            double lambda, double lambda_e) {
  check_rates(lambda, lambda_e);
  if (n < 1) throw validation_error("graph requires n >= 1");

  Graph g;
  g.n_ = n;
  g.lambda_ = lambda;
  g.lambda_e_ = lambda_e;
  g.family_ = Family::custom;
  g.params_.n = n;

  std::vector<std::map<std::uint32_t, double>> merged(n);
  for (auto& [i, j, r] : edges) {
    if (i < 0 || j < 0 || i >= n || j >= n) throw validation_error("edge endpoint out of range");
    if (i == j) throw validation_error("self loops are not allowed");
    if (r < 0.0) throw validation_error("edge rates must be nonnegative");
    if (r == 0.0) continue;
    merged[i][static_cast<std::uint32_t>(j)] += r;
    merged[j][static_cast<std::uint32_t>(i)] += r;
  }
  std::vector<std::vector<std::pair<std::uint32_t, double>>> adj(n);
  for (std::int64_t i = 0; i < n; ++i)
    for (auto& [j, r] : merged[i]) adj[i].emplace_back(j, r);
  g.finalize_from_adjacency(adj);
  return g;
}

double Graph::out_rate(int i) const {
  double s = 0.0;
  for (double r : rates(i)) s += r;
  return s;
}

double Graph::rate(int i, int j) const {
  auto nb = neighbors(i);
  auto it = std::lower_bound(nb.begin(), nb.end(), static_cast<std::uint32_t>(j));
  if (it == nb.end() || *it != static_cast<std::uint32_t>(j)) return 0.0;
  return rate_[offsets_[i] + static_cast<std::size_t>(it - nb.begin())];
}

bool Graph::is_connected() const {
  if (n_ == 0) return false;
  std::vector<char> seen(n_, 0);
  std::vector<std::uint32_t> stack{0};
  seen[0] = 1;
  std::int64_t reached = 1;
  while (!stack.empty()) {
    std::uint32_t v = stack.back();
    stack.pop_back();
    for (std::uint32_t u : neighbors(static_cast<int>(v))) {
      if (!seen[u]) {
        seen[u] = 1;
        ++reached;
        stack.push_back(u);
      }
    }
  }
  return reached == n_;
}

std::string Graph::params_string() const {
  std::ostringstream os;
  switch (family_) {
    case Family::ring: os << "n=" << params_.n << ";f=" << params_.f; break;
    case Family::grid: os << "m=" << params_.m << ";k=" << params_.k; break;
    case Family::unit_hypercube: os << "m=" << params_.m; break;
    case Family::torus_hypercube: os << "m=" << params_.m << ";d=" << params_.d; break;
    case Family::fully_connected: os << "n=" << params_.n; break;
    case Family::custom: os << "n=" << params_.n; break;
  }
  return os.str();
}

TopologySummary summarize(const Graph& g) {
  TopologySummary s;
  s.n = g.n();
  std::map<int, std::int64_t> hist;
  s.min_rate_sum = s.max_rate_sum = g.out_rate(0);
  for (std::int64_t i = 0; i < g.n(); ++i) {
    hist[g.degree(static_cast<int>(i))]++;
    double r = g.out_rate(static_cast<int>(i));
    s.min_rate_sum = std::min(s.min_rate_sum, r);
    s.max_rate_sum = std::max(s.max_rate_sum, r);
  }
  s.degree_histogram.assign(hist.begin(), hist.end());
  return s;
}

} // namespace gossipage
