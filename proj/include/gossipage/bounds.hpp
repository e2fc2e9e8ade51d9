#pragma once

#include <cstdint>
#include <vector>

#include "gossipage/topology.hpp"

namespace gossipage {

/// One-step upper bound on v_S given the largest one-expanded age:
///   (lambda_e + |N(S)| min_rate v_next) / (lambda0_S + |N(S)| min_rate).
double lemma1_step(double lambda_e, double lambda0_S, std::int64_t neighbor_count,
                   double min_rate, double v_next);

/// One-step lower bound, max rate and smallest one-expanded age.
double lemma2_step(double lambda_e, double lambda0_S, std::int64_t neighbor_count,
                   double max_rate, double v_next);

/// Backward evaluation v_n, v_{n-1}, ..., v_1 of a piecewise one-step upper
/// bound, anchored at v_n = lambda_e / lambda. values[] is populated only
/// when the chain is stored (always for n <= store_threshold).
struct BoundChain {
  Family family = Family::custom;
  GraphParams params;
  double lambda_e = 1.0;
  double lambda = 1.0;
  std::int64_t n = 0;
  double v1 = 0.0;
  bool conjecture = false;
  std::vector<double> values;                  // values[j-1] = v_j when stored
  std::vector<std::int64_t> regime_thresholds; // j-values where the recursion switches piece

  bool stored() const { return !values.empty(); }
  double at(std::int64_t j) const { return values.at(static_cast<std::size_t>(j - 1)); }
};

struct ChainOptions {
  std::int64_t store_threshold = 100'000; // keep the full chain up to this n
  bool store_full = false;                // force storing regardless of n
};

BoundChain grid_bound_chain(int m, int k, double lambda_e = 1.0, double lambda = 1.0,
                            const ChainOptions& opts = {});
BoundChain ring_bound_chain(std::int64_t n, std::int64_t f, double lambda_e = 1.0,
                            double lambda = 1.0, const ChainOptions& opts = {});
BoundChain unit_hypercube_bound_chain(int m, double lambda_e = 1.0, double lambda = 1.0,
                                      const ChainOptions& opts = {});
/// Conjectural d-dimensional torus chain; d = 2 reduces to the square-grid
/// exponent and is provided for slope comparisons.
BoundChain ddim_bound_chain(int m, int d, double lambda_e = 1.0, double lambda = 1.0,
                            const ChainOptions& opts = {});
/// Complete-graph chain; one-expansion is exact by symmetry there.
BoundChain fully_connected_bound_chain(std::int64_t n, double lambda_e = 1.0,
                                       double lambda = 1.0, const ChainOptions& opts = {});

// Closed-form upper bounds. Logs are natural except for the explicitly
// base-2 hypercube form.
double grid_closed_form(int m, int k, double lambda_e = 1.0, double lambda = 1.0);
double grid_asymptotic(double n, double lambda_e = 1.0, double lambda = 1.0); // 3.764 n^(1/3)
double ring_closed_form(std::int64_t n, double f, double lambda_e = 1.0, double lambda = 1.0);
double fully_connected_closed_form(std::int64_t n, double lambda_e = 1.0, double lambda = 1.0);
double fixed_d_ring_closed_form(std::int64_t n, int d, double lambda_e = 1.0,
                                double lambda = 1.0);
double ring_alpha_closed_form(std::int64_t n, double alpha, double lambda_e = 1.0,
                              double lambda = 1.0);
double hypercube_closed_form(int m, double lambda_e = 1.0, double lambda = 1.0);

/// Constants of the grid analysis. beta is computed two independent ways
/// (adaptive quadrature of the defining integral and the Gamma-function
/// closed form); both are reported so agreement can be checked.
struct Constants {
  double gamma;           // Euler-Mascheroni
  double beta_quadrature; // integral of t^(-1/2) exp(-(2/3) t^(3/2)) over (0, inf)
  double beta_closed_form; // (2/3)^(2/3) Gamma(1/3)
  double beta_prime;       // exp(-gamma/2) exp(pi^2/48) beta
  double delta_bound;      // pi^2/48
};

Constants compute_constants();

/// Per-dimension analogues for the d-dimensional chain analysis.
struct DimensionConstants {
  double C; // exp((d-1) pi^2 / (6 d^2))
  double L_quadrature;
  double L_closed_form; // (d/(d+1))^(d/(d+1)) Gamma(1/(d+1))
};

DimensionConstants compute_dimension_constants(int d);

/// Network size where the sqrt(pi) sqrt(n/f) term of the generalized-ring
/// closed form reaches ten times its 2 log f term, with f = n^alpha real
/// valued. Root found numerically; requires alpha in (0, 1).
double ring_crossover_n(double alpha);

} // namespace gossipage
