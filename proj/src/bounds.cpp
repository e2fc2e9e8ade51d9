#include "gossipage/bounds.hpp"

#include <bit>
#include <cmath>
#include <functional>
#include <numbers>

namespace gossipage {

double lemma1_step(double lambda_e, double lambda0_S, std::int64_t neighbor_count,
                   double min_rate, double v_next) {
  const double w = static_cast<double>(neighbor_count) * min_rate;
  const double den = lambda0_S + w;
  if (den <= 0.0) throw validation_error("degenerate set: zero total inflow rate");
  return (lambda_e + w * v_next) / den;
}

double lemma2_step(double lambda_e, double lambda0_S, std::int64_t neighbor_count,
                   double max_rate, double v_next) {
  const double w = static_cast<double>(neighbor_count) * max_rate;
  const double den = lambda0_S + w;
  if (den <= 0.0) throw validation_error("degenerate set: zero total inflow rate");
  return (lambda_e + w * v_next) / den;
}

namespace {

void check_chain_rates(double lambda_e, double lambda) {
  if (!(lambda > 0.0) || !(lambda_e > 0.0))
    throw validation_error("bound chains require positive lambda and lambda_e");
}

// Backward loop skeleton shared by every chain. coeff(j) is the edge-driven
// weight of v_{j+1}; numerator(j) the lambda_e multiple in the step.
template <class Coeff, class Numer>
BoundChain evaluate_chain(std::int64_t n, double lambda_e, double lambda, Coeff coeff,
                          Numer numerator, const ChainOptions& opts) {
  BoundChain chain;
  chain.n = n;
  chain.lambda_e = lambda_e;
  chain.lambda = lambda;
  const bool store = opts.store_full || n <= opts.store_threshold;
  if (store) chain.values.assign(static_cast<std::size_t>(n), 0.0);
  double v = lambda_e / lambda; // v_n
  if (store) chain.values[static_cast<std::size_t>(n - 1)] = v;
  for (std::int64_t j = n - 1; j >= 1; --j) {
    const double c = coeff(j);
    const double num = numerator(j);
    v = (num + c * v) / (static_cast<double>(j) / static_cast<double>(n) + c);
    if (store) chain.values[static_cast<std::size_t>(j - 1)] = v;
  }
  chain.v1 = v;
  return chain;
}

int ceil_log2_int(std::int64_t j) {
  return j <= 1 ? 0 : std::bit_width(static_cast<std::uint64_t>(j - 1));
}

} // namespace

BoundChain grid_bound_chain(int m, int k, double lambda_e, double lambda,
                            const ChainOptions& opts) {
  check_chain_rates(lambda_e, lambda);
  if (k < 2 || m < k) throw validation_error("grid chain requires m >= k >= 2");
  const std::int64_t n = static_cast<std::int64_t>(m) * k;
  const auto t1 = static_cast<std::int64_t>(std::floor(static_cast<double>(k) * k / 4.0));
  const auto t2 = static_cast<std::int64_t>(
      std::floor(static_cast<double>(n) - static_cast<double>(k) * k / 4.0));
  const double r = lambda_e / lambda;
  auto chain = evaluate_chain(
      n, lambda_e, lambda,
      [&](std::int64_t j) -> double {
        if (j <= t1) return std::sqrt(static_cast<double>(j));
        if (j <= t2) return static_cast<double>(k);
        return std::floor(std::sqrt(static_cast<double>(n - j)));
      },
      [&](std::int64_t j) -> double { return j <= t2 ? 2.0 * r : r; }, opts);
  chain.family = Family::grid;
  chain.params.n = n;
  chain.params.m = m;
  chain.params.k = k;
  chain.regime_thresholds = {t1, t2};
  return chain;
}

BoundChain ring_bound_chain(std::int64_t n, std::int64_t f, double lambda_e, double lambda,
                            const ChainOptions& opts) {
  check_chain_rates(lambda_e, lambda);
  if (n < 3 || f < 1 || f > (n - 1) / 2)
    throw validation_error("ring chain requires n >= 3 and 1 <= f <= floor((n-1)/2)");
  const double r = lambda_e / lambda;
  const double fd = static_cast<double>(f);
  auto chain = evaluate_chain(
      n, lambda_e, lambda,
      [&](std::int64_t j) -> double {
        if (j <= f) {
          const double jd = static_cast<double>(j);
          return (2.0 * jd * fd - jd * (jd - 1.0)) / (2.0 * fd);
        }
        if (j < n - f) return (fd + 1.0) / 2.0;
        const double c = static_cast<double>(n - j);
        return (2.0 * c * fd - c * (c - 1.0)) / (2.0 * fd);
      },
      [&](std::int64_t) { return r; }, opts);
  chain.family = Family::ring;
  chain.params.n = n;
  chain.params.f = static_cast<int>(f);
  chain.regime_thresholds = {f, n - f};
  return chain;
}

BoundChain unit_hypercube_bound_chain(int m, double lambda_e, double lambda,
                                      const ChainOptions& opts) {
  check_chain_rates(lambda_e, lambda);
  if (m < 1) throw validation_error("hypercube chain requires m >= 1");
  if (m > 62) throw validation_error("hypercube chain dimension too large");
  const std::int64_t n = std::int64_t{1} << m;
  const std::int64_t half = n / 2;
  const double r = lambda_e / lambda;
  auto chain = evaluate_chain(
      n, lambda_e, lambda,
      [&](std::int64_t j) -> double {
        const std::int64_t a = j <= half ? j : n - j;
        return static_cast<double>(a) * (m - ceil_log2_int(a)) / static_cast<double>(m);
      },
      [&](std::int64_t) { return r; }, opts);
  chain.family = Family::unit_hypercube;
  chain.params.n = n;
  chain.params.m = m;
  chain.regime_thresholds = {half};
  return chain;
}

BoundChain ddim_bound_chain(int m, int d, double lambda_e, double lambda,
                            const ChainOptions& opts) {
  check_chain_rates(lambda_e, lambda);
  if (d < 2) throw validation_error("d-dimensional chain requires d >= 2");
  if (m < 2) throw validation_error("d-dimensional chain requires m >= 2");
  std::int64_t n = 1;
  for (int i = 0; i < d; ++i) {
    if (n > (std::int64_t{1} << 40) / m)
      throw validation_error("d-dimensional chain size overflows");
    n *= m;
  }
  const double r = lambda_e / lambda;
  const double expo = (static_cast<double>(d) - 1.0) / static_cast<double>(d);
  auto chain = evaluate_chain(
      n, lambda_e, lambda,
      [&](std::int64_t j) -> double {
        const std::int64_t a = 2 * j <= n ? j : n - j;
        return std::pow(static_cast<double>(a), expo);
      },
      [&](std::int64_t) { return 2.0 * d * r; }, opts);
  chain.family = Family::torus_hypercube;
  chain.params.n = n;
  chain.params.m = m;
  chain.params.d = d;
  chain.regime_thresholds = {n / 2};
  chain.conjecture = true;
  return chain;
}

BoundChain fully_connected_bound_chain(std::int64_t n, double lambda_e, double lambda,
                                       const ChainOptions& opts) {
  check_chain_rates(lambda_e, lambda);
  if (n < 2) throw validation_error("fully connected chain requires n >= 2");
  const double r = lambda_e / lambda;
  auto chain = evaluate_chain(
      n, lambda_e, lambda,
      [&](std::int64_t j) -> double {
        return static_cast<double>(j) * static_cast<double>(n - j) / static_cast<double>(n - 1);
      },
      [&](std::int64_t) { return r; }, opts);
  chain.family = Family::fully_connected;
  chain.params.n = n;
  chain.regime_thresholds = {};
  return chain;
}

double grid_closed_form(int m, int k, double lambda_e, double lambda) {
  if (k < 2 || m < k) throw validation_error("grid closed form requires m >= k >= 2");
  const Constants c = compute_constants();
  const double n = static_cast<double>(m) * k;
  const double boundary = 2.0 * std::sqrt(2.0 * std::numbers::pi) *
                          std::exp(-static_cast<double>(k) * k / (48.0 * m)) * std::sqrt(m);
  return lambda_e / lambda *
         (2.0 + c.beta_prime * std::cbrt(n) + boundary + 8.0 * std::sqrt(static_cast<double>(k)));
}

double grid_asymptotic(double n, double lambda_e, double lambda) {
  if (!(n > 0)) throw validation_error("grid asymptotic requires n > 0");
  return 3.764 * lambda_e / lambda * std::cbrt(n);
}

double ring_closed_form(std::int64_t n, double f, double lambda_e, double lambda) {
  if (n < 2 || !(f >= 1.0)) throw validation_error("ring closed form requires n >= 2, f >= 1");
  const double r = lambda_e / lambda;
  return r * (5.0 + std::log(2.0) + 2.0 * std::log(f) + std::numbers::egamma) +
         std::sqrt(std::numbers::pi) * r * std::sqrt(static_cast<double>(n) / f);
}

double fully_connected_closed_form(std::int64_t n, double lambda_e, double lambda) {
  if (n < 2) throw validation_error("fully connected closed form requires n >= 2");
  return lambda_e / lambda * (2.0 + std::log(static_cast<double>(n - 1)));
}

double fixed_d_ring_closed_form(std::int64_t n, int d, double lambda_e, double lambda) {
  if (n < 2 || d < 1) throw validation_error("fixed-d ring closed form requires n >= 2, d >= 1");
  return std::sqrt(std::numbers::pi) * lambda_e / lambda * std::sqrt(static_cast<double>(n)) /
         std::pow(static_cast<double>(d), 1.5);
}

double ring_alpha_closed_form(std::int64_t n, double alpha, double lambda_e, double lambda) {
  if (n < 2 || alpha < 0.0 || alpha >= 1.0)
    throw validation_error("alpha ring closed form requires n >= 2, 0 <= alpha < 1");
  return std::sqrt(std::numbers::pi) * lambda_e / lambda *
         std::pow(static_cast<double>(n), (1.0 - alpha) / 2.0);
}

double hypercube_closed_form(int m, double lambda_e, double lambda) {
  if (m < 1) throw validation_error("hypercube closed form requires m >= 1");
  const double md = static_cast<double>(m);
  return lambda_e / lambda *
         (3.0 + 16.0 / 3.0 * md + std::log(2.0) * md * std::log2(md));
}

namespace {

// Adaptive Simpson on [a, b] to absolute tolerance tol.
double adaptive_simpson(const std::function<double(double)>& f, double a, double b, double fa,
                        double fb, double fm, double whole, double tol, int depth) {
  const double m = 0.5 * (a + b);
  const double lm = 0.5 * (a + m);
  const double rm = 0.5 * (m + b);
  const double flm = f(lm);
  const double frm = f(rm);
  const double left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
  const double right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
  const double delta = left + right - whole;
  if (depth <= 0) throw std::runtime_error("quadrature failed to converge");
  if (std::abs(delta) <= 15.0 * tol) return left + right + delta / 15.0;
  return adaptive_simpson(f, a, m, fa, fm, flm, left, tol / 2.0, depth - 1) +
         adaptive_simpson(f, m, b, fm, fb, frm, right, tol / 2.0, depth - 1);
}

double integrate(const std::function<double(double)>& f, double a, double b, double tol) {
  const double fa = f(a);
  const double fb = f(b);
  const double fm = f(0.5 * (a + b));
  const double whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
  return adaptive_simpson(f, a, b, fa, fb, fm, whole, tol, 60);
}

// The defining integral of L_d has an integrable t^(-(d-1)/d) singularity at
// zero; t = s^d turns it into d * exp(-(d/(d+1)) s^(d+1)), smooth with fast decay.
double dimension_integral(int d) {
  const double dd = static_cast<double>(d);
  const double coef = dd / (dd + 1.0);
  const double upper = std::pow(80.0 / coef, 1.0 / (dd + 1.0));
  return integrate([&](double s) { return dd * std::exp(-coef * std::pow(s, dd + 1.0)); }, 0.0,
                   upper, 1e-12);
}

} // namespace

Constants compute_constants() {
  Constants c;
  c.gamma = std::numbers::egamma;
  c.delta_bound = std::numbers::pi * std::numbers::pi / 48.0;
  c.beta_quadrature = dimension_integral(2);
  c.beta_closed_form = std::pow(2.0 / 3.0, 2.0 / 3.0) * std::tgamma(1.0 / 3.0);
  c.beta_prime = std::exp(-c.gamma / 2.0) * std::exp(c.delta_bound) * c.beta_closed_form;
  return c;
}

DimensionConstants compute_dimension_constants(int d) {
  if (d < 2) throw validation_error("dimension constants require d >= 2");
  DimensionConstants out;
  const double dd = static_cast<double>(d);
  out.C = std::exp((dd - 1.0) * std::numbers::pi * std::numbers::pi / (6.0 * dd * dd));
  out.L_quadrature = dimension_integral(d);
  out.L_closed_form =
      std::pow(dd / (dd + 1.0), dd / (dd + 1.0)) * std::tgamma(1.0 / (dd + 1.0));
  return out;
}

double ring_crossover_n(double alpha) {
  if (!(alpha > 0.0) || !(alpha < 1.0))
    throw validation_error("crossover requires 0 < alpha < 1");
  // rational_term(n) = sqrt(pi) sqrt(n / n^alpha) grows polynomially while the
  // log term 2 log(n^alpha) grows slowly, so the gap has a single sign change.
  auto gap = [&](double n) {
    const double f = std::pow(n, alpha);
    return std::sqrt(std::numbers::pi) * std::sqrt(n / f) - 10.0 * 2.0 * std::log(f);
  };
  double lo = 2.0;
  if (gap(lo) >= 0.0) return 0.0; // dominates from the start
  double hi = 4.0;
  while (gap(hi) < 0.0) {
    hi *= 2.0;
    if (hi > 1e300) throw std::runtime_error("crossover search overflow");
  }
  for (int i = 0; i < 200; ++i) {
    const double mid = std::sqrt(lo * hi); // geometric bisection
    (gap(mid) < 0.0 ? lo : hi) = mid;
  }
  return std::sqrt(lo * hi);
}

} // namespace gossipage
