#pragma once

#include <cmath>
#include <cstdint>
#include <span>
#include <vector>

namespace gossipage {

/// SplitMix64: counter-based 64-bit generator.
///
/// Output i for seed s is mix(s + (i+1) * 0x9E3779B97F4A7C15), so streams are
/// reproducible across platforms and replication sub-seeds can be derived with
/// the stateless mix() without sharing state between threads.
class SplitMix64 {
public:
  explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

  static std::uint64_t mix(std::uint64_t z) {
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
  }

  std::uint64_t next() {
    state_ += 0x9E3779B97F4A7C15ull;
    return mix(state_);
  }

  /// Uniform double in [0, 1), 53 random bits.
  double next_double() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

  /// Exponential inter-event time with the given total rate.
  double next_exponential(double rate) { return -std::log(1.0 - next_double()) / rate; }

  /// Sub-seed for replication r; pure function of (seed, r).
  static std::uint64_t derive(std::uint64_t seed, std::uint64_t index) {
    return mix(seed ^ (0xD1342543DE82EF95ull * (index + 1)));
  }

private:
  std::uint64_t state_;
};

/// Walker alias table for O(1) categorical sampling.
class AliasTable {
public:
  AliasTable() = default;

  explicit AliasTable(std::span<const double> weights) { init(weights); }

  void init(std::span<const double> weights) {
    const std::size_t k = weights.size();
    prob_.assign(k, 1.0);
    alias_.assign(k, 0);
    double total = 0.0;
    for (double w : weights) total += w;
    std::vector<double> scaled(k);
    std::vector<std::uint32_t> small, large;
    for (std::size_t i = 0; i < k; ++i) {
      scaled[i] = weights[i] * static_cast<double>(k) / total;
      (scaled[i] < 1.0 ? small : large).push_back(static_cast<std::uint32_t>(i));
    }
    while (!small.empty() && !large.empty()) {
      std::uint32_t s = small.back();
      std::uint32_t l = large.back();
      small.pop_back();
      prob_[s] = scaled[s];
      alias_[s] = l;
      scaled[l] = scaled[l] + scaled[s] - 1.0;
      if (scaled[l] < 1.0) {
        large.pop_back();
        small.push_back(l);
      }
    }
    // leftovers are 1.0 within rounding
  }

  std::size_t size() const { return prob_.size(); }

  /// Sample from one uniform draw: the integer part picks the column, the
  /// fractional part tosses the coin.
  std::uint32_t sample(double u01) const {
    const std::size_t k = prob_.size();
    double scaled = u01 * static_cast<double>(k);
    auto col = static_cast<std::size_t>(scaled);
    if (col >= k) col = k - 1;
    double frac = scaled - static_cast<double>(col);
    return frac < prob_[col] ? static_cast<std::uint32_t>(col) : alias_[col];
  }

private:
  std::vector<double> prob_;
  std::vector<std::uint32_t> alias_;
};

} // namespace gossipage
