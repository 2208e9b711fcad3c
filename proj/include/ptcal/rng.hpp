#pragma once
// Deterministic randomness: one master seed, purpose-derived streams, and
// hand-rolled variate transforms over std::mt19937_64 (whose output sequence
// is fixed by the standard). std::*_distribution is deliberately avoided --
// those are implementation-defined and break bit-reproducibility.

#include <cstdint>
#include <cmath>
#include <numbers>
#include <random>
#include <string_view>
#include <vector>

namespace ptcal {

// Identifier recorded in report headers so outputs are self-describing.
inline constexpr std::string_view kRngAlgorithm = "mt19937_64";

// Stream ids for per-purpose seed derivation from the master seed.
enum class SeedStream : std::uint64_t {
  split = 0,           // dataset shuffling for train/val/test splits
  synth = 1,           // synthetic score/label generation
  outcome_shuffle = 2, // random_outcomes arm label permutation
  study = 3,           // base for per-agent simulation streams
};

namespace detail {
inline std::uint64_t splitmix64(std::uint64_t z) {
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}
}  // namespace detail

// derive_seed(master, k) gives independent-looking streams for each purpose.
// Distinct k always changes the splitmix64 input, so streams never collide
// for a fixed master seed.
inline std::uint64_t derive_seed(std::uint64_t master, std::uint64_t stream) {
  return detail::splitmix64(master + 0x9E3779B97F4A7C15ULL * (stream + 1));
}

inline std::uint64_t derive_seed(std::uint64_t master, SeedStream stream) {
  return derive_seed(master, static_cast<std::uint64_t>(stream));
}

class Engine {
 public:
  explicit Engine(std::uint64_t seed) : gen_(seed) {}

  std::uint64_t next_u64() { return gen_(); }

  // Uniform in [0,1), 53-bit resolution.
  double next_unit() {
    return static_cast<double>(gen_() >> 11) * 0x1.0p-53;
  }

  // Uniform in (0,1]; safe as a log() argument.
  double next_unit_open() {
    return static_cast<double>((gen_() >> 11) + 1) * 0x1.0p-53;
  }

  // Unbiased integer in [0, bound) via rejection. bound must be > 0.
  std::uint64_t next_below(std::uint64_t bound) {
    const std::uint64_t threshold = (0 - bound) % bound;  // 2^64 mod bound
    for (;;) {
      const std::uint64_t x = gen_();
      if (x >= threshold) return x % bound;
    }
  }

  int next_bernoulli(double p) { return next_unit() < p ? 1 : 0; }

  // Box-Muller without caching: always consumes exactly two uniforms.
  double next_gaussian() {
    const double u1 = next_unit_open();
    const double u2 = next_unit();
    return std::sqrt(-2.0 * std::log(u1)) *
           std::cos(2.0 * std::numbers::pi * u2);
  }

  // Marsaglia-Tsang; shape < 1 handled via the gamma(shape+1) boost.
  double next_gamma(double shape) {
    if (shape < 1.0) {
      const double g = next_gamma(shape + 1.0);
      return g * std::pow(next_unit_open(), 1.0 / shape);
    }
    const double d = shape - 1.0 / 3.0;
    const double c = 1.0 / std::sqrt(9.0 * d);
    for (;;) {
      const double x = next_gaussian();
      const double t = 1.0 + c * x;
      if (t <= 0.0) continue;
      const double v = t * t * t;
      const double u = next_unit_open();
      if (u < 1.0 - 0.0331 * x * x * x * x) return d * v;
      if (std::log(u) < 0.5 * x * x + d * (1.0 - v + std::log(v))) return d * v;
    }
  }

  double next_beta(double alpha, double beta) {
    const double x = next_gamma(alpha);
    const double y = next_gamma(beta);
    const double s = x + y;
    if (s <= 0.0) return 0.5;  // both underflowed; only possible for tiny shapes
    return x / s;
  }

 private:
  std::mt19937_64 gen_;
};

// Fisher-Yates; identical results on every platform for a given engine state.
template <typename T>
void shuffle(std::vector<T>& v, Engine& eng) {
  if (v.size() < 2) return;
  for (std::size_t i = v.size() - 1; i > 0; --i) {
    const std::size_t j = static_cast<std::size_t>(eng.next_below(i + 1));
    using std::swap;
    swap(v[i], v[j]);
  }
}

// First k entries of a random permutation of {0,..,n-1} (partial Fisher-Yates).
inline std::vector<std::size_t> sample_indices(std::size_t n, std::size_t k,
                                               Engine& eng) {
  std::vector<std::size_t> idx(n);
  for (std::size_t i = 0; i < n; ++i) idx[i] = i;
  if (k > n) k = n;
  for (std::size_t i = 0; i < k; ++i) {
    const std::size_t j = i + static_cast<std::size_t>(eng.next_below(n - i));
    std::swap(idx[i], idx[j]);
  }
  idx.resize(k);
  return idx;
}

}  // namespace ptcal
