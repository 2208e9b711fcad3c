#pragma once
// Core vocabulary types: validated probabilities, scored samples, datasets,
// and the deterministic train/val/test split.

#include <cmath>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "ptcal/rng.hpp"

namespace ptcal {

// Single project-wide exception type; messages are single-line and specific.
class error : public std::runtime_error {
 public:
  explicit error(const std::string& msg) : std::runtime_error(msg) {}
};

// Numerically stable in both tails; result is always in (0,1) for finite z.
inline double sigmoid(double z) {
  if (z >= 0.0) {
    return 1.0 / (1.0 + std::exp(-z));
  }
  const double e = std::exp(z);
  return e / (1.0 + e);
}

// Inverse of sigmoid. Unbounded: logit(0) = -inf, logit(1) = +inf.
inline double logit(double p) { return std::log(p / (1.0 - p)); }

inline double clamp01(double x) {
  if (x < 0.0) return 0.0;
  if (x > 1.0) return 1.0;
  return x;
}

// A double constrained to [0,1]; construction validates.
class Probability {
 public:
  Probability() = default;
  explicit Probability(double v) : v_(checked(v)) {}

  double value() const { return v_; }

  friend bool operator==(Probability a, Probability b) { return a.v_ == b.v_; }
  friend bool operator<(Probability a, Probability b) { return a.v_ < b.v_; }

 private:
  static double checked(double v) {
    if (!(v >= 0.0 && v <= 1.0)) {
      throw error("probability out of range [0,1]: " + std::to_string(v));
    }
    return v;
  }
  double v_ = 0.0;
};

inline Probability validate_probability(double v) { return Probability(v); }

// One scored, labeled sample. The optional logit, when present, must agree
// with the score (sigmoid(logit) == score within 1e-6).
struct ScoredSample {
  Probability score;
  int label = 0;                 // 0 or 1
  std::optional<double> logit;   // pre-sigmoid score, if known
};

inline constexpr double kLogitConsistencyTol = 1e-6;

inline ScoredSample make_sample(double score, int label,
                                std::optional<double> logit_value = {}) {
  if (label != 0 && label != 1) {
    throw error("label must be 0 or 1, got " + std::to_string(label));
  }
  ScoredSample s;
  s.score = Probability(score);
  s.label = label;
  if (logit_value) {
    if (!std::isfinite(*logit_value)) {
      throw error("logit must be finite");
    }
    if (std::abs(sigmoid(*logit_value) - score) > kLogitConsistencyTol) {
      throw error("logit inconsistent with score: sigmoid(" +
                  std::to_string(*logit_value) + ") != " +
                  std::to_string(score));
    }
    s.logit = logit_value;
  }
  return s;
}

using Dataset = std::vector<ScoredSample>;

inline std::vector<double> scores_of(const Dataset& d) {
  std::vector<double> out;
  out.reserve(d.size());
  for (const auto& s : d) out.push_back(s.score.value());
  return out;
}

inline std::vector<int> labels_of(const Dataset& d) {
  std::vector<int> out;
  out.reserve(d.size());
  for (const auto& s : d) out.push_back(s.label);
  return out;
}

// Fractions must be positive and sum to 1 (within 1e-9).
struct SplitSpec {
  double train_frac = 0.8;
  double val_frac = 0.1;
  double test_frac = 0.1;
  std::uint64_t seed = 42;
};

inline void validate_split_spec(const SplitSpec& s) {
  if (!(s.train_frac > 0.0 && s.val_frac > 0.0 && s.test_frac > 0.0)) {
    throw error("split fractions must be positive");
  }
  const double sum = s.train_frac + s.val_frac + s.test_frac;
  if (std::abs(sum - 1.0) > 1e-9) {
    throw error("split fractions must sum to 1, got " + std::to_string(sum));
  }
}

struct Split {
  Dataset train;
  Dataset val;
  Dataset test;
};

// Deterministic shuffle (Fisher-Yates under spec.seed), then contiguous
// cut into train|val|test. Sizes are floor(n*frac) with the remainder
// assigned to train; a 1e-9 epsilon inside the floor keeps exact fractions
// like 1/3 from rounding down spuriously.
inline Split split_dataset(const Dataset& data, const SplitSpec& spec) {
  validate_split_spec(spec);
  if (data.empty()) throw error("empty dataset");

  const std::size_t n = data.size();
  std::vector<std::size_t> idx(n);
  for (std::size_t i = 0; i < n; ++i) idx[i] = i;
  Engine eng(spec.seed);
  shuffle(idx, eng);

  const auto sized = [n](double frac) {
    return static_cast<std::size_t>(
        std::floor(static_cast<double>(n) * frac + 1e-9));
  };
  const std::size_t n_val = sized(spec.val_frac);
  const std::size_t n_test = sized(spec.test_frac);
  if (n_val + n_test > n) throw error("split fractions leave no training data");
  const std::size_t n_train = n - n_val - n_test;

  Split out;
  out.train.reserve(n_train);
  out.val.reserve(n_val);
  out.test.reserve(n_test);
  for (std::size_t i = 0; i < n_train; ++i) out.train.push_back(data[idx[i]]);
  for (std::size_t i = 0; i < n_val; ++i)
    out.val.push_back(data[idx[n_train + i]]);
  for (std::size_t i = 0; i < n_test; ++i)
    out.test.push_back(data[idx[n_train + n_val + i]]);
  return out;
}

}  // namespace ptcal
