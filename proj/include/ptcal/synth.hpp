#pragma once
// Synthetic miscalibrated-score generator: draw true probabilities r from a
// chosen law, emit labels y ~ Bernoulli(r) and reported scores distortion(r),
// so the correct calibration map is known in closed form.

#include <cmath>
#include <cstdint>
#include <string>

#include "ptcal/core.hpp"
#include "ptcal/pt.hpp"
#include "ptcal/rng.hpp"

namespace ptcal {

inline constexpr double kLogitClamp = 30.0;

inline double clamped_logit(double p) {
  if (p <= 0.0) return -kLogitClamp;
  if (p >= 1.0) return kLogitClamp;
  const double z = logit(p);
  if (z < -kLogitClamp) return -kLogitClamp;
  if (z > kLogitClamp) return kLogitClamp;
  return z;
}

enum class DistortionKind { identity, temperature, pt_weight, logistic };

inline std::string distortion_name(DistortionKind k) {
  switch (k) {
    case DistortionKind::identity: return "identity";
    case DistortionKind::temperature: return "temperature";
    case DistortionKind::pt_weight: return "pt";
    case DistortionKind::logistic: return "logistic";
  }
  throw error("unknown distortion kind");
}

inline DistortionKind distortion_from_name(const std::string& name) {
  if (name == "identity") return DistortionKind::identity;
  if (name == "temperature") return DistortionKind::temperature;
  if (name == "pt") return DistortionKind::pt_weight;
  if (name == "logistic") return DistortionKind::logistic;
  throw error("unknown distortion kind: " + name);
}

enum class TrueProbLaw { uniform, beta };

inline std::string law_name(TrueProbLaw l) {
  return l == TrueProbLaw::uniform ? "uniform" : "beta";
}

inline TrueProbLaw law_from_name(const std::string& name) {
  if (name == "uniform") return TrueProbLaw::uniform;
  if (name == "beta") return TrueProbLaw::beta;
  throw error("unknown true-probability law: " + name);
}

struct DistortionSpec {
  DistortionKind kind = DistortionKind::identity;
  double t = 2.0;          // temperature kind: score = sigmoid(t * logit(r))
  double gamma = kGammaDefault;  // pt kind: score = w(r; gamma)
  double a = 2.0;          // logistic kind: score = clamp((logit(r)-b)/a, 0, 1)
  double b = -1.0;
  std::uint64_t seed = 0;
  std::size_t n = 0;
  TrueProbLaw law = TrueProbLaw::uniform;
  double alpha = 1.0;      // beta-law parameters
  double beta = 1.0;
};

inline void validate_distortion_spec(const DistortionSpec& spec) {
  if (spec.n < 1) throw error("synthetic sample count must be >= 1");
  switch (spec.kind) {
    case DistortionKind::temperature:
      if (!(spec.t > 0.0) || !std::isfinite(spec.t)) {
        throw error("temperature distortion requires t > 0");
      }
      break;
    case DistortionKind::pt_weight:
      validate_gamma(spec.gamma);
      break;
    case DistortionKind::logistic:
      if (!(spec.a > 0.0) || !std::isfinite(spec.a) || !std::isfinite(spec.b)) {
        throw error("logistic distortion requires a > 0 and finite b");
      }
      break;
    case DistortionKind::identity:
      break;
  }
  if (spec.law == TrueProbLaw::beta) {
    if (!(spec.alpha > 0.0) || !(spec.beta > 0.0)) {
      throw error("beta law requires positive alpha and beta");
    }
  }
}

namespace detail {
inline double distort(const DistortionSpec& spec, double r) {
  switch (spec.kind) {
    case DistortionKind::identity:
      return r;
    case DistortionKind::temperature:
      if (r <= 0.0) return 0.0;
      if (r >= 1.0) return 1.0;
      return sigmoid(spec.t * logit(r));
    case DistortionKind::pt_weight:
      return pt_weight(Probability(r), PTParams{spec.gamma}).value();
    case DistortionKind::logistic:
      if (r <= 0.0) return 0.0;
      if (r >= 1.0) return 1.0;
      return clamp01((logit(r) - spec.b) / spec.a);
  }
  throw error("unknown distortion kind");
}
}  // namespace detail

// Per sample, in order: draw r from the law, then the label coin. All draws
// come from one engine seeded with spec.seed, so output is bit-reproducible.
inline Dataset generate(const DistortionSpec& spec) {
  validate_distortion_spec(spec);
  Engine eng(spec.seed);
  Dataset out;
  out.reserve(spec.n);
  for (std::size_t i = 0; i < spec.n; ++i) {
    const double r = spec.law == TrueProbLaw::uniform
                         ? eng.next_unit()
                         : eng.next_beta(spec.alpha, spec.beta);
    const int y = eng.next_bernoulli(r);
    const double s = detail::distort(spec, r);
    out.push_back(make_sample(s, y, clamped_logit(s)));
  }
  return out;
}

// Same scores and logits, labels replaced by independent fair coin flips.
inline Dataset shuffle_outcomes(const Dataset& d, std::uint64_t seed) {
  if (d.empty()) throw error("empty dataset");
  Engine eng(seed);
  Dataset out = d;
  for (auto& s : out) s.label = eng.next_bernoulli(0.5);
  return out;
}

}  // namespace ptcal
