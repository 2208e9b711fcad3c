#pragma once
// Prospect-theory probability weighting (Tversky-Kahneman one-parameter form)
// and its closed-form approximate inverse.
//
//   w(p)      = p^g / (p^g + (1-p)^g)^(1/g)
//   w_inv(p)  = p^(1/g) / (p^(1/g) + (1-p)^(1/g))^(1/g), clamped to [0,1]
//
// w is strictly increasing on [0,1] iff g > 0.279, hence the validated range.
// The inverse formula is approximate (the pair is not an exact involution) and
// overshoots 1.0 slightly near p = 1 for g < ~0.9, so its output is clamped;
// consequently w_inv is guaranteed non-decreasing with range [0,1] but not
// strictly increasing.

#include <array>
#include <cmath>
#include <string>

#include "ptcal/core.hpp"

namespace ptcal {

inline constexpr double kGammaDefault = 0.71;
inline constexpr double kGammaMonotoneLower = 0.279;  // exclusive

struct PTParams {
  double gamma = kGammaDefault;
};

inline PTParams validate_gamma(double gamma) {
  if (!(gamma > kGammaMonotoneLower && gamma <= 1.0)) {
    throw error("gamma out of monotone range (0.279, 1]: " +
                std::to_string(gamma));
  }
  return PTParams{gamma};
}

namespace detail {
// Shared kernel: p^e / (p^e + (1-p)^e)^(1/g). Endpoints are returned exactly.
inline double pt_kernel(double p, double e, double g) {
  if (p <= 0.0) return 0.0;
  if (p >= 1.0) return 1.0;
  const double a = std::pow(p, e);
  const double b = std::pow(1.0 - p, e);
  return a / std::pow(a + b, 1.0 / g);
}
}  // namespace detail

inline Probability pt_weight(Probability p, const PTParams& params) {
  validate_gamma(params.gamma);
  if (params.gamma == 1.0) return p;  // exact identity, not p/(p+(1-p))^1
  const double w = detail::pt_kernel(p.value(), params.gamma, params.gamma);
  return Probability(clamp01(w));
}

inline Probability pt_inverse(Probability p, const PTParams& params) {
  validate_gamma(params.gamma);
  if (params.gamma == 1.0) return p;
  const double w =
      detail::pt_kernel(p.value(), 1.0 / params.gamma, params.gamma);
  return Probability(clamp01(w));
}

// Round-trip fidelity of w_inv(w(.)) over the integer percent grid
// P in {0,...,100}. Errors are reported in percentage points.
struct RoundTripReport {
  double mae_percent = 0.0;       // mean |w_inv(w(P/100)) - P/100| * 100
  double mse_percent2 = 0.0;      // mean squared error, percent^2 units
  double mse_prob2 = 0.0;         // same in probability^2 units
  double max_error_percent = 0.0;
  int max_error_point = 0;        // grid index P attaining the max
  std::array<double, 101> errors_percent{};
};

inline RoundTripReport pt_roundtrip_report(const PTParams& params) {
  validate_gamma(params.gamma);
  RoundTripReport r;
  double sum_abs = 0.0;
  double sum_sq = 0.0;
  for (int P = 0; P <= 100; ++P) {
    const double p = static_cast<double>(P) / 100.0;
    const double back =
        pt_inverse(pt_weight(Probability(p), params), params).value();
    const double err_pp = (back - p) * 100.0;
    r.errors_percent[static_cast<std::size_t>(P)] = err_pp;
    sum_abs += std::abs(err_pp);
    sum_sq += err_pp * err_pp;
    if (std::abs(err_pp) > r.max_error_percent) {
      r.max_error_percent = std::abs(err_pp);
      r.max_error_point = P;
    }
  }
  r.mae_percent = sum_abs / 101.0;
  r.mse_percent2 = sum_sq / 101.0;
  r.mse_prob2 = r.mse_percent2 / 1e4;
  return r;
}

}  // namespace ptcal
