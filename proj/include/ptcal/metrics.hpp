#pragma once
// Calibration metrics (ECE/MCE/OE/NLL/Brier/accuracy/F1), reliability-diagram
// binning, Pearson correlation, and one-way ANOVA with an exact F-distribution
// p-value via the regularized incomplete beta function.
//
// Confidence convention for all binned metrics (binary): the predicted class
// is 1 iff q >= 0.5 and the confidence is max(q, 1-q), so confidences live in
// [0.5, 1] and bins are equal-width over that interval (last bin closed).

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "ptcal/core.hpp"

namespace ptcal {

inline constexpr double kNllEps = 1e-12;

// q is the class-1 probability.
struct ScoredOutcome {
  double q = 0.0;
  int label = 0;
};

struct ConfidenceSample {
  double confidence = 0.0;  // max(q, 1-q), in [0.5, 1]
  int label = 0;
  bool correct = false;
};

inline double confidence_of(double q) { return q >= 0.5 ? q : 1.0 - q; }
inline int predicted_class(double q) { return q >= 0.5 ? 1 : 0; }

inline ConfidenceSample to_confidence_sample(const ScoredOutcome& s) {
  return ConfidenceSample{confidence_of(s.q), s.label,
                          predicted_class(s.q) == s.label};
}

struct BinStats {
  double lo = 0.0;
  double hi = 0.0;
  std::size_t count = 0;
  std::optional<double> mean_conf;  // absent when count == 0
  std::optional<double> accuracy;   // absent when count == 0
};

inline std::vector<BinStats> bin_samples(
    const std::vector<ConfidenceSample>& qs, int bins) {
  if (bins < 1) throw error("bins must be >= 1, got " + std::to_string(bins));
  const std::size_t m = static_cast<std::size_t>(bins);
  std::vector<double> sum_conf(m, 0.0);
  std::vector<std::size_t> n_correct(m, 0), count(m, 0);

  for (const auto& s : qs) {
    const double offset = (s.confidence - 0.5) * 2.0 * static_cast<double>(m);
    std::size_t j = offset <= 0.0
                        ? 0
                        : static_cast<std::size_t>(std::floor(offset));
    if (j >= m) j = m - 1;  // confidence == 1 lands in the closed last bin
    sum_conf[j] += s.confidence;
    n_correct[j] += s.correct ? 1 : 0;
    ++count[j];
  }

  std::vector<BinStats> out(m);
  for (std::size_t j = 0; j < m; ++j) {
    out[j].lo = 0.5 + 0.5 * static_cast<double>(j) / static_cast<double>(m);
    out[j].hi =
        0.5 + 0.5 * static_cast<double>(j + 1) / static_cast<double>(m);
    out[j].count = count[j];
    if (count[j] > 0) {
      out[j].mean_conf = sum_conf[j] / static_cast<double>(count[j]);
      out[j].accuracy = static_cast<double>(n_correct[j]) /
                        static_cast<double>(count[j]);
    }
  }
  return out;
}

namespace detail {
inline std::size_t checked_bin_total(const std::vector<BinStats>& bins,
                                     std::size_t n) {
  std::size_t total = 0;
  for (const auto& b : bins) total += b.count;
  if (n == 0) throw error("empty bins: n must be positive");
  if (total != n) {
    throw error("bin counts sum to " + std::to_string(total) +
                ", expected n = " + std::to_string(n));
  }
  return total;
}
}  // namespace detail

inline double ece(const std::vector<BinStats>& bins, std::size_t n) {
  detail::checked_bin_total(bins, n);
  double sum = 0.0;
  for (const auto& b : bins) {
    if (b.count == 0) continue;
    sum += static_cast<double>(b.count) / static_cast<double>(n) *
           std::abs(*b.accuracy - *b.mean_conf);
  }
  return sum;
}

inline double mce(const std::vector<BinStats>& bins) {
  double best = -1.0;
  for (const auto& b : bins) {
    if (b.count == 0) continue;
    best = std::max(best, std::abs(*b.accuracy - *b.mean_conf));
  }
  if (best < 0.0) throw error("all bins empty: MCE undefined");
  return best;
}

inline double oe(const std::vector<BinStats>& bins, std::size_t n) {
  detail::checked_bin_total(bins, n);
  double sum = 0.0;
  for (const auto& b : bins) {
    if (b.count == 0) continue;
    const double gap = std::max(*b.mean_conf - *b.accuracy, 0.0);
    sum += static_cast<double>(b.count) / static_cast<double>(n) *
           *b.mean_conf * gap;
  }
  return sum;
}

// Mean of -ln(p_hat) over true-class confidences, clamped to [eps, 1].
inline double nll(const std::vector<double>& true_class_conf) {
  if (true_class_conf.empty()) throw error("empty input: NLL undefined");
  double sum = 0.0;
  for (double p : true_class_conf) {
    sum -= std::log(std::min(std::max(p, kNllEps), 1.0));
  }
  return sum / static_cast<double>(true_class_conf.size());
}

inline double brier(const std::vector<ScoredOutcome>& samples) {
  if (samples.empty()) throw error("empty input: Brier undefined");
  double sum = 0.0;
  for (const auto& s : samples) {
    const double d = s.q - static_cast<double>(s.label);
    sum += d * d;
  }
  return sum / static_cast<double>(samples.size());
}

struct AccuracyF1 {
  double accuracy = 0.0;
  double f1 = 0.0;
};

// F1 for class 1. Degenerate cases: 1 when there are neither predicted nor
// actual positives; 0 on any other zero denominator.
inline AccuracyF1 accuracy_f1(const std::vector<ScoredOutcome>& samples,
                              double threshold = 0.5) {
  if (samples.empty()) throw error("empty input: accuracy undefined");
  std::size_t tp = 0, fp = 0, fn = 0, correct = 0;
  for (const auto& s : samples) {
    const int pred = s.q >= threshold ? 1 : 0;
    if (pred == s.label) ++correct;
    if (pred == 1 && s.label == 1) ++tp;
    if (pred == 1 && s.label == 0) ++fp;
    if (pred == 0 && s.label == 1) ++fn;
  }
  AccuracyF1 out;
  out.accuracy = static_cast<double>(correct) /
                 static_cast<double>(samples.size());
  if (tp + fp == 0 && tp + fn == 0) {
    out.f1 = 1.0;
  } else if (tp == 0) {
    out.f1 = 0.0;
  } else {
    const double precision =
        static_cast<double>(tp) / static_cast<double>(tp + fp);
    const double recall =
        static_cast<double>(tp) / static_cast<double>(tp + fn);
    out.f1 = 2.0 * precision * recall / (precision + recall);
  }
  return out;
}

inline std::vector<BinStats> reliability_data(
    const std::vector<ScoredOutcome>& samples, int bins) {
  std::vector<ConfidenceSample> qs;
  qs.reserve(samples.size());
  for (const auto& s : samples) qs.push_back(to_confidence_sample(s));
  return bin_samples(qs, bins);
}

inline double pearson(const std::vector<double>& x,
                      const std::vector<double>& y) {
  if (x.size() != y.size() || x.size() < 2) {
    throw error("pearson requires equal-length inputs with >= 2 values");
  }
  const double n = static_cast<double>(x.size());
  double mx = 0.0, my = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    mx += x[i];
    my += y[i];
  }
  mx /= n;
  my /= n;
  double sxx = 0.0, syy = 0.0, sxy = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double dx = x[i] - mx;
    const double dy = y[i] - my;
    sxx += dx * dx;
    syy += dy * dy;
    sxy += dx * dy;
  }
  if (sxx <= 0.0 || syy <= 0.0) throw error("undefined correlation");
  const double r = sxy / std::sqrt(sxx * syy);
  return std::min(1.0, std::max(-1.0, r));
}

// ---------------------------------------------------------------------------
// Regularized incomplete beta function and the F-distribution survival
// function used for ANOVA p-values.

namespace detail {

// Modified Lentz continued fraction for I_x(a,b) (Numerical Recipes form),
// run well below the 1e-10 absolute tolerance required of callers.
inline double betacf(double a, double b, double x) {
  constexpr double kFpMin = 1e-300;
  constexpr double kEps = 1e-15;
  const double qab = a + b;
  const double qap = a + 1.0;
  const double qam = a - 1.0;
  double c = 1.0;
  double d = 1.0 - qab * x / qap;
  if (std::abs(d) < kFpMin) d = kFpMin;
  d = 1.0 / d;
  double h = d;
  for (int m = 1; m <= 1000; ++m) {
    const double m2 = 2.0 * m;
    double aa = m * (b - m) * x / ((qam + m2) * (a + m2));
    d = 1.0 + aa * d;
    if (std::abs(d) < kFpMin) d = kFpMin;
    c = 1.0 + aa / c;
    if (std::abs(c) < kFpMin) c = kFpMin;
    d = 1.0 / d;
    h *= d * c;
    aa = -(a + m) * (qab + m) * x / ((a + m2) * (qap + m2));
    d = 1.0 + aa * d;
    if (std::abs(d) < kFpMin) d = kFpMin;
    c = 1.0 + aa / c;
    if (std::abs(c) < kFpMin) c = kFpMin;
    d = 1.0 / d;
    const double del = d * c;
    h *= del;
    if (std::abs(del - 1.0) < kEps) return h;
  }
  throw error("incomplete beta continued fraction did not converge");
}

}  // namespace detail

inline double incomplete_beta(double a, double b, double x) {
  if (!(a > 0.0 && b > 0.0)) {
    throw error("incomplete beta requires positive parameters");
  }
  if (x <= 0.0) return 0.0;
  if (x >= 1.0) return 1.0;
  const double ln_front = a * std::log(x) + b * std::log(1.0 - x) -
                          (std::lgamma(a) + std::lgamma(b) -
                           std::lgamma(a + b));
  const double front = std::exp(ln_front);
  if (x < (a + 1.0) / (a + b + 2.0)) {
    return front * detail::betacf(a, b, x) / a;
  }
  return 1.0 - front * detail::betacf(b, a, 1.0 - x) / b;
}

// P(F > f) for F ~ F(d1, d2).
inline double f_survival(double f, double d1, double d2) {
  if (f <= 0.0) return 1.0;
  const double x = d2 / (d2 + d1 * f);
  return incomplete_beta(d2 / 2.0, d1 / 2.0, x);
}

struct AnovaResult {
  double f_stat = 0.0;
  int df_between = 0;
  int df_within = 0;
  double p_value = 1.0;
};

inline AnovaResult anova_oneway(const std::vector<std::vector<double>>& groups) {
  if (groups.size() < 2) throw error("anova requires at least 2 groups");
  std::size_t n = 0;
  double grand_sum = 0.0;
  for (const auto& g : groups) {
    if (g.size() < 2) throw error("anova requires >= 2 values per group");
    for (double v : g) grand_sum += v;
    n += g.size();
  }
  const double grand_mean = grand_sum / static_cast<double>(n);

  double ssb = 0.0, ssw = 0.0;
  for (const auto& g : groups) {
    double mean = 0.0;
    for (double v : g) mean += v;
    mean /= static_cast<double>(g.size());
    ssb += static_cast<double>(g.size()) * (mean - grand_mean) *
           (mean - grand_mean);
    for (double v : g) ssw += (v - mean) * (v - mean);
  }
  if (ssw <= 0.0) throw error("zero within-group variance: ANOVA undefined");

  AnovaResult r;
  r.df_between = static_cast<int>(groups.size()) - 1;
  r.df_within = static_cast<int>(n - groups.size());
  const double msb = ssb / r.df_between;
  const double msw = ssw / r.df_within;
  r.f_stat = std::max(msb / msw, 0.0);
  r.p_value = f_survival(r.f_stat, r.df_between, r.df_within);
  return r;
}

// ---------------------------------------------------------------------------
// Whole-dataset metric report.

struct MetricReport {
  double accuracy = 0.0;
  double f1 = 0.0;
  double ece = 0.0;
  double mce = 0.0;
  double oe = 0.0;
  double nll = 0.0;
  double brier = 0.0;
  std::vector<BinStats> bins;
  std::size_t n = 0;
  int m_bins = 0;
};

inline MetricReport evaluate_outcomes(const std::vector<ScoredOutcome>& samples,
                                      int bins) {
  if (samples.empty()) throw error("empty dataset");
  MetricReport r;
  r.n = samples.size();
  r.m_bins = bins;
  r.bins = reliability_data(samples, bins);
  r.ece = ece(r.bins, r.n);
  r.mce = mce(r.bins);
  r.oe = oe(r.bins, r.n);
  const AccuracyF1 af = accuracy_f1(samples);
  r.accuracy = af.accuracy;
  r.f1 = af.f1;
  std::vector<double> tc;
  tc.reserve(samples.size());
  for (const auto& s : samples) {
    tc.push_back(s.label == 1 ? s.q : 1.0 - s.q);
  }
  r.nll = nll(tc);
  r.brier = brier(samples);
  return r;
}

}  // namespace ptcal
