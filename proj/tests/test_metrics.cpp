// Metric tests: reliability binning, ECE/MCE/OE, NLL, Brier, accuracy/F1,
// Pearson, and one-way ANOVA with incomplete-beta p-values. The F survival
// function is checked against frozen values and an adaptive-Simpson
// quadrature oracle.
#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <vector>

#include "oracles.hpp"
#include "ptcal/metrics.hpp"
#include "ptcal/rng.hpp"

using namespace ptcal;
using Catch::Matchers::ContainsSubstring;

namespace {

BinStats bin(std::size_t count, double mean_conf, double accuracy) {
  BinStats b;
  b.count = count;
  if (count > 0) {
    b.mean_conf = mean_conf;
    b.accuracy = accuracy;
  }
  return b;
}

// Outcomes with q ~ U(0,1) and label ~ Bernoulli(q): perfectly calibrated.
std::vector<ScoredOutcome> calibrated_outcomes(std::size_t n,
                                               std::uint64_t seed) {
  Engine eng(seed);
  std::vector<ScoredOutcome> out;
  out.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    const double q = eng.next_unit();
    out.push_back(ScoredOutcome{q, eng.next_bernoulli(q)});
  }
  return out;
}

}  // namespace

// ---------------------------------------------------------------------------
// Binning

TEST_CASE("bin_samples covers [0.5,1] and puts equal confidences in one bin") {
  std::vector<ConfidenceSample> qs(7, ConfidenceSample{0.72, 1, true});
  const auto bins = bin_samples(qs, 10);
  REQUIRE(bins.size() == 10);
  REQUIRE(bins.front().lo == 0.5);
  REQUIRE(bins.back().hi == 1.0);
  // confidence 0.72 falls in bin [0.7, 0.75)
  REQUIRE(bins[4].count == 7);
  REQUIRE(*bins[4].mean_conf == Catch::Approx(0.72).epsilon(1e-15));
  for (std::size_t j = 0; j < 10; ++j) {
    if (j == 4) continue;
    REQUIRE(bins[j].count == 0);
    REQUIRE_FALSE(bins[j].mean_conf.has_value());
    REQUIRE_FALSE(bins[j].accuracy.has_value());
  }
}

TEST_CASE("bin_samples single-bin stats: 4 samples, conf 0.9, 3 correct") {
  std::vector<ConfidenceSample> qs = {{0.9, 1, true},
                                      {0.9, 1, true},
                                      {0.9, 1, true},
                                      {0.9, 0, false}};
  const auto bins = bin_samples(qs, 1);
  REQUIRE(bins.size() == 1);
  REQUIRE(bins[0].count == 4);
  REQUIRE(*bins[0].mean_conf == Catch::Approx(0.9).epsilon(1e-15));
  REQUIRE(*bins[0].accuracy == 0.75);
}

TEST_CASE("bin_samples boundary handling") {
  // confidence 1.0 lands in the closed last bin, 0.5 in the first.
  std::vector<ConfidenceSample> qs = {{1.0, 1, true}, {0.5, 0, true}};
  const auto bins = bin_samples(qs, 15);
  REQUIRE(bins.back().count == 1);
  REQUIRE(bins.front().count == 1);
  std::size_t total = 0;
  for (const auto& b : bins) total += b.count;
  REQUIRE(total == qs.size());
  REQUIRE_THROWS_WITH(bin_samples(qs, 0), ContainsSubstring("bins must be >= 1"));
}

// ---------------------------------------------------------------------------
// ECE / MCE / OE

TEST_CASE("ece hand examples") {
  REQUIRE(ece({bin(4, 0.9, 0.75)}, 4) == Catch::Approx(0.15).epsilon(1e-15));
  REQUIRE(ece({bin(2, 0.6, 0.5), bin(2, 0.9, 1.0)}, 4) ==
          Catch::Approx(0.1).epsilon(1e-15));
  // Mismatched n is rejected.
  REQUIRE_THROWS_WITH(ece({bin(4, 0.9, 0.75)}, 5),
                      ContainsSubstring("bin counts sum to 4, expected n = 5"));
}

TEST_CASE("mce takes the worst bin and dominates ece") {
  REQUIRE(mce({bin(10, 0.7, 0.6), bin(10, 0.95, 0.8)}) ==
          Catch::Approx(0.15).epsilon(1e-15));
  REQUIRE_THROWS_WITH(mce({bin(0, 0, 0)}), ContainsSubstring("all bins empty"));

  Engine eng(11);
  for (int trial = 0; trial < 1000; ++trial) {
    std::vector<BinStats> bins;
    std::size_t n = 0;
    const int m = 1 + static_cast<int>(eng.next_below(6));
    for (int j = 0; j < m; ++j) {
      const std::size_t c = eng.next_below(20);
      bins.push_back(c == 0 ? bin(0, 0, 0)
                            : bin(c, 0.5 + 0.5 * eng.next_unit(),
                                  eng.next_unit()));
      n += c;
    }
    if (n == 0) continue;
    REQUIRE(mce(bins) >= ece(bins, n));
  }
}

TEST_CASE("oe counts only overconfident bins, weighted by confidence") {
  // Underconfident bin contributes nothing.
  REQUIRE(oe({bin(5, 0.6, 0.9)}, 5) == 0.0);
  // Single overconfident bin: 0.9 * (0.9 - 0.75) = 0.135.
  REQUIRE(oe({bin(4, 0.9, 0.75)}, 4) == Catch::Approx(0.135).epsilon(1e-15));
  // Mixed: only the second bin contributes, at weight 1/2.
  REQUIRE(oe({bin(2, 0.6, 0.8), bin(2, 0.8, 0.7)}, 4) ==
          Catch::Approx(0.5 * 0.8 * 0.1).epsilon(1e-15));
}

// ---------------------------------------------------------------------------
// NLL / Brier / accuracy

TEST_CASE("nll hand values and clamping") {
  REQUIRE(nll({1.0, 1.0, 1.0}) == 0.0);
  REQUIRE(nll({0.5, 0.5}) == Catch::Approx(std::log(2.0)).epsilon(1e-15));
  // A zero true-class confidence is clamped to 1e-12, not an error.
  REQUIRE(nll({0.0}) == Catch::Approx(-std::log(1e-12)).epsilon(1e-12));
  REQUIRE_THROWS_WITH(nll({}), ContainsSubstring("empty input"));
}

TEST_CASE("brier hand values") {
  REQUIRE(brier({{1.0, 1}, {0.0, 0}}) == 0.0);
  REQUIRE(brier({{0.5, 1}, {0.5, 0}, {0.5, 1}}) == 0.25);
  REQUIRE(brier({{0.8, 1}, {0.4, 0}}) == Catch::Approx(0.10).epsilon(1e-15));
}

TEST_CASE("brier of the base-rate predictor on balanced labels") {
  Engine eng(17);
  std::size_t pos = 0;
  const std::size_t n = 100000;
  std::vector<int> labels(n);
  for (auto& y : labels) {
    y = eng.next_bernoulli(0.5);
    pos += static_cast<std::size_t>(y);
  }
  const double base = static_cast<double>(pos) / static_cast<double>(n);
  std::vector<ScoredOutcome> outcomes;
  outcomes.reserve(n);
  for (int y : labels) outcomes.push_back({base, y});
  REQUIRE(brier(outcomes) == Catch::Approx(0.25).margin(0.005));
}

TEST_CASE("accuracy_f1 hand examples") {
  const AccuracyF1 perfect = accuracy_f1({{0.9, 1}, {0.1, 0}});
  REQUIRE(perfect.accuracy == 1.0);
  REQUIRE(perfect.f1 == 1.0);

  // tp=1 (0.9), fp=1 (0.8), tn=1 (0.2), fn=1 (0.1).
  const AccuracyF1 mixed = accuracy_f1({{0.9, 1}, {0.8, 0}, {0.2, 0}, {0.1, 1}});
  REQUIRE(mixed.accuracy == 0.5);
  REQUIRE(mixed.f1 == 0.5);

  // No predicted or actual positives: F1 defined as 1.
  const AccuracyF1 allneg = accuracy_f1({{0.1, 0}, {0.2, 0}});
  REQUIRE(allneg.accuracy == 1.0);
  REQUIRE(allneg.f1 == 1.0);

  // Actual positives but no true positives: F1 = 0.
  const AccuracyF1 miss = accuracy_f1({{0.1, 1}, {0.2, 1}});
  REQUIRE(miss.accuracy == 0.0);
  REQUIRE(miss.f1 == 0.0);

  // q = 0.5 predicts class 1.
  REQUIRE(predicted_class(0.5) == 1);
  REQUIRE(accuracy_f1({{0.5, 1}}).accuracy == 1.0);
}

// ---------------------------------------------------------------------------
// Reliability data

TEST_CASE("reliability_data sits near the diagonal for calibrated outcomes") {
  const auto outcomes = calibrated_outcomes(50000, 23);
  const auto bins = reliability_data(outcomes, 15);
  for (const auto& b : bins) {
    if (b.count < 100) continue;
    REQUIRE(std::abs(*b.accuracy - *b.mean_conf) < 0.05);
  }
  REQUIRE(ece(bins, outcomes.size()) < 0.01);
}

TEST_CASE("reliability_data flags overconfidence when labels are coin flips") {
  Engine eng(29);
  std::vector<ScoredOutcome> outcomes;
  for (int i = 0; i < 20000; ++i) {
    outcomes.push_back({eng.next_unit(), eng.next_bernoulli(0.5)});
  }
  const auto bins = reliability_data(outcomes, 10);
  // High-confidence bins have accuracy ~0.5, far below their confidence.
  REQUIRE(*bins.back().mean_conf - *bins.back().accuracy > 0.3);
}

TEST_CASE("reliability_data equals bin_samples over converted outcomes") {
  const auto outcomes = calibrated_outcomes(500, 31);
  std::vector<ConfidenceSample> qs;
  for (const auto& s : outcomes) qs.push_back(to_confidence_sample(s));
  const auto a = reliability_data(outcomes, 15);
  const auto b = bin_samples(qs, 15);
  REQUIRE(a.size() == b.size());
  for (std::size_t j = 0; j < a.size(); ++j) {
    REQUIRE(a[j].count == b[j].count);
    REQUIRE(a[j].mean_conf == b[j].mean_conf);
    REQUIRE(a[j].accuracy == b[j].accuracy);
  }
}

TEST_CASE("ece of calibrated outcomes stays below 0.01 at n=100k") {
  for (std::uint64_t seed = 1; seed <= 20; ++seed) {
    const auto outcomes = calibrated_outcomes(100000, seed);
    const auto bins = reliability_data(outcomes, 15);
    REQUIRE(ece(bins, outcomes.size()) < 0.01);
  }
}

// ---------------------------------------------------------------------------
// Pearson

TEST_CASE("pearson hand values and affine invariance") {
  const std::vector<double> x = {1.0, 2.0, 3.0, 4.0};
  std::vector<double> y;
  for (double v : x) y.push_back(2.0 * v + 3.0);
  REQUIRE(pearson(x, y) == Catch::Approx(1.0).margin(1e-12));
  for (auto& v : y) v = -v;
  REQUIRE(pearson(x, y) == Catch::Approx(-1.0).margin(1e-12));

  Engine eng(37);
  std::vector<double> a, b;
  for (int i = 0; i < 50; ++i) {
    a.push_back(eng.next_gaussian());
    b.push_back(eng.next_gaussian());
  }
  const double r = pearson(a, b);
  std::vector<double> a2, b2;
  for (double v : a) a2.push_back(3.5 * v - 1.25);
  for (double v : b) b2.push_back(0.25 * v + 7.0);
  REQUIRE(pearson(a2, b2) == Catch::Approx(r).margin(1e-12));
  REQUIRE(r >= -1.0);
  REQUIRE(r <= 1.0);
}

TEST_CASE("pearson rejects degenerate input") {
  REQUIRE_THROWS_WITH(pearson({1.0, 1.0, 1.0}, {1.0, 2.0, 3.0}),
                      ContainsSubstring("undefined correlation"));
  REQUIRE_THROWS_WITH(pearson({1.0}, {2.0}),
                      ContainsSubstring("equal-length inputs with >= 2"));
  REQUIRE_THROWS_WITH(pearson({1.0, 2.0}, {1.0, 2.0, 3.0}),
                      ContainsSubstring("equal-length inputs"));
}

// ---------------------------------------------------------------------------
// F survival function and ANOVA

TEST_CASE("f_survival frozen values") {
  REQUIRE(f_survival(1.5, 1, 4) ==
          Catch::Approx(0.28786413472669059).epsilon(1e-13));
  // Closed form: P(F(2,10) > 3) = (10/16)^5... = 0.75^5.
  REQUIRE(f_survival(3.0, 2, 10) ==
          Catch::Approx(0.095367431640625).epsilon(1e-13));
  REQUIRE(f_survival(2.5, 4, 40) ==
          Catch::Approx(0.057646075230342778).epsilon(1e-13));
  REQUIRE(f_survival(0.7, 3, 12) ==
          Catch::Approx(0.56990196364522339).epsilon(1e-13));
  REQUIRE(f_survival(0.0, 3, 12) == 1.0);
  REQUIRE(f_survival(-1.0, 3, 12) == 1.0);
}

TEST_CASE("f_survival agrees with adaptive-Simpson quadrature") {
  const double cases[][3] = {{1.5, 1, 4},  {3.0, 2, 10}, {2.5, 4, 40},
                             {0.7, 3, 12}, {5.0, 4, 56}, {0.2, 2, 8}};
  for (const auto& c : cases) {
    REQUIRE(f_survival(c[0], c[1], c[2]) ==
            Catch::Approx(oracles::f_sf_quadrature(c[0], c[1], c[2]))
                .margin(1e-6));
  }
}

TEST_CASE("incomplete_beta basic identities") {
  REQUIRE(incomplete_beta(1.0, 1.0, 0.37) ==
          Catch::Approx(0.37).epsilon(1e-13));
  REQUIRE(incomplete_beta(2.0, 2.0, 0.5) == Catch::Approx(0.5).epsilon(1e-13));
  const double x = 0.23;
  REQUIRE(incomplete_beta(3.0, 5.0, x) ==
          Catch::Approx(1.0 - incomplete_beta(5.0, 3.0, 1.0 - x))
              .epsilon(1e-12));
  REQUIRE(incomplete_beta(3.0, 5.0, 0.0) == 0.0);
  REQUIRE(incomplete_beta(3.0, 5.0, 1.0) == 1.0);
}

TEST_CASE("anova_oneway hand examples") {
  // Identical group means: F = 0, p = 1.
  const AnovaResult same = anova_oneway({{1.0, 2.0, 3.0}, {1.0, 2.0, 3.0}});
  REQUIRE(same.f_stat == 0.0);
  REQUIRE(same.p_value == 1.0);

  const AnovaResult r = anova_oneway({{1.0, 2.0, 3.0}, {2.0, 3.0, 4.0}});
  REQUIRE(r.f_stat == Catch::Approx(1.5).epsilon(1e-12));
  REQUIRE(r.df_between == 1);
  REQUIRE(r.df_within == 4);
  REQUIRE(r.p_value == Catch::Approx(0.28786413472669059).epsilon(1e-12));
  REQUIRE(r.p_value ==
          Catch::Approx(oracles::f_sf_quadrature(1.5, 1, 4)).margin(1e-6));

  // Clearly separated groups give a small p-value.
  const AnovaResult sep =
      anova_oneway({{0.1, 0.2, 0.15, 0.12}, {0.9, 0.85, 0.95, 0.88}});
  REQUIRE(sep.p_value < 1e-6);
}

TEST_CASE("anova_oneway input validation") {
  REQUIRE_THROWS_WITH(anova_oneway({{1.0, 2.0}}),
                      ContainsSubstring("at least 2 groups"));
  REQUIRE_THROWS_WITH(anova_oneway({{1.0, 2.0}, {3.0}}),
                      ContainsSubstring(">= 2 values per group"));
  REQUIRE_THROWS_WITH(anova_oneway({{1.0, 1.0}, {2.0, 2.0}}),
                      ContainsSubstring("zero within-group variance"));
}

// ---------------------------------------------------------------------------
// Whole-report consistency

TEST_CASE("evaluate_outcomes matches the standalone metrics") {
  const auto outcomes = calibrated_outcomes(2000, 41);
  const MetricReport r = evaluate_outcomes(outcomes, 15);
  REQUIRE(r.n == outcomes.size());
  REQUIRE(r.m_bins == 15);
  REQUIRE(r.bins.size() == 15);
  REQUIRE(r.ece == ece(r.bins, r.n));
  REQUIRE(r.mce == mce(r.bins));
  REQUIRE(r.oe == oe(r.bins, r.n));
  REQUIRE(r.brier == brier(outcomes));
  REQUIRE(r.accuracy == accuracy_f1(outcomes).accuracy);
  REQUIRE(r.f1 == accuracy_f1(outcomes).f1);
  std::vector<double> tc;
  for (const auto& s : outcomes) tc.push_back(s.label == 1 ? s.q : 1.0 - s.q);
  REQUIRE(r.nll == nll(tc));
  REQUIRE(r.mce >= r.ece);
  REQUIRE_THROWS_WITH(evaluate_outcomes({}, 15),
                      ContainsSubstring("empty dataset"));
}
