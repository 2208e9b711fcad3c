// Prospect-theory weighting: formula values, monotonicity over the valid
// gamma range, the clamped approximate inverse, and the round-trip report.
#include <catch2/catch_amalgamated.hpp>

#include <cmath>

#include "ptcal/pt.hpp"

using namespace ptcal;
using Catch::Matchers::ContainsSubstring;

TEST_CASE("validate_gamma accepts (0.279, 1] and rejects outside") {
  REQUIRE(validate_gamma(0.71).gamma == 0.71);
  REQUIRE(validate_gamma(1.0).gamma == 1.0);
  REQUIRE(validate_gamma(0.28).gamma == 0.28);
  REQUIRE_THROWS_WITH(validate_gamma(0.2),
                      ContainsSubstring("gamma out of monotone range"));
  REQUIRE_THROWS_WITH(validate_gamma(0.279), ContainsSubstring("0.279"));
  REQUIRE_THROWS_AS(validate_gamma(1.0001), error);
  REQUIRE_THROWS_AS(validate_gamma(std::nan("")), error);
}

TEST_CASE("pt_weight fixed points and formula value") {
  const PTParams g{0.71};
  REQUIRE(pt_weight(Probability(0.0), g).value() == 0.0);
  REQUIRE(pt_weight(Probability(1.0), g).value() == 1.0);
  // Direct evaluation of w(p) = p^g / (p^g + (1-p)^g)^(1/g) at p = 0.5.
  REQUIRE(pt_weight(Probability(0.5), g).value() ==
          Catch::Approx(0.46058818086383724).epsilon(1e-15));
  // The defining inverse-S property: small probabilities over-weighted,
  // large ones under-weighted.
  REQUIRE(pt_weight(Probability(0.05), g).value() > 0.05);
  REQUIRE(pt_weight(Probability(0.95), g).value() < 0.95);
}

TEST_CASE("pt_inverse fixed points and formula value") {
  const PTParams g{0.71};
  REQUIRE(pt_inverse(Probability(0.0), g).value() == 0.0);
  REQUIRE(pt_inverse(Probability(1.0), g).value() == 1.0);
  REQUIRE(pt_inverse(Probability(0.4605), g).value() ==
          Catch::Approx(0.49860342560514564).epsilon(1e-15));
  // Round-trip of the pt_weight example: winv(w(0.5)) ~ 0.4987.
  REQUIRE(pt_inverse(pt_weight(Probability(0.5), g), g).value() ==
          Catch::Approx(0.49874352531202992).epsilon(1e-15));
}

TEST_CASE("gamma = 1 reduces both maps to the exact identity") {
  const PTParams one{1.0};
  for (int i = 0; i <= 100; ++i) {
    const Probability p(i / 100.0);
    REQUIRE(pt_weight(p, one).value() == p.value());
    REQUIRE(pt_inverse(p, one).value() == p.value());
  }
}

TEST_CASE("pt_weight is strictly increasing for every valid gamma") {
  for (double gamma : {0.28, 0.3, 0.5, 0.71, 0.9, 1.0}) {
    const PTParams g{gamma};
    double prev = -1.0;
    for (int i = 0; i <= 1000; ++i) {
      const double w = pt_weight(Probability(i / 1000.0), g).value();
      REQUIRE(w > prev);
      REQUIRE(w >= 0.0);
      REQUIRE(w <= 1.0);
      prev = w;
    }
  }
}

TEST_CASE("pt_inverse is non-decreasing and clamped into [0,1]") {
  // The Eq.-2 inverse is approximate: for gamma well below 1 the raw formula
  // overshoots 1 slightly near p = 1, which is why outputs are clamped and
  // only weak monotonicity is promised there.
  for (double gamma : {0.28, 0.5, 0.71, 1.0}) {
    const PTParams g{gamma};
    double prev = 0.0;
    for (int i = 0; i <= 1000; ++i) {
      const double w = pt_inverse(Probability(i / 1000.0), g).value();
      REQUIRE(w >= prev);
      REQUIRE(w <= 1.0);
      prev = w;
    }
    REQUIRE(prev == 1.0);
  }
}

TEST_CASE("pt_inverse approximately inverts pt_weight in the interior") {
  const PTParams g{0.71};
  for (int i = 5; i <= 95; ++i) {
    const double p = i / 100.0;
    const double back = pt_inverse(pt_weight(Probability(p), g), g).value();
    REQUIRE(std::abs(back - p) < 0.035);  // worst grid error is 0.0341 at 0.92
  }
}

TEST_CASE("roundtrip report at gamma = 0.71 reproduces the MAE headline") {
  const RoundTripReport r = pt_roundtrip_report(PTParams{0.71});
  // Mean absolute error just under one percentage point.
  REQUIRE(r.mae_percent == Catch::Approx(0.96303032568623093).epsilon(1e-13));
  REQUIRE(std::abs(r.mae_percent - 0.963) < 0.05);
  // MSE on both scales; in percentage points squared it is ~2.17, i.e. the
  // 0.022 headline matches neither scale exactly (documented discrepancy:
  // 0.022 ~ mse_percent2 / 100).
  REQUIRE(r.mse_percent2 == Catch::Approx(2.1718436100787519).epsilon(1e-13));
  REQUIRE(r.mse_prob2 ==
          Catch::Approx(0.00021718436100787519).epsilon(1e-13));
  REQUIRE(r.max_error_percent ==
          Catch::Approx(3.4128218597475501).epsilon(1e-13));
  REQUIRE(r.max_error_point == 92);
  // Jensen on the same scale: MSE >= MAE^2.
  REQUIRE(r.mse_percent2 >= r.mae_percent * r.mae_percent);
}

TEST_CASE("roundtrip report endpoints are exact for every valid gamma") {
  for (double gamma : {0.3, 0.5, 0.71, 1.0}) {
    const RoundTripReport r = pt_roundtrip_report(PTParams{gamma});
    REQUIRE(r.errors_percent.front() == 0.0);
    REQUIRE(r.errors_percent.back() == 0.0);
    REQUIRE(r.errors_percent.size() == 101);
  }
}

TEST_CASE("roundtrip report at gamma = 1 is all zeros") {
  const RoundTripReport r = pt_roundtrip_report(PTParams{1.0});
  REQUIRE(r.mae_percent == 0.0);
  REQUIRE(r.mse_percent2 == 0.0);
  REQUIRE(r.max_error_percent == 0.0);
  for (const double e : r.errors_percent) REQUIRE(e == 0.0);
}

TEST_CASE("pt operations reject invalid gamma") {
  REQUIRE_THROWS_AS(pt_weight(Probability(0.5), PTParams{0.1}), error);
  REQUIRE_THROWS_AS(pt_inverse(Probability(0.5), PTParams{2.0}), error);
  REQUIRE_THROWS_AS(pt_roundtrip_report(PTParams{0.0}), error);
}
