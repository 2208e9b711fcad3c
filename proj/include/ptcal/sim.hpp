#pragma once
// Seeded simulation of prospect-theory-perceiving agents consuming five
// presentation arms of the same scored dataset. Each agent perceives reported
// probabilities through the PT weighting curve, blends them with a prior in
// proportion to a learned reliance weight, answers on a 1-5 Likert scale, and
// updates reliance from prediction-outcome agreement.

#include <cmath>
#include <cstdint>
#include <string>
#include <vector>

#include "ptcal/calibrate.hpp"
#include "ptcal/core.hpp"
#include "ptcal/metrics.hpp"
#include "ptcal/pt.hpp"
#include "ptcal/rng.hpp"
#include "ptcal/synth.hpp"

namespace ptcal {

struct AgentSpec {
  double gamma_agent = kGammaDefault;
  double prior = 0.5;
  double reliance_init = 0.2;
  double learning_rate = 0.3;
  double decision_noise_sd = 0.08;
  std::uint64_t seed = 0;
};

inline void validate_agent_spec(const AgentSpec& s) {
  validate_gamma(s.gamma_agent);
  if (!(s.prior >= 0.0 && s.prior <= 1.0)) {
    throw error("agent prior must lie in [0,1]");
  }
  if (!(s.reliance_init >= 0.0 && s.reliance_init <= 1.0)) {
    throw error("reliance_init must lie in [0,1]");
  }
  if (!(s.learning_rate >= 0.0 && s.learning_rate <= 1.0)) {
    throw error("learning_rate must lie in [0,1]");
  }
  if (!(s.decision_noise_sd >= 0.0) || !std::isfinite(s.decision_noise_sd)) {
    throw error("decision_noise_sd must be >= 0");
  }
}

enum class ArmName {
  uncalibrated,
  calibrated,
  pt_calibrated,
  pt_uncalibrated,
  random_outcomes,
};

inline std::string arm_name(ArmName a) {
  switch (a) {
    case ArmName::uncalibrated: return "uncalibrated";
    case ArmName::calibrated: return "calibrated";
    case ArmName::pt_calibrated: return "pt_calibrated";
    case ArmName::pt_uncalibrated: return "pt_uncalibrated";
    case ArmName::random_outcomes: return "random";
  }
  throw error("unknown arm");
}

struct Arm {
  ArmName name = ArmName::uncalibrated;
  std::vector<double> reported;
  std::vector<int> outcomes;
};

// Arms, all over the same samples in the same order:
//   1 uncalibrated     raw scores
//   2 calibrated       calibrator(raw)
//   3 pt_calibrated    pt_inverse(calibrator(raw))
//   4 pt_uncalibrated  pt_inverse(raw)
//   5 random           arm 3's probabilities, fair-coin outcomes (seed)
inline std::vector<Arm> build_arms(const Dataset& base,
                                   const CalibratorModel& calibrator,
                                   const PTParams& pt, std::uint64_t seed) {
  if (base.empty()) throw error("empty dataset");
  validate_gamma(pt.gamma);
  validate_model(calibrator);  // rejects unfitted/ill-formed models

  const std::size_t n = base.size();
  std::vector<Arm> arms(5);
  arms[0].name = ArmName::uncalibrated;
  arms[1].name = ArmName::calibrated;
  arms[2].name = ArmName::pt_calibrated;
  arms[3].name = ArmName::pt_uncalibrated;
  arms[4].name = ArmName::random_outcomes;

  for (auto& a : arms) {
    a.reported.reserve(n);
    a.outcomes.reserve(n);
  }
  for (const auto& s : base) {
    const double raw = s.score.value();
    const double cal = apply_calibrator(calibrator, s).value();
    const double pt_cal = pt_inverse(Probability(cal), pt).value();
    const double pt_raw = pt_inverse(s.score, pt).value();
    arms[0].reported.push_back(raw);
    arms[1].reported.push_back(cal);
    arms[2].reported.push_back(pt_cal);
    arms[3].reported.push_back(pt_raw);
    arms[4].reported.push_back(pt_cal);
    for (int k = 0; k < 4; ++k) arms[static_cast<std::size_t>(k)].outcomes.push_back(s.label);
  }
  arms[4].outcomes = labels_of(shuffle_outcomes(base, seed));
  return arms;
}

struct Agent {
  explicit Agent(const AgentSpec& s)
      : spec(s), reliance(s.reliance_init), eng(s.seed) {
    validate_agent_spec(s);
  }
  AgentSpec spec;
  double reliance;
  Engine eng;
};

struct Decision {
  int likert = 1;          // 1..5
  double perceived = 0.0;  // pt_weight(reported; gamma_agent)
  double blended = 0.0;    // reliance*perceived + (1-reliance)*prior
  double noisy = 0.0;      // clamp01(blended + gaussian noise)
};

// Consumes exactly one Gaussian draw from the agent's engine per call.
inline Decision agent_decide(Agent& agent, Probability reported) {
  Decision d;
  d.perceived =
      pt_weight(reported, PTParams{agent.spec.gamma_agent}).value();
  d.blended = agent.reliance * d.perceived +
              (1.0 - agent.reliance) * agent.spec.prior;
  d.noisy = clamp01(d.blended +
                    agent.spec.decision_noise_sd * agent.eng.next_gaussian());
  d.likert = 1 + static_cast<int>(std::lround(4.0 * d.noisy));
  return d;
}

// Reliance moves toward the agreement between the PT-perceived report and
// the realized outcome (exponential moving average).
inline void agent_update(Agent& agent, Probability reported, int outcome) {
  const double perceived =
      pt_weight(reported, PTParams{agent.spec.gamma_agent}).value();
  const double agreement =
      1.0 - std::abs(perceived - static_cast<double>(outcome));
  agent.reliance = clamp01((1.0 - agent.spec.learning_rate) * agent.reliance +
                           agent.spec.learning_rate * agreement);
}

struct ArmResult {
  ArmName name = ArmName::uncalibrated;
  std::vector<double> per_agent_corr;       // excluded agents omitted
  double mean_corr = 0.0;
  std::vector<std::vector<int>> decisions;  // one Likert row per agent
  std::size_t excluded = 0;                 // undefined-correlation agents
};

struct StudyConfig {
  int scenarios_per_agent = 20;
  int agents_per_arm = 30;
};

// Per-agent engines are seeded as derive_seed(study_seed, agent_index) with
// NO arm component: agent g sees the same scenario indices and noise stream
// in every arm (common random numbers), so arms with identical reported
// probabilities and outcomes produce bitwise-identical results.
inline std::vector<ArmResult> run_study(const std::vector<Arm>& arms,
                                        const AgentSpec& population,
                                        const StudyConfig& cfg,
                                        std::uint64_t seed) {
  validate_agent_spec(population);
  if (cfg.agents_per_arm < 1) throw error("agents_per_arm must be >= 1");
  if (cfg.scenarios_per_agent < 2) {
    throw error("scenarios_per_agent must be >= 2");
  }
  if (arms.empty()) throw error("no arms");
  for (const auto& arm : arms) {
    if (arm.reported.size() != arm.outcomes.size()) {
      throw error("arm lists must have equal length");
    }
    if (arm.reported.size() <
        static_cast<std::size_t>(cfg.scenarios_per_agent)) {
      throw error("too few samples: arm '" + arm_name(arm.name) + "' has " +
                  std::to_string(arm.reported.size()) + ", need " +
                  std::to_string(cfg.scenarios_per_agent));
    }
  }

  const std::size_t k =
      static_cast<std::size_t>(cfg.scenarios_per_agent);
  std::vector<ArmResult> results;
  results.reserve(arms.size());

  for (const auto& arm : arms) {
    ArmResult res;
    res.name = arm.name;
    for (int g = 0; g < cfg.agents_per_arm; ++g) {
      AgentSpec spec = population;
      spec.seed = derive_seed(seed, static_cast<std::uint64_t>(g));
      Agent agent(spec);

      const std::vector<std::size_t> idx =
          sample_indices(arm.reported.size(), k, agent.eng);

      std::vector<double> xs;
      std::vector<double> ys;
      std::vector<int> row;
      xs.reserve(k);
      ys.reserve(k);
      row.reserve(k);
      for (const std::size_t i : idx) {
        const Probability reported(arm.reported[i]);
        const Decision d = agent_decide(agent, reported);
        agent_update(agent, reported, arm.outcomes[i]);
        xs.push_back(arm.reported[i]);
        ys.push_back(static_cast<double>(d.likert));
        row.push_back(d.likert);
      }
      res.decisions.push_back(std::move(row));
      try {
        res.per_agent_corr.push_back(pearson(xs, ys));
      } catch (const error&) {
        ++res.excluded;  // constant decisions (or reports): no correlation
      }
    }
    if (res.per_agent_corr.empty()) {
      throw error("all agents excluded in arm '" + arm_name(res.name) +
                  "': mean correlation undefined");
    }
    double sum = 0.0;
    for (const double c : res.per_agent_corr) sum += c;
    res.mean_corr = sum / static_cast<double>(res.per_agent_corr.size());
    results.push_back(std::move(res));
  }
  return results;
}

}  // namespace ptcal
