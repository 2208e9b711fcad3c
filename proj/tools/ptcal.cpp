// ptcal: probability-calibration toolkit CLI.
//
// Subcommands: generate, fit, apply, evaluate, compare, pt, simulate,
// reliability. Every output file embeds its effective configuration as
// `# command: ...` (excluding --out, which does not affect content), the
// PRNG algorithm id, and a schema tag; re-running the embedded command
// reproduces the file bit-exactly.

#include <cstdint>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "ptcal/ptcal.hpp"

namespace {

using ptcal::format_double;

constexpr const char* kReportMagic = "ptcal-report v1";
constexpr const char* kDataMagic = "ptcal-data v1";
constexpr const char* kReliabilityMagic = "ptcal-reliability v1";

std::string rng_comment() {
  return "rng: " + std::string(ptcal::kRngAlgorithm);
}

// ---------------------------------------------------------------------------
// Shared option bundles

struct SplitOption {
  std::string text = "0.8,0.1,0.1";

  ptcal::SplitSpec spec(std::uint64_t master_seed) const {
    const auto parts = ptcal::split_view(text, ',');
    if (parts.size() != 3) {
      throw ptcal::error("invalid --split (need train,val,test): " + text);
    }
    ptcal::SplitSpec s;
    s.train_frac = ptcal::parse_double(parts[0], "split fraction");
    s.val_frac = ptcal::parse_double(parts[1], "split fraction");
    s.test_frac = ptcal::parse_double(parts[2], "split fraction");
    s.seed = ptcal::derive_seed(master_seed, ptcal::SeedStream::split);
    ptcal::validate_split_spec(s);
    return s;
  }
};

struct SynthOptions {
  std::string kind = "pt";
  std::size_t n = 20000;
  std::string law = "uniform";
  double alpha = 1.0;
  double beta = 1.0;
  double t = 2.0;
  double dist_gamma = 0.85;
  double a = 2.0;
  double b = -1.0;

  void add_flags(CLI::App* cmd) {
    cmd->add_option("--kind", kind,
                    "distortion: identity|temperature|pt|logistic")
        ->check(CLI::IsMember({"identity", "temperature", "pt", "logistic"}));
    cmd->add_option("--n", n, "sample count")->check(CLI::PositiveNumber);
    cmd->add_option("--law", law, "true-probability law: uniform|beta")
        ->check(CLI::IsMember({"uniform", "beta"}));
    cmd->add_option("--alpha", alpha, "beta-law alpha");
    cmd->add_option("--beta", beta, "beta-law beta");
    cmd->add_option("--t", t, "temperature-distortion t");
    cmd->add_option("--dist-gamma", dist_gamma, "pt-distortion gamma");
    cmd->add_option("--a", a, "logistic-distortion slope");
    cmd->add_option("--b", b, "logistic-distortion intercept");
  }

  ptcal::DistortionSpec spec(std::uint64_t master_seed) const {
    ptcal::DistortionSpec s;
    s.kind = ptcal::distortion_from_name(kind);
    s.n = n;
    s.law = ptcal::law_from_name(law);
    s.alpha = alpha;
    s.beta = beta;
    s.t = t;
    s.gamma = dist_gamma;
    s.a = a;
    s.b = b;
    s.seed = ptcal::derive_seed(master_seed, ptcal::SeedStream::synth);
    ptcal::validate_distortion_spec(s);
    return s;
  }

  // Canonical embedded form: only the parameters the chosen kind/law uses.
  std::string canonical_args() const {
    std::string out = "--kind " + kind + " --n " + std::to_string(n) +
                      " --law " + law;
    if (law == "beta") {
      out += " --alpha " + format_double(alpha) + " --beta " +
             format_double(beta);
    }
    if (kind == "temperature") out += " --t " + format_double(t);
    if (kind == "pt") out += " --dist-gamma " + format_double(dist_gamma);
    if (kind == "logistic") {
      out += " --a " + format_double(a) + " --b " + format_double(b);
    }
    return out;
  }
};

ptcal::Dataset fit_subset(const ptcal::Dataset& data,
                          const std::string& fit_split,
                          const ptcal::SplitSpec& spec) {
  if (fit_split == "all") return data;
  const ptcal::Split s = ptcal::split_dataset(data, spec);
  if (fit_split == "train") return s.train;
  if (fit_split == "val") return s.val;
  if (fit_split == "test") return s.test;
  throw ptcal::error("invalid --fit-split: " + fit_split);
}

std::vector<ptcal::ScoredOutcome> to_outcomes(const ptcal::Dataset& data) {
  std::vector<ptcal::ScoredOutcome> out;
  out.reserve(data.size());
  for (const auto& s : data) out.push_back({s.score.value(), s.label});
  return out;
}

// Applies the optional calibrator and optional PT-inverse presentation stage.
std::vector<ptcal::ScoredOutcome> staged_outcomes(
    const ptcal::Dataset& data, const ptcal::CalibratorModel* model,
    std::optional<ptcal::PTParams> pt) {
  std::vector<ptcal::ScoredOutcome> out;
  out.reserve(data.size());
  for (const auto& s : data) {
    double q = s.score.value();
    if (model) q = ptcal::apply_calibrator(*model, s).value();
    if (pt) q = ptcal::pt_inverse(ptcal::Probability(q), *pt).value();
    out.push_back({q, s.label});
  }
  return out;
}

std::string reliability_rows(const std::vector<ptcal::BinStats>& bins) {
  std::string out = "bin_lo,bin_hi,count,mean_conf,accuracy\n";
  for (const auto& b : bins) {
    out += format_double(b.lo) + "," + format_double(b.hi) + "," +
           std::to_string(b.count) + ",";
    if (b.count > 0) {
      out += format_double(*b.mean_conf) + "," + format_double(*b.accuracy);
    } else {
      out += ",";
    }
    out += "\n";
  }
  return out;
}

std::string metric_report_text(const std::string& command,
                               const ptcal::MetricReport& r) {
  std::string out;
  out += "# " + std::string(kReportMagic) + "\n";
  out += "# command: " + command + "\n";
  out += "# " + rng_comment() + "\n";
  out += "schema metric-report\n";
  out += "n " + std::to_string(r.n) + "\n";
  out += "bins " + std::to_string(r.m_bins) + "\n";
  out += "accuracy " + format_double(r.accuracy) + "\n";
  out += "f1 " + format_double(r.f1) + "\n";
  out += "ece " + format_double(r.ece) + "\n";
  out += "mce " + format_double(r.mce) + "\n";
  out += "oe " + format_double(r.oe) + "\n";
  out += "nll " + format_double(r.nll) + "\n";
  out += "brier " + format_double(r.brier) + "\n";
  out += reliability_rows(r.bins);
  return out;
}

// ---------------------------------------------------------------------------
// Subcommand handlers. Each returns the canonical command string it embeds.

struct GenerateArgs {
  SynthOptions synth;
  std::uint64_t seed = 42;
  std::string out;
};

void run_generate(const GenerateArgs& a) {
  const ptcal::DistortionSpec spec = a.synth.spec(a.seed);
  const ptcal::Dataset data = ptcal::generate(spec);
  const std::string command = "generate " + a.synth.canonical_args() +
                              " --seed " + std::to_string(a.seed);
  ptcal::write_csv(a.out, data,
                   {kDataMagic, "command: " + command, rng_comment()});
}

struct FitArgs {
  std::string data_path;
  std::string method = "isotonic";
  int bins = ptcal::kDefaultBins;
  std::string strategy = "equal-width";
  SplitOption split;
  std::string fit_split = "val";
  std::uint64_t seed = 42;
  std::string out;
};

void run_fit(const FitArgs& a) {
  const ptcal::Dataset data = ptcal::load_csv(a.data_path);
  const ptcal::Dataset subset =
      fit_subset(data, a.fit_split, a.split.spec(a.seed));
  const ptcal::CalibratorModel model =
      ptcal::fit_calibrator(ptcal::method_from_name(a.method), subset, a.bins,
                            ptcal::bin_strategy_from_name(a.strategy));
  const std::string command =
      "fit " + a.data_path + " --method " + a.method + " --bins " +
      std::to_string(a.bins) + " --strategy " + a.strategy + " --split " +
      a.split.text + " --fit-split " + a.fit_split + " --seed " +
      std::to_string(a.seed);
  ptcal::write_model(a.out, model, {"command: " + command, rng_comment()});
}

struct StageArgs {
  std::string model_path;  // empty = no calibrator stage
  bool pt_stage = false;
  double gamma = ptcal::kGammaDefault;

  std::optional<ptcal::CalibratorModel> model;

  void load() {
    if (!model_path.empty()) model = ptcal::load_model(model_path);
    if (model_path.empty() && !pt_stage) {
      throw ptcal::error("nothing to apply: pass --model and/or --pt");
    }
    if (pt_stage) ptcal::validate_gamma(gamma);
  }

  std::string canonical_args() const {
    std::string out;
    if (!model_path.empty()) out += " --model " + model_path;
    if (pt_stage) out += " --pt --gamma " + format_double(gamma);
    return out;
  }
};

struct ApplyArgs {
  std::string data_path;
  StageArgs stages;
  std::string out;
};

void run_apply(const ApplyArgs& a) {
  StageArgs st = a.stages;
  st.load();
  const ptcal::Dataset data = ptcal::load_csv(a.data_path);
  const std::optional<ptcal::PTParams> pt =
      st.pt_stage ? std::optional<ptcal::PTParams>{{st.gamma}} : std::nullopt;
  const auto staged =
      staged_outcomes(data, st.model ? &*st.model : nullptr, pt);

  bool all_logits = !data.empty();
  for (const auto& s : data) {
    if (!s.logit) { all_logits = false; break; }
  }
  const std::string command = "apply " + a.data_path + st.canonical_args();
  std::string text;
  text += "# " + std::string(kDataMagic) + "\n";
  text += "# command: " + command + "\n";
  text += "# " + rng_comment() + "\n";
  text += all_logits ? "score,label,logit,calibrated\n"
                     : "score,label,calibrated\n";
  for (std::size_t i = 0; i < data.size(); ++i) {
    text += format_double(data[i].score.value()) + "," +
            std::to_string(data[i].label);
    if (all_logits) text += "," + format_double(*data[i].logit);
    text += "," + format_double(staged[i].q) + "\n";
  }
  ptcal::write_file_atomic(a.out, text);
}

struct EvaluateArgs {
  std::string data_path;
  StageArgs stages;  // both optional here: bare evaluate = raw scores
  int bins = ptcal::kDefaultBins;
  std::string out;
};

void run_evaluate(const EvaluateArgs& a) {
  StageArgs st = a.stages;
  if (!st.model_path.empty() || st.pt_stage) st.load();
  const ptcal::Dataset data = ptcal::load_csv(a.data_path);
  const std::optional<ptcal::PTParams> pt =
      st.pt_stage ? std::optional<ptcal::PTParams>{{st.gamma}} : std::nullopt;
  const auto staged =
      staged_outcomes(data, st.model ? &*st.model : nullptr, pt);
  const ptcal::MetricReport report = ptcal::evaluate_outcomes(staged, a.bins);
  const std::string command = "evaluate " + a.data_path +
                              st.canonical_args() + " --bins " +
                              std::to_string(a.bins);
  ptcal::write_file_atomic(a.out, metric_report_text(command, report));
}

struct CompareArgs {
  std::string data_path;
  int bins = ptcal::kDefaultBins;
  std::string strategy = "equal-width";
  SplitOption split;
  double gamma = ptcal::kGammaDefault;
  std::uint64_t seed = 42;
  std::string out;
};

void run_compare(const CompareArgs& a) {
  ptcal::validate_gamma(a.gamma);
  const ptcal::Dataset data = ptcal::load_csv(a.data_path);
  const ptcal::Split split = ptcal::split_dataset(data, a.split.spec(a.seed));
  const ptcal::BinStrategy strategy =
      ptcal::bin_strategy_from_name(a.strategy);

  struct Row {
    std::string name;
    bool available = false;
    ptcal::MetricReport report;
  };
  std::vector<Row> rows;
  rows.push_back({"uncalibrated", true,
                  ptcal::evaluate_outcomes(to_outcomes(split.test), a.bins)});

  const auto add_method = [&](ptcal::Method m) {
    Row row;
    row.name = ptcal::method_name(m);
    try {
      const ptcal::CalibratorModel model =
          ptcal::fit_calibrator(m, split.val, a.bins, strategy);
      row.report = ptcal::evaluate_outcomes(
          staged_outcomes(split.test, &model, std::nullopt), a.bins);
      row.available = true;
    } catch (const ptcal::error& e) {
      // Temperature scaling needs a logit column; emit n/a rather than fail
      // the whole table.
      if (std::string(e.what()).find("logits required") == std::string::npos) {
        throw;
      }
    }
    rows.push_back(std::move(row));
  };
  add_method(ptcal::Method::platt);
  add_method(ptcal::Method::isotonic);
  add_method(ptcal::Method::binning_platt);
  add_method(ptcal::Method::temperature);

  const std::string command =
      "compare " + a.data_path + " --bins " + std::to_string(a.bins) +
      " --strategy " + a.strategy + " --split " + a.split.text + " --gamma " +
      format_double(a.gamma) + " --seed " + std::to_string(a.seed);

  std::string text;
  text += "# " + std::string(kReportMagic) + "\n";
  text += "# command: " + command + "\n";
  text += "# " + rng_comment() + "\n";
  text += "schema compare\n";
  text += "n_train " + std::to_string(split.train.size()) + "\n";
  text += "n_val " + std::to_string(split.val.size()) + "\n";
  text += "n_test " + std::to_string(split.test.size()) + "\n";
  text += "bins " + std::to_string(a.bins) + "\n";
  text += "method,accuracy,f1,ece,nll,brier\n";
  for (const auto& row : rows) {
    if (!row.available) {
      text += row.name + ",n/a,n/a,n/a,n/a,n/a\n";
      continue;
    }
    text += row.name + "," + format_double(row.report.accuracy) + "," +
            format_double(row.report.f1) + "," +
            format_double(row.report.ece) + "," +
            format_double(row.report.nll) + "," +
            format_double(row.report.brier) + "\n";
  }
  // Flag the best value per column; ties go to the earliest row.
  const auto best_of = [&rows](auto field, bool maximize) {
    std::string who;
    double best = 0.0;
    for (const auto& row : rows) {
      if (!row.available) continue;
      const double v = field(row.report);
      if (who.empty() || (maximize ? v > best : v < best)) {
        who = row.name;
        best = v;
      }
    }
    return who;
  };
  text += "best accuracy " +
          best_of([](const ptcal::MetricReport& r) { return r.accuracy; },
                  true) +
          "\n";
  text += "best f1 " +
          best_of([](const ptcal::MetricReport& r) { return r.f1; }, true) +
          "\n";
  text += "best ece " +
          best_of([](const ptcal::MetricReport& r) { return r.ece; }, false) +
          "\n";
  text += "best nll " +
          best_of([](const ptcal::MetricReport& r) { return r.nll; }, false) +
          "\n";
  text += "best brier " +
          best_of([](const ptcal::MetricReport& r) { return r.brier; },
                  false) +
          "\n";
  ptcal::write_file_atomic(a.out, text);
}

struct PtArgs {
  double gamma = ptcal::kGammaDefault;
  std::string out;
};

void run_pt(const PtArgs& a) {
  const ptcal::RoundTripReport r =
      ptcal::pt_roundtrip_report(ptcal::validate_gamma(a.gamma));
  const std::string command = "pt --gamma " + format_double(a.gamma);
  std::string text;
  text += "# " + std::string(kReportMagic) + "\n";
  text += "# command: " + command + "\n";
  text += "# " + rng_comment() + "\n";
  text += "schema pt-roundtrip\n";
  text += "gamma " + format_double(a.gamma) + "\n";
  text += "grid_points 101\n";
  text += "mae_percent " + format_double(r.mae_percent) + "\n";
  text += "mse_percent2 " + format_double(r.mse_percent2) + "\n";
  text += "mse_prob2 " + format_double(r.mse_prob2) + "\n";
  text += "max_error_percent " + format_double(r.max_error_percent) + "\n";
  text += "max_error_point " + std::to_string(r.max_error_point) + "\n";
  text += "point,error_percent\n";
  for (int p = 0; p <= 100; ++p) {
    text += std::to_string(p) + "," +
            format_double(r.errors_percent[static_cast<std::size_t>(p)]) +
            "\n";
  }
  ptcal::write_file_atomic(a.out, text);
}

struct SimulateArgs {
  SynthOptions synth;
  SplitOption split;
  std::string method = "isotonic";
  int bins = ptcal::kDefaultBins;
  std::string strategy = "equal-width";
  double gamma = ptcal::kGammaDefault;       // pipeline PT-inverse stage
  double agent_gamma = ptcal::kGammaDefault; // agents' perception
  int agents = 30;
  int scenarios = 20;
  double prior = 0.5;
  double reliance_init = 0.2;
  double learning_rate = 0.3;
  double noise_sd = 0.08;
  std::uint64_t seed = 42;
  std::string out;

  SimulateArgs() {
    // Simulation default dataset: PT-distorted scores over a bimodal truth
    // law, large enough for a 80/10/10 split with a 2,000-sample test arm.
    synth.kind = "pt";
    synth.dist_gamma = 0.85;
    synth.law = "beta";
    synth.alpha = 0.4;
    synth.beta = 0.4;
    synth.n = 20000;
  }
};

void run_simulate(const SimulateArgs& a) {
  const ptcal::PTParams pipeline = ptcal::validate_gamma(a.gamma);

  const ptcal::Dataset data = ptcal::generate(a.synth.spec(a.seed));
  const ptcal::Split split = ptcal::split_dataset(data, a.split.spec(a.seed));
  const ptcal::CalibratorModel model = ptcal::fit_calibrator(
      ptcal::method_from_name(a.method), split.val, a.bins,
      ptcal::bin_strategy_from_name(a.strategy));

  const std::vector<ptcal::Arm> arms = ptcal::build_arms(
      split.test, model, pipeline,
      ptcal::derive_seed(a.seed, ptcal::SeedStream::outcome_shuffle));

  ptcal::AgentSpec population;
  population.gamma_agent = a.agent_gamma;
  population.prior = a.prior;
  population.reliance_init = a.reliance_init;
  population.learning_rate = a.learning_rate;
  population.decision_noise_sd = a.noise_sd;

  ptcal::StudyConfig cfg;
  cfg.scenarios_per_agent = a.scenarios;
  cfg.agents_per_arm = a.agents;

  const std::vector<ptcal::ArmResult> results = ptcal::run_study(
      arms, population, cfg,
      ptcal::derive_seed(a.seed, ptcal::SeedStream::study));

  // Decoupling check for the random arm: reported vs. fair-coin outcomes.
  const ptcal::Arm& random_arm = arms.back();
  std::vector<double> outcome_values;
  outcome_values.reserve(random_arm.outcomes.size());
  for (const int y : random_arm.outcomes) {
    outcome_values.push_back(static_cast<double>(y));
  }
  const double decoupling =
      ptcal::pearson(random_arm.reported, outcome_values);

  const std::string command =
      "simulate " + a.synth.canonical_args() + " --split " + a.split.text +
      " --method " + a.method + " --bins " + std::to_string(a.bins) +
      " --strategy " + a.strategy + " --gamma " + format_double(a.gamma) +
      " --agent-gamma " + format_double(a.agent_gamma) + " --agents " +
      std::to_string(a.agents) + " --scenarios " + std::to_string(a.scenarios) +
      " --prior " + format_double(a.prior) + " --reliance-init " +
      format_double(a.reliance_init) + " --learning-rate " +
      format_double(a.learning_rate) + " --noise-sd " +
      format_double(a.noise_sd) + " --seed " + std::to_string(a.seed);

  std::string text;
  text += "# " + std::string(kReportMagic) + "\n";
  text += "# command: " + command + "\n";
  text += "# " + rng_comment() + "\n";
  text += "schema simulation\n";
  text += "n " + std::to_string(data.size()) + "\n";
  text += "n_test " + std::to_string(split.test.size()) + "\n";
  text += "agents_per_arm " + std::to_string(a.agents) + "\n";
  text += "scenarios_per_agent " + std::to_string(a.scenarios) + "\n";
  text += "random_decoupling_pearson " + format_double(decoupling) + "\n";
  for (const auto& r : results) {
    text += "arm " + ptcal::arm_name(r.name) + " mean_corr " +
            format_double(r.mean_corr) + " excluded " +
            std::to_string(r.excluded) + "\n";
    text += "corr " + ptcal::arm_name(r.name);
    for (const double c : r.per_agent_corr) text += " " + format_double(c);
    text += "\n";
  }
  for (std::size_t i = 0; i < results.size(); ++i) {
    for (std::size_t j = i + 1; j < results.size(); ++j) {
      const ptcal::AnovaResult an = ptcal::anova_oneway(
          {results[i].per_agent_corr, results[j].per_agent_corr});
      text += "anova " + ptcal::arm_name(results[i].name) + " " +
              ptcal::arm_name(results[j].name) + " F " +
              format_double(an.f_stat) + " df " +
              std::to_string(an.df_between) + " " +
              std::to_string(an.df_within) + " p " +
              format_double(an.p_value) + "\n";
    }
  }
  ptcal::write_file_atomic(a.out, text);
}

struct ReliabilityArgs {
  std::string data_path;
  int bins = ptcal::kDefaultBins;
  std::string out;
};

void run_reliability(const ReliabilityArgs& a) {
  const ptcal::Dataset data = ptcal::load_csv(a.data_path);
  const auto bins = ptcal::reliability_data(to_outcomes(data), a.bins);
  const std::string command =
      "reliability " + a.data_path + " --bins " + std::to_string(a.bins);
  std::string text;
  text += "# " + std::string(kReliabilityMagic) + "\n";
  text += "# command: " + command + "\n";
  text += "# " + rng_comment() + "\n";
  text += reliability_rows(bins);
  ptcal::write_file_atomic(a.out, text);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"probability-calibration toolkit"};
  app.require_subcommand(1);

  GenerateArgs gen;
  CLI::App* c_gen =
      app.add_subcommand("generate", "write a synthetic scored dataset");
  gen.synth.add_flags(c_gen);
  c_gen->add_option("--seed", gen.seed, "master seed");
  c_gen->add_option("--out", gen.out, "output CSV path")->required();

  FitArgs fit;
  CLI::App* c_fit = app.add_subcommand("fit", "fit a calibrator model");
  c_fit->add_option("data", fit.data_path, "input CSV")->required();
  c_fit->add_option("--method", fit.method,
                    "platt|isotonic|binning|temperature|binning-platt")
      ->check(CLI::IsMember(
          {"platt", "isotonic", "binning", "temperature", "binning-platt"}));
  c_fit->add_option("--bins", fit.bins, "bin count");
  c_fit->add_option("--strategy", fit.strategy,
                    "equal-width|equal-frequency")
      ->check(CLI::IsMember({"equal-width", "equal-frequency"}));
  c_fit->add_option("--split", fit.split.text, "train,val,test fractions");
  c_fit->add_option("--fit-split", fit.fit_split,
                    "which split to fit on: train|val|test|all")
      ->check(CLI::IsMember({"train", "val", "test", "all"}));
  c_fit->add_option("--seed", fit.seed, "master seed");
  c_fit->add_option("--out", fit.out, "output model path")->required();

  ApplyArgs apply;
  CLI::App* c_apply =
      app.add_subcommand("apply", "append a calibrated column to a CSV");
  c_apply->add_option("data", apply.data_path, "input CSV")->required();
  c_apply->add_option("--model", apply.stages.model_path, "model file");
  c_apply->add_flag("--pt", apply.stages.pt_stage,
                    "apply the PT-inverse presentation stage");
  c_apply->add_option("--gamma", apply.stages.gamma, "PT-stage gamma");
  c_apply->add_option("--out", apply.out, "output CSV path")->required();

  EvaluateArgs eval;
  CLI::App* c_eval =
      app.add_subcommand("evaluate", "write a calibration metric report");
  c_eval->add_option("data", eval.data_path, "input CSV")->required();
  c_eval->add_option("--model", eval.stages.model_path, "model file");
  c_eval->add_flag("--pt", eval.stages.pt_stage,
                   "apply the PT-inverse presentation stage");
  c_eval->add_option("--gamma", eval.stages.gamma, "PT-stage gamma");
  c_eval->add_option("--bins", eval.bins, "metric bin count");
  c_eval->add_option("--out", eval.out, "output report path")->required();

  CompareArgs cmp;
  CLI::App* c_cmp = app.add_subcommand(
      "compare", "fit every calibrator on val, compare metrics on test");
  c_cmp->add_option("data", cmp.data_path, "input CSV")->required();
  c_cmp->add_option("--bins", cmp.bins, "bin count");
  c_cmp->add_option("--strategy", cmp.strategy, "binning strategy")
      ->check(CLI::IsMember({"equal-width", "equal-frequency"}));
  c_cmp->add_option("--split", cmp.split.text, "train,val,test fractions");
  c_cmp->add_option("--gamma", cmp.gamma, "PT gamma (recorded)");
  c_cmp->add_option("--seed", cmp.seed, "master seed");
  c_cmp->add_option("--out", cmp.out, "output report path")->required();

  PtArgs pt;
  CLI::App* c_pt =
      app.add_subcommand("pt", "PT weighting round-trip report");
  c_pt->add_option("--gamma", pt.gamma, "PT gamma");
  c_pt->add_option("--out", pt.out, "output report path")->required();

  SimulateArgs sim;
  CLI::App* c_sim = app.add_subcommand(
      "simulate", "synth -> calibrate -> five arms -> agent study");
  sim.synth.add_flags(c_sim);
  c_sim->add_option("--split", sim.split.text, "train,val,test fractions");
  c_sim->add_option("--method", sim.method, "calibrator method")
      ->check(CLI::IsMember(
          {"platt", "isotonic", "binning", "temperature", "binning-platt"}));
  c_sim->add_option("--bins", sim.bins, "bin count");
  c_sim->add_option("--strategy", sim.strategy, "binning strategy")
      ->check(CLI::IsMember({"equal-width", "equal-frequency"}));
  c_sim->add_option("--gamma", sim.gamma, "pipeline PT gamma");
  c_sim->add_option("--agent-gamma", sim.agent_gamma, "agent perception gamma");
  c_sim->add_option("--agents", sim.agents, "agents per arm");
  c_sim->add_option("--scenarios", sim.scenarios, "scenarios per agent");
  c_sim->add_option("--prior", sim.prior, "agent prior");
  c_sim->add_option("--reliance-init", sim.reliance_init,
                    "initial reliance weight");
  c_sim->add_option("--learning-rate", sim.learning_rate,
                    "reliance EMA learning rate");
  c_sim->add_option("--noise-sd", sim.noise_sd, "decision noise SD");
  c_sim->add_option("--seed", sim.seed, "master seed");
  c_sim->add_option("--out", sim.out, "output report path")->required();

  ReliabilityArgs rel;
  CLI::App* c_rel = app.add_subcommand(
      "reliability", "write reliability-diagram CSV for a dataset");
  c_rel->add_option("data", rel.data_path, "input CSV")->required();
  c_rel->add_option("--bins", rel.bins, "bin count");
  c_rel->add_option("--out", rel.out, "output CSV path")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }

  try {
    if (c_gen->parsed()) run_generate(gen);
    if (c_fit->parsed()) run_fit(fit);
    if (c_apply->parsed()) run_apply(apply);
    if (c_eval->parsed()) run_evaluate(eval);
    if (c_cmp->parsed()) run_compare(cmp);
    if (c_pt->parsed()) run_pt(pt);
    if (c_sim->parsed()) run_simulate(sim);
    if (c_rel->parsed()) run_reliability(rel);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
