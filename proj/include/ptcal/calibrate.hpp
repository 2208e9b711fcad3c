#pragma once
// Post-hoc calibrators: Platt scaling (2-parameter Newton fit), isotonic
// regression (pool-adjacent-violators), histogram binning, temperature
// scaling (golden-section on logits), and the Binning-with-Platt composite.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "ptcal/core.hpp"

namespace ptcal {

// ---------------------------------------------------------------------------
// Models

struct PlattModel {
  double a = 1.0;
  double b = 0.0;
};

// Right-continuous step function: value at p is y[j] for the largest j with
// x[j] <= p; p below x.front() clamps to y.front().
struct IsotonicModel {
  std::vector<double> x;  // strictly increasing, in [0,1]
  std::vector<double> y;  // non-decreasing, in [0,1]
};

enum class BinStrategy { equal_width, equal_frequency };

inline std::string bin_strategy_name(BinStrategy s) {
  return s == BinStrategy::equal_width ? "equal-width" : "equal-frequency";
}

inline BinStrategy bin_strategy_from_name(const std::string& name) {
  if (name == "equal-width") return BinStrategy::equal_width;
  if (name == "equal-frequency") return BinStrategy::equal_frequency;
  throw error("unknown bin strategy: " + name);
}

struct BinningModel {
  std::vector<double> edges;   // strictly increasing, edges.front()=0, back()=1
  std::vector<double> values;  // one per bin, in [0,1]
  BinStrategy strategy = BinStrategy::equal_width;
};

struct TemperatureModel {
  double t = 1.0;
};

struct BinningWithPlattModel {
  PlattModel platt;
  BinningModel binning;
};

using CalibratorModel = std::variant<PlattModel, IsotonicModel, BinningModel,
                                     TemperatureModel, BinningWithPlattModel>;

enum class Method { platt, isotonic, binning, temperature, binning_platt };

inline std::string method_name(Method m) {
  switch (m) {
    case Method::platt: return "platt";
    case Method::isotonic: return "isotonic";
    case Method::binning: return "binning";
    case Method::temperature: return "temperature";
    case Method::binning_platt: return "binning-platt";
  }
  throw error("unknown method");
}

inline Method method_from_name(const std::string& name) {
  if (name == "platt") return Method::platt;
  if (name == "isotonic") return Method::isotonic;
  if (name == "binning") return Method::binning;
  if (name == "temperature") return Method::temperature;
  if (name == "binning-platt") return Method::binning_platt;
  throw error("unknown method: " + name);
}

// ---------------------------------------------------------------------------
// Shared numeric helpers

namespace detail {

// log(sigmoid(z)), stable in both tails.
inline double log_sigmoid(double z) {
  if (z >= 0.0) return -std::log1p(std::exp(-z));
  return z - std::log1p(std::exp(z));
}

inline void require_nonempty(const Dataset& data) {
  if (data.empty()) throw error("empty dataset");
}

inline void require_both_classes(const Dataset& data, const char* what) {
  bool has0 = false;
  bool has1 = false;
  for (const auto& s : data) {
    (s.label == 0 ? has0 : has1) = true;
    if (has0 && has1) return;
  }
  throw error(std::string("degenerate labels: ") + what +
              " requires both classes present");
}

}  // namespace detail

// ---------------------------------------------------------------------------
// Platt scaling: minimize mean Bernoulli NLL of sigmoid(a*p + b) by Newton's
// method from (a,b) = (1,0); converge when the gradient infinity-norm drops
// below 1e-8, cap at 100 iterations, halve steps that fail to decrease NLL.

inline constexpr double kPlattGradTol = 1e-8;
inline constexpr int kPlattMaxIter = 100;

inline double platt_nll(const Dataset& data, double a, double b) {
  double sum = 0.0;
  for (const auto& s : data) {
    const double z = a * s.score.value() + b;
    sum -= s.label == 1 ? detail::log_sigmoid(z) : detail::log_sigmoid(-z);
  }
  return sum / static_cast<double>(data.size());
}

inline PlattModel fit_platt(const Dataset& data) {
  detail::require_nonempty(data);
  detail::require_both_classes(data, "platt");

  const double n = static_cast<double>(data.size());
  double a = 1.0;
  double b = 0.0;
  double nll = platt_nll(data, a, b);

  for (int iter = 0; iter < kPlattMaxIter; ++iter) {
    double ga = 0.0, gb = 0.0;            // gradient of mean NLL
    double haa = 0.0, hab = 0.0, hbb = 0.0;  // Hessian
    for (const auto& s : data) {
      const double p = s.score.value();
      const double q = sigmoid(a * p + b);
      const double r = q - static_cast<double>(s.label);
      const double w = q * (1.0 - q);
      ga += r * p;
      gb += r;
      haa += w * p * p;
      hab += w * p;
      hbb += w;
    }
    ga /= n; gb /= n; haa /= n; hab /= n; hbb /= n;

    const double ginf = std::max(std::abs(ga), std::abs(gb));
    if (ginf < kPlattGradTol) return PlattModel{a, b};

    // Tiny ridge keeps the solve well-posed when all scores coincide.
    haa += 1e-12;
    hbb += 1e-12;
    const double det = haa * hbb - hab * hab;
    double da, db;
    if (det > 1e-300) {
      da = -(hbb * ga - hab * gb) / det;
      db = -(haa * gb - hab * ga) / det;
    } else {
      da = -ga;  // gradient fallback; not reachable with the ridge in place
      db = -gb;
    }

    double step = 1.0;
    bool moved = false;
    for (int halving = 0; halving < 40; ++halving) {
      const double na = a + step * da;
      const double nb = b + step * db;
      const double nnll = platt_nll(data, na, nb);
      if (nnll <= nll) {
        a = na;
        b = nb;
        nll = nnll;
        moved = true;
        break;
      }
      step *= 0.5;
    }
    if (!moved) {
      throw error("platt fit stalled: no descent direction at iteration " +
                  std::to_string(iter));
    }
  }
  throw error("platt fit did not converge within " +
              std::to_string(kPlattMaxIter) + " iterations");
}

inline Probability apply_platt(const PlattModel& m, Probability p) {
  return Probability(sigmoid(m.a * p.value() + m.b));
}

// ---------------------------------------------------------------------------
// Isotonic regression via pool-adjacent-violators. Samples with exactly equal
// scores are pre-pooled (weight = count, value = mean label); the result is a
// step function with one breakpoint per final block, strictly increasing in
// both x and fitted value.

inline IsotonicModel fit_isotonic(const Dataset& data) {
  detail::require_nonempty(data);

  std::vector<std::pair<double, int>> pts;
  pts.reserve(data.size());
  for (const auto& s : data) pts.emplace_back(s.score.value(), s.label);
  std::sort(pts.begin(), pts.end());

  struct Block {
    double x;     // first (lowest) score covered by the block
    double sum;   // sum of labels
    double w;     // sample count
  };
  std::vector<Block> blocks;
  blocks.reserve(pts.size());

  std::size_t i = 0;
  while (i < pts.size()) {
    // Pre-pool ties.
    std::size_t j = i;
    double sum = 0.0;
    while (j < pts.size() && pts[j].first == pts[i].first) {
      sum += static_cast<double>(pts[j].second);
      ++j;
    }
    blocks.push_back({pts[i].first, sum, static_cast<double>(j - i)});
    // Pool adjacent violators (merge on >= so equal means collapse too).
    while (blocks.size() >= 2) {
      const Block& prev = blocks[blocks.size() - 2];
      const Block& last = blocks.back();
      if (prev.sum * last.w >= last.sum * prev.w) {
        Block merged{prev.x, prev.sum + last.sum, prev.w + last.w};
        blocks.pop_back();
        blocks.back() = merged;
      } else {
        break;
      }
    }
    i = j;
  }

  IsotonicModel m;
  m.x.reserve(blocks.size());
  m.y.reserve(blocks.size());
  for (const auto& b : blocks) {
    m.x.push_back(b.x);
    m.y.push_back(b.sum / b.w);
  }
  return m;
}

inline Probability apply_isotonic(const IsotonicModel& m, Probability p) {
  if (m.x.empty()) throw error("empty isotonic model");
  const auto it = std::upper_bound(m.x.begin(), m.x.end(), p.value());
  const std::size_t j =
      it == m.x.begin() ? 0 : static_cast<std::size_t>(it - m.x.begin()) - 1;
  return Probability(m.y[j]);
}

// ---------------------------------------------------------------------------
// Histogram binning. Bin j covers [edges[j], edges[j+1]), with the final bin
// closed at 1. Empty bins inherit the value of the nearest non-empty bin
// (left neighbor first, then right).

namespace detail {
inline std::size_t bin_index(const std::vector<double>& edges, double p) {
  const auto it = std::upper_bound(edges.begin(), edges.end(), p);
  std::size_t j = static_cast<std::size_t>(it - edges.begin());
  if (j == 0) return 0;  // p == edges.front() boundary
  --j;
  const std::size_t nbins = edges.size() - 1;
  return j >= nbins ? nbins - 1 : j;
}
}  // namespace detail

inline BinningModel fit_binning(const Dataset& data, int bins,
                                BinStrategy strategy) {
  detail::require_nonempty(data);
  if (bins < 1) throw error("bins must be >= 1, got " + std::to_string(bins));

  BinningModel m;
  m.strategy = strategy;
  const std::size_t n = data.size();

  if (strategy == BinStrategy::equal_width) {
    m.edges.reserve(static_cast<std::size_t>(bins) + 1);
    for (int k = 0; k <= bins; ++k) {
      m.edges.push_back(static_cast<double>(k) / static_cast<double>(bins));
    }
  } else {
    std::vector<double> s = scores_of(data);
    std::sort(s.begin(), s.end());
    m.edges.push_back(0.0);
    for (int k = 1; k < bins; ++k) {
      const std::size_t pos = static_cast<std::size_t>(k) * n /
                              static_cast<std::size_t>(bins);
      const double e = s[pos];
      if (e > m.edges.back() && e < 1.0) m.edges.push_back(e);
    }
    m.edges.push_back(1.0);
  }

  const std::size_t nbins = m.edges.size() - 1;
  std::vector<double> sum(nbins, 0.0);
  std::vector<std::size_t> count(nbins, 0);
  for (const auto& smp : data) {
    const std::size_t j = detail::bin_index(m.edges, smp.score.value());
    sum[j] += static_cast<double>(smp.label);
    ++count[j];
  }

  m.values.assign(nbins, -1.0);
  for (std::size_t j = 0; j < nbins; ++j) {
    if (count[j] > 0) m.values[j] = sum[j] / static_cast<double>(count[j]);
  }
  // Fill empty bins from the nearest fitted neighbor.
  for (std::size_t j = 0; j < nbins; ++j) {
    if (m.values[j] >= 0.0) continue;
    double fill = -1.0;
    for (std::size_t k = j; k-- > 0;) {
      if (m.values[k] >= 0.0) { fill = m.values[k]; break; }
    }
    if (fill < 0.0) {
      for (std::size_t k = j + 1; k < nbins; ++k) {
        if (m.values[k] >= 0.0) { fill = m.values[k]; break; }
      }
    }
    m.values[j] = fill;  // data is non-empty, so some bin is fitted
  }
  return m;
}

inline Probability apply_binning(const BinningModel& m, Probability p) {
  if (m.edges.size() < 2) throw error("empty binning model");
  return Probability(m.values[detail::bin_index(m.edges, p.value())]);
}

// ---------------------------------------------------------------------------
// Temperature scaling: golden-section search for t in [0.05, 20] minimizing
// the mean NLL of sigmoid(z/t); interval tolerance 1e-6. Requires logits.

inline constexpr double kTemperatureLo = 0.05;
inline constexpr double kTemperatureHi = 20.0;
inline constexpr double kTemperatureTol = 1e-6;

namespace detail {
inline double temperature_nll(const Dataset& data, double t) {
  double sum = 0.0;
  for (const auto& s : data) {
    const double z = *s.logit / t;
    sum -= s.label == 1 ? log_sigmoid(z) : log_sigmoid(-z);
  }
  return sum / static_cast<double>(data.size());
}
}  // namespace detail

inline TemperatureModel fit_temperature(const Dataset& data) {
  detail::require_nonempty(data);
  for (const auto& s : data) {
    if (!s.logit) throw error("logits required: temperature scaling fits on logits");
  }
  detail::require_both_classes(data, "temperature scaling");

  const double invphi = (std::sqrt(5.0) - 1.0) / 2.0;
  double lo = kTemperatureLo;
  double hi = kTemperatureHi;
  double c = hi - invphi * (hi - lo);
  double d = lo + invphi * (hi - lo);
  double fc = detail::temperature_nll(data, c);
  double fd = detail::temperature_nll(data, d);
  while (hi - lo > kTemperatureTol) {
    if (fc < fd) {
      hi = d;
      d = c;
      fd = fc;
      c = hi - invphi * (hi - lo);
      fc = detail::temperature_nll(data, c);
    } else {
      lo = c;
      c = d;
      fc = fd;
      d = lo + invphi * (hi - lo);
      fd = detail::temperature_nll(data, d);
    }
  }
  return TemperatureModel{(lo + hi) / 2.0};
}

inline Probability apply_temperature(const TemperatureModel& m, double logit_z) {
  return Probability(sigmoid(logit_z / m.t));
}

// ---------------------------------------------------------------------------
// Binning-with-Platt composite: Platt first, then histogram binning fit on
// the Platt-calibrated scores.

inline BinningWithPlattModel fit_binning_with_platt(const Dataset& data,
                                                    int bins,
                                                    BinStrategy strategy) {
  BinningWithPlattModel m;
  m.platt = fit_platt(data);
  Dataset rescored;
  rescored.reserve(data.size());
  for (const auto& s : data) {
    ScoredSample t;
    t.score = apply_platt(m.platt, s.score);
    t.label = s.label;
    rescored.push_back(t);
  }
  m.binning = fit_binning(rescored, bins, strategy);
  return m;
}

// ---------------------------------------------------------------------------
// Uniform fit/apply over the model variant.

inline constexpr int kDefaultBins = 15;

inline CalibratorModel fit_calibrator(Method method, const Dataset& data,
                                      int bins = kDefaultBins,
                                      BinStrategy strategy =
                                          BinStrategy::equal_width) {
  switch (method) {
    case Method::platt: return fit_platt(data);
    case Method::isotonic: return fit_isotonic(data);
    case Method::binning: return fit_binning(data, bins, strategy);
    case Method::temperature: return fit_temperature(data);
    case Method::binning_platt:
      return fit_binning_with_platt(data, bins, strategy);
  }
  throw error("unknown method");
}

inline Method method_of(const CalibratorModel& m) {
  return std::visit(
      [](const auto& v) {
        using T = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<T, PlattModel>) return Method::platt;
        else if constexpr (std::is_same_v<T, IsotonicModel>) return Method::isotonic;
        else if constexpr (std::is_same_v<T, BinningModel>) return Method::binning;
        else if constexpr (std::is_same_v<T, TemperatureModel>) return Method::temperature;
        else return Method::binning_platt;
      },
      m);
}

inline Probability apply_calibrator(const CalibratorModel& m,
                                    const ScoredSample& s) {
  return std::visit(
      [&s](const auto& v) -> Probability {
        using T = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<T, PlattModel>) {
          return apply_platt(v, s.score);
        } else if constexpr (std::is_same_v<T, IsotonicModel>) {
          return apply_isotonic(v, s.score);
        } else if constexpr (std::is_same_v<T, BinningModel>) {
          return apply_binning(v, s.score);
        } else if constexpr (std::is_same_v<T, TemperatureModel>) {
          if (!s.logit) {
            throw error("logits required: temperature model needs a logit column");
          }
          return apply_temperature(v, *s.logit);
        } else {
          return apply_binning(v.binning, apply_platt(v.platt, s.score));
        }
      },
      m);
}

// Invariant checks used when deserializing models.
inline void validate_model(const CalibratorModel& m) {
  std::visit(
      [](const auto& v) {
        using T = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<T, PlattModel>) {
          if (!std::isfinite(v.a) || !std::isfinite(v.b)) {
            throw error("platt model parameters must be finite");
          }
        } else if constexpr (std::is_same_v<T, IsotonicModel>) {
          if (v.x.empty() || v.x.size() != v.y.size()) {
            throw error("isotonic model must have matched non-empty breakpoints");
          }
          for (std::size_t i = 0; i < v.x.size(); ++i) {
            if (!(v.x[i] >= 0.0 && v.x[i] <= 1.0) ||
                !(v.y[i] >= 0.0 && v.y[i] <= 1.0)) {
              throw error("isotonic breakpoints must lie in [0,1]");
            }
            if (i > 0 && !(v.x[i] > v.x[i - 1])) {
              throw error("isotonic x values must be strictly increasing");
            }
            if (i > 0 && v.y[i] < v.y[i - 1]) {
              throw error("isotonic y values must be non-decreasing");
            }
          }
        } else if constexpr (std::is_same_v<T, BinningModel>) {
          if (v.edges.size() < 2 || v.values.size() != v.edges.size() - 1) {
            throw error("binning model must have n+1 edges for n values");
          }
          if (v.edges.front() != 0.0 || v.edges.back() != 1.0) {
            throw error("binning edges must span [0,1]");
          }
          for (std::size_t i = 1; i < v.edges.size(); ++i) {
            if (!(v.edges[i] > v.edges[i - 1])) {
              throw error("binning edges must be strictly increasing");
            }
          }
          for (const double val : v.values) {
            if (!(val >= 0.0 && val <= 1.0)) {
              throw error("binning values must lie in [0,1]");
            }
          }
        } else if constexpr (std::is_same_v<T, TemperatureModel>) {
          if (!(v.t > 0.0) || !std::isfinite(v.t)) {
            throw error("temperature must be positive and finite");
          }
        } else {
          validate_model(CalibratorModel{v.platt});
          validate_model(CalibratorModel{v.binning});
        }
      },
      m);
}

}  // namespace ptcal
