#pragma once

// Single binary perceptron: stabilities, the temperature-smoothed error
// count and its gradient, the annealed trainer, and the fixed-increment
// perceptron rule used as a baseline.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <istream>
#include <limits>
#include <numeric>
#include <ostream>
#include <random>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "monoplane/data.hpp"
#include "monoplane/error.hpp"

namespace monoplane {

inline double dot(std::span<const double> a, std::span<const double> b) {
  if (a.size() != b.size()) throw DimensionError("dot", a.size(), b.size());
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

// Component 0 is the bias. The Euclidean norm is cached.
class WeightVector {
 public:
  WeightVector() = default;
  explicit WeightVector(std::vector<double> w) : w_(std::move(w)), norm_(std::sqrt(dot(w_, w_))) {}

  std::span<const double> components() const noexcept { return w_; }
  const std::vector<double>& values() const noexcept { return w_; }
  std::size_t size() const noexcept { return w_.size(); }
  double operator[](std::size_t i) const { return w_[i]; }
  double norm() const noexcept { return norm_; }

  WeightVector scaled(double c) const {
    std::vector<double> v = w_;
    for (auto& x : v) x *= c;
    return WeightVector(std::move(v));
  }

  WeightVector with_squared_norm(double target) const {
    require_nonzero("rescale");
    return scaled(std::sqrt(target) / norm_);
  }

  void require_nonzero(const char* context) const {
    if (!(norm_ > 0.0)) throw InvalidArgument(std::string(context) + ": zero-norm weight vector");
  }

  friend bool operator==(const WeightVector& a, const WeightVector& b) { return a.w_ == b.w_; }

 private:
  std::vector<double> w_;
  double norm_ = 0.0;
};

// Signed distance of xi to the hyperplane normal to w.
inline double field(const WeightVector& w, std::span<const double> xi) {
  w.require_nonzero("field");
  if (xi.size() != w.size()) throw DimensionError("field", w.size(), xi.size());
  return dot(w.components(), xi) / w.norm();
}

inline double stability(const WeightVector& w, const LabeledPattern& p) {
  return p.tau * field(w, p.xi);
}

inline std::vector<double> stabilities(const WeightVector& w, std::span<const LabeledPattern> set) {
  std::vector<double> g;
  g.reserve(set.size());
  for (const auto& p : set) g.push_back(stability(w, p));
  return g;
}

struct TrainingConfig {
  double t_initial = 10.0;
  double t_min = 1e-3;
  double t_decay = 0.999;
  double learning_rate = 0.02;
  std::size_t max_epochs = 100000;
  std::uint64_t seed = 1;
  // Window width on correctly classified patterns relative to misclassified ones.
  double temp_ratio = 1.0;

  void validate() const {
    if (!(t_min > 0.0)) throw InvalidArgument("t_min must be positive");
    if (!(t_initial >= t_min)) throw InvalidArgument("t_initial must be >= t_min");
    if (!(t_decay > 0.0 && t_decay < 1.0)) throw InvalidArgument("t_decay must lie in (0,1)");
    if (!(learning_rate > 0.0)) throw InvalidArgument("learning_rate must be positive");
    if (max_epochs == 0) throw InvalidArgument("max_epochs must be at least 1");
    if (!(temp_ratio > 0.0)) throw InvalidArgument("temp_ratio must be positive");
  }

  friend bool operator==(const TrainingConfig&, const TrainingConfig&) = default;
};

namespace detail {

inline void require_temperature(double t) {
  if (!(t > 0.0) || !std::isfinite(t)) throw InvalidArgument("temperature must be positive and finite");
}

inline double pattern_temperature(double gamma, double t, double temp_ratio) {
  return gamma > 0.0 ? temp_ratio * t : t;
}

// 1 - tanh(x), without cancellation for large positive x.
inline double one_minus_tanh(double x) { return 2.0 / (1.0 + std::exp(2.0 * x)); }

inline double sech_squared(double x) {
  const double e = std::exp(-2.0 * std::abs(x));
  return 4.0 * e / ((1.0 + e) * (1.0 + e));
}

}  // namespace detail

// E = 1/2 sum_mu [1 - tanh(gamma_mu / 2T)].
inline double cost(const WeightVector& w, std::span<const LabeledPattern> set, double t,
                   double temp_ratio = 1.0) {
  detail::require_temperature(t);
  w.require_nonzero("cost");
  double e = 0.0;
  for (const auto& p : set) {
    const double g = stability(w, p);
    e += 0.5 * detail::one_minus_tanh(g / (2.0 * detail::pattern_temperature(g, t, temp_ratio)));
  }
  return e;
}

inline std::vector<double> cost_gradient(const WeightVector& w, std::span<const LabeledPattern> set,
                                         double t, double temp_ratio = 1.0) {
  detail::require_temperature(t);
  w.require_nonzero("cost_gradient");
  const std::size_t n = w.size();
  const double norm = w.norm();
  std::vector<double> grad(n, 0.0);
  for (const auto& p : set) {
    if (p.xi.size() != n) throw DimensionError("cost_gradient", n, p.xi.size());
    const double g = stability(w, p);
    const double tp = detail::pattern_temperature(g, t, temp_ratio);
    // dE/dgamma
    const double de = -detail::sech_squared(g / (2.0 * tp)) / (4.0 * tp);
    if (de == 0.0) continue;
    for (std::size_t i = 0; i < n; ++i) {
      grad[i] += de * (p.tau * p.xi[i] - g * w[i] / norm) / norm;
    }
  }
  return grad;
}

struct ErrorCounts {
  std::size_t total = 0;
  std::size_t false_pos = 0;  // tau = -1 classified +1
  std::size_t false_neg = 0;  // tau = +1 classified -1

  friend bool operator==(const ErrorCounts&, const ErrorCounts&) = default;
};

// A pattern exactly on the hyperplane is an error; it is charged to the
// side its label is not on, so total = false_pos + false_neg always.
inline ErrorCounts count_errors(const WeightVector& w, std::span<const LabeledPattern> set) {
  w.require_nonzero("count_errors");
  ErrorCounts c;
  for (const auto& p : set) {
    const double f = field(w, p.xi);
    if (p.tau < 0 && f >= 0.0) ++c.false_pos;
    if (p.tau > 0 && f <= 0.0) ++c.false_neg;
  }
  c.total = c.false_pos + c.false_neg;
  return c;
}

struct EpochRecord {
  double temperature = 0.0;
  double cost = 0.0;
  std::size_t errors = 0;
  double min_stability = 0.0;
};

struct TrainingTrace {
  std::vector<EpochRecord> epochs;
  std::size_t best_epoch = 0;
  bool hebbian_fallback = false;
};

struct TrainingResult {
  WeightVector weights;
  TrainingTrace trace;
};

class TrainingDiverged : public Error {
 public:
  TrainingDiverged(const std::string& what, TrainingTrace trace)
      : Error(what), trace_(std::move(trace)) {}
  const TrainingTrace& trace() const noexcept { return trace_; }

 private:
  TrainingTrace trace_;
};

struct HebbianStart {
  WeightVector weights;
  bool fallback = false;
};

// Center-of-mass start sum_mu tau xi / P, rescaled to |w|^2 = N+1. A
// vanishing sum falls back to a seeded random direction.
inline HebbianStart hebbian_init(std::span<const LabeledPattern> set, std::uint64_t seed = 1) {
  if (set.empty()) throw InvalidArgument("hebbian_init: empty set");
  const std::size_t n = set.front().xi.size();
  std::vector<double> w(n, 0.0);
  double mean_input_norm = 0.0;
  for (const auto& p : set) {
    if (p.xi.size() != n) throw DimensionError("hebbian_init", n, p.xi.size());
    for (std::size_t i = 0; i < n; ++i) w[i] += p.tau * p.xi[i];
    mean_input_norm += std::sqrt(dot(p.xi, p.xi));
  }
  const auto count = static_cast<double>(set.size());
  for (auto& x : w) x /= count;
  mean_input_norm /= count;

  HebbianStart start;
  WeightVector hebb(std::move(w));
  if (hebb.norm() > 1e-12 * mean_input_norm) {
    start.weights = hebb.with_squared_norm(static_cast<double>(n));
    return start;
  }
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal;
  std::vector<double> r(n);
  do {
    for (auto& x : r) x = normal(rng);
  } while (dot(r, r) == 0.0);
  start.weights = WeightVector(std::move(r)).with_squared_norm(static_cast<double>(n));
  start.fallback = true;
  return start;
}

namespace detail {

struct Snapshot {
  std::size_t errors = 0;
  double min_stability = 0.0;
};

inline Snapshot snapshot(const WeightVector& w, std::span<const LabeledPattern> set) {
  Snapshot s{0, std::numeric_limits<double>::infinity()};
  for (const auto& p : set) {
    const double g = stability(w, p);
    if (g <= 0.0) ++s.errors;
    s.min_stability = std::min(s.min_stability, g);
  }
  return s;
}

// Fewer errors wins; ties go to the larger minimal stability.
inline bool improves(const Snapshot& candidate, const Snapshot& best) {
  return candidate.errors < best.errors ||
         (candidate.errors == best.errors && candidate.min_stability > best.min_stability);
}

inline bool all_finite(std::span<const double> v) {
  return std::all_of(v.begin(), v.end(), [](double x) { return std::isfinite(x); });
}

}  // namespace detail

// Annealed gradient descent on the cost: one full-batch step per epoch,
// renormalization to |w|^2 = N+1, then T <- T * t_decay, until T drops
// below t_min or max_epochs is reached. Returns the epoch with the fewest
// training errors (ties: larger minimal stability).
inline TrainingResult minimerror_train(std::span<const LabeledPattern> set,
                                       const TrainingConfig& config) {
  config.validate();
  if (set.empty()) throw InvalidArgument("minimerror_train: empty set");

  const auto start = hebbian_init(set, config.seed);
  const auto squared_norm = static_cast<double>(start.weights.size());
  TrainingResult result;
  result.trace.hebbian_fallback = start.fallback;
  result.weights = start.weights;

  WeightVector w = start.weights;
  detail::Snapshot best{std::numeric_limits<std::size_t>::max(), 0.0};
  double t = config.t_initial;
  for (std::size_t epoch = 0; epoch < config.max_epochs && t >= config.t_min; ++epoch) {
    const auto grad = cost_gradient(w, set, t, config.temp_ratio);
    std::vector<double> next = w.values();
    for (std::size_t i = 0; i < next.size(); ++i) next[i] -= config.learning_rate * grad[i];
    WeightVector stepped(std::move(next));
    if (!detail::all_finite(stepped.components()) || !(stepped.norm() > 0.0)) {
      throw TrainingDiverged("non-finite or zero weights at epoch " + std::to_string(epoch),
                             std::move(result.trace));
    }
    w = stepped.with_squared_norm(squared_norm);

    const double e = cost(w, set, t, config.temp_ratio);
    if (!std::isfinite(e)) {
      throw TrainingDiverged("non-finite cost at epoch " + std::to_string(epoch),
                             std::move(result.trace));
    }
    const auto snap = detail::snapshot(w, set);
    result.trace.epochs.push_back({t, e, snap.errors, snap.min_stability});
    if (detail::improves(snap, best)) {
      best = snap;
      result.weights = w;
      result.trace.best_epoch = epoch;
    }
    t *= config.t_decay;
  }
  return result;
}

// Fixed-increment rule w <- w + eta tau xi on every misclassified pattern.
// Presentation order is reshuffled each epoch from the seed. The best
// snapshot is retained, so the result is defined on non-separable input.
// Trace records carry temperature 0 and cost = error count.
inline TrainingResult rosenblatt_train(std::span<const LabeledPattern> set,
                                       const TrainingConfig& config) {
  config.validate();
  if (set.empty()) throw InvalidArgument("rosenblatt_train: empty set");
  const std::size_t n = set.front().xi.size();
  for (const auto& p : set) {
    if (p.xi.size() != n) throw DimensionError("rosenblatt_train", n, p.xi.size());
  }

  std::vector<double> w(n, 0.0);
  std::vector<std::size_t> order(set.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::mt19937_64 rng(config.seed);

  TrainingResult result;
  detail::Snapshot best{std::numeric_limits<std::size_t>::max(), 0.0};
  bool have_best = false;
  // pocket check after every update
  auto consider = [&](const WeightVector& current) {
    const auto snap = detail::snapshot(current, set);
    if (!have_best || detail::improves(snap, best)) {
      best = snap;
      have_best = true;
      result.weights = current.with_squared_norm(static_cast<double>(n));
      result.trace.best_epoch = result.trace.epochs.size();
    }
    return snap;
  };
  for (std::size_t epoch = 0; epoch < config.max_epochs; ++epoch) {
    std::shuffle(order.begin(), order.end(), rng);
    for (const std::size_t k : order) {
      const auto& p = set[k];
      if (p.tau * dot(w, p.xi) <= 0.0) {
        for (std::size_t i = 0; i < n; ++i) w[i] += config.learning_rate * p.tau * p.xi[i];
        const WeightVector current(w);
        if (current.norm() > 0.0) consider(current);
      }
    }
    const WeightVector current(w);
    detail::Snapshot snap{set.size(), 0.0};  // zero weights classify nothing
    if (current.norm() > 0.0) snap = detail::snapshot(current, set);
    result.trace.epochs.push_back({0.0, static_cast<double>(snap.errors), snap.errors, snap.min_stability});
    if (snap.errors == 0) break;
  }
  if (!have_best) throw InvalidArgument("rosenblatt_train: weights stayed zero");
  if (result.trace.best_epoch >= result.trace.epochs.size()) result.trace.best_epoch = result.trace.epochs.size() - 1;
  return result;
}

}  // namespace monoplane
