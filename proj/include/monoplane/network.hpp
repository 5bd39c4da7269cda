#pragma once

// Single-hidden-layer binary network grown one unit at a time. Each new
// hidden unit learns to flag the errors of the previous one; an output
// perceptron over the hidden states is retrained after every addition.

#include <cstddef>
#include <istream>
#include <ostream>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "monoplane/data.hpp"
#include "monoplane/error.hpp"
#include "monoplane/io.hpp"
#include "monoplane/perceptron.hpp"

namespace monoplane {

// sign with sign(0) = +1
inline int binary_sign(double x) { return x >= 0.0 ? 1 : -1; }

struct NetworkModel {
  std::vector<WeightVector> hidden;
  WeightVector output;  // H+1 components, index 0 = bias

  std::size_t hidden_units() const noexcept { return hidden.size(); }
};

inline void validate_model(const NetworkModel& model) {
  if (model.hidden.empty()) throw InvalidArgument("network has no hidden units");
  if (model.output.size() != model.hidden.size() + 1) {
    throw DimensionError("output unit", model.hidden.size() + 1, model.output.size());
  }
  const std::size_t inputs = model.hidden.front().size();
  for (const auto& w : model.hidden) {
    if (w.size() != inputs) throw DimensionError("hidden unit", inputs, w.size());
  }
}

inline std::vector<int> hidden_states(const NetworkModel& model, std::span<const double> xi) {
  if (model.hidden.empty()) throw InvalidArgument("network has no hidden units");
  std::vector<int> sigma;
  sigma.reserve(model.hidden.size());
  for (const auto& w : model.hidden) {
    if (xi.size() != w.size()) throw DimensionError("hidden_states", w.size(), xi.size());
    sigma.push_back(binary_sign(dot(w.components(), xi)));
  }
  return sigma;
}

// Input of the output unit: (1, sigma_1, ..., sigma_H).
inline std::vector<double> representation(std::span<const int> sigma) {
  std::vector<double> r;
  r.reserve(sigma.size() + 1);
  r.push_back(1.0);
  for (const int s : sigma) r.push_back(s);
  return r;
}

inline int network_output(const NetworkModel& model, std::span<const double> xi) {
  validate_model(model);
  const auto rep = representation(hidden_states(model, xi));
  return binary_sign(dot(model.output.components(), rep));
}

inline std::size_t network_errors(const NetworkModel& model, std::span<const LabeledPattern> set) {
  std::size_t errors = 0;
  for (const auto& p : set) errors += network_output(model, p.xi) != p.tau;
  return errors;
}

// tau_{h+1} = tau_h * sigma_h: +1 where unit h met its target, -1 where it erred.
inline std::vector<int> internal_targets(std::span<const int> prev_targets,
                                         std::span<const int> prev_states) {
  if (prev_targets.size() != prev_states.size()) {
    throw DimensionError("internal_targets", prev_targets.size(), prev_states.size());
  }
  std::vector<int> next(prev_targets.size());
  for (std::size_t k = 0; k < next.size(); ++k) next[k] = prev_targets[k] * prev_states[k];
  return next;
}

enum class TargetSource {
  labels,         // unit 1: the set's own labels
  previous_unit,  // recursion on the previous hidden unit
  network_output, // previous unit was exact but the output unit was not
};

struct GrowthRecord {
  std::size_t unit = 0;  // 1-based
  TargetSource source = TargetSource::labels;
  std::size_t internal_errors = 0;
  std::size_t network_errors = 0;
  std::vector<int> targets;
  std::vector<int> states;
};

struct GrowthTrace {
  std::vector<GrowthRecord> units;
};

struct GrowthResult {
  NetworkModel model;
  GrowthTrace trace;
};

class GrowthStall : public Error {
 public:
  GrowthStall(const std::string& what, GrowthTrace trace) : Error(what), trace_(std::move(trace)) {}
  const GrowthTrace& trace() const noexcept { return trace_; }

 private:
  GrowthTrace trace_;
};

struct GrowthOptions {
  std::size_t max_hidden = 0;  // 0: the P-1 bound
};

namespace detail {

inline std::vector<LabeledPattern> relabel(std::span<const LabeledPattern> set,
                                           std::span<const int> targets) {
  std::vector<LabeledPattern> out(set.begin(), set.end());
  for (std::size_t k = 0; k < out.size(); ++k) out[k].tau = targets[k];
  return out;
}

inline std::size_t count_negative(std::span<const int> v) {
  std::size_t n = 0;
  for (const int x : v) n += x < 0;
  return n;
}

}  // namespace detail

// Appends hidden units until the network classifies `set` without error.
// A new unit must make fewer errors on its targets than the number of
// patterns it is asked to flag; otherwise growth stalls.
inline GrowthResult grow_network(std::span<const LabeledPattern> set, const TrainingConfig& config,
                                 const GrowthOptions& options = {}) {
  config.validate();
  if (set.empty()) throw InvalidArgument("grow_network: empty set");
  const std::size_t bound = set.size() > 1 ? set.size() - 1 : 1;
  const std::size_t max_hidden = options.max_hidden == 0 ? bound : std::min(options.max_hidden, bound);

  GrowthResult result;
  std::vector<int> labels;
  labels.reserve(set.size());
  for (const auto& p : set) labels.push_back(p.tau);

  std::vector<int> targets = labels;
  TargetSource source = TargetSource::labels;
  std::vector<std::vector<int>> states_by_pattern(set.size());

  while (true) {
    if (result.model.hidden.size() == max_hidden) {
      const std::string what = "network still has " + std::to_string(result.trace.units.back().network_errors) +
                               " training errors at the hidden-unit limit " + std::to_string(max_hidden);
      throw GrowthStall(what, std::move(result.trace));
    }

    const auto unit_set = detail::relabel(set, targets);
    const auto unit = minimerror_train(unit_set, config);

    GrowthRecord record;
    record.unit = result.model.hidden.size() + 1;
    record.source = source;
    record.targets = targets;
    record.states.reserve(set.size());
    for (const auto& p : set) record.states.push_back(binary_sign(dot(unit.weights.components(), p.xi)));
    for (std::size_t k = 0; k < set.size(); ++k) record.internal_errors += record.states[k] != targets[k];

    if (source != TargetSource::labels && record.internal_errors >= detail::count_negative(targets)) {
      const std::string what = "hidden unit " + std::to_string(record.unit) + " made " +
                               std::to_string(record.internal_errors) + " internal errors, no fewer than the " +
                               std::to_string(detail::count_negative(targets)) + " it had to correct";
      // the rejected unit leaves the network as it was
      record.network_errors = result.trace.units.empty() ? set.size() : result.trace.units.back().network_errors;
      result.trace.units.push_back(std::move(record));
      throw GrowthStall(what, std::move(result.trace));
    }

    result.model.hidden.push_back(unit.weights);
    std::vector<LabeledPattern> reps(set.size());
    for (std::size_t k = 0; k < set.size(); ++k) {
      states_by_pattern[k].push_back(record.states[k]);
      reps[k].mu = set[k].mu;
      reps[k].tau = labels[k];
      reps[k].xi = representation(states_by_pattern[k]);
    }
    result.model.output = minimerror_train(reps, config).weights;
    record.network_errors = network_errors(result.model, set);

    std::vector<int> next;
    if (record.internal_errors > 0) {
      next = internal_targets(targets, record.states);
      source = TargetSource::previous_unit;
    } else {
      next.resize(set.size());
      for (std::size_t k = 0; k < set.size(); ++k) {
        next[k] = labels[k] * network_output(result.model, set[k].xi);
      }
      source = TargetSource::network_output;
    }
    const bool done = record.network_errors == 0;
    result.trace.units.push_back(std::move(record));
    if (done) return result;
    targets = std::move(next);
  }
}

// `H=<n>`, then n blocks of hidden weights, then the output block (H+1 lines).
inline void write_network(std::ostream& out, const NetworkModel& model) {
  validate_model(model);
  out << "H=" << model.hidden.size() << '\n';
  for (const auto& w : model.hidden) write_weights(out, w);
  write_weights(out, model.output);
}

inline NetworkModel parse_network(std::istream& in, std::size_t inputs) {
  std::string line;
  if (!std::getline(in, line) || detail::trim(line).rfind("H=", 0) != 0) {
    throw ParseError(1, "missing H=<n> header");
  }
  const std::string_view count = detail::trim(line).substr(2);
  std::size_t h = 0;
  const auto [ptr, ec] = std::from_chars(count.data(), count.data() + count.size(), h);
  if (ec != std::errc{} || ptr != count.data() + count.size() || h == 0) {
    throw ParseError(1, "bad hidden-unit count");
  }
  std::vector<double> values;
  std::size_t line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (detail::trim(line).empty()) continue;
    double v = 0.0;
    if (!detail::parse_double(line, v)) throw ParseError(line_no, "bad weight");
    values.push_back(v);
  }
  if (values.size() != h * inputs + h + 1) {
    throw ParseError(line_no, "expected " + std::to_string(h * inputs + h + 1) + " weights, found " +
                                  std::to_string(values.size()));
  }
  NetworkModel model;
  auto it = values.begin();
  for (std::size_t u = 0; u < h; ++u, it += static_cast<std::ptrdiff_t>(inputs)) {
    model.hidden.emplace_back(std::vector<double>(it, it + static_cast<std::ptrdiff_t>(inputs)));
  }
  model.output = WeightVector(std::vector<double>(it, values.end()));
  return model;
}

// Infers the input dimension from the total weight count.
inline NetworkModel parse_network(std::istream& in) {
  std::stringstream buffer;
  buffer << in.rdbuf();
  const std::string text = buffer.str();
  std::istringstream header(text);
  std::string line;
  std::getline(header, line);
  std::size_t h = 0;
  const std::string_view count = detail::trim(line).rfind("H=", 0) == 0 ? detail::trim(line).substr(2)
                                                                        : std::string_view{};
  std::from_chars(count.data(), count.data() + count.size(), h);
  std::size_t n = 0;
  while (std::getline(header, line)) n += !detail::trim(line).empty();
  if (h == 0 || n < h + 1 || (n - h - 1) % h != 0) throw ParseError(1, "inconsistent network file");
  std::istringstream again(text);
  return parse_network(again, (n - h - 1) / h);
}

}  // namespace monoplane
