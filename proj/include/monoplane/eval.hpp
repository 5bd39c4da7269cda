#pragma once

// Published separators, misclassification reports, inter-hyperplane
// cosines and a one-sided linear-separability probe.

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstddef>
#include <optional>
#include <span>
#include <sstream>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "monoplane/data.hpp"
#include "monoplane/error.hpp"
#include "monoplane/io.hpp"
#include "monoplane/perceptron.hpp"
#include "monoplane/published_assets.hpp"

namespace monoplane {

enum class PublishedName { w_train, w_test, w_sonar };

inline std::string_view to_string(PublishedName name) {
  switch (name) {
    case PublishedName::w_train: return "W_Train";
    case PublishedName::w_test: return "W_Test";
    case PublishedName::w_sonar: return "W_Sonar";
  }
  return "?";
}

inline PublishedName parse_published_name(std::string_view name) {
  std::string key;
  for (const char c : name) key += static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  if (key.rfind("w_", 0) == 0) key = key.substr(2);
  if (key == "train") return PublishedName::w_train;
  if (key == "test") return PublishedName::w_test;
  if (key == "sonar") return PublishedName::w_sonar;
  throw InvalidArgument("unknown published weight vector '" + std::string(name) + "'");
}

struct PublishedWeights {
  PublishedName name;
  WeightVector w;
};

inline PublishedWeights load_published_weights(PublishedName name) {
  std::string_view text;
  switch (name) {
    case PublishedName::w_train: text = assets::w_train; break;
    case PublishedName::w_test: text = assets::w_test; break;
    case PublishedName::w_sonar: text = assets::w_sonar; break;
  }
  return {name, parse_weights(text)};
}

inline PublishedWeights load_published_weights(std::string_view name) {
  return load_published_weights(parse_published_name(name));
}

// One row of the published tables of patterns misclassified by W_Train
// (on Test) and W_Test (on Train).
struct ReferenceRecord {
  std::size_t i = 0;
  std::size_t mu = 0;
  double field = 0.0;
  double gamma_sonar = 0.0;
  int tau = 0;
};

namespace detail {

inline std::vector<std::vector<std::string>> csv_rows(std::string_view text) {
  std::vector<std::vector<std::string>> rows;
  std::istringstream in{std::string(text)};
  std::string line;
  bool header = true;
  while (std::getline(in, line)) {
    if (trim(line).empty()) continue;
    if (header) {
      header = false;
      continue;
    }
    std::vector<std::string> cells;
    std::stringstream ss(line);
    std::string cell;
    while (std::getline(ss, cell, ',')) cells.emplace_back(trim(cell));
    rows.push_back(std::move(cells));
  }
  return rows;
}

inline std::vector<ReferenceRecord> parse_reference(std::string_view text) {
  std::vector<ReferenceRecord> out;
  for (const auto& cells : csv_rows(text)) {
    ReferenceRecord r;
    double i = 0.0;
    double mu = 0.0;
    double tau = 0.0;
    parse_double(cells.at(0), i);
    parse_double(cells.at(1), mu);
    parse_double(cells.at(2), r.field);
    parse_double(cells.at(3), r.gamma_sonar);
    parse_double(cells.at(4), tau);
    r.i = static_cast<std::size_t>(i);
    r.mu = static_cast<std::size_t>(mu);
    r.tau = static_cast<int>(tau);
    out.push_back(r);
  }
  return out;
}

}  // namespace detail

// Patterns of Test misclassified by W_Train.
inline std::vector<ReferenceRecord> reference_misclassified_test() {
  return detail::parse_reference(assets::misclassified_test);
}

// Patterns of Train misclassified by W_Test.
inline std::vector<ReferenceRecord> reference_misclassified_train() {
  return detail::parse_reference(assets::misclassified_train);
}

struct ReferenceCosine {
  PublishedName a;
  PublishedName b;
  double value = 0.0;
  double tolerance = 0.0;
};

inline std::vector<ReferenceCosine> reference_cosines() {
  std::vector<ReferenceCosine> out;
  for (const auto& cells : detail::csv_rows(assets::cosines)) {
    ReferenceCosine c{parse_published_name(cells.at(0)), parse_published_name(cells.at(1))};
    detail::parse_double(cells.at(2), c.value);
    detail::parse_double(cells.at(3), c.tolerance);
    out.push_back(c);
  }
  return out;
}

struct MisclassifiedRecord {
  std::size_t i = 0;
  std::size_t mu = 0;
  double field_value = 0.0;
  std::optional<double> gamma_reference;
  int tau = 0;
};

struct EvaluationReport {
  std::size_t set_size = 0;
  double error_fraction = 0.0;  // percent
  ErrorCounts counts;
  std::vector<MisclassifiedRecord> records;
  std::vector<std::pair<std::string, double>> cosines;
};

// Percent with one decimal, e.g. "19.2".
inline std::string format_percent(double percent) { return format_fixed(percent, 1); }

// Records every pattern the classifier gets wrong (field on the wrong side,
// or exactly zero), sorted by mu, with its stability under `reference`.
inline EvaluationReport evaluate(const WeightVector& classifier, std::span<const LabeledPattern> set,
                                 const std::optional<WeightVector>& reference = std::nullopt) {
  classifier.require_nonzero("evaluate classifier");
  if (reference) reference->require_nonzero("evaluate reference");
  EvaluationReport report;
  report.set_size = set.size();
  report.counts = count_errors(classifier, set);
  report.error_fraction =
      set.empty() ? 0.0 : 100.0 * static_cast<double>(report.counts.total) / static_cast<double>(set.size());
  for (const auto& p : set) {
    const double f = field(classifier, p.xi);
    if (p.tau * f > 0.0) continue;
    MisclassifiedRecord r;
    r.mu = p.mu;
    r.field_value = f;
    r.tau = p.tau;
    if (reference) r.gamma_reference = stability(*reference, p);
    report.records.push_back(r);
  }
  std::stable_sort(report.records.begin(), report.records.end(),
                   [](const auto& a, const auto& b) { return a.mu < b.mu; });
  for (std::size_t k = 0; k < report.records.size(); ++k) report.records[k].i = k + 1;
  return report;
}

enum class CosineMode {
  true_cosine,  // a.b / (|a| |b|)
  raw_product,      // a.b / (N+1)^2
};

inline std::string_view to_string(CosineMode mode) {
  return mode == CosineMode::true_cosine ? "true-cosine" : "raw-product";
}

inline double cosine(const WeightVector& a, const WeightVector& b,
                     CosineMode mode = CosineMode::true_cosine) {
  a.require_nonzero("cosine");
  b.require_nonzero("cosine");
  if (a.size() != b.size()) throw DimensionError("cosine", a.size(), b.size());
  const double ab = dot(a.components(), b.components());
  if (mode == CosineMode::true_cosine) return ab / (a.norm() * b.norm());
  const auto n1 = static_cast<double>(a.size());
  return ab / (n1 * n1);
}

struct SeparabilityVerdict {
  bool separable = false;  // false means undetermined, never "not separable"
  WeightVector weights;
  std::size_t errors = 0;
  double min_stability = 0.0;
  std::string method;  // "minimerror" or "rosenblatt"
};

// Runs both trainers; a zero-error result is a certificate, re-checked
// here on the returned weights.
inline SeparabilityVerdict separability_probe(std::span<const LabeledPattern> set,
                                              const TrainingConfig& budget) {
  budget.validate();
  if (set.empty()) throw InvalidArgument("separability_probe: empty set");
  SeparabilityVerdict best;
  best.errors = set.size() + 1;
  const std::pair<const char*, TrainingResult (*)(std::span<const LabeledPattern>, const TrainingConfig&)>
      trainers[] = {{"minimerror", &minimerror_train}, {"rosenblatt", &rosenblatt_train}};
  for (const auto& [name, train] : trainers) {
    auto result = train(set, budget);
    const auto g = stabilities(result.weights, set);
    const auto errors = static_cast<std::size_t>(std::count_if(g.begin(), g.end(), [](double x) { return x <= 0.0; }));
    const double min_g = g.empty() ? 0.0 : *std::min_element(g.begin(), g.end());
    if (errors < best.errors || (errors == best.errors && min_g > best.min_stability)) {
      best.weights = std::move(result.weights);
      best.errors = errors;
      best.min_stability = min_g;
      best.method = name;
    }
    if (errors == 0) break;
  }
  best.separable = best.errors == 0;
  return best;
}

}  // namespace monoplane
