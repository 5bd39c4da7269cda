#pragma once

// Checks the published separators against a benchmark file under every
// plausible standardization, and compares them with the reference tables.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <future>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "monoplane/data.hpp"
#include "monoplane/eval.hpp"
#include "monoplane/perceptron.hpp"

namespace monoplane {

struct VerificationMode {
  ScaleMode scale = ScaleMode::standard_deviation;
  bool full_set_stats = false;  // false: stats of the classifier's learning set

  std::string name() const {
    return std::string(scale == ScaleMode::standard_deviation ? "std" : "variance") +
           (full_set_stats ? "/full-set" : "/learning-set");
  }
};

inline std::vector<VerificationMode> verification_modes() {
  return {{ScaleMode::standard_deviation, false},
          {ScaleMode::standard_deviation, true},
          {ScaleMode::variance, false},
          {ScaleMode::variance, true}};
}

struct TableComparison {
  std::string label;
  EvaluationReport report;
  ErrorCounts expected_counts;
  std::vector<std::size_t> expected_mu;
  std::vector<std::size_t> missing;  // listed in the table, not misclassified here
  std::vector<std::size_t> extra;    // misclassified here, not in the table
  double max_field_deviation = 0.0;  // over rows present on both sides
  double max_gamma_deviation = 0.0;  // reference stability vs the table column
  std::size_t gamma_compared = 0;

  bool exact() const { return missing.empty() && extra.empty(); }
  std::size_t distance() const { return missing.size() + extra.size(); }
};

struct ModeVerification {
  VerificationMode mode;
  TableComparison test_side;   // W_Train on Test
  TableComparison train_side;  // W_Test on Train
  ErrorCounts sonar_counts;    // W_Sonar on every pattern, full-set stats
  double sonar_min_stability = 0.0;

  bool reproduces() const { return test_side.exact() && train_side.exact(); }
  std::size_t distance() const { return test_side.distance() + train_side.distance(); }
};

struct CosineCheck {
  PublishedName a;
  PublishedName b;
  double reference = 0.0;
  double tolerance = 0.0;
  double true_cosine = 0.0;
  double raw_product = 0.0;

  bool matches(CosineMode mode) const {
    const double v = mode == CosineMode::true_cosine ? true_cosine : raw_product;
    return std::abs(v - reference) <= tolerance;
  }
};

// Error counts after moving one component by +-delta at a time.
struct PerturbationAnalysis {
  std::string label;
  double delta = 0.0;
  std::size_t nominal = 0;
  std::size_t min_count = 0;
  std::size_t max_count = 0;
  std::size_t perturbations = 0;
  std::size_t changing = 0;  // perturbations that alter the count
};

struct VerificationResult {
  std::vector<ModeVerification> modes;
  std::optional<std::size_t> canonical;  // first mode reproducing both tables exactly
  std::size_t closest = 0;
  std::vector<CosineCheck> cosines;
  std::vector<PerturbationAnalysis> perturbations;  // for the closest mode

  std::optional<CosineMode> cosine_mode() const {
    for (const auto mode : {CosineMode::true_cosine, CosineMode::raw_product}) {
      if (std::all_of(cosines.begin(), cosines.end(), [&](const auto& c) { return c.matches(mode); })) {
        return mode;
      }
    }
    return std::nullopt;
  }
};

inline PerturbationAnalysis perturbation_analysis(const WeightVector& w, std::span<const LabeledPattern> set,
                                                  double delta = 5e-5) {
  PerturbationAnalysis a;
  a.delta = delta;
  a.nominal = count_errors(w, set).total;
  a.min_count = a.nominal;
  a.max_count = a.nominal;
  for (std::size_t i = 0; i < w.size(); ++i) {
    for (const double sign : {-1.0, 1.0}) {
      std::vector<double> v = w.values();
      v[i] += sign * delta;
      const std::size_t count = count_errors(WeightVector(std::move(v)), set).total;
      ++a.perturbations;
      a.changing += count != a.nominal;
      a.min_count = std::min(a.min_count, count);
      a.max_count = std::max(a.max_count, count);
    }
  }
  return a;
}

namespace detail {

inline TableComparison compare_table(std::string label, const WeightVector& classifier,
                                     std::span<const LabeledPattern> set,
                                     const std::vector<ReferenceRecord>& table,
                                     const std::map<std::size_t, double>& reference_gamma) {
  TableComparison c;
  c.label = std::move(label);
  c.report = evaluate(classifier, set);
  std::map<std::size_t, const ReferenceRecord*> expected;
  for (const auto& r : table) {
    expected[r.mu] = &r;
    c.expected_mu.push_back(r.mu);
    (r.tau < 0 ? c.expected_counts.false_pos : c.expected_counts.false_neg)++;
  }
  c.expected_counts.total = table.size();

  std::map<std::size_t, const MisclassifiedRecord*> got;
  for (auto& rec : c.report.records) {
    if (const auto g = reference_gamma.find(rec.mu); g != reference_gamma.end()) rec.gamma_reference = g->second;
    got[rec.mu] = &rec;
  }
  for (const auto& [mu, row] : expected) {
    const auto it = got.find(mu);
    if (it == got.end()) {
      c.missing.push_back(mu);
    } else {
      c.max_field_deviation = std::max(c.max_field_deviation, std::abs(it->second->field_value - row->field));
    }
    if (const auto g = reference_gamma.find(mu); g != reference_gamma.end()) {
      c.max_gamma_deviation = std::max(c.max_gamma_deviation, std::abs(g->second - row->gamma_sonar));
      ++c.gamma_compared;
    }
  }
  for (const auto& [mu, rec] : got) {
    if (!expected.contains(mu)) c.extra.push_back(mu);
  }
  return c;
}

}  // namespace detail

inline ModeVerification verify_mode(std::span<const RawPattern> patterns, const SplitSpec& split_spec,
                                    const VerificationMode& mode, LabelConvention convention = {}) {
  const auto parts = split(patterns, split_spec);
  std::vector<RawPattern> all = parts.train;
  all.insert(all.end(), parts.test.begin(), parts.test.end());

  const auto full_stats = compute_stats(all, mode.scale);
  const auto train_stats = mode.full_set_stats ? full_stats : compute_stats(parts.train, mode.scale);
  const auto test_stats = mode.full_set_stats ? full_stats : compute_stats(parts.test, mode.scale);

  const auto w_train = load_published_weights(PublishedName::w_train).w;
  const auto w_test = load_published_weights(PublishedName::w_test).w;
  const auto w_sonar = load_published_weights(PublishedName::w_sonar).w;

  const auto sonar_set = standardize(all, full_stats, convention);
  std::map<std::size_t, double> gamma_sonar;
  for (const auto& p : sonar_set) gamma_sonar[p.mu] = stability(w_sonar, p);

  ModeVerification v;
  v.mode = mode;
  v.sonar_counts = count_errors(w_sonar, sonar_set);
  const auto g = stabilities(w_sonar, sonar_set);
  v.sonar_min_stability = g.empty() ? 0.0 : *std::min_element(g.begin(), g.end());
  v.test_side = detail::compare_table("W_Train on Test", w_train, standardize(parts.test, train_stats, convention),
                                      reference_misclassified_test(), gamma_sonar);
  v.train_side = detail::compare_table("W_Test on Train", w_test, standardize(parts.train, test_stats, convention),
                                       reference_misclassified_train(), gamma_sonar);
  return v;
}

inline std::vector<CosineCheck> cosine_checks() {
  std::vector<CosineCheck> out;
  for (const auto& ref : reference_cosines()) {
    CosineCheck c{ref.a, ref.b, ref.value, ref.tolerance};
    const auto a = load_published_weights(ref.a).w;
    const auto b = load_published_weights(ref.b).w;
    c.true_cosine = cosine(a, b, CosineMode::true_cosine);
    c.raw_product = cosine(a, b, CosineMode::raw_product);
    out.push_back(c);
  }
  return out;
}

// Runs every verification mode (concurrently when jobs > 1; results keep
// the fixed mode order).
inline VerificationResult verify_published(std::span<const RawPattern> patterns, const SplitSpec& split_spec,
                                           LabelConvention convention = {}, std::size_t jobs = 1) {
  VerificationResult result;
  const auto modes = verification_modes();
  if (jobs > 1) {
    std::vector<std::future<ModeVerification>> futures;
    for (const auto& mode : modes) {
      futures.push_back(std::async(std::launch::async, [&, mode] {
        return verify_mode(patterns, split_spec, mode, convention);
      }));
    }
    for (auto& f : futures) result.modes.push_back(f.get());
  } else {
    for (const auto& mode : modes) result.modes.push_back(verify_mode(patterns, split_spec, mode, convention));
  }

  for (std::size_t k = 0; k < result.modes.size(); ++k) {
    if (result.modes[k].reproduces() && !result.canonical) result.canonical = k;
    if (result.modes[k].distance() < result.modes[result.closest].distance()) result.closest = k;
  }
  if (result.canonical) result.closest = *result.canonical;
  result.cosines = cosine_checks();

  // Sensitivity of the closest mode to the 4-decimal rounding of the tables.
  const auto& mode = result.modes[result.closest].mode;
  const auto parts = split(patterns, split_spec);
  std::vector<RawPattern> all = parts.train;
  all.insert(all.end(), parts.test.begin(), parts.test.end());
  const auto full_stats = compute_stats(all, mode.scale);
  const auto train_stats = mode.full_set_stats ? full_stats : compute_stats(parts.train, mode.scale);
  const auto test_stats = mode.full_set_stats ? full_stats : compute_stats(parts.test, mode.scale);
  auto a = perturbation_analysis(load_published_weights(PublishedName::w_train).w,
                                 standardize(parts.test, train_stats, convention));
  a.label = "W_Train on Test";
  auto b = perturbation_analysis(load_published_weights(PublishedName::w_test).w,
                                 standardize(parts.train, test_stats, convention));
  b.label = "W_Test on Train";
  result.perturbations = {a, b};
  return result;
}

}  // namespace monoplane
