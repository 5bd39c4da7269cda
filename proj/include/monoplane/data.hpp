#pragma once

// Sonar benchmark ingestion: CSV parsing, Train/Test split by absolute
// pattern index, and per-feature standardization.

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstddef>
#include <fstream>
#include <istream>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "monoplane/error.hpp"

namespace monoplane {

inline constexpr std::size_t kSonarFeatures = 60;

enum class SonarClass { rock, mine };

struct RawPattern {
  std::size_t mu = 0;  // absolute index, 1-based
  std::vector<double> features;
  SonarClass label = SonarClass::rock;
};

// xi[0] is the constant bias coordinate.
struct LabeledPattern {
  std::size_t mu = 0;
  std::vector<double> xi;
  int tau = 1;
};

enum class ScaleMode {
  standard_deviation,  // sqrt of the mean squared deviation
  variance,            // the mean squared deviation itself
};

struct StandardizationStats {
  std::vector<double> mean;
  std::vector<double> scale;
  ScaleMode mode = ScaleMode::standard_deviation;
};

struct ParseOptions {
  std::size_t features = kSonarFeatures;
  bool allow_out_of_range = false;
};

struct ClassCounts {
  std::size_t rock = 0;
  std::size_t mine = 0;
};

namespace detail {

inline std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r\n");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r\n");
  return s.substr(first, last - first + 1);
}

inline bool parse_double(std::string_view token, double& out) {
  token = trim(token);
  if (token.empty()) return false;
  if (token.front() == '+') token.remove_prefix(1);
  const auto* end = token.data() + token.size();
  const auto [ptr, ec] = std::from_chars(token.data(), end, out);
  return ec == std::errc{} && ptr == end && std::isfinite(out);
}

}  // namespace detail

// Each nonempty line holds `options.features` comma-separated reals and a
// trailing R/M label. Patterns are numbered 1..n in file order.
inline std::vector<RawPattern> parse_sonar(std::istream& in, const ParseOptions& options = {}) {
  std::vector<RawPattern> patterns;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const std::string_view text = detail::trim(line);
    if (text.empty()) continue;

    std::vector<std::string_view> tokens;
    std::size_t start = 0;
    while (true) {
      const auto comma = text.find(',', start);
      tokens.push_back(text.substr(start, comma == std::string_view::npos ? std::string_view::npos
                                                                          : comma - start));
      if (comma == std::string_view::npos) break;
      start = comma + 1;
    }
    if (tokens.size() != options.features + 1) {
      throw ParseError(line_no, "expected " + std::to_string(options.features) +
                                    " values and a label, found " +
                                    std::to_string(tokens.size()) + " fields");
    }

    RawPattern p;
    p.mu = patterns.size() + 1;
    p.features.resize(options.features);
    for (std::size_t i = 0; i < options.features; ++i) {
      if (!detail::parse_double(tokens[i], p.features[i])) {
        throw ParseError(line_no, "cannot parse value " + std::to_string(i + 1) + " '" +
                                      std::string(detail::trim(tokens[i])) + "'");
      }
      if (!options.allow_out_of_range && (p.features[i] < 0.0 || p.features[i] > 1.0)) {
        throw RangeError(line_no, "value " + std::to_string(i + 1) + " = " +
                                      std::string(detail::trim(tokens[i])) + " outside [0,1]");
      }
    }
    const std::string_view label = detail::trim(tokens.back());
    if (label == "R" || label == "r") {
      p.label = SonarClass::rock;
    } else if (label == "M" || label == "m") {
      p.label = SonarClass::mine;
    } else {
      throw ParseError(line_no, "unknown label '" + std::string(label) + "'");
    }
    patterns.push_back(std::move(p));
  }
  return patterns;
}

inline std::vector<RawPattern> load_sonar_file(const std::string& path,
                                               const ParseOptions& options = {}) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open dataset '" + path + "'");
  return parse_sonar(in, options);
}

inline ClassCounts count_classes(std::span<const RawPattern> patterns) {
  ClassCounts c;
  for (const auto& p : patterns) (p.label == SonarClass::rock ? c.rock : c.mine)++;
  return c;
}

// Absolute indices of each part. Parts are emitted in listing order and
// renumbered consecutively (train first), so a split file doubles as the
// mapping from file order to the benchmark's numbering.
struct SplitSpec {
  std::vector<std::size_t> train;
  std::vector<std::size_t> test;

  // First half (rounded up) trains, the rest tests: mu 1..104 / 105..208.
  static SplitSpec halves(std::size_t n) {
    SplitSpec s;
    const std::size_t cut = (n + 1) / 2;
    for (std::size_t mu = 1; mu <= n; ++mu) (mu <= cut ? s.train : s.test).push_back(mu);
    return s;
  }
};

// Sections `[train]` and `[test]`, one integer per line; `#` starts a comment.
inline SplitSpec parse_split(std::istream& in) {
  SplitSpec spec;
  std::vector<std::size_t>* section = nullptr;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    std::string_view text = line;
    if (const auto hash = text.find('#'); hash != std::string_view::npos) text = text.substr(0, hash);
    text = detail::trim(text);
    if (text.empty()) continue;
    if (text == "[train]") {
      section = &spec.train;
    } else if (text == "[test]") {
      section = &spec.test;
    } else {
      if (section == nullptr) throw ParseError(line_no, "index outside a [train]/[test] section");
      std::size_t mu = 0;
      const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), mu);
      if (ec != std::errc{} || ptr != text.data() + text.size() || mu == 0) {
        throw ParseError(line_no, "bad pattern index '" + std::string(text) + "'");
      }
      section->push_back(mu);
    }
  }
  return spec;
}

inline SplitSpec load_split_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open split file '" + path + "'");
  return parse_split(in);
}

struct SplitParts {
  std::vector<RawPattern> train;
  std::vector<RawPattern> test;
};

inline SplitParts split(std::span<const RawPattern> patterns, const SplitSpec& spec) {
  std::vector<std::size_t> out_of_range;
  std::vector<std::size_t> duplicated;
  std::vector<bool> seen(patterns.size() + 1, false);
  for (const auto* part : {&spec.train, &spec.test}) {
    for (const std::size_t mu : *part) {
      if (mu == 0 || mu > patterns.size()) {
        out_of_range.push_back(mu);
      } else if (seen[mu]) {
        duplicated.push_back(mu);
      } else {
        seen[mu] = true;
      }
    }
  }
  if (!out_of_range.empty()) throw SplitError("split indices outside the dataset", out_of_range);
  if (!duplicated.empty()) throw SplitError("split indices listed twice", duplicated);
  std::vector<std::size_t> missing;
  for (std::size_t mu = 1; mu <= patterns.size(); ++mu) {
    if (!seen[mu]) missing.push_back(mu);
  }
  if (!missing.empty()) throw SplitError("split does not cover patterns", missing);

  // Patterns are looked up by their position, which equals mu after parsing.
  SplitParts parts;
  std::size_t next_mu = 1;
  for (const std::size_t mu : spec.train) {
    parts.train.push_back(patterns[mu - 1]);
    parts.train.back().mu = next_mu++;
  }
  for (const std::size_t mu : spec.test) {
    parts.test.push_back(patterns[mu - 1]);
    parts.test.back().mu = next_mu++;
  }
  return parts;
}

inline StandardizationStats compute_stats(std::span<const RawPattern> patterns,
                                          ScaleMode mode = ScaleMode::standard_deviation) {
  if (patterns.empty()) throw InvalidArgument("cannot compute statistics of an empty set");
  const std::size_t n = patterns.front().features.size();
  const auto count = static_cast<double>(patterns.size());
  StandardizationStats stats;
  stats.mode = mode;
  stats.mean.assign(n, 0.0);
  stats.scale.assign(n, 0.0);
  for (const auto& p : patterns) {
    if (p.features.size() != n) throw DimensionError("compute_stats", n, p.features.size());
    for (std::size_t i = 0; i < n; ++i) stats.mean[i] += p.features[i];
  }
  for (auto& m : stats.mean) m /= count;
  for (const auto& p : patterns) {
    for (std::size_t i = 0; i < n; ++i) {
      const double d = p.features[i] - stats.mean[i];
      stats.scale[i] += d * d;
    }
  }
  for (std::size_t i = 0; i < n; ++i) {
    const double msd = stats.scale[i] / count;
    stats.scale[i] = mode == ScaleMode::standard_deviation ? std::sqrt(msd) : msd;
    if (!(stats.scale[i] > 0.0)) throw ConstantFeatureError(i + 1);
  }
  return stats;
}

struct LabelConvention {
  bool flip = false;  // default: rock = +1, mine = -1
};

inline int label_value(SonarClass c, LabelConvention convention = {}) {
  const int tau = c == SonarClass::rock ? 1 : -1;
  return convention.flip ? -tau : tau;
}

inline std::vector<LabeledPattern> standardize(std::span<const RawPattern> patterns,
                                               const StandardizationStats& stats,
                                               LabelConvention convention = {}) {
  const std::size_t n = stats.mean.size();
  if (stats.scale.size() != n) throw DimensionError("standardization stats", n, stats.scale.size());
  std::vector<LabeledPattern> out;
  out.reserve(patterns.size());
  for (const auto& p : patterns) {
    if (p.features.size() != n) throw DimensionError("standardize", n, p.features.size());
    LabeledPattern lp;
    lp.mu = p.mu;
    lp.tau = label_value(p.label, convention);
    lp.xi.resize(n + 1);
    lp.xi[0] = 1.0;
    for (std::size_t i = 0; i < n; ++i) lp.xi[i + 1] = (p.features[i] - stats.mean[i]) / stats.scale[i];
    out.push_back(std::move(lp));
  }
  return out;
}

inline std::size_t count_positive(std::span<const LabeledPattern> set) {
  return static_cast<std::size_t>(
      std::count_if(set.begin(), set.end(), [](const LabeledPattern& p) { return p.tau > 0; }));
}

}  // namespace monoplane
