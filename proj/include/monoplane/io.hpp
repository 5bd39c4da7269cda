#pragma once

// Plain-text artifacts: weight vectors, key=value training configs and
// per-epoch traces.

#include <cstdio>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "monoplane/data.hpp"
#include "monoplane/error.hpp"
#include "monoplane/perceptron.hpp"

namespace monoplane {

// Shortest text that reads back to the same double.
inline std::string format_real(double x) {
  char buf[32];
  for (int precision = 15; precision <= 17; ++precision) {
    std::snprintf(buf, sizeof buf, "%.*g", precision, x);
    if (std::strtod(buf, nullptr) == x) break;
  }
  return buf;
}

inline std::string format_fixed(double x, int decimals) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*f", decimals, x);
  return buf;
}

inline std::string format_sci(double x, int digits = 5) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*e", digits, x);
  return buf;
}

// One real per line, index 0 = bias.
inline void write_weights(std::ostream& out, const WeightVector& w) {
  for (const double x : w.components()) out << format_real(x) << '\n';
}

// Accepts the one-per-line form and the comma/whitespace separated layout
// of the published tables, with or without surrounding braces.
inline WeightVector parse_weights(std::istream& in) {
  std::vector<double> values;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    std::string token;
    auto flush = [&] {
      if (token.empty()) return;
      double v = 0.0;
      if (!detail::parse_double(token, v)) throw ParseError(line_no, "bad weight '" + token + "'");
      values.push_back(v);
      token.clear();
    };
    for (const char c : line) {
      if (c == ',' || c == ' ' || c == '\t' || c == '\r' || c == '{' || c == '}') {
        flush();
      } else {
        token += c;
      }
    }
    flush();
  }
  if (values.empty()) throw ParseError(line_no, "no weights found");
  return WeightVector(std::move(values));
}

inline WeightVector parse_weights(std::string_view text) {
  std::istringstream in{std::string(text)};
  return parse_weights(in);
}

inline WeightVector load_weights_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open weight file '" + path + "'");
  try {
    return parse_weights(in);
  } catch (const ParseError& e) {
    throw Error(path + ": " + e.what());
  }
}

// Four decimals, `per_row` values per row, as in the published tables.
inline void write_weights_table(std::ostream& out, const WeightVector& w, std::size_t per_row = 8) {
  const auto values = w.components();
  for (std::size_t i = 0; i < values.size(); ++i) {
    std::string cell = format_fixed(values[i], 4);
    if (cell.size() < 7) cell.insert(0, 7 - cell.size(), ' ');
    out << cell;
    const bool last = i + 1 == values.size();
    if (!last) out << ',';
    if (last || (i + 1) % per_row == 0) {
      out << '\n';
    } else {
      out << ' ';
    }
  }
}

inline void write_config(std::ostream& out, const TrainingConfig& c) {
  out << "t_initial=" << format_real(c.t_initial) << '\n'
      << "t_min=" << format_real(c.t_min) << '\n'
      << "t_decay=" << format_real(c.t_decay) << '\n'
      << "learning_rate=" << format_real(c.learning_rate) << '\n'
      << "max_epochs=" << c.max_epochs << '\n'
      << "seed=" << c.seed << '\n'
      << "temp_ratio=" << format_real(c.temp_ratio) << '\n';
}

// Flat key=value lines; `#` comments; unspecified keys keep their defaults.
inline TrainingConfig parse_config(std::istream& in, TrainingConfig config = {}) {
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    std::string_view text = line;
    if (const auto hash = text.find('#'); hash != std::string_view::npos) text = text.substr(0, hash);
    text = detail::trim(text);
    if (text.empty()) continue;
    const auto eq = text.find('=');
    if (eq == std::string_view::npos) throw ParseError(line_no, "expected key=value");
    const std::string key(detail::trim(text.substr(0, eq)));
    const std::string_view value = detail::trim(text.substr(eq + 1));
    auto real = [&](double& field) {
      if (!detail::parse_double(value, field)) throw ParseError(line_no, "bad value for " + key);
    };
    auto integer = [&](auto& field) {
      const auto [ptr, ec] = std::from_chars(value.data(), value.data() + value.size(), field);
      if (ec != std::errc{} || ptr != value.data() + value.size()) {
        throw ParseError(line_no, "bad value for " + key);
      }
    };
    if (key == "t_initial") {
      real(config.t_initial);
    } else if (key == "t_min") {
      real(config.t_min);
    } else if (key == "t_decay") {
      real(config.t_decay);
    } else if (key == "learning_rate") {
      real(config.learning_rate);
    } else if (key == "max_epochs") {
      integer(config.max_epochs);
    } else if (key == "seed") {
      integer(config.seed);
    } else if (key == "temp_ratio") {
      real(config.temp_ratio);
    } else {
      throw ParseError(line_no, "unknown key '" + key + "'");
    }
  }
  return config;
}

inline TrainingConfig load_config_file(const std::string& path, TrainingConfig defaults = {}) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open config file '" + path + "'");
  try {
    return parse_config(in, defaults);
  } catch (const ParseError& e) {
    throw Error(path + ": " + e.what());
  }
}

inline void write_trace_csv(std::ostream& out, const TrainingTrace& trace) {
  out << "epoch,temperature,cost,errors,min_stability,best\n";
  for (std::size_t k = 0; k < trace.epochs.size(); ++k) {
    const auto& r = trace.epochs[k];
    out << k << ',' << format_real(r.temperature) << ',' << format_real(r.cost) << ',' << r.errors
        << ',' << format_real(r.min_stability) << ',' << (k == trace.best_epoch ? 1 : 0) << '\n';
  }
}

inline TrainingTrace parse_trace_csv(std::istream& in) {
  TrainingTrace trace;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line_no == 1) {
      if (detail::trim(line).rfind("epoch,", 0) != 0) throw ParseError(1, "missing trace header");
      continue;
    }
    if (detail::trim(line).empty()) continue;
    std::vector<std::string> cells;
    std::stringstream ss(line);
    std::string cell;
    while (std::getline(ss, cell, ',')) cells.push_back(cell);
    if (cells.size() != 6) throw ParseError(line_no, "expected 6 trace columns");
    EpochRecord r;
    double errors = 0.0;
    double best = 0.0;
    if (!detail::parse_double(cells[1], r.temperature) || !detail::parse_double(cells[2], r.cost) ||
        !detail::parse_double(cells[3], errors) || !detail::parse_double(cells[5], best)) {
      throw ParseError(line_no, "bad trace record");
    }
    // min_stability may legitimately be inf for an empty set
    if (cells[4] == "inf") {
      r.min_stability = std::numeric_limits<double>::infinity();
    } else if (!detail::parse_double(cells[4], r.min_stability)) {
      throw ParseError(line_no, "bad trace record");
    }
    r.errors = static_cast<std::size_t>(errors);
    if (best != 0.0) trace.best_epoch = trace.epochs.size();
    trace.epochs.push_back(r);
  }
  return trace;
}

}  // namespace monoplane
