#pragma once

#include <cstdlib>
#include <optional>
#include <string>
#include <vector>

#include "monoplane/data.hpp"
#include "monoplane/perceptron.hpp"

inline std::string test_data(const std::string& name) { return std::string(MONOPLANE_TEST_DATA_DIR) + "/" + name; }

// The canonical benchmark file, when the environment provides one.
inline std::optional<std::string> benchmark_path() {
  const char* path = std::getenv("MONOPLANE_DATA");
  if (path == nullptr || *path == '\0') return std::nullopt;
  return std::string(path);
}

inline std::optional<std::string> benchmark_split_path() {
  const char* path = std::getenv("MONOPLANE_SPLIT");
  if (path == nullptr || *path == '\0') return std::nullopt;
  return std::string(path);
}

// Builds a labeled pattern with xi = (1, features...).
inline monoplane::LabeledPattern pattern(std::size_t mu, std::vector<double> features, int tau) {
  monoplane::LabeledPattern p;
  p.mu = mu;
  p.tau = tau;
  p.xi.push_back(1.0);
  p.xi.insert(p.xi.end(), features.begin(), features.end());
  return p;
}

// Corners of the square with parity labels: not linearly separable.
inline std::vector<monoplane::LabeledPattern> xor_set() {
  return {pattern(1, {-1.0, -1.0}, 1), pattern(2, {-1.0, 1.0}, -1), pattern(3, {1.0, -1.0}, -1),
          pattern(4, {1.0, 1.0}, 1)};
}

inline std::vector<monoplane::LabeledPattern> two_point_set() {
  return {pattern(1, {1.0}, 1), pattern(2, {-1.0}, -1)};
}

// Schedule with an asymmetric window; separates small random LS sets
// where the symmetric default sometimes keeps one error.
inline monoplane::TrainingConfig small_set_config() {
  monoplane::TrainingConfig c;
  c.learning_rate = 0.01;
  c.temp_ratio = 0.1;
  return c;
}
