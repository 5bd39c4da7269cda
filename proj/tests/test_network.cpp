#include <gtest/gtest.h>

#include <random>
#include <sstream>
#include <vector>

#include "monoplane/network.hpp"
#include "test_support.hpp"

using namespace monoplane;

namespace {

std::vector<LabeledPattern> separable_fixture(std::uint64_t seed, std::size_t p = 40, std::size_t n = 5) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal;
  std::vector<double> teacher(n + 1);
  for (auto& x : teacher) x = normal(rng);
  std::vector<LabeledPattern> set;
  while (set.size() < p) {
    std::vector<double> f(n);
    for (auto& x : f) x = normal(rng);
    auto q = pattern(set.size() + 1, f, 1);
    const double h = dot(teacher, q.xi);
    if (std::abs(h) < 0.1) continue;
    q.tau = h > 0.0 ? 1 : -1;
    set.push_back(std::move(q));
  }
  return set;
}

// Random boolean function on jittered vertices of the n-cube. Every vertex
// can be cut off by a hyperplane, so growth always has a unit to add; the
// jitter breaks the symmetric saddles of the exact cube.
std::vector<LabeledPattern> random_boolean(std::uint64_t seed, std::size_t n = 4) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> jitter(-0.1, 0.1);
  std::vector<LabeledPattern> set;
  for (std::size_t v = 0; v < (std::size_t{1} << n); ++v) {
    std::vector<double> f(n);
    for (std::size_t i = 0; i < n; ++i) f[i] = ((v >> i) & 1 ? 1.0 : -1.0) + jitter(rng);
    set.push_back(pattern(v + 1, f, rng() & 1 ? 1 : -1));
  }
  return set;
}

std::vector<LabeledPattern> parity(std::size_t n) {
  std::mt19937_64 rng(n);
  std::uniform_real_distribution<double> jitter(-0.1, 0.1);
  std::vector<LabeledPattern> set;
  for (std::size_t v = 0; v < (std::size_t{1} << n); ++v) {
    std::vector<double> f(n);
    int tau = 1;
    for (std::size_t i = 0; i < n; ++i) {
      f[i] = ((v >> i) & 1 ? 1.0 : -1.0) + jitter(rng);
      tau *= f[i] > 0 ? 1 : -1;
    }
    set.push_back(pattern(v + 1, f, tau));
  }
  return set;
}

void expect_parity_identity(const std::vector<LabeledPattern>& set, const GrowthTrace& trace) {
  // tau_h = sigma_h * tau_{h+1} whenever unit h+1 learns the previous unit's corrections
  for (std::size_t h = 0; h + 1 < trace.units.size(); ++h) {
    const auto& cur = trace.units[h];
    const auto& next = trace.units[h + 1];
    if (next.source != TargetSource::previous_unit) continue;
    for (std::size_t k = 0; k < set.size(); ++k) ASSERT_EQ(cur.targets[k], cur.states[k] * next.targets[k]);
  }
  // unwinding a run of previous_unit steps recovers its first targets
  std::size_t start = 0;
  for (std::size_t h = 1; h <= trace.units.size(); ++h) {
    if (h < trace.units.size() && trace.units[h].source == TargetSource::previous_unit) continue;
    if (h - start > 1) {
      for (std::size_t k = 0; k < set.size(); ++k) {
        int product = 1;
        for (std::size_t j = start; j + 1 < h; ++j) product *= trace.units[j].states[k];
        ASSERT_EQ(trace.units[start].targets[k], product * trace.units[h - 1].targets[k]);
      }
    }
    start = h;
  }
  for (std::size_t k = 0; k < set.size(); ++k) ASSERT_EQ(trace.units.front().targets[k], set[k].tau);
}

}  // namespace

TEST(BinarySign, ZeroMapsToPlusOne) {
  EXPECT_EQ(binary_sign(0.0), 1);
  EXPECT_EQ(binary_sign(-0.0), 1);
  EXPECT_EQ(binary_sign(-1e-300), -1);
}

// Exhaustive oracle: no integer perceptron with small weights separates XOR.
TEST(Xor, HasNoSingleSeparatorOnAnIntegerGrid) {
  const auto set = xor_set();
  for (int a = -4; a <= 4; ++a) {
    for (int b = -4; b <= 4; ++b) {
      for (int c = -4; c <= 4; ++c) {
        bool all = true;
        for (const auto& p : set) all = all && p.tau * (a * p.xi[0] + b * p.xi[1] + c * p.xi[2]) > 0;
        ASSERT_FALSE(all) << a << " " << b << " " << c;
      }
    }
  }
}

TEST(InternalTargets, ProductOfTargetsAndStates) {
  const std::vector<int> tau = {1, -1, 1, -1};
  const std::vector<int> sigma = {1, 1, -1, -1};
  EXPECT_EQ(internal_targets(tau, sigma), (std::vector<int>{1, -1, -1, 1}));
  EXPECT_EQ(internal_targets(tau, tau), (std::vector<int>{1, 1, 1, 1}));
  EXPECT_THROW(internal_targets(tau, std::vector<int>{1}), DimensionError);
}

TEST(NetworkOutput, WiresHiddenStatesThroughTheOutputUnit) {
  NetworkModel model;
  model.hidden = {WeightVector({0.0, 1.0, 0.0}), WeightVector({0.0, 0.0, 1.0})};
  model.output = WeightVector({-1.0, 1.0, 1.0});  // AND of the two units
  EXPECT_EQ(hidden_states(model, std::vector<double>{1.0, 0.5, 0.5}), (std::vector<int>{1, 1}));
  EXPECT_EQ(network_output(model, std::vector<double>{1.0, 0.5, 0.5}), 1);
  EXPECT_EQ(network_output(model, std::vector<double>{1.0, 0.5, -0.5}), -1);
  EXPECT_EQ(network_output(model, std::vector<double>{1.0, 0.0, 0.0}), 1);  // both states +1 at zero field
  EXPECT_EQ(representation(std::vector<int>{-1, 1}), (std::vector<double>{1.0, -1.0, 1.0}));
  model.output = WeightVector({1.0, 1.0});
  EXPECT_THROW(validate_model(model), DimensionError);
}

TEST(Grow, XorNeedsExactlyTwoHiddenUnits) {
  const auto set = xor_set();
  const auto result = grow_network(set, small_set_config());
  EXPECT_EQ(result.model.hidden_units(), 2u);
  EXPECT_EQ(network_errors(result.model, set), 0u);
  ASSERT_EQ(result.trace.units.size(), 2u);
  EXPECT_EQ(result.trace.units[0].internal_errors, 1u);
  EXPECT_EQ(result.trace.units.back().network_errors, 0u);
  expect_parity_identity(set, result.trace);
}

TEST(Grow, SeparableSetsNeedOneUnit) {
  for (std::uint64_t seed = 1; seed <= 5; ++seed) {
    const auto set = separable_fixture(seed);
    const auto result = grow_network(set, small_set_config());
    ASSERT_EQ(result.model.hidden_units(), 1u) << "seed " << seed;
    EXPECT_EQ(network_errors(result.model, set), 0u);
    for (const auto& p : set) {
      ASSERT_EQ(network_output(result.model, p.xi), hidden_states(result.model, p.xi)[0]);
    }
  }
}

TEST(Grow, InternalErrorsStrictlyDecrease) {
  std::size_t deepest = 0;
  for (std::uint64_t seed = 1; seed <= 6; ++seed) {
    const auto set = random_boolean(seed);
    const auto result = grow_network(set, small_set_config());
    deepest = std::max(deepest, result.model.hidden_units());
    EXPECT_EQ(network_errors(result.model, set), 0u);
    const auto& units = result.trace.units;
    for (std::size_t h = 1; h < units.size(); ++h) {
      ASSERT_LT(units[h].internal_errors, units[h - 1].internal_errors) << "seed " << seed << " unit " << h + 1;
    }
    expect_parity_identity(set, result.trace);
  }
  EXPECT_GE(deepest, 3u);
}

TEST(Grow, ParityOfThreeInputs) {
  const auto set = parity(3);
  const auto result = grow_network(set, small_set_config());
  EXPECT_EQ(network_errors(result.model, set), 0u);
  EXPECT_LE(result.model.hidden_units(), 3u);
  expect_parity_identity(set, result.trace);
}

TEST(Grow, HiddenUnitLimitStalls) {
  GrowthOptions options;
  options.max_hidden = 1;
  try {
    grow_network(xor_set(), TrainingConfig{}, options);
    FAIL() << "expected GrowthStall";
  } catch (const GrowthStall& e) {
    ASSERT_EQ(e.trace().units.size(), 1u);
    EXPECT_GT(e.trace().units[0].network_errors, 0u);
  }
}

TEST(Grow, BitReproducible) {
  const auto set = random_boolean(9);
  const auto a = grow_network(set, small_set_config());
  const auto b = grow_network(set, small_set_config());
  std::ostringstream sa;
  std::ostringstream sb;
  write_network(sa, a.model);
  write_network(sb, b.model);
  EXPECT_EQ(sa.str(), sb.str());
}

TEST(NetworkFile, RoundTrip) {
  const auto set = xor_set();
  const auto result = grow_network(set, small_set_config());
  std::stringstream buffer;
  write_network(buffer, result.model);
  const std::string text = buffer.str();
  std::istringstream with_inputs(text);
  const auto parsed = parse_network(with_inputs, 3);
  EXPECT_EQ(parsed.output, result.model.output);
  ASSERT_EQ(parsed.hidden.size(), result.model.hidden.size());
  for (std::size_t h = 0; h < parsed.hidden.size(); ++h) EXPECT_EQ(parsed.hidden[h], result.model.hidden[h]);
  std::istringstream inferred(text);
  EXPECT_EQ(parse_network(inferred).hidden.size(), 2u);
  std::istringstream truncated(text.substr(0, text.size() / 2));
  EXPECT_THROW(parse_network(truncated, 3), ParseError);
}
