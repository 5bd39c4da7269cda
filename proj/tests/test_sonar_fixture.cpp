// Integration checks on the 3-decimal copy of the benchmark. Its rows are
// class-sorted, so only full-set properties are meaningful here.

#include <gtest/gtest.h>

#include "monoplane/monoplane.hpp"
#include "test_support.hpp"

using namespace monoplane;

namespace {

std::vector<LabeledPattern> rounded_full_set() {
  const auto raw = load_sonar_file(test_data("sonar_rounded3.csv"));
  return standardize(raw, compute_stats(raw));
}

TrainingConfig sonar_config() { return load_config_file(std::string(MONOPLANE_SAMPLES_DIR) + "/sonar.conf"); }

}  // namespace

TEST(RoundedSonar, StandardizedFullSetIsSeparatedByMinimerror) {
  const auto set = rounded_full_set();
  const auto result = minimerror_train(set, sonar_config());
  EXPECT_EQ(count_errors(result.weights, set).total, 0u);
  EXPECT_LE(result.trace.epochs.size(), 100000u);
}

TEST(RoundedSonar, DefaultScheduleStillImprovesOnTheHebbianStart) {
  const auto set = rounded_full_set();
  const auto start = count_errors(hebbian_init(set).weights, set).total;
  const auto result = minimerror_train(set, TrainingConfig{});
  EXPECT_LT(count_errors(result.weights, set).total, start);
}
