#include <gtest/gtest.h>

#include <cmath>
#include <sstream>
#include <string>

#include "monoplane/eval.hpp"
#include "monoplane/io.hpp"
#include "monoplane/report.hpp"
#include "monoplane/verify.hpp"
#include "test_support.hpp"

using namespace monoplane;

TEST(Published, WeightVectorsLoadWithSixtyOneComponents) {
  const auto train = load_published_weights(PublishedName::w_train).w;
  const auto test = load_published_weights(PublishedName::w_test).w;
  const auto sonar = load_published_weights(PublishedName::w_sonar).w;
  ASSERT_EQ(train.size(), 61u);
  ASSERT_EQ(test.size(), 61u);
  ASSERT_EQ(sonar.size(), 61u);
  EXPECT_DOUBLE_EQ(train[0], -0.0692);
  EXPECT_DOUBLE_EQ(train[60], 0.0015);
  EXPECT_DOUBLE_EQ(test[0], -0.4035);
  EXPECT_DOUBLE_EQ(sonar[31], 3.3527);
}

TEST(Published, NormsMatchTheNormalization) {
  for (const auto name : {PublishedName::w_train, PublishedName::w_test, PublishedName::w_sonar}) {
    const auto w = load_published_weights(name).w;
    EXPECT_NEAR(w.norm() * w.norm(), 61.0, 0.01) << to_string(name);
  }
}

TEST(Published, NamesParseLeniently) {
  EXPECT_EQ(parse_published_name("W_Train"), PublishedName::w_train);
  EXPECT_EQ(parse_published_name("test"), PublishedName::w_test);
  EXPECT_EQ(parse_published_name("w_SONAR"), PublishedName::w_sonar);
  EXPECT_THROW(parse_published_name("w_other"), InvalidArgument);
}

TEST(Published, EmbeddedChecksumsArePinned) {
  EXPECT_EQ(assets::w_train_sha256, "909106171811af8ea951549618957c8973c7f392b390006006de51bc4cc29fb6");
  EXPECT_EQ(assets::w_test_sha256, "67358d599cc0c5ea26a72c4f558dbd1ffbab7fa5293e107d191ba9cf47127715");
  EXPECT_EQ(assets::w_sonar_sha256, "2d16e8cefba7d39cdd35a0125f5e1de5e2585ae70efb190e75a26f05253ac503");
}

TEST(Reference, TablesHaveTheListedRows) {
  const auto test = reference_misclassified_test();
  const auto train = reference_misclassified_train();
  ASSERT_EQ(test.size(), 20u);
  ASSERT_EQ(train.size(), 24u);
  EXPECT_EQ(test.front().mu, 105u);
  EXPECT_DOUBLE_EQ(test.front().gamma_sonar, 2.09029e-03);
  EXPECT_EQ(test.back().mu, 203u);
  EXPECT_EQ(train.front().mu, 5u);
  EXPECT_EQ(train.back().mu, 100u);
  std::size_t fp = 0;
  for (const auto& r : test) fp += r.tau < 0;
  EXPECT_EQ(fp, 15u);
  fp = 0;
  for (const auto& r : train) fp += r.tau < 0;
  EXPECT_EQ(fp, 5u);
  for (const auto& r : test) EXPECT_LT(r.tau * r.field, 0.0) << r.mu;
}

TEST(Cosine, SelfAndOpposite) {
  const WeightVector w({0.3, -1.2, 2.0});
  EXPECT_NEAR(cosine(w, w), 1.0, 1e-15);
  EXPECT_NEAR(cosine(w, w.scaled(-2.0)), -1.0, 1e-15);
  const WeightVector a({1.0, 0.0});
  const WeightVector b({0.0, 3.0});
  EXPECT_DOUBLE_EQ(cosine(a, b), 0.0);
  EXPECT_DOUBLE_EQ(cosine(a, a, CosineMode::raw_product), 0.25);
  EXPECT_THROW(cosine(a, WeightVector({1.0, 0.0, 0.0})), DimensionError);
  EXPECT_THROW(cosine(a, WeightVector({0.0, 0.0})), InvalidArgument);
}

TEST(Cosine, PublishedPairsAreDeterministic) {
  const auto checks = cosine_checks();
  ASSERT_EQ(checks.size(), 3u);
  for (const auto& c : checks) {
    const auto a = load_published_weights(c.a).w;
    const auto b = load_published_weights(c.b).w;
    EXPECT_NEAR(c.true_cosine * a.norm() * b.norm(), dot(a.components(), b.components()), 1e-12);
    EXPECT_GE(c.true_cosine, -1.0);
    EXPECT_LE(c.true_cosine, 1.0);
  }
}

TEST(Evaluate, SeparatingClassifierHasNoRecords) {
  const auto report = evaluate(WeightVector({0.0, 1.0}), two_point_set());
  EXPECT_TRUE(report.records.empty());
  EXPECT_EQ(report.error_fraction, 0.0);
  EXPECT_EQ(format_percent(report.error_fraction), "0.0");
}

TEST(Evaluate, RecordsSortedAndNumbered) {
  std::vector<LabeledPattern> set = {pattern(9, {2.0}, -1), pattern(3, {-1.0}, 1), pattern(5, {4.0}, 1),
                                     pattern(1, {0.0}, -1)};
  const auto report = evaluate(WeightVector({0.0, 1.0}), set, WeightVector({1.0, 0.0}));
  ASSERT_EQ(report.records.size(), 3u);
  EXPECT_EQ(report.records[0].mu, 1u);
  EXPECT_EQ(report.records[0].i, 1u);
  EXPECT_EQ(report.records[2].mu, 9u);
  EXPECT_EQ(report.records[2].i, 3u);
  EXPECT_DOUBLE_EQ(report.records[2].field_value, 2.0 / std::sqrt(1.0));
  ASSERT_TRUE(report.records[2].gamma_reference);
  EXPECT_DOUBLE_EQ(*report.records[2].gamma_reference, -1.0);
  EXPECT_EQ(report.counts.false_pos, 2u);
  EXPECT_EQ(report.counts.false_neg, 1u);
  EXPECT_EQ(format_percent(report.error_fraction), "75.0");
}

TEST(Evaluate, PercentRoundsToOneDecimal) {
  EXPECT_EQ(format_percent(100.0 * 20 / 104), "19.2");
  EXPECT_EQ(format_percent(100.0 * 24 / 104), "23.1");
}

TEST(Probe, XorIsUndetermined) {
  TrainingConfig budget;
  budget.max_epochs = 2000;
  const auto verdict = separability_probe(xor_set(), budget);
  EXPECT_FALSE(verdict.separable);
  EXPECT_GE(verdict.errors, 1u);
}

TEST(Probe, TwoPointSetIsCertified) {
  const auto verdict = separability_probe(two_point_set(), TrainingConfig{});
  EXPECT_TRUE(verdict.separable);
  EXPECT_GT(verdict.min_stability, 0.0);
}

TEST(PerturbationAnalysis, CountsEveryComponentTwice) {
  const std::vector<LabeledPattern> set = {pattern(1, {1e-5}, 1), pattern(2, {-1.0}, -1)};
  const auto a = perturbation_analysis(WeightVector({0.0, 1.0}), set, 5e-5);
  EXPECT_EQ(a.perturbations, 4u);
  EXPECT_EQ(a.nominal, 0u);
  EXPECT_EQ(a.max_count, 1u);  // moving the bias down by 5e-5 flips pattern 1
  EXPECT_EQ(a.changing, 1u);
}

TEST(WeightsFile, RoundTripIsExact) {
  const WeightVector w({0.1, -1.0 / 3.0, 1e-300, 6.02214076e23});
  std::stringstream buffer;
  write_weights(buffer, w);
  EXPECT_EQ(parse_weights(buffer), w);
}

TEST(WeightsFile, AcceptsTableLayout) {
  const auto w = parse_weights(std::string_view("{-0.0692, 0.1 -0.5139 -0.3040,\n 1.3439\n}"));
  ASSERT_EQ(w.size(), 5u);
  EXPECT_DOUBLE_EQ(w[2], -0.5139);
  EXPECT_THROW(parse_weights(std::string_view("0.1, x")), ParseError);
  EXPECT_THROW(parse_weights(std::string_view("")), ParseError);
}

TEST(WeightsTable, EightPerRowFourDecimals) {
  std::vector<double> v(10, 0.5);
  v[0] = -0.06921;
  std::ostringstream out;
  write_weights_table(out, WeightVector(v));
  const std::string text = out.str();
  EXPECT_NE(text.find("-0.0692"), std::string::npos);
  EXPECT_EQ(std::count(text.begin(), text.end(), '\n'), 2);
}

TEST(ConfigFile, RoundTripAndErrors) {
  TrainingConfig c;
  c.t_initial = 3.5;
  c.max_epochs = 1234;
  c.seed = 99;
  c.temp_ratio = 4.0;
  std::stringstream buffer;
  write_config(buffer, c);
  EXPECT_EQ(parse_config(buffer), c);
  std::istringstream partial("# comment\nlearning_rate = 0.5\n");
  EXPECT_EQ(parse_config(partial).learning_rate, 0.5);
  std::istringstream unknown("speed=1\n");
  EXPECT_THROW(parse_config(unknown), ParseError);
  std::istringstream bad("max_epochs=1.5\n");
  EXPECT_THROW(parse_config(bad), ParseError);
}

TEST(TraceFile, RoundTrip) {
  TrainingConfig config;
  config.max_epochs = 50;
  const auto result = minimerror_train(xor_set(), config);
  std::stringstream buffer;
  write_trace_csv(buffer, result.trace);
  const auto parsed = parse_trace_csv(buffer);
  ASSERT_EQ(parsed.epochs.size(), result.trace.epochs.size());
  EXPECT_EQ(parsed.best_epoch, result.trace.best_epoch);
  for (std::size_t k = 0; k < parsed.epochs.size(); ++k) {
    EXPECT_EQ(parsed.epochs[k].temperature, result.trace.epochs[k].temperature);
    EXPECT_EQ(parsed.epochs[k].cost, result.trace.epochs[k].cost);
    EXPECT_EQ(parsed.epochs[k].errors, result.trace.epochs[k].errors);
    EXPECT_EQ(parsed.epochs[k].min_stability, result.trace.epochs[k].min_stability);
  }
}

TEST(Report, JsonRoundTripAndTextColumns) {
  std::vector<LabeledPattern> set = {pattern(105, {0.119697}, -1), pattern(3, {2.0}, 1)};
  const auto report = evaluate(WeightVector({0.0, 1.0}), set, WeightVector({1.0, 1.0}));
  const auto back = report_from_json(to_json(report));
  ASSERT_EQ(back.records.size(), 1u);
  EXPECT_EQ(back.records[0].mu, 105u);
  EXPECT_EQ(back.records[0].field_value, report.records[0].field_value);
  EXPECT_EQ(back.counts, report.counts);

  std::ostringstream text;
  write_report_text(text, report);
  EXPECT_NE(text.str().find("1.19697e-01"), std::string::npos);
  EXPECT_NE(text.str().find("eps = 50.0"), std::string::npos);

  std::ostringstream csv;
  write_report_csv(csv, report);
  EXPECT_EQ(csv.str().substr(0, csv.str().find('\n')), "i,mu,field,gamma_reference,tau");
  EXPECT_EQ(parse_output_format("json"), OutputFormat::json);
  EXPECT_THROW(parse_output_format("xml"), InvalidArgument);
}
