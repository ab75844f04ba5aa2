#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <set>
#include <sstream>

#include "stged/core/errors.hpp"
#include "stged/model/predictor.hpp"
#include "stged/train/ablation.hpp"
#include "stged/train/balance.hpp"
#include "stged/train/optimizer.hpp"
#include "stged/train/report.hpp"
#include "stged/train/trainer.hpp"
#include "support.hpp"

using namespace stged;
using namespace stged::train;
using stged::testing::record;
using stged::testing::snapshot;

namespace {

std::vector<LabeledPair> make_pairs(std::size_t pos, std::size_t neg) {
  std::vector<LabeledPair> out;
  for (std::size_t k = 0; k < pos + neg; ++k)
    out.push_back({k, {0, 1}, static_cast<std::uint8_t>(k < pos ? 1 : 0)});
  return out;
}

/// Fixed random link set, identical in every snapshot: a pair is linked iff
/// it carries records, so the presence feature alone separates the labels.
tcn::Dataset separable_toy(std::size_t n, std::size_t steps, std::uint64_t seed) {
  Rng rng(seed);
  std::vector<tcn::EdgeRecord> edges;
  for (tcn::NodeId i = 0; i < n; ++i)
    for (tcn::NodeId j = 0; j < n; ++j)
      if (i != j && rng.uniform() < 0.4) edges.push_back(record(i, j, 100.0 + 20.0 * rng.uniform(), 500.0));
  tcn::Dataset d;
  d.n_nodes = n;
  for (std::size_t t = 0; t < steps; ++t)
    d.snapshots.push_back(std::make_shared<const tcn::Snapshot>(snapshot(n, edges, static_cast<std::int64_t>(t))));
  return d;
}

model::ModelConfig tiny(const std::string& name, std::size_t window) {
  auto c = model::ModelConfig::desk();
  c.window = window;
  c.spatial_hidden = 8;
  c.attention_heads = 2;
  c.embedding_size = 8;
  c.temporal_hidden = 8;
  c.mlp_hidden = {8};
  return model::with_model_name(c, name);
}

}  // namespace

TEST(Split, PublishedRatios) {
  const auto s = split_windows(4000, {});
  EXPECT_EQ(s.train.size(), 3600u);
  EXPECT_EQ(s.val.size(), 200u);
  EXPECT_EQ(s.test.size(), 200u);
}

TEST(Split, FloorAllocationWithRemainderToTraining) {
  const auto s = split_windows(21, {});
  EXPECT_EQ(s.train.size(), 19u);
  EXPECT_EQ(s.val.size(), 1u);
  EXPECT_EQ(s.test.size(), 1u);
}

TEST(Split, DisjointExhaustiveDeterministic) {
  for (std::size_t count : {20u, 57u, 333u}) {
    SplitConfig cfg;
    cfg.seed = count;
    const auto a = split_windows(count, cfg), b = split_windows(count, cfg);
    EXPECT_EQ(a.train, b.train);
    EXPECT_EQ(a.val, b.val);
    EXPECT_EQ(a.test, b.test);
    std::multiset<std::size_t> all(a.train.begin(), a.train.end());
    all.insert(a.val.begin(), a.val.end());
    all.insert(a.test.begin(), a.test.end());
    EXPECT_EQ(all.size(), count);
    EXPECT_EQ(std::set<std::size_t>(all.begin(), all.end()).size(), count);
    EXPECT_EQ(*all.rbegin(), count - 1);
  }
  SplitConfig other;
  other.seed = 99;
  EXPECT_NE(split_windows(333, other).test, split_windows(333, {}).test);
}

TEST(Split, Rejections) {
  EXPECT_THROW(split_windows(19, {}), DomainError);
  SplitConfig bad;
  bad.ratios = {80, 5, 5};
  EXPECT_THROW(split_windows(100, bad), ConfigError);
}

TEST(Balance, DownsamplesLargerClass) {
  Rng rng(1);
  const auto pairs = make_pairs(100, 400);
  const auto out = balance(pairs, rng);
  const auto pos = std::count_if(out.begin(), out.end(), [](const auto& p) { return p.label == 1; });
  EXPECT_EQ(pos, 100);
  EXPECT_EQ(out.size(), 200u);
  std::set<std::size_t> ids;
  for (const auto& p : out) ids.insert(p.window);
  EXPECT_EQ(ids.size(), out.size());  // without replacement
}

TEST(Balance, EqualClassesUnchanged) {
  Rng rng(2);
  const auto pairs = make_pairs(50, 50);
  auto out = balance(pairs, rng);
  std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) { return a.window < b.window; });
  EXPECT_EQ(out, pairs);
}

TEST(Balance, EmptyClassNamed) {
  Rng rng(3);
  try {
    balance(make_pairs(0, 10), rng);
    FAIL();
  } catch (const DomainError& e) {
    EXPECT_NE(std::string(e.what()).find("positive"), std::string::npos);
  }
  try {
    balance(make_pairs(10, 0), rng);
    FAIL();
  } catch (const DomainError& e) {
    EXPECT_NE(std::string(e.what()).find("negative"), std::string::npos);
  }
}

TEST(Balance, AlwaysExactlyEqualAndRedrawn) {
  Rng rng(4);
  for (int trial = 0; trial < 200; ++trial) {
    const std::size_t pos = 1 + rng.index(60), neg = 1 + rng.index(60);
    const auto pairs = make_pairs(pos, neg);
    const auto out = balance(pairs, rng);
    const auto p = std::count_if(out.begin(), out.end(), [](const auto& q) { return q.label == 1; });
    ASSERT_EQ(static_cast<std::size_t>(p), std::min(pos, neg));
    ASSERT_EQ(out.size(), 2 * std::min(pos, neg));
  }
  const auto pairs = make_pairs(5, 500);
  EXPECT_NE(balance(pairs, rng), balance(pairs, rng));
}

TEST(Metrics, HandComputedExample) {
  const auto m = MetricsReport::from_counts({3, 1, 1, 5});
  EXPECT_DOUBLE_EQ(m.accuracy, 0.8);
  EXPECT_DOUBLE_EQ(m.precision, 0.75);
  EXPECT_DOUBLE_EQ(m.recall, 0.75);
  EXPECT_DOUBLE_EQ(m.f1, 0.75);
}

TEST(Metrics, PerfectAndAllPositive) {
  const std::vector<double> scores{0.9, 0.8, 0.1, 0.2};
  const std::vector<std::uint8_t> labels{1, 1, 0, 0};
  const auto perfect = score_metrics(scores, labels, 0.5);
  EXPECT_EQ(perfect.accuracy, 1.0);
  EXPECT_EQ(perfect.precision, 1.0);
  EXPECT_EQ(perfect.recall, 1.0);
  EXPECT_EQ(perfect.f1, 1.0);
  const auto all_pos = score_metrics(std::vector<double>{0.9, 0.9, 0.9, 0.9}, labels, 0.5);
  EXPECT_EQ(all_pos.recall, 1.0);
  EXPECT_EQ(all_pos.accuracy, 0.5);
}

TEST(Metrics, ZeroDenominatorsAreFlagged) {
  const auto m = score_metrics(std::vector<double>{0.1, 0.2}, std::vector<std::uint8_t>{0, 0}, 0.5);
  EXPECT_EQ(m.precision, 0.0);
  EXPECT_TRUE(m.precision_undefined);
  EXPECT_TRUE(m.recall_undefined);
  EXPECT_TRUE(m.f1_undefined);
  EXPECT_FALSE(m.accuracy_undefined);
  EXPECT_TRUE(MetricsReport::from_counts({}).accuracy_undefined);
}

TEST(Metrics, MatchesBruteForceConfusion) {
  Rng rng(5);
  for (int trial = 0; trial < 100; ++trial) {
    std::vector<double> scores;
    std::vector<std::uint8_t> labels;
    const std::size_t n = 1 + rng.index(300);
    for (std::size_t k = 0; k < n; ++k) {
      // Include exact threshold hits to exercise the strict rule.
      scores.push_back(rng.uniform() < 0.1 ? 0.5 : rng.uniform());
      labels.push_back(rng.uniform() < 0.4 ? 1 : 0);
    }
    const auto m = score_metrics(scores, labels, 0.5);
    const auto c = stged::testing::brute_confusion(scores, labels, 0.5);
    ASSERT_EQ(m.counts, c);
    EXPECT_EQ(m.accuracy, static_cast<double>(c.tp + c.tn) / static_cast<double>(n));
  }
}

TEST(Optimizer, SgdAndAdamFirstStep) {
  diff::ParameterStore store;
  auto& p = store.add("p", diff::Tensor::matrix(1, 2, {1.0, -1.0}));
  p.grad = diff::Tensor::matrix(1, 2, {0.5, -2.0});
  Optimizer sgd(OptimizerKind::sgd, 0.1);
  sgd.step(store);
  EXPECT_DOUBLE_EQ(p.value[0], 0.95);
  EXPECT_DOUBLE_EQ(p.value[1], -0.8);
  // Adam's bias-corrected first step moves each entry by lr * sign(grad).
  Optimizer adam(OptimizerKind::adam, 0.01);
  adam.step(store);
  EXPECT_NEAR(p.value[0], 0.94, 1e-9);
  EXPECT_NEAR(p.value[1], -0.79, 1e-9);
  EXPECT_THROW(parse_optimizer("rmsprop"), ConfigError);
}

TEST(Training, ZeroLearningRateLeavesModelUnchanged) {
  const auto data = separable_toy(5, 30, 1);
  const auto exp = prepare_experiment(data, 2, {});
  auto model = model::make_model(tiny("gtc-lstm", 2), 3);
  const auto before = model->parameters().values();
  const auto eval_before = evaluate(*model, exp, exp.split.test, 0.5);
  TrainConfig cfg;
  cfg.learning_rate = 0.0;
  cfg.epochs = 2;
  train_model(*model, exp, cfg);
  EXPECT_EQ(model->parameters().values(), before);
  EXPECT_EQ(evaluate(*model, exp, exp.split.test, 0.5), eval_before);
}

TEST(Training, FirstBatchLossWithZeroDecoderIsLn2) {
  const auto data = separable_toy(5, 30, 2);
  const auto exp = prepare_experiment(data, 2, {});
  auto model = model::make_model(tiny("gtc-gru", 2), 4);
  for (auto& p : model->parameters())
    if (p->name.rfind("decoder.", 0) == 0) p->value.fill(0.0);
  TrainConfig cfg;
  cfg.epochs = 1;
  const auto r = train_model(*model, exp, cfg);
  ASSERT_FALSE(r.batch_losses.empty());
  EXPECT_NEAR(r.batch_losses.front(), std::log(2.0), 1e-12);
}

TEST(Training, SeparableToyIsLearned) {
  const auto data = separable_toy(6, 40, 3);
  const auto exp = prepare_experiment(data, 1, {});
  auto model = model::make_model(tiny("mlp", 1), 5);
  TrainConfig cfg;
  cfg.epochs = 20;
  cfg.learning_rate = 1e-2;
  const auto r = train_model(*model, exp, cfg);
  EXPECT_LT(r.curve.back().train_loss, r.curve.front().train_loss);
  EXPECT_GE(evaluate(*model, exp, exp.split.val, 0.5).accuracy, 0.99);
}

TEST(Training, DeterministicPerSeed) {
  const auto data = separable_toy(5, 30, 4);
  const auto exp = prepare_experiment(data, 2, {});
  TrainConfig cfg;
  cfg.epochs = 2;
  auto a = model::make_model(tiny("gat-lstm", 2), 6), b = model::make_model(tiny("gat-lstm", 2), 6);
  const auto ra = train_model(*a, exp, cfg), rb = train_model(*b, exp, cfg);
  EXPECT_EQ(ra.batch_losses, rb.batch_losses);
  EXPECT_EQ(a->parameters().values(), b->parameters().values());
}

TEST(Training, DivergenceReportsCoordinates) {
  const auto data = separable_toy(5, 30, 5);
  const auto exp = prepare_experiment(data, 1, {});
  auto model = model::make_model(tiny("mlp", 1), 7);
  TrainConfig cfg;
  cfg.optimizer = OptimizerKind::sgd;
  cfg.learning_rate = 1e306;
  try {
    train_model(*model, exp, cfg);
    FAIL() << "expected NumericError";
  } catch (const NumericError& e) {
    const std::string what = e.what();
    EXPECT_NE(what.find("epoch"), std::string::npos) << what;
    EXPECT_NE(what.find("batch"), std::string::npos) << what;
  }
}

TEST(Training, WindowMismatchIsRejected) {
  const auto data = separable_toy(5, 30, 6);
  const auto exp = prepare_experiment(data, 2, {});
  auto model = model::make_model(tiny("mlp", 3), 1);
  EXPECT_THROW(train_model(*model, exp, {}), ContractError);
}

TEST(Ablation, TwelveCellsInTableOrder) {
  const auto cells = ablation_cells();
  ASSERT_EQ(cells.size(), 12u);
  EXPECT_EQ(cells.front().temporal, model::TemporalKind::none);
  EXPECT_EQ(cells[4].temporal, model::TemporalKind::gru);
  EXPECT_EQ(cells.back().temporal, model::TemporalKind::lstm);
  EXPECT_EQ(cells.back().spatial, model::SpatialKind::gtc);
}

TEST(Ablation, FailingCellIsRecordedAndGridCompletes) {
  // All-negative labels: balancing fails in every cell, yet the grid completes.
  auto data = separable_toy(4, 30, 7);
  for (auto& s : data.snapshots) {
    auto copy = *s;
    copy.edges.clear();
    s = std::make_shared<const tcn::Snapshot>(std::move(copy));
  }
  const auto exp = prepare_experiment(data, 1, {});
  TrainConfig cfg;
  cfg.epochs = 1;
  const auto cells = run_ablation(exp, tiny("gtc-lstm", 1), cfg, 1);
  ASSERT_EQ(cells.size(), 12u);
  for (const auto& c : cells) {
    EXPECT_FALSE(c.ok);
    EXPECT_NE(c.error.find("positive"), std::string::npos);
  }
}

TEST(Report, CsvCarriesProvenanceAndCounts) {
  std::ostringstream out;
  write_metrics_csv(out, {{"gtc-lstm", 5, MetricsReport::from_counts({3, 1, 1, 5})}}, {"stged eval --x", 11});
  const std::string text = out.str();
  EXPECT_EQ(text.rfind("# command: stged eval --x\n# seed: 11\n", 0), 0u);
  EXPECT_NE(text.find("gtc-lstm,5,3,1,1,5,0.800000,0.750000,0.750000,0.750000,"), std::string::npos);
  EXPECT_NE(metrics_table({{"gtc-lstm", 5, MetricsReport::from_counts({3, 1, 1, 5})}}).find("0.800"),
            std::string::npos);
}
