#include <gtest/gtest.h>

#include <algorithm>
#include <map>
#include <numeric>
#include <sstream>

#include <fmt/format.h>

#include "codemix/eval.hpp"
#include "codemix/random.hpp"
#include "test_support.hpp"

using namespace codemix;
using codemix::testing::shipped_resources;
using codemix::testing::source_path;

namespace {

constexpr auto P = Polarity::Positive;
constexpr auto U = Polarity::Neutral;
constexpr auto N = Polarity::Negative;

const std::array<std::array<int, 3>, 3> kReferenceConfusion{{{25, 23, 4}, {10, 78, 3}, {4, 8, 10}}};

void expand_grid(const std::array<std::array<int, 3>, 3>& g, std::vector<Polarity>& gold,
                 std::vector<Polarity>& pred) {
  for (std::size_t i = 0; i < 3; ++i)
    for (std::size_t j = 0; j < 3; ++j)
      for (int n = 0; n < g[i][j]; ++n) {
        gold.push_back(kPolarities[i]);
        pred.push_back(kPolarities[j]);
      }
}

// Hand formulas straight from the counts.
ClassMetrics metrics_oracle(const std::array<std::array<int, 3>, 3>& g, std::size_t c) {
  double col = 0, row = 0;
  for (std::size_t k = 0; k < 3; ++k) {
    col += g[k][c];
    row += g[c][k];
  }
  ClassMetrics m;
  m.precision = col ? g[c][c] / col : 0;
  m.recall = row ? g[c][c] / row : 0;
  m.f1 = m.precision + m.recall > 0 ? 2 * m.precision * m.recall / (m.precision + m.recall) : 0;
  return m;
}

const Experiment& fixture_experiment(const std::string& rel) {
  static std::map<std::string, Experiment> cache;
  auto it = cache.find(rel);
  if (it == cache.end())
    it = cache.emplace(rel, prepare_experiment(load_corpus(source_path(rel)), shipped_resources(),
                                               SplitSpec{}))
             .first;
  return it->second;
}

}  // namespace

TEST(Confusion, ReferenceGrid) {
  std::vector<Polarity> gold, pred;
  expand_grid(kReferenceConfusion, gold, pred);
  auto m = confusion(gold, pred);
  for (std::size_t i = 0; i < 3; ++i)
    for (std::size_t j = 0; j < 3; ++j) EXPECT_EQ(m.grid.counts[i][j], kReferenceConfusion[i][j]);
}

TEST(Confusion, SimpleShapesAndErrors) {
  std::vector<Polarity> gold{P, U, N, N};
  auto diag = confusion(gold, gold);
  EXPECT_EQ(diag.grid.trace(), 4);
  std::vector<Polarity> all_neu(4, U);
  auto col = confusion(gold, all_neu);
  EXPECT_EQ(col.grid.col_total(1), 4);
  EXPECT_EQ(col.grid.col_total(0) + col.grid.col_total(2), 0);
  EXPECT_THROW(confusion(gold, std::vector<Polarity>{P}), Error);
  EXPECT_THROW(confusion(std::vector<Polarity>{}, std::vector<Polarity>{}), Error);
}

TEST(Metrics, ReferenceScores) {
  std::vector<Polarity> gold, pred;
  expand_grid(kReferenceConfusion, gold, pred);
  auto r = metrics(confusion(gold, pred));
  const double expected[3][3] = {{0.641, 0.481, 0.550}, {0.716, 0.857, 0.780}, {0.588, 0.455, 0.513}};
  for (std::size_t c = 0; c < 3; ++c) {
    EXPECT_NEAR(r.per_class[c].precision, expected[c][0], 0.001);
    EXPECT_NEAR(r.per_class[c].recall, expected[c][1], 0.001);
    EXPECT_NEAR(r.per_class[c].f1, expected[c][2], 0.001);
    auto o = metrics_oracle(kReferenceConfusion, c);
    EXPECT_DOUBLE_EQ(r.per_class[c].precision, o.precision);
    EXPECT_DOUBLE_EQ(r.per_class[c].recall, o.recall);
    EXPECT_DOUBLE_EQ(r.per_class[c].f1, o.f1);
  }
  EXPECT_EQ(r.correct, 113);
  EXPECT_EQ(r.incorrect, 52);
  EXPECT_NEAR(r.accuracy, 113.0 / 165.0, 1e-15);
  EXPECT_NEAR(r.accuracy, 0.685, 0.001);
}

TEST(Metrics, DiagonalAndEmptyColumn) {
  ConfusionMatrix m;
  m.grid.counts = {{{3, 0, 0}, {0, 4, 0}, {0, 0, 5}}};
  auto r = metrics(m);
  for (const auto& c : r.per_class) {
    EXPECT_EQ(c.precision, 1.0);
    EXPECT_EQ(c.recall, 1.0);
    EXPECT_EQ(c.f1, 1.0);
  }
  m.grid.counts = {{{0, 3, 0}, {0, 4, 0}, {0, 1, 5}}};
  r = metrics(m);
  EXPECT_EQ(r.per_class[0].precision, 0.0);
  EXPECT_EQ(r.per_class[0].recall, 0.0);
  EXPECT_EQ(r.per_class[0].f1, 0.0);
}

TEST(Metrics, PermutationInvariantAndWeightedRecall) {
  Rng rng(17);
  std::vector<Polarity> gold, pred;
  for (int i = 0; i < 200; ++i) {
    gold.push_back(kPolarities[rng.below(3)]);
    pred.push_back(kPolarities[rng.below(3)]);
  }
  auto base = metrics(confusion(gold, pred));
  std::vector<std::size_t> order(gold.size());
  std::iota(order.begin(), order.end(), 0);
  for (std::size_t i = order.size() - 1; i > 0; --i) std::swap(order[i], order[rng.below(i + 1)]);
  std::vector<Polarity> g2, p2;
  for (auto i : order) {
    g2.push_back(gold[i]);
    p2.push_back(pred[i]);
  }
  auto shuffled = metrics(confusion(g2, p2));
  EXPECT_EQ(shuffled.confusion.grid, base.confusion.grid);
  double weighted = 0;
  for (std::size_t c = 0; c < 3; ++c)
    weighted += base.per_class[c].recall * static_cast<double>(base.confusion.grid.row_total(c));
  EXPECT_NEAR(weighted, static_cast<double>(base.confusion.grid.trace()), 1e-9);
  EXPECT_NEAR(base.accuracy, weighted / 200.0, 1e-12);
}

TEST(MajorityBaseline, NeutralMajorityOf165) {
  std::vector<Polarity> train(400, U);
  std::fill(train.begin(), train.begin() + 100, P);
  std::vector<Polarity> test;
  for (int i = 0; i < 52; ++i) test.push_back(P);
  for (int i = 0; i < 91; ++i) test.push_back(U);
  for (int i = 0; i < 22; ++i) test.push_back(N);
  auto b = majority_baseline(train, test);
  EXPECT_EQ(b.label, U);
  EXPECT_NEAR(b.accuracy, 0.552, 0.001);
}

TEST(MajorityBaseline, SingleClassAndTie) {
  std::vector<Polarity> only_neg(5, N);
  EXPECT_EQ(majority_baseline(only_neg, only_neg).accuracy, 1.0);
  std::vector<Polarity> tie{U, P, U, P, N};
  std::vector<Polarity> test{P, U};
  auto b = majority_baseline(tie, test);
  EXPECT_EQ(b.label, P);
  EXPECT_EQ(b.accuracy, 0.5);
}

TEST(Evaluate, InMemoryAndPersistedModelAgree) {
  const auto& ex = fixture_experiment("data/synthetic_corpus.tsv");
  ModelOptions opts;
  auto fit = fit_model(ex.train, FeatureMask::all(), opts);
  auto direct = evaluate(ex, fit.model);
  auto reloaded = evaluate(ex, deserialize_model(serialize_model(fit.model)));
  EXPECT_EQ(direct.confusion.grid, reloaded.confusion.grid);
  auto trained = evaluate(ex, FeatureMask::all(), opts);
  EXPECT_EQ(trained.confusion.grid, direct.confusion.grid);
  EXPECT_EQ(direct.correct + direct.incorrect, static_cast<std::int64_t>(ex.test.size()));
  EXPECT_EQ(direct.baseline.label, U);
}

TEST(Groups, DefaultPartitionAndValidation) {
  auto groups = default_feature_groups();
  ASSERT_EQ(groups.size(), 3u);
  EXPECT_EQ(groups[0].families, FeatureMask::parse("SWN,OL,ESW,BSW,CBW,CW,S1,S2"));
  EXPECT_EQ(groups[1].families, FeatureMask::parse("POS"));
  EXPECT_EQ(groups[2].families, FeatureMask::parse("UW,E,Q,R,CS"));
  EXPECT_NO_THROW(validate_groups(groups));
  auto overlap = groups;
  overlap[1].families.enable(FeatureFamily::SWN);
  EXPECT_THROW(validate_groups(overlap), Error);
  auto missing = groups;
  missing.pop_back();
  try {
    validate_groups(missing);
    FAIL();
  } catch (const Error& e) {
    EXPECT_NE(std::string(e.what()).find("CS"), std::string::npos);
  }
  EXPECT_THROW(validate_groups(std::vector<FeatureGroup>{}), Error);
  std::vector<FeatureGroup> with_empty = groups;
  with_empty.push_back({"G4", FeatureMask::none()});
  EXPECT_THROW(validate_groups(with_empty), Error);
}

TEST(Ablation, AddGroupsRowSet) {
  const auto& ex = fixture_experiment("data/synthetic_corpus.tsv");
  AblationOptions opts;
  opts.model.train.epochs = 50;
  auto groups = default_feature_groups();
  auto r = ablate_add_groups(ex, groups, opts);
  ASSERT_EQ(r.rows.size(), 3u);
  EXPECT_EQ(r.rows[0].config, "G1");
  EXPECT_EQ(r.rows[1].config, "G1+G2");
  EXPECT_EQ(r.rows[2].config, "G1+G2+G3");
  for (const auto& row : r.rows) {
    EXPECT_EQ(row.correct + row.incorrect, static_cast<std::int64_t>(ex.test.size()));
    EXPECT_DOUBLE_EQ(row.accuracy,
                     static_cast<double>(row.correct) / static_cast<double>(row.correct + row.incorrect));
  }
  // The last row is the full-feature run.
  EXPECT_EQ(r.rows[2].correct, evaluate(ex, FeatureMask::all(), opts.model).correct);

  std::vector<FeatureGroup> single{{"All", FeatureMask::all()}};
  auto one = ablate_add_groups(ex, single, opts);
  ASSERT_EQ(one.rows.size(), 1u);
  EXPECT_EQ(one.rows[0].correct, r.rows[2].correct);
}

TEST(Ablation, ParallelMatchesSequential) {
  const auto& ex = fixture_experiment("data/synthetic_corpus.tsv");
  AblationOptions opts;
  opts.model.train.epochs = 30;
  auto seq = ablate_leave_one_out(ex, opts);
  opts.parallel = true;
  auto par = ablate_leave_one_out(ex, opts);
  ASSERT_EQ(seq.rows.size(), par.rows.size());
  for (std::size_t i = 0; i < seq.rows.size(); ++i) {
    EXPECT_EQ(seq.rows[i].config, par.rows[i].config);
    EXPECT_EQ(seq.rows[i].correct, par.rows[i].correct);
  }
}

TEST(Ablation, LeaveOneOutLabels) {
  EXPECT_EQ(leave_one_out_labels(),
            (std::vector<std::string>{"None", "SWN", "OL", "ESW", "BSW", "CBW", "S", "POS", "UW",
                                      "E", "Q", "R", "CS", "S1", "S2"}));
}

TEST(Ablation, ToyFixtureDependsOnColloquialBengali) {
  const auto& ex = fixture_experiment("tests/data/toy_cbw.tsv");
  std::vector<Polarity> test_labels = ex.test.labels;
  auto baseline = majority_baseline(ex.train.labels, test_labels);
  EXPECT_EQ(baseline.label, U);

  AblationOptions opts;
  auto add = ablate_add_groups(ex, default_feature_groups(), opts);
  for (const auto& row : add.rows) EXPECT_GE(row.accuracy, baseline.accuracy) << row.config;

  auto loo = ablate_leave_one_out(ex, opts);
  ASSERT_EQ(loo.rows.size(), 15u);
  const auto none = loo.rows[0];
  EXPECT_GT(none.accuracy, baseline.accuracy);
  for (const auto& row : loo.rows) {
    if (row.config == "CBW") {
      // Every remaining feature is constant: the network can only learn
      // the class prior, i.e. the majority label.
      EXPECT_NEAR(row.accuracy, baseline.accuracy, 1e-12);
    } else {
      // Removing a constant feature changes nothing.
      EXPECT_EQ(row.correct, none.correct) << row.config;
    }
  }
}

TEST(Render, ReportTextConsistency) {
  const auto& ex = fixture_experiment("data/synthetic_corpus.tsv");
  ModelOptions opts;
  opts.train.epochs = 40;
  auto r = evaluate(ex, FeatureMask::all(), opts);
  std::ostringstream out;
  render_report_text(out, r);
  const auto text = out.str();
  EXPECT_NE(text.find("majority baseline: Neutral = "), std::string::npos);
  EXPECT_NE(text.find(fmt::format("accuracy: {:.3f}", static_cast<double>(r.confusion.grid.trace()) /
                                                          static_cast<double>(r.confusion.grid.total()))),
            std::string::npos);
}

TEST(Render, AblationTsv) {
  AblationReport rep{{{"None", 2, 1, 2.0 / 3.0}, {"SWN", 1, 2, 1.0 / 3.0}}};
  std::ostringstream out;
  render_ablation_tsv(out, rep);
  EXPECT_EQ(out.str(), "config\tcorrect\tincorrect\taccuracy\nNone\t2\t1\t0.667\nSWN\t1\t2\t0.333\n");
}
