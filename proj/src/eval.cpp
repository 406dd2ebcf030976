#include "codemix/eval.hpp"

#include <fmt/format.h>

#include <future>
#include <ostream>

namespace codemix {

ConfusionMatrix confusion(std::span<const Polarity> gold, std::span<const Polarity> predicted) {
  if (gold.size() != predicted.size())
    throw Error("confusion: " + std::to_string(gold.size()) + " gold labels but " +
                std::to_string(predicted.size()) + " predictions");
  if (gold.empty()) throw Error("confusion: no instances");
  ConfusionMatrix m;
  for (std::size_t i = 0; i < gold.size(); ++i) ++m.grid.at(gold[i], predicted[i]);
  return m;
}

EvalReport metrics(const ConfusionMatrix& m) {
  EvalReport r;
  r.confusion = m;
  const auto total = m.grid.total();
  r.correct = m.grid.trace();
  r.incorrect = total - r.correct;
  r.accuracy = total > 0 ? static_cast<double>(r.correct) / static_cast<double>(total) : 0.0;
  for (std::size_t c = 0; c < kNumPolarities; ++c) {
    const auto hit = static_cast<double>(m.grid.counts[c][c]);
    const auto col = m.grid.col_total(c);
    const auto row = m.grid.row_total(c);
    auto& cm = r.per_class[c];
    cm.precision = col > 0 ? hit / static_cast<double>(col) : 0.0;
    cm.recall = row > 0 ? hit / static_cast<double>(row) : 0.0;
    const double pr = cm.precision + cm.recall;
    cm.f1 = pr > 0.0 ? 2.0 * cm.precision * cm.recall / pr : 0.0;
  }
  return r;
}

MajorityBaseline majority_baseline(std::span<const Polarity> train, std::span<const Polarity> test) {
  if (train.empty() || test.empty()) throw Error("majority_baseline: empty label list");
  std::array<std::size_t, kNumPolarities> counts{};
  for (auto p : train) ++counts[index_of(p)];
  const std::size_t best = argmax_first(std::vector<double>(counts.begin(), counts.end()));
  MajorityBaseline b;
  b.label = kPolarities[best];
  std::size_t hits = 0;
  for (auto p : test) hits += p == b.label;
  b.accuracy = static_cast<double>(hits) / static_cast<double>(test.size());
  return b;
}

EvalReport evaluate(const Experiment& experiment, const TrainedModel& model) {
  std::vector<Polarity> predicted;
  predicted.reserve(experiment.test.size());
  for (const auto& p : predict_all(model, experiment.test.features)) predicted.push_back(p.label);
  auto report = metrics(confusion(experiment.test.labels, predicted));
  report.baseline = majority_baseline(experiment.train.labels, experiment.test.labels);
  return report;
}

EvalReport evaluate(const Experiment& experiment, const FeatureMask& mask,
                    const ModelOptions& options) {
  const auto fit = fit_model(experiment.train, mask, options);
  return evaluate(experiment, fit.model);
}

std::vector<FeatureGroup> default_feature_groups() {
  using enum FeatureFamily;
  return {
      {"G1", FeatureMask::of({SWN, OL, ESW, BSW, CBW, CW, S1, S2})},
      {"G2", FeatureMask::of({POS})},
      {"G3", FeatureMask::of({UW, E, Q, R, CS})},
  };
}

void validate_groups(std::span<const FeatureGroup> groups) {
  if (groups.empty()) throw Error("feature groups: no groups given");
  FeatureMask seen;
  for (const auto& g : groups) {
    if (!g.families.any()) throw Error("feature group '" + g.name + "' is empty");
    if ((seen & g.families).any())
      throw Error("feature group '" + g.name + "' overlaps an earlier group");
    seen = seen | g.families;
  }
  std::string missing;
  for (auto f : kAllFamilies)
    if (!seen.enabled(f)) missing += (missing.empty() ? "" : ",") + std::string(family_name(f));
  if (!missing.empty()) throw Error("feature groups do not cover: " + missing);
}

namespace {

AblationRow run_config(const Experiment& experiment, std::string label, const FeatureMask& mask,
                       const ModelOptions& options) {
  const auto report = evaluate(experiment, mask, options);
  AblationRow row;
  row.config = std::move(label);
  row.correct = report.correct;
  row.incorrect = report.incorrect;
  row.accuracy = report.accuracy;
  return row;
}

AblationReport run_all(const Experiment& experiment,
                       const std::vector<std::pair<std::string, FeatureMask>>& configs,
                       const AblationOptions& options) {
  AblationReport report;
  if (!options.parallel) {
    for (const auto& [label, mask] : configs)
      report.rows.push_back(run_config(experiment, label, mask, options.model));
    return report;
  }
  std::vector<std::future<AblationRow>> pending;
  for (const auto& [label, mask] : configs)
    pending.push_back(std::async(std::launch::async, run_config, std::cref(experiment), label, mask,
                                 std::cref(options.model)));
  for (auto& f : pending) report.rows.push_back(f.get());
  return report;
}

}  // namespace

AblationReport ablate_add_groups(const Experiment& experiment, std::span<const FeatureGroup> groups,
                                 const AblationOptions& options) {
  validate_groups(groups);
  std::vector<std::pair<std::string, FeatureMask>> configs;
  std::string label;
  FeatureMask mask;
  for (const auto& g : groups) {
    label += label.empty() ? g.name : "+" + g.name;
    mask = mask | g.families;
    configs.emplace_back(label, mask);
  }
  return run_all(experiment, configs, options);
}

std::vector<std::string> leave_one_out_labels() {
  return {"None", "SWN", "OL", "ESW", "BSW", "CBW", "S", "POS",
          "UW",   "E",   "Q",  "R",   "CS",  "S1",  "S2"};
}

AblationReport ablate_leave_one_out(const Experiment& experiment, const AblationOptions& options) {
  std::vector<std::pair<std::string, FeatureMask>> configs;
  for (const auto& label : leave_one_out_labels()) {
    auto mask = FeatureMask::all();
    if (label == "S") {
      mask.disable(FeatureFamily::S1).disable(FeatureFamily::S2);
    } else if (label != "None") {
      mask.disable(*parse_family(label));
    }
    configs.emplace_back(label, mask);
  }
  return run_all(experiment, configs, options);
}

void render_report_text(std::ostream& out, const EvalReport& r) {
  out << "confusion matrix (rows = gold, columns = predicted)\n";
  out << fmt::format("{:<10}", "");
  for (auto p : kPolarities) out << fmt::format("{:>10}", polarity_name(p));
  out << '\n';
  for (auto g : kPolarities) {
    out << fmt::format("{:<10}", polarity_name(g));
    for (auto p : kPolarities) out << fmt::format("{:>10}", r.confusion.grid.at(g, p));
    out << '\n';
  }
  out << '\n';
  out << fmt::format("accuracy: {:.3f} ({}/{})\n", r.accuracy, r.correct, r.correct + r.incorrect);
  out << fmt::format("correct: {}  incorrect: {}\n\n", r.correct, r.incorrect);
  out << fmt::format("{:<10}{:>11}{:>9}{:>11}\n", "class", "precision", "recall", "f-measure");
  for (auto c : kPolarities) {
    const auto& m = r.per_class[index_of(c)];
    out << fmt::format("{:<10}{:>11.3f}{:>9.3f}{:>11.3f}\n", polarity_name(c), m.precision,
                       m.recall, m.f1);
  }
  out << '\n';
  out << fmt::format("majority baseline: {} = {:.3f}\n", polarity_name(r.baseline.label),
                     r.baseline.accuracy);
}

void render_report_tsv(std::ostream& out, const EvalReport& r) {
  out << "gold\\predicted";
  for (auto p : kPolarities) out << '\t' << polarity_name(p);
  out << '\n';
  for (auto g : kPolarities) {
    out << polarity_name(g);
    for (auto p : kPolarities) out << '\t' << r.confusion.grid.at(g, p);
    out << '\n';
  }
  out << "class\tprecision\trecall\tf_measure\n";
  for (auto c : kPolarities) {
    const auto& m = r.per_class[index_of(c)];
    out << fmt::format("{}\t{:.3f}\t{:.3f}\t{:.3f}\n", polarity_name(c), m.precision, m.recall, m.f1);
  }
  out << "metric\tvalue\n";
  out << fmt::format("accuracy\t{:.3f}\ncorrect\t{}\nincorrect\t{}\n", r.accuracy, r.correct,
                     r.incorrect);
  out << fmt::format("baseline_label\t{}\nbaseline_accuracy\t{:.3f}\n",
                     polarity_name(r.baseline.label), r.baseline.accuracy);
}

void render_ablation_text(std::ostream& out, const AblationReport& report, std::string_view heading) {
  out << fmt::format("{:<16}{:>10}{:>12}{:>10}\n", heading, "correct", "incorrect", "accuracy");
  for (const auto& row : report.rows)
    out << fmt::format("{:<16}{:>10}{:>12}{:>10.3f}\n", row.config, row.correct, row.incorrect,
                       row.accuracy);
}

void render_ablation_tsv(std::ostream& out, const AblationReport& report) {
  out << "config\tcorrect\tincorrect\taccuracy\n";
  for (const auto& row : report.rows)
    out << fmt::format("{}\t{}\t{}\t{:.3f}\n", row.config, row.correct, row.incorrect, row.accuracy);
}

}  // namespace codemix
