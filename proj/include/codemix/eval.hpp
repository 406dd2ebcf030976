#pragma once

#include <array>
#include <cstddef>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "codemix/features.hpp"
#include "codemix/pipeline.hpp"
#include "codemix/types.hpp"

namespace codemix {

// Rows are gold labels, columns predictions.
struct ConfusionMatrix {
  LabelGrid grid;
};

// Throws on empty input or a length mismatch.
ConfusionMatrix confusion(std::span<const Polarity> gold, std::span<const Polarity> predicted);

struct ClassMetrics {
  double precision = 0.0;
  double recall = 0.0;
  double f1 = 0.0;
};

struct MajorityBaseline {
  Polarity label = Polarity::Positive;
  double accuracy = 0.0;
};

struct EvalReport {
  ConfusionMatrix confusion;
  double accuracy = 0.0;
  std::array<ClassMetrics, kNumPolarities> per_class{};
  std::int64_t correct = 0;
  std::int64_t incorrect = 0;
  MajorityBaseline baseline;
};

// Empty columns give precision 0, empty rows recall 0, and P + R = 0 gives
// F1 0. The baseline is left default.
EvalReport metrics(const ConfusionMatrix& m);

// Most frequent training label (ties to the earlier label) and its
// frequency in the test labels.
MajorityBaseline majority_baseline(std::span<const Polarity> train, std::span<const Polarity> test);

// Trains on the experiment's training side and evaluates on its test side.
EvalReport evaluate(const Experiment& experiment, const FeatureMask& mask,
                    const ModelOptions& options);
// Evaluates an already trained model on the test side.
EvalReport evaluate(const Experiment& experiment, const TrainedModel& model);

struct AblationRow {
  std::string config;
  std::int64_t correct = 0;
  std::int64_t incorrect = 0;
  double accuracy = 0.0;
};

struct AblationReport {
  std::vector<AblationRow> rows;
};

struct FeatureGroup {
  std::string name;
  FeatureMask families;
};

// G1 = SWN, OL, ESW, BSW, CBW, CW, S1, S2; G2 = POS; G3 = UW, E, Q, R, CS.
std::vector<FeatureGroup> default_feature_groups();

// Throws unless the groups are non-empty, pairwise disjoint and together
// cover every feature family.
void validate_groups(std::span<const FeatureGroup> groups);

struct AblationOptions {
  ModelOptions model;
  // Train independent configurations on separate threads.
  bool parallel = false;
};

// One row per cumulative union G1, G1+G2, ...
AblationReport ablate_add_groups(const Experiment& experiment, std::span<const FeatureGroup> groups,
                                 const AblationOptions& options);

// Row labels of the leave-one-out table, in order.
std::vector<std::string> leave_one_out_labels();

// "None" with every family enabled, then one row per family (and "S" for
// both smiley lists) with that family disabled.
AblationReport ablate_leave_one_out(const Experiment& experiment, const AblationOptions& options);

void render_report_text(std::ostream& out, const EvalReport& report);
void render_report_tsv(std::ostream& out, const EvalReport& report);
void render_ablation_text(std::ostream& out, const AblationReport& report, std::string_view heading);
void render_ablation_tsv(std::ostream& out, const AblationReport& report);

}  // namespace codemix
