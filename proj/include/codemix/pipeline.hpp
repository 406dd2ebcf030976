#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "codemix/corpus.hpp"
#include "codemix/features.hpp"
#include "codemix/lexicon.hpp"
#include "codemix/mlp.hpp"
#include "codemix/normalize.hpp"

namespace codemix {

// Everything loaded from a resource manifest.
struct Resources {
  LexiconBundle lexicons;
  AbbreviationMap abbreviations;

  // Manifest roles: the fourteen lexicon roles plus "abbreviations".
  static Resources load(const std::filesystem::path& manifest);
};

NormalizedPost normalize(const Post& post, const Resources& resources);

// Normalizes and extracts features for every post, in corpus order. With
// threads > 1 posts are split across worker threads; results are the same.
std::vector<FeatureVector> featurize(const Corpus& corpus, const Resources& resources,
                                     const FeatureOptions& options = {}, unsigned threads = 1);

struct LabeledFeatures {
  std::vector<std::string> ids;
  std::vector<FeatureVector> features;
  std::vector<Polarity> labels;

  std::size_t size() const { return ids.size(); }
};

// Throws if any post is unlabeled.
LabeledFeatures labeled_features(const Corpus& corpus, const Resources& resources,
                                 const FeatureOptions& options = {}, unsigned threads = 1);

struct ModelOptions {
  TrainConfig train;
  bool scale = true;
  // Unset means the default single hidden layer.
  std::optional<std::vector<std::size_t>> hidden_sizes;
};

struct FitResult {
  TrainedModel model;
  std::vector<double> epoch_loss;
};

// mask -> fit scaling on the training rows -> scale -> train.
FitResult fit_model(const LabeledFeatures& train, const FeatureMask& mask,
                    const ModelOptions& options);

std::vector<Prediction> predict_all(const TrainedModel& model,
                                    const std::vector<FeatureVector>& features);

struct SplitSpec {
  // Zero selects default_train_count.
  std::size_t train_count = 0;
  std::optional<std::uint64_t> seed;
};

struct Experiment {
  LabeledFeatures train;
  LabeledFeatures test;
};

Experiment prepare_experiment(const Corpus& corpus, const Resources& resources,
                              const SplitSpec& split, const FeatureOptions& options = {},
                              unsigned threads = 1);

}  // namespace codemix
