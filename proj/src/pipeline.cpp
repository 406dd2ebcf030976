#include "codemix/pipeline.hpp"

#include <algorithm>
#include <thread>

namespace codemix {

Resources Resources::load(const std::filesystem::path& manifest_path) {
  const auto manifest = load_manifest(manifest_path);
  Resources r;
  r.lexicons = load_bundle(manifest);
  const auto& abbrev = manifest.require("abbreviations");
  r.abbreviations = AbbreviationMap::load(abbrev.path);
  if (abbrev.expected_size && *abbrev.expected_size != r.abbreviations.size())
    throw Error("resource 'abbreviations' has " + std::to_string(r.abbreviations.size()) +
                " entries, manifest expects " + std::to_string(*abbrev.expected_size));
  return r;
}

NormalizedPost normalize(const Post& post, const Resources& resources) {
  const auto lists = resources.lexicons.smiley_lists();
  return normalize_post(post, resources.abbreviations, lists);
}

std::vector<FeatureVector> featurize(const Corpus& corpus, const Resources& resources,
                                     const FeatureOptions& options, unsigned threads) {
  std::vector<FeatureVector> out(corpus.size());
  auto work = [&](std::size_t begin, std::size_t end) {
    for (std::size_t i = begin; i < end; ++i)
      out[i] = extract_features(normalize(corpus[i], resources), resources.lexicons, options);
  };
  threads = std::clamp<unsigned>(threads, 1, 64);
  if (threads == 1 || corpus.size() < 2 * threads) {
    work(0, corpus.size());
    return out;
  }
  std::vector<std::jthread> pool;
  const std::size_t chunk = (corpus.size() + threads - 1) / threads;
  for (std::size_t begin = 0; begin < corpus.size(); begin += chunk)
    pool.emplace_back(work, begin, std::min(corpus.size(), begin + chunk));
  return out;
}

LabeledFeatures labeled_features(const Corpus& corpus, const Resources& resources,
                                 const FeatureOptions& options, unsigned threads) {
  LabeledFeatures lf;
  for (const auto& post : corpus) {
    if (!post.label) throw Error("post '" + post.id + "' has no label");
    lf.ids.push_back(post.id);
    lf.labels.push_back(*post.label);
  }
  lf.features = featurize(corpus, resources, options, threads);
  return lf;
}

FitResult fit_model(const LabeledFeatures& train, const FeatureMask& mask,
                    const ModelOptions& options) {
  if (train.size() == 0) throw Error("fit_model: no training posts");
  if (!mask.any()) throw Error("fit_model: feature mask disables every family");
  if (std::all_of(train.features.begin(), train.features.end(),
                  [](const FeatureVector& v) { return v.degenerate; }))
    throw Error("fit_model: every training post is degenerate (no word tokens)");

  std::vector<std::vector<double>> masked;
  masked.reserve(train.size());
  for (const auto& v : train.features) masked.push_back(apply_mask(v, mask));

  const auto dim = masked.front().size();
  TrainedModel model;
  model.mask = mask;
  model.scaling = options.scale ? fit_scaling(masked) : identity_scaling(dim);

  std::vector<Example> data;
  data.reserve(masked.size());
  for (std::size_t i = 0; i < masked.size(); ++i)
    data.push_back(Example{scale(masked[i], model.scaling), index_of(train.labels[i])});

  const NetworkLayout layout = options.hidden_sizes
                                   ? NetworkLayout{dim, *options.hidden_sizes, kNumPolarities}
                                   : NetworkLayout::with_default_hidden(dim);
  auto trained = codemix::train(data, layout, options.train);
  model.network = std::move(trained.network);
  return FitResult{std::move(model), std::move(trained.epoch_loss)};
}

std::vector<Prediction> predict_all(const TrainedModel& model,
                                    const std::vector<FeatureVector>& features) {
  std::vector<Prediction> out;
  out.reserve(features.size());
  for (const auto& v : features) out.push_back(model.predict(v));
  return out;
}

Experiment prepare_experiment(const Corpus& corpus, const Resources& resources,
                              const SplitSpec& split, const FeatureOptions& options,
                              unsigned threads) {
  const auto count = split.train_count ? split.train_count : default_train_count(corpus.size());
  auto parts = split_train_test(corpus, count, split.seed);
  return Experiment{labeled_features(parts.train, resources, options, threads),
                    labeled_features(parts.test, resources, options, threads)};
}

}  // namespace codemix
