#include "codemix/cli.hpp"

#include <CLI11.hpp>
#include <fmt/format.h>

#include <cstdlib>
#include <fstream>
#include <memory>
#include <ostream>
#include <sstream>

#include "codemix/corpus.hpp"
#include "codemix/eval.hpp"
#include "codemix/pipeline.hpp"

namespace codemix::cli {

namespace {

// Bad flags, unresolvable paths, empty inputs: exit 2.
class UsageError : public Error {
 public:
  using Error::Error;
};

struct CommonOptions {
  std::string corpus;
  std::string annotations;
  std::string resources;
  std::size_t train_count = 0;
  std::optional<std::uint64_t> shuffle_seed;
  std::uint64_t seed = 0;
  std::size_t epochs = 500;
  double lr = 0.3;
  double momentum = 0.2;
  std::string mask = "all";
  std::string hidden;
  bool no_scale = false;
  std::string curse_match = "prestrip";
  unsigned threads = 1;
  std::string format = "text";
};

void add_corpus_options(CLI::App& cmd, CommonOptions& o, bool with_annotations) {
  cmd.add_option("--corpus", o.corpus, "Token-annotated corpus file")
      ->required()
      ->check(CLI::ExistingFile);
  if (with_annotations)
    cmd.add_option("--annotations", o.annotations,
                   "Annotation pairs; keep only posts both annotators agree on")
        ->check(CLI::ExistingFile);
  cmd.add_option("--resources", o.resources, "Resource manifest")
      ->envname("CODEMIX_SENTI_RESOURCES")
      ->check(CLI::ExistingFile);
  cmd.add_option("--curse-match", o.curse_match, "Curse matching stage")
      ->check(CLI::IsMember({"prestrip", "normalized"}));
  cmd.add_option("--threads", o.threads, "Feature extraction threads")->check(CLI::Range(1, 64));
}

void add_training_options(CLI::App& cmd, CommonOptions& o) {
  cmd.add_option("--train-count", o.train_count,
                 "Training posts (default 400, or 70% of smaller corpora)");
  cmd.add_option("--shuffle-seed", o.shuffle_seed, "Shuffle the corpus with this seed before splitting");
  cmd.add_option("--seed", o.seed, "Weight initialization seed");
  cmd.add_option("--epochs", o.epochs, "Training epochs")->check(CLI::PositiveNumber);
  cmd.add_option("--lr", o.lr, "Learning rate")->check(CLI::PositiveNumber);
  cmd.add_option("--momentum", o.momentum, "Momentum")->check(CLI::Range(0.0, 0.999999));
  cmd.add_option("--mask", o.mask, "Enabled feature families, comma separated (S = S1,S2)");
  cmd.add_option("--hidden", o.hidden, "Hidden layer sizes, comma separated");
  cmd.add_flag("--no-scale", o.no_scale, "Disable min-max feature scaling");
}

void add_format_option(CLI::App& cmd, CommonOptions& o) {
  cmd.add_option("--format", o.format, "Report format")->check(CLI::IsMember({"text", "tsv"}));
}

FeatureMask parse_mask_or_usage(const std::string& text) {
  FeatureMask mask;
  try {
    mask = FeatureMask::parse(text);
  } catch (const Error& e) {
    throw UsageError(e.what());
  }
  if (!mask.any()) throw UsageError("--mask enables no feature family");
  return mask;
}

FeatureOptions feature_options(const CommonOptions& o) {
  FeatureOptions f;
  f.curse_match = o.curse_match == "normalized" ? CurseMatch::Normalized : CurseMatch::PreStrip;
  return f;
}

ModelOptions model_options(const CommonOptions& o) {
  ModelOptions m;
  m.train.learning_rate = o.lr;
  m.train.momentum = o.momentum;
  m.train.epochs = o.epochs;
  m.train.seed = o.seed;
  m.scale = !o.no_scale;
  if (!o.hidden.empty()) {
    std::vector<std::size_t> sizes;
    std::stringstream ss(o.hidden);
    std::string part;
    while (std::getline(ss, part, ',')) {
      std::size_t value = 0;
      try {
        std::size_t used = 0;
        const auto parsed = std::stoul(part, &used);
        if (used != part.size() || parsed == 0) throw std::invalid_argument(part);
        value = parsed;
      } catch (const std::exception&) {
        throw UsageError("--hidden expects positive integers, got '" + part + "'");
      }
      sizes.push_back(value);
    }
    m.hidden_sizes = std::move(sizes);
  }
  try {
    m.train.validate();
  } catch (const Error& e) {
    throw UsageError(e.what());
  }
  return m;
}

Resources load_resources(const CommonOptions& o) {
  if (o.resources.empty())
    throw UsageError("no resource manifest: pass --resources or set CODEMIX_SENTI_RESOURCES");
  return Resources::load(o.resources);
}

Corpus load_labeled_corpus(const CommonOptions& o) {
  auto corpus = load_corpus(o.corpus);
  if (!o.annotations.empty()) {
    const auto pairs = load_annotations(o.annotations);
    corpus = unanimous_subset(corpus, pairs);
  }
  return corpus;
}

Experiment build_experiment(const CommonOptions& o, const Resources& resources) {
  const auto corpus = load_labeled_corpus(o);
  if (corpus.size() < 2) throw UsageError("corpus needs at least two labeled posts to split");
  if (o.train_count != 0 && o.train_count >= corpus.size())
    throw UsageError(fmt::format("--train-count {} must be below the corpus size {}", o.train_count,
                                 corpus.size()));
  return prepare_experiment(corpus, resources, SplitSpec{o.train_count, o.shuffle_seed},
                            feature_options(o), o.threads);
}

std::string layout_string(const NetworkLayout& layout) {
  std::string s = std::to_string(layout.input_dim);
  for (auto h : layout.hidden_sizes) s += "-" + std::to_string(h);
  return s + "-" + std::to_string(layout.output_dim);
}

int cmd_kappa(const std::string& path, std::ostream& out) {
  const auto pairs = load_annotations(path);
  if (pairs.empty()) throw UsageError(path + ": no annotation pairs");
  const auto m = agreement_matrix(pairs);
  const auto k = cohen_kappa(m);

  out << "agreement matrix (rows = annotator 1, columns = annotator 2)\n";
  out << fmt::format("{:<10}", "");
  for (auto p : kPolarities) out << fmt::format("{:>10}", polarity_name(p));
  out << fmt::format("{:>10}\n", "Total");
  for (std::size_t i = 0; i < kNumPolarities; ++i) {
    out << fmt::format("{:<10}", polarity_name(kPolarities[i]));
    for (std::size_t j = 0; j < kNumPolarities; ++j)
      out << fmt::format("{:>10}", m.grid.counts[i][j]);
    out << fmt::format("{:>10}\n", m.grid.row_total(i));
  }
  out << fmt::format("{:<10}", "Total");
  for (std::size_t j = 0; j < kNumPolarities; ++j) out << fmt::format("{:>10}", m.grid.col_total(j));
  out << fmt::format("{:>10}\n\n", m.grid.total());
  out << fmt::format("po: {:.4f}\npe: {:.4f}\nkappa: {:.4f}\n", k.po, k.pe, k.kappa);
  return kExitOk;
}

int cmd_train(const CommonOptions& o, const std::string& model_path, std::ostream& out) {
  const auto mask = parse_mask_or_usage(o.mask);
  const auto options = model_options(o);
  const auto parent = std::filesystem::path(model_path).parent_path();
  if (!parent.empty() && !std::filesystem::is_directory(parent))
    throw UsageError("output directory " + parent.string() + " does not exist");
  const auto resources = load_resources(o);
  const auto experiment = build_experiment(o, resources);

  const auto fit = fit_model(experiment.train, mask, options);
  save_model(fit.model, model_path);

  const auto& cfg = options.train;
  out << fmt::format("train posts: {}\ntest posts: {}\n", experiment.train.size(),
                     experiment.test.size());
  out << fmt::format("features: {} ({} components)\n", mask.to_string(), mask.dimension());
  out << fmt::format("layout: {}\n", layout_string(fit.model.network.layout()));
  out << fmt::format("epochs: {}\nlearning rate: {}\nmomentum: {}\nseed: {}\n", cfg.epochs,
                     cfg.learning_rate, cfg.momentum, cfg.seed);
  out << fmt::format("scaling: {}\n", options.scale ? "min-max [-1, 1]" : "off");
  out << fmt::format("final epoch loss: {:.6f}\n", fit.epoch_loss.back());
  out << fmt::format("model: {}\n", model_path);
  return kExitOk;
}

int cmd_classify(const CommonOptions& o, const std::string& model_path, bool mask_given,
                 std::ostream& out) {
  std::optional<FeatureMask> expected;
  if (mask_given) expected = parse_mask_or_usage(o.mask);
  const auto model = load_model(model_path);
  if (expected && *expected != model.mask)
    throw UsageError(fmt::format(
        "feature dimension mismatch: model uses {} ({} components), --mask gives {} ({})",
        model.mask.to_string(), model.mask.dimension(), expected->to_string(),
        expected->dimension()));
  const auto resources = load_resources(o);
  const auto corpus = load_corpus(o.corpus);
  const auto features = featurize(corpus, resources, feature_options(o), o.threads);
  for (std::size_t i = 0; i < corpus.size(); ++i) {
    const auto p = model.predict(features[i]);
    out << fmt::format("{}\t{}\t{:.4f}\t{:.4f}\t{:.4f}\n", corpus[i].id, polarity_code(p.label),
                       p.scores[0], p.scores[1], p.scores[2]);
  }
  return kExitOk;
}

int cmd_evaluate(const CommonOptions& o, const std::string& model_path, std::ostream& out) {
  const auto mask = parse_mask_or_usage(o.mask);
  const auto options = model_options(o);
  const auto resources = load_resources(o);
  const auto experiment = build_experiment(o, resources);
  const auto report = model_path.empty() ? evaluate(experiment, mask, options)
                                         : evaluate(experiment, load_model(model_path));
  if (o.format == "tsv")
    render_report_tsv(out, report);
  else
    render_report_text(out, report);
  return kExitOk;
}

int cmd_ablate(const CommonOptions& o, const std::string& mode, bool parallel, std::ostream& out) {
  AblationOptions options;
  options.model = model_options(o);
  options.parallel = parallel;
  const auto resources = load_resources(o);
  const auto experiment = build_experiment(o, resources);

  AblationReport report;
  std::string heading;
  if (mode == "add") {
    const auto groups = default_feature_groups();
    report = ablate_add_groups(experiment, groups, options);
    heading = "feature added";
  } else {
    report = ablate_leave_one_out(experiment, options);
    heading = "eliminated";
  }
  if (o.format == "tsv")
    render_ablation_tsv(out, report);
  else
    render_ablation_text(out, report, heading);
  return kExitOk;
}

int cmd_features(const CommonOptions& o, const std::string& out_path, std::ostream& out) {
  const auto resources = load_resources(o);
  const auto corpus = load_corpus(o.corpus);
  const auto features = featurize(corpus, resources, feature_options(o), o.threads);
  std::vector<std::string> ids;
  for (const auto& p : corpus) ids.push_back(p.id);
  if (out_path.empty()) {
    write_feature_tsv(out, ids, features);
    return kExitOk;
  }
  std::ostringstream buffer;
  write_feature_tsv(buffer, ids, features);
  std::ofstream file(out_path, std::ios::binary | std::ios::trunc);
  if (!file) throw Error("cannot write " + out_path);
  file << buffer.str();
  return kExitOk;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Sentiment polarity classification for code-mixed social media posts",
               "codemix-senti"};
  app.require_subcommand(1);
  app.set_help_all_flag("--help-all");

  CommonOptions o;
  std::string model_path;
  std::string out_path;
  std::string mode = "add";
  bool parallel = false;

  auto* kappa = app.add_subcommand("kappa", "Inter-annotator agreement and Cohen's kappa");
  kappa->add_option("--annotations", o.annotations, "Annotation pairs file")
      ->required()
      ->check(CLI::ExistingFile);

  auto* train = app.add_subcommand("train", "Train a model and write it to --out");
  add_corpus_options(*train, o, true);
  add_training_options(*train, o);
  train->add_option("--out", model_path, "Model file to write")->required();

  auto* classify = app.add_subcommand("classify", "Label every post of a corpus");
  add_corpus_options(*classify, o, false);
  classify->add_option("--model", model_path, "Model file")->required()->check(CLI::ExistingFile);
  auto* classify_mask =
      classify->add_option("--mask", o.mask, "Expected feature families; must match the model");

  auto* evaluate_cmd = app.add_subcommand("evaluate", "Train on the split and report test metrics");
  add_corpus_options(*evaluate_cmd, o, true);
  add_training_options(*evaluate_cmd, o);
  add_format_option(*evaluate_cmd, o);
  evaluate_cmd->add_option("--model", model_path, "Evaluate this model instead of training")
      ->check(CLI::ExistingFile);

  auto* ablate = app.add_subcommand("ablate", "Feature ablation tables");
  add_corpus_options(*ablate, o, true);
  add_training_options(*ablate, o);
  add_format_option(*ablate, o);
  ablate->add_option("--mode", mode, "add: cumulative groups; loo: leave one family out")
      ->check(CLI::IsMember({"add", "loo"}));
  ablate->add_flag("--parallel", parallel, "Train configurations concurrently");

  auto* features = app.add_subcommand("features", "Dump the feature matrix as TSV");
  add_corpus_options(*features, o, false);
  features->add_option("--out", out_path, "Write to this file instead of standard output");

  std::vector<const char*> argv{"codemix-senti"};
  for (const auto& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (kappa->parsed()) return cmd_kappa(o.annotations, out);
    if (train->parsed()) return cmd_train(o, model_path, out);
    if (classify->parsed()) return cmd_classify(o, model_path, classify_mask->count() > 0, out);
    if (evaluate_cmd->parsed()) return cmd_evaluate(o, model_path, out);
    if (ablate->parsed()) return cmd_ablate(o, mode, parallel, out);
    if (features->parsed()) return cmd_features(o, out_path, out);
  } catch (const UsageError& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitFailure;
  }
  return kExitUsage;
}

}  // namespace codemix::cli
