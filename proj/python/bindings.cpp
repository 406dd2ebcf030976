#include <pybind11/pybind11.h>
#include <pybind11/stl.h>
#include <pybind11/stl/filesystem.h>

#include <sstream>

#include "codemix/cli.hpp"
#include "codemix/corpus.hpp"
#include "codemix/eval.hpp"
#include "codemix/mlp.hpp"
#include "codemix/normalize.hpp"
#include "codemix/pipeline.hpp"

namespace py = pybind11;
using namespace codemix;

namespace {

std::string code(Polarity p) { return std::string(polarity_code(p)); }

Polarity polarity_from(const std::string& s) {
  if (auto p = parse_polarity(s)) return *p;
  throw py::value_error("unknown label '" + s + "' (expected pos, neu or neg)");
}

LabelGrid grid_from(const std::vector<std::vector<std::int64_t>>& rows) {
  if (rows.size() != 3) throw py::value_error("expected a 3x3 grid");
  LabelGrid g;
  for (std::size_t i = 0; i < 3; ++i) {
    if (rows[i].size() != 3) throw py::value_error("expected a 3x3 grid");
    for (std::size_t j = 0; j < 3; ++j) g.counts[i][j] = rows[i][j];
  }
  return g;
}

std::vector<std::vector<std::int64_t>> grid_to(const LabelGrid& g) {
  std::vector<std::vector<std::int64_t>> out(3);
  for (std::size_t i = 0; i < 3; ++i) out[i].assign(g.counts[i].begin(), g.counts[i].end());
  return out;
}

py::dict report_dict(const EvalReport& r) {
  py::dict per_class;
  for (auto p : kPolarities) {
    const auto& m = r.per_class[index_of(p)];
    py::dict d;
    d["precision"] = m.precision;
    d["recall"] = m.recall;
    d["f1"] = m.f1;
    per_class[py::str(code(p))] = d;
  }
  py::dict out;
  out["confusion"] = grid_to(r.confusion.grid);
  out["accuracy"] = r.accuracy;
  out["correct"] = r.correct;
  out["incorrect"] = r.incorrect;
  out["per_class"] = per_class;
  out["baseline_label"] = code(r.baseline.label);
  out["baseline_accuracy"] = r.baseline.accuracy;
  return out;
}

py::list ablation_rows(const AblationReport& r) {
  py::list rows;
  for (const auto& row : r.rows) rows.append(py::make_tuple(row.config, row.correct, row.incorrect, row.accuracy));
  return rows;
}

Post post_from(const std::string& id, const std::vector<std::tuple<std::string, std::string, std::string>>& tokens) {
  Post p;
  p.id = id;
  for (const auto& [text, lang, pos] : tokens) {
    auto l = parse_lang(lang);
    if (!l) throw py::value_error("unknown language tag '" + lang + "'");
    p.tokens.push_back(make_token(text, *l, pos));
  }
  return p;
}

Experiment experiment_for(const std::filesystem::path& corpus, const Resources& res,
                          std::size_t train_count, std::optional<std::uint64_t> shuffle_seed) {
  return prepare_experiment(load_corpus(corpus), res, SplitSpec{train_count, shuffle_seed});
}

ModelOptions model_options(std::size_t epochs, double lr, double momentum, std::uint64_t seed, bool scale) {
  ModelOptions o;
  o.train.epochs = epochs;
  o.train.learning_rate = lr;
  o.train.momentum = momentum;
  o.train.seed = seed;
  o.train.validate();
  o.scale = scale;
  return o;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Sentiment polarity classification for code-mixed social media posts";

  py::register_exception<Error>(m, "Error", PyExc_RuntimeError);

  m.attr("FEATURE_NAMES") = std::vector<std::string>(kFeatureNames.begin(), kFeatureNames.end());

  m.def("cohen_kappa", [](const std::vector<std::vector<std::int64_t>>& grid) {
    const auto k = cohen_kappa(AgreementMatrix{grid_from(grid)});
    return py::make_tuple(k.po, k.pe, k.kappa);
  }, py::arg("grid"), "Observed agreement, chance agreement and kappa for a 3x3 grid.");

  m.def("kappa_from_file", [](const std::filesystem::path& path) {
    const auto pairs = load_annotations(path);
    const auto am = agreement_matrix(pairs);
    const auto k = cohen_kappa(am);
    py::dict d;
    d["grid"] = grid_to(am.grid);
    d["po"] = k.po;
    d["pe"] = k.pe;
    d["kappa"] = k.kappa;
    return d;
  }, py::arg("annotations"));

  m.def("metrics", [](const std::vector<std::vector<std::int64_t>>& grid) {
    return report_dict(metrics(ConfusionMatrix{grid_from(grid)}));
  }, py::arg("confusion"));

  m.def("reduce_repetitions", [](const std::string& text) {
    const auto r = reduce_repetitions(text);
    return py::make_tuple(r.reduced, r.removed);
  }, py::arg("text"));

  py::class_<Resources>(m, "Resources")
      .def_static("load", &Resources::load, py::arg("manifest"))
      .def("expand", [](const Resources& r, const std::vector<std::string>& words) {
        std::vector<Token> tokens;
        for (const auto& w : words) tokens.push_back(make_token(w, Lang::En, "NN"));
        std::vector<std::string> out;
        for (const auto& t : expand_abbreviations(tokens, r.abbreviations)) out.push_back(t.text);
        return out;
      }, py::arg("words"));

  m.def("normalize", [](const Resources& res, const std::vector<std::tuple<std::string, std::string, std::string>>& tokens) {
    const auto np = normalize(post_from("post", tokens), res);
    std::vector<std::string> words;
    for (const auto& t : np.post.tokens) words.push_back(t.text);
    py::dict d;
    d["tokens"] = words;
    d["word_count"] = np.word_count;
    d["exclam_count"] = np.exclam_count;
    d["question_count"] = np.question_count;
    d["repetition_count"] = np.repetition_count;
    d["uppercase_word_count"] = np.uppercase_word_count;
    d["smileys"] = np.smileys_found;
    return d;
  }, py::arg("resources"), py::arg("tokens"),
        "Normalize one post given as (text, lang, pos) tuples.");

  m.def("extract_features", [](const Resources& res, const std::vector<std::tuple<std::string, std::string, std::string>>& tokens) {
    const auto fv = extract_features(normalize(post_from("post", tokens), res), res.lexicons);
    return std::vector<double>(fv.values.begin(), fv.values.end());
  }, py::arg("resources"), py::arg("tokens"));

  m.def("featurize", [](const std::filesystem::path& corpus, const Resources& res) {
    const auto c = load_corpus(corpus);
    const auto fv = featurize(c, res);
    py::list rows;
    for (std::size_t i = 0; i < c.size(); ++i)
      rows.append(py::make_tuple(c[i].id, std::vector<double>(fv[i].values.begin(), fv[i].values.end())));
    return rows;
  }, py::arg("corpus"), py::arg("resources"));

  py::class_<TrainedModel>(m, "Model")
      .def_static("load", &load_model, py::arg("path"))
      .def("save", [](const TrainedModel& model, const std::filesystem::path& p) { save_model(model, p); }, py::arg("path"))
      .def_property_readonly("mask", [](const TrainedModel& model) { return model.mask.to_string(); })
      .def_property_readonly("layout", [](const TrainedModel& model) {
        const auto& l = model.network.layout();
        std::vector<std::size_t> dims{l.input_dim};
        dims.insert(dims.end(), l.hidden_sizes.begin(), l.hidden_sizes.end());
        dims.push_back(l.output_dim);
        return dims;
      })
      .def("classify", [](const TrainedModel& model, const std::filesystem::path& corpus, const Resources& res) {
        const auto c = load_corpus(corpus);
        const auto preds = predict_all(model, featurize(c, res));
        py::list rows;
        for (std::size_t i = 0; i < c.size(); ++i)
          rows.append(py::make_tuple(c[i].id, code(preds[i].label),
                                     std::vector<double>(preds[i].scores.begin(), preds[i].scores.end())));
        return rows;
      }, py::arg("corpus"), py::arg("resources"));

  m.def("train", [](const std::filesystem::path& corpus, const Resources& res, const std::string& mask,
                    std::size_t train_count, std::optional<std::uint64_t> shuffle_seed, std::size_t epochs,
                    double lr, double momentum, std::uint64_t seed, bool scale) {
    const auto ex = experiment_for(corpus, res, train_count, shuffle_seed);
    return fit_model(ex.train, FeatureMask::parse(mask), model_options(epochs, lr, momentum, seed, scale)).model;
  }, py::arg("corpus"), py::arg("resources"), py::arg("mask") = "all", py::arg("train_count") = 0,
        py::arg("shuffle_seed") = py::none(), py::arg("epochs") = 500, py::arg("lr") = 0.3,
        py::arg("momentum") = 0.2, py::arg("seed") = 0, py::arg("scale") = true);

  m.def("evaluate", [](const std::filesystem::path& corpus, const Resources& res, const std::string& mask,
                       std::size_t train_count, std::optional<std::uint64_t> shuffle_seed, std::size_t epochs,
                       std::uint64_t seed) {
    const auto ex = experiment_for(corpus, res, train_count, shuffle_seed);
    return report_dict(evaluate(ex, FeatureMask::parse(mask), model_options(epochs, 0.3, 0.2, seed, true)));
  }, py::arg("corpus"), py::arg("resources"), py::arg("mask") = "all", py::arg("train_count") = 0,
        py::arg("shuffle_seed") = py::none(), py::arg("epochs") = 500, py::arg("seed") = 0);

  m.def("ablate", [](const std::filesystem::path& corpus, const Resources& res, const std::string& mode,
                     std::size_t epochs, bool parallel) {
    const auto ex = experiment_for(corpus, res, 0, std::nullopt);
    AblationOptions o;
    o.model = model_options(epochs, 0.3, 0.2, 0, true);
    o.parallel = parallel;
    if (mode == "add") {
      const auto groups = default_feature_groups();
      return ablation_rows(ablate_add_groups(ex, groups, o));
    }
    if (mode == "loo") return ablation_rows(ablate_leave_one_out(ex, o));
    throw py::value_error("mode must be 'add' or 'loo'");
  }, py::arg("corpus"), py::arg("resources"), py::arg("mode") = "add", py::arg("epochs") = 500,
        py::arg("parallel") = false);

  m.def("run_cli", [](const std::vector<std::string>& args) {
    std::ostringstream out, err;
    const int rc = cli::run(args, out, err);
    return py::make_tuple(rc, out.str(), err.str());
  }, py::arg("args"), "Run the command line in-process; returns (exit code, stdout, stderr).");
}
