#include "codemix/corpus.hpp"

#include <algorithm>
#include <fstream>
#include <istream>
#include <numeric>
#include <unordered_map>
#include <unordered_set>

#include "codemix/random.hpp"
#include "codemix/text_io.hpp"
#include "codemix/unicode.hpp"

namespace codemix {

namespace {

Token parse_token(std::string_view field, const std::string& source, std::size_t line_no) {
  const auto pos_slash = field.rfind('/');
  if (pos_slash == std::string_view::npos || pos_slash == 0)
    throw ParseError(source, line_no, "token '" + std::string(field) + "' is not surface/LANG/POS");
  const auto lang_slash = field.rfind('/', pos_slash - 1);
  if (lang_slash == std::string_view::npos)
    throw ParseError(source, line_no, "token '" + std::string(field) + "' is not surface/LANG/POS");

  const auto surface = field.substr(0, lang_slash);
  const auto lang_text = field.substr(lang_slash + 1, pos_slash - lang_slash - 1);
  const auto pos = field.substr(pos_slash + 1);
  if (surface.empty())
    throw ParseError(source, line_no, "token '" + std::string(field) + "' has empty surface text");
  if (pos.empty())
    throw ParseError(source, line_no, "token '" + std::string(field) + "' has empty POS tag");
  const auto lang = parse_lang(lang_text);
  if (!lang)
    throw ParseError(source, line_no, "unknown language tag '" + std::string(lang_text) + "'");
  return make_token(std::string(surface), *lang, std::string(pos));
}

std::optional<Polarity> parse_label_field(std::string_view text, const std::string& source,
                                          std::size_t line_no) {
  if (text == "-") return std::nullopt;
  auto p = parse_polarity(text);
  if (!p) throw ParseError(source, line_no, "unknown label '" + std::string(text) + "'");
  return p;
}

std::ifstream open_or_throw(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open " + path.string());
  return in;
}

}  // namespace

Corpus parse_corpus(std::istream& in, std::string_view source_view) {
  const std::string source(source_view);
  Corpus corpus;
  std::unordered_set<std::string> seen;
  for_each_record(in, source, [&](std::string_view line, std::size_t line_no) {
    const auto fields = split(line, '\t');
    if (fields.size() != 3)
      throw ParseError(source, line_no,
                       "expected 3 tab-separated fields, got " + std::to_string(fields.size()));
    Post post;
    post.id = std::string(fields[0]);
    if (post.id.empty()) throw ParseError(source, line_no, "empty post id");
    if (!seen.insert(post.id).second)
      throw ParseError(source, line_no, "duplicate post id '" + post.id + "'");
    post.label = parse_label_field(fields[1], source, line_no);
    for (auto tok : split(fields[2], ' ')) {
      if (tok.empty()) continue;
      post.tokens.push_back(parse_token(tok, source, line_no));
    }
    corpus.push_back(std::move(post));
  });
  return corpus;
}

Corpus load_corpus(const std::filesystem::path& path) {
  auto in = open_or_throw(path);
  return parse_corpus(in, path.string());
}

std::string format_corpus_record(const Post& post) {
  std::string out = post.id;
  out += '\t';
  out += post.label ? polarity_code(*post.label) : std::string_view("-");
  out += '\t';
  for (std::size_t i = 0; i < post.tokens.size(); ++i) {
    if (i) out += ' ';
    const auto& t = post.tokens[i];
    out += t.text;
    out += '/';
    out += lang_name(t.lang);
    out += '/';
    out += t.pos;
  }
  return out;
}

std::vector<AnnotationPair> parse_annotations(std::istream& in, std::string_view source_view) {
  const std::string source(source_view);
  std::vector<AnnotationPair> pairs;
  for_each_record(in, source, [&](std::string_view line, std::size_t line_no) {
    const auto fields = split(line, '\t');
    if (fields.size() != 3)
      throw ParseError(source, line_no,
                       "expected 3 tab-separated fields, got " + std::to_string(fields.size()));
    auto a1 = parse_polarity(fields[1]);
    auto a2 = parse_polarity(fields[2]);
    if (!a1 || !a2) throw ParseError(source, line_no, "annotation labels must be pos, neu or neg");
    pairs.push_back(AnnotationPair{std::string(fields[0]), *a1, *a2});
  });
  return pairs;
}

std::vector<AnnotationPair> load_annotations(const std::filesystem::path& path) {
  auto in = open_or_throw(path);
  return parse_annotations(in, path.string());
}

AgreementMatrix agreement_matrix(std::span<const AnnotationPair> pairs) {
  if (pairs.empty()) throw Error("agreement_matrix: no annotation pairs");
  AgreementMatrix m;
  for (const auto& p : pairs) ++m.grid.at(p.a1, p.a2);
  return m;
}

KappaResult cohen_kappa(const AgreementMatrix& m) {
  const auto total = m.grid.total();
  if (total <= 0) throw Error("cohen_kappa: agreement matrix is empty");
  const double n = static_cast<double>(total);

  KappaResult r;
  r.po = static_cast<double>(m.grid.trace()) / n;
  double chance = 0.0;
  for (std::size_t i = 0; i < kNumPolarities; ++i)
    chance += static_cast<double>(m.grid.row_total(i)) * static_cast<double>(m.grid.col_total(i));
  r.pe = chance / (n * n);

  // pe == 1 only when both annotators used a single identical label
  // throughout, which forces po == 1 as well; compare on the integer counts.
  bool single_label = false;
  for (std::size_t i = 0; i < kNumPolarities; ++i)
    single_label |= m.grid.row_total(i) == total && m.grid.col_total(i) == total;
  if (single_label) {
    r.pe = 1.0;
    r.kappa = 1.0;
    return r;
  }
  if (r.pe >= 1.0) throw Error("cohen_kappa: chance agreement is 1, kappa undefined");
  r.kappa = (r.po - r.pe) / (1.0 - r.pe);
  return r;
}

Corpus unanimous_subset(const Corpus& corpus, std::span<const AnnotationPair> pairs) {
  std::unordered_map<std::string_view, const AnnotationPair*> by_id;
  for (const auto& p : pairs) {
    if (!by_id.emplace(p.post_id, &p).second)
      throw Error("unanimous_subset: duplicate annotation for post '" + p.post_id + "'");
  }
  std::unordered_set<std::string_view> known;
  for (const auto& post : corpus) known.insert(post.id);
  for (const auto& p : pairs) {
    if (!known.contains(p.post_id))
      throw Error("unanimous_subset: annotation for unknown post '" + p.post_id + "'");
  }

  Corpus out;
  for (const auto& post : corpus) {
    auto it = by_id.find(post.id);
    if (it == by_id.end() || it->second->a1 != it->second->a2) continue;
    Post kept = post;
    kept.label = it->second->a1;
    out.push_back(std::move(kept));
  }
  return out;
}

Split split_train_test(const Corpus& corpus, std::size_t train_count,
                       std::optional<std::uint64_t> shuffle_seed) {
  if (train_count == 0 || train_count >= corpus.size())
    throw Error("split_train_test: train_count " + std::to_string(train_count) +
                " must be in [1, " + std::to_string(corpus.size()) + ")");

  std::vector<std::size_t> order(corpus.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  if (shuffle_seed) {
    Rng rng(*shuffle_seed);
    for (std::size_t i = order.size() - 1; i > 0; --i)
      std::swap(order[i], order[rng.below(i + 1)]);
  }

  Split s;
  s.train.reserve(train_count);
  s.test.reserve(corpus.size() - train_count);
  for (std::size_t i = 0; i < order.size(); ++i)
    (i < train_count ? s.train : s.test).push_back(corpus[order[i]]);
  return s;
}

std::size_t default_train_count(std::size_t corpus_size) {
  if (corpus_size < 2) return 0;
  if (corpus_size > 400) return 400;
  const std::size_t n = corpus_size * 7 / 10;
  return std::clamp<std::size_t>(n, 1, corpus_size - 1);
}

}  // namespace codemix
