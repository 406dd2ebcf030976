#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "codemix/types.hpp"

namespace codemix {

// Corpus file: one record per line,
//   id TAB label TAB surface/LANG/POS surface/LANG/POS ...
// label is pos|neu|neg|- ("-" = unlabeled). Lines starting with '#' and
// blank lines are skipped. The surface may itself contain '/', so the last
// two slashes delimit LANG and POS.
Corpus load_corpus(const std::filesystem::path& path);
Corpus parse_corpus(std::istream& in, std::string_view source = "<corpus>");

// Inverse of parse_corpus for a single post, without trailing newline.
std::string format_corpus_record(const Post& post);

struct AnnotationPair {
  std::string post_id;
  Polarity a1 = Polarity::Neutral;
  Polarity a2 = Polarity::Neutral;
};

// Annotation file: id TAB label1 TAB label2, '#' comments.
std::vector<AnnotationPair> load_annotations(const std::filesystem::path& path);
std::vector<AnnotationPair> parse_annotations(std::istream& in,
                                              std::string_view source = "<annotations>");

// Rows are annotator 1, columns annotator 2.
struct AgreementMatrix {
  LabelGrid grid;
};

AgreementMatrix agreement_matrix(std::span<const AnnotationPair> pairs);

struct KappaResult {
  double po = 0.0;
  double pe = 0.0;
  double kappa = 0.0;
};

// Cohen's kappa. Throws codemix::Error on an empty grid, or when chance
// agreement is 1 while observed agreement is below 1 (kappa undefined).
KappaResult cohen_kappa(const AgreementMatrix& m);

// Posts whose two annotations agree, labeled with the agreed polarity, in
// corpus order. Throws on a pair naming an unknown post id.
Corpus unanimous_subset(const Corpus& corpus, std::span<const AnnotationPair> pairs);

struct Split {
  Corpus train;
  Corpus test;
};

// Sequential split unless a seed is given, in which case a seeded
// Fisher-Yates permutation is applied first. Requires 0 < train_count < size.
Split split_train_test(const Corpus& corpus, std::size_t train_count,
                       std::optional<std::uint64_t> shuffle_seed = std::nullopt);

// 400 when the corpus has more than 400 posts, otherwise 70% (floored),
// kept inside [1, size - 1].
std::size_t default_train_count(std::size_t corpus_size);

}  // namespace codemix
