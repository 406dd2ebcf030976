#pragma once

#include <cstddef>
#include <filesystem>
#include <iosfwd>
#include <map>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "codemix/lexicon.hpp"
#include "codemix/types.hpp"

namespace codemix {

// Abbreviation -> expansion words. Keys are matched against a token's
// canonical form (lowercased, punctuation removed). Every expansion word
// must already be in normal form and must not itself be a key, so that
// normalizing twice is the same as normalizing once.
class AbbreviationMap {
 public:
  AbbreviationMap() = default;
  explicit AbbreviationMap(std::span<const std::pair<std::string, std::string>> entries);

  // Format: abbrev TAB expansion per line, '#' comments.
  static AbbreviationMap load(const std::filesystem::path& path);
  static AbbreviationMap parse(std::istream& in, std::string_view source = "<abbreviations>");

  const std::vector<std::string>* find(std::string_view key) const;
  std::size_t size() const { return entries_.size(); }
  bool empty() const { return entries_.empty(); }

 private:
  std::map<std::string, std::vector<std::string>, std::less<>> entries_;
};

// Replaces tokens whose canonical form is an abbreviation with the
// expansion words. Expansion tokens keep the original language tag and get
// the unknown POS tag; any punctuation the original token carried follows
// as a separate non-word token so it is still counted when stripped.
std::vector<Token> expand_abbreviations(std::span<const Token> tokens, const AbbreviationMap& map);

struct SmileyCapture {
  std::vector<std::string> found;
  std::vector<Token> tokens;
};

// Extracts tokens that exactly match (case-sensitive) an entry of any of the
// given lists. Duplicates are kept.
SmileyCapture capture_smileys(std::span<const Token> tokens,
                              std::span<const SmileyLexicon* const> lists);

struct PunctuationStrip {
  std::vector<Token> tokens;
  std::size_t exclam_count = 0;
  std::size_t question_count = 0;
  std::size_t other_count = 0;
};

// Removes every punctuation, symbol and whitespace character; drops tokens
// that become empty.
PunctuationStrip strip_punctuation(std::span<const Token> tokens);

struct RepetitionReduction {
  std::string reduced;
  std::size_t removed = 0;
};

// Shortens every run of more than two identical characters to two. Digit
// runs are left alone. Counts are in codepoints.
RepetitionReduction reduce_repetitions(std::string_view text);

// Tokens of two or more characters, ignoring embedded punctuation, that are
// entirely uppercase letters.
std::size_t uppercase_word_count(std::span<const Token> tokens);

struct NormalizedPost {
  Post post;
  std::size_t word_count = 0;
  std::size_t exclam_count = 0;
  std::size_t question_count = 0;
  std::size_t other_punct_count = 0;
  std::size_t repetition_count = 0;
  std::size_t uppercase_word_count = 0;
  std::vector<std::string> smileys_found;
  // Lowercased token texts after smiley capture and abbreviation
  // expansion, before punctuation stripping. Used for curse matching.
  std::vector<std::string> prestrip_texts;
  Post raw;

  bool degenerate() const { return word_count == 0; }
};

// Fixed order: uppercase count on raw tokens, smiley capture, abbreviation
// expansion, punctuation stripping, repetition reduction, lowercasing.
NormalizedPost normalize_post(const Post& post, const AbbreviationMap& abbreviations,
                              std::span<const SmileyLexicon* const> smileys);

}  // namespace codemix
