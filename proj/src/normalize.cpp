#include "codemix/normalize.hpp"

#include <fstream>
#include <istream>

#include <unicode/uchar.h>

#include "codemix/text_io.hpp"
#include "codemix/unicode.hpp"

namespace codemix {

namespace {

char32_t fold(char32_t c) { return static_cast<char32_t>(u_tolower(static_cast<UChar32>(c))); }

struct Stripped {
  std::string kept;
  std::string removed;
};

Stripped split_punctuation(std::string_view text) {
  std::u32string kept, removed;
  for (char32_t c : unicode::decode(text)) {
    if (unicode::is_punct_or_symbol(c) || unicode::is_space(c))
      removed.push_back(c);
    else
      kept.push_back(c);
  }
  return {unicode::encode(kept), unicode::encode(removed)};
}

bool is_normal_word(std::string_view w) {
  if (w.empty() || unicode::has_punct_or_symbol(w)) return false;
  for (char32_t c : unicode::decode(w))
    if (unicode::is_space(c)) return false;
  if (unicode::to_lower(w) != w) return false;
  return reduce_repetitions(w).removed == 0;
}

std::vector<Token> expand_impl(std::span<const Token> tokens, const AbbreviationMap& map,
                               std::size_t& repetitions_removed) {
  std::vector<Token> out;
  out.reserve(tokens.size());
  for (const auto& tok : tokens) {
    const auto parts = split_punctuation(tok.text);
    const std::string key = unicode::to_lower(parts.kept);
    const auto* words = map.find(key);
    std::size_t removed = 0;
    if (!words) {
      auto reduced = reduce_repetitions(key);
      if (reduced.removed > 0) {
        words = map.find(reduced.reduced);
        removed = reduced.removed;
      }
    }
    if (!words) {
      out.push_back(tok);
      continue;
    }
    repetitions_removed += removed;
    for (const auto& w : *words) out.push_back(Token{w, tok.lang, std::string(kUnknownPos), true});
    if (!parts.removed.empty())
      out.push_back(Token{parts.removed, tok.lang, std::string(kUnknownPos), false});
  }
  return out;
}

}  // namespace

AbbreviationMap::AbbreviationMap(std::span<const std::pair<std::string, std::string>> entries) {
  for (const auto& [abbrev, expansion] : entries) {
    const std::string key = unicode::to_lower(trim(abbrev));
    if (key.empty() || !is_normal_word(key))
      throw Error("abbreviation '" + abbrev + "' must be a single word without punctuation");
    std::vector<std::string> words;
    for (auto w : split(trim(expansion), ' '))
      if (!w.empty()) words.emplace_back(w);
    if (words.empty()) throw Error("abbreviation '" + abbrev + "' has an empty expansion");
    for (const auto& w : words)
      if (!is_normal_word(w))
        throw Error("expansion word '" + w + "' of '" + abbrev +
                    "' must be lowercase, without punctuation or long repeats");
    if (!entries_.emplace(key, std::move(words)).second)
      throw Error("duplicate abbreviation '" + key + "'");
  }
  for (const auto& [key, words] : entries_)
    for (const auto& w : words)
      if (entries_.contains(w))
        throw Error("expansion of '" + key + "' contains the abbreviation '" + w + "'");
}

AbbreviationMap AbbreviationMap::parse(std::istream& in, std::string_view source_view) {
  const std::string source(source_view);
  std::vector<std::pair<std::string, std::string>> entries;
  for_each_record(in, source, [&](std::string_view line, std::size_t line_no) {
    const auto fields = split(line, '\t');
    if (fields.size() != 2) throw ParseError(source, line_no, "expected abbrev TAB expansion");
    entries.emplace_back(std::string(fields[0]), std::string(fields[1]));
  });
  try {
    return AbbreviationMap(entries);
  } catch (const ParseError&) {
    throw;
  } catch (const Error& e) {
    throw Error(source + ": " + e.what());
  }
}

AbbreviationMap AbbreviationMap::load(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open " + path.string());
  return parse(in, path.string());
}

const std::vector<std::string>* AbbreviationMap::find(std::string_view key) const {
  auto it = entries_.find(key);
  return it == entries_.end() ? nullptr : &it->second;
}

std::vector<Token> expand_abbreviations(std::span<const Token> tokens, const AbbreviationMap& map) {
  std::size_t ignored = 0;
  return expand_impl(tokens, map, ignored);
}

SmileyCapture capture_smileys(std::span<const Token> tokens,
                              std::span<const SmileyLexicon* const> lists) {
  SmileyCapture out;
  for (const auto& tok : tokens) {
    bool hit = false;
    for (const auto* list : lists) hit = hit || list->contains(tok.text);
    if (hit)
      out.found.push_back(tok.text);
    else
      out.tokens.push_back(tok);
  }
  return out;
}

PunctuationStrip strip_punctuation(std::span<const Token> tokens) {
  PunctuationStrip out;
  for (const auto& tok : tokens) {
    auto parts = split_punctuation(tok.text);
    for (char c : parts.removed) {
      if (c == '!')
        ++out.exclam_count;
      else if (c == '?')
        ++out.question_count;
    }
    for (char32_t c : unicode::decode(parts.removed))
      if (unicode::is_punct_or_symbol(c)) ++out.other_count;
    if (parts.kept.empty()) continue;
    Token kept = tok;
    kept.text = std::move(parts.kept);
    kept.is_word = unicode::has_letter_or_digit(kept.text);
    out.tokens.push_back(std::move(kept));
  }
  out.other_count -= out.exclam_count + out.question_count;
  return out;
}

RepetitionReduction reduce_repetitions(std::string_view text) {
  const auto cps = unicode::decode(text);
  std::u32string out;
  out.reserve(cps.size());
  RepetitionReduction r;
  std::size_t i = 0;
  while (i < cps.size()) {
    std::size_t j = i + 1;
    const char32_t c = fold(cps[i]);
    while (j < cps.size() && fold(cps[j]) == c) ++j;
    const std::size_t run = j - i;
    const bool exempt = unicode::is_digit(cps[i]);
    const std::size_t keep = (exempt || run <= 2) ? run : 2;
    out.append(cps.begin() + static_cast<std::ptrdiff_t>(i),
               cps.begin() + static_cast<std::ptrdiff_t>(i + keep));
    r.removed += run - keep;
    i = j;
  }
  r.reduced = unicode::encode(out);
  return r;
}

std::size_t uppercase_word_count(std::span<const Token> tokens) {
  std::size_t n = 0;
  for (const auto& tok : tokens) {
    std::size_t letters = 0;
    bool all_upper = true;
    for (char32_t c : unicode::decode(tok.text)) {
      if (unicode::is_punct_or_symbol(c)) continue;
      ++letters;
      all_upper = all_upper && unicode::is_upper_letter(c);
    }
    if (all_upper && letters >= 2) ++n;
  }
  return n;
}

NormalizedPost normalize_post(const Post& post, const AbbreviationMap& abbreviations,
                              std::span<const SmileyLexicon* const> smileys) {
  NormalizedPost np;
  np.raw = post;
  np.uppercase_word_count = uppercase_word_count(post.tokens);

  auto captured = capture_smileys(post.tokens, smileys);
  np.smileys_found = std::move(captured.found);

  std::size_t repetitions = 0;
  auto expanded = expand_impl(captured.tokens, abbreviations, repetitions);
  np.prestrip_texts.reserve(expanded.size());
  for (const auto& tok : expanded) np.prestrip_texts.push_back(unicode::to_lower(tok.text));

  auto stripped = strip_punctuation(expanded);
  np.exclam_count = stripped.exclam_count;
  np.question_count = stripped.question_count;
  np.other_punct_count = stripped.other_count;

  np.post.id = post.id;
  np.post.label = post.label;
  np.post.tokens = std::move(stripped.tokens);
  for (auto& tok : np.post.tokens) {
    auto reduced = reduce_repetitions(tok.text);
    repetitions += reduced.removed;
    tok.text = unicode::to_lower(reduced.reduced);
    if (tok.is_word) ++np.word_count;
  }
  np.repetition_count = repetitions;
  return np;
}

}  // namespace codemix
