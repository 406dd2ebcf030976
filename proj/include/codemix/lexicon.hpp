#pragma once

#include <array>
#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_set>
#include <vector>

#include "codemix/types.hpp"

namespace codemix {

enum class LexiconRole : std::uint8_t { Positive, Negative, Unpolarized };

// Word list. Entries are lowercased, trimmed and deduplicated on load.
class Lexicon {
 public:
  Lexicon() = default;
  // Throws codemix::Error if no entries survive parsing.
  Lexicon(std::string name, LexiconRole role, std::span<const std::string> words);

  static Lexicon load(const std::filesystem::path& path, std::string name, LexiconRole role);
  static Lexicon parse(std::istream& in, std::string name, LexiconRole role,
                       std::string_view source = "<lexicon>");

  const std::string& name() const { return name_; }
  LexiconRole role() const { return role_; }
  std::size_t size() const { return entries_.size(); }
  bool contains(std::string_view word) const { return entries_.contains(std::string(word)); }
  const std::unordered_set<std::string>& entries() const { return entries_; }

 private:
  std::string name_;
  LexiconRole role_ = LexiconRole::Unpolarized;
  std::unordered_set<std::string> entries_;
};

// Emoticon list. Case and punctuation are preserved; every entry must
// contain at least one punctuation or symbol character.
class SmileyLexicon {
 public:
  SmileyLexicon() = default;
  SmileyLexicon(std::string name, std::span<const std::string> entries);

  static SmileyLexicon load(const std::filesystem::path& path, std::string name);
  static SmileyLexicon parse(std::istream& in, std::string name,
                             std::string_view source = "<smileys>");

  const std::string& name() const { return name_; }
  std::size_t size() const { return entries_.size(); }
  bool contains(std::string_view s) const { return entries_.contains(std::string(s)); }

 private:
  std::string name_;
  std::unordered_set<std::string> entries_;
};

std::size_t match_count(std::span<const Token> tokens, const Lexicon& lex);
std::size_t match_count(std::span<const std::string> words, const Lexicon& lex);
std::size_t match_count(std::span<const std::string> symbols, const SmileyLexicon& lex);

// match_count(pos) - match_count(neg). A word in both lists counts on both
// sides.
std::int64_t polarity_diff(std::span<const Token> tokens, const Lexicon& pos_lex,
                           const Lexicon& neg_lex);

struct LexiconBundle {
  Lexicon swn_pos, swn_neg;
  Lexicon ol_pos, ol_neg;
  Lexicon esw_pos, esw_neg;
  Lexicon bsw_pos, bsw_neg;
  Lexicon cbw_pos, cbw_neg;
  Lexicon curse;
  SmileyLexicon smiley1_pos, smiley1_neg, smiley2;

  std::array<const SmileyLexicon*, 3> smiley_lists() const {
    return {&smiley1_pos, &smiley1_neg, &smiley2};
  }
};

// Resource manifest: role TAB path TAB expected_size, '#' comments. Paths
// are relative to the manifest's directory; expected_size may be '-'.
struct ManifestEntry {
  std::string role;
  std::filesystem::path path;
  std::optional<std::size_t> expected_size;
};

struct ResourceManifest {
  std::filesystem::path location;
  std::vector<ManifestEntry> entries;

  // Throws if the role is missing.
  const ManifestEntry& require(std::string_view role) const;
};

ResourceManifest load_manifest(const std::filesystem::path& path);

// Loads all fourteen lexicon roles and checks each against its expected
// size when one is given.
LexiconBundle load_bundle(const ResourceManifest& manifest);

}  // namespace codemix
