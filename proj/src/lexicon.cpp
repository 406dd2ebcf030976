#include "codemix/lexicon.hpp"

#include <charconv>
#include <fstream>
#include <istream>

#include "codemix/text_io.hpp"
#include "codemix/unicode.hpp"

namespace codemix {

namespace {

std::vector<std::string> read_lines(std::istream& in, const std::string& source) {
  std::vector<std::string> out;
  for_each_record(in, source, [&](std::string_view line, std::size_t) {
    const auto entry = trim(line);
    if (!entry.empty()) out.emplace_back(entry);
  });
  return out;
}

std::ifstream open_or_throw(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open " + path.string());
  return in;
}

}  // namespace

Lexicon::Lexicon(std::string name, LexiconRole role, std::span<const std::string> words)
    : name_(std::move(name)), role_(role) {
  for (const auto& w : words) {
    const auto entry = trim(w);
    if (!entry.empty()) entries_.insert(unicode::to_lower(entry));
  }
  if (entries_.empty()) throw Error("empty lexicon '" + name_ + "'");
}

Lexicon Lexicon::parse(std::istream& in, std::string name, LexiconRole role,
                       std::string_view source) {
  const auto lines = read_lines(in, std::string(source));
  return Lexicon(std::move(name), role, lines);
}

Lexicon Lexicon::load(const std::filesystem::path& path, std::string name, LexiconRole role) {
  auto in = open_or_throw(path);
  return parse(in, std::move(name), role, path.string());
}

SmileyLexicon::SmileyLexicon(std::string name, std::span<const std::string> entries)
    : name_(std::move(name)) {
  for (const auto& e : entries) {
    const auto entry = trim(e);
    if (entry.empty()) continue;
    if (!unicode::has_punct_or_symbol(entry))
      throw Error("smiley list '" + name_ + "': entry '" + std::string(entry) +
                  "' has no punctuation or symbol character");
    entries_.insert(std::string(entry));
  }
  if (entries_.empty()) throw Error("empty smiley list '" + name_ + "'");
}

SmileyLexicon SmileyLexicon::parse(std::istream& in, std::string name, std::string_view source) {
  const auto lines = read_lines(in, std::string(source));
  return SmileyLexicon(std::move(name), lines);
}

SmileyLexicon SmileyLexicon::load(const std::filesystem::path& path, std::string name) {
  auto in = open_or_throw(path);
  return parse(in, std::move(name), path.string());
}

std::size_t match_count(std::span<const Token> tokens, const Lexicon& lex) {
  std::size_t n = 0;
  for (const auto& t : tokens) n += lex.contains(t.text) ? 1 : 0;
  return n;
}

std::size_t match_count(std::span<const std::string> words, const Lexicon& lex) {
  std::size_t n = 0;
  for (const auto& w : words) n += lex.contains(w) ? 1 : 0;
  return n;
}

std::size_t match_count(std::span<const std::string> symbols, const SmileyLexicon& lex) {
  std::size_t n = 0;
  for (const auto& s : symbols) n += lex.contains(s) ? 1 : 0;
  return n;
}

std::int64_t polarity_diff(std::span<const Token> tokens, const Lexicon& pos_lex,
                           const Lexicon& neg_lex) {
  return static_cast<std::int64_t>(match_count(tokens, pos_lex)) -
         static_cast<std::int64_t>(match_count(tokens, neg_lex));
}

const ManifestEntry& ResourceManifest::require(std::string_view role) const {
  for (const auto& e : entries)
    if (e.role == role) return e;
  throw Error("resource manifest " + location.string() + " has no '" + std::string(role) +
              "' entry");
}

ResourceManifest load_manifest(const std::filesystem::path& path) {
  auto in = open_or_throw(path);
  const auto source = path.string();
  ResourceManifest manifest;
  manifest.location = path;
  const auto base = path.parent_path();
  for_each_record(in, source, [&](std::string_view line, std::size_t line_no) {
    const auto fields = split(line, '\t');
    if (fields.size() != 3)
      throw ParseError(source, line_no, "expected role TAB path TAB expected_size");
    ManifestEntry e;
    e.role = std::string(trim(fields[0]));
    for (const auto& prior : manifest.entries)
      if (prior.role == e.role) throw ParseError(source, line_no, "duplicate role '" + e.role + "'");
    e.path = base / std::filesystem::path(std::string(trim(fields[1])));
    const auto size_text = trim(fields[2]);
    if (size_text != "-") {
      std::size_t value = 0;
      auto [ptr, ec] = std::from_chars(size_text.data(), size_text.data() + size_text.size(), value);
      if (ec != std::errc{} || ptr != size_text.data() + size_text.size())
        throw ParseError(source, line_no, "bad expected size '" + std::string(size_text) + "'");
      e.expected_size = value;
    }
    manifest.entries.push_back(std::move(e));
  });
  return manifest;
}

namespace {

template <typename L>
void check_size(const L& lex, const ManifestEntry& e) {
  if (e.expected_size && *e.expected_size != lex.size())
    throw Error("resource '" + e.role + "' (" + e.path.string() + ") has " +
                std::to_string(lex.size()) + " entries, manifest expects " +
                std::to_string(*e.expected_size));
}

Lexicon load_role(const ResourceManifest& m, std::string_view role, LexiconRole polarity) {
  const auto& e = m.require(role);
  auto lex = Lexicon::load(e.path, e.role, polarity);
  check_size(lex, e);
  return lex;
}

SmileyLexicon load_smiley_role(const ResourceManifest& m, std::string_view role) {
  const auto& e = m.require(role);
  auto lex = SmileyLexicon::load(e.path, e.role);
  check_size(lex, e);
  return lex;
}

}  // namespace

LexiconBundle load_bundle(const ResourceManifest& m) {
  using enum LexiconRole;
  LexiconBundle b;
  b.swn_pos = load_role(m, "swn_pos", Positive);
  b.swn_neg = load_role(m, "swn_neg", Negative);
  b.ol_pos = load_role(m, "ol_pos", Positive);
  b.ol_neg = load_role(m, "ol_neg", Negative);
  b.esw_pos = load_role(m, "esw_pos", Positive);
  b.esw_neg = load_role(m, "esw_neg", Negative);
  b.bsw_pos = load_role(m, "bsw_pos", Positive);
  b.bsw_neg = load_role(m, "bsw_neg", Negative);
  b.cbw_pos = load_role(m, "cbw_pos", Positive);
  b.cbw_neg = load_role(m, "cbw_neg", Negative);
  b.curse = load_role(m, "curse", Unpolarized);
  b.smiley1_pos = load_smiley_role(m, "smiley1_pos");
  b.smiley1_neg = load_smiley_role(m, "smiley1_neg");
  b.smiley2 = load_smiley_role(m, "smiley2");
  return b;
}

}  // namespace codemix
