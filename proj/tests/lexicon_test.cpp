#include <gtest/gtest.h>

#include <sstream>

#include "codemix/lexicon.hpp"
#include "test_support.hpp"

using namespace codemix;
using codemix::testing::manifest_path;
using codemix::testing::shipped_resources;
using codemix::testing::TempDir;
using codemix::testing::toks;

namespace {

Lexicon lex(std::initializer_list<std::string> words, LexiconRole role = LexiconRole::Positive) {
  std::vector<std::string> v(words);
  return Lexicon("test", role, v);
}

}  // namespace

TEST(Lexicon, DedupAndCasefold) {
  std::istringstream in("good\nGreat\ngood\n  \n# note\ngreat  \n");
  auto l = Lexicon::parse(in, "x", LexiconRole::Positive);
  EXPECT_EQ(l.size(), 2u);
  EXPECT_TRUE(l.contains("good"));
  EXPECT_TRUE(l.contains("great"));
  EXPECT_FALSE(l.contains("Great"));
}

TEST(Lexicon, OnlyCommentsIsEmptyLexicon) {
  std::istringstream in("# a\n# b\n");
  try {
    Lexicon::parse(in, "x", LexiconRole::Negative);
    FAIL();
  } catch (const Error& e) {
    EXPECT_NE(std::string(e.what()).find("empty lexicon"), std::string::npos);
  }
}

TEST(Lexicon, MissingFile) {
  EXPECT_THROW(Lexicon::load("/nonexistent/list.txt", "x", LexiconRole::Positive), Error);
}

TEST(Lexicon, ShippedSizesMatchManifest) {
  auto manifest = load_manifest(manifest_path());
  const auto& bundle = shipped_resources().lexicons;
  EXPECT_EQ(bundle.esw_pos.size(), manifest.require("esw_pos").expected_size.value());
  EXPECT_EQ(bundle.curse.size(), manifest.require("curse").expected_size.value());
  EXPECT_EQ(bundle.smiley2.size(), manifest.require("smiley2").expected_size.value());
  EXPECT_THROW(manifest.require("nope"), Error);
}

TEST(Lexicon, ManifestSizeMismatchIsReported) {
  TempDir dir;
  dir.write("pos.txt", "good\n");
  std::string text;
  for (const char* role : {"swn_pos", "swn_neg", "ol_pos", "ol_neg", "esw_pos", "esw_neg",
                           "bsw_pos", "bsw_neg", "cbw_pos", "cbw_neg", "curse"})
    text += std::string(role) + "\tpos.txt\t1\n";
  dir.write("smiley.txt", ":)\n");
  for (const char* role : {"smiley1_pos", "smiley1_neg", "smiley2"})
    text += std::string(role) + "\tsmiley.txt\t-\n";
  auto ok = dir.write("ok.tsv", text);
  EXPECT_NO_THROW(load_bundle(load_manifest(ok)));
  std::string wrong = text;
  wrong.replace(wrong.find("\t1\n"), 3, "\t2\n");
  auto bad = dir.write("bad.tsv", wrong);
  EXPECT_THROW(load_bundle(load_manifest(bad)), Error);
}

TEST(SmileyLexicon, CasePreservedAndRejectsWords) {
  std::istringstream in(":D\n:d\n:D\n");
  auto s = SmileyLexicon::parse(in, "s");
  EXPECT_EQ(s.size(), 2u);
  EXPECT_TRUE(s.contains(":D"));
  EXPECT_TRUE(s.contains(":d"));
  std::vector<std::string> words{"XD"};
  EXPECT_THROW(SmileyLexicon("s", words), Error);
}

TEST(MatchCount, Multiplicity) {
  EXPECT_EQ(match_count(toks({"good", "good", "bad"}), lex({"good"})), 2u);
  EXPECT_EQ(match_count(toks({"x", "y"}), lex({"good"})), 0u);
}

TEST(MatchCount, ColloquialBengaliWords) {
  const auto& b = shipped_resources().lexicons;
  auto tokens = toks({"jata", "hebby"}, Lang::Bn);
  EXPECT_EQ(match_count(tokens, b.cbw_pos), 1u);
  EXPECT_EQ(match_count(tokens, b.cbw_neg), 1u);
  EXPECT_EQ(polarity_diff(tokens, b.cbw_pos, b.cbw_neg), 0);
}

TEST(MatchCount, AdditiveOverConcatenation) {
  auto l = lex({"a", "b"});
  auto x = toks({"a", "c", "b"});
  auto y = toks({"b", "b", "z"});
  auto xy = x;
  xy.insert(xy.end(), y.begin(), y.end());
  EXPECT_EQ(match_count(xy, l), match_count(x, l) + match_count(y, l));
}

TEST(PolarityDiff, Arithmetic) {
  auto pos = lex({"good", "nice"});
  auto neg = lex({"bad"}, LexiconRole::Negative);
  EXPECT_EQ(polarity_diff(toks({"good", "nice", "bad"}), pos, neg), 1);
  EXPECT_EQ(polarity_diff(toks({"meh"}), pos, neg), 0);
  EXPECT_EQ(polarity_diff(toks({"bad", "bad", "bad"}), pos, neg), -3);
}

TEST(PolarityDiff, AntisymmetricAndBothSidesCount) {
  auto pos = lex({"good", "hard"});
  auto neg = lex({"bad", "hard"}, LexiconRole::Negative);
  auto t = toks({"good", "hard", "bad", "bad"});
  EXPECT_EQ(polarity_diff(t, pos, neg), -polarity_diff(t, neg, pos));
  EXPECT_EQ(polarity_diff(toks({"hard"}), pos, neg), 0);
}
