#include <gtest/gtest.h>

#include <sstream>

#include "codemix/normalize.hpp"
#include "codemix/random.hpp"
#include "codemix/unicode.hpp"
#include "test_support.hpp"

using namespace codemix;
using codemix::testing::post_of;
using codemix::testing::shipped_resources;
using codemix::testing::texts;
using codemix::testing::toks;

namespace {

using Strings = std::vector<std::string>;

AbbreviationMap map_of(std::initializer_list<std::pair<std::string, std::string>> entries) {
  std::vector<std::pair<std::string, std::string>> v(entries);
  return AbbreviationMap(v);
}

SmileyLexicon smileys(std::initializer_list<std::string> entries) {
  std::vector<std::string> v(entries);
  return SmileyLexicon("test", v);
}

// Longest run of one codepoint, compared case-insensitively, ignoring digits.
std::size_t longest_letter_run(std::string_view s) {
  auto cps = unicode::decode(unicode::to_lower(s));
  std::size_t best = 0;
  for (std::size_t i = 0; i < cps.size();) {
    std::size_t j = i;
    while (j < cps.size() && cps[j] == cps[i]) ++j;
    if (!unicode::is_digit(cps[i])) best = std::max(best, j - i);
    i = j;
  }
  return best;
}

}  // namespace

TEST(ExpandAbbreviations, CanonicalExamples) {
  const auto& map = shipped_resources().abbreviations;
  auto out = expand_abbreviations(toks({"btw", "clg"}), map);
  EXPECT_EQ(texts(out), (Strings{"by", "the", "way", "college"}));
  EXPECT_EQ(out[0].pos, kUnknownPos);
  auto hw = expand_abbreviations(toks({"hw"}), map);
  EXPECT_EQ(texts(hw), (Strings{"how"}));
}

TEST(ExpandAbbreviations, IdentityWithEmptyMap) {
  auto in = toks({"hello"});
  EXPECT_EQ(expand_abbreviations(in, AbbreviationMap{}), in);
}

TEST(ExpandAbbreviations, CaseInsensitiveAndInheritsLang) {
  auto map = map_of({{"hw", "how"}});
  auto out = expand_abbreviations(toks({"HW"}, Lang::Bn), map);
  ASSERT_EQ(out.size(), 1u);
  EXPECT_EQ(out[0].text, "how");
  EXPECT_EQ(out[0].lang, Lang::Bn);
}

TEST(ExpandAbbreviations, TrailingPunctuationSurvivesAsSeparateToken) {
  auto map = map_of({{"btw", "by the way"}});
  auto out = expand_abbreviations(toks({"btw!!"}), map);
  EXPECT_EQ(texts(out), (Strings{"by", "the", "way", "!!"}));
  EXPECT_FALSE(out.back().is_word);
}

TEST(ExpandAbbreviations, LookupMissIsNoOp) {
  auto map = map_of({{"btw", "by the way"}});
  auto in = toks({"between", "bt"});
  EXPECT_EQ(expand_abbreviations(in, map), in);
}

TEST(AbbreviationMap, Validation) {
  EXPECT_THROW(map_of({{"u", "you"}, {"U", "you"}}), Error);
  EXPECT_THROW(map_of({{"x", ""}}), Error);
  EXPECT_THROW(map_of({{"x", "Big"}}), Error);
  EXPECT_THROW(map_of({{"x", "don't"}}), Error);
  EXPECT_THROW(map_of({{"u", "you"}, {"y", "u there"}}), Error);
  std::istringstream bad("btw by the way\n");
  EXPECT_THROW(AbbreviationMap::parse(bad), ParseError);
}

TEST(AbbreviationMap, ShippedMapExcludesLol) {
  const auto& map = shipped_resources().abbreviations;
  EXPECT_GE(map.size(), 50u);
  EXPECT_EQ(map.find("lol"), nullptr);
  ASSERT_NE(map.find("btw"), nullptr);
}

TEST(CaptureSmileys, DirectMatch) {
  auto s1 = smileys({":)", ":("});
  std::vector<const SmileyLexicon*> lists{&s1};
  auto r = capture_smileys(toks({":)", "great"}), lists);
  EXPECT_EQ(r.found, (Strings{":)"}));
  EXPECT_EQ(texts(r.tokens), (Strings{"great"}));
}

TEST(CaptureSmileys, NoSmileysIsIdentity) {
  auto s1 = smileys({":)"});
  std::vector<const SmileyLexicon*> lists{&s1};
  auto in = toks({"nothing", "here"});
  auto r = capture_smileys(in, lists);
  EXPECT_TRUE(r.found.empty());
  EXPECT_EQ(r.tokens, in);
}

TEST(CaptureSmileys, DuplicatesKeptAcrossLists) {
  auto s1 = smileys({":)"});
  auto s2 = smileys({":("});
  std::vector<const SmileyLexicon*> lists{&s1, &s2};
  auto r = capture_smileys(toks({":(", ":(", "ok"}), lists);
  EXPECT_EQ(r.found, (Strings{":(", ":("}));
  EXPECT_EQ(texts(r.tokens), (Strings{"ok"}));
}

TEST(CaptureSmileys, CaseSensitive) {
  auto s1 = smileys({":D"});
  std::vector<const SmileyLexicon*> lists{&s1};
  EXPECT_TRUE(capture_smileys(toks({":d"}), lists).found.empty());
}

TEST(StripPunctuation, CountsExclamationAndQuestion) {
  auto r = strip_punctuation(toks({"wow!!!", "why??"}));
  EXPECT_EQ(texts(r.tokens), (Strings{"wow", "why"}));
  EXPECT_EQ(r.exclam_count, 3u);
  EXPECT_EQ(r.question_count, 2u);
  EXPECT_EQ(r.other_count, 0u);
}

TEST(StripPunctuation, DropsEmptiedTokens) {
  auto r = strip_punctuation(toks({"..."}));
  EXPECT_TRUE(r.tokens.empty());
  EXPECT_EQ(r.exclam_count, 0u);
  EXPECT_EQ(r.question_count, 0u);
  EXPECT_EQ(r.other_count, 3u);
}

TEST(StripPunctuation, ApostropheAndUnicodePunctuation) {
  auto r = strip_punctuation(toks({"can't", "\xE2\x80\x9Cquote\xE2\x80\x9D", "caf\xC3\xA9\xE2\x80\xA6"}));
  EXPECT_EQ(texts(r.tokens), (Strings{"cant", "quote", "caf\xC3\xA9"}));
  EXPECT_EQ(r.other_count, 4u);
}

TEST(StripPunctuation, OutputHasNoPunctuation) {
  auto r = strip_punctuation(toks({"a.b", "$100", "<3", "@ss", "x_y"}));
  for (const auto& t : r.tokens) EXPECT_FALSE(unicode::has_punct_or_symbol(t.text)) << t.text;
}

TEST(ReduceRepetitions, CanonicalExamples) {
  auto lool = reduce_repetitions("loooooool");
  EXPECT_EQ(lool.reduced, "lool");
  EXPECT_EQ(lool.removed, 5u);
  auto ahh = reduce_repetitions("ahhhh");
  EXPECT_EQ(ahh.reduced, "ahh");
  EXPECT_EQ(ahh.removed, 2u);
  auto abc = reduce_repetitions("abc");
  EXPECT_EQ(abc.reduced, "abc");
  EXPECT_EQ(abc.removed, 0u);
}

TEST(ReduceRepetitions, DigitsExemptAndCodepointCounts) {
  EXPECT_EQ(reduce_repetitions("2000").reduced, "2000");
  EXPECT_EQ(reduce_repetitions("gr8888").removed, 0u);
  auto bn = reduce_repetitions("\xE0\xA6\x95\xE0\xA6\x95\xE0\xA6\x95");  // three U+0995
  EXPECT_EQ(bn.removed, 1u);
  EXPECT_EQ(unicode::length(bn.reduced), 2u);
  EXPECT_EQ(reduce_repetitions("").removed, 0u);
}

TEST(ReduceRepetitions, PropertiesOnRandomStrings) {
  Rng rng(11);
  const std::u32string alphabet = U"aAbo1!éক";
  for (int trial = 0; trial < 2000; ++trial) {
    std::u32string s;
    const auto len = rng.below(20);
    for (std::size_t i = 0; i < len; ++i) {
      const char32_t c = alphabet[rng.below(alphabet.size())];
      const auto reps = 1 + rng.below(5);
      s.append(reps, c);
    }
    const auto text = unicode::encode(s);
    const auto r = reduce_repetitions(text);
    EXPECT_LE(longest_letter_run(r.reduced), 2u) << text;
    EXPECT_EQ(unicode::length(r.reduced) + r.removed, unicode::length(text)) << text;
    EXPECT_EQ(reduce_repetitions(r.reduced).removed, 0u) << text;
  }
}

TEST(UppercaseWordCount, Examples) {
  EXPECT_EQ(uppercase_word_count(toks({"THIS", "IS", "bad"})), 2u);
  EXPECT_EQ(uppercase_word_count(toks({"I", "a"})), 0u);
  EXPECT_EQ(uppercase_word_count(toks({"GR8T"})), 0u);
  EXPECT_EQ(uppercase_word_count(toks({"WOW!!!", "!!", "OK."})), 2u);
  EXPECT_EQ(uppercase_word_count(toks({"Wow"})), 0u);
}

TEST(NormalizePost, ComposedExample) {
  auto s1 = smileys({":)"});
  std::vector<const SmileyLexicon*> lists{&s1};
  auto np = normalize_post(post_of(toks({"WOW!!!", ":)", "loooool"})), AbbreviationMap{}, lists);
  EXPECT_EQ(texts(np.post.tokens), (Strings{"wow", "lool"}));
  EXPECT_EQ(np.exclam_count, 3u);
  EXPECT_EQ(np.question_count, 0u);
  // "loooool" has a run of five o's: three are removed.
  EXPECT_EQ(np.repetition_count, 3u);
  EXPECT_EQ(np.smileys_found, (Strings{":)"}));
  EXPECT_EQ(np.uppercase_word_count, 1u);
  EXPECT_EQ(np.word_count, 2u);
  EXPECT_EQ(np.raw.tokens.size(), 3u);
}

TEST(NormalizePost, SmileySurvivesPunctuationStripping) {
  const auto& res = shipped_resources();
  auto np = normalize(post_of(toks({"great", ":)"})), res);
  EXPECT_EQ(np.smileys_found, (Strings{":)"}));
  EXPECT_EQ(np.other_punct_count, 0u);
  // Without capture the same token would be destroyed by stripping.
  EXPECT_TRUE(strip_punctuation(toks({":)"})).tokens.empty());
}

TEST(NormalizePost, DegeneratePost) {
  auto np = normalize_post(post_of(toks({"!!!"})), AbbreviationMap{}, {});
  EXPECT_TRUE(np.degenerate());
  EXPECT_EQ(np.word_count, 0u);
  EXPECT_EQ(np.exclam_count, 3u);
}

TEST(NormalizePost, CleanPostIsFixpoint) {
  auto in = toks({"good", "day"});
  auto np = normalize_post(post_of(in), AbbreviationMap{}, {});
  EXPECT_EQ(np.post.tokens, in);
  EXPECT_EQ(np.exclam_count + np.question_count + np.other_punct_count + np.repetition_count +
                np.uppercase_word_count + np.smileys_found.size(),
            0u);
}

TEST(NormalizePost, ElongatedAbbreviationCountsRepetitions) {
  auto map = map_of({{"gg", "good game"}, {"plz", "please"}});
  auto np = normalize_post(post_of(toks({"GGGG!"})), map, {});
  EXPECT_EQ(texts(np.post.tokens), (Strings{"good", "game"}));
  EXPECT_EQ(np.repetition_count, 2u);
  EXPECT_EQ(np.exclam_count, 1u);
  EXPECT_EQ(np.uppercase_word_count, 1u);
  // Only runs that reduce onto a key match; "plzzz" reduces to "plzz".
  auto miss = normalize_post(post_of(toks({"plzzz"})), map, {});
  EXPECT_EQ(texts(miss.post.tokens), (Strings{"plzz"}));
}

TEST(NormalizePost, IdempotentOnGeneratedPosts) {
  const auto& res = shipped_resources();
  const std::vector<std::string> vocabulary{
      "good", "BAD", "loooool", "btw", "Btw!!", "u", "plzzz", "gr8", "clg?", "WOW!!!", "ahhhh",
      "can't", "2000", "...", "?!", ":)", ":(", "<3", ":-)", "@ss", "shit!", "darun", "jata",
      "hebby", "AMAZING", "x_x", "\xC3\xA9t\xC3\xA9", "na\xC3\xAFve", "\xE2\x80\x9Chi\xE2\x80\x9D",
      "aaaBBBccc", "I", "OK", "hw", "thx", "lol", "sooo", "KHUB", "bhaaalo", "...ok...", "#tag"};
  const std::vector<Lang> langs{Lang::En, Lang::Bn, Lang::Hi, Lang::Univ, Lang::Other};
  const std::vector<std::string> tags{"NN", "JJ", "RB", "VB", "SYM"};
  Rng rng(2024);
  for (int n = 0; n < 1500; ++n) {
    Post p;
    p.id = "g" + std::to_string(n);
    const auto len = 1 + rng.below(10);
    for (std::size_t i = 0; i < len; ++i) {
      std::string text = vocabulary[rng.below(vocabulary.size())];
      if (rng.below(4) == 0) text += vocabulary[rng.below(vocabulary.size())];
      p.tokens.push_back(make_token(text, langs[rng.below(langs.size())], tags[rng.below(tags.size())]));
    }
    const auto once = normalize(p, res);
    const auto twice = normalize(once.post, res);
    ASSERT_EQ(twice.post.tokens, once.post.tokens) << p.id;
    EXPECT_EQ(twice.word_count, once.word_count);
    EXPECT_EQ(twice.exclam_count, 0u);
    EXPECT_EQ(twice.question_count, 0u);
    EXPECT_EQ(twice.other_punct_count, 0u);
    EXPECT_EQ(twice.repetition_count, 0u);
    EXPECT_EQ(twice.uppercase_word_count, 0u);
    EXPECT_TRUE(twice.smileys_found.empty());
    for (const auto& t : once.post.tokens) {
      EXPECT_FALSE(unicode::has_punct_or_symbol(t.text));
      EXPECT_LE(longest_letter_run(t.text), 2u);
      EXPECT_EQ(unicode::to_lower(t.text), t.text);
    }
  }
}
