#include "codemix/features.hpp"

#include <algorithm>
#include <fmt/format.h>
#include <ostream>

#include "codemix/text_io.hpp"
#include "codemix/unicode.hpp"

namespace codemix {

const std::array<std::string_view, kFeatureDim> kFeatureNames{
    "swn_diff",        "ol_diff",          "esw_diff",       "bsw_diff",
    "cbw_diff",        "curse_density",    "jj_density",     "rb_density",
    "jjrb_bigram_density", "uppercase_count", "exclam_density", "question_density",
    "repetition_count", "code_switch_density", "s1_diff",      "s2_count",
};

const std::array<FeatureFamily, kNumFamilies> kAllFamilies{
    FeatureFamily::SWN, FeatureFamily::OL, FeatureFamily::ESW, FeatureFamily::BSW,
    FeatureFamily::CBW, FeatureFamily::CW, FeatureFamily::POS, FeatureFamily::UW,
    FeatureFamily::E,   FeatureFamily::Q,  FeatureFamily::R,   FeatureFamily::CS,
    FeatureFamily::S1,  FeatureFamily::S2,
};

namespace {

constexpr std::array<std::string_view, kNumFamilies> kFamilyNames{
    "SWN", "OL", "ESW", "BSW", "CBW", "CW", "POS", "UW", "E", "Q", "R", "CS", "S1", "S2"};

constexpr std::size_t kSingle[kFeatureDim] = {0, 1, 2, 3, 4, 5, 6, 7, 8, 9, 10, 11, 12, 13, 14, 15};
constexpr std::size_t kPosIndices[] = {kJjDensity, kRbDensity, kJjRbBigramDensity};

// Indices that are divided by the word count and zeroed for degenerate posts.
constexpr std::size_t kDensityIndices[] = {kCurseDensity,    kJjDensity,        kRbDensity,
                                           kJjRbBigramDensity, kExclamDensity, kQuestionDensity,
                                           kCodeSwitchDensity};

bool is_language_choice(Lang l) { return l != Lang::Univ && l != Lang::Other; }

std::string canonical(std::string_view lowered) {
  std::u32string kept;
  for (char32_t c : unicode::decode(lowered))
    if (!unicode::is_punct_or_symbol(c) && !unicode::is_space(c)) kept.push_back(c);
  return unicode::to_lower(reduce_repetitions(unicode::encode(kept)).reduced);
}

}  // namespace

std::string_view family_name(FeatureFamily f) { return kFamilyNames[static_cast<std::size_t>(f)]; }

std::optional<FeatureFamily> parse_family(std::string_view name) {
  for (std::size_t i = 0; i < kNumFamilies; ++i)
    if (kFamilyNames[i] == name) return kAllFamilies[i];
  return std::nullopt;
}

std::span<const std::size_t> family_indices(FeatureFamily f) {
  switch (f) {
    case FeatureFamily::SWN: return {kSingle + kSwnDiff, 1};
    case FeatureFamily::OL: return {kSingle + kOlDiff, 1};
    case FeatureFamily::ESW: return {kSingle + kEswDiff, 1};
    case FeatureFamily::BSW: return {kSingle + kBswDiff, 1};
    case FeatureFamily::CBW: return {kSingle + kCbwDiff, 1};
    case FeatureFamily::CW: return {kSingle + kCurseDensity, 1};
    case FeatureFamily::POS: return kPosIndices;
    case FeatureFamily::UW: return {kSingle + kUppercaseCount, 1};
    case FeatureFamily::E: return {kSingle + kExclamDensity, 1};
    case FeatureFamily::Q: return {kSingle + kQuestionDensity, 1};
    case FeatureFamily::R: return {kSingle + kRepetitionCount, 1};
    case FeatureFamily::CS: return {kSingle + kCodeSwitchDensity, 1};
    case FeatureFamily::S1: return {kSingle + kS1Diff, 1};
    case FeatureFamily::S2: return {kSingle + kS2Count, 1};
  }
  return {};
}

FeatureMask FeatureMask::all() {
  FeatureMask m;
  m.bits_.set();
  return m;
}

FeatureMask FeatureMask::of(std::initializer_list<FeatureFamily> families) {
  FeatureMask m;
  for (auto f : families) m.enable(f);
  return m;
}

FeatureMask FeatureMask::parse(std::string_view list) {
  FeatureMask m;
  for (auto raw : split(list, ',')) {
    const auto name = trim(raw);
    if (name.empty()) continue;
    if (name == "all") {
      m = all();
    } else if (name == "S") {
      m.enable(FeatureFamily::S1).enable(FeatureFamily::S2);
    } else if (auto f = parse_family(name)) {
      m.enable(*f);
    } else {
      throw Error("unknown feature family '" + std::string(name) + "'");
    }
  }
  return m;
}

FeatureMask& FeatureMask::enable(FeatureFamily f) {
  bits_.set(static_cast<std::size_t>(f));
  return *this;
}

FeatureMask& FeatureMask::disable(FeatureFamily f) {
  bits_.reset(static_cast<std::size_t>(f));
  return *this;
}

std::vector<std::size_t> FeatureMask::indices() const {
  std::vector<std::size_t> out;
  for (auto f : kAllFamilies)
    if (enabled(f))
      for (auto i : family_indices(f)) out.push_back(i);
  std::sort(out.begin(), out.end());
  return out;
}

FeatureMask FeatureMask::from_bits(std::uint32_t bits) {
  if (bits >> kNumFamilies) throw Error("feature mask has bits outside the known families");
  FeatureMask m;
  m.bits_ = std::bitset<kNumFamilies>(bits);
  return m;
}

std::string FeatureMask::to_string() const {
  std::string out;
  for (auto f : kAllFamilies) {
    if (!enabled(f)) continue;
    if (!out.empty()) out += ',';
    out += family_name(f);
  }
  return out;
}

FeatureMask FeatureMask::operator|(const FeatureMask& o) const {
  FeatureMask m;
  m.bits_ = bits_ | o.bits_;
  return m;
}

FeatureMask FeatureMask::operator&(const FeatureMask& o) const {
  FeatureMask m;
  m.bits_ = bits_ & o.bits_;
  return m;
}

double code_switch_density(std::span<const Token> tokens) {
  std::size_t words = 0;
  std::size_t switches = 0;
  const Token* prev = nullptr;
  for (const auto& tok : tokens) {
    if (!tok.is_word) continue;
    ++words;
    if (prev && is_language_choice(prev->lang) && is_language_choice(tok.lang) &&
        prev->lang != tok.lang)
      ++switches;
    prev = &tok;
  }
  if (words < 2) return 0.0;
  return static_cast<double>(switches) / static_cast<double>(words);
}

FeatureVector extract_features(const NormalizedPost& np, const LexiconBundle& b,
                               const FeatureOptions& options) {
  FeatureVector fv;
  auto& v = fv.values;
  const std::span<const Token> tokens = np.post.tokens;

  v[kSwnDiff] = static_cast<double>(polarity_diff(tokens, b.swn_pos, b.swn_neg));
  v[kOlDiff] = static_cast<double>(polarity_diff(tokens, b.ol_pos, b.ol_neg));
  v[kEswDiff] = static_cast<double>(polarity_diff(tokens, b.esw_pos, b.esw_neg));
  v[kBswDiff] = static_cast<double>(polarity_diff(tokens, b.bsw_pos, b.bsw_neg));
  v[kCbwDiff] = static_cast<double>(polarity_diff(tokens, b.cbw_pos, b.cbw_neg));

  v[kUppercaseCount] = static_cast<double>(np.uppercase_word_count);
  v[kRepetitionCount] = static_cast<double>(np.repetition_count);
  v[kS1Diff] = static_cast<double>(match_count(np.smileys_found, b.smiley1_pos)) -
               static_cast<double>(match_count(np.smileys_found, b.smiley1_neg));
  v[kS2Count] = static_cast<double>(match_count(np.smileys_found, b.smiley2));

  if (np.degenerate()) {
    fv.degenerate = true;
    for (auto i : kDensityIndices) v[i] = 0.0;
    return fv;
  }

  const double words = static_cast<double>(np.word_count);

  std::size_t curses = 0;
  if (options.curse_match == CurseMatch::PreStrip) {
    for (const auto& text : np.prestrip_texts)
      if (b.curse.contains(text) || b.curse.contains(canonical(text))) ++curses;
  } else {
    curses = match_count(tokens, b.curse);
  }
  v[kCurseDensity] = static_cast<double>(curses) / words;

  std::size_t jj = 0, rb = 0, bigrams = 0;
  for (std::size_t i = 0; i < tokens.size(); ++i) {
    const auto& tag = tokens[i].pos;
    jj += tag == "JJ";
    rb += tag == "RB";
    if (i + 1 < tokens.size()) {
      const auto& next = tokens[i + 1].pos;
      bigrams += (tag == "JJ" && next == "RB") || (tag == "RB" && next == "JJ");
    }
  }
  v[kJjDensity] = static_cast<double>(jj) / words;
  v[kRbDensity] = static_cast<double>(rb) / words;
  v[kJjRbBigramDensity] = static_cast<double>(bigrams) / std::max(words - 1.0, 1.0);

  v[kExclamDensity] = static_cast<double>(np.exclam_count) / words;
  v[kQuestionDensity] = static_cast<double>(np.question_count) / words;
  v[kCodeSwitchDensity] = code_switch_density(tokens);
  return fv;
}

std::vector<double> apply_mask(const FeatureVector& v, const FeatureMask& mask) {
  if (!mask.any()) throw Error("feature mask disables every family");
  std::vector<double> out;
  for (auto i : mask.indices()) out.push_back(v.values[i]);
  return out;
}

ScalingParams fit_scaling(std::span<const std::vector<double>> rows) {
  if (rows.empty()) throw Error("fit_scaling: no rows");
  ScalingParams p;
  p.min = rows.front();
  p.max = rows.front();
  for (const auto& row : rows) {
    if (row.size() != p.min.size()) throw Error("fit_scaling: rows differ in dimension");
    for (std::size_t j = 0; j < row.size(); ++j) {
      p.min[j] = std::min(p.min[j], row[j]);
      p.max[j] = std::max(p.max[j], row[j]);
    }
  }
  return p;
}

ScalingParams identity_scaling(std::size_t dimension) {
  ScalingParams p;
  p.min.assign(dimension, 0.0);
  p.max.assign(dimension, 0.0);
  p.enabled = false;
  return p;
}

std::vector<double> scale(std::span<const double> v, const ScalingParams& params) {
  if (v.size() != params.dimension())
    throw Error("scale: vector has " + std::to_string(v.size()) + " components, expected " +
                std::to_string(params.dimension()));
  std::vector<double> out(v.begin(), v.end());
  if (!params.enabled) return out;
  for (std::size_t j = 0; j < out.size(); ++j) {
    const double range = params.max[j] - params.min[j];
    if (range <= 0.0) {
      out[j] = 0.0;
      continue;
    }
    out[j] = std::clamp(2.0 * (out[j] - params.min[j]) / range - 1.0, -1.0, 1.0);
  }
  return out;
}

void write_feature_tsv(std::ostream& out, std::span<const std::string> ids,
                       std::span<const FeatureVector> vectors) {
  if (ids.size() != vectors.size()) throw Error("write_feature_tsv: ids and vectors differ in length");
  out << "id";
  for (auto name : kFeatureNames) out << '\t' << name;
  out << '\n';
  for (std::size_t i = 0; i < ids.size(); ++i) {
    out << ids[i];
    for (double x : vectors[i].values) out << '\t' << fmt::format("{}", x);
    out << '\n';
  }
}

}  // namespace codemix
