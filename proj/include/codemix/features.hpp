#pragma once

#include <array>
#include <bitset>
#include <cstddef>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "codemix/lexicon.hpp"
#include "codemix/normalize.hpp"
#include "codemix/types.hpp"

namespace codemix {

inline constexpr std::size_t kFeatureDim = 16;

// Vector layout. Families map onto these indices; POS spans three.
enum FeatureIndex : std::size_t {
  kSwnDiff = 0,
  kOlDiff,
  kEswDiff,
  kBswDiff,
  kCbwDiff,
  kCurseDensity,
  kJjDensity,
  kRbDensity,
  kJjRbBigramDensity,
  kUppercaseCount,
  kExclamDensity,
  kQuestionDensity,
  kRepetitionCount,
  kCodeSwitchDensity,
  kS1Diff,
  kS2Count,
};

extern const std::array<std::string_view, kFeatureDim> kFeatureNames;

enum class FeatureFamily : std::uint8_t { SWN, OL, ESW, BSW, CBW, CW, POS, UW, E, Q, R, CS, S1, S2 };

inline constexpr std::size_t kNumFamilies = 14;
extern const std::array<FeatureFamily, kNumFamilies> kAllFamilies;

std::string_view family_name(FeatureFamily f);
std::optional<FeatureFamily> parse_family(std::string_view name);
std::span<const std::size_t> family_indices(FeatureFamily f);

class FeatureMask {
 public:
  FeatureMask() = default;

  static FeatureMask all();
  static FeatureMask none() { return FeatureMask(); }
  static FeatureMask of(std::initializer_list<FeatureFamily> families);

  // Comma-separated family names. "S" stands for S1 and S2; "all" for
  // every family. Throws codemix::Error on unknown names.
  static FeatureMask parse(std::string_view list);

  bool enabled(FeatureFamily f) const { return bits_.test(static_cast<std::size_t>(f)); }
  FeatureMask& enable(FeatureFamily f);
  FeatureMask& disable(FeatureFamily f);
  bool any() const { return bits_.any(); }
  std::size_t family_count() const { return bits_.count(); }

  // Enabled vector indices in ascending order.
  std::vector<std::size_t> indices() const;
  std::size_t dimension() const { return indices().size(); }

  std::uint32_t to_bits() const { return static_cast<std::uint32_t>(bits_.to_ulong()); }
  static FeatureMask from_bits(std::uint32_t bits);
  std::string to_string() const;

  FeatureMask operator|(const FeatureMask& o) const;
  FeatureMask operator&(const FeatureMask& o) const;
  bool operator==(const FeatureMask&) const = default;

 private:
  std::bitset<kNumFamilies> bits_;
};

struct FeatureVector {
  std::array<double, kFeatureDim> values{};
  bool degenerate = false;

  double operator[](std::size_t i) const { return values[i]; }
  bool operator==(const FeatureVector&) const = default;
};

enum class CurseMatch : std::uint8_t {
  // Lowercased pre-stripping tokens; a hit on either the raw text or its
  // punctuation-free form counts.
  PreStrip,
  // Normalized tokens only.
  Normalized,
};

struct FeatureOptions {
  CurseMatch curse_match = CurseMatch::PreStrip;
};

// Language switch points between consecutive word tokens, ignoring pairs
// that involve Univ or Other, divided by the number of word tokens.
double code_switch_density(std::span<const Token> tokens);

FeatureVector extract_features(const NormalizedPost& np, const LexiconBundle& bundle,
                               const FeatureOptions& options = {});

// Throws if the mask has no enabled family.
std::vector<double> apply_mask(const FeatureVector& v, const FeatureMask& mask);

struct ScalingParams {
  std::vector<double> min;
  std::vector<double> max;
  bool enabled = true;

  std::size_t dimension() const { return min.size(); }
};

// Per-component min/max over the rows. Throws on an empty or ragged matrix.
ScalingParams fit_scaling(std::span<const std::vector<double>> rows);
// Disabled scaling: scale() is the identity.
ScalingParams identity_scaling(std::size_t dimension);

// Maps each component to [-1, 1] by 2 (x - min) / (max - min) - 1, clamped;
// constant components map to 0.
std::vector<double> scale(std::span<const double> v, const ScalingParams& params);

// Header of feature names, then one row per post with its id in column 0.
void write_feature_tsv(std::ostream& out, std::span<const std::string> ids,
                       std::span<const FeatureVector> vectors);

}  // namespace codemix
