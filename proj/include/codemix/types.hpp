#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace codemix {

// Label order is fixed everywhere: matrices, one-hot targets, reports.
enum class Polarity : std::uint8_t { Positive = 0, Neutral = 1, Negative = 2 };

inline constexpr std::size_t kNumPolarities = 3;
inline constexpr std::array<Polarity, kNumPolarities> kPolarities{
    Polarity::Positive, Polarity::Neutral, Polarity::Negative};

constexpr std::size_t index_of(Polarity p) { return static_cast<std::size_t>(p); }

/// Short code used in data files: "pos", "neu", "neg".
std::string_view polarity_code(Polarity p);
/// Display name: "Positive", "Neutral", "Negative".
std::string_view polarity_name(Polarity p);
std::optional<Polarity> parse_polarity(std::string_view code);

enum class Lang : std::uint8_t { En, Bn, Hi, Univ, Other };

std::string_view lang_name(Lang lang);
std::optional<Lang> parse_lang(std::string_view name);

inline constexpr std::string_view kUnknownPos = "UNK";

struct Token {
  std::string text;
  Lang lang = Lang::En;
  std::string pos;
  bool is_word = false;

  bool operator==(const Token&) const = default;
};

// Derives is_word from the text (at least one letter or digit).
Token make_token(std::string text, Lang lang, std::string pos);

struct Post {
  std::string id;
  std::vector<Token> tokens;
  std::optional<Polarity> label;

  bool operator==(const Post&) const = default;
};

using Corpus = std::vector<Post>;

// 3x3 count grid indexed by Polarity. Shared by the agreement and
// confusion matrices.
struct LabelGrid {
  std::array<std::array<std::int64_t, kNumPolarities>, kNumPolarities> counts{};

  std::int64_t& at(Polarity row, Polarity col) { return counts[index_of(row)][index_of(col)]; }
  std::int64_t at(Polarity row, Polarity col) const { return counts[index_of(row)][index_of(col)]; }
  std::int64_t total() const;
  std::int64_t trace() const;
  std::int64_t row_total(std::size_t row) const;
  std::int64_t col_total(std::size_t col) const;

  bool operator==(const LabelGrid&) const = default;
};

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Malformed input file; carries the 1-based line number when known.
class ParseError : public Error {
 public:
  ParseError(std::string source, std::size_t line, const std::string& message);

  const std::string& source() const { return source_; }
  std::size_t line() const { return line_; }

 private:
  std::string source_;
  std::size_t line_;
};

}  // namespace codemix
