#include "codemix/types.hpp"

#include <utility>

#include "codemix/unicode.hpp"

namespace codemix {

std::string_view polarity_code(Polarity p) {
  switch (p) {
    case Polarity::Positive: return "pos";
    case Polarity::Neutral: return "neu";
    case Polarity::Negative: return "neg";
  }
  return "?";
}

std::string_view polarity_name(Polarity p) {
  switch (p) {
    case Polarity::Positive: return "Positive";
    case Polarity::Neutral: return "Neutral";
    case Polarity::Negative: return "Negative";
  }
  return "?";
}

std::optional<Polarity> parse_polarity(std::string_view code) {
  if (code == "pos") return Polarity::Positive;
  if (code == "neu") return Polarity::Neutral;
  if (code == "neg") return Polarity::Negative;
  return std::nullopt;
}

std::string_view lang_name(Lang lang) {
  switch (lang) {
    case Lang::En: return "En";
    case Lang::Bn: return "Bn";
    case Lang::Hi: return "Hi";
    case Lang::Univ: return "Univ";
    case Lang::Other: return "Other";
  }
  return "?";
}

std::optional<Lang> parse_lang(std::string_view name) {
  if (name == "En") return Lang::En;
  if (name == "Bn") return Lang::Bn;
  if (name == "Hi") return Lang::Hi;
  if (name == "Univ") return Lang::Univ;
  if (name == "Other") return Lang::Other;
  return std::nullopt;
}

Token make_token(std::string text, Lang lang, std::string pos) {
  const bool word = unicode::has_letter_or_digit(text);
  return Token{std::move(text), lang, std::move(pos), word};
}

std::int64_t LabelGrid::total() const {
  std::int64_t sum = 0;
  for (const auto& row : counts)
    for (auto c : row) sum += c;
  return sum;
}

std::int64_t LabelGrid::trace() const {
  std::int64_t sum = 0;
  for (std::size_t i = 0; i < kNumPolarities; ++i) sum += counts[i][i];
  return sum;
}

std::int64_t LabelGrid::row_total(std::size_t row) const {
  std::int64_t sum = 0;
  for (auto c : counts[row]) sum += c;
  return sum;
}

std::int64_t LabelGrid::col_total(std::size_t col) const {
  std::int64_t sum = 0;
  for (const auto& row : counts) sum += row[col];
  return sum;
}

ParseError::ParseError(std::string source, std::size_t line, const std::string& message)
    : Error(source + ":" + std::to_string(line) + ": " + message),
      source_(std::move(source)),
      line_(line) {}

}  // namespace codemix
