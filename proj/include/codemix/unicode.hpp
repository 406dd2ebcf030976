#pragma once

#include <string>
#include <string_view>
#include <vector>

// Thin codepoint helpers over ICU. Character classes follow Unicode
// general categories.
namespace codemix::unicode {

bool is_valid_utf8(std::string_view s);

// Ill-formed sequences decode to U+FFFD.
std::u32string decode(std::string_view s);
std::string encode(std::u32string_view s);

// General category P* or S*.
bool is_punct_or_symbol(char32_t c);
// General category Z* plus ASCII control whitespace.
bool is_space(char32_t c);
bool is_letter(char32_t c);
bool is_digit(char32_t c);
bool is_upper_letter(char32_t c);

bool has_letter_or_digit(std::string_view s);
bool has_punct_or_symbol(std::string_view s);
std::string to_lower(std::string_view s);
std::size_t length(std::string_view s);

}  // namespace codemix::unicode
