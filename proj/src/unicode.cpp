#include "codemix/unicode.hpp"

#include <unicode/uchar.h>
#include <unicode/utf8.h>

#include <cstdint>

namespace codemix::unicode {

namespace {

template <typename Fn>
void for_each_codepoint(std::string_view s, Fn&& fn) {
  const auto* data = reinterpret_cast<const std::uint8_t*>(s.data());
  const auto len = static_cast<std::int32_t>(s.size());
  std::int32_t i = 0;
  while (i < len) {
    UChar32 c;
    U8_NEXT(data, i, len, c);
    if (c < 0) c = 0xFFFD;
    if (!fn(static_cast<char32_t>(c))) return;
  }
}

}  // namespace

bool is_valid_utf8(std::string_view s) {
  const auto* data = reinterpret_cast<const std::uint8_t*>(s.data());
  const auto len = static_cast<std::int32_t>(s.size());
  std::int32_t i = 0;
  while (i < len) {
    UChar32 c;
    U8_NEXT(data, i, len, c);
    if (c < 0) return false;
  }
  return true;
}

std::u32string decode(std::string_view s) {
  std::u32string out;
  out.reserve(s.size());
  for_each_codepoint(s, [&](char32_t c) {
    out.push_back(c);
    return true;
  });
  return out;
}

std::string encode(std::u32string_view s) {
  std::string out;
  out.reserve(s.size());
  for (char32_t c : s) {
    std::uint8_t buf[U8_MAX_LENGTH];
    std::int32_t n = 0;
    UBool error = false;
    U8_APPEND(buf, n, U8_MAX_LENGTH, static_cast<UChar32>(c), error);
    if (error) {
      out += "\xEF\xBF\xBD";
      continue;
    }
    out.append(reinterpret_cast<const char*>(buf), static_cast<std::size_t>(n));
  }
  return out;
}

bool is_punct_or_symbol(char32_t c) {
  const auto mask = U_GET_GC_MASK(static_cast<UChar32>(c));
  return (mask & (U_GC_P_MASK | U_GC_S_MASK)) != 0;
}

bool is_space(char32_t c) {
  const auto mask = U_GET_GC_MASK(static_cast<UChar32>(c));
  return (mask & U_GC_Z_MASK) != 0 || c == U'\t' || c == U'\n' || c == U'\r' ||
         c == U'\v' || c == U'\f';
}

bool is_letter(char32_t c) { return u_isalpha(static_cast<UChar32>(c)) != 0; }

bool is_digit(char32_t c) { return u_isdigit(static_cast<UChar32>(c)) != 0; }

bool is_upper_letter(char32_t c) {
  return u_isalpha(static_cast<UChar32>(c)) && u_isUUppercase(static_cast<UChar32>(c));
}

bool has_letter_or_digit(std::string_view s) {
  bool found = false;
  for_each_codepoint(s, [&](char32_t c) {
    found = is_letter(c) || is_digit(c);
    return !found;
  });
  return found;
}

bool has_punct_or_symbol(std::string_view s) {
  bool found = false;
  for_each_codepoint(s, [&](char32_t c) {
    found = is_punct_or_symbol(c);
    return !found;
  });
  return found;
}

std::string to_lower(std::string_view s) {
  std::u32string cps = decode(s);
  for (auto& c : cps) c = static_cast<char32_t>(u_tolower(static_cast<UChar32>(c)));
  return encode(cps);
}

std::size_t length(std::string_view s) {
  std::size_t n = 0;
  for_each_codepoint(s, [&](char32_t) {
    ++n;
    return true;
  });
  return n;
}

}  // namespace codemix::unicode
