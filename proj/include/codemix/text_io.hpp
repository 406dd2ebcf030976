#pragma once

#include <cstddef>
#include <istream>
#include <string>
#include <string_view>
#include <vector>

#include "codemix/types.hpp"
#include "codemix/unicode.hpp"

namespace codemix {

std::vector<std::string_view> split(std::string_view s, char sep);
std::string_view trim_right(std::string_view s);
std::string_view trim(std::string_view s);

// Calls fn(line, line_no) for every record line of a UTF-8 text resource.
// Strips CR, skips blank lines and lines beginning with '#'. Rejects
// ill-formed UTF-8 with a ParseError naming the line.
template <typename Fn>
void for_each_record(std::istream& in, const std::string& source, Fn&& fn) {
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    std::string_view view = line;
    if (line_no == 1 && view.starts_with("\xEF\xBB\xBF")) view.remove_prefix(3);
    if (!unicode::is_valid_utf8(view)) throw ParseError(source, line_no, "invalid UTF-8");
    if (trim(view).empty() || view.front() == '#') continue;
    fn(view, line_no);
  }
  if (in.bad()) throw Error("read error on " + source);
}

}  // namespace codemix
