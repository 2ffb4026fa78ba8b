#pragma once

// UTF-8 helpers. Tokens in the built-in model are Unicode code points.

#include <string>
#include <string_view>
#include <vector>

namespace surp {

/// Throws Error on malformed UTF-8 (reports the byte offset).
std::u32string decode_utf8(std::string_view s);
std::string encode_utf8(std::u32string_view s);
std::string encode_utf8(char32_t c);

/// Unicode White_Space property.
bool is_unicode_space(char32_t c);

/// Maximal runs of non-whitespace code points, as UTF-8 strings.
std::vector<std::string> split_words(std::string_view text);

/// Unicode simple (1:1) lowercase mapping; idempotent.
std::string lowercase_text(std::string_view text);
char32_t simple_lower(char32_t c);

}  // namespace surp
