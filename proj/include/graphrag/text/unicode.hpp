#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace graphrag::text {

/// Decodes UTF-8 into code points. Ill-formed sequences become U+FFFD.
std::vector<char32_t> decode_utf8(std::string_view utf8);

void append_utf8(std::string& out, char32_t cp);

/// Canonical form used for label matching: NFKC with full case folding,
/// surrounding whitespace trimmed.
std::string normalize_label(std::string_view label);

/// Han ideographs, kana (including the prolonged sound mark), Hangul
/// syllables and iteration marks.
bool is_cjk(char32_t cp);

bool is_word_char(char32_t cp);
bool is_space(char32_t cp);

char32_t to_lower(char32_t cp);

std::string_view trim(std::string_view s);

}  // namespace graphrag::text
