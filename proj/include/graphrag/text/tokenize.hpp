#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace graphrag::text {

enum class TokenScheme {
    UnicodeWordsCjkChars,  // "unicode-words-cjk-chars"
    Whitespace,            // "whitespace"
};

std::string_view to_string(TokenScheme scheme);
std::optional<TokenScheme> parse_token_scheme(std::string_view name);

using TokenSequence = std::vector<std::string>;

/// unicode-words-cjk-chars: each CJK code point is one token, every maximal
/// run of other letters/digits/marks is one lowercased token, everything
/// else separates tokens. whitespace: split on Unicode white space, verbatim.
TokenSequence tokenize(std::string_view text, TokenScheme scheme);

std::size_t count_tokens(std::string_view text, TokenScheme scheme);

}  // namespace graphrag::text
