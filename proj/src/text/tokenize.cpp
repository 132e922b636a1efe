#include "graphrag/text/tokenize.hpp"

#include "graphrag/text/unicode.hpp"

namespace graphrag::text {

std::string_view to_string(TokenScheme scheme) {
    switch (scheme) {
        case TokenScheme::UnicodeWordsCjkChars:
            return "unicode-words-cjk-chars";
        case TokenScheme::Whitespace:
            return "whitespace";
    }
    return "unknown";
}

std::optional<TokenScheme> parse_token_scheme(std::string_view name) {
    if (name == "unicode-words-cjk-chars") {
        return TokenScheme::UnicodeWordsCjkChars;
    }
    if (name == "whitespace") {
        return TokenScheme::Whitespace;
    }
    return std::nullopt;
}

namespace {

TokenSequence tokenize_words_cjk(std::string_view text) {
    TokenSequence tokens;
    std::string word;
    auto flush = [&] {
        if (!word.empty()) {
            tokens.push_back(std::move(word));
            word.clear();
        }
    };
    for (char32_t cp : decode_utf8(text)) {
        if (is_cjk(cp)) {
            flush();
            std::string single;
            append_utf8(single, cp);
            tokens.push_back(std::move(single));
        } else if (is_word_char(cp)) {
            append_utf8(word, to_lower(cp));
        } else {
            flush();
        }
    }
    flush();
    return tokens;
}

TokenSequence tokenize_whitespace(std::string_view text) {
    TokenSequence tokens;
    std::string word;
    for (char32_t cp : decode_utf8(text)) {
        if (is_space(cp)) {
            if (!word.empty()) {
                tokens.push_back(std::move(word));
                word.clear();
            }
        } else {
            append_utf8(word, cp);
        }
    }
    if (!word.empty()) {
        tokens.push_back(std::move(word));
    }
    return tokens;
}

}  // namespace

TokenSequence tokenize(std::string_view text, TokenScheme scheme) {
    switch (scheme) {
        case TokenScheme::UnicodeWordsCjkChars:
            return tokenize_words_cjk(text);
        case TokenScheme::Whitespace:
            return tokenize_whitespace(text);
    }
    return {};
}

std::size_t count_tokens(std::string_view text, TokenScheme scheme) {
    return tokenize(text, scheme).size();
}

}  // namespace graphrag::text
