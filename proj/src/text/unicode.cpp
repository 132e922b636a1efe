#include "graphrag/text/unicode.hpp"

#include <unicode/normalizer2.h>
#include <unicode/uchar.h>
#include <unicode/unistr.h>
#include <unicode/utf8.h>

#include <stdexcept>

namespace graphrag::text {

std::vector<char32_t> decode_utf8(std::string_view utf8) {
    std::vector<char32_t> out;
    out.reserve(utf8.size());
    const auto* bytes = reinterpret_cast<const uint8_t*>(utf8.data());
    const auto length = static_cast<int32_t>(utf8.size());
    int32_t i = 0;
    while (i < length) {
        UChar32 c;
        U8_NEXT(bytes, i, length, c);
        out.push_back(c < 0 ? U'\uFFFD' : static_cast<char32_t>(c));
    }
    return out;
}

void append_utf8(std::string& out, char32_t cp) {
    if (cp < 0x80) {
        out.push_back(static_cast<char>(cp));
    } else if (cp < 0x800) {
        out.push_back(static_cast<char>(0xC0 | (cp >> 6)));
        out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
    } else if (cp < 0x10000) {
        out.push_back(static_cast<char>(0xE0 | (cp >> 12)));
        out.push_back(static_cast<char>(0x80 | ((cp >> 6) & 0x3F)));
        out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
    } else {
        out.push_back(static_cast<char>(0xF0 | (cp >> 18)));
        out.push_back(static_cast<char>(0x80 | ((cp >> 12) & 0x3F)));
        out.push_back(static_cast<char>(0x80 | ((cp >> 6) & 0x3F)));
        out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
    }
}

std::string normalize_label(std::string_view label) {
    UErrorCode status = U_ZERO_ERROR;
    const icu::Normalizer2* nfkc_cf = icu::Normalizer2::getNFKCCasefoldInstance(status);
    if (U_FAILURE(status)) {
        throw std::runtime_error(std::string("ICU NFKC_Casefold unavailable: ") + u_errorName(status));
    }
    auto source = icu::UnicodeString::fromUTF8(icu::StringPiece(label.data(), static_cast<int32_t>(label.size())));
    icu::UnicodeString folded = nfkc_cf->normalize(source, status);
    if (U_FAILURE(status)) {
        throw std::runtime_error(std::string("normalization failed: ") + u_errorName(status));
    }
    std::string out;
    folded.toUTF8String(out);
    return std::string(trim(out));
}

bool is_cjk(char32_t cp) {
    return (cp >= 0x3040 && cp <= 0x309F)      // Hiragana
        || (cp >= 0x30A0 && cp <= 0x30FF)      // Katakana, incl. U+30FC
        || (cp >= 0x31F0 && cp <= 0x31FF)      // Katakana phonetic extensions
        || (cp >= 0x3005 && cp <= 0x3007)      // 々 〆 〇
        || (cp >= 0x3400 && cp <= 0x4DBF)      // CJK ext A
        || (cp >= 0x4E00 && cp <= 0x9FFF)      // CJK unified
        || (cp >= 0xF900 && cp <= 0xFAFF)      // compatibility ideographs
        || (cp >= 0xFF66 && cp <= 0xFF9F)      // halfwidth katakana
        || (cp >= 0xAC00 && cp <= 0xD7AF)      // Hangul syllables
        || (cp >= 0x20000 && cp <= 0x3FFFF);   // ext B and beyond
}

bool is_word_char(char32_t cp) {
    const auto c = static_cast<UChar32>(cp);
    if (u_isalnum(c)) {
        return true;
    }
    const auto cat = u_charType(c);
    return cat == U_NON_SPACING_MARK || cat == U_COMBINING_SPACING_MARK || cat == U_ENCLOSING_MARK;
}

bool is_space(char32_t cp) {
    return u_isUWhiteSpace(static_cast<UChar32>(cp));
}

char32_t to_lower(char32_t cp) {
    return static_cast<char32_t>(u_tolower(static_cast<UChar32>(cp)));
}

std::string_view trim(std::string_view s) {
    auto is_ws = [](char c) { return c == ' ' || c == '\t' || c == '\n' || c == '\r' || c == '\f' || c == '\v'; };
    while (!s.empty() && is_ws(s.front())) {
        s.remove_prefix(1);
    }
    while (!s.empty() && is_ws(s.back())) {
        s.remove_suffix(1);
    }
    return s;
}

}  // namespace graphrag::text
