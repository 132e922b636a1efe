#include "graphrag/text/tokenize.hpp"
#include "graphrag/text/unicode.hpp"

#include <doctest.h>

using namespace graphrag::text;
using Seq = std::vector<std::string>;

TEST_CASE("tokenize examples") {
    CHECK(tokenize("", TokenScheme::UnicodeWordsCjkChars).empty());
    CHECK(tokenize("Clutch pedal", TokenScheme::UnicodeWordsCjkChars) == Seq{"clutch", "pedal"});
    CHECK(tokenize("クラッチ摩耗", TokenScheme::UnicodeWordsCjkChars) == Seq{"ク", "ラ", "ッ", "チ", "摩", "耗"});
}

TEST_CASE("mixed script text splits at script and punctuation boundaries") {
    CHECK(tokenize("ABSのクラッチ, pedal-sticks!", TokenScheme::UnicodeWordsCjkChars) ==
          Seq{"abs", "の", "ク", "ラ", "ッ", "チ", "pedal", "sticks"});
    CHECK(tokenize("ＣＬＵＴＣＨ　disc", TokenScheme::UnicodeWordsCjkChars) == Seq{"ｃｌｕｔｃｈ", "disc"});
    CHECK(tokenize("café 2nd", TokenScheme::UnicodeWordsCjkChars) == Seq{"café", "2nd"});
}

TEST_CASE("whitespace scheme keeps tokens verbatim") {
    CHECK(tokenize("  Clutch,  pedal.\n\tsticks ", TokenScheme::Whitespace) == Seq{"Clutch,", "pedal.", "sticks"});
    CHECK(tokenize("", TokenScheme::Whitespace).empty());
}

TEST_CASE("count_tokens examples") {
    CHECK(count_tokens("", TokenScheme::UnicodeWordsCjkChars) == 0);
    CHECK(count_tokens("", TokenScheme::Whitespace) == 0);
    CHECK(count_tokens("clutch pedal sticks", TokenScheme::UnicodeWordsCjkChars) == 3);
    CHECK(count_tokens("clutch pedal sticks", TokenScheme::Whitespace) == 3);
    CHECK(count_tokens("クラッチ", TokenScheme::UnicodeWordsCjkChars) == 4);
}

TEST_CASE("token scheme names round-trip") {
    for (auto s : {TokenScheme::UnicodeWordsCjkChars, TokenScheme::Whitespace}) {
        CHECK(parse_token_scheme(to_string(s)) == s);
    }
    CHECK(to_string(TokenScheme::UnicodeWordsCjkChars) == "unicode-words-cjk-chars");
    CHECK_FALSE(parse_token_scheme("bpe").has_value());
}

TEST_CASE("normalize_label folds case and compatibility forms") {
    CHECK(normalize_label("Clutch") == "clutch");
    CHECK(normalize_label("  CLUTCH DISC ") == "clutch disc");
    CHECK(normalize_label("ＣＬＵＴＣＨ") == "clutch");
    CHECK(normalize_label("ｸﾗｯﾁ") == "クラッチ");
    CHECK(normalize_label("Straße") == normalize_label("STRASSE"));
    CHECK(normalize_label("") == "");
}

TEST_CASE("decode_utf8 replaces ill-formed bytes") {
    CHECK(decode_utf8("aé") == std::vector<char32_t>{U'a', U'é'});
    CHECK(decode_utf8(std::string("a\xff") + "b") == std::vector<char32_t>{U'a', U'�', U'b'});
    std::string out;
    append_utf8(out, U'ク');
    CHECK(out == "ク");
}

TEST_CASE("character classes") {
    CHECK(is_cjk(U'ク'));
    CHECK(is_cjk(U'摩'));
    CHECK(is_cjk(U'ー'));
    CHECK_FALSE(is_cjk(U'a'));
    CHECK(is_word_char(U'a'));
    CHECK(is_word_char(U'7'));
    CHECK_FALSE(is_word_char(U','));
    CHECK(is_space(U'　'));
    CHECK(trim("  x y \n") == "x y");
}
