#pragma once

#include "graphrag/text/tokenize.hpp"

#include <cstddef>
#include <string_view>

namespace graphrag::rouge {

using text::TokenScheme;
using text::TokenSequence;
using text::tokenize;

struct RougeScore {
    double precision = 0.0;
    double recall = 0.0;
    double f1 = 0.0;
};

/// F1 with beta = 1; zero when precision + recall is zero.
RougeScore make_score(double precision, double recall);

/// Clipped n-gram overlap. Empty candidate or reference n-gram sets give 0.
RougeScore rouge_n(const TokenSequence& candidate, const TokenSequence& reference, std::size_t n);

/// Sentence-level LCS over the whole sequences.
RougeScore rouge_l(const TokenSequence& candidate, const TokenSequence& reference);

std::size_t lcs_length(const TokenSequence& a, const TokenSequence& b);

struct RougeTriple {
    RougeScore rouge1;
    RougeScore rouge2;
    RougeScore rougeL;
};

RougeTriple score_texts(std::string_view candidate, std::string_view reference, TokenScheme scheme);

}  // namespace graphrag::rouge
