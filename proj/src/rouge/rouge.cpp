#include "graphrag/rouge/rouge.hpp"

#include <algorithm>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

namespace graphrag::rouge {

namespace {

// N-grams keyed by their token vector; std::map keeps this free of hashing
// subtleties with embedded separators.
std::map<std::vector<std::string>, std::size_t> ngram_counts(const TokenSequence& tokens, std::size_t n) {
    std::map<std::vector<std::string>, std::size_t> counts;
    if (tokens.size() < n) {
        return counts;
    }
    for (std::size_t i = 0; i + n <= tokens.size(); ++i) {
        ++counts[std::vector<std::string>(tokens.begin() + static_cast<std::ptrdiff_t>(i),
                                          tokens.begin() + static_cast<std::ptrdiff_t>(i + n))];
    }
    return counts;
}

double ratio(std::size_t num, std::size_t den) {
    return den == 0 ? 0.0 : static_cast<double>(num) / static_cast<double>(den);
}

}  // namespace

RougeScore make_score(double precision, double recall) {
    RougeScore s{precision, recall, 0.0};
    if (precision + recall > 0.0) {
        s.f1 = 2.0 * precision * recall / (precision + recall);
    }
    return s;
}

RougeScore rouge_n(const TokenSequence& candidate, const TokenSequence& reference, std::size_t n) {
    if (n == 0) {
        throw std::invalid_argument("rouge_n: n must be positive");
    }
    const auto cand = ngram_counts(candidate, n);
    const auto ref = ngram_counts(reference, n);
    const std::size_t cand_total = candidate.size() >= n ? candidate.size() - n + 1 : 0;
    const std::size_t ref_total = reference.size() >= n ? reference.size() - n + 1 : 0;

    std::size_t overlap = 0;
    for (const auto& [gram, count] : cand) {
        if (auto it = ref.find(gram); it != ref.end()) {
            overlap += std::min(count, it->second);
        }
    }
    return make_score(ratio(overlap, cand_total), ratio(overlap, ref_total));
}

std::size_t lcs_length(const TokenSequence& a, const TokenSequence& b) {
    if (a.empty() || b.empty()) {
        return 0;
    }
    // Two-row DP over b.
    std::vector<std::size_t> prev(b.size() + 1, 0);
    std::vector<std::size_t> curr(b.size() + 1, 0);
    for (std::size_t i = 1; i <= a.size(); ++i) {
        for (std::size_t j = 1; j <= b.size(); ++j) {
            curr[j] = a[i - 1] == b[j - 1] ? prev[j - 1] + 1 : std::max(prev[j], curr[j - 1]);
        }
        std::swap(prev, curr);
    }
    return prev[b.size()];
}

RougeScore rouge_l(const TokenSequence& candidate, const TokenSequence& reference) {
    const auto lcs = lcs_length(candidate, reference);
    return make_score(ratio(lcs, candidate.size()), ratio(lcs, reference.size()));
}

RougeTriple score_texts(std::string_view candidate, std::string_view reference, TokenScheme scheme) {
    const auto cand = tokenize(candidate, scheme);
    const auto ref = tokenize(reference, scheme);
    return {rouge_n(cand, ref, 1), rouge_n(cand, ref, 2), rouge_l(cand, ref)};
}

}  // namespace graphrag::rouge
