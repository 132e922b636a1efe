#pragma once

#include "graphrag/pipeline/types.hpp"

#include <cstddef>
#include <random>
#include <span>
#include <stdexcept>
#include <vector>

namespace graphrag::pipeline {

class BudgetImpossible : public std::runtime_error {
public:
    BudgetImpossible(std::size_t scaffold, std::size_t limit);

    std::size_t scaffold() const noexcept { return scaffold_; }
    std::size_t limit() const noexcept { return limit_; }

private:
    std::size_t scaffold_;
    std::size_t limit_;
};

/// Indices refer to the input spans. Kept lists are in input order; evicted
/// lists are in eviction order.
struct BudgetOutcome {
    std::vector<std::size_t> kept_blocks;
    std::vector<std::size_t> kept_sentences;
    std::vector<std::size_t> evicted_blocks;
    std::vector<std::size_t> evicted_sentences;
    std::size_t total_tokens = 0;  // scaffold + kept items
};

/// Fits evidence into `limit` tokens. The variant picks the eviction pool:
/// Vanilla uses blocks only, OnlySentences sentences only, WithSentences both
/// with equal probability per item; items outside the pool are dropped and
/// not counted. While scaffold + pool exceeds the limit, one pooled item is
/// evicted uniformly at random. A final pass over the evicted items (most
/// recent first) puts back any item that still fits, so no evicted item can
/// be restored alone without breaking the limit.
/// Throws BudgetImpossible when the scaffold alone exceeds the limit.
BudgetOutcome apply_budget(std::span<const std::size_t> block_tokens, std::span<const std::size_t> sentence_tokens,
                           std::size_t scaffold_tokens, std::size_t limit, std::mt19937_64& rng, Variant variant);

}  // namespace graphrag::pipeline
