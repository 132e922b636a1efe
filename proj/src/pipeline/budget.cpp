#include "graphrag/pipeline/budget.hpp"

#include "graphrag/pipeline/seed.hpp"

#include <algorithm>
#include <string>

namespace graphrag::pipeline {

BudgetImpossible::BudgetImpossible(std::size_t scaffold, std::size_t limit)
    : std::runtime_error("BudgetImpossible: prompt scaffold needs " + std::to_string(scaffold) +
                         " tokens but the limit is " + std::to_string(limit)),
      scaffold_(scaffold), limit_(limit) {}

BudgetOutcome apply_budget(std::span<const std::size_t> block_tokens, std::span<const std::size_t> sentence_tokens,
                           std::size_t scaffold_tokens, std::size_t limit, std::mt19937_64& rng, Variant variant) {
    if (scaffold_tokens > limit) {
        throw BudgetImpossible(scaffold_tokens, limit);
    }

    struct Item {
        bool sentence;
        std::size_t index;
        std::size_t tokens;
    };
    std::vector<Item> pool;
    if (variant != Variant::OnlySentences) {
        for (std::size_t i = 0; i < block_tokens.size(); ++i) {
            pool.push_back({false, i, block_tokens[i]});
        }
    }
    if (variant != Variant::Vanilla) {
        for (std::size_t i = 0; i < sentence_tokens.size(); ++i) {
            pool.push_back({true, i, sentence_tokens[i]});
        }
    }

    std::size_t total = scaffold_tokens;
    for (const auto& item : pool) {
        total += item.tokens;
    }

    std::vector<Item> evicted;
    while (total > limit && !pool.empty()) {
        const auto pick = uniform_index(rng, pool.size());
        total -= pool[pick].tokens;
        evicted.push_back(pool[pick]);
        pool.erase(pool.begin() + static_cast<std::ptrdiff_t>(pick));
    }

    // Restore pass; total only grows, so one sweep leaves nothing restorable.
    for (std::size_t k = evicted.size(); k-- > 0;) {
        if (total + evicted[k].tokens <= limit) {
            total += evicted[k].tokens;
            pool.push_back(evicted[k]);
            evicted.erase(evicted.begin() + static_cast<std::ptrdiff_t>(k));
        }
    }

    BudgetOutcome out;
    out.total_tokens = total;
    for (const auto& item : pool) {
        (item.sentence ? out.kept_sentences : out.kept_blocks).push_back(item.index);
    }
    std::sort(out.kept_blocks.begin(), out.kept_blocks.end());
    std::sort(out.kept_sentences.begin(), out.kept_sentences.end());
    for (const auto& item : evicted) {
        (item.sentence ? out.evicted_sentences : out.evicted_blocks).push_back(item.index);
    }
    return out;
}

}  // namespace graphrag::pipeline
