#pragma once

#include "graphrag/llm/chat.hpp"
#include "graphrag/text/tokenize.hpp"

#include <optional>
#include <string>
#include <vector>

namespace graphrag::llm {

struct MockPolicy {
    /// Terms the retrieve task may emit (normally every node label).
    std::vector<std::string> lexicon;
    std::string reason_preamble = "Answer based on the failure knowledge graph:";
    std::string question_stem = "Which parts and failures are involved in the case described in document";
    /// When set, prompts longer than this many tokens fail with BudgetExceeded.
    std::optional<std::size_t> context_limit;
    text::TokenScheme context_scheme = text::TokenScheme::UnicodeWordsCjkChars;
};

/// Deterministic offline backend. Responses depend only on the request's
/// task and fields and on the policy:
///  - retrieve: lexicon entries occurring in the question, one per line, in
///    order of first occurrence (longer entries first at the same position);
///  - filter: JSON array of candidate ids whose text shares a content token
///    with the question;
///  - reason: the preamble followed by the sub-graph and sentence evidence
///    verbatim;
///  - generate: one question/answer pair per document, the answer being the
///    document's first sentence.
/// Unknown tasks produce an empty completion.
class MockBackend : public ChatBackend {
public:
    explicit MockBackend(MockPolicy policy);

    ChatResponse complete(const ChatRequest& request) override;
    std::string_view kind() const override { return "mock"; }

    const MockPolicy& policy() const noexcept { return policy_; }

private:
    MockPolicy policy_;
    std::vector<std::u32string> normalized_lexicon_;
};

/// Tokens of `text` that count as content for the mock filter: CJK
/// ideographs and katakana, and other words of three or more characters
/// that are not common English function words.
std::vector<std::string> content_tokens(std::string_view text);

/// Up to and including the first sentence terminator (. ! ? 。 ！ ？).
std::string first_sentence(std::string_view text);

}  // namespace graphrag::llm
