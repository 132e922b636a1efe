#pragma once

#include "graphrag/kg/graph.hpp"
#include "graphrag/llm/chat.hpp"
#include "graphrag/llm/template.hpp"
#include "graphrag/pipeline/types.hpp"

#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace graphrag::pipeline {

struct CallOptions {
    std::string system_prompt;
    double temperature = 0.0;
    int max_output_tokens = 1024;
};

/// One round trip to the backend, as recorded in the trace.
struct LlmCall {
    std::string task;
    std::string prompt;
    std::string response;

    bool operator==(const LlmCall&) const = default;
};

/// Appended to the user prompt when a response could not be parsed.
inline constexpr std::string_view kStrictRetrieveSuffix =
    "\n\nReply with the terms only, one per line, and nothing else.";
inline constexpr std::string_view kStrictFilterSuffix =
    "\n\nReply with a JSON array of candidate ids only, for example [1, 2], and nothing else.";

/// Accepts a JSON array of strings, else splits on newlines and commas
/// (ASCII, 、 and ，), trims whitespace, list bullets and quotes, drops
/// entries without any letter or digit, and dedupes by normalized form
/// keeping the first spelling. nullopt when nonblank text yields no term.
std::optional<TermSet> parse_terms(std::string_view response);

/// Accepts a JSON integer array, else a comma/whitespace-separated list of
/// integers (optionally bracketed). nullopt otherwise.
std::optional<std::vector<int>> parse_selection(std::string_view response);

struct RetrieveResult {
    TermSet terms;
    std::vector<LlmCall> calls;
    bool parse_failed = false;
};

RetrieveResult retrieve_terms(std::string_view query, llm::ChatBackend& backend, const llm::PromptTemplate& tpl,
                              const CallOptions& options);

/// "[id]" line followed by the rendered block, candidates separated by a
/// blank line.
std::string render_candidates(const SubGraphSet& set, const kg::KnowledgeGraph& graph);

struct FilterResult {
    SubGraphSet kept;
    std::vector<LlmCall> calls;
    bool fell_back = false;  // unparseable twice; input kept unchanged
};

/// With `enabled` false, or an empty input, returns the input without
/// calling the backend.
FilterResult filter_subgraphs(const SubGraphSet& set, std::string_view query, const kg::KnowledgeGraph& graph,
                              llm::ChatBackend& backend, const llm::PromptTemplate& tpl, const CallOptions& options,
                              bool enabled = true);

SentenceSet collect_sentences(const SubGraphSet& kept, const kg::KnowledgeGraph& graph);

/// One prompt line per provenance sentence.
std::string render_sentence(const kg::SentenceRecord& sentence);

/// Binding text for the reason template's evidence sections.
std::string join_blocks(const std::vector<std::string>& blocks);
std::string join_sentences(const std::vector<std::string>& lines);

struct ReasonResult {
    std::string text;
    LlmCall call;
};

/// `blocks` and `sentence_lines` are the post-budget evidence; the variant
/// decides which of them reach the prompt.
ReasonResult reason(const std::vector<std::string>& blocks, const std::vector<std::string>& sentence_lines,
                    std::string_view query, llm::ChatBackend& backend, const llm::PromptTemplate& tpl,
                    Variant variant, const CallOptions& options);

}  // namespace graphrag::pipeline
