#pragma once

#include "graphrag/kg/graph.hpp"
#include "graphrag/pipeline/stages.hpp"
#include "graphrag/pipeline/types.hpp"
#include "graphrag/text/tokenize.hpp"

#include <nlohmann/json.hpp>

#include <cstdint>
#include <map>
#include <string>
#include <vector>

namespace graphrag::pipeline {

/// Flags raised on degenerate or recovered runs.
inline constexpr std::string_view kFlagEmptyQuestion = "empty_question";
inline constexpr std::string_view kFlagNoTermMatched = "no_term_matched";
inline constexpr std::string_view kFlagRetrieveParseFailed = "retrieve_parse_failed";
inline constexpr std::string_view kFlagFilterFallback = "filter_fallback";

/// Complete record of one pipeline run.
struct PipelineTrace {
    std::string question;
    Variant variant = Variant::Vanilla;
    bool filter_enabled = true;
    uint64_t seed = 0;
    std::size_t token_limit = 0;
    text::TokenScheme token_scheme = text::TokenScheme::UnicodeWordsCjkChars;
    std::vector<std::string> flags;

    TermSet terms;
    std::vector<LlmCall> retrieve_calls;

    std::vector<std::string> matched_terms;
    std::vector<std::string> unmatched_terms;
    SubGraphSet extracted;

    std::vector<int> filter_kept;
    std::vector<LlmCall> filter_calls;

    std::vector<int> override_include;
    std::vector<int> override_exclude;
    std::vector<int> override_ignored;  // ids that named no extracted sub-graph
    std::vector<int> post_override;

    std::vector<kg::SentenceRef> sentences_collected;

    std::size_t scaffold_tokens = 0;
    std::vector<int> evicted_subgraphs;
    std::vector<kg::SentenceRef> evicted_sentences;
    std::vector<int> final_subgraphs;
    std::vector<kg::SentenceRef> final_sentences;
    std::size_t budget_tokens = 0;  // scaffold + kept evidence
    std::size_t prompt_tokens = 0;  // counted on the rendered reason prompt

    LlmCall reason_call;

    /// Wall time per stage in milliseconds; excluded from deterministic output.
    std::map<std::string, double> timings_ms;

    bool has_flag(std::string_view flag) const;
};

/// Schema: {"question", "config", "flags", "stages": {retrieve, extract,
/// filter, override, sentences, budget, reason}}, plus "timings_ms" when
/// requested. Sub-graph ids are integers and prompts plain strings.
nlohmann::json to_json(const PipelineTrace& trace, bool include_timings = false);

nlohmann::json to_json(const SubGraph& sg);
nlohmann::json to_json(const kg::SentenceRef& ref);

}  // namespace graphrag::pipeline
