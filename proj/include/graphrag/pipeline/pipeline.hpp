#pragma once

#include "graphrag/kg/graph.hpp"
#include "graphrag/llm/chat.hpp"
#include "graphrag/llm/template.hpp"
#include "graphrag/pipeline/stages.hpp"
#include "graphrag/pipeline/trace.hpp"
#include "graphrag/pipeline/types.hpp"
#include "graphrag/text/tokenize.hpp"

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace graphrag::pipeline {

inline constexpr std::string_view kDefaultSystemPrompt =
    "You are an assistant that helps engineers analyse automotive failures.";

struct PipelineConfig {
    Variant variant = Variant::Vanilla;
    std::size_t token_limit = 8000;
    uint64_t seed = 0;
    bool filter_enabled = true;
    llm::PromptSet templates = llm::default_prompts();
    text::TokenScheme token_scheme = text::TokenScheme::UnicodeWordsCjkChars;
    std::string system_prompt = std::string(kDefaultSystemPrompt);
    double temperature = 0.0;
    int max_output_tokens = 1024;
};

/// Manual adjustments applied between filtering and budgeting. Ids refer to
/// extracted sub-graphs; the two lists must be disjoint.
struct Overrides {
    std::vector<int> include;
    std::vector<int> exclude;

    bool empty() const noexcept { return include.empty() && exclude.empty(); }
};

struct Answer {
    std::string text;
    PipelineTrace trace;
};

/// A stage failure; `stage` is one of retrieve, extract, filter, override,
/// sentences, budget, reason.
class PipelineError : public std::runtime_error {
public:
    PipelineError(std::string stage, const std::string& message, std::optional<llm::LlmErrorKind> backend_error);

    const std::string& stage() const noexcept { return stage_; }
    /// Set when the failure came from the chat backend.
    std::optional<llm::LlmErrorKind> backend_error() const noexcept { return backend_error_; }

private:
    std::string stage_;
    std::optional<llm::LlmErrorKind> backend_error_;
};

/// Token count of the reason prompt (and system prompt) with empty evidence.
std::size_t scaffold_tokens(std::string_view query, const PipelineConfig& config);

/// retrieve -> extract -> filter -> overrides -> sentences -> budget -> reason.
/// The run is deterministic for a deterministic backend: eviction draws from
/// an mt19937_64 seeded with config.seed.
Answer answer_query(std::string_view query, const kg::KnowledgeGraph& graph, const PipelineConfig& config,
                    llm::ChatBackend& backend, const Overrides& overrides = {});

/// Reason call with both evidence sections empty: the plain-LLM baseline.
std::string answer_without_retrieval(std::string_view query, const PipelineConfig& config,
                                     llm::ChatBackend& backend);

nlohmann::json to_json(const Answer& answer, bool include_timings = false);

}  // namespace graphrag::pipeline
