#include "graphrag/pipeline/trace.hpp"

#include <algorithm>

namespace graphrag::pipeline {

using nlohmann::json;

bool PipelineTrace::has_flag(std::string_view flag) const {
    return std::find(flags.begin(), flags.end(), flag) != flags.end();
}

json to_json(const SubGraph& sg) {
    return {
        {"id", sg.id},
        {"target", sg.target},
        {"source_term", sg.source_term},
        {"neighbor_nodes", sg.neighbor_nodes},
        {"edges", sg.edges},
    };
}

json to_json(const kg::SentenceRef& ref) {
    return {{"doc", ref.doc_id}, {"sent", ref.sentence_id}};
}

namespace {

json calls_json(const std::vector<LlmCall>& calls) {
    json out = json::array();
    for (const auto& c : calls) {
        out.push_back({{"prompt", c.prompt}, {"response", c.response}});
    }
    return out;
}

json refs_json(const std::vector<kg::SentenceRef>& refs) {
    json out = json::array();
    for (const auto& r : refs) {
        out.push_back(to_json(r));
    }
    return out;
}

}  // namespace

json to_json(const PipelineTrace& t, bool include_timings) {
    json extracted = json::array();
    for (const auto& sg : t.extracted) {
        extracted.push_back(to_json(sg));
    }

    json out = {
        {"question", t.question},
        {"config",
         {
             {"variant", std::string(to_string(t.variant))},
             {"filter_enabled", t.filter_enabled},
             {"seed", t.seed},
             {"token_limit", t.token_limit},
             {"token_scheme", std::string(text::to_string(t.token_scheme))},
         }},
        {"flags", t.flags},
        {"stages",
         {
             {"retrieve", {{"terms", t.terms}, {"calls", calls_json(t.retrieve_calls)}}},
             {"extract",
              {
                  {"matched_terms", t.matched_terms},
                  {"unmatched_terms", t.unmatched_terms},
                  {"subgraphs", extracted},
              }},
             {"filter",
              {
                  {"enabled", t.filter_enabled},
                  {"kept", t.filter_kept},
                  {"fallback", std::find(t.flags.begin(), t.flags.end(), kFlagFilterFallback) != t.flags.end()},
                  {"calls", calls_json(t.filter_calls)},
              }},
             {"override",
              {
                  {"include", t.override_include},
                  {"exclude", t.override_exclude},
                  {"ignored", t.override_ignored},
                  {"kept", t.post_override},
              }},
             {"sentences", {{"collected", refs_json(t.sentences_collected)}}},
             {"budget",
              {
                  {"limit", t.token_limit},
                  {"scaffold_tokens", t.scaffold_tokens},
                  {"evicted_subgraphs", t.evicted_subgraphs},
                  {"evicted_sentences", refs_json(t.evicted_sentences)},
                  {"kept_subgraphs", t.final_subgraphs},
                  {"kept_sentences", refs_json(t.final_sentences)},
                  {"budget_tokens", t.budget_tokens},
                  {"prompt_tokens", t.prompt_tokens},
              }},
             {"reason", {{"prompt", t.reason_call.prompt}, {"response", t.reason_call.response}}},
         }},
    };
    if (include_timings) {
        out["timings_ms"] = t.timings_ms;
    }
    return out;
}

}  // namespace graphrag::pipeline
