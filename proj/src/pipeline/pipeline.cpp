#include "graphrag/pipeline/pipeline.hpp"

#include "graphrag/pipeline/budget.hpp"
#include "graphrag/pipeline/subgraph.hpp"
#include "graphrag/text/unicode.hpp"

#include <algorithm>
#include <chrono>
#include <random>
#include <set>

namespace graphrag::pipeline {

PipelineError::PipelineError(std::string stage, const std::string& message,
                             std::optional<llm::LlmErrorKind> backend_error)
    : std::runtime_error(stage + ": " + message), stage_(std::move(stage)), backend_error_(backend_error) {}

namespace {

CallOptions call_options(const PipelineConfig& config) {
    return CallOptions{config.system_prompt, config.temperature, config.max_output_tokens};
}

class StageTimer {
public:
    StageTimer(PipelineTrace& trace, std::string name)
        : trace_(trace), name_(std::move(name)), start_(std::chrono::steady_clock::now()) {}
    ~StageTimer() {
        const auto elapsed = std::chrono::steady_clock::now() - start_;
        trace_.timings_ms[name_] = std::chrono::duration<double, std::milli>(elapsed).count();
    }
    StageTimer(const StageTimer&) = delete;
    StageTimer& operator=(const StageTimer&) = delete;

private:
    PipelineTrace& trace_;
    std::string name_;
    std::chrono::steady_clock::time_point start_;
};

template <typename F>
auto run_stage(PipelineTrace& trace, const char* stage, F&& body) {
    StageTimer timer(trace, stage);
    try {
        return body();
    } catch (const PipelineError&) {
        throw;
    } catch (const llm::LlmError& e) {
        throw PipelineError(stage, e.what(), e.kind());
    } catch (const std::exception& e) {
        throw PipelineError(stage, e.what(), std::nullopt);
    }
}

void add_flag(PipelineTrace& trace, std::string_view flag) {
    if (!trace.has_flag(flag)) {
        trace.flags.emplace_back(flag);
    }
}

}  // namespace

std::size_t scaffold_tokens(std::string_view query, const PipelineConfig& config) {
    const auto empty = llm::render_template(config.templates.reason,
                                            {{"question", std::string(query)}, {"subgraphs", ""}, {"sentences", ""}});
    return text::count_tokens(config.system_prompt, config.token_scheme) +
           text::count_tokens(empty, config.token_scheme);
}

Answer answer_query(std::string_view query, const kg::KnowledgeGraph& graph, const PipelineConfig& config,
                    llm::ChatBackend& backend, const Overrides& overrides) {
    Answer answer;
    auto& trace = answer.trace;
    trace.question = std::string(query);
    trace.variant = config.variant;
    trace.filter_enabled = config.filter_enabled;
    trace.seed = config.seed;
    trace.token_limit = config.token_limit;
    trace.token_scheme = config.token_scheme;
    trace.override_include = overrides.include;
    trace.override_exclude = overrides.exclude;

    const auto options = call_options(config);

    for (int id : overrides.include) {
        if (std::find(overrides.exclude.begin(), overrides.exclude.end(), id) != overrides.exclude.end()) {
            throw PipelineError("override", "sub-graph " + std::to_string(id) + " is both included and excluded",
                                std::nullopt);
        }
    }

    if (text::trim(query).empty()) {
        add_flag(trace, kFlagEmptyQuestion);
    } else {
        run_stage(trace, "retrieve", [&] {
            auto result = retrieve_terms(query, backend, config.templates.retrieve, options);
            trace.terms = std::move(result.terms);
            trace.retrieve_calls = std::move(result.calls);
            if (result.parse_failed) {
                add_flag(trace, kFlagRetrieveParseFailed);
            }
            return 0;
        });
    }

    run_stage(trace, "extract", [&] {
        auto extraction = extract_subgraphs(trace.terms, graph);
        trace.extracted = std::move(extraction.subgraphs);
        trace.matched_terms = std::move(extraction.matched_terms);
        trace.unmatched_terms = std::move(extraction.unmatched_terms);
        if (!trace.terms.empty() && trace.matched_terms.empty()) {
            add_flag(trace, kFlagNoTermMatched);
        }
        return 0;
    });

    SubGraphSet filtered = run_stage(trace, "filter", [&] {
        auto result = filter_subgraphs(trace.extracted, query, graph, backend, config.templates.filter, options,
                                       config.filter_enabled);
        trace.filter_calls = std::move(result.calls);
        if (result.fell_back) {
            add_flag(trace, kFlagFilterFallback);
        }
        for (const auto& sg : result.kept) {
            trace.filter_kept.push_back(sg.id);
        }
        return std::move(result.kept);
    });

    SubGraphSet selected = run_stage(trace, "override", [&] {
        std::set<int> ids;
        for (const auto& sg : filtered) {
            ids.insert(sg.id);
        }
        auto known = [&](int id) { return id >= 1 && static_cast<std::size_t>(id) <= trace.extracted.size(); };
        for (int id : overrides.include) {
            if (known(id)) {
                ids.insert(id);
            } else {
                trace.override_ignored.push_back(id);
            }
        }
        for (int id : overrides.exclude) {
            if (known(id)) {
                ids.erase(id);
            } else {
                trace.override_ignored.push_back(id);
            }
        }
        SubGraphSet out;
        for (const auto& sg : trace.extracted) {
            if (ids.count(sg.id)) {
                out.push_back(sg);
                trace.post_override.push_back(sg.id);
            }
        }
        return out;
    });

    SentenceSet sentences;
    if (config.variant != Variant::Vanilla) {
        sentences = run_stage(trace, "sentences", [&] { return collect_sentences(selected, graph); });
        for (const auto& s : sentences) {
            trace.sentences_collected.push_back(s.ref);
        }
    }

    std::vector<std::string> blocks;
    std::vector<std::string> lines;
    run_stage(trace, "budget", [&] {
        std::vector<std::string> all_blocks;
        std::vector<std::size_t> block_tokens;
        for (const auto& sg : selected) {
            all_blocks.push_back(render_subgraph(sg, graph));
            block_tokens.push_back(text::count_tokens(all_blocks.back(), config.token_scheme));
        }
        std::vector<std::string> all_lines;
        std::vector<std::size_t> line_tokens;
        for (const auto& s : sentences) {
            all_lines.push_back(render_sentence(s));
            line_tokens.push_back(text::count_tokens(all_lines.back(), config.token_scheme));
        }

        trace.scaffold_tokens = scaffold_tokens(query, config);
        std::mt19937_64 rng(config.seed);
        const auto outcome =
            apply_budget(block_tokens, line_tokens, trace.scaffold_tokens, config.token_limit, rng, config.variant);
        trace.budget_tokens = outcome.total_tokens;
        for (auto i : outcome.kept_blocks) {
            blocks.push_back(all_blocks[i]);
            trace.final_subgraphs.push_back(selected[i].id);
        }
        for (auto i : outcome.evicted_blocks) {
            trace.evicted_subgraphs.push_back(selected[i].id);
        }
        for (auto i : outcome.kept_sentences) {
            lines.push_back(all_lines[i]);
            trace.final_sentences.push_back(sentences[i].ref);
        }
        for (auto i : outcome.evicted_sentences) {
            trace.evicted_sentences.push_back(sentences[i].ref);
        }
        return 0;
    });

    run_stage(trace, "reason", [&] {
        auto result = reason(blocks, lines, query, backend, config.templates.reason, config.variant, options);
        trace.reason_call = std::move(result.call);
        trace.prompt_tokens = text::count_tokens(config.system_prompt, config.token_scheme) +
                              text::count_tokens(trace.reason_call.prompt, config.token_scheme);
        answer.text = std::move(result.text);
        return 0;
    });

    return answer;
}

std::string answer_without_retrieval(std::string_view query, const PipelineConfig& config,
                                     llm::ChatBackend& backend) {
    PipelineTrace scratch;
    return run_stage(scratch, "reason", [&] {
        return reason({}, {}, query, backend, config.templates.reason, Variant::Vanilla, call_options(config)).text;
    });
}

nlohmann::json to_json(const Answer& answer, bool include_timings) {
    return {{"answer", answer.text}, {"trace", to_json(answer.trace, include_timings)}};
}

}  // namespace graphrag::pipeline
