#include "graphrag/pipeline/stages.hpp"

#include "graphrag/pipeline/subgraph.hpp"
#include "graphrag/text/unicode.hpp"

#include <nlohmann/json.hpp>

#include <algorithm>
#include <charconv>
#include <set>

namespace graphrag::pipeline {

using nlohmann::json;

namespace {

llm::ChatRequest make_request(std::string task, std::string prompt, llm::Bindings fields, const CallOptions& options) {
    llm::ChatRequest req;
    req.system_prompt = options.system_prompt;
    req.user_prompt = std::move(prompt);
    req.temperature = options.temperature;
    req.max_output_tokens = options.max_output_tokens;
    req.task = std::move(task);
    req.fields = std::move(fields);
    return req;
}

bool has_word_char(std::string_view s) {
    for (char32_t cp : text::decode_utf8(s)) {
        if (text::is_word_char(cp) || text::is_cjk(cp)) {
            return true;
        }
    }
    return false;
}

/// Strips list bullets ("-", "*", "•", "1.", "2)") and surrounding quotes.
std::string clean_term(std::string_view raw) {
    auto s = text::trim(raw);
    for (std::string_view bullet : {"- ", "* ", "• ", "・"}) {
        if (s.starts_with(bullet)) {
            s = text::trim(s.substr(bullet.size()));
        }
    }
    std::size_t digits = 0;
    while (digits < s.size() && s[digits] >= '0' && s[digits] <= '9') {
        ++digits;
    }
    if (digits > 0 && digits + 1 < s.size() && (s[digits] == '.' || s[digits] == ')') && s[digits + 1] == ' ') {
        s = text::trim(s.substr(digits + 1));
    }
    for (std::string_view q : {"\"", "'", "`"}) {
        if (s.size() >= 2 && s.starts_with(q) && s.ends_with(q)) {
            s = text::trim(s.substr(1, s.size() - 2));
        }
    }
    for (auto [open, close] : {std::pair<std::string_view, std::string_view>{"「", "」"}, {"“", "”"}}) {
        if (s.starts_with(open) && s.ends_with(close) && s.size() >= open.size() + close.size()) {
            s = text::trim(s.substr(open.size(), s.size() - open.size() - close.size()));
        }
    }
    return std::string(s);
}

}  // namespace

std::optional<TermSet> parse_terms(std::string_view response) {
    std::vector<std::string> raw;
    bool from_json = false;
    const auto trimmed = text::trim(response);
    if (trimmed.empty()) {
        return TermSet{};
    }
    if (trimmed.front() == '[') {
        try {
            const auto doc = json::parse(trimmed);
            if (doc.is_array() && std::all_of(doc.begin(), doc.end(), [](const json& j) { return j.is_string(); })) {
                for (const auto& j : doc) {
                    raw.push_back(j.get<std::string>());
                }
                from_json = true;
            }
        } catch (const json::parse_error&) {
        }
    }
    if (!from_json) {
        std::string current;
        auto flush = [&] {
            raw.push_back(std::move(current));
            current.clear();
        };
        for (char32_t cp : text::decode_utf8(trimmed)) {
            if (cp == U'\n' || cp == U',' || cp == U'、' || cp == U'，') {
                flush();
            } else {
                text::append_utf8(current, cp);
            }
        }
        flush();
    }

    TermSet terms;
    std::set<std::string> seen;
    for (const auto& r : raw) {
        auto term = clean_term(r);
        if (term.empty() || !has_word_char(term)) {
            continue;
        }
        if (seen.insert(text::normalize_label(term)).second) {
            terms.push_back(std::move(term));
        }
    }
    if (terms.empty()) {
        return std::nullopt;
    }
    return terms;
}

std::optional<std::vector<int>> parse_selection(std::string_view response) {
    const auto trimmed = text::trim(response);
    if (trimmed.empty()) {
        return std::nullopt;
    }
    try {
        const auto doc = json::parse(trimmed);
        if (doc.is_array()) {
            std::vector<int> ids;
            for (const auto& j : doc) {
                if (!j.is_number_integer()) {
                    return std::nullopt;
                }
                ids.push_back(j.get<int>());
            }
            return ids;
        }
    } catch (const json::parse_error&) {
    }

    auto body = trimmed;
    if (body.size() >= 2 && body.front() == '[' && body.back() == ']') {
        body = body.substr(1, body.size() - 2);
    }
    std::vector<int> ids;
    std::size_t i = 0;
    while (i < body.size()) {
        const char c = body[i];
        if (c == ',' || c == ' ' || c == '\t' || c == '\n' || c == '\r') {
            ++i;
            continue;
        }
        int value = 0;
        auto [ptr, ec] = std::from_chars(body.data() + i, body.data() + body.size(), value);
        if (ec != std::errc() || ptr == body.data() + i) {
            return std::nullopt;
        }
        i = static_cast<std::size_t>(ptr - body.data());
        if (i < body.size() && body[i] != ',' && body[i] != ' ' && body[i] != '\t' && body[i] != '\n' &&
            body[i] != '\r') {
            return std::nullopt;
        }
        ids.push_back(value);
    }
    if (ids.empty()) {
        return std::nullopt;
    }
    return ids;
}

RetrieveResult retrieve_terms(std::string_view query, llm::ChatBackend& backend, const llm::PromptTemplate& tpl,
                              const CallOptions& options) {
    RetrieveResult result;
    const llm::Bindings fields{{"question", std::string(query)}};
    const auto prompt = llm::render_template(tpl, fields);

    auto response = backend.complete(make_request("retrieve", prompt, fields, options));
    result.calls.push_back({"retrieve", prompt, response.text});
    if (auto terms = parse_terms(response.text)) {
        result.terms = std::move(*terms);
        return result;
    }

    const auto strict = prompt + std::string(kStrictRetrieveSuffix);
    response = backend.complete(make_request("retrieve", strict, fields, options));
    result.calls.push_back({"retrieve", strict, response.text});
    if (auto terms = parse_terms(response.text)) {
        result.terms = std::move(*terms);
    } else {
        result.parse_failed = true;
    }
    return result;
}

std::string render_candidates(const SubGraphSet& set, const kg::KnowledgeGraph& graph) {
    std::string out;
    for (const auto& sg : set) {
        if (!out.empty()) {
            out += "\n\n";
        }
        out += "[" + std::to_string(sg.id) + "]\n" + render_subgraph(sg, graph);
    }
    return out;
}

FilterResult filter_subgraphs(const SubGraphSet& set, std::string_view query, const kg::KnowledgeGraph& graph,
                              llm::ChatBackend& backend, const llm::PromptTemplate& tpl, const CallOptions& options,
                              bool enabled) {
    FilterResult result;
    if (!enabled || set.empty()) {
        result.kept = set;
        return result;
    }

    const llm::Bindings fields{{"question", std::string(query)}, {"candidates", render_candidates(set, graph)}};
    const auto prompt = llm::render_template(tpl, fields);

    auto apply = [&](const std::vector<int>& ids) {
        const std::set<int> wanted(ids.begin(), ids.end());
        for (const auto& sg : set) {
            if (wanted.contains(sg.id)) {
                result.kept.push_back(sg);
            }
        }
    };

    auto response = backend.complete(make_request("filter", prompt, fields, options));
    result.calls.push_back({"filter", prompt, response.text});
    if (auto ids = parse_selection(response.text)) {
        apply(*ids);
        return result;
    }

    const auto strict = prompt + std::string(kStrictFilterSuffix);
    response = backend.complete(make_request("filter", strict, fields, options));
    result.calls.push_back({"filter", strict, response.text});
    if (auto ids = parse_selection(response.text)) {
        apply(*ids);
        return result;
    }

    result.kept = set;
    result.fell_back = true;
    return result;
}

SentenceSet collect_sentences(const SubGraphSet& kept, const kg::KnowledgeGraph& graph) {
    std::vector<std::string> edges;
    for (const auto& sg : kept) {
        edges.insert(edges.end(), sg.edges.begin(), sg.edges.end());
    }
    return graph.sentences_for(edges);
}

std::string render_sentence(const kg::SentenceRecord& sentence) {
    return "- " + sentence.text;
}

std::string join_blocks(const std::vector<std::string>& blocks) {
    std::string out;
    for (const auto& b : blocks) {
        if (!out.empty()) {
            out += "\n\n";
        }
        out += b;
    }
    return out;
}

std::string join_sentences(const std::vector<std::string>& lines) {
    std::string out;
    for (const auto& l : lines) {
        if (!out.empty()) {
            out += "\n";
        }
        out += l;
    }
    return out;
}

ReasonResult reason(const std::vector<std::string>& blocks, const std::vector<std::string>& sentence_lines,
                    std::string_view query, llm::ChatBackend& backend, const llm::PromptTemplate& tpl,
                    Variant variant, const CallOptions& options) {
    const bool use_blocks = variant != Variant::OnlySentences;
    const bool use_sentences = variant != Variant::Vanilla;
    const llm::Bindings fields{
        {"question", std::string(query)},
        {"subgraphs", use_blocks ? join_blocks(blocks) : std::string()},
        {"sentences", use_sentences ? join_sentences(sentence_lines) : std::string()},
    };
    const auto prompt = llm::render_template(tpl, fields);
    auto response = backend.complete(make_request("reason", prompt, fields, options));
    return ReasonResult{response.text, LlmCall{"reason", prompt, response.text}};
}

}  // namespace graphrag::pipeline
