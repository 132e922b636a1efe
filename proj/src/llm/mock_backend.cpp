#include "graphrag/llm/mock_backend.hpp"

#include "graphrag/text/unicode.hpp"

#include <nlohmann/json.hpp>

#include <algorithm>
#include <set>
#include <string_view>

namespace graphrag::llm {

namespace {

constexpr std::string_view kStopwords[] = {
    "about", "after", "also", "and", "are", "been", "before", "being", "can", "could", "did", "does",
    "during", "for", "from", "had", "has", "have", "how", "into", "its", "not", "our", "should",
    "than", "that", "the", "their", "then", "there", "these", "they", "this", "those", "was", "were",
    "what", "when", "where", "which", "while", "who", "why", "will", "with", "would", "you", "your",
};

bool is_hiragana(char32_t cp) {
    return cp >= 0x3040 && cp <= 0x309F;
}

std::u32string to_u32(std::string_view s) {
    auto cps = text::decode_utf8(s);
    return {cps.begin(), cps.end()};
}

bool plain_word_char(char32_t cp) {
    return text::is_word_char(cp) && !text::is_cjk(cp);
}

/// First occurrence of `needle` in `hay` whose ends do not cut through a
/// non-CJK word.
std::optional<std::size_t> find_bounded(const std::u32string& hay, const std::u32string& needle) {
    std::size_t from = 0;
    while (true) {
        const auto pos = hay.find(needle, from);
        if (pos == std::u32string::npos) {
            return std::nullopt;
        }
        const auto end = pos + needle.size();
        const bool left_ok = !plain_word_char(needle.front()) || pos == 0 || !plain_word_char(hay[pos - 1]);
        const bool right_ok = !plain_word_char(needle.back()) || end == hay.size() || !plain_word_char(hay[end]);
        if (left_ok && right_ok) {
            return pos;
        }
        from = pos + 1;
    }
}

const std::string& field(const ChatRequest& request, const std::string& name) {
    static const std::string empty;
    auto it = request.fields.find(name);
    return it == request.fields.end() ? empty : it->second;
}

}  // namespace

std::vector<std::string> content_tokens(std::string_view text) {
    std::vector<std::string> out;
    for (auto& token : text::tokenize(text, text::TokenScheme::UnicodeWordsCjkChars)) {
        const auto cps = text::decode_utf8(token);
        if (cps.size() == 1 && text::is_cjk(cps[0])) {
            if (!is_hiragana(cps[0])) {
                out.push_back(std::move(token));
            }
            continue;
        }
        if (cps.size() < 3) {
            continue;
        }
        if (std::find(std::begin(kStopwords), std::end(kStopwords), token) != std::end(kStopwords)) {
            continue;
        }
        out.push_back(std::move(token));
    }
    return out;
}

std::string first_sentence(std::string_view text) {
    const auto cps = text::decode_utf8(text::trim(text));
    std::string out;
    for (std::size_t i = 0; i < cps.size(); ++i) {
        const char32_t cp = cps[i];
        text::append_utf8(out, cp);
        if (cp == U'。' || cp == U'！' || cp == U'？') {
            break;
        }
        if ((cp == U'.' || cp == U'!' || cp == U'?') && (i + 1 == cps.size() || text::is_space(cps[i + 1]))) {
            break;
        }
    }
    return out;
}

MockBackend::MockBackend(MockPolicy policy) : policy_(std::move(policy)) {
    normalized_lexicon_.reserve(policy_.lexicon.size());
    for (const auto& entry : policy_.lexicon) {
        normalized_lexicon_.push_back(to_u32(text::normalize_label(entry)));
    }
}

ChatResponse MockBackend::complete(const ChatRequest& request) {
    if (policy_.context_limit) {
        const auto used = text::count_tokens(request.system_prompt, policy_.context_scheme) +
                          text::count_tokens(request.user_prompt, policy_.context_scheme);
        if (used > *policy_.context_limit) {
            throw LlmError(LlmErrorKind::BudgetExceeded, "prompt of " + std::to_string(used) +
                                                             " tokens exceeds context limit " +
                                                             std::to_string(*policy_.context_limit));
        }
    }

    ChatResponse response;
    if (request.task == "retrieve") {
        const auto question = to_u32(text::normalize_label(field(request, "question")));
        struct Hit {
            std::size_t pos;
            std::size_t length;
            std::size_t index;
        };
        std::vector<Hit> hits;
        std::set<std::u32string> seen;
        for (std::size_t i = 0; i < normalized_lexicon_.size(); ++i) {
            const auto& entry = normalized_lexicon_[i];
            if (entry.empty() || !seen.insert(entry).second) {
                continue;
            }
            if (auto pos = find_bounded(question, entry)) {
                hits.push_back({*pos, entry.size(), i});
            }
        }
        std::sort(hits.begin(), hits.end(), [](const Hit& a, const Hit& b) {
            if (a.pos != b.pos) return a.pos < b.pos;
            if (a.length != b.length) return a.length > b.length;
            return a.index < b.index;
        });
        for (const auto& hit : hits) {
            if (!response.text.empty()) {
                response.text += "\n";
            }
            response.text += policy_.lexicon[hit.index];
        }
    } else if (request.task == "filter") {
        const auto wanted = content_tokens(field(request, "question"));
        const std::set<std::string> question_tokens(wanted.begin(), wanted.end());

        // Candidates are "[id]" header lines followed by their block text.
        std::vector<std::pair<long, std::string>> candidates;
        std::string_view rest = field(request, "candidates");
        while (!rest.empty()) {
            const auto nl = rest.find('\n');
            const auto line = rest.substr(0, nl);
            rest = nl == std::string_view::npos ? std::string_view{} : rest.substr(nl + 1);
            const auto trimmed = text::trim(line);
            if (trimmed.size() > 2 && trimmed.front() == '[') {
                const auto close = trimmed.find(']');
                const auto digits = trimmed.substr(1, close == std::string_view::npos ? 0 : close - 1);
                if (!digits.empty() && digits.size() <= 9 && std::all_of(digits.begin(), digits.end(), [](char c) {
                        return c >= '0' && c <= '9';
                    })) {
                    candidates.emplace_back(std::stol(std::string(digits)), std::string(trimmed.substr(close + 1)));
                    continue;
                }
            }
            if (!candidates.empty()) {
                candidates.back().second += "\n";
                candidates.back().second += line;
            }
        }

        nlohmann::json kept = nlohmann::json::array();
        for (const auto& [id, body] : candidates) {
            for (const auto& token : content_tokens(body)) {
                if (question_tokens.contains(token)) {
                    kept.push_back(id);
                    break;
                }
            }
        }
        response.text = kept.dump();
    } else if (request.task == "reason") {
        response.text = policy_.reason_preamble;
        for (const auto* section : {&field(request, "subgraphs"), &field(request, "sentences")}) {
            if (!text::trim(*section).empty()) {
                response.text += "\n";
                response.text += *section;
            }
        }
    } else if (request.task == "generate") {
        const auto& doc_id = field(request, "doc_id");
        nlohmann::json pairs = nlohmann::json::array();
        pairs.push_back({{"question", policy_.question_stem + " " + doc_id + "?"},
                         {"answer", first_sentence(field(request, "document"))}});
        response.text = pairs.dump();
    }

    response.usage = Usage{
        static_cast<long>(text::count_tokens(request.system_prompt, policy_.context_scheme) +
                          text::count_tokens(request.user_prompt, policy_.context_scheme)),
        static_cast<long>(text::count_tokens(response.text, policy_.context_scheme)),
    };
    return response;
}

}  // namespace graphrag::llm
