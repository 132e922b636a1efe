#include "graphrag/llm/template.hpp"

#include "default_prompts.hpp"

#include <algorithm>
#include <fstream>
#include <iterator>

namespace graphrag::llm {

MissingBinding::MissingBinding(std::string placeholder)
    : std::runtime_error("MissingBinding: no value for placeholder {" + placeholder + "}"),
      placeholder_(std::move(placeholder)) {}

namespace {

bool is_name_char(char c) {
    return (c >= 'a' && c <= 'z') || c == '_';
}

/// Walks the body, calling on_text for literal runs and on_placeholder for
/// each `{name}`.
template <typename OnText, typename OnPlaceholder>
void scan(const std::string& body, OnText on_text, OnPlaceholder on_placeholder) {
    std::size_t i = 0;
    while (i < body.size()) {
        const char c = body[i];
        if ((c == '{' || c == '}') && i + 1 < body.size() && body[i + 1] == c) {
            on_text(std::string_view(&body[i], 1));
            i += 2;
            continue;
        }
        if (c == '{') {
            std::size_t j = i + 1;
            while (j < body.size() && is_name_char(body[j])) {
                ++j;
            }
            if (j > i + 1 && j < body.size() && body[j] == '}') {
                on_placeholder(body.substr(i + 1, j - i - 1));
                i = j + 1;
                continue;
            }
        }
        on_text(std::string_view(&body[i], 1));
        ++i;
    }
}

}  // namespace

std::string render_template(const PromptTemplate& tpl, const Bindings& bindings) {
    std::string out;
    out.reserve(tpl.body.size());
    scan(
        tpl.body, [&](std::string_view text) { out.append(text); },
        [&](const std::string& name) {
            auto it = bindings.find(name);
            if (it == bindings.end()) {
                throw MissingBinding(name);
            }
            out.append(it->second);
        });
    return out;
}

std::vector<std::string> placeholders(const PromptTemplate& tpl) {
    std::vector<std::string> names;
    scan(
        tpl.body, [](std::string_view) {},
        [&](const std::string& name) {
            if (std::find(names.begin(), names.end(), name) == names.end()) {
                names.push_back(name);
            }
        });
    return names;
}

PromptSet default_prompts() {
    return PromptSet{
        {"retrieve", std::string(prompts::kRetrieve)},
        {"filter", std::string(prompts::kFilter)},
        {"reason", std::string(prompts::kReason)},
        {"generate", std::string(prompts::kGenerate)},
    };
}

PromptSet load_prompts(const std::filesystem::path& dir) {
    auto set = default_prompts();
    for (auto* tpl : {&set.retrieve, &set.filter, &set.reason, &set.generate}) {
        const auto path = dir / (tpl->name + ".txt");
        std::ifstream in(path, std::ios::binary);
        if (in) {
            tpl->body.assign(std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>());
        }
    }
    return set;
}

}  // namespace graphrag::llm
