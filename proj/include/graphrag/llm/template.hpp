#pragma once

#include <filesystem>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

namespace graphrag::llm {

/// Text with `{name}` placeholders (name = [a-z_]+). `{{` and `}}` render as
/// literal braces; any other brace is literal text.
struct PromptTemplate {
    std::string name;
    std::string body;
};

class MissingBinding : public std::runtime_error {
public:
    explicit MissingBinding(std::string placeholder);

    const std::string& placeholder() const noexcept { return placeholder_; }

private:
    std::string placeholder_;
};

using Bindings = std::map<std::string, std::string>;

/// Single-pass substitution: bound text is inserted verbatim and never
/// re-scanned, so placeholders inside bindings stay literal. Bindings the
/// body does not reference are ignored.
std::string render_template(const PromptTemplate& tpl, const Bindings& bindings);

/// Placeholder names referenced by the body, in order of first use.
std::vector<std::string> placeholders(const PromptTemplate& tpl);

struct PromptSet {
    PromptTemplate retrieve;
    PromptTemplate filter;
    PromptTemplate reason;
    PromptTemplate generate;
};

/// Templates compiled in from the prompts/ directory of the source tree.
PromptSet default_prompts();

/// Reads `<dir>/<name>.txt` for each template; missing files keep the default.
PromptSet load_prompts(const std::filesystem::path& dir);

}  // namespace graphrag::llm
