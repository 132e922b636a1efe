#pragma once

#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

namespace graphrag::llm {

struct ChatRequest {
    std::string system_prompt;
    std::string user_prompt;
    double temperature = 0.0;
    int max_output_tokens = 1024;
    /// Which pipeline step issued the call ("retrieve", "filter", "reason",
    /// "generate") and the bindings the user prompt was rendered from. Remote
    /// backends ignore both; the mock backend answers from them.
    std::string task;
    std::map<std::string, std::string> fields;
};

struct Usage {
    long prompt_tokens = 0;
    long completion_tokens = 0;
};

struct ChatResponse {
    std::string text;
    std::optional<Usage> usage;
};

enum class LlmErrorKind { Transport, AuthFailure, BudgetExceeded, Timeout, Protocol };

std::string_view to_string(LlmErrorKind kind);

class LlmError : public std::runtime_error {
public:
    LlmError(LlmErrorKind kind, const std::string& message, int status = 0);

    LlmErrorKind kind() const noexcept { return kind_; }
    /// HTTP status when one was received, else 0.
    int status() const noexcept { return status_; }

private:
    LlmErrorKind kind_;
    int status_;
};

/// Chat-completion backend. Implementations are stateless per request and
/// safe to call concurrently.
class ChatBackend {
public:
    virtual ~ChatBackend() = default;

    virtual ChatResponse complete(const ChatRequest& request) = 0;
    virtual std::string_view kind() const = 0;
};

}  // namespace graphrag::llm
