#include "graphrag/llm/chat.hpp"

namespace graphrag::llm {

std::string_view to_string(LlmErrorKind kind) {
    switch (kind) {
        case LlmErrorKind::Transport: return "Transport";
        case LlmErrorKind::AuthFailure: return "AuthFailure";
        case LlmErrorKind::BudgetExceeded: return "BudgetExceeded";
        case LlmErrorKind::Timeout: return "Timeout";
        case LlmErrorKind::Protocol: return "Protocol";
    }
    return "LlmError";
}

LlmError::LlmError(LlmErrorKind kind, const std::string& message, int status)
    : std::runtime_error(std::string(to_string(kind)) + ": " + message), kind_(kind), status_(status) {}

}  // namespace graphrag::llm
