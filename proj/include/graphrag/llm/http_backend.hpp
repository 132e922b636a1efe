#pragma once

#include "graphrag/llm/chat.hpp"
#include "graphrag/text/tokenize.hpp"

#include <chrono>
#include <condition_variable>
#include <mutex>
#include <optional>
#include <string>

namespace graphrag::llm {

struct HttpBackendConfig {
    /// e.g. "https://api.openai.com/v1"; requests go to {base}/chat/completions.
    std::string base_url;
    std::string model;
    std::string api_key;
    int max_retries = 3;
    std::chrono::milliseconds initial_backoff{500};
    std::chrono::milliseconds max_backoff{8000};
    std::chrono::milliseconds connect_timeout{10000};
    std::chrono::milliseconds read_timeout{120000};
    int max_in_flight = 4;
    std::optional<std::size_t> context_limit;
    text::TokenScheme context_scheme = text::TokenScheme::UnicodeWordsCjkChars;

    /// Reads GRAPHRAG_API_BASE, GRAPHRAG_API_KEY, GRAPHRAG_MODEL and, when set,
    /// GRAPHRAG_MAX_RETRIES.
    static HttpBackendConfig from_env();
};

/// Delay before retry number `attempt` (0-based): initial * 2^attempt, capped.
std::chrono::milliseconds backoff_delay(int attempt, std::chrono::milliseconds initial,
                                        std::chrono::milliseconds cap);

/// 408, 429 and 5xx.
bool is_retryable_status(int status);

class HttpBackend : public ChatBackend {
public:
    explicit HttpBackend(HttpBackendConfig config);

    ChatResponse complete(const ChatRequest& request) override;
    std::string_view kind() const override { return "http"; }

    const HttpBackendConfig& config() const noexcept { return config_; }

private:
    ChatResponse attempt_loop(const std::string& body);

    HttpBackendConfig config_;
    std::string scheme_host_port_;
    std::string path_;

    std::mutex mutex_;
    std::condition_variable slot_freed_;
    int in_flight_ = 0;
};

}  // namespace graphrag::llm
