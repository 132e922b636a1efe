#include "graphrag/llm/http_backend.hpp"

#include <httplib.h>
#include <nlohmann/json.hpp>

#include <algorithm>
#include <cstdlib>
#include <thread>

namespace graphrag::llm {

using nlohmann::json;

HttpBackendConfig HttpBackendConfig::from_env() {
    HttpBackendConfig config;
    auto env = [](const char* name) {
        const char* v = std::getenv(name);
        return v == nullptr ? std::string() : std::string(v);
    };
    config.base_url = env("GRAPHRAG_API_BASE");
    config.api_key = env("GRAPHRAG_API_KEY");
    config.model = env("GRAPHRAG_MODEL");
    if (const auto retries = env("GRAPHRAG_MAX_RETRIES"); !retries.empty()) {
        config.max_retries = std::max(0, std::atoi(retries.c_str()));
    }
    return config;
}

std::chrono::milliseconds backoff_delay(int attempt, std::chrono::milliseconds initial,
                                        std::chrono::milliseconds cap) {
    auto delay = initial;
    for (int i = 0; i < attempt && delay < cap; ++i) {
        delay *= 2;
    }
    return std::min(delay, cap);
}

bool is_retryable_status(int status) {
    return status == 408 || status == 429 || (status >= 500 && status <= 599);
}

HttpBackend::HttpBackend(HttpBackendConfig config) : config_(std::move(config)) {
    if (config_.base_url.empty()) {
        throw LlmError(LlmErrorKind::Transport, "no base URL configured (GRAPHRAG_API_BASE)");
    }
    if (config_.max_in_flight < 1) {
        config_.max_in_flight = 1;
    }
    // Split "scheme://host[:port]/prefix" into the client address and path.
    const auto scheme_end = config_.base_url.find("://");
    const auto host_start = scheme_end == std::string::npos ? 0 : scheme_end + 3;
    const auto path_start = config_.base_url.find('/', host_start);
    scheme_host_port_ = config_.base_url.substr(0, path_start);
    std::string prefix = path_start == std::string::npos ? std::string() : config_.base_url.substr(path_start);
    while (!prefix.empty() && prefix.back() == '/') {
        prefix.pop_back();
    }
    path_ = prefix + "/chat/completions";
}

ChatResponse HttpBackend::complete(const ChatRequest& request) {
    if (config_.context_limit) {
        const auto used = text::count_tokens(request.system_prompt, config_.context_scheme) +
                          text::count_tokens(request.user_prompt, config_.context_scheme);
        if (used > *config_.context_limit) {
            throw LlmError(LlmErrorKind::BudgetExceeded, "prompt of " + std::to_string(used) +
                                                             " tokens exceeds context limit " +
                                                             std::to_string(*config_.context_limit));
        }
    }

    json messages = json::array();
    if (!request.system_prompt.empty()) {
        messages.push_back({{"role", "system"}, {"content", request.system_prompt}});
    }
    messages.push_back({{"role", "user"}, {"content", request.user_prompt}});
    json body = {
        {"model", config_.model},
        {"messages", messages},
        {"temperature", request.temperature},
        {"max_tokens", request.max_output_tokens},
    };

    {
        std::unique_lock lock(mutex_);
        slot_freed_.wait(lock, [&] { return in_flight_ < config_.max_in_flight; });
        ++in_flight_;
    }
    struct Release {
        HttpBackend* self;
        ~Release() {
            {
                std::lock_guard lock(self->mutex_);
                --self->in_flight_;
            }
            self->slot_freed_.notify_one();
        }
    } release{this};

    return attempt_loop(body.dump());
}

ChatResponse HttpBackend::attempt_loop(const std::string& body) {
    httplib::Headers headers;
    if (!config_.api_key.empty()) {
        headers.emplace("Authorization", "Bearer " + config_.api_key);
    }

    std::string last_error;
    bool last_was_timeout = false;
    int last_status = 0;
    for (int attempt = 0; attempt <= config_.max_retries; ++attempt) {
        if (attempt > 0) {
            std::this_thread::sleep_for(backoff_delay(attempt - 1, config_.initial_backoff, config_.max_backoff));
        }

        httplib::Client client(scheme_host_port_);
        client.set_connection_timeout(config_.connect_timeout);
        client.set_read_timeout(config_.read_timeout);
        client.set_write_timeout(config_.read_timeout);

        const auto started = std::chrono::steady_clock::now();
        auto res = client.Post(path_, headers, body, "application/json");
        if (!res) {
            const auto err = res.error();
            const auto elapsed = std::chrono::steady_clock::now() - started;
            // httplib reports an expired read timeout as a plain read error.
            last_was_timeout = err == httplib::Error::ConnectionTimeout ||
                               (err == httplib::Error::Read && elapsed >= config_.read_timeout);
            last_status = 0;
            last_error = "POST " + scheme_host_port_ + path_ + " failed: " + httplib::to_string(err);
            continue;
        }
        last_was_timeout = false;
        last_status = res->status;
        if (res->status == 401 || res->status == 403) {
            throw LlmError(LlmErrorKind::AuthFailure, "HTTP " + std::to_string(res->status) + ": " + res->body,
                           res->status);
        }
        if (is_retryable_status(res->status)) {
            last_error = "HTTP " + std::to_string(res->status);
            continue;
        }
        if (res->status < 200 || res->status >= 300) {
            throw LlmError(LlmErrorKind::Transport, "HTTP " + std::to_string(res->status) + ": " + res->body,
                           res->status);
        }

        ChatResponse out;
        try {
            const auto doc = json::parse(res->body);
            const auto& content = doc.at("choices").at(0).at("message").at("content");
            out.text = content.is_null() ? std::string() : content.get<std::string>();
            if (doc.contains("usage") && doc["usage"].is_object()) {
                const auto& usage = doc["usage"];
                out.usage = Usage{usage.value("prompt_tokens", 0L), usage.value("completion_tokens", 0L)};
            }
        } catch (const json::exception& e) {
            throw LlmError(LlmErrorKind::Protocol, std::string("unexpected response body: ") + e.what(),
                           res->status);
        }
        return out;
    }

    const auto attempts = std::to_string(config_.max_retries + 1);
    if (last_was_timeout) {
        throw LlmError(LlmErrorKind::Timeout, last_error + " (after " + attempts + " attempts)");
    }
    throw LlmError(LlmErrorKind::Transport, last_error + " (after " + attempts + " attempts)", last_status);
}

}  // namespace graphrag::llm
