#pragma once

#include <cstdint>
#include <string>

#include "agora/backend.hpp"

namespace agora {

struct RemoteConfig {
    std::string base_url = "http://localhost:8080";  // scheme://host[:port]
    std::string path_prefix = "/v1";
    std::string chat_model = "gpt-4-1106-preview";
    std::string embed_model = "text-embedding-ada-002";
    std::string api_key;  // usually injected from the environment
    int max_retries = 3;
    int backoff_base_ms = 500;
    int backoff_cap_ms = 8000;
    int timeout_seconds = 60;
    int max_in_flight = 4;
};

// Wire client for OpenAI-compatible /chat/completions and /embeddings
// endpoints. Transient failures (connect errors, 408/429/5xx) retry with
// exponential backoff up to the budget; each logical call carries a stable
// X-Request-Id so retried payloads are deduplicatable server-side.
class RemoteBackend : public Backend {
public:
    explicit RemoteBackend(RemoteConfig config);
    ~RemoteBackend() override;

    ChatResult chat(const ChatRequest& req, MeterCategory category) override;
    EmbeddingVector embed(const std::string& text, MeterCategory category) override;
    std::string kind_name() const override { return "remote"; }

    const RemoteConfig& config() const { return config_; }

private:
    struct Impl;
    std::string post_json(const std::string& path, const std::string& body);

    RemoteConfig config_;
    std::unique_ptr<Impl> impl_;
};

} // namespace agora
