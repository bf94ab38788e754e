#pragma once

#include <cstddef>
#include <string>

#include "agora/backend.hpp"

namespace agora {

// Deterministic offline backend: replies are pure functions of the request,
// computed by keyword rules over the prompt grammar in prompts.hpp. Token
// usage is estimated as ceil(characters / 4).
class StubBackend : public Backend {
public:
    explicit StubBackend(std::size_t embedding_dim = 64) : embedding_dim_(embedding_dim) {}

    ChatResult chat(const ChatRequest& req, MeterCategory category) override;
    EmbeddingVector embed(const std::string& text, MeterCategory category) override;
    std::string kind_name() const override { return "stub"; }

    std::size_t embedding_dim() const { return embedding_dim_; }

private:
    std::size_t embedding_dim_;
};

// Rule table shared with the scripted oracle backend.
std::string stub_reply(const ChatRequest& req);

// Token-hash embedding: lowercase word tokens hashed into `dim` buckets,
// counts L2-normalized. Identical text gives an identical vector.
EmbeddingVector stub_embedding(const std::string& text, std::size_t dim);

TokenUsage estimate_usage(std::size_t prompt_chars, std::size_t reply_chars);

} // namespace agora
