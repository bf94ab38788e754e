#include "agora/remote_backend.hpp"

#include <atomic>
#include <chrono>
#include <condition_variable>
#include <mutex>
#include <thread>

#include <httplib.h>
#include <nlohmann/json.hpp>

#include "agora/errors.hpp"
#include "agora/rng.hpp"

namespace agora {

using nlohmann::json;

namespace {

// Counting gate for the max-in-flight limit (kept local; <semaphore> is
// avoided for wider toolchain compatibility).
class Gate {
public:
    explicit Gate(int slots) : slots_(slots) {}
    void acquire() {
        std::unique_lock lock(mu_);
        cv_.wait(lock, [&] { return slots_ > 0; });
        --slots_;
    }
    void release() {
        {
            std::lock_guard lock(mu_);
            ++slots_;
        }
        cv_.notify_one();
    }

private:
    std::mutex mu_;
    std::condition_variable cv_;
    int slots_;
};

struct GateHold {
    explicit GateHold(Gate& g) : gate(g) { gate.acquire(); }
    ~GateHold() { gate.release(); }
    Gate& gate;
};

const char* role_name(Role r) {
    switch (r) {
        case Role::system: return "system";
        case Role::user: return "user";
        case Role::assistant: return "assistant";
    }
    return "user";
}

json message_to_json(const ChatMessage& msg) {
    json content = json::array();
    for (const auto& part : msg.parts) {
        if (part.kind == MessagePart::Kind::text) {
            content.push_back({{"type", "text"}, {"text", part.text}});
        } else {
            content.push_back({{"type", "image_url"}, {"image_url", {{"url", part.image_ref}}}});
            if (!part.text.empty()) {
                content.push_back({{"type", "text"}, {"text", "image caption: " + part.text}});
            }
        }
    }
    return {{"role", role_name(msg.role)}, {"content", std::move(content)}};
}

bool retriable_status(int status) {
    return status == 408 || status == 429 || status >= 500;
}

} // namespace

struct RemoteBackend::Impl {
    Impl(const std::string& base_url, int timeout_seconds, int max_in_flight)
        : client(base_url), gate(max_in_flight) {
        client.set_connection_timeout(timeout_seconds);
        client.set_read_timeout(timeout_seconds);
        client.set_write_timeout(timeout_seconds);
    }
    httplib::Client client;
    Gate gate;
    std::atomic<std::uint64_t> call_seq{0};
};

RemoteBackend::RemoteBackend(RemoteConfig config)
    : config_(std::move(config)),
      impl_(std::make_unique<Impl>(config_.base_url, config_.timeout_seconds,
                                   std::max(1, config_.max_in_flight))) {}

RemoteBackend::~RemoteBackend() = default;

std::string RemoteBackend::post_json(const std::string& path, const std::string& body) {
    const std::uint64_t seq = impl_->call_seq.fetch_add(1);
    // Stable per logical call, identical across retries of the same payload.
    char request_id[33];
    std::snprintf(request_id, sizeof(request_id), "%016llx%016llx",
                  static_cast<unsigned long long>(fnv1a(body)),
                  static_cast<unsigned long long>(seq));

    httplib::Headers headers = {{"X-Request-Id", request_id}};
    if (!config_.api_key.empty()) {
        headers.emplace("Authorization", "Bearer " + config_.api_key);
    }

    std::string last_error;
    for (int attempt = 0; attempt <= config_.max_retries; ++attempt) {
        if (attempt > 0) {
            const int shift = attempt - 1;
            long delay = static_cast<long>(config_.backoff_base_ms) << shift;
            delay = std::min<long>(delay, config_.backoff_cap_ms);
            std::this_thread::sleep_for(std::chrono::milliseconds(delay));
        }
        GateHold hold(impl_->gate);
        auto res = impl_->client.Post((config_.path_prefix + path).c_str(), headers, body,
                                      "application/json");
        if (!res) {
            last_error = "transport error: " + httplib::to_string(res.error());
            continue;
        }
        if (res->status == 200) return res->body;
        if (retriable_status(res->status)) {
            last_error = "HTTP " + std::to_string(res->status);
            continue;
        }
        throw BackendError("remote call failed with HTTP " + std::to_string(res->status) + ": " +
                               res->body.substr(0, 200),
                           /*retriable=*/false);
    }
    throw BackendError("remote call exhausted " + std::to_string(config_.max_retries) +
                           " retries (" + last_error + ")",
                       /*retriable=*/true);
}

ChatResult RemoteBackend::chat(const ChatRequest& req, MeterCategory category) {
    if (req.messages.empty()) throw ParamError("chat request needs at least one message");
    json body = {
        {"model", config_.chat_model},
        {"max_tokens", req.max_output_tokens},
        {"temperature", req.temperature},
        {"messages", json::array()},
    };
    for (const auto& msg : req.messages) body["messages"].push_back(message_to_json(msg));

    const std::string raw = post_json("/chat/completions", body.dump());

    ChatResult result;
    try {
        const json reply = json::parse(raw);
        const auto& message = reply.at("choices").at(0).at("message");
        if (message.at("content").is_string()) {
            result.text = message.at("content").get<std::string>();
        } else {
            for (const auto& part : message.at("content")) {
                if (part.value("type", "") == "text") result.text += part.value("text", "");
            }
        }
        if (reply.contains("usage")) {
            result.usage.input_tokens = reply["usage"].value("prompt_tokens", std::uint64_t{0});
            result.usage.output_tokens =
                reply["usage"].value("completion_tokens", std::uint64_t{0});
        }
    } catch (const json::exception& e) {
        throw BackendError(std::string("malformed chat-completions response: ") + e.what(),
                           /*retriable=*/false);
    }
    if (result.usage == TokenUsage{}) {
        result.usage = {(req.char_count() + 3) / 4, (result.text.size() + 3) / 4};
    }
    meter_.record(category, result.usage);
    return result;
}

EmbeddingVector RemoteBackend::embed(const std::string& text, MeterCategory category) {
    if (text.empty()) throw ParamError("cannot embed empty text");
    const json body = {{"model", config_.embed_model}, {"input", text}};
    const std::string raw = post_json("/embeddings", body.dump());

    EmbeddingVector v;
    TokenUsage usage;
    try {
        const json reply = json::parse(raw);
        for (const auto& x : reply.at("data").at(0).at("embedding")) {
            v.values.push_back(x.get<double>());
        }
        if (reply.contains("usage")) {
            usage.input_tokens = reply["usage"].value("prompt_tokens", std::uint64_t{0});
        }
    } catch (const json::exception& e) {
        throw BackendError(std::string("malformed embeddings response: ") + e.what(),
                           /*retriable=*/false);
    }
    if (v.values.empty()) {
        throw BackendError("embeddings response carried an empty vector", /*retriable=*/false);
    }
    v.normalize();
    if (usage == TokenUsage{}) usage = {(text.size() + 3) / 4, 0};
    meter_.record(category, usage);
    return v;
}

} // namespace agora
