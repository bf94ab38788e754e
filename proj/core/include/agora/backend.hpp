#pragma once

#include <array>
#include <cstdint>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <vector>

namespace agora {

enum class Role { system, user, assistant };

struct MessagePart {
    enum class Kind { text, image };
    Kind kind = Kind::text;
    std::string text;       // text content, or the image caption
    std::string image_ref;  // opaque image identifier (image parts only)

    static MessagePart make_text(std::string t) {
        return {Kind::text, std::move(t), {}};
    }
    static MessagePart make_image(std::string ref, std::string caption) {
        return {Kind::image, std::move(caption), std::move(ref)};
    }
};

struct ChatMessage {
    Role role = Role::user;
    std::vector<MessagePart> parts;
};

struct ChatRequest {
    std::vector<ChatMessage> messages;
    int max_output_tokens = 512;
    double temperature = 0.0;

    // All text carried by the request (text parts plus image captions).
    std::string flattened_text() const;
    std::size_t char_count() const { return flattened_text().size(); }
};

struct TokenUsage {
    std::uint64_t input_tokens = 0;
    std::uint64_t output_tokens = 0;

    TokenUsage& operator+=(const TokenUsage& o) {
        input_tokens += o.input_tokens;
        output_tokens += o.output_tokens;
        return *this;
    }
    friend TokenUsage operator+(TokenUsage a, const TokenUsage& b) { return a += b; }
    bool operator==(const TokenUsage&) const = default;
    std::uint64_t total() const { return input_tokens + output_tokens; }
};

struct ChatResult {
    std::string text;
    TokenUsage usage;
};

// Pipeline stage that pays for a backend call; drives the consumption
// breakdown reports.
enum class MeterCategory { memory, prompting, planning, reflection, social };
constexpr std::array<MeterCategory, 5> kAllMeterCategories = {
    MeterCategory::memory, MeterCategory::prompting, MeterCategory::planning,
    MeterCategory::reflection, MeterCategory::social,
};
std::string to_string(MeterCategory c);

struct MeterSnapshot {
    std::array<TokenUsage, 5> per_category{};
    std::uint64_t call_count = 0;

    TokenUsage total() const {
        TokenUsage t;
        for (const auto& u : per_category) t += u;
        return t;
    }
    TokenUsage category(MeterCategory c) const {
        return per_category[static_cast<std::size_t>(c)];
    }
};

// Thread-safe accumulator of per-call token usage. Totals never decrease;
// the per-call record list supports independent recounts.
class TokenMeter {
public:
    struct CallRecord {
        MeterCategory category;
        TokenUsage usage;
    };

    void record(MeterCategory category, TokenUsage usage);
    MeterSnapshot snapshot() const;
    std::vector<CallRecord> records() const;
    std::uint64_t call_count() const;
    void restore(const MeterSnapshot& s);  // snapshot/resume support

private:
    mutable std::mutex mu_;
    std::array<TokenUsage, 5> per_category_{};
    std::uint64_t call_count_ = 0;
    std::vector<CallRecord> records_;
};

struct EmbeddingVector {
    std::vector<double> values;
    std::size_t dimension() const { return values.size(); }
    void normalize();  // L2; throws on zero vector
};

double cosine_similarity(const EmbeddingVector& a, const EmbeddingVector& b);

// One candidate product in a selection decision.
struct SelectionCandidate {
    std::string product_id;
    std::string category;
    std::size_t purchase_count = 0;  // visible popularity signal
};

// Structured decision context for scripted selection policies.
struct SelectionContext {
    std::vector<SelectionCandidate> candidates;
    std::size_t select_count = 1;
    std::vector<std::string> ground_truth_ids;  // eval harness only
    std::uint64_t rng_stream = 0;               // per-call stream id
};

// Chat + embedding provider. Implementations: remote wire client,
// deterministic stub, scripted oracle. All calls are metered.
class Backend {
public:
    virtual ~Backend() = default;

    virtual ChatResult chat(const ChatRequest& req, MeterCategory category) = 0;
    virtual EmbeddingVector embed(const std::string& text, MeterCategory category) = 0;

    // Scripted selection hook. Non-oracle backends return nullopt and the
    // caller falls back to prompting.
    virtual std::optional<std::vector<std::string>> select_items(const SelectionContext&) {
        return std::nullopt;
    }

    virtual std::string kind_name() const = 0;

    TokenMeter& meter() { return meter_; }
    const TokenMeter& meter() const { return meter_; }

protected:
    TokenMeter meter_;
};

} // namespace agora
