#include "agora/backend.hpp"

#include <cmath>

#include "agora/errors.hpp"

namespace agora {

std::string ChatRequest::flattened_text() const {
    std::string out;
    for (const auto& msg : messages) {
        for (const auto& part : msg.parts) {
            out += part.text;
            out += '\n';
        }
    }
    return out;
}

std::string to_string(MeterCategory c) {
    switch (c) {
        case MeterCategory::memory: return "memory";
        case MeterCategory::prompting: return "prompting";
        case MeterCategory::planning: return "planning";
        case MeterCategory::reflection: return "reflection";
        case MeterCategory::social: return "social";
    }
    return "unknown";
}

void TokenMeter::record(MeterCategory category, TokenUsage usage) {
    std::lock_guard lock(mu_);
    per_category_[static_cast<std::size_t>(category)] += usage;
    ++call_count_;
    records_.push_back({category, usage});
}

MeterSnapshot TokenMeter::snapshot() const {
    std::lock_guard lock(mu_);
    MeterSnapshot s;
    s.per_category = per_category_;
    s.call_count = call_count_;
    return s;
}

std::vector<TokenMeter::CallRecord> TokenMeter::records() const {
    std::lock_guard lock(mu_);
    return records_;
}

std::uint64_t TokenMeter::call_count() const {
    std::lock_guard lock(mu_);
    return call_count_;
}

void TokenMeter::restore(const MeterSnapshot& s) {
    std::lock_guard lock(mu_);
    per_category_ = s.per_category;
    call_count_ = s.call_count;
    records_.clear();
}

void EmbeddingVector::normalize() {
    double norm_sq = 0.0;
    for (double v : values) norm_sq += v * v;
    if (norm_sq <= 0.0) throw ValidationError("cannot normalize a zero embedding");
    const double inv = 1.0 / std::sqrt(norm_sq);
    for (double& v : values) v *= inv;
}

double cosine_similarity(const EmbeddingVector& a, const EmbeddingVector& b) {
    if (a.dimension() != b.dimension()) {
        throw ValidationError("embedding dimension mismatch: " + std::to_string(a.dimension()) +
                              " vs " + std::to_string(b.dimension()));
    }
    double dot = 0.0, na = 0.0, nb = 0.0;
    for (std::size_t i = 0; i < a.values.size(); ++i) {
        dot += a.values[i] * b.values[i];
        na += a.values[i] * a.values[i];
        nb += b.values[i] * b.values[i];
    }
    if (na <= 0.0 || nb <= 0.0) return 0.0;
    return dot / (std::sqrt(na) * std::sqrt(nb));
}

} // namespace agora
