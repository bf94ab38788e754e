#include "agora/oracle_backend.hpp"

#include <algorithm>

#include "agora/errors.hpp"
#include "agora/rng.hpp"
#include "agora/stub_backend.hpp"

namespace agora {

std::string to_string(OraclePolicyKind k) {
    switch (k) {
        case OraclePolicyKind::ground_truth: return "ground_truth";
        case OraclePolicyKind::uniform_random: return "uniform_random";
        case OraclePolicyKind::imitate: return "imitate";
    }
    return "unknown";
}

OraclePolicyKind oracle_policy_from_string(const std::string& s) {
    if (s == "ground_truth") return OraclePolicyKind::ground_truth;
    if (s == "uniform_random") return OraclePolicyKind::uniform_random;
    if (s == "imitate") return OraclePolicyKind::imitate;
    throw ParamError("unknown oracle policy: " + s);
}

std::vector<std::string> oracle_select(const OraclePolicy& policy, const SelectionContext& ctx) {
    if (ctx.candidates.empty()) throw ValidationError("oracle selection needs candidates");
    if (ctx.select_count == 0 || ctx.select_count > ctx.candidates.size()) {
        throw ValidationError("oracle select_count out of range");
    }

    if (policy.kind == OraclePolicyKind::ground_truth) {
        if (ctx.ground_truth_ids.empty()) {
            throw ValidationError("ground_truth policy requires ground truth in the context");
        }
        for (const auto& id : ctx.ground_truth_ids) {
            const bool present = std::any_of(
                ctx.candidates.begin(), ctx.candidates.end(),
                [&](const SelectionCandidate& c) { return c.product_id == id; });
            if (!present) {
                throw ValidationError("ground truth item absent from candidates: " + id);
            }
        }
        return ctx.ground_truth_ids;
    }

    Rng rng(derive_seed(policy.seed, ctx.rng_stream));
    std::vector<std::size_t> remaining(ctx.candidates.size());
    for (std::size_t i = 0; i < remaining.size(); ++i) remaining[i] = i;

    std::vector<std::string> picks;
    picks.reserve(ctx.select_count);
    for (std::size_t n = 0; n < ctx.select_count; ++n) {
        std::size_t chosen_slot = 0;
        bool copied = false;
        if (policy.kind == OraclePolicyKind::imitate && policy.alpha > 0.0) {
            // strongest visible crowd signal among remaining candidates
            std::size_t best_slot = 0;
            std::size_t best_count = 0;
            for (std::size_t s = 0; s < remaining.size(); ++s) {
                const auto& c = ctx.candidates[remaining[s]];
                if (c.purchase_count > best_count) {
                    best_count = c.purchase_count;
                    best_slot = s;
                }
            }
            if (best_count > 0) {
                const double strength =
                    static_cast<double>(best_count) /
                    (static_cast<double>(best_count) + policy.half_saturation);
                if (rng.bernoulli(policy.alpha * strength)) {
                    chosen_slot = best_slot;
                    copied = true;
                }
            }
        }
        if (!copied) chosen_slot = rng.index(remaining.size());
        picks.push_back(ctx.candidates[remaining[chosen_slot]].product_id);
        remaining.erase(remaining.begin() + static_cast<std::ptrdiff_t>(chosen_slot));
    }
    return picks;
}

ChatResult OracleBackend::chat(const ChatRequest& req, MeterCategory category) {
    ChatResult result;
    result.text = stub_reply(req);
    result.usage = estimate_usage(req.char_count(), result.text.size());
    meter_.record(category, result.usage);
    return result;
}

EmbeddingVector OracleBackend::embed(const std::string& text, MeterCategory category) {
    EmbeddingVector v = stub_embedding(text, embedding_dim_);
    meter_.record(category, estimate_usage(text.size(), 0));
    return v;
}

std::optional<std::vector<std::string>> OracleBackend::select_items(const SelectionContext& ctx) {
    // Without ground truth in the context the ground-truth policy has nothing
    // to script; defer to prompting (free simulation).
    if (policy_.kind == OraclePolicyKind::ground_truth && ctx.ground_truth_ids.empty()) {
        return std::nullopt;
    }
    return oracle_select(policy_, ctx);
}

} // namespace agora
