#pragma once

#include <cstdint>
#include <string>

#include "agora/backend.hpp"

namespace agora {

enum class OraclePolicyKind { ground_truth, uniform_random, imitate };
std::string to_string(OraclePolicyKind k);
OraclePolicyKind oracle_policy_from_string(const std::string& s);

struct OraclePolicy {
    OraclePolicyKind kind = OraclePolicyKind::uniform_random;
    double alpha = 0.0;              // imitate: ceiling probability of copying the crowd
    double half_saturation = 25.0;   // imitate: observed-count scale at which the
                                     // crowd signal reaches half strength
    std::uint64_t seed = 1;
};

// Scripted selections on top of stub chat/embed behavior. ground_truth always
// returns the hidden truth set; uniform_random samples without replacement;
// imitate copies the most-purchased visible candidate with probability
// alpha * C / (C + half_saturation) where C is that candidate's visible
// count, else picks uniformly. imitate(alpha=0) is exactly uniform_random.
class OracleBackend : public Backend {
public:
    OracleBackend(OraclePolicy policy, std::size_t embedding_dim = 64)
        : policy_(policy), embedding_dim_(embedding_dim) {}

    ChatResult chat(const ChatRequest& req, MeterCategory category) override;
    EmbeddingVector embed(const std::string& text, MeterCategory category) override;
    std::optional<std::vector<std::string>> select_items(const SelectionContext& ctx) override;
    std::string kind_name() const override { return "oracle:" + to_string(policy_.kind); }

    const OraclePolicy& policy() const { return policy_; }

private:
    OraclePolicy policy_;
    std::size_t embedding_dim_;
};

// The bare policy, exposed for direct tests.
std::vector<std::string> oracle_select(const OraclePolicy& policy, const SelectionContext& ctx);

} // namespace agora
