#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "agora/actions.hpp"
#include "agora/backend.hpp"
#include "agora/memory.hpp"
#include "agora/persona.hpp"

namespace agora {

struct ActionDecision {
    ActionType action = ActionType::idle;
    std::optional<int> friend_id;           // chat
    std::vector<std::string> product_ids;   // purchase / view_details targets
    std::string query;                      // search
    std::string rationale;                  // stage-1 summary, kept for the log
    bool fallback = false;                  // idle fallback after an illegal reply

    void validate() const;  // target kind must match the action kind
};

struct Plan {
    std::string text;
    int horizon = 5;
    int made_at = 0;
};

struct Reflection {
    std::vector<std::string> questions;
    std::vector<std::string> insights;
};

// What a deciding agent can currently see. Built by the world (or the eval
// harness) from the agent's session context; stage 2 of the decision
// pipeline renders it into the prompt.
struct EnvItem {
    std::string product_id;
    std::string title;
    std::string category;
    std::string caption;
    double price = 0.0;
    int social_score = 0;                // +positive/-negative mentions in memory
    std::vector<std::string> notes;      // social note snippets (prompt context)
    std::size_t purchase_count = 0;      // visible popularity
};

struct EnvironmentView {
    int round = 0;
    std::string mode = "none";           // none | shopping | social | eval
    ActionType last_action = ActionType::idle;
    std::uint64_t tick = 0;              // deterministic per-(seed,round,agent) value
    std::vector<ActionType> legal;
    std::vector<EnvItem> items;
    std::vector<int> friend_ids;
    std::size_t select_count = 0;        // >0: selection mode (pick exactly this many)

    // Harness-only: ground truth for scripted oracle policies. Never rendered
    // into any prompt; the deciding agent cannot see it.
    std::vector<std::string> hidden_ground_truth;
};

enum class AgentMode { none, shopping, social };
std::string to_string(AgentMode m);
AgentMode agent_mode_from_string(const std::string& s);

// Full per-agent state. Single-owner: one actor at a time.
struct AgentState {
    int id = 0;
    Persona persona;
    bool superstar = false;
    MemoryStore memory;
    std::optional<Plan> plan;
    double importance_since_reflection = 0.0;
    std::string last_observation;

    // session context
    AgentMode mode = AgentMode::none;
    ActionType last_action = ActionType::idle;
    std::vector<std::string> visible_products;
    int page_index = 0;
    std::string viewed_product;
    std::string last_purchased;
};

struct ReflectionConfig {
    double threshold = 3.0;          // cumulative importance since last reflection
    double insight_importance = 0.8; // importance assigned to stored insights
    std::size_t memories_considered = 8;
};

// One backend call from persona plus retrieved memories; the plan text is
// also ingested into short-term memory by the caller.
Plan make_plan(const AgentState& agent, Backend& backend, int round);

// Two backend calls (salient questions, then insights); insights are written
// to long-term memory. No-op (nullopt) below the importance threshold.
std::optional<Reflection> maybe_reflect(AgentState& agent, Backend& backend, int round,
                                        const ReflectionConfig& cfg);

// Stage 1: persona-only intent summary. The prompt sees the persona, the
// last observation, and retrieved memories -- never the environment.
std::string summarize_stage1(const Persona& persona, const std::string& last_observation,
                             const std::vector<RetrievedRecord>& retrieved, Backend& backend);

struct DecisionOutcome {
    ActionDecision decision;
    bool reprompted = false;
    bool violation = false;  // fell back to idle after reprompt
};

// Stage 2: combine the stage-1 summary with the environment and pick one
// legal action. An illegal or unparseable reply triggers one reprompt, then
// an idle fallback with the violation flagged.
DecisionOutcome decide_stage2(const std::string& stage1_summary, const EnvironmentView& env,
                              Backend& backend);

} // namespace agora
