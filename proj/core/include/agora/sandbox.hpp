#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <string>
#include <vector>

#include "agora/agent.hpp"
#include "agora/catalog.hpp"
#include "agora/event_log.hpp"
#include "agora/graph.hpp"
#include "agora/memory.hpp"
#include "agora/sim_config.hpp"

namespace agora {

inline constexpr int kSnapshotFormatVersion = 1;

struct SocialEvent {
    enum class Kind { chat, post, live_stream, injected_info };
    Kind kind = Kind::chat;
    int sender = -1;  // -1: harness-authored
    std::vector<int> recipients;
    std::string content;
    std::string product_id;  // optional
    std::string polarity = "neutral";
    int round = 0;
};
std::string to_string(SocialEvent::Kind k);
SocialEvent::Kind social_kind_from_string(const std::string& s);

struct PurchaseEntry {
    int agent = 0;
    std::string product_id;
    int round = 0;
};

// Evaluation candidate list: the hidden truth items mixed with b random
// distractors, order seeded-shuffled.
struct RecommendationList {
    std::string user_id;
    std::vector<std::string> items;
    std::vector<std::string> ground_truth_ids;
};

RecommendationList build_recommendation_list(const std::vector<std::string>& truth_ids, int b,
                                             const Catalog& catalog, std::uint64_t seed);

// Simple sentiment lexicon scan over an agent's memory: positive minus
// negative mentions of the product id, plus up to two note snippets.
int social_score_for(const MemoryStore& memory, const std::string& product_id,
                     std::vector<std::string>* notes = nullptr);
std::string detect_polarity(const std::string& content);

struct WorldState {
    Catalog catalog;
    RelationGraph graph;
    std::vector<AgentState> agents;
    // messages delivered this round, visible to recipients from the next round
    std::vector<std::vector<SocialEvent>> inboxes;
    std::vector<PurchaseEntry> ledger;
    int round = 0;
    EventLog log;
};

// Turn-based multi-user simulator. Agents act in ascending index order; all
// world reads during a round see the round-start state, so the optional
// parallel mode (decisions computed concurrently, effects committed in index
// order) is exactly equivalent to the serial loop.
class Simulation {
public:
    Simulation(RunConfig cfg, std::shared_ptr<Backend> backend);

    void initialize();  // graph, personas, memory bank
    void run();         // rounds until T (or run.stop_after)
    void run_round();

    WorldState& world() { return world_; }
    const WorldState& world() const { return world_; }
    const RunConfig& config() const { return cfg_; }
    Backend& backend() { return *backend_; }
    const MemoryBank& bank() const { return bank_; }
    bool initialized() const { return initialized_; }

    // Spec surface: executes a validated decision, appends its effects to the
    // event log, and returns the actor's resulting observation.
    Observation execute_action(int agent_id, const ActionDecision& decision);

    // Harness-authored information injection, ingested by targets as
    // non-basic observations before their next decision.
    void inject_social_info(const std::vector<int>& target_agents, const std::string& product_id,
                            const std::string& polarity, const std::string& text);

    void save_snapshot(const std::string& path) const;
    static std::unique_ptr<Simulation> resume_snapshot(const std::string& path,
                                                       std::shared_ptr<Backend> backend);

private:
    struct TurnPlan;  // per-agent decision pipeline output

    void ensure_initialized();
    void snapshot_round_state();
    TurnPlan prepare_turn(int agent_id);
    void commit_turn(int agent_id, TurnPlan& plan);
    void end_of_round_sweep();
    std::vector<std::string> build_surface(const AgentState& agent, std::uint64_t salt) const;
    std::vector<std::string> search_catalog(const std::string& query) const;
    EnvironmentView build_environment(const AgentState& agent) const;
    void deliver(const SocialEvent& event);
    Observation observation_from_social(const SocialEvent& event, int recipient) const;
    void ingest_for_agent(AgentState& agent, const Observation& o, Backend& backend,
                          std::vector<Event>* out_events);
    std::string pick_stream_product(const AgentState& agent) const;

    RunConfig cfg_;
    std::shared_ptr<Backend> backend_;
    WorldState world_;
    MemoryBank bank_;
    bool initialized_ = false;

    // round-start snapshots (parallel == serial)
    std::map<std::string, std::size_t> counts_at_round_start_;
    std::string trending_at_round_start_;
    std::vector<std::vector<SocialEvent>> pending_inboxes_;
};

// Spec driver: initialize, run all rounds, return the event log.
EventLog run_simulation(const RunConfig& cfg, std::shared_ptr<Backend> backend);

} // namespace agora
