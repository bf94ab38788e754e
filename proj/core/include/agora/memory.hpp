#pragma once

#include <cstdint>
#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "agora/actions.hpp"
#include "agora/backend.hpp"

namespace agora {

struct ImageRef {
    std::string ref;      // opaque image identifier
    std::string caption;
};

// One unit of perception entering the memory pipeline. `is_basic` marks
// routine observations eligible for the bank fast path; producers of
// internal records (plans, injected info) always mark it false.
struct Observation {
    int agent_id = 0;
    int round = 0;  // simulation round index, used as the record timestamp
    std::string text;
    std::vector<ImageRef> images;
    ActionType action_type = ActionType::idle;
    bool is_basic = false;

    bool valid() const { return !text.empty() || !images.empty(); }
};

struct ShortTermRecord {
    std::string summary;
    EmbeddingVector embedding;  // unit norm
    double importance = 0.0;    // in [0,1]
    int timestamp = 0;
    int similar_hits = 0;       // count of short-term peers above the similarity threshold
};

struct LongTermRecord {
    ShortTermRecord base;
    int promoted_at = 0;
};

// Precomputed (importance, embedding, summary) per basic action type.
// Built once per society by running the slow path, then immutable and
// shared read-only by every agent.
class MemoryBank {
public:
    struct Entry {
        ActionType action_type;
        double importance = 0.0;
        EmbeddingVector embedding;
        std::string summary;
    };

    void put(Entry entry);
    const Entry* find(ActionType a) const;
    std::size_t size() const { return entries_.size(); }
    const std::vector<Entry>& entries() const { return entries_; }

private:
    std::vector<Entry> entries_;
};

enum class SweepMode { probabilistic, threshold };
std::string to_string(SweepMode m);
SweepMode sweep_mode_from_string(const std::string& s);

struct ForgettingParams {
    double beta = 1.5;   // power shape, > 0
    double delta = 0.1;  // strength floor, in (0, 1]
    SweepMode mode = SweepMode::probabilistic;
    double theta = 0.75;  // threshold-mode cutoff

    void validate() const;
};

struct RetrievalWeights {
    double relevance = 1.0;
    double importance = 1.0;
    double recency = 1.0;
};

struct RetrievedRecord {
    std::string summary;
    double importance = 0.0;
    int timestamp = 0;
    double score = 0.0;
    bool long_term = false;
};

struct IngestResult {
    ShortTermRecord record;   // as stored (pre-promotion snapshot)
    bool bank_hit = false;
    bool bank_miss = false;   // basic observation that missed the bank
    bool promoted = false;
};

// Backend-facing steps, exposed for direct testing.
std::string compress_observation(const Observation& o, Backend& backend, std::size_t summary_cap);
double rate_importance(const std::string& summary, Backend& backend);

// Normalized recency/importance forgetting score, in [0,1]; higher means
// more likely forgotten. t_hat is 1 when t_newest == t_oldest so a lone
// memory counts as newest.
double forgetting_score(double importance, int timestamp, const ForgettingParams& params,
                        int t_oldest, int t_newest);

// Tiered per-agent memory: short-term records, promoted long-term records.
// Owned by exactly one agent; not thread-shared.
class MemoryStore {
public:
    MemoryStore() = default;
    MemoryStore(int promotion_k, double similarity_threshold)
        : promotion_k_(promotion_k), similarity_threshold_(similarity_threshold) {}

    // Fast path: basic observation with a bank hit costs zero backend calls.
    // Slow path: compress -> rate -> embed (three backend interactions).
    // Both paths update similarity hits and check promotion of the new record.
    IngestResult ingest(const Observation& o, const MemoryBank* bank, Backend& backend,
                        std::size_t summary_cap = 280);

    // Store an already-summarized record (reflection insights land here
    // directly as long-term records when `to_long_term`).
    void add_record(ShortTermRecord record, bool to_long_term, int round);

    // Recomputes the record's similarity count against its short-term peers
    // and moves it to long-term when the count reaches K.
    bool check_promotion(std::size_t short_term_index, int round);

    // Applies the forgetting formula to every long-term record. Probabilistic
    // mode removes with probability f under the seeded generator; threshold
    // mode removes records with f >= theta. Returns removals in stored order.
    std::vector<LongTermRecord> forgetting_sweep(const ForgettingParams& params,
                                                 std::uint64_t rng_seed);

    // Rank records from both tiers by weighted relevance/importance/recency,
    // each min-max normalized over the candidate pool. Ties break toward the
    // newer timestamp, then insertion order.
    std::vector<RetrievedRecord> retrieve(const EmbeddingVector& query, std::size_t top_n,
                                          int now, const RetrievalWeights& weights = {}) const;

    const std::vector<ShortTermRecord>& short_term() const { return short_term_; }
    const std::vector<LongTermRecord>& long_term() const { return long_term_; }
    std::size_t total_records() const { return short_term_.size() + long_term_.size(); }
    int promotion_k() const { return promotion_k_; }
    double similarity_threshold() const { return similarity_threshold_; }

    // Line-delimited snapshot (one JSON record per line) for pause/inspect/replay.
    void save_records(std::ostream& out) const;
    static MemoryStore load_records(std::istream& in, int promotion_k, double similarity_threshold);

private:
    std::vector<ShortTermRecord> short_term_;
    std::vector<LongTermRecord> long_term_;
    int promotion_k_ = 3;
    double similarity_threshold_ = 0.8;
};

// Society-level bank construction: run the slow path once per basic action
// type and cache the result.
MemoryBank build_memory_bank(Backend& backend, std::size_t summary_cap = 280);

// Canonical observation text for a basic action, shared by the bank builder
// and the simulator so both paths see identical phrasing.
std::string basic_observation_text(ActionType a);

} // namespace agora
