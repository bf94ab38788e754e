#include "agora/memory.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <istream>
#include <limits>
#include <ostream>

#include <nlohmann/json.hpp>

#include "agora/errors.hpp"
#include "agora/prompts.hpp"
#include "agora/rng.hpp"

namespace agora {

using nlohmann::json;

std::string to_string(SweepMode m) {
    return m == SweepMode::probabilistic ? "probabilistic" : "threshold";
}

SweepMode sweep_mode_from_string(const std::string& s) {
    if (s == "probabilistic") return SweepMode::probabilistic;
    if (s == "threshold") return SweepMode::threshold;
    throw ParamError("unknown sweep mode: " + s);
}

void ForgettingParams::validate() const {
    if (beta <= 0.0) throw ParamError("forgetting beta must be > 0");
    if (delta <= 0.0 || delta > 1.0) throw ParamError("forgetting delta must lie in (0,1]");
    if (theta < 0.0 || theta > 1.0) throw ParamError("sweep theta must lie in [0,1]");
}

void MemoryBank::put(Entry entry) {
    for (auto& e : entries_) {
        if (e.action_type == entry.action_type) {
            e = std::move(entry);
            return;
        }
    }
    entries_.push_back(std::move(entry));
}

const MemoryBank::Entry* MemoryBank::find(ActionType a) const {
    for (const auto& e : entries_) {
        if (e.action_type == a) return &e;
    }
    return nullptr;
}

std::string basic_observation_text(ActionType a) {
    switch (a) {
        case ActionType::enter_shopping: return "entered the shopping system";
        case ActionType::enter_social: return "entered the social feed";
        case ActionType::page: return "viewing more recommended products";
        case ActionType::idle: return "stayed idle for the round";
        default: break;
    }
    throw ParamError("no canonical text: " + to_string(a) + " is not a basic action");
}

std::string compress_observation(const Observation& o, Backend& backend,
                                 std::size_t summary_cap) {
    if (!o.valid()) {
        throw ParamError("observation must carry text or at least one image reference");
    }
    if (o.is_basic) {
        throw ParamError("compress_observation must not be called for basic observations; "
                         "the bank fast path applies");
    }
    const ChatResult result = backend.chat(prompts::build_compress_prompt(o), MeterCategory::memory);
    std::string summary = result.text;
    if (summary.size() > summary_cap) summary.resize(summary_cap);
    return summary;
}

double rate_importance(const std::string& summary, Backend& backend) {
    if (summary.empty()) throw ParamError("cannot rate an empty summary");
    const ChatResult result = backend.chat(prompts::build_rate_prompt(summary), MeterCategory::memory);
    // first integer in the reply
    const std::string& text = result.text;
    std::size_t i = 0;
    while (i < text.size() && !std::isdigit(static_cast<unsigned char>(text[i]))) ++i;
    if (i == text.size()) {
        throw ReplyParseError("importance rating reply carries no integer", text);
    }
    long rating = 0;
    while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i]))) {
        rating = rating * 10 + (text[i] - '0');
        ++i;
        if (rating > 100) break;
    }
    rating = std::clamp(rating, 1L, 10L);
    return static_cast<double>(rating - 1) / 9.0;
}

double forgetting_score(double importance, int timestamp, const ForgettingParams& params,
                        int t_oldest, int t_newest) {
    params.validate();
    if (timestamp < t_oldest || timestamp > t_newest) {
        throw ParamError("record timestamp outside [t_oldest, t_newest]");
    }
    const double t_hat =
        t_newest == t_oldest
            ? 1.0
            : static_cast<double>(timestamp - t_oldest) / (t_newest - t_oldest);
    const double strength = std::max(std::pow(importance, params.beta), params.delta);
    const double f = 1.0 - ((t_hat + importance) / 2.0) * strength;
    return std::clamp(f, 0.0, 1.0);
}

IngestResult MemoryStore::ingest(const Observation& o, const MemoryBank* bank, Backend& backend,
                                 std::size_t summary_cap) {
    if (!o.valid()) {
        throw ParamError("observation must carry text or at least one image reference");
    }
    IngestResult result;
    ShortTermRecord record;
    record.timestamp = o.round;

    const MemoryBank::Entry* cached =
        (o.is_basic && bank) ? bank->find(o.action_type) : nullptr;
    if (o.is_basic && cached) {
        record.summary = cached->summary;
        record.embedding = cached->embedding;
        record.importance = cached->importance;
        result.bank_hit = true;
    } else {
        if (o.is_basic) result.bank_miss = true;
        Observation slow = o;
        slow.is_basic = false;  // handled as non-basic from here on
        record.summary = compress_observation(slow, backend, summary_cap);
        record.importance = rate_importance(record.summary, backend);
        record.embedding = backend.embed(record.summary, MeterCategory::memory);
    }

    // Similarity bookkeeping against the existing short-term records.
    int hits = 0;
    for (auto& existing : short_term_) {
        if (cosine_similarity(existing.embedding, record.embedding) >= similarity_threshold_) {
            ++hits;
            ++existing.similar_hits;
        }
    }
    record.similar_hits = hits;
    short_term_.push_back(record);
    result.record = record;
    result.promoted = check_promotion(short_term_.size() - 1, o.round);
    return result;
}

void MemoryStore::add_record(ShortTermRecord record, bool to_long_term, int round) {
    if (to_long_term) {
        long_term_.push_back({std::move(record), round});
    } else {
        short_term_.push_back(std::move(record));
    }
}

bool MemoryStore::check_promotion(std::size_t short_term_index, int round) {
    if (short_term_index >= short_term_.size()) {
        throw ParamError("check_promotion: record not in short-term memory");
    }
    ShortTermRecord& record = short_term_[short_term_index];
    int count = 0;
    for (std::size_t i = 0; i < short_term_.size(); ++i) {
        if (i == short_term_index) continue;
        if (cosine_similarity(short_term_[i].embedding, record.embedding) >=
            similarity_threshold_) {
            ++count;
        }
    }
    record.similar_hits = count;
    if (count < promotion_k_) return false;
    long_term_.push_back({record, round});
    short_term_.erase(short_term_.begin() + static_cast<std::ptrdiff_t>(short_term_index));
    return true;
}

std::vector<LongTermRecord> MemoryStore::forgetting_sweep(const ForgettingParams& params,
                                                          std::uint64_t rng_seed) {
    params.validate();
    std::vector<LongTermRecord> removed;
    if (long_term_.empty()) return removed;

    int t_oldest = long_term_.front().base.timestamp;
    int t_newest = t_oldest;
    for (const auto& r : long_term_) {
        t_oldest = std::min(t_oldest, r.base.timestamp);
        t_newest = std::max(t_newest, r.base.timestamp);
    }

    Rng rng(rng_seed);
    std::vector<LongTermRecord> kept;
    kept.reserve(long_term_.size());
    for (const auto& r : long_term_) {
        const double f =
            forgetting_score(r.base.importance, r.base.timestamp, params, t_oldest, t_newest);
        const bool forget = params.mode == SweepMode::probabilistic ? rng.uniform01() < f
                                                                    : f >= params.theta;
        if (forget) {
            removed.push_back(r);
        } else {
            kept.push_back(r);
        }
    }
    long_term_ = std::move(kept);
    return removed;
}

std::vector<RetrievedRecord> MemoryStore::retrieve(const EmbeddingVector& query,
                                                   std::size_t top_n, int now,
                                                   const RetrievalWeights& weights) const {
    if (top_n == 0) throw ParamError("retrieve needs top_n >= 1");
    const bool use_relevance = weights.relevance != 0.0;
    if (use_relevance && query.values.empty()) {
        throw ParamError("relevance-weighted retrieval needs a query embedding");
    }

    struct Candidate {
        const ShortTermRecord* rec;
        bool long_term;
        double rel = 0.0, imp = 0.0, rec_t = 0.0, score = 0.0;
    };
    std::vector<Candidate> pool;
    pool.reserve(total_records());
    for (const auto& r : short_term_) pool.push_back({&r, false});
    for (const auto& r : long_term_) pool.push_back({&r.base, true});
    if (pool.empty()) return {};

    for (auto& c : pool) {
        c.rel = use_relevance ? cosine_similarity(query, c.rec->embedding) : 0.0;
        c.imp = c.rec->importance;
        c.rec_t = static_cast<double>(c.rec->timestamp);
    }
    // min-max normalize each component over the pool; a flat component
    // contributes equally to every candidate
    auto normalize = [&](auto getter, auto setter) {
        double lo = std::numeric_limits<double>::infinity(), hi = -lo;
        for (const auto& c : pool) {
            lo = std::min(lo, getter(c));
            hi = std::max(hi, getter(c));
        }
        for (auto& c : pool) {
            setter(c, hi > lo ? (getter(c) - lo) / (hi - lo) : 1.0);
        }
    };
    normalize([](const Candidate& c) { return c.rel; },
              [](Candidate& c, double v) { c.rel = v; });
    normalize([](const Candidate& c) { return c.imp; },
              [](Candidate& c, double v) { c.imp = v; });
    normalize([](const Candidate& c) { return c.rec_t; },
              [](Candidate& c, double v) { c.rec_t = v; });

    for (auto& c : pool) {
        c.score = weights.relevance * c.rel + weights.importance * c.imp +
                  weights.recency * c.rec_t;
    }
    std::stable_sort(pool.begin(), pool.end(), [](const Candidate& a, const Candidate& b) {
        if (a.score != b.score) return a.score > b.score;
        return a.rec->timestamp > b.rec->timestamp;
    });
    if (pool.size() > top_n) pool.resize(top_n);

    std::vector<RetrievedRecord> out;
    out.reserve(pool.size());
    for (const auto& c : pool) {
        out.push_back({c.rec->summary, c.rec->importance, c.rec->timestamp, c.score,
                       c.long_term});
    }
    (void)now;
    return out;
}

namespace {

json record_to_json(const ShortTermRecord& r) {
    return json{{"summary", r.summary},
                {"embedding", r.embedding.values},
                {"importance", r.importance},
                {"t", r.timestamp},
                {"similar_hits", r.similar_hits}};
}

ShortTermRecord record_from_json(const json& j) {
    ShortTermRecord r;
    r.summary = j.at("summary").get<std::string>();
    r.embedding.values = j.at("embedding").get<std::vector<double>>();
    r.importance = j.at("importance").get<double>();
    r.timestamp = j.at("t").get<int>();
    r.similar_hits = j.at("similar_hits").get<int>();
    return r;
}

} // namespace

void MemoryStore::save_records(std::ostream& out) const {
    for (const auto& r : short_term_) {
        json j = record_to_json(r);
        j["tier"] = "short";
        out << j.dump() << '\n';
    }
    for (const auto& r : long_term_) {
        json j = record_to_json(r.base);
        j["tier"] = "long";
        j["promoted_at"] = r.promoted_at;
        out << j.dump() << '\n';
    }
}

MemoryStore MemoryStore::load_records(std::istream& in, int promotion_k,
                                      double similarity_threshold) {
    MemoryStore store(promotion_k, similarity_threshold);
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty()) continue;
        json j;
        try {
            j = json::parse(line);
        } catch (const json::exception& e) {
            throw ValidationError("bad memory record at line " + std::to_string(line_no) + ": " +
                                  e.what());
        }
        ShortTermRecord r = record_from_json(j);
        if (j.at("tier") == "long") {
            store.long_term_.push_back({std::move(r), j.value("promoted_at", 0)});
        } else {
            store.short_term_.push_back(std::move(r));
        }
    }
    return store;
}

MemoryBank build_memory_bank(Backend& backend, std::size_t summary_cap) {
    MemoryBank bank;
    for (ActionType a : kAllActions) {
        if (!is_basic_action(a)) continue;
        Observation o;
        o.text = basic_observation_text(a);
        o.action_type = a;
        o.is_basic = false;  // bank construction runs the slow path once
        MemoryBank::Entry entry;
        entry.action_type = a;
        entry.summary = compress_observation(o, backend, summary_cap);
        entry.importance = rate_importance(entry.summary, backend);
        entry.embedding = backend.embed(entry.summary, MeterCategory::memory);
        bank.put(std::move(entry));
    }
    return bank;
}

} // namespace agora
