#pragma once

#include <cstdint>
#include <memory>
#include <string>

#include <nlohmann/json.hpp>

#include "agora/backend.hpp"

namespace agora {

struct SocietyConfig {
    std::uint32_t n = 100;
    int k = 10;
    double p = 0.1;
    std::uint64_t seed = 7;
};

struct RunSection {
    int rounds = 10;
    std::uint64_t action_seed = 1;
    bool fast_memory = true;
    double superstar_fraction = 0.01;
    bool parallel = false;
    int stop_after = 0;  // 0: run all rounds; >0: stop after this round (for snapshots)
    int recommendation_size = 8;
    int livestream_bonus_reach = 0;
    int plan_horizon = 5;
};

struct BackendSection {
    std::string kind = "stub";  // stub | remote | oracle
    std::string endpoint;
    std::string chat_model = "gpt-4-1106-preview";
    std::string embed_model = "text-embedding-ada-002";
    int max_in_flight = 4;
    std::string api_key_env = "AGORA_API_KEY";
    std::size_t embedding_dim = 64;
    // oracle settings
    std::string policy = "uniform_random";  // ground_truth | uniform_random | imitate
    double policy_alpha = 0.6;
    double policy_half_saturation = 25.0;
    std::uint64_t policy_seed = 1;
};

struct MemorySection {
    double beta = 1.5;
    double delta = 0.1;
    int promotion_k = 3;
    double similarity_threshold = 0.8;
    std::string sweep_mode = "probabilistic";
    double sweep_theta = 0.75;
    double reflection_threshold = 3.0;
    double insight_importance = 0.8;
    std::size_t summary_cap = 280;
};

struct EvalSection {
    int a = 1;
    int b = 5;
    int users = 1000;
    std::string policy = "stub";  // stub | ground_truth | uniform_random | imitate
    std::uint64_t seed = 11;
    std::string influence = "none";  // none | negative | positive | positive_livestream
    int history_len = 10;
};

struct CatalogSection {
    std::string path;  // empty: synthesize
    int synthetic_count = 200;
    std::uint64_t synthetic_seed = 5;
};

struct RunConfig {
    SocietyConfig society;
    RunSection run;
    BackendSection backend;
    MemorySection memory;
    EvalSection eval;
    CatalogSection catalog;

    void validate() const;  // re-checks every module's parameter domain
    nlohmann::json to_json() const;
    static RunConfig from_json(const nlohmann::json& j);
    static RunConfig load_file(const std::string& path);
    void save_file(const std::string& path) const;

    // FNV-64 of the canonical JSON form, hex; names run directories.
    std::string config_hash() const;
};

// Instantiates the configured backend (stub, oracle, or remote; the remote
// API key is read from the configured environment variable).
std::shared_ptr<Backend> make_backend(const RunConfig& cfg);

} // namespace agora
