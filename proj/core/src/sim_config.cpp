#include "agora/sim_config.hpp"

#include <cstdio>
#include <cstdlib>
#include <fstream>

#include "agora/errors.hpp"
#include "agora/memory.hpp"
#include "agora/oracle_backend.hpp"
#include "agora/remote_backend.hpp"
#include "agora/rng.hpp"
#include "agora/stub_backend.hpp"

namespace agora {

using nlohmann::json;

void RunConfig::validate() const {
    if (society.n < 3) throw ParamError("society.n must be >= 3");
    if (society.k <= 0 || society.k % 2 != 0) throw ParamError("society.k must be even and > 0");
    if (static_cast<std::uint32_t>(society.k) >= society.n) {
        throw ParamError("society.k must be < society.n");
    }
    if (society.p < 0.0 || society.p > 1.0) throw ParamError("society.p must lie in [0,1]");

    if (run.rounds < 1) throw ParamError("run.rounds must be >= 1");
    if (run.superstar_fraction < 0.0 || run.superstar_fraction > 1.0) {
        throw ParamError("run.superstar_fraction must lie in [0,1]");
    }
    if (run.stop_after < 0) throw ParamError("run.stop_after must be >= 0");
    if (run.recommendation_size < 1) throw ParamError("run.recommendation_size must be >= 1");
    if (run.plan_horizon < 1) throw ParamError("run.plan_horizon must be >= 1");
    if (run.livestream_bonus_reach < 0) throw ParamError("run.livestream_bonus_reach must be >= 0");

    if (backend.kind != "stub" && backend.kind != "remote" && backend.kind != "oracle") {
        throw ParamError("backend.kind must be one of stub|remote|oracle, got " + backend.kind);
    }
    if (backend.kind == "remote" && backend.endpoint.empty()) {
        throw ParamError("backend.endpoint is required for the remote backend");
    }
    if (backend.kind == "oracle") {
        oracle_policy_from_string(backend.policy);  // throws on bad name
        if (backend.policy_alpha < 0.0 || backend.policy_alpha > 1.0) {
            throw ParamError("backend.policy_alpha must lie in [0,1]");
        }
        if (backend.policy_half_saturation <= 0.0) {
            throw ParamError("backend.policy_half_saturation must be > 0");
        }
    }
    if (backend.max_in_flight < 1) throw ParamError("backend.max_in_flight must be >= 1");
    if (backend.embedding_dim < 8) throw ParamError("backend.embedding_dim must be >= 8");

    ForgettingParams fp{memory.beta, memory.delta, sweep_mode_from_string(memory.sweep_mode),
                        memory.sweep_theta};
    fp.validate();
    if (memory.promotion_k < 1) throw ParamError("memory.promotion_k must be >= 1");
    if (memory.similarity_threshold <= 0.0 || memory.similarity_threshold >= 1.0) {
        throw ParamError("memory.similarity_threshold must lie in (0,1)");
    }
    if (memory.reflection_threshold < 0.0) {
        throw ParamError("memory.reflection_threshold must be >= 0");
    }
    if (memory.insight_importance < 0.0 || memory.insight_importance > 1.0) {
        throw ParamError("memory.insight_importance must lie in [0,1]");
    }
    if (memory.summary_cap < 16) throw ParamError("memory.summary_cap must be >= 16");

    if (eval.a < 1) throw ParamError("eval.a must be >= 1");
    if (eval.b < 1) throw ParamError("eval.b must be >= 1");
    if (eval.users < 1) throw ParamError("eval.users must be >= 1");
    if (eval.history_len <= eval.a) throw ParamError("eval.history_len must exceed eval.a");
    if (eval.policy != "stub") oracle_policy_from_string(eval.policy);
    if (eval.influence != "none" && eval.influence != "negative" && eval.influence != "positive" &&
        eval.influence != "positive_livestream") {
        throw ParamError("eval.influence must be none|negative|positive|positive_livestream");
    }

    if (catalog.path.empty() && catalog.synthetic_count < 8) {
        throw ParamError("catalog.synthetic_count must be >= 8");
    }
}

json RunConfig::to_json() const {
    return json{
        {"society",
         {{"n", society.n}, {"k", society.k}, {"p", society.p}, {"seed", society.seed}}},
        {"run",
         {{"rounds", run.rounds},
          {"action_seed", run.action_seed},
          {"fast_memory", run.fast_memory},
          {"superstar_fraction", run.superstar_fraction},
          {"parallel", run.parallel},
          {"stop_after", run.stop_after},
          {"recommendation_size", run.recommendation_size},
          {"livestream_bonus_reach", run.livestream_bonus_reach},
          {"plan_horizon", run.plan_horizon}}},
        {"backend",
         {{"kind", backend.kind},
          {"endpoint", backend.endpoint},
          {"chat_model", backend.chat_model},
          {"embed_model", backend.embed_model},
          {"max_in_flight", backend.max_in_flight},
          {"api_key_env", backend.api_key_env},
          {"embedding_dim", backend.embedding_dim},
          {"policy", backend.policy},
          {"policy_alpha", backend.policy_alpha},
          {"policy_half_saturation", backend.policy_half_saturation},
          {"policy_seed", backend.policy_seed}}},
        {"memory",
         {{"beta", memory.beta},
          {"delta", memory.delta},
          {"promotion_k", memory.promotion_k},
          {"similarity_threshold", memory.similarity_threshold},
          {"sweep_mode", memory.sweep_mode},
          {"sweep_theta", memory.sweep_theta},
          {"reflection_threshold", memory.reflection_threshold},
          {"insight_importance", memory.insight_importance},
          {"summary_cap", memory.summary_cap}}},
        {"eval",
         {{"a", eval.a},
          {"b", eval.b},
          {"users", eval.users},
          {"policy", eval.policy},
          {"seed", eval.seed},
          {"influence", eval.influence},
          {"history_len", eval.history_len}}},
        {"catalog",
         {{"path", catalog.path},
          {"synthetic_count", catalog.synthetic_count},
          {"synthetic_seed", catalog.synthetic_seed}}},
    };
}

namespace {

template <typename T>
void maybe_get(const json& j, const char* key, T& out) {
    if (j.contains(key)) out = j.at(key).get<T>();
}

} // namespace

RunConfig RunConfig::from_json(const json& j) {
    RunConfig cfg;
    if (j.contains("society")) {
        const auto& s = j["society"];
        maybe_get(s, "n", cfg.society.n);
        maybe_get(s, "k", cfg.society.k);
        maybe_get(s, "p", cfg.society.p);
        maybe_get(s, "seed", cfg.society.seed);
    }
    if (j.contains("run")) {
        const auto& r = j["run"];
        maybe_get(r, "rounds", cfg.run.rounds);
        maybe_get(r, "action_seed", cfg.run.action_seed);
        maybe_get(r, "fast_memory", cfg.run.fast_memory);
        maybe_get(r, "superstar_fraction", cfg.run.superstar_fraction);
        maybe_get(r, "parallel", cfg.run.parallel);
        maybe_get(r, "stop_after", cfg.run.stop_after);
        maybe_get(r, "recommendation_size", cfg.run.recommendation_size);
        maybe_get(r, "livestream_bonus_reach", cfg.run.livestream_bonus_reach);
        maybe_get(r, "plan_horizon", cfg.run.plan_horizon);
    }
    if (j.contains("backend")) {
        const auto& b = j["backend"];
        maybe_get(b, "kind", cfg.backend.kind);
        maybe_get(b, "endpoint", cfg.backend.endpoint);
        maybe_get(b, "chat_model", cfg.backend.chat_model);
        maybe_get(b, "embed_model", cfg.backend.embed_model);
        maybe_get(b, "max_in_flight", cfg.backend.max_in_flight);
        maybe_get(b, "api_key_env", cfg.backend.api_key_env);
        maybe_get(b, "embedding_dim", cfg.backend.embedding_dim);
        maybe_get(b, "policy", cfg.backend.policy);
        maybe_get(b, "policy_alpha", cfg.backend.policy_alpha);
        maybe_get(b, "policy_half_saturation", cfg.backend.policy_half_saturation);
        maybe_get(b, "policy_seed", cfg.backend.policy_seed);
    }
    if (j.contains("memory")) {
        const auto& m = j["memory"];
        maybe_get(m, "beta", cfg.memory.beta);
        maybe_get(m, "delta", cfg.memory.delta);
        maybe_get(m, "promotion_k", cfg.memory.promotion_k);
        maybe_get(m, "similarity_threshold", cfg.memory.similarity_threshold);
        maybe_get(m, "sweep_mode", cfg.memory.sweep_mode);
        maybe_get(m, "sweep_theta", cfg.memory.sweep_theta);
        maybe_get(m, "reflection_threshold", cfg.memory.reflection_threshold);
        maybe_get(m, "insight_importance", cfg.memory.insight_importance);
        maybe_get(m, "summary_cap", cfg.memory.summary_cap);
    }
    if (j.contains("eval")) {
        const auto& e = j["eval"];
        maybe_get(e, "a", cfg.eval.a);
        maybe_get(e, "b", cfg.eval.b);
        maybe_get(e, "users", cfg.eval.users);
        maybe_get(e, "policy", cfg.eval.policy);
        maybe_get(e, "seed", cfg.eval.seed);
        maybe_get(e, "influence", cfg.eval.influence);
        maybe_get(e, "history_len", cfg.eval.history_len);
    }
    if (j.contains("catalog")) {
        const auto& c = j["catalog"];
        maybe_get(c, "path", cfg.catalog.path);
        maybe_get(c, "synthetic_count", cfg.catalog.synthetic_count);
        maybe_get(c, "synthetic_seed", cfg.catalog.synthetic_seed);
    }
    return cfg;
}

RunConfig RunConfig::load_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open config: " + path);
    json j;
    try {
        in >> j;
    } catch (const json::exception& e) {
        throw ValidationError("malformed config " + path + ": " + e.what());
    }
    return from_json(j);
}

void RunConfig::save_file(const std::string& path) const {
    std::ofstream out(path);
    if (!out) throw IoError("cannot open for writing: " + path);
    out << to_json().dump(2) << '\n';
}

std::string RunConfig::config_hash() const {
    const std::uint64_t h = fnv1a(to_json().dump());
    char buf[17];
    std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(h));
    return buf;
}

std::shared_ptr<Backend> make_backend(const RunConfig& cfg) {
    if (cfg.backend.kind == "stub") {
        return std::make_shared<StubBackend>(cfg.backend.embedding_dim);
    }
    if (cfg.backend.kind == "oracle") {
        OraclePolicy policy;
        policy.kind = oracle_policy_from_string(cfg.backend.policy);
        policy.alpha = cfg.backend.policy_alpha;
        policy.half_saturation = cfg.backend.policy_half_saturation;
        policy.seed = cfg.backend.policy_seed;
        return std::make_shared<OracleBackend>(policy, cfg.backend.embedding_dim);
    }
    RemoteConfig remote;
    remote.base_url = cfg.backend.endpoint;
    remote.chat_model = cfg.backend.chat_model;
    remote.embed_model = cfg.backend.embed_model;
    remote.max_in_flight = cfg.backend.max_in_flight;
    if (const char* key = std::getenv(cfg.backend.api_key_env.c_str())) {
        remote.api_key = key;
    }
    return std::make_shared<RemoteBackend>(remote);
}

} // namespace agora
