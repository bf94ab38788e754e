#include "agora/agent.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>

#include "agora/errors.hpp"
#include "agora/prompts.hpp"

namespace agora {

std::string to_string(ActionType a) {
    switch (a) {
        case ActionType::browse: return "browse";
        case ActionType::search: return "search";
        case ActionType::page: return "page";
        case ActionType::view_details: return "view_details";
        case ActionType::purchase: return "purchase";
        case ActionType::chat: return "chat";
        case ActionType::post: return "post";
        case ActionType::live_stream: return "live_stream";
        case ActionType::enter_shopping: return "enter_shopping";
        case ActionType::enter_social: return "enter_social";
        case ActionType::idle: return "idle";
    }
    return "idle";
}

ActionType action_from_string(const std::string& s) {
    for (ActionType a : kAllActions) {
        if (to_string(a) == s) return a;
    }
    throw ParamError("unknown action: " + s);
}

std::string to_string(AgentMode m) {
    switch (m) {
        case AgentMode::none: return "none";
        case AgentMode::shopping: return "shopping";
        case AgentMode::social: return "social";
    }
    return "none";
}

AgentMode agent_mode_from_string(const std::string& s) {
    if (s == "none") return AgentMode::none;
    if (s == "shopping") return AgentMode::shopping;
    if (s == "social") return AgentMode::social;
    throw ParamError("unknown agent mode: " + s);
}

void ActionDecision::validate() const {
    switch (action) {
        case ActionType::purchase:
            if (product_ids.empty()) throw ValidationError("purchase needs product targets");
            break;
        case ActionType::view_details:
            if (product_ids.size() != 1) {
                throw ValidationError("view_details needs exactly one product target");
            }
            break;
        case ActionType::chat:
            if (!friend_id) throw ValidationError("chat needs a friend target");
            break;
        case ActionType::search:
            if (query.empty()) throw ValidationError("search needs a query");
            break;
        default:
            if (!product_ids.empty() || friend_id || !query.empty()) {
                throw ValidationError("action " + to_string(action) +
                                      " does not take a target");
            }
            break;
    }
}

Plan make_plan(const AgentState& agent, Backend& backend, int round) {
    const auto retrieved =
        agent.memory.retrieve({}, 5, round, RetrievalWeights{0.0, 1.0, 1.0});
    const ChatResult result = backend.chat(
        prompts::build_plan_prompt(agent.persona, retrieved, round), MeterCategory::planning);
    Plan plan;
    plan.text = result.text;
    plan.made_at = round;
    return plan;
}

namespace {

std::vector<std::string> prefixed_lines(const std::string& text, std::string_view prefix) {
    std::vector<std::string> out;
    std::istringstream in(text);
    std::string line;
    while (std::getline(in, line)) {
        if (line.rfind(prefix, 0) == 0) {
            std::string v = line.substr(prefix.size());
            while (!v.empty() && v.front() == ' ') v.erase(v.begin());
            if (!v.empty()) out.push_back(std::move(v));
        }
    }
    return out;
}

} // namespace

std::optional<Reflection> maybe_reflect(AgentState& agent, Backend& backend, int round,
                                        const ReflectionConfig& cfg) {
    if (agent.importance_since_reflection < cfg.threshold) return std::nullopt;

    const auto recent = agent.memory.retrieve({}, cfg.memories_considered, round,
                                              RetrievalWeights{0.0, 1.0, 1.0});
    Reflection reflection;
    const ChatResult q =
        backend.chat(prompts::build_questions_prompt(recent), MeterCategory::reflection);
    reflection.questions = prefixed_lines(q.text, "q:");
    if (reflection.questions.empty()) reflection.questions = {q.text};

    const ChatResult ins = backend.chat(prompts::build_insights_prompt(reflection.questions, recent),
                                        MeterCategory::reflection);
    reflection.insights = prefixed_lines(ins.text, "insight:");
    if (reflection.insights.empty()) reflection.insights = {ins.text};

    for (const auto& insight : reflection.insights) {
        ShortTermRecord record;
        record.summary = insight;
        record.embedding = backend.embed(insight, MeterCategory::reflection);
        record.importance = cfg.insight_importance;
        record.timestamp = round;
        agent.memory.add_record(std::move(record), /*to_long_term=*/true, round);
    }
    agent.importance_since_reflection = 0.0;
    return reflection;
}

std::string summarize_stage1(const Persona& persona, const std::string& last_observation,
                             const std::vector<RetrievedRecord>& retrieved, Backend& backend) {
    const ChatResult result = backend.chat(
        prompts::build_stage1_prompt(persona, last_observation, retrieved),
        MeterCategory::prompting);
    return result.text;
}

namespace {

bool is_legal(const EnvironmentView& env, ActionType a) {
    return std::find(env.legal.begin(), env.legal.end(), a) != env.legal.end();
}

// Parses "action: <name>" / "action: <name>; target: <value>" against the
// environment; returns nullopt when the reply is unparseable or illegal.
std::optional<ActionDecision> parse_decision(const std::string& reply,
                                             const EnvironmentView& env) {
    const auto apos = reply.find("action:");
    if (apos == std::string::npos) return std::nullopt;
    std::string rest = reply.substr(apos + 7);
    std::string action_name, target;
    const auto sep = rest.find(';');
    if (sep == std::string::npos) {
        action_name = rest;
    } else {
        action_name = rest.substr(0, sep);
        const auto tpos = rest.find("target:", sep);
        if (tpos != std::string::npos) target = rest.substr(tpos + 7);
    }
    auto trim = [](std::string& s) {
        while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.erase(s.begin());
        while (!s.empty() && (std::isspace(static_cast<unsigned char>(s.back())) || s.back() == '\n'))
            s.pop_back();
    };
    trim(action_name);
    trim(target);

    ActionType action;
    try {
        action = action_from_string(action_name);
    } catch (const ParamError&) {
        return std::nullopt;
    }
    if (!is_legal(env, action)) return std::nullopt;

    ActionDecision d;
    d.action = action;
    if (action == ActionType::purchase || action == ActionType::view_details) {
        // bracketed item indexes into env.items
        std::vector<std::size_t> indexes;
        std::size_t value = 0;
        bool in_number = false;
        for (char c : target) {
            if (std::isdigit(static_cast<unsigned char>(c))) {
                value = value * 10 + static_cast<std::size_t>(c - '0');
                in_number = true;
            } else if (in_number) {
                indexes.push_back(value);
                value = 0;
                in_number = false;
            }
        }
        if (in_number) indexes.push_back(value);
        if (indexes.empty()) return std::nullopt;
        for (std::size_t idx : indexes) {
            if (idx >= env.items.size()) return std::nullopt;
            const std::string& id = env.items[idx].product_id;
            if (std::find(d.product_ids.begin(), d.product_ids.end(), id) != d.product_ids.end()) {
                return std::nullopt;  // duplicate pick
            }
            d.product_ids.push_back(id);
        }
        if (action == ActionType::view_details && d.product_ids.size() != 1) return std::nullopt;
        if (env.select_count > 0 && action == ActionType::purchase &&
            d.product_ids.size() != env.select_count) {
            return std::nullopt;
        }
    } else if (action == ActionType::chat) {
        try {
            const int fid = std::stoi(target);
            if (std::find(env.friend_ids.begin(), env.friend_ids.end(), fid) ==
                env.friend_ids.end()) {
                return std::nullopt;
            }
            d.friend_id = fid;
        } catch (...) {
            return std::nullopt;
        }
    } else if (action == ActionType::search) {
        if (target.empty()) return std::nullopt;
        d.query = target;
    }
    return d;
}

} // namespace

DecisionOutcome decide_stage2(const std::string& stage1_summary, const EnvironmentView& env,
                              Backend& backend) {
    DecisionOutcome outcome;

    // Scripted selection hook: in selection mode an oracle policy replaces
    // prompting entirely.
    if (env.select_count > 0 && !env.items.empty()) {
        SelectionContext ctx;
        for (const auto& it : env.items) {
            ctx.candidates.push_back({it.product_id, it.category, it.purchase_count});
        }
        ctx.select_count = env.select_count;
        ctx.ground_truth_ids = env.hidden_ground_truth;
        ctx.rng_stream = env.tick;
        if (auto picked = backend.select_items(ctx)) {
            outcome.decision.action = ActionType::purchase;
            outcome.decision.product_ids = *picked;
            outcome.decision.rationale = stage1_summary;
            return outcome;
        }
    }

    for (int attempt = 0; attempt < 2; ++attempt) {
        const ChatResult reply = backend.chat(
            prompts::build_stage2_prompt(stage1_summary, env, attempt > 0),
            MeterCategory::prompting);
        if (auto d = parse_decision(reply.text, env)) {
            d->rationale = stage1_summary;

            // In free simulation an oracle policy may override which items a
            // purchase targets, keeping the when-to-buy cadence intact.
            if (d->action == ActionType::purchase && env.select_count == 0 &&
                !env.items.empty()) {
                SelectionContext ctx;
                for (const auto& it : env.items) {
                    ctx.candidates.push_back({it.product_id, it.category, it.purchase_count});
                }
                ctx.select_count = d->product_ids.size();
                ctx.rng_stream = env.tick;
                if (auto picked = backend.select_items(ctx)) d->product_ids = *picked;
            }
            outcome.decision = *d;
            outcome.reprompted = attempt > 0;
            return outcome;
        }
        outcome.reprompted = true;
    }

    outcome.decision.action = ActionType::idle;
    outcome.decision.rationale = stage1_summary;
    outcome.decision.fallback = true;
    outcome.violation = true;
    return outcome;
}

} // namespace agora
