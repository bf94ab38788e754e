#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "agora/agent.hpp"
#include "agora/memory.hpp"
#include "agora/persona.hpp"

// Prompt templates, versioned with the repo. Every template opens with a
// directive sentinel; the deterministic stub dispatches on these, so they are
// shared constants rather than inline literals.
namespace agora::prompts {

inline constexpr std::string_view kTemplateVersion = "1";

inline constexpr std::string_view kCompressSentinel = "Condense the following observation";
inline constexpr std::string_view kRateSentinel = "Rate the importance";
inline constexpr std::string_view kQuestionsSentinel = "List the most salient questions";
inline constexpr std::string_view kInsightsSentinel = "Extract high-level insights";
inline constexpr std::string_view kPlanSentinel = "Draft a short plan";
inline constexpr std::string_view kStage1Sentinel = "Summarize your current intent";
inline constexpr std::string_view kStage2Sentinel = "Choose your next action";
inline constexpr std::string_view kPersonaSentinel = "Invent a persona";
inline constexpr std::string_view kPreferencesSentinel = "Assign purchase-preference weights";
inline constexpr std::string_view kSocialContentSentinel = "Write a short social message";

ChatRequest build_compress_prompt(const Observation& o);
ChatRequest build_rate_prompt(const std::string& summary);
ChatRequest build_persona_prompt(std::uint64_t seed_token);
ChatRequest build_preferences_prompt(std::uint64_t seed_token,
                                     const std::vector<std::string>& traits,
                                     const std::vector<std::string>& categories);
ChatRequest build_plan_prompt(const Persona& persona,
                              const std::vector<RetrievedRecord>& retrieved, int round);
ChatRequest build_questions_prompt(const std::vector<RetrievedRecord>& recent);
ChatRequest build_insights_prompt(const std::vector<std::string>& questions,
                                  const std::vector<RetrievedRecord>& retrieved);
ChatRequest build_stage1_prompt(const Persona& persona, const std::string& last_observation,
                                const std::vector<RetrievedRecord>& retrieved);
ChatRequest build_stage2_prompt(const std::string& stage1_summary, const EnvironmentView& env,
                                bool reprompt_after_illegal = false);
// kind: chat | post | live_stream; the message pitches `product_title` with
// the requested sentiment.
ChatRequest build_social_content_prompt(const Persona& persona, const std::string& kind,
                                        const std::string& product_title,
                                        const std::string& product_id,
                                        const std::string& sentiment);

// Renders a persona as prompt lines ("name: ...", "preferences: a, b, c").
std::string persona_sheet(const Persona& persona);

} // namespace agora::prompts
