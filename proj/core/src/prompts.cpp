#include "agora/prompts.hpp"

#include <sstream>

namespace agora::prompts {

namespace {

ChatRequest one_shot(std::string system_text, std::string user_text, int max_out = 256) {
    ChatRequest req;
    req.max_output_tokens = max_out;
    ChatMessage sys{Role::system, {MessagePart::make_text(std::move(system_text))}};
    ChatMessage user{Role::user, {MessagePart::make_text(std::move(user_text))}};
    req.messages.push_back(std::move(sys));
    req.messages.push_back(std::move(user));
    return req;
}

std::string join(const std::vector<std::string>& items, const char* sep) {
    std::string out;
    for (std::size_t i = 0; i < items.size(); ++i) {
        if (i) out += sep;
        out += items[i];
    }
    return out;
}

std::string retrieved_lines(const std::vector<RetrievedRecord>& retrieved) {
    std::string out;
    for (const auto& r : retrieved) {
        out += "- ";
        out += r.summary;
        out += '\n';
    }
    return out;
}

} // namespace

std::string persona_sheet(const Persona& persona) {
    std::ostringstream os;
    os << "name: " << persona.name << '\n';
    os << "gender: " << to_string(persona.gender) << '\n';
    os << "age: " << persona.age << '\n';
    os << "occupation: " << persona.occupation << '\n';
    os << "traits: " << join(persona.traits, ", ") << '\n';
    os << "preferences: " << join(persona.top_preferences(3), ", ") << '\n';
    os << "tendencies: " << join(persona.behavioral_tendencies, "; ") << '\n';
    return os.str();
}

ChatRequest build_compress_prompt(const Observation& o) {
    std::ostringstream user;
    user << kCompressSentinel
         << " into one informative, concise sentence. Preserve who acted, what was seen or "
            "done, every product name and identifier, and any expressed sentiment about a "
            "product. Drop greetings, interface chrome, repeated phrases and filler. If an "
            "image caption is given, fold its key nouns into the sentence. Do not invent "
            "details that are not present. Reply with the sentence only, no preamble and no "
            "quotation marks.\n";
    user << "Examples:\n";
    user << "observation: opened the storefront start page, banner ads for seasonal sales, "
            "nothing clicked yet -> condensed: Opened the storefront without engaging with "
            "anything.\n";
    user << "observation: friend Maria said the espresso maker (P0113) she bought last week "
            "already stopped heating -> condensed: Maria reported her espresso maker P0113 "
            "broke within a week.\n";
    user << "observation:\n" << o.text << '\n';

    ChatRequest req;
    req.max_output_tokens = 96;
    ChatMessage sys{Role::system,
                    {MessagePart::make_text("You compress raw observations into terse memory "
                                            "summaries for a simulated shopper.")}};
    ChatMessage msg{Role::user, {MessagePart::make_text(user.str())}};
    for (const auto& img : o.images) {
        msg.parts.push_back(MessagePart::make_image(img.ref, img.caption));
    }
    req.messages.push_back(std::move(sys));
    req.messages.push_back(std::move(msg));
    return req;
}

ChatRequest build_rate_prompt(const std::string& summary) {
    std::ostringstream user;
    user << kRateSentinel
         << " of the following memory on an integer scale from 1 to 10, where importance "
            "means how much this memory should influence the person's future shopping and "
            "social decisions.\n";
    user << "Anchors:\n";
    user << "1-2: routine navigation with no content (opening a page, idling, paging through "
            "lists without reacting).\n";
    user << "3-4: ordinary browsing impressions, small talk without products, generic "
            "recommendations that were not acted on.\n";
    user << "5-6: conversations or posts that mention a specific product, searches with "
            "intent, product detail views that were considered seriously.\n";
    user << "7-8: committed actions and strong signals, a completed purchase, a product "
            "failing, an enthusiastic endorsement from a friend.\n";
    user << "9-10: rare life-anchoring events that should never be forgotten.\n";
    user << "Examples: 'Paged through another screen of recommendations' -> 2. 'Maria "
            "reported her espresso maker P0113 broke within a week' -> 7. 'Bought the "
            "wireless controller P0012 after comparing prices' -> 8.\n";
    user << "Reply with a single integer from 1 to 10 and nothing else.\n";
    user << "memory: " << summary << '\n';
    return one_shot("You rate memory importance for a simulated shopper.", user.str(), 8);
}

ChatRequest build_persona_prompt(std::uint64_t seed_token) {
    std::ostringstream user;
    user << kPersonaSentinel
         << " for a consumer in an online marketplace simulation. Reply with exactly three "
            "lines:\n"
            "name: <first and last name>\n"
            "occupation: <one occupation>\n"
            "traits: <three comma-separated personality traits>\n";
    user << "seed-token: " << seed_token << '\n';
    return one_shot("You invent believable consumer personas.", user.str(), 64);
}

ChatRequest build_preferences_prompt(std::uint64_t seed_token,
                                     const std::vector<std::string>& traits,
                                     const std::vector<std::string>& categories) {
    std::ostringstream user;
    user << kPreferencesSentinel
         << " to product categories for a person with the given traits. Pick the three "
            "categories that fit the traits best and give each a positive weight, then one "
            "behavioral tendency. Reply with exactly two lines:\n"
            "weights: <category>=<weight>, <category>=<weight>, <category>=<weight>\n"
            "tendency: <one short behavioral tendency>\n";
    user << "traits: " << join(traits, ", ") << '\n';
    user << "categories: " << join(categories, ", ") << '\n';
    user << "seed-token: " << seed_token << '\n';
    return one_shot("You map personality traits to shopping preferences.", user.str(), 96);
}

ChatRequest build_plan_prompt(const Persona& persona,
                              const std::vector<RetrievedRecord>& retrieved, int round) {
    std::ostringstream user;
    user << kPlanSentinel
         << " for the next few rounds of activity in the marketplace, one or two sentences, "
            "grounded in the persona's preferences and recent memories.\n";
    user << "round: " << round << '\n';
    user << persona_sheet(persona);
    user << "recent memories:\n" << retrieved_lines(retrieved);
    return one_shot("You plan ahead for a simulated shopper.", user.str(), 96);
}

ChatRequest build_questions_prompt(const std::vector<RetrievedRecord>& recent) {
    std::ostringstream user;
    user << kQuestionsSentinel
         << " that these recent experiences raise about what matters to this person. Reply "
            "with up to three questions, one per line, each starting with 'q: '.\n";
    user << "recent memories:\n" << retrieved_lines(recent);
    return one_shot("You surface salient questions for reflection.", user.str(), 128);
}

ChatRequest build_insights_prompt(const std::vector<std::string>& questions,
                                  const std::vector<RetrievedRecord>& retrieved) {
    std::ostringstream user;
    user << kInsightsSentinel
         << " that answer the questions from the retrieved memories. Reply with up to three "
            "insights, one per line, each starting with 'insight: '.\n";
    user << "questions:\n";
    for (const auto& q : questions) user << "- " << q << '\n';
    user << "memories:\n" << retrieved_lines(retrieved);
    return one_shot("You distill high-level insights from memories.", user.str(), 160);
}

ChatRequest build_stage1_prompt(const Persona& persona, const std::string& last_observation,
                                const std::vector<RetrievedRecord>& retrieved) {
    std::ostringstream user;
    user << kStage1Sentinel
         << " in one or two sentences, speaking as this person, based only on who you are, "
            "your recent memories, and what just happened. State which product categories "
            "you care about right now as 'interests: <a>, <b>'. Do not mention any specific "
            "product listing.\n";
    user << persona_sheet(persona);
    user << "relevant memories:\n" << retrieved_lines(retrieved);
    user << "last observation: " << last_observation << '\n';
    return one_shot("You voice a simulated shopper's current intent.", user.str(), 128);
}

ChatRequest build_stage2_prompt(const std::string& stage1_summary, const EnvironmentView& env,
                                bool reprompt_after_illegal) {
    std::ostringstream user;
    user << kStage2Sentinel
         << " in the marketplace. Reply with exactly one line of the form 'action: <name>' "
            "or 'action: <name>; target: <value>'. Targets: chat takes a friend id, search "
            "takes a query, view_details takes one bracketed item index like [2], purchase "
            "takes bracketed item indexes like [0, 3]. Pick only a legal action.\n";
    if (reprompt_after_illegal) {
        user << "Your previous reply was not a legal action here. Choose again, exactly one "
                "legal action in the required format.\n";
    }
    if (env.select_count > 0) {
        user << "You must purchase exactly " << env.select_count
             << " item(s) from the list, chosen to match what this person would buy.\n";
    }
    user << "context: round=" << env.round << " mode=" << env.mode
         << " last=" << to_string(env.last_action) << " tick=" << env.tick
         << " select=" << env.select_count << '\n';
    user << "intent: " << stage1_summary << '\n';
    user << "legal:";
    for (std::size_t i = 0; i < env.legal.size(); ++i) {
        user << (i ? ", " : " ") << to_string(env.legal[i]);
    }
    user << '\n';
    if (!env.items.empty()) {
        user << "items:\n";
        for (std::size_t i = 0; i < env.items.size(); ++i) {
            const auto& it = env.items[i];
            user << '[' << i << "] id=" << it.product_id << " | title=" << it.title
                 << " | category=" << it.category << " | price=" << it.price
                 << " | bought=" << it.purchase_count << " | social=" << it.social_score;
            if (!it.caption.empty()) user << " | caption=" << it.caption;
            user << '\n';
        }
        bool any_notes = false;
        for (const auto& it : env.items) {
            if (!it.notes.empty()) {
                any_notes = true;
                break;
            }
        }
        if (any_notes) {
            user << "notes:\n";
            for (const auto& it : env.items) {
                for (const auto& n : it.notes) user << "- [" << it.product_id << "] " << n << '\n';
            }
        }
    }
    if (!env.friend_ids.empty()) {
        user << "friends:";
        for (std::size_t i = 0; i < env.friend_ids.size(); ++i) {
            user << (i ? ", " : " ") << env.friend_ids[i];
        }
        user << '\n';
    }

    ChatRequest req = one_shot(
        "You choose the next marketplace action for a simulated shopper, staying consistent "
        "with the stated intent.",
        user.str(), 48);
    return req;
}

ChatRequest build_social_content_prompt(const Persona& persona, const std::string& kind,
                                        const std::string& product_title,
                                        const std::string& product_id,
                                        const std::string& sentiment) {
    std::ostringstream user;
    user << kSocialContentSentinel << " of kind '" << kind
         << "'. One or two sentences in this person's voice. If a product is given, mention "
            "its title and id and express the requested sentiment about it.\n";
    user << "speaker: " << persona.name << ", " << persona.occupation << '\n';
    if (!product_id.empty()) {
        user << "about: " << product_title << " (" << product_id << ")\n";
        user << "sentiment: " << sentiment << '\n';
    }
    return one_shot("You write short social messages for a simulated shopper.", user.str(), 96);
}

} // namespace agora::prompts
