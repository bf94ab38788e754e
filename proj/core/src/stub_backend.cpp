#include "agora/stub_backend.hpp"

#include <algorithm>
#include <array>
#include <cctype>
#include <sstream>
#include <vector>

#include "agora/actions.hpp"
#include "agora/errors.hpp"
#include "agora/prompts.hpp"
#include "agora/rng.hpp"

namespace agora {

namespace {

std::string lowercase(std::string_view s) {
    std::string out(s);
    std::transform(out.begin(), out.end(), out.begin(),
                   [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
    return out;
}

bool contains(const std::string& haystack, std::string_view needle) {
    return haystack.find(needle) != std::string::npos;
}

std::string trim(std::string s) {
    const auto not_space = [](unsigned char c) { return !std::isspace(c); };
    s.erase(s.begin(), std::find_if(s.begin(), s.end(), not_space));
    s.erase(std::find_if(s.rbegin(), s.rend(), not_space).base(), s.end());
    return s;
}

// Value of the first line starting with `prefix`, without the prefix.
std::string line_value(const std::string& text, std::string_view prefix) {
    std::istringstream in(text);
    std::string line;
    while (std::getline(in, line)) {
        if (line.rfind(prefix, 0) == 0) return trim(line.substr(prefix.size()));
    }
    return {};
}

std::vector<std::string> split_list(const std::string& s, char sep = ',') {
    std::vector<std::string> out;
    std::istringstream in(s);
    std::string item;
    while (std::getline(in, item, sep)) {
        item = trim(item);
        if (!item.empty()) out.push_back(item);
    }
    return out;
}

std::uint64_t parse_u64(const std::string& s, std::uint64_t fallback = 0) {
    try {
        return std::stoull(s);
    } catch (...) {
        return fallback;
    }
}

// --- persona tables ---------------------------------------------------------

const std::array<std::string_view, 24> kFirstNames = {
    "Ada",   "Bruno",  "Carmen", "Dmitri", "Elena",  "Felix",  "Grace",  "Hassan",
    "Irene", "Jonas",  "Keiko",  "Luis",   "Mara",   "Nikolai", "Olive", "Pedro",
    "Quinn", "Rosa",   "Samir",  "Tess",   "Umar",   "Vera",   "Wendell", "Yara"};
const std::array<std::string_view, 24> kLastNames = {
    "Alvarez", "Barton", "Chen",  "Dubois",  "Eriksen", "Fontaine", "Garcia", "Hoffman",
    "Ivanov",  "Jensen", "Kovacs", "Lindgren", "Moreau", "Novak",   "Okafor", "Petrov",
    "Quispe",  "Rossi",  "Sato",  "Tanaka",  "Ueda",    "Varga",    "Weber",  "Zhang"};
const std::array<std::string_view, 16> kOccupations = {
    "teacher",        "nurse",        "software developer", "chef",
    "electrician",    "accountant",   "graphic designer",   "warehouse manager",
    "pharmacist",     "musician",     "carpenter",          "sales representative",
    "student",        "translator",   "mechanic",           "librarian"};
const std::array<std::string_view, 12> kTraits = {
    "curious",   "frugal",     "impulsive",  "meticulous", "sociable", "skeptical",
    "easygoing", "ambitious",  "practical",  "artistic",   "cautious", "trend-aware"};
const std::array<std::string_view, 8> kTendencies = {
    "compares prices before buying",
    "asks friends for opinions before big purchases",
    "buys on impulse when something matches a hobby",
    "reads product details carefully",
    "prefers well-reviewed items",
    "follows live streams of favorite sellers",
    "shops mostly within familiar categories",
    "rarely posts but reads the feed daily"};

// --- rating -----------------------------------------------------------------

int rate_rule(const std::string& memory_line) {
    const std::string low = lowercase(memory_line);
    int score = 3;
    auto bump = [&](std::initializer_list<std::string_view> words, int to) {
        for (auto w : words) {
            if (contains(low, w)) {
                score = std::max(score, to);
                return;
            }
        }
    };
    bump({"bought", "purchased", "purchase"}, 8);
    bump({"broke", "failed", "terrible", "avoid", "disappointed", "stopped heating"}, 7);
    bump({"recommend", "endorse", "love", "praised", "excellent"}, 6);
    bump({"live stream", "live-stream", "streaming"}, 6);
    bump({"said", "told", "posted", "chatted", "message"}, 5);
    bump({"searched", "inspected", "considered", "details of"}, 4);
    bump({"plan:"}, 4);
    return std::min(score, 10);
}

// --- stage-2 environment parsing --------------------------------------------

struct ParsedItem {
    std::size_t index = 0;
    std::string id;
    std::string title;
    std::string category;
    long bought = 0;
    long social = 0;
};

struct ParsedEnv {
    std::string mode;
    std::string last;
    std::uint64_t tick = 0;
    std::size_t select = 0;
    std::vector<std::string> legal;
    std::vector<ParsedItem> items;
    std::vector<std::string> friends;
    std::vector<std::string> interests;
};

std::string field_of(const std::string& line, std::string_view key) {
    const auto pos = line.find(key);
    if (pos == std::string::npos) return {};
    const auto start = pos + key.size();
    auto end = line.find(" | ", start);
    if (end == std::string::npos) end = line.size();
    return trim(line.substr(start, end - start));
}

ParsedEnv parse_env(const std::string& text) {
    ParsedEnv env;
    const std::string ctx = line_value(text, "context:");
    {
        std::istringstream in(ctx);
        std::string tok;
        while (in >> tok) {
            const auto eq = tok.find('=');
            if (eq == std::string::npos) continue;
            const std::string key = tok.substr(0, eq);
            const std::string val = tok.substr(eq + 1);
            if (key == "mode") env.mode = val;
            else if (key == "last") env.last = val;
            else if (key == "tick") env.tick = parse_u64(val);
            else if (key == "select") env.select = static_cast<std::size_t>(parse_u64(val));
        }
    }
    env.legal = split_list(line_value(text, "legal:"));
    env.friends = split_list(line_value(text, "friends:"));

    const std::string intent = line_value(text, "intent:");
    const auto ipos = intent.find("interests:");
    if (ipos != std::string::npos) {
        auto rest = intent.substr(ipos + 10);
        const auto dot = rest.find('.');
        if (dot != std::string::npos) rest = rest.substr(0, dot);
        env.interests = split_list(rest);
    }

    std::istringstream in(text);
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty() || line[0] != '[') continue;
        const auto close = line.find(']');
        if (close == std::string::npos || !contains(line, "id=")) continue;
        ParsedItem item;
        item.index = static_cast<std::size_t>(parse_u64(line.substr(1, close - 1)));
        item.id = field_of(line, "id=");
        item.title = field_of(line, "title=");
        item.category = field_of(line, "category=");
        item.bought = static_cast<long>(parse_u64(field_of(line, "bought=")));
        try {
            item.social = std::stol(field_of(line, "social="));
        } catch (...) {
            item.social = 0;
        }
        if (!item.id.empty()) env.items.push_back(std::move(item));
    }
    return env;
}

long item_score(const ParsedItem& item, const std::vector<std::string>& interests) {
    long score = item.social;
    const std::string cat = lowercase(item.category);
    for (const auto& i : interests) {
        if (lowercase(i) == cat) {
            score += 2;
            break;
        }
    }
    return score;
}

// Indexes of the best `count` items by (score desc, index asc).
std::vector<std::size_t> rank_items(const ParsedEnv& env, std::size_t count) {
    std::vector<std::size_t> order(env.items.size());
    for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        const long sa = item_score(env.items[a], env.interests);
        const long sb = item_score(env.items[b], env.interests);
        if (sa != sb) return sa > sb;
        return env.items[a].index < env.items[b].index;
    });
    if (order.size() > count) order.resize(count);
    return order;
}

std::string bracketed(const ParsedEnv& env, const std::vector<std::size_t>& picks) {
    std::string out = "[";
    for (std::size_t i = 0; i < picks.size(); ++i) {
        if (i) out += ", ";
        out += std::to_string(env.items[picks[i]].index);
    }
    out += "]";
    return out;
}

bool legal(const ParsedEnv& env, std::string_view action) {
    for (const auto& a : env.legal) {
        if (a == action) return true;
    }
    return false;
}

std::string act(std::string_view action) { return "action: " + std::string(action); }
std::string act(std::string_view action, const std::string& target) {
    return "action: " + std::string(action) + "; target: " + target;
}

// The scripted action policy. Paging, idling and mode switches dominate so
// that the workload stays realistic (routine actions are the majority);
// purchases happen after a matching detail view or on a strong social signal.
std::string stage2_rule(const std::string& text) {
    const ParsedEnv env = parse_env(text);
    const std::uint64_t t = env.tick;

    // Forced choice.
    if (env.legal.size() == 1) {
        const std::string& only = env.legal.front();
        if ((only == "purchase" || only == "view_details") && !env.items.empty()) {
            return act(only, bracketed(env, rank_items(env, only == "purchase" ? std::max<std::size_t>(env.select, 1) : 1)));
        }
        if (only == "chat" && !env.friends.empty()) return act(only, env.friends.front());
        return act(only);
    }

    // Evaluation selections: pick exactly `select` items.
    if (env.select > 0 && legal(env, "purchase") && !env.items.empty()) {
        return act("purchase", bracketed(env, rank_items(env, env.select)));
    }

    if (env.mode == "none") {
        if (legal(env, "enter_shopping") && t % 3 != 2) return act("enter_shopping");
        if (legal(env, "enter_social")) return act("enter_social");
        return act("idle");
    }

    if (env.mode == "shopping") {
        if (env.last == "enter_shopping" && legal(env, "browse")) return act("browse");
        if (!env.items.empty()) {
            const auto best = rank_items(env, 1);
            const long best_score = item_score(env.items[best.front()], env.interests);
            if (legal(env, "purchase") && best_score >= 4) {
                return act("purchase", bracketed(env, best));
            }
            if (legal(env, "purchase") && env.last == "view_details" && best_score >= 2) {
                return act("purchase", bracketed(env, best));
            }
            if (legal(env, "view_details") && best_score >= 2 && env.last != "view_details" &&
                t % 2 == 0) {
                return act("view_details", bracketed(env, best));
            }
        }
        if (legal(env, "search") && t % 11 == 5 && !env.interests.empty()) {
            return act("search", lowercase(env.interests.front()));
        }
        if (legal(env, "page") && t % 8 != 6 && t % 8 != 7) return act("page");
        if (legal(env, "enter_social") && t % 8 == 6) return act("enter_social");
        return act("idle");
    }

    if (env.mode == "social") {
        if (legal(env, "live_stream") && t % 4 != 3) return act("live_stream");
        if (legal(env, "chat") && !env.friends.empty() && t % 4 == 0) {
            return act("chat", env.friends[static_cast<std::size_t>(t) % env.friends.size()]);
        }
        if (legal(env, "post") && t % 4 == 1) return act("post");
        if (legal(env, "enter_shopping") && t % 4 == 2) return act("enter_shopping");
        return act("idle");
    }

    return act("idle");
}

// --- other rules --------------------------------------------------------------

std::string compress_rule(const ChatRequest& req, const std::string& text) {
    // The real observation follows the last "observation:\n"; the inline
    // few-shot examples use "observation: " on a single line.
    const std::string marker = "observation:\n";
    const auto pos = text.rfind(marker);
    std::string body = pos == std::string::npos ? text : text.substr(pos + marker.size());
    body = trim(body);
    std::string captions;
    for (const auto& msg : req.messages) {
        for (const auto& part : msg.parts) {
            if (part.kind == MessagePart::Kind::image && !part.text.empty()) {
                if (!captions.empty()) captions += "; ";
                captions += part.text;
            }
        }
    }
    if (!captions.empty()) body += " (image: " + captions + ")";
    return body;
}

std::string persona_rule(const std::string& text) {
    const std::uint64_t token = parse_u64(line_value(text, "seed-token:"));
    const std::uint64_t h = splitmix64(token);
    std::ostringstream out;
    out << "name: " << kFirstNames[h % kFirstNames.size()] << ' '
        << kLastNames[(h >> 8) % kLastNames.size()] << '\n';
    out << "occupation: " << kOccupations[(h >> 16) % kOccupations.size()] << '\n';
    const std::size_t t0 = (h >> 24) % kTraits.size();
    const std::size_t t1 = (t0 + 1 + (h >> 32) % (kTraits.size() - 1)) % kTraits.size();
    std::size_t t2 = (t1 + 1 + (h >> 40) % (kTraits.size() - 2)) % kTraits.size();
    if (t2 == t0) t2 = (t2 + 1) % kTraits.size();
    out << "traits: " << kTraits[t0] << ", " << kTraits[t1] << ", " << kTraits[t2];
    return out.str();
}

std::string preferences_rule(const std::string& text) {
    const std::uint64_t token = parse_u64(line_value(text, "seed-token:"));
    const auto categories = split_list(line_value(text, "categories:"));
    const std::uint64_t h = splitmix64(token ^ 0x70726566ULL);
    std::ostringstream out;
    out << "weights:";
    if (!categories.empty()) {
        const std::size_t n = categories.size();
        const std::size_t c0 = h % n;
        const std::size_t c1 = n > 1 ? (c0 + 1 + (h >> 12) % (n - 1)) % n : c0;
        std::size_t c2 = n > 2 ? (c1 + 1 + (h >> 24) % (n - 2)) % n : c1;
        if (c2 == c0 && n > 2) c2 = (c2 + 1) % n;
        out << ' ' << categories[c0] << '=' << 3 + (h >> 36) % 3;
        if (c1 != c0) out << ", " << categories[c1] << '=' << 2;
        if (c2 != c0 && c2 != c1) out << ", " << categories[c2] << '=' << 1;
    }
    out << '\n';
    out << "tendency: " << kTendencies[(h >> 48) % kTendencies.size()];
    return out.str();
}

std::string stage1_rule(const std::string& text) {
    const std::string name = line_value(text, "name:");
    const std::string age = line_value(text, "age:");
    const std::string occupation = line_value(text, "occupation:");
    const auto prefs = split_list(line_value(text, "preferences:"));
    std::string obs = line_value(text, "last observation:");
    if (obs.size() > 100) obs = obs.substr(0, 100);
    std::ostringstream out;
    out << "I am " << name << ", a " << age << "-year-old " << occupation << ". interests:";
    for (std::size_t i = 0; i < prefs.size() && i < 2; ++i) {
        out << (i ? ", " : " ") << prefs[i];
    }
    out << ". reacting to: " << obs;
    return out.str();
}

std::string plan_rule(const std::string& text) {
    const auto prefs = split_list(line_value(text, "preferences:"));
    const std::string top = prefs.empty() ? std::string("everyday") : prefs.front();
    return "Plan: explore " + top + " offerings this week, compare a few options, and check "
           "the social feed for tips.";
}

std::string questions_rule(const std::string& text) {
    const std::string first = line_value(text, "- ");
    std::string hint = first.empty() ? std::string("recent activity") : first;
    if (hint.size() > 60) hint = hint.substr(0, 60);
    return "q: What does the pattern behind '" + hint + "' say about my priorities?\n"
           "q: Which products keep coming back in my recent experiences?";
}

std::string insights_rule(const std::string& text) {
    std::string hint = line_value(text, "- ");
    if (hint.size() > 60) hint = hint.substr(0, 60);
    return "insight: My attention keeps returning to the same themes as '" + hint + "'.\n"
           "insight: Signals from friends weigh heavily in what I consider next.";
}

std::string social_content_rule(const std::string& text) {
    const std::string about = line_value(text, "about:");
    const std::string sentiment = line_value(text, "sentiment:");
    if (about.empty()) {
        return "Taking it easy today; might browse for something nice later.";
    }
    if (sentiment == "negative") {
        return "Avoid " + about + " - mine broke after a week and support was useless.";
    }
    if (sentiment == "neutral") {
        return "Tried " + about + "; it is fine for the price, nothing special.";
    }
    return "I really recommend " + about + " - excellent quality, worth every cent.";
}

} // namespace

std::string stub_reply(const ChatRequest& req) {
    const std::string text = req.flattened_text();
    auto has = [&](std::string_view sentinel) { return contains(text, sentinel); };

    if (has(prompts::kRateSentinel)) {
        return std::to_string(rate_rule(line_value(text, "memory:")));
    }
    if (has(prompts::kCompressSentinel)) return compress_rule(req, text);
    if (has(prompts::kStage2Sentinel)) return stage2_rule(text);
    if (has(prompts::kStage1Sentinel)) return stage1_rule(text);
    if (has(prompts::kPlanSentinel)) return plan_rule(text);
    if (has(prompts::kQuestionsSentinel)) return questions_rule(text);
    if (has(prompts::kInsightsSentinel)) return insights_rule(text);
    if (has(prompts::kPersonaSentinel)) return persona_rule(text);
    if (has(prompts::kPreferencesSentinel)) return preferences_rule(text);
    if (has(prompts::kSocialContentSentinel)) return social_content_rule(text);
    return "OK.";
}

EmbeddingVector stub_embedding(const std::string& text, std::size_t dim) {
    if (text.empty()) throw ParamError("cannot embed empty text");
    EmbeddingVector v;
    v.values.assign(dim, 0.0);
    std::string token;
    auto flush = [&] {
        if (!token.empty()) {
            v.values[fnv1a(token) % dim] += 1.0;
            token.clear();
        }
    };
    for (unsigned char c : text) {
        if (std::isalnum(c)) {
            token += static_cast<char>(std::tolower(c));
        } else {
            flush();
        }
    }
    flush();
    bool any = false;
    for (double x : v.values) {
        if (x != 0.0) {
            any = true;
            break;
        }
    }
    if (!any) {
        // no alphanumeric tokens; fall back to a single bucket so the vector
        // still has unit norm
        v.values[fnv1a(text) % dim] = 1.0;
    }
    v.normalize();
    return v;
}

TokenUsage estimate_usage(std::size_t prompt_chars, std::size_t reply_chars) {
    return {(prompt_chars + 3) / 4, (reply_chars + 3) / 4};
}

ChatResult StubBackend::chat(const ChatRequest& req, MeterCategory category) {
    ChatResult result;
    result.text = stub_reply(req);
    result.usage = estimate_usage(req.char_count(), result.text.size());
    meter_.record(category, result.usage);
    return result;
}

EmbeddingVector StubBackend::embed(const std::string& text, MeterCategory category) {
    EmbeddingVector v = stub_embedding(text, embedding_dim_);
    meter_.record(category, estimate_usage(text.size(), 0));
    return v;
}

} // namespace agora
