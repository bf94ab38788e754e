#include "agora/persona.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>

#include <nlohmann/json.hpp>

#include "agora/errors.hpp"
#include "agora/prompts.hpp"
#include "agora/rng.hpp"

namespace agora {

using nlohmann::json;

std::string to_string(Gender g) {
    switch (g) {
        case Gender::female: return "female";
        case Gender::male: return "male";
        case Gender::nonbinary: return "nonbinary";
    }
    return "unknown";
}

Gender gender_from_string(const std::string& s) {
    if (s == "female") return Gender::female;
    if (s == "male") return Gender::male;
    if (s == "nonbinary") return Gender::nonbinary;
    throw ParamError("unknown gender: " + s);
}

std::vector<std::string> Persona::top_preferences(std::size_t n) const {
    std::vector<std::pair<std::string, double>> sorted(purchasing_preferences.begin(),
                                                       purchasing_preferences.end());
    std::stable_sort(sorted.begin(), sorted.end(), [](const auto& a, const auto& b) {
        if (a.second != b.second) return a.second > b.second;
        return a.first < b.first;
    });
    std::vector<std::string> out;
    for (std::size_t i = 0; i < sorted.size() && i < n; ++i) out.push_back(sorted[i].first);
    return out;
}

void Persona::normalize_preferences() {
    double sum = 0.0;
    for (const auto& [cat, w] : purchasing_preferences) {
        if (w < 0.0) throw ParamError("preference weight for " + cat + " is negative");
        sum += w;
    }
    if (sum <= 0.0) throw ValidationError("preference weights sum to zero");
    for (auto& [cat, w] : purchasing_preferences) w /= sum;
}

namespace {

std::string trimmed(std::string s) {
    const auto not_space = [](unsigned char c) { return !std::isspace(c); };
    s.erase(s.begin(), std::find_if(s.begin(), s.end(), not_space));
    s.erase(std::find_if(s.rbegin(), s.rend(), not_space).base(), s.end());
    return s;
}

std::string reply_line(const std::string& text, std::string_view prefix) {
    std::istringstream in(text);
    std::string line;
    while (std::getline(in, line)) {
        if (line.rfind(prefix, 0) == 0) return trimmed(line.substr(prefix.size()));
    }
    return {};
}

std::vector<std::string> split_csv(const std::string& s) {
    std::vector<std::string> out;
    std::istringstream in(s);
    std::string item;
    while (std::getline(in, item, ',')) {
        item = trimmed(item);
        if (!item.empty()) out.push_back(item);
    }
    return out;
}

int sample_truncated_age(Rng& rng, const AgeModel& ages) {
    for (;;) {
        const double x = ages.mean + ages.stddev * rng.normal();
        const int age = static_cast<int>(std::lround(x));
        if (age >= ages.min_age && age <= ages.max_age) return age;
    }
}

} // namespace

Persona generate_persona(std::uint64_t seed, Backend& backend,
                         const std::vector<std::string>& categories, const AgeModel& ages) {
    Persona p;
    Rng rng(derive_seed(seed, fnv1a("persona")));
    p.age = sample_truncated_age(rng, ages);
    const std::uint64_t g = rng.below(100);
    p.gender = g < 49 ? Gender::female : (g < 98 ? Gender::male : Gender::nonbinary);

    const std::uint64_t token = derive_seed(seed, fnv1a("identity"));
    const ChatResult identity =
        backend.chat(prompts::build_persona_prompt(token), MeterCategory::prompting);
    p.name = reply_line(identity.text, "name:");
    p.occupation = reply_line(identity.text, "occupation:");
    p.traits = split_csv(reply_line(identity.text, "traits:"));
    if (p.name.empty()) p.name = "Agent-" + std::to_string(seed % 100000);
    if (p.occupation.empty()) p.occupation = "shopper";
    if (p.traits.empty()) p.traits = {"practical"};

    const ChatResult prefs = backend.chat(
        prompts::build_preferences_prompt(token, p.traits, categories), MeterCategory::prompting);
    for (const auto& pair : split_csv(reply_line(prefs.text, "weights:"))) {
        const auto eq = pair.find('=');
        if (eq == std::string::npos) continue;
        const std::string cat = trimmed(pair.substr(0, eq));
        try {
            const double w = std::stod(pair.substr(eq + 1));
            if (w > 0.0) p.purchasing_preferences[cat] = w;
        } catch (...) {
            // skip malformed pair
        }
    }
    if (p.purchasing_preferences.empty()) {
        if (!categories.empty()) {
            p.purchasing_preferences[categories[rng.index(categories.size())]] = 1.0;
        } else {
            p.purchasing_preferences["General"] = 1.0;
        }
    }
    p.normalize_preferences();

    const std::string tendency = reply_line(prefs.text, "tendency:");
    p.behavioral_tendencies =
        tendency.empty() ? std::vector<std::string>{"shops within familiar categories"}
                         : std::vector<std::string>{tendency};
    return p;
}

Persona persona_from_history(const std::string& name,
                             const std::map<std::string, std::size_t>& category_counts) {
    Persona p;
    p.name = name;
    p.occupation = "shopper";
    p.age = 35;
    p.traits = {"history-driven"};
    p.behavioral_tendencies = {"buys in familiar categories"};
    if (category_counts.empty()) throw ValidationError("history persona needs at least one category");
    for (const auto& [cat, count] : category_counts) {
        p.purchasing_preferences[cat] = static_cast<double>(count);
    }
    p.normalize_preferences();
    return p;
}

namespace {

json persona_to_json(const Persona& p) {
    return json{{"name", p.name},
                {"gender", to_string(p.gender)},
                {"age", p.age},
                {"occupation", p.occupation},
                {"traits", p.traits},
                {"preferences", p.purchasing_preferences},
                {"tendencies", p.behavioral_tendencies}};
}

Persona persona_from_json(const json& j) {
    Persona p;
    p.name = j.at("name").get<std::string>();
    p.gender = gender_from_string(j.at("gender").get<std::string>());
    p.age = j.at("age").get<int>();
    p.occupation = j.at("occupation").get<std::string>();
    p.traits = j.at("traits").get<std::vector<std::string>>();
    p.purchasing_preferences = j.at("preferences").get<std::map<std::string, double>>();
    p.behavioral_tendencies = j.at("tendencies").get<std::vector<std::string>>();
    return p;
}

} // namespace

void save_personas(const std::vector<Persona>& personas, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw IoError("cannot open for writing: " + path);
    for (const auto& p : personas) out << persona_to_json(p).dump() << '\n';
}

std::vector<Persona> load_personas(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open personas file: " + path);
    std::vector<Persona> out;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty()) continue;
        try {
            out.push_back(persona_from_json(json::parse(line)));
        } catch (const json::exception& e) {
            throw ValidationError("bad persona record at line " + std::to_string(line_no) + ": " +
                                  e.what());
        }
    }
    return out;
}

} // namespace agora
