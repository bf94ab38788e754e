#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "agora/backend.hpp"

namespace agora {

enum class Gender { female, male, nonbinary };
std::string to_string(Gender g);
Gender gender_from_string(const std::string& s);

struct AgeModel {
    double mean = 35.0;
    double stddev = 12.0;
    int min_age = 18;
    int max_age = 75;
};

struct Persona {
    std::string name;
    Gender gender = Gender::female;
    int age = 30;
    std::string occupation;
    std::vector<std::string> traits;
    std::map<std::string, double> purchasing_preferences;  // category -> weight, sums to 1
    std::vector<std::string> behavioral_tendencies;

    // Preference categories sorted by descending weight (ties by name).
    std::vector<std::string> top_preferences(std::size_t n) const;
    void normalize_preferences();
};

// Age from a truncated normal (rejection sampling); name/occupation/traits
// and preferences/tendencies from two backend calls.
Persona generate_persona(std::uint64_t seed, Backend& backend,
                         const std::vector<std::string>& categories,
                         const AgeModel& ages = {});

// Deterministic persona for evaluation users: preferences are the category
// frequencies of a purchase-history prefix.
Persona persona_from_history(const std::string& name,
                             const std::map<std::string, std::size_t>& category_counts);

// Structured text records (one JSON object per line) so externally authored
// personas can be loaded.
void save_personas(const std::vector<Persona>& personas, const std::string& path);
std::vector<Persona> load_personas(const std::string& path);

} // namespace agora
