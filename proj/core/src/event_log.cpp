#include "agora/event_log.hpp"

#include <fstream>
#include <stdexcept>

#include "agora/errors.hpp"

namespace agora {

using nlohmann::json;

void EventLog::append(Event e) {
    if (e.round < last_round_) {
        throw std::logic_error("event log is append-only: round " + std::to_string(e.round) +
                               " after round " + std::to_string(last_round_));
    }
    last_round_ = e.round;
    events_.push_back(std::move(e));
}

std::map<std::string, std::size_t> EventLog::counts_by_kind() const {
    std::map<std::string, std::size_t> counts;
    for (const auto& e : events_) ++counts[e.kind];
    return counts;
}

std::size_t EventLog::count_kind(const std::string& kind) const {
    std::size_t n = 0;
    for (const auto& e : events_) {
        if (e.kind == kind) ++n;
    }
    return n;
}

namespace {

json event_to_json(const Event& e) {
    return json{{"round", e.round}, {"agent", e.agent}, {"kind", e.kind}, {"payload", e.payload}};
}

Event event_from_json(const json& j) {
    Event e;
    e.round = j.at("round").get<int>();
    e.agent = j.at("agent").get<int>();
    e.kind = j.at("kind").get<std::string>();
    e.payload = j.value("payload", json::object());
    return e;
}

} // namespace

void EventLog::save_jsonl(std::ostream& out) const {
    for (const auto& e : events_) out << event_to_json(e).dump() << '\n';
}

void EventLog::save_jsonl_file(const std::string& path) const {
    std::ofstream out(path);
    if (!out) throw IoError("cannot open for writing: " + path);
    save_jsonl(out);
}

EventLog EventLog::load_jsonl(std::istream& in) {
    EventLog log;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty()) continue;
        try {
            log.append(event_from_json(json::parse(line)));
        } catch (const json::exception& e) {
            throw ValidationError("bad event at line " + std::to_string(line_no) + ": " +
                                  e.what());
        }
    }
    return log;
}

EventLog EventLog::load_jsonl_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open event log: " + path);
    return load_jsonl(in);
}

json EventLog::to_json() const {
    json arr = json::array();
    for (const auto& e : events_) arr.push_back(event_to_json(e));
    return arr;
}

EventLog EventLog::from_json(const json& j) {
    EventLog log;
    for (const auto& item : j) log.append(event_from_json(item));
    return log;
}

} // namespace agora
