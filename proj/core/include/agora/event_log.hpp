#pragma once

#include <iosfwd>
#include <map>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

namespace agora {

// One sandbox event. Serialized field names are stable:
// {"round": int, "agent": int, "kind": string, "payload": object}
// agent -1 marks harness or society-level events.
struct Event {
    int round = 0;
    int agent = -1;
    std::string kind;
    nlohmann::json payload = nlohmann::json::object();
};

// Append-only, totally ordered by (round, commit sequence). Rounds never
// decrease; within a round the simulator commits agent effects in index
// order.
class EventLog {
public:
    void append(Event e);
    const std::vector<Event>& events() const { return events_; }
    std::size_t size() const { return events_.size(); }

    std::map<std::string, std::size_t> counts_by_kind() const;
    std::size_t count_kind(const std::string& kind) const;

    void save_jsonl(std::ostream& out) const;
    void save_jsonl_file(const std::string& path) const;
    static EventLog load_jsonl(std::istream& in);
    static EventLog load_jsonl_file(const std::string& path);

    nlohmann::json to_json() const;
    static EventLog from_json(const nlohmann::json& j);

private:
    std::vector<Event> events_;
    int last_round_ = -1;
};

} // namespace agora
