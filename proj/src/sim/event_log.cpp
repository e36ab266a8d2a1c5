#include "twinmarket/sim/event_log.hpp"

#include <fstream>

#include "twinmarket/common/errors.hpp"

namespace twinmarket::sim {

const Event& EventLog::append(Day day, std::string type, ordered_json data) {
    std::uint64_t seq = 0;
    if (!events_.empty()) {
        const Event& last = events_.back();
        if (day < last.day) throw ConsistencyError("event log day went backwards");
        if (day == last.day) seq = last.seq + 1;
    }
    events_.push_back({day, seq, std::move(type), std::move(data)});
    return events_.back();
}

ordered_json to_json(const Event& e) {
    ordered_json j;
    j["day"] = e.day;
    j["seq"] = e.seq;
    j["type"] = e.type;
    j["data"] = e.data;
    return j;
}

void EventLog::write(std::ostream& os) const {
    for (const auto& e : events_) os << to_json(e).dump() << '\n';
}

void EventLog::write(const std::filesystem::path& path) const {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw MissingData("cannot write " + path.string());
    write(out);
}

EventLog EventLog::read(std::istream& is) {
    EventLog log;
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(is, line)) {
        ++lineno;
        if (line.empty()) continue;
        try {
            auto j = ordered_json::parse(line);
            Event e{j.at("day").get<Day>(), j.at("seq").get<std::uint64_t>(), j.at("type").get<std::string>(),
                    j.at("data")};
            if (!log.events_.empty()) {
                const Event& last = log.events_.back();
                const bool ordered = e.day > last.day || (e.day == last.day && e.seq > last.seq);
                if (!ordered) throw SchemaViolation("stamps not strictly increasing");
            }
            log.events_.push_back(std::move(e));
        } catch (const ordered_json::exception& ex) {
            throw SchemaViolation("event line " + std::to_string(lineno) + ": " + ex.what());
        } catch (const SchemaViolation& ex) {
            throw SchemaViolation("event line " + std::to_string(lineno) + ": " + ex.what());
        }
    }
    return log;
}

EventLog EventLog::read(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw MissingData("cannot open " + path.string());
    return read(in);
}

}  // namespace twinmarket::sim
