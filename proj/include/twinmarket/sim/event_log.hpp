#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

#include "twinmarket/common/ids.hpp"
#include "twinmarket/common/json.hpp"

namespace twinmarket::sim {

struct Event {
    Day day = 0;
    std::uint64_t seq = 0;  // restarts at 0 each day
    std::string type;
    ordered_json data;
};

/// Append-only record of a run, ordered by (day, seq).
class EventLog {
public:
    /// Throws ConsistencyError if `day` is earlier than the last event's day.
    const Event& append(Day day, std::string type, ordered_json data);
    [[nodiscard]] const std::vector<Event>& events() const { return events_; }
    [[nodiscard]] std::size_t size() const { return events_.size(); }

    void write(std::ostream& os) const;
    void write(const std::filesystem::path& path) const;
    /// Throws SchemaViolation on a malformed line or out-of-order stamps.
    static EventLog read(std::istream& is);
    static EventLog read(const std::filesystem::path& path);

private:
    std::vector<Event> events_;
};

ordered_json to_json(const Event& e);

}  // namespace twinmarket::sim
