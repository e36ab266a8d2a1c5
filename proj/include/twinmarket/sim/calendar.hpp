#pragma once

#include <string>
#include <vector>

#include "twinmarket/common/ids.hpp"

namespace twinmarket::sim {

struct CalendarDay {
    Day day = 0;           // ordinal from the start date, weekends included
    std::string date;      // YYYY-MM-DD
    bool trading = false;  // weekday and not a holiday
    /// Trading-day ordinal; on a non-trading day, that of the last trading day (-1 before the first).
    int trading_ordinal = -1;
};

/// Every calendar date from the start through `end` (inclusive), or until
/// `trading_days` sessions have been scheduled when `end` is empty.
/// Throws ConfigError on a malformed date.
std::vector<CalendarDay> build_calendar(const std::string& start, const std::string& end, int trading_days,
                                        const std::vector<std::string>& holidays);

}  // namespace twinmarket::sim
