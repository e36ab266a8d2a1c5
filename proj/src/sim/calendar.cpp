#include "twinmarket/sim/calendar.hpp"

#include <chrono>
#include <cstdio>
#include <set>

#include "twinmarket/common/errors.hpp"

namespace twinmarket::sim {

namespace {

using namespace std::chrono;

sys_days parse_date(const std::string& s) {
    int y = 0;
    unsigned m = 0, d = 0;
    char tail = 0;
    if (std::sscanf(s.c_str(), "%d-%u-%u%c", &y, &m, &d, &tail) != 3) throw ConfigError("bad date " + s);
    const year_month_day ymd{year{y}, month{m}, day{d}};
    if (!ymd.ok()) throw ConfigError("bad date " + s);
    return sys_days{ymd};
}

std::string format_date(sys_days t) {
    const year_month_day ymd{t};
    char buf[16];
    std::snprintf(buf, sizeof buf, "%04d-%02u-%02u", static_cast<int>(ymd.year()), static_cast<unsigned>(ymd.month()),
                  static_cast<unsigned>(ymd.day()));
    return buf;
}

}  // namespace

std::vector<CalendarDay> build_calendar(const std::string& start, const std::string& end, int trading_days,
                                        const std::vector<std::string>& holidays) {
    std::set<sys_days> off;
    for (const auto& h : holidays) off.insert(parse_date(h));
    const sys_days first = parse_date(start);
    const bool bounded = !end.empty();
    const sys_days last = bounded ? parse_date(end) : first;
    if (bounded && last < first) throw ConfigError("end date precedes start date");
    if (!bounded && trading_days <= 0) throw ConfigError("trading_days must be positive without an end date");

    std::vector<CalendarDay> out;
    int ordinal = -1;
    for (sys_days t = first;; t += days{1}) {
        if (bounded && t > last) break;
        if (!bounded && ordinal + 1 >= trading_days) break;
        const weekday wd{t};
        CalendarDay cd;
        cd.day = static_cast<Day>(out.size());
        cd.date = format_date(t);
        cd.trading = wd != Saturday && wd != Sunday && !off.count(t);
        if (cd.trading) ++ordinal;
        cd.trading_ordinal = ordinal;
        out.push_back(cd);
        if (out.size() > 100000) throw ConfigError("calendar too long");
    }
    return out;
}

}  // namespace twinmarket::sim
