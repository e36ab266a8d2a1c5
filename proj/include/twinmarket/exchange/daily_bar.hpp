#pragma once

#include <cstdint>
#include <span>

#include "twinmarket/common/ids.hpp"

namespace twinmarket::exchange {

struct DailyBar {
    AssetId asset_id;
    Day day = 0;
    double close = 0.0;
    double pre_close = 0.0;
    double change = 0.0;
    double pct_chg = 0.0;  // fraction, not percent
    std::int64_t vol = 0;
    double amount = 0.0;   // traded value
    double vol_5 = 0.0;
    double vol_10 = 0.0;
    double vol_30 = 0.0;
    double ma_5 = 0.0;
    double ma_10 = 0.0;
    double ma_30 = 0.0;

    friend bool operator==(const DailyBar&, const DailyBar&) = default;
};

/// Builds today's bar from the prior history (ordered by day).
/// Moving statistics use the most recent min(window, available) days,
/// today included. With no history the bar is its own previous close.
DailyBar update_daily_bar(std::span<const DailyBar> history, const AssetId& asset, Day day, double close,
                          std::int64_t vol, double amount = 0.0);

}  // namespace twinmarket::exchange
