#include "twinmarket/exchange/daily_bar.hpp"

#include <algorithm>

namespace twinmarket::exchange {

namespace {

template <class Field>
double trailing_mean(std::span<const DailyBar> history, double today, std::size_t window, Field field) {
    const std::size_t take = std::min(window - 1, history.size());
    double sum = today;
    for (std::size_t i = history.size() - take; i < history.size(); ++i) sum += field(history[i]);
    return sum / static_cast<double>(take + 1);
}

}  // namespace

DailyBar update_daily_bar(std::span<const DailyBar> history, const AssetId& asset, Day day, double close,
                          std::int64_t vol, double amount) {
    DailyBar bar;
    bar.asset_id = asset;
    bar.day = day;
    bar.close = close;
    bar.pre_close = history.empty() ? close : history.back().close;
    bar.change = bar.close - bar.pre_close;
    bar.pct_chg = bar.pre_close != 0.0 ? bar.change / bar.pre_close : 0.0;
    bar.vol = vol;
    bar.amount = amount;

    auto by_close = [](const DailyBar& b) { return b.close; };
    auto by_vol = [](const DailyBar& b) { return static_cast<double>(b.vol); };
    const double v = static_cast<double>(vol);
    bar.ma_5 = trailing_mean(history, close, 5, by_close);
    bar.ma_10 = trailing_mean(history, close, 10, by_close);
    bar.ma_30 = trailing_mean(history, close, 30, by_close);
    bar.vol_5 = trailing_mean(history, v, 5, by_vol);
    bar.vol_10 = trailing_mean(history, v, 10, by_vol);
    bar.vol_30 = trailing_mean(history, v, 30, by_vol);
    return bar;
}

}  // namespace twinmarket::exchange
