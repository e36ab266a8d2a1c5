#include "twinmarket/exchange/market.hpp"

#include <algorithm>
#include <cmath>
#include <random>

#include "twinmarket/common/errors.hpp"

namespace twinmarket::exchange {

Market::Market(Universe universe, std::map<AssetId, std::vector<DailyBar>> history)
    : universe_(std::move(universe)), history_(std::move(history)) {
    universe_.validate();
    for (const auto& spec : universe_.indices) {
        auto& h = history_[spec.index_id];
        if (h.empty()) h.push_back(update_daily_bar({}, spec.index_id, -1, spec.base_value, 0));
    }
}

const std::vector<DailyBar>& Market::history(const AssetId& asset) const {
    auto it = history_.find(asset);
    if (it == history_.end()) throw MissingData("unknown asset " + asset);
    return it->second;
}

double Market::last_close(const AssetId& asset) const { return history(asset).back().close; }

Money Market::prev_close(const AssetId& asset) const { return Money::from_double(last_close(asset)); }

std::map<AssetId, double> Market::last_closes() const {
    std::map<AssetId, double> out;
    for (const auto& [asset, bars] : history_) out[asset] = bars.back().close;
    return out;
}

Valuation Market::valuation_at(const AssetId& asset, double index_value) const {
    return index_valuation(universe_.index(asset), universe_.fundamentals, index_value);
}

std::vector<double> Market::pb_history(const AssetId& asset, std::size_t window) const {
    const auto& bars = history(asset);
    const std::size_t take = std::min(window, bars.size());
    std::vector<double> out;
    out.reserve(take);
    for (std::size_t i = bars.size() - take; i < bars.size(); ++i) {
        out.push_back(valuation_at(asset, bars[i].close).pb);
    }
    return out;
}

SessionResult Market::run_session(Day day, std::vector<Order> orders, PortfolioStore& store) {
    SessionResult result;
    result.day = day;
    std::sort(orders.begin(), orders.end(), [](const Order& a, const Order& b) { return a.seq < b.seq; });

    std::map<AgentId, Money> cash_reserved;
    std::map<std::pair<AgentId, AssetId>, std::int64_t> units_reserved;
    std::map<AssetId, std::vector<Order>> books;

    for (auto& o : orders) {
        if (!history_.count(o.asset_id) || !store.contains(o.agent_id)) {
            result.rejected.push_back({o, RejectReason::unknown_asset});
            continue;
        }
        const Portfolio& p = store.get(o.agent_id);
        const Money cash_left = p.cash - cash_reserved[o.agent_id];
        const std::int64_t units_left = p.units(o.asset_id) - units_reserved[{o.agent_id, o.asset_id}];
        if (auto reason = validate_order(o, prev_close(o.asset_id), cash_left, units_left)) {
            result.rejected.push_back({o, *reason});
            continue;
        }
        if (o.side == Side::buy) {
            cash_reserved[o.agent_id] += o.limit_price * o.quantity;
        } else {
            units_reserved[{o.agent_id, o.asset_id}] += o.quantity;
        }
        books[o.asset_id].push_back(o);
        result.accepted.push_back(o);
    }

    for (auto& [asset, book] : books) {
        auto auction = match_call_auction(book, prev_close(asset), day);
        result.trades.insert(result.trades.end(), auction.trades.begin(), auction.trades.end());
        result.auctions.emplace(asset, std::move(auction));
    }

    settle(result.trades, store);

    for (auto& [asset, bars] : history_) {
        double close = bars.back().close;
        std::int64_t vol = 0;
        double amount = 0.0;
        if (auto it = result.auctions.find(asset); it != result.auctions.end() && it->second.clearing_price) {
            close = it->second.clearing_price->to_double();
            for (const auto& t : it->second.trades) {
                vol += t.quantity;
                amount += t.value().to_double();
            }
        }
        DailyBar bar = update_daily_bar(bars, asset, day, close, vol, amount);
        bars.push_back(bar);
        result.bars.emplace(asset, std::move(bar));
    }
    return result;
}

std::map<AssetId, std::vector<DailyBar>> synthetic_history(const Universe& universe, int days, Day last_day,
                                                           double daily_vol, double mean_volume, Rng& rng) {
    std::map<AssetId, std::vector<DailyBar>> out;
    std::normal_distribution<double> shock(0.0, daily_vol);
    for (const auto& spec : universe.indices) {
        std::vector<double> closes(static_cast<std::size_t>(std::max(days, 1)));
        closes.back() = spec.base_value;
        for (std::size_t i = closes.size() - 1; i > 0; --i) {
            closes[i - 1] = std::round(closes[i] / std::exp(shock(rng)) * 100.0) / 100.0;
        }
        std::vector<DailyBar> bars;
        for (std::size_t i = 0; i < closes.size(); ++i) {
            const Day d = last_day - static_cast<Day>(closes.size() - 1 - i);
            const auto vol = static_cast<std::int64_t>(std::llround(mean_volume * (0.5 + uniform01(rng))));
            bars.push_back(update_daily_bar(bars, spec.index_id, d, closes[i], vol, closes[i] * static_cast<double>(vol)));
        }
        out[spec.index_id] = std::move(bars);
    }
    return out;
}

}  // namespace twinmarket::exchange
