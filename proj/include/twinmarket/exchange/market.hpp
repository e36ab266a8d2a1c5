#pragma once

#include <map>
#include <vector>

#include "twinmarket/common/rng.hpp"
#include "twinmarket/exchange/auction.hpp"
#include "twinmarket/exchange/daily_bar.hpp"
#include "twinmarket/exchange/index.hpp"
#include "twinmarket/exchange/portfolio.hpp"

namespace twinmarket::exchange {

struct Rejection {
    Order order;
    RejectReason reason;
};

struct SessionResult {
    Day day = 0;
    std::vector<Order> accepted;
    std::vector<Rejection> rejected;
    std::map<AssetId, AuctionResult> auctions;
    std::vector<Trade> trades;
    std::map<AssetId, DailyBar> bars;
};

/// Daily call-auction venue over the industry indices.
///
/// Keeps the bar history per asset. A session validates orders in seq order
/// (reserving cash and units per agent), clears one auction per asset,
/// settles, then appends a bar for every asset. Assets without a cross carry
/// the previous close forward with zero volume.
class Market {
public:
    Market(Universe universe, std::map<AssetId, std::vector<DailyBar>> history);

    [[nodiscard]] const Universe& universe() const { return universe_; }
    [[nodiscard]] std::vector<AssetId> assets() const { return universe_.asset_ids(); }

    [[nodiscard]] const std::vector<DailyBar>& history(const AssetId& asset) const;
    [[nodiscard]] double last_close(const AssetId& asset) const;
    [[nodiscard]] Money prev_close(const AssetId& asset) const;
    [[nodiscard]] std::map<AssetId, double> last_closes() const;

    [[nodiscard]] Valuation valuation_at(const AssetId& asset, double index_value) const;
    /// Index-level P/B for the last `window` bars, oldest first.
    [[nodiscard]] std::vector<double> pb_history(const AssetId& asset, std::size_t window) const;

    SessionResult run_session(Day day, std::vector<Order> orders, PortfolioStore& store);

private:
    Universe universe_;
    std::map<AssetId, std::vector<DailyBar>> history_;
};

/// Seeded pre-simulation bar history for every index, ending at its base
/// value on `last_day`. Used when no historical series is supplied.
std::map<AssetId, std::vector<DailyBar>> synthetic_history(const Universe& universe, int days, Day last_day,
                                                           double daily_vol, double mean_volume, Rng& rng);

}  // namespace twinmarket::exchange
