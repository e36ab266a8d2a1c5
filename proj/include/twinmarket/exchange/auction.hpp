#pragma once

#include <optional>
#include <span>
#include <vector>

#include "twinmarket/exchange/order.hpp"

namespace twinmarket::exchange {

struct AuctionResult {
    std::optional<Money> clearing_price;
    std::vector<Trade> trades;
    /// Residual quantities of orders that did not fully execute, in seq order.
    std::vector<Order> unfilled;

    [[nodiscard]] std::int64_t volume() const;
};

/// Executable volume min(cumulative buys with limit >= p, cumulative sells with limit <= p).
std::int64_t executable_volume(std::span<const Order> orders, Money price);

/// Single-price call auction for one asset.
///
/// The clearing price is the candidate limit price with the largest
/// executable volume; ties go to the price nearest `prev_close`, then to the
/// lower price. Eligible orders fill by price priority then seq, so at most
/// one order per side is partially filled. Orders expire after the call.
AuctionResult match_call_auction(std::span<const Order> orders, Money prev_close, Day day = 0);

}  // namespace twinmarket::exchange
