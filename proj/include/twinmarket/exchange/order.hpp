#pragma once

#include <cstdint>
#include <optional>
#include <string>

#include "twinmarket/common/ids.hpp"
#include "twinmarket/common/money.hpp"

namespace twinmarket::exchange {

struct Order {
    AgentId agent_id;
    AssetId asset_id;
    Side side = Side::buy;
    Money limit_price;
    std::int64_t quantity = 0;
    /// Submission order within the day; a total order over all orders.
    std::uint64_t seq = 0;

    friend bool operator==(const Order&, const Order&) = default;
};

struct Trade {
    AgentId buyer_id;
    AgentId seller_id;
    AssetId asset_id;
    Money price;
    std::int64_t quantity = 0;
    Day day = 0;

    [[nodiscard]] Money value() const { return price * quantity; }
    friend bool operator==(const Trade&, const Trade&) = default;
};

enum class RejectReason {
    price_out_of_band,
    insufficient_cash,
    insufficient_holdings,
    invalid_quantity,
    unknown_asset,
};

const char* to_string(RejectReason r);

/// Daily price limit, inclusive at both ends: [ceil(0.9 p), floor(1.1 p)] in ticks.
struct PriceBand {
    Money lower;
    Money upper;

    [[nodiscard]] bool contains(Money p) const { return p >= lower && p <= upper; }
    [[nodiscard]] Money clamp(Money p) const { return p < lower ? lower : (p > upper ? upper : p); }
};

PriceBand price_band(Money prev_close);

/// Returns std::nullopt when the order is accepted.
///
/// `available_cash` and `available_units` are what remains after any
/// reservations the caller has already made for this agent today.
std::optional<RejectReason> validate_order(const Order& order, Money prev_close,
                                           Money available_cash, std::int64_t available_units);

}  // namespace twinmarket::exchange
