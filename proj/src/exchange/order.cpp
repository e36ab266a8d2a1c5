#include "twinmarket/exchange/order.hpp"

#include "twinmarket/common/errors.hpp"

namespace twinmarket::exchange {

const char* to_string(RejectReason r) {
    switch (r) {
        case RejectReason::price_out_of_band: return "PriceOutOfBand";
        case RejectReason::insufficient_cash: return "InsufficientCash";
        case RejectReason::insufficient_holdings: return "InsufficientHoldings";
        case RejectReason::invalid_quantity: return "InvalidQuantity";
        case RejectReason::unknown_asset: return "UnknownAsset";
    }
    return "Unknown";
}

PriceBand price_band(Money prev_close) {
    if (prev_close.ticks() <= 0) throw InvalidSpec("prev_close must be positive");
    const std::int64_t p = prev_close.ticks();
    // integer ceil/floor so the band edges are exact
    const std::int64_t lower = (p * 90 + 99) / 100;
    const std::int64_t upper = (p * 110) / 100;
    return {Money::from_ticks(lower), Money::from_ticks(upper)};
}

std::optional<RejectReason> validate_order(const Order& order, Money prev_close,
                                           Money available_cash, std::int64_t available_units) {
    if (order.quantity <= 0) return RejectReason::invalid_quantity;
    if (order.limit_price.ticks() <= 0 || !price_band(prev_close).contains(order.limit_price)) {
        return RejectReason::price_out_of_band;
    }
    if (order.side == Side::buy) {
        if (order.limit_price * order.quantity > available_cash) return RejectReason::insufficient_cash;
    } else {
        if (order.quantity > available_units) return RejectReason::insufficient_holdings;
    }
    return std::nullopt;
}

}  // namespace twinmarket::exchange
