#include "twinmarket/exchange/auction.hpp"

#include <algorithm>
#include <cstdlib>

namespace twinmarket::exchange {

std::int64_t AuctionResult::volume() const {
    std::int64_t v = 0;
    for (const auto& t : trades) v += t.quantity;
    return v;
}

std::int64_t executable_volume(std::span<const Order> orders, Money price) {
    std::int64_t buy = 0;
    std::int64_t sell = 0;
    for (const auto& o : orders) {
        if (o.side == Side::buy && o.limit_price >= price) buy += o.quantity;
        if (o.side == Side::sell && o.limit_price <= price) sell += o.quantity;
    }
    return std::min(buy, sell);
}

namespace {

struct Fill {
    const Order* order;
    std::int64_t filled;
};

// Fills `volume` units across eligible orders already sorted by priority.
std::vector<Fill> allocate(const std::vector<const Order*>& sorted, std::int64_t volume) {
    std::vector<Fill> fills;
    for (const Order* o : sorted) {
        if (volume == 0) break;
        const std::int64_t q = std::min(volume, o->quantity);
        fills.push_back({o, q});
        volume -= q;
    }
    return fills;
}

}  // namespace

AuctionResult match_call_auction(std::span<const Order> orders, Money prev_close, Day day) {
    AuctionResult result;
    if (orders.empty()) return result;

    std::vector<Money> candidates;
    candidates.reserve(orders.size());
    for (const auto& o : orders) candidates.push_back(o.limit_price);
    std::sort(candidates.begin(), candidates.end());
    candidates.erase(std::unique(candidates.begin(), candidates.end()), candidates.end());

    std::int64_t best_volume = 0;
    Money best_price;
    for (Money p : candidates) {
        const std::int64_t v = executable_volume(orders, p);
        if (v == 0) continue;
        const auto dist = std::llabs(p.ticks() - prev_close.ticks());
        const auto best_dist = std::llabs(best_price.ticks() - prev_close.ticks());
        // candidates ascend, so an equal-distance later price is never preferred
        if (v > best_volume || (v == best_volume && dist < best_dist)) {
            best_volume = v;
            best_price = p;
        }
    }

    std::vector<std::int64_t> filled_by_index(orders.size(), 0);
    if (best_volume > 0) {
        result.clearing_price = best_price;

        std::vector<const Order*> buys;
        std::vector<const Order*> sells;
        for (const auto& o : orders) {
            if (o.side == Side::buy && o.limit_price >= best_price) buys.push_back(&o);
            if (o.side == Side::sell && o.limit_price <= best_price) sells.push_back(&o);
        }
        std::sort(buys.begin(), buys.end(), [](const Order* a, const Order* b) {
            if (a->limit_price != b->limit_price) return a->limit_price > b->limit_price;
            return a->seq < b->seq;
        });
        std::sort(sells.begin(), sells.end(), [](const Order* a, const Order* b) {
            if (a->limit_price != b->limit_price) return a->limit_price < b->limit_price;
            return a->seq < b->seq;
        });

        auto buy_fills = allocate(buys, best_volume);
        auto sell_fills = allocate(sells, best_volume);

        for (const auto& f : buy_fills) filled_by_index[static_cast<std::size_t>(f.order - orders.data())] = f.filled;
        for (const auto& f : sell_fills) filled_by_index[static_cast<std::size_t>(f.order - orders.data())] = f.filled;

        // pair the two fill queues in priority order
        std::size_t bi = 0;
        std::size_t si = 0;
        while (bi < buy_fills.size() && si < sell_fills.size()) {
            const std::int64_t q = std::min(buy_fills[bi].filled, sell_fills[si].filled);
            result.trades.push_back(Trade{buy_fills[bi].order->agent_id, sell_fills[si].order->agent_id,
                                          buy_fills[bi].order->asset_id, best_price, q, day});
            buy_fills[bi].filled -= q;
            sell_fills[si].filled -= q;
            if (buy_fills[bi].filled == 0) ++bi;
            if (sell_fills[si].filled == 0) ++si;
        }
    }

    std::vector<Order> unfilled;
    for (std::size_t i = 0; i < orders.size(); ++i) {
        const std::int64_t rest = orders[i].quantity - filled_by_index[i];
        if (rest > 0) {
            Order o = orders[i];
            o.quantity = rest;
            unfilled.push_back(std::move(o));
        }
    }
    std::sort(unfilled.begin(), unfilled.end(), [](const Order& a, const Order& b) { return a.seq < b.seq; });
    result.unfilled = std::move(unfilled);
    return result;
}

}  // namespace twinmarket::exchange
