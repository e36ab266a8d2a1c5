#include "twinmarket/exchange/portfolio.hpp"

#include <sstream>

#include "twinmarket/common/errors.hpp"

namespace twinmarket::exchange {

std::int64_t Portfolio::units(const AssetId& asset) const {
    auto it = holdings.find(asset);
    return it == holdings.end() ? 0 : it->second;
}

double Portfolio::average_cost(const AssetId& asset) const {
    auto it = cost_basis.find(asset);
    return it == cost_basis.end() ? 0.0 : it->second;
}

double Portfolio::total_value(const std::map<AssetId, double>& prices) const {
    double v = cash.to_double();
    for (const auto& [asset, q] : holdings) {
        auto it = prices.find(asset);
        if (it != prices.end()) v += static_cast<double>(q) * it->second;
    }
    return v;
}

void PortfolioStore::add(Portfolio p) {
    const AgentId id = p.agent_id;
    by_agent_.insert_or_assign(id, std::move(p));
}

const Portfolio& PortfolioStore::get(AgentId id) const {
    auto it = by_agent_.find(id);
    if (it == by_agent_.end()) {
        std::ostringstream os;
        os << "no portfolio for agent " << id;
        throw ConsistencyError(os.str());
    }
    return it->second;
}

Portfolio& PortfolioStore::get_mut(AgentId id) {
    return const_cast<Portfolio&>(std::as_const(*this).get(id));
}

Money PortfolioStore::total_cash() const {
    Money total;
    for (const auto& [_, p] : by_agent_) total += p.cash;
    return total;
}

std::map<AssetId, std::int64_t> PortfolioStore::total_holdings() const {
    std::map<AssetId, std::int64_t> out;
    for (const auto& [_, p] : by_agent_) {
        for (const auto& [asset, q] : p.holdings) out[asset] += q;
    }
    return out;
}

void settle(std::span<const Trade> trades, PortfolioStore& store) {
    if (trades.empty()) return;

    std::map<AgentId, Portfolio> touched;
    auto working = [&](AgentId id) -> Portfolio& {
        auto it = touched.find(id);
        if (it == touched.end()) it = touched.emplace(id, store.get(id)).first;
        return it->second;
    };

    for (const auto& t : trades) {
        if (t.quantity <= 0) throw ConsistencyError("non-positive trade quantity");
        const Money value = t.value();

        Portfolio& buyer = working(t.buyer_id);
        const std::int64_t held = buyer.units(t.asset_id);
        const double cost = buyer.average_cost(t.asset_id);
        buyer.cash -= value;
        buyer.holdings[t.asset_id] = held + t.quantity;
        buyer.cost_basis[t.asset_id] =
            (cost * static_cast<double>(held) + t.price.to_double() * static_cast<double>(t.quantity)) /
            static_cast<double>(held + t.quantity);
        if (buyer.cash.ticks() < 0) {
            std::ostringstream os;
            os << "agent " << t.buyer_id << " cash would go negative";
            throw ConsistencyError(os.str());
        }

        Portfolio& seller = working(t.seller_id);
        const std::int64_t left = seller.units(t.asset_id) - t.quantity;
        if (left < 0) {
            std::ostringstream os;
            os << "agent " << t.seller_id << " holdings of " << t.asset_id << " would go negative";
            throw ConsistencyError(os.str());
        }
        seller.cash += value;
        if (left == 0) {
            seller.holdings.erase(t.asset_id);
            seller.cost_basis.erase(t.asset_id);
        } else {
            seller.holdings[t.asset_id] = left;
        }
    }

    for (auto& [id, p] : touched) store.add(std::move(p));
}

}  // namespace twinmarket::exchange
