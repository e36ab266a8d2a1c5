#pragma once

#include <map>
#include <span>
#include <vector>

#include "twinmarket/exchange/order.hpp"

namespace twinmarket::exchange {

struct Portfolio {
    AgentId agent_id;
    Money cash;
    std::map<AssetId, std::int64_t> holdings;
    /// Average purchase price per unit for each held asset.
    std::map<AssetId, double> cost_basis;

    [[nodiscard]] std::int64_t units(const AssetId& asset) const;
    [[nodiscard]] double average_cost(const AssetId& asset) const;
    /// Cash plus holdings valued at `prices`; assets without a price count as zero.
    [[nodiscard]] double total_value(const std::map<AssetId, double>& prices) const;

    friend bool operator==(const Portfolio&, const Portfolio&) = default;
};

/// Owns every agent's portfolio. Settlement needs exclusive access.
class PortfolioStore {
public:
    void add(Portfolio p);
    [[nodiscard]] bool contains(AgentId id) const { return by_agent_.count(id) != 0; }
    [[nodiscard]] const Portfolio& get(AgentId id) const;
    Portfolio& get_mut(AgentId id);
    [[nodiscard]] const std::map<AgentId, Portfolio>& all() const { return by_agent_; }
    [[nodiscard]] std::size_t size() const { return by_agent_.size(); }

    [[nodiscard]] Money total_cash() const;
    [[nodiscard]] std::map<AssetId, std::int64_t> total_holdings() const;

private:
    std::map<AgentId, Portfolio> by_agent_;
};

/// Applies trades at their execution price with no fees.
///
/// Throws ConsistencyError, leaving the store untouched, if a trade names an
/// unknown agent or would drive cash or holdings negative.
void settle(std::span<const Trade> trades, PortfolioStore& store);

}  // namespace twinmarket::exchange
