#pragma once

#include <map>
#include <optional>
#include <span>
#include <vector>

#include "twinmarket/analytics/garch.hpp"
#include "twinmarket/exchange/order.hpp"

namespace twinmarket::analytics {

struct AgentPerformance {
    AgentId agent_id;
    double turnover_pct = 0.0;  // mean daily traded value / assets at the start of the day
    double return_pct = 0.0;
};

struct PerformanceReport {
    std::vector<AgentPerformance> agents;  // ranked by return, best first, ties by id
    double top10_turnover_pct = 0.0;
    double top10_return_pct = 0.0;
    double bottom50_turnover_pct = 0.0;
    double bottom50_return_pct = 0.0;
};

/// `valuations[agent]` lists total assets by day, the first entry being the
/// value before the first simulated day. Trades whose day is not in the
/// series are ignored. Both counterparties count a trade's value.
PerformanceReport turnover_and_return(std::span<const exchange::Trade> trades,
                                      const std::map<AgentId, std::vector<std::pair<Day, double>>>& valuations);

struct TrackingMetrics {
    double rmse = 0.0;
    double mae = 0.0;
    double corr = 0.0;  // NaN when either normalized series is constant
};

/// Both series rescaled to start at 1. Throws LengthMismatch, or InvalidSpec
/// when a series is empty or starts at 0.
TrackingMetrics tracking_metrics(std::span<const double> sim, std::span<const double> ref);

/// count(sell) / count(buy). Throws NoBuys.
double sell_buy_ratio(std::span<const Side> decisions);

struct StylizedFactsReport {
    std::size_t n_returns = 0;
    std::optional<double> kurtosis;
    std::optional<double> leverage;
    std::optional<double> volume_corr;
    std::optional<double> volume_p;
    std::optional<GarchFit> garch;
};

/// All four measures on one price/volume series; a measure that cannot be
/// computed (too few samples, zero variance) is left empty.
StylizedFactsReport stylized_facts(std::span<const double> prices, std::span<const double> volumes);

}  // namespace twinmarket::analytics
