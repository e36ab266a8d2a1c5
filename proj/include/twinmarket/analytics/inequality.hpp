#pragma once

#include <map>
#include <span>

#include "twinmarket/common/ids.hpp"

namespace twinmarket::analytics {

/// Sorted-rank Gini: sum_i (2i - n - 1) x_(i) / (n sum x), i from 1.
/// Throws InvalidSpec on a negative wealth, AllZero when the total is zero.
double gini(std::span<const double> wealths);

struct WealthShares {
    double top10 = 0.0;     // richest ceil(n / 10) agents
    double bottom50 = 0.0;  // poorest floor(n / 2) agents
};

/// Ties in wealth are ordered by agent id. Throws AllZero.
WealthShares wealth_shares(const std::map<AgentId, double>& wealths);
/// Position in the span serves as the id.
WealthShares wealth_shares(std::span<const double> wealths);

struct InequalityReport {
    double gini = 0.0;
    WealthShares shares;
};

InequalityReport inequality(const std::map<AgentId, double>& wealths);

}  // namespace twinmarket::analytics
