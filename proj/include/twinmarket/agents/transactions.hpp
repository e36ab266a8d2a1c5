#pragma once

#include <map>
#include <vector>

#include "twinmarket/common/rng.hpp"
#include "twinmarket/socialgraph/graph.hpp"

namespace twinmarket::agents {

/// Behavioural template taken from one (anonymized) investor's history.
struct TemplateStats {
    std::size_t trade_count = 0;
    std::map<AssetId, double> industry_weights;  // unnormalized
    double buy_probability = 0.5;
    std::vector<std::int64_t> volumes;           // empirical volume sample
};

/// Records for `user` whose count is trade_count scaled by a uniform factor
/// in [0.8, 1.2] (rounded); industry, direction and volume are drawn from the
/// template and days uniformly from [first_day, first_day + history_days).
/// Throws EmptyTemplate when trades are requested but the template has no
/// industries or volumes.
std::vector<socialgraph::TradeRecord> synth_transactions(AgentId user, const TemplateStats& tmpl, Day first_day,
                                                         int history_days, std::uint64_t seed);

/// Template summarizing existing records.
TemplateStats template_from_records(std::span<const socialgraph::TradeRecord> records);

/// Seeded stand-in for a real investor template, favouring `preferred`.
TemplateStats random_template(const std::vector<AssetId>& industries, const std::vector<AssetId>& preferred,
                              Rng& rng);

}  // namespace twinmarket::agents
