#include "twinmarket/agents/transactions.hpp"

#include <algorithm>
#include <cmath>

#include "twinmarket/common/errors.hpp"

namespace twinmarket::agents {

std::vector<socialgraph::TradeRecord> synth_transactions(AgentId user, const TemplateStats& tmpl, Day first_day,
                                                         int history_days, std::uint64_t seed) {
    if (tmpl.trade_count == 0) return {};
    double total_w = 0.0;
    for (const auto& [_, w] : tmpl.industry_weights) {
        if (w < 0.0) throw InvalidSpec("negative industry weight");
        total_w += w;
    }
    if (total_w <= 0.0 || tmpl.volumes.empty()) throw EmptyTemplate("template has no industries or volumes");
    if (history_days < 1) throw InvalidSpec("history window must cover at least one day");

    Rng rng(seed);
    const double jitter = 0.8 + 0.4 * uniform01(rng);
    const auto count = static_cast<std::size_t>(std::lround(static_cast<double>(tmpl.trade_count) * jitter));

    std::vector<std::pair<AssetId, double>> cdf;
    double acc = 0.0;
    for (const auto& [ind, w] : tmpl.industry_weights) {
        if (w <= 0.0) continue;
        acc += w / total_w;
        cdf.emplace_back(ind, acc);
    }

    std::vector<socialgraph::TradeRecord> out;
    out.reserve(count);
    for (std::size_t i = 0; i < count; ++i) {
        socialgraph::TradeRecord r;
        r.user_id = user;
        const double u = uniform01(rng);
        auto it = std::find_if(cdf.begin(), cdf.end(), [&](const auto& c) { return u < c.second; });
        r.industry = it == cdf.end() ? cdf.back().first : it->first;
        r.direction = uniform01(rng) < tmpl.buy_probability ? Side::buy : Side::sell;
        const auto vi = static_cast<std::size_t>(uniform01(rng) * static_cast<double>(tmpl.volumes.size()));
        r.volume = tmpl.volumes[std::min(vi, tmpl.volumes.size() - 1)];
        r.day = first_day + static_cast<Day>(uniform01(rng) * history_days);
        out.push_back(std::move(r));
    }
    std::stable_sort(out.begin(), out.end(), [](const auto& a, const auto& b) { return a.day < b.day; });
    return out;
}

TemplateStats template_from_records(std::span<const socialgraph::TradeRecord> records) {
    TemplateStats t;
    t.trade_count = records.size();
    std::size_t buys = 0;
    for (const auto& r : records) {
        t.industry_weights[r.industry] += 1.0;
        t.volumes.push_back(r.volume);
        buys += r.direction == Side::buy ? 1 : 0;
    }
    t.buy_probability = records.empty() ? 0.5 : static_cast<double>(buys) / static_cast<double>(records.size());
    return t;
}

TemplateStats random_template(const std::vector<AssetId>& industries, const std::vector<AssetId>& preferred,
                              Rng& rng) {
    TemplateStats t;
    t.trade_count = 5 + static_cast<std::size_t>(uniform01(rng) * 26.0);
    for (const auto& ind : industries) t.industry_weights[ind] = 0.2 * uniform01(rng);
    for (const auto& ind : preferred) t.industry_weights[ind] += 1.0 + uniform01(rng);
    t.buy_probability = 0.5 + 0.3 * uniform01(rng);
    for (int i = 0; i < 20; ++i) {
        t.volumes.push_back(100 * (1 + static_cast<std::int64_t>(uniform01(rng) * 20.0)));
    }
    return t;
}

}  // namespace twinmarket::agents
