#include "twinmarket/analytics/performance.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "twinmarket/analytics/moments.hpp"
#include "twinmarket/common/errors.hpp"

namespace twinmarket::analytics {

PerformanceReport turnover_and_return(std::span<const exchange::Trade> trades,
                                      const std::map<AgentId, std::vector<std::pair<Day, double>>>& valuations) {
    std::map<std::pair<AgentId, Day>, double> traded;
    for (const auto& t : trades) {
        const double v = t.value().to_double();
        traded[{t.buyer_id, t.day}] += v;
        traded[{t.seller_id, t.day}] += v;
    }

    PerformanceReport rep;
    for (const auto& [id, series] : valuations) {
        AgentPerformance p;
        p.agent_id = id;
        if (series.size() >= 2) {
            double sum = 0.0;
            for (std::size_t i = 1; i < series.size(); ++i) {
                const double base = series[i - 1].second;
                auto it = traded.find({id, series[i].first});
                if (it != traded.end() && base > 0.0) sum += it->second / base;
            }
            p.turnover_pct = 100.0 * sum / static_cast<double>(series.size() - 1);
            const double first = series.front().second;
            if (first > 0.0) p.return_pct = 100.0 * (series.back().second - first) / first;
        }
        rep.agents.push_back(p);
    }
    std::stable_sort(rep.agents.begin(), rep.agents.end(),
                     [](const auto& a, const auto& b) { return a.return_pct > b.return_pct; });

    const std::size_t n = rep.agents.size();
    if (n == 0) return rep;
    const std::size_t top = (n + 9) / 10;
    const std::size_t bottom = std::max<std::size_t>(1, n / 2);
    for (std::size_t i = 0; i < top; ++i) {
        rep.top10_turnover_pct += rep.agents[i].turnover_pct / static_cast<double>(top);
        rep.top10_return_pct += rep.agents[i].return_pct / static_cast<double>(top);
    }
    for (std::size_t i = n - bottom; i < n; ++i) {
        rep.bottom50_turnover_pct += rep.agents[i].turnover_pct / static_cast<double>(bottom);
        rep.bottom50_return_pct += rep.agents[i].return_pct / static_cast<double>(bottom);
    }
    return rep;
}

TrackingMetrics tracking_metrics(std::span<const double> sim, std::span<const double> ref) {
    if (sim.size() != ref.size()) throw LengthMismatch("tracking series differ in length");
    if (sim.empty() || sim.front() == 0.0 || ref.front() == 0.0) {
        throw InvalidSpec("tracking series must be non-empty and start away from zero");
    }
    std::vector<double> a(sim.size()), b(ref.size());
    for (std::size_t i = 0; i < a.size(); ++i) {
        a[i] = sim[i] / sim.front();
        b[i] = ref[i] / ref.front();
    }
    TrackingMetrics m;
    double se = 0.0, ae = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        se += (a[i] - b[i]) * (a[i] - b[i]);
        ae += std::abs(a[i] - b[i]);
    }
    const double n = static_cast<double>(a.size());
    m.rmse = std::sqrt(se / n);
    m.mae = ae / n;
    try {
        m.corr = pearson(a, b);
    } catch (const Error&) {
        m.corr = std::numeric_limits<double>::quiet_NaN();
    }
    return m;
}

double sell_buy_ratio(std::span<const Side> decisions) {
    std::size_t buys = 0, sells = 0;
    for (Side s : decisions) (s == Side::buy ? buys : sells) += 1;
    if (buys == 0) throw NoBuys("sell/buy ratio without buys");
    return static_cast<double>(sells) / static_cast<double>(buys);
}

StylizedFactsReport stylized_facts(std::span<const double> prices, std::span<const double> volumes) {
    StylizedFactsReport rep;
    const auto r = log_returns(prices);
    rep.n_returns = r.size();
    auto attempt = [](auto&& f) {
        try {
            f();
        } catch (const TooFewSamples&) {
        } catch (const ZeroVariance&) {
        } catch (const LengthMismatch&) {
        }
    };
    attempt([&] { rep.kurtosis = kurtosis(r); });
    attempt([&] { rep.leverage = leverage_effect(r); });
    attempt([&] {
        if (volumes.size() != prices.size()) throw LengthMismatch("volumes must align with prices");
        const auto dv = volume_changes(volumes);
        const auto t = volume_return_test(dv, r);
        rep.volume_corr = t.correlation;
        rep.volume_p = t.p_value;
    });
    attempt([&] { rep.garch = garch_fit(r); });
    return rep;
}

}  // namespace twinmarket::analytics
