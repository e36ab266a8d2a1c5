#include "twinmarket/analytics/inequality.hpp"

#include <algorithm>
#include <vector>

#include "twinmarket/common/errors.hpp"

namespace twinmarket::analytics {

double gini(std::span<const double> wealths) {
    if (wealths.empty()) throw AllZero("no wealth values");
    std::vector<double> x(wealths.begin(), wealths.end());
    double total = 0.0;
    for (double v : x) {
        if (v < 0.0) throw InvalidSpec("negative wealth");
        total += v;
    }
    if (total <= 0.0) throw AllZero("total wealth is zero");
    std::sort(x.begin(), x.end());
    const double n = static_cast<double>(x.size());
    double acc = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) acc += (2.0 * static_cast<double>(i + 1) - n - 1.0) * x[i];
    return acc / (n * total);
}

WealthShares wealth_shares(const std::map<AgentId, double>& wealths) {
    std::vector<std::pair<double, AgentId>> v;
    double total = 0.0;
    for (const auto& [id, w] : wealths) {
        if (w < 0.0) throw InvalidSpec("negative wealth");
        v.emplace_back(w, id);
        total += w;
    }
    if (v.empty() || total <= 0.0) throw AllZero("total wealth is zero");
    std::sort(v.begin(), v.end());
    const std::size_t n = v.size();
    const std::size_t top = (n + 9) / 10;
    const std::size_t bottom = n / 2;
    WealthShares s;
    for (std::size_t i = 0; i < bottom; ++i) s.bottom50 += v[i].first;
    for (std::size_t i = n - top; i < n; ++i) s.top10 += v[i].first;
    s.top10 /= total;
    s.bottom50 /= total;
    return s;
}

WealthShares wealth_shares(std::span<const double> wealths) {
    std::map<AgentId, double> m;
    for (std::size_t i = 0; i < wealths.size(); ++i) m[AgentId(static_cast<std::uint32_t>(i))] = wealths[i];
    return wealth_shares(m);
}

InequalityReport inequality(const std::map<AgentId, double>& wealths) {
    std::vector<double> w;
    for (const auto& [_, x] : wealths) w.push_back(x);
    return {gini(w), wealth_shares(wealths)};
}

}  // namespace twinmarket::analytics
