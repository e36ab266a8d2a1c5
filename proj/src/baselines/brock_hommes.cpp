#include "twinmarket/baselines/brock_hommes.hpp"

#include <algorithm>
#include <cmath>
#include <random>

#include "twinmarket/common/errors.hpp"
#include "twinmarket/common/rng.hpp"

namespace twinmarket::baselines {

void BHParams::validate() const {
    if (types.empty()) throw ParameterDomain("at least one belief type is required");
    if (intensity < 0.0) throw ParameterDomain("intensity of choice must be non-negative");
    if (!(R > 0.0)) throw ParameterDomain("R must be positive");
    if (sigma < 0.0 || sv_vol < 0.0) throw ParameterDomain("noise scales must be non-negative");
    if (!(std::abs(sv_persistence) < 1.0)) throw ParameterDomain("volatility persistence must lie in (-1, 1)");
    if (!(memory >= 0.0 && memory <= 1.0)) throw ParameterDomain("memory must lie in [0, 1]");
    if (T < 1) throw ParameterDomain("horizon must be at least 1");
}

std::vector<double> discrete_choice(const std::vector<double>& fitness, double intensity) {
    std::vector<double> w(fitness.size());
    if (fitness.empty()) return w;
    const double top = *std::max_element(fitness.begin(), fitness.end());
    double total = 0.0;
    for (std::size_t h = 0; h < w.size(); ++h) {
        w[h] = std::exp(intensity * (fitness[h] - top));
        total += w[h];
    }
    for (double& x : w) x /= total;
    return w;
}

BHResult simulate_bh(const BHParams& params) {
    params.validate();
    Rng rng(params.seed);
    std::normal_distribution<double> z(0.0, 1.0);
    const std::size_t H = params.types.size();

    BHResult out;
    out.prices.reserve(params.T);
    out.fractions.reserve(params.T);

    std::vector<double> fitness(H, 0.0);
    std::vector<double> n(H, 1.0 / static_cast<double>(H));
    double x1 = 0.0;  // x_{t-1}
    double x2 = 0.0;  // x_{t-2}
    double log_var = 0.0;
    for (std::size_t t = 0; t < params.T; ++t) {
        log_var = params.sv_persistence * log_var + params.sv_vol * z(rng);
        const double eps = params.sigma * std::exp(0.5 * log_var) * z(rng);
        double expect = 0.0;
        for (std::size_t h = 0; h < H; ++h) expect += n[h] * (params.types[h].trend * x1 + params.types[h].bias);
        const double x = (expect + eps) / params.R;

        // realized excess return times each type's earlier forecast error
        const double excess = x - params.R * x1;
        for (std::size_t h = 0; h < H; ++h) {
            const double forecast = params.types[h].trend * x2 + params.types[h].bias;
            fitness[h] = excess * (forecast - params.R * x1) - params.types[h].cost + params.memory * fitness[h];
        }
        n = discrete_choice(fitness, params.intensity);

        const double price = params.p_star + x;
        if (!(price > 0.0) || !std::isfinite(price)) throw ParameterDomain("price left the positive range");
        out.prices.push_back(price);
        out.fractions.push_back(n);
        x2 = x1;
        x1 = x;
    }
    for (std::size_t t = 1; t < out.prices.size(); ++t) {
        out.returns.push_back(std::log(out.prices[t] / out.prices[t - 1]));
    }
    return out;
}

}  // namespace twinmarket::baselines
