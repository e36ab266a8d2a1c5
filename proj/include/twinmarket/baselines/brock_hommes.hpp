#pragma once

#include <cstdint>
#include <vector>

namespace twinmarket::baselines {

struct BeliefType {
    double trend = 0.0;  // g_h
    double bias = 0.0;   // b_h
    double cost = 0.0;   // per-period cost of using the predictor
};

/// Heterogeneous-beliefs asset pricing with discrete-choice type fractions
/// and a log-AR(1) stochastic-volatility noise. Works in deviations x from
/// the fundamental price.
struct BHParams {
    std::vector<BeliefType> types{{0.0, 0.0, 0.0}, {1.1, 0.2, 0.0}, {0.9, -0.2, 0.0}, {1.21, 0.0, 0.0}};
    double intensity = 50.0;  // beta
    double R = 1.1;           // gross risk-free rate, also the discount on expectations
    double memory = 0.0;      // weight on past fitness
    double p_star = 10.0;
    double sigma = 0.05;      // long-run noise scale
    double sv_persistence = 0.95;
    double sv_vol = 0.25;     // std of log-variance shocks
    std::size_t T = 5000;
    std::uint64_t seed = 1;

    /// Throws ParameterDomain.
    void validate() const;
};

struct BHResult {
    std::vector<double> prices;   // p_star + x_t, length T
    std::vector<double> returns;  // log returns, length T - 1
    std::vector<std::vector<double>> fractions;  // per step, one share per type
};

/// Throws ParameterDomain if the price leaves the positive half-line.
BHResult simulate_bh(const BHParams& params);

/// Discrete-choice shares exp(beta U_h) / sum_k exp(beta U_k), computed stably.
std::vector<double> discrete_choice(const std::vector<double>& fitness, double intensity);

}  // namespace twinmarket::baselines
