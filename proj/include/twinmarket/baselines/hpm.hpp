#pragma once

#include <cstdint>
#include <vector>

namespace twinmarket::baselines {

/// Fundamentalist/chartist model with discrete-choice switching driven by
/// herding, predisposition and price misalignment. Prices are in logs
/// around p_star; defaults are the usual estimated parameter set.
struct HPMParams {
    double p_star = 0.0;     // log fundamental value
    double p0 = 0.0;         // initial log price
    double phi = 0.12;       // fundamentalist reaction to mispricing
    double chi = 1.50;       // chartist reaction to the last change
    double alpha0 = -0.327;  // predisposition towards fundamentalism
    double alpha_n = 1.79;   // herding
    double alpha_p = 18.43;  // misalignment
    double sigma_f = 0.758;
    double sigma_c = 2.087;
    double mu = 0.01;        // market impact
    double beta = 1.0;       // intensity of switching
    double price_scale = 100.0;
    std::size_t T = 5000;
    std::uint64_t seed = 1;

    /// Throws ParameterDomain.
    void validate() const;
};

struct HPMResult {
    std::vector<double> prices;        // price_scale * exp(log price), length T
    std::vector<double> returns;       // log returns, length T - 1
    std::vector<double> fundamentalists;  // share n_f at each step; chartists are 1 - n_f
};

HPMResult simulate_hpm(const HPMParams& params);

}  // namespace twinmarket::baselines
