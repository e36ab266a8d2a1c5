#include "twinmarket/baselines/hpm.hpp"

#include <cmath>
#include <random>

#include "twinmarket/common/errors.hpp"
#include "twinmarket/common/rng.hpp"

namespace twinmarket::baselines {

void HPMParams::validate() const {
    if (sigma_f < 0.0 || sigma_c < 0.0) throw ParameterDomain("noise scales must be non-negative");
    if (T < 1) throw ParameterDomain("horizon must be at least 1");
    if (beta < 0.0) throw ParameterDomain("switching intensity must be non-negative");
    if (mu < 0.0) throw ParameterDomain("market impact must be non-negative");
}

HPMResult simulate_hpm(const HPMParams& params) {
    params.validate();
    Rng rng(params.seed);
    std::normal_distribution<double> z(0.0, 1.0);

    HPMResult out;
    out.prices.reserve(params.T);
    out.fundamentalists.reserve(params.T);

    double p = params.p0;
    double p_prev = params.p0;
    double nf = 0.5;
    for (std::size_t t = 0; t < params.T; ++t) {
        out.prices.push_back(params.price_scale * std::exp(p));
        // attractiveness of fundamentalism given last step's state
        const double a = params.alpha0 + params.alpha_n * (2.0 * nf - 1.0) +
                         params.alpha_p * (p - params.p_star) * (p - params.p_star);
        nf = 1.0 / (1.0 + std::exp(-params.beta * a));
        out.fundamentalists.push_back(nf);
        const double ef = z(rng);
        const double ec = z(rng);
        const double df = params.phi * (params.p_star - p) + params.sigma_f * ef;
        const double dc = params.chi * (p - p_prev) + params.sigma_c * ec;
        const double next = p + params.mu * (nf * df + (1.0 - nf) * dc);
        p_prev = p;
        p = next;
    }
    for (std::size_t t = 1; t < out.prices.size(); ++t) {
        out.returns.push_back(std::log(out.prices[t] / out.prices[t - 1]));
    }
    return out;
}

}  // namespace twinmarket::baselines
