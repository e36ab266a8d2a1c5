#pragma once

#include <span>

namespace twinmarket::analytics {

struct GarchFit {
    double omega = 0.0;
    double alpha = 0.0;
    double beta = 0.0;
    double loglik = 0.0;
    bool converged = false;
    std::size_t n = 0;

    [[nodiscard]] double persistence() const { return alpha + beta; }
};

/// Gaussian GARCH(1,1) on demeaned returns:
/// s2_t = omega + alpha e_{t-1}^2 + beta s2_{t-1}, s2_0 = sample variance.
double garch_loglik(std::span<const double> returns, double omega, double alpha, double beta);

/// Maximum likelihood over omega > 0, alpha >= 0, beta >= 0, alpha + beta < 1.
/// Nelder-Mead on an unconstrained reparameterization. A coarse pass runs
/// from every stationary (alpha, beta) in {0.05, 0.1, 0.2} x {0.6, 0.8, 0.9}; the best
/// end point is then polished to a tight tolerance. `converged` reports
/// whether the polish met that tolerance. Throws TooFewSamples (n < 10) or
/// ZeroVariance.
GarchFit garch_fit(std::span<const double> returns);

}  // namespace twinmarket::analytics
