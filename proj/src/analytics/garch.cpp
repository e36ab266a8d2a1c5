#include "twinmarket/analytics/garch.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <vector>

#include <gsl/gsl_errno.h>
#include <gsl/gsl_multimin.h>

#include "twinmarket/analytics/moments.hpp"
#include "twinmarket/common/errors.hpp"

namespace twinmarket::analytics {

namespace {

double loglik_demeaned(std::span<const double> e, double var0, double omega, double alpha, double beta) {
    double s2 = var0;
    double ll = 0.0;
    const double log2pi = std::log(2.0 * std::numbers::pi);
    for (std::size_t t = 0; t < e.size(); ++t) {
        if (t > 0) s2 = omega + alpha * e[t - 1] * e[t - 1] + beta * s2;
        if (!(s2 > 0.0)) return -std::numeric_limits<double>::infinity();
        ll -= 0.5 * (log2pi + std::log(s2) + e[t] * e[t] / s2);
    }
    return ll;
}

double logistic(double x) { return 1.0 / (1.0 + std::exp(-x)); }
double logit(double p) { return std::log(p / (1.0 - p)); }

struct Problem {
    std::span<const double> e;
    double var0;
};

// theta = (log omega, logit(alpha + beta), logit(alpha / (alpha + beta)))
void unpack(const gsl_vector* x, double& omega, double& alpha, double& beta) {
    omega = std::exp(gsl_vector_get(x, 0));
    const double p = std::min(logistic(gsl_vector_get(x, 1)), 1.0 - 1e-12);
    const double share = logistic(gsl_vector_get(x, 2));
    alpha = p * share;
    beta = p - alpha;
}

double objective(const gsl_vector* x, void* params) {
    const auto* pr = static_cast<const Problem*>(params);
    double omega, alpha, beta;
    unpack(x, omega, alpha, beta);
    const double ll = loglik_demeaned(pr->e, pr->var0, omega, alpha, beta);
    return std::isfinite(ll) ? -ll / static_cast<double>(pr->e.size()) : 1e100;
}

}  // namespace

double garch_loglik(std::span<const double> returns, double omega, double alpha, double beta) {
    const double m = mean(returns);
    std::vector<double> e(returns.begin(), returns.end());
    for (double& v : e) v -= m;
    return loglik_demeaned(e, variance(e), omega, alpha, beta);
}

GarchFit garch_fit(std::span<const double> returns) {
    if (returns.size() < 10) throw TooFewSamples("GARCH fit needs at least 10 returns");
    const double m = mean(returns);
    std::vector<double> e(returns.begin(), returns.end());
    for (double& v : e) v -= m;
    const double var0 = variance(e);
    if (!(var0 > 0.0)) throw ZeroVariance("GARCH fit of a constant series");

    Problem pr{e, var0};
    gsl_multimin_function fn{&objective, 3, &pr};
    gsl_set_error_handler_off();

    // Nelder-Mead from x until the simplex shrinks below `tol`; returns the end point.
    auto descend = [&](gsl_vector* x, double step_size, double tol, bool& ok) {
        gsl_vector* step = gsl_vector_alloc(3);
        gsl_vector_set_all(step, step_size);
        gsl_multimin_fminimizer* s = gsl_multimin_fminimizer_alloc(gsl_multimin_fminimizer_nmsimplex2, 3);
        gsl_multimin_fminimizer_set(s, &fn, x, step);
        int status = GSL_CONTINUE;
        for (int iter = 0; iter < 5000 && status == GSL_CONTINUE; ++iter) {
            if (gsl_multimin_fminimizer_iterate(s)) break;
            status = gsl_multimin_test_size(gsl_multimin_fminimizer_size(s), tol);
        }
        gsl_vector_memcpy(x, s->x);
        ok = status == GSL_SUCCESS;
        gsl_multimin_fminimizer_free(s);
        gsl_vector_free(step);
    };
    auto to_fit = [&](const gsl_vector* x, bool ok) {
        GarchFit fit;
        fit.n = returns.size();
        unpack(x, fit.omega, fit.alpha, fit.beta);
        fit.loglik = loglik_demeaned(e, var0, fit.omega, fit.alpha, fit.beta);
        fit.converged = ok && std::isfinite(fit.loglik);
        return fit;
    };

    // coarse pass from every start, then a tight polish from the best end point
    gsl_vector* x = gsl_vector_alloc(3);
    gsl_vector* best_x = gsl_vector_alloc(3);
    double best_ll = -std::numeric_limits<double>::infinity();
    bool any = false;
    for (double a0 : {0.05, 0.1, 0.2}) {
        for (double b0 : {0.6, 0.8, 0.9}) {
            if (a0 + b0 >= 1.0 - 1e-9) continue;  // outside the stationary region
            gsl_vector_set(x, 0, std::log(var0 * (1.0 - a0 - b0)));
            gsl_vector_set(x, 1, logit(a0 + b0));
            gsl_vector_set(x, 2, logit(a0 / (a0 + b0)));
            bool ok = false;
            descend(x, 0.5, 1e-3, ok);
            const GarchFit f = to_fit(x, ok);
            if (!any || f.loglik > best_ll) {
                best_ll = f.loglik;
                gsl_vector_memcpy(best_x, x);
                any = true;
            }
        }
    }
    bool ok = false;
    descend(best_x, 0.05, 1e-6, ok);
    const GarchFit fit = to_fit(best_x, ok);
    gsl_vector_free(best_x);
    gsl_vector_free(x);
    return fit;
}

}  // namespace twinmarket::analytics
