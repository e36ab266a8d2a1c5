#include "twinmarket/analytics/moments.hpp"

#include <cmath>

#include <gsl/gsl_cdf.h>

#include "twinmarket/common/errors.hpp"

namespace twinmarket::analytics {

std::vector<double> log_returns(std::span<const double> prices) {
    std::vector<double> r;
    if (prices.size() < 2) return r;
    r.reserve(prices.size() - 1);
    for (std::size_t i = 1; i < prices.size(); ++i) {
        if (!(prices[i - 1] > 0.0) || !(prices[i] > 0.0)) throw InvalidSpec("log return of a non-positive price");
        r.push_back(std::log(prices[i] / prices[i - 1]));
    }
    return r;
}

double mean(std::span<const double> x) {
    if (x.empty()) return 0.0;
    double s = 0.0;
    for (double v : x) s += v;
    return s / static_cast<double>(x.size());
}

double variance(std::span<const double> x) {
    if (x.empty()) return 0.0;
    const double m = mean(x);
    double s = 0.0;
    for (double v : x) s += (v - m) * (v - m);
    return s / static_cast<double>(x.size());
}

double pearson(std::span<const double> x, std::span<const double> y) {
    if (x.size() != y.size()) throw LengthMismatch("correlation of series with different lengths");
    if (x.size() < 2) throw TooFewSamples("correlation needs two points");
    const double mx = mean(x);
    const double my = mean(y);
    double sxy = 0.0, sxx = 0.0, syy = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        sxy += (x[i] - mx) * (y[i] - my);
        sxx += (x[i] - mx) * (x[i] - mx);
        syy += (y[i] - my) * (y[i] - my);
    }
    if (sxx <= 0.0 || syy <= 0.0) throw ZeroVariance("correlation of a constant series");
    return sxy / std::sqrt(sxx * syy);
}

double kurtosis(std::span<const double> returns) {
    if (returns.size() < 4) throw TooFewSamples("kurtosis needs at least 4 observations");
    const double m = mean(returns);
    double m2 = 0.0, m4 = 0.0;
    for (double r : returns) {
        const double d = (r - m) * (r - m);
        m2 += d;
        m4 += d * d;
    }
    const double n = static_cast<double>(returns.size());
    m2 /= n;
    m4 /= n;
    if (m2 <= 0.0) throw ZeroVariance("kurtosis of a constant series");
    return m4 / (m2 * m2);
}

double leverage_effect(std::span<const double> returns, std::size_t lag) {
    if (lag == 0) throw InvalidSpec("lag must be positive");
    std::vector<double> now, later;
    for (std::size_t t = 0; t + lag < returns.size(); ++t) {
        if (returns[t] < 0.0) {
            now.push_back(std::abs(returns[t]));
            later.push_back(std::abs(returns[t + lag]));
        }
    }
    if (now.size() < 10) throw TooFewSamples("leverage effect needs 10 negative-return days");
    return pearson(now, later);
}

double abs_autocorrelation(std::span<const double> returns, std::size_t lag) {
    if (lag == 0 || returns.size() <= lag) throw TooFewSamples("series shorter than the lag");
    std::vector<double> now, later;
    for (std::size_t t = 0; t + lag < returns.size(); ++t) {
        now.push_back(std::abs(returns[t]));
        later.push_back(std::abs(returns[t + lag]));
    }
    return pearson(now, later);
}

std::vector<double> volume_changes(std::span<const double> volumes, VolumeChange kind) {
    std::vector<double> out;
    for (std::size_t i = 1; i < volumes.size(); ++i) {
        const double d = volumes[i] - volumes[i - 1];
        if (kind == VolumeChange::absolute) {
            out.push_back(d);
        } else {
            out.push_back(volumes[i - 1] != 0.0 ? d / volumes[i - 1] : 0.0);
        }
    }
    return out;
}

VolumeReturnTest volume_return_test(std::span<const double> volume_changes, std::span<const double> returns) {
    if (volume_changes.size() != returns.size()) throw LengthMismatch("volume and return series differ in length");
    if (returns.size() < 10) throw TooFewSamples("volume-return test needs 10 observations");
    std::vector<double> abs_r(returns.size());
    for (std::size_t i = 0; i < returns.size(); ++i) abs_r[i] = std::abs(returns[i]);
    VolumeReturnTest out;
    out.n = returns.size();
    out.correlation = pearson(abs_r, volume_changes);
    const double df = static_cast<double>(out.n) - 2.0;
    const double r2 = out.correlation * out.correlation;
    if (r2 >= 1.0) {
        out.p_value = 0.0;
    } else {
        const double t = std::abs(out.correlation) * std::sqrt(df / (1.0 - r2));
        out.p_value = 2.0 * gsl_cdf_tdist_Q(t, df);
    }
    return out;
}

}  // namespace twinmarket::analytics
