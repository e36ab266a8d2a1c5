#pragma once

#include <span>
#include <vector>

namespace twinmarket::analytics {

/// r_t = ln(P_t / P_{t-1}). Throws InvalidSpec on a non-positive price.
std::vector<double> log_returns(std::span<const double> prices);

double mean(std::span<const double> x);
/// Population variance (divides by n).
double variance(std::span<const double> x);
/// Pearson correlation. Throws LengthMismatch, TooFewSamples (n < 2) or ZeroVariance.
double pearson(std::span<const double> x, std::span<const double> y);

/// Raw (non-excess) kurtosis m4 / m2^2. Throws TooFewSamples (n < 4) or ZeroVariance.
double kurtosis(std::span<const double> returns);

/// Correlation of |r_t| with |r_{t+lag}| over the days with r_t < 0.
/// Throws TooFewSamples when fewer than 10 such days have a successor.
double leverage_effect(std::span<const double> returns, std::size_t lag = 1);

/// Same statistic over every day, for comparison.
double abs_autocorrelation(std::span<const double> returns, std::size_t lag = 1);

enum class VolumeChange { absolute, percent };

/// vol_t - vol_{t-1}, or its ratio to vol_{t-1} (0 when the base is 0).
std::vector<double> volume_changes(std::span<const double> volumes, VolumeChange kind = VolumeChange::absolute);

struct VolumeReturnTest {
    double correlation = 0.0;
    double p_value = 1.0;  // two-sided, Student t with n - 2 degrees of freedom
    std::size_t n = 0;
};

/// Pearson correlation between |r_t| and the volume change, with its t-test.
/// Throws LengthMismatch, TooFewSamples (n < 10) or ZeroVariance.
VolumeReturnTest volume_return_test(std::span<const double> volume_changes, std::span<const double> returns);

}  // namespace twinmarket::analytics
