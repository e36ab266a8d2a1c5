#pragma once

#include <array>
#include <cstdint>
#include <string>

#include "twinmarket/common/ids.hpp"
#include "twinmarket/common/json.hpp"

namespace twinmarket::agents {

inline constexpr std::size_t kBeliefDims = 5;

enum BeliefDim : std::size_t { economy = 0, valuation = 1, trend = 2, peers = 3, self_assessment = 4 };

const char* belief_dim_name(std::size_t d);

/// Five scores on 0..10 where 5 is neutral.
struct BeliefState {
    std::array<double, kBeliefDims> dims{5.0, 5.0, 5.0, 5.0, 5.0};
    std::string narrative;
    Day last_updated = 0;

    [[nodiscard]] double mean() const;
    /// (mean - 5) / 5, in [-1, 1].
    [[nodiscard]] double tilt() const { return (mean() - 5.0) / 5.0; }
    void clamp();

    friend bool operator==(const BeliefState&, const BeliefState&) = default;
};

/// Affine map of the mean from 0..10 onto 1..5.
double sentiment_score(const BeliefState& b);

struct BeliefInitParams {
    double brar_percentile = 0.5;  // P
    double variance = 0.0;         // sigma^2
    std::uint64_t seed = 0;

    void validate() const;
};

/// Each dim ~ Normal(10 P, sigma^2) drawn from mt19937_64(seed) with
/// std::normal_distribution, then clamped to [0, 10].
BeliefState init_belief(const BeliefInitParams& params);

/// Short deterministic first-person summary of the scores.
std::string narrate(const BeliefState& b);

/// FNV-1a of the narrative, for compact logs.
std::uint64_t narrative_hash(const std::string& text);

ordered_json to_json(const BeliefState& b);

}  // namespace twinmarket::agents
