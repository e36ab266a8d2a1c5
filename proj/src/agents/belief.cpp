#include "twinmarket/agents/belief.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <random>

#include "twinmarket/common/errors.hpp"
#include "twinmarket/common/rng.hpp"

namespace twinmarket::agents {

const char* belief_dim_name(std::size_t d) {
    static const char* names[kBeliefDims] = {"economy", "valuation", "trend", "peers", "self_assessment"};
    return d < kBeliefDims ? names[d] : "unknown";
}

double BeliefState::mean() const {
    double s = 0.0;
    for (double d : dims) s += d;
    return s / static_cast<double>(kBeliefDims);
}

void BeliefState::clamp() {
    for (double& d : dims) d = std::clamp(d, 0.0, 10.0);
}

double sentiment_score(const BeliefState& b) { return 1.0 + 4.0 * (b.mean() / 10.0); }

void BeliefInitParams::validate() const {
    if (!(brar_percentile >= 0.0 && brar_percentile <= 1.0)) throw InvalidSpec("percentile outside [0, 1]");
    if (!(variance >= 0.0)) throw InvalidSpec("negative belief variance");
}

BeliefState init_belief(const BeliefInitParams& params) {
    params.validate();
    BeliefState b;
    const double mu = 10.0 * params.brar_percentile;
    if (params.variance == 0.0) {
        b.dims.fill(mu);
    } else {
        Rng rng(params.seed);
        std::normal_distribution<double> dist(mu, std::sqrt(params.variance));
        for (double& d : b.dims) d = dist(rng);
    }
    b.clamp();
    b.narrative = narrate(b);
    return b;
}

namespace {

const char* stance_word(double score) {
    if (score >= 7.0) return "clearly positive";
    if (score >= 5.5) return "mildly positive";
    if (score > 4.5) return "neutral";
    if (score > 3.0) return "mildly negative";
    return "clearly negative";
}

}  // namespace

std::string narrate(const BeliefState& b) {
    std::string s = "My view:";
    for (std::size_t d = 0; d < kBeliefDims; ++d) {
        char buf[96];
        std::snprintf(buf, sizeof buf, " %s %s (%.1f)%c", belief_dim_name(d), stance_word(b.dims[d]), b.dims[d],
                      d + 1 == kBeliefDims ? '.' : ';');
        s += buf;
    }
    return s;
}

std::uint64_t narrative_hash(const std::string& text) { return hash_tag(text); }

ordered_json to_json(const BeliefState& b) {
    ordered_json j;
    j["dims"] = b.dims;
    j["sentiment"] = sentiment_score(b);
    j["narrative_hash"] = narrative_hash(b.narrative);
    return j;
}

}  // namespace twinmarket::agents
