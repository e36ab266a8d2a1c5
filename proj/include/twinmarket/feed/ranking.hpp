#pragma once

#include <vector>

#include "twinmarket/feed/post.hpp"
#include "twinmarket/socialgraph/graph.hpp"

namespace twinmarket::feed {

struct FeedParams {
    double alpha = 1.0;     // days
    double epsilon = 1e-3;  // floor on normalized age
    std::size_t k = 5;
    int window = 14;        // lookback in days, inclusive of `now - window`

    void validate() const;
};

/// log10(max(u - d + 1, 1)) / (max((now - t)/alpha, epsilon) + 1)^1.8
double hot_score(const Post& post, Day now, const FeedParams& params);
double hot_score(std::int64_t net_votes, double age_days, const FeedParams& params);

/// Top-k posts by neighbors with similarity > tau, created in [now - window, now].
/// Order: hot score descending, then newer, then lower id. Throws UnknownUser.
std::vector<PostId> rank_feed(AgentId target, const socialgraph::SocialGraph& graph, const PostStore& posts,
                              Day now, const FeedParams& params, double tau);

}  // namespace twinmarket::feed
