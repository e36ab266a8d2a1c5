#include "twinmarket/feed/ranking.hpp"

#include <algorithm>
#include <cmath>

#include "twinmarket/common/errors.hpp"

namespace twinmarket::feed {

void FeedParams::validate() const {
    if (!(alpha > 0.0)) throw InvalidSpec("feed alpha must be positive");
    if (!(epsilon > 0.0)) throw InvalidSpec("feed epsilon must be positive");
    if (k < 1) throw InvalidSpec("feed k must be at least 1");
    if (window < 0) throw InvalidSpec("feed window must be non-negative");
}

double hot_score(std::int64_t net_votes, double age_days, const FeedParams& params) {
    const double net = static_cast<double>(std::max<std::int64_t>(net_votes + 1, 1));
    const double t = std::max(age_days / params.alpha, params.epsilon);
    return std::log10(net) / std::pow(t + 1.0, 1.8);
}

double hot_score(const Post& post, Day now, const FeedParams& params) {
    if (now < post.created_day) throw InvalidSpec("post created after the scoring day");
    return hot_score(post.upvotes - post.downvotes, static_cast<double>(now - post.created_day), params);
}

std::vector<PostId> rank_feed(AgentId target, const socialgraph::SocialGraph& graph, const PostStore& posts,
                              Day now, const FeedParams& params, double tau) {
    struct Candidate {
        double score;
        Day day;
        PostId id;
    };
    std::vector<Candidate> cands;
    for (const auto& [nb, w] : socialgraph::neighbors(graph, target, tau)) {
        for (PostId id : posts.by_author(nb)) {
            const Post& p = posts.get(id);
            if (p.created_day > now || p.created_day < now - params.window) continue;
            cands.push_back({hot_score(p, now, params), p.created_day, id});
        }
    }
    auto better = [](const Candidate& a, const Candidate& b) {
        if (a.score != b.score) return a.score > b.score;
        if (a.day != b.day) return a.day > b.day;
        return a.id < b.id;
    };
    const std::size_t take = std::min(params.k, cands.size());
    std::partial_sort(cands.begin(), cands.begin() + static_cast<std::ptrdiff_t>(take), cands.end(), better);
    std::vector<PostId> out;
    out.reserve(take);
    for (std::size_t i = 0; i < take; ++i) out.push_back(cands[i].id);
    return out;
}

}  // namespace twinmarket::feed
