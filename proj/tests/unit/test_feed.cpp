#include <doctest.h>

#include <algorithm>
#include <functional>

#include "oracles.hpp"
#include "twinmarket/common/errors.hpp"
#include "twinmarket/feed/news.hpp"
#include "twinmarket/feed/post.hpp"
#include "twinmarket/feed/ranking.hpp"

using namespace twinmarket;
using namespace twinmarket::feed;

TEST_CASE("hot score worked values") {
    FeedParams fp;
    CHECK(hot_score(9, 0.0, fp) == doctest::Approx(1.0 / std::pow(1.001, 1.8)).epsilon(1e-12));
    CHECK(hot_score(9, 0.0, fp) == doctest::Approx(0.9982).epsilon(1e-4));
    CHECK(hot_score(9, 14.0, fp) == doctest::Approx(0.00766).epsilon(1e-3));
    CHECK(hot_score(0, 0.0, fp) == 0.0);
    CHECK(hot_score(-5, 3.0, fp) == 0.0);
}

TEST_CASE("hot score is monotone in votes and age") {
    FeedParams fp;
    Rng rng(11);
    for (int i = 0; i < 10000; ++i) {
        const auto votes = static_cast<std::int64_t>(uniform01(rng) * 200.0) - 20;
        const double age = uniform01(rng) * 30.0;
        const double s = hot_score(votes, age, fp);
        CHECK(hot_score(votes + 1, age, fp) >= s);
        CHECK(hot_score(votes, age + 0.5, fp) <= s);
        CHECK(s == doctest::Approx(oracle::hot(votes, 0, age, fp.alpha, fp.epsilon)).epsilon(1e-12));
    }
}

TEST_CASE("feed params validation") {
    FeedParams fp;
    fp.k = 0;
    CHECK_THROWS_AS(fp.validate(), InvalidSpec);
    fp = {};
    fp.alpha = 0.0;
    CHECK_THROWS_AS(fp.validate(), InvalidSpec);
}

TEST_CASE("rank_feed matches the full-sort oracle on random fixtures") {
    for (std::uint64_t seed = 1; seed <= 100; ++seed) {
        auto f = oracle::random_feed_fixture(seed);
        FeedParams fp;
        for (std::uint32_t u = 0; u < 12; ++u) {
            const auto got = rank_feed(AgentId(u), f.graph, f.posts, f.now, fp, f.tau);
            CHECK(got == oracle::feed_by_full_sort(AgentId(u), f.graph, f.posts, f.now, fp, f.tau));
        }
    }
}

TEST_CASE("rank_feed excludes neighbors at exactly tau and stale posts") {
    socialgraph::SocialGraph g;
    for (std::uint32_t u = 1; u <= 3; ++u) g.add_node(AgentId(u));
    g.add_edge(AgentId(1), AgentId(2), 0.2);
    g.add_edge(AgentId(1), AgentId(3), 0.5);
    PostStore posts;
    posts.create(AgentId(2), 10, "at tau", PostType::type1);
    const PostId fresh = posts.create(AgentId(3), 10, "fresh", PostType::type1);
    posts.create(AgentId(3), 0, "stale", PostType::type1);
    FeedParams fp;
    CHECK(rank_feed(AgentId(1), g, posts, 15, fp, 0.2) == std::vector<PostId>{fresh});
    CHECK_THROWS_AS(rank_feed(AgentId(9), g, posts, 15, fp, 0.2), UnknownUser);
}

TEST_CASE("votes and reposts") {
    PostStore s;
    const PostId a = s.create(AgentId(1), 0, "root", PostType::type2, 0.4);
    s.like(a);
    s.like(a);
    CHECK(s.get(a).upvotes == 2);
    s.unlike(a);
    CHECK(s.get(a).downvotes == 1);

    const PostId b = s.repost(a, AgentId(2), 1, "one");
    const PostId c = s.repost(b, AgentId(3), 2, "two");
    const PostId d = apply_action(s, {AgentId(4), ActionKind::repost, c, "three"}, 3).value();
    CHECK(s.get(d).root_id == a);
    CHECK(s.get(d).upvotes == 0);
    CHECK(s.get(d).stance == 0.4);
    CHECK(repost_chain(a, s) == std::vector<PostId>{a});
    CHECK(repost_chain(b, s).size() == 2);
    CHECK(repost_chain(d, s) == std::vector<PostId>{a, b, c, d});
    CHECK_FALSE(apply_action(s, {AgentId(4), ActionKind::like, a, ""}, 3).has_value());
    CHECK_THROWS_AS(apply_action(s, {AgentId(4), ActionKind::like, PostId(99), ""}, 3), UnknownPost);
}

TEST_CASE("repost chains match a recursive walk on a random tree") {
    Rng rng(5);
    PostStore s;
    std::vector<PostId> ids{s.create(AgentId(0), 0, "r", PostType::type1)};
    for (int i = 1; i < 200; ++i) {
        if (uniform01(rng) < 0.2) {
            ids.push_back(s.create(AgentId(1), 0, "r", PostType::type1));
        } else {
            const PostId parent = ids[static_cast<std::size_t>(uniform01(rng) * static_cast<double>(ids.size()))];
            ids.push_back(s.repost(parent, AgentId(2), 0, "x"));
        }
    }
    std::function<std::vector<PostId>(PostId)> walk = [&](PostId id) {
        const Post& p = s.get(id);
        if (!p.parent_id) return std::vector<PostId>{id};
        auto up = walk(*p.parent_id);
        up.push_back(id);
        return up;
    };
    for (PostId id : ids) {
        const auto chain = repost_chain(id, s);
        CHECK(chain == walk(id));
        CHECK(chain.front() == s.get(id).root_id);
    }
}

TEST_CASE("restore rejects broken lineage") {
    PostStore s;
    Post p;
    p.post_id = PostId(0);
    p.author_id = AgentId(1);
    p.root_id = PostId(0);
    s.restore(p);
    Post q = p;
    q.post_id = PostId(5);
    q.root_id = PostId(5);
    CHECK_THROWS_AS(s.restore(q), SchemaViolation);
    CHECK(post_from_json(json::parse(to_json(s.get(PostId(0))).dump())) == s.get(PostId(0)));
}

TEST_CASE("news injection goes to the most central users") {
    std::map<AgentId, double> c{{AgentId(1), 0.2}, {AgentId(2), 0.9}, {AgentId(3), 0.5},
                                {AgentId(4), 0.9}, {AgentId(5), 0.1}};
    NewsItem fact{"F1", 0, "earnings fine", false, "macro", 0.2};
    NewsItem rumor{"R1", 0, "earnings fake", true, "macro", -0.9};
    std::map<std::string, NewsItem> pairs{{"F1", rumor}};

    CHECK(inject_news({fact}, pairs, c, 0, false).empty());
    CHECK(inject_news({fact}, pairs, c, 5, false).size() == 5);
    CHECK_THROWS_AS(inject_news({fact}, pairs, c, 6, false), InvalidSpec);

    // sort oracle: centrality descending, lower id first on ties
    std::vector<std::pair<AgentId, double>> v(c.begin(), c.end());
    std::sort(v.begin(), v.end(), [](const auto& a, const auto& b) {
        return a.second != b.second ? a.second > b.second : a.first < b.first;
    });
    const auto top = top_central(c, 3);
    for (std::size_t i = 0; i < 3; ++i) CHECK(top[i] == v[i].first);

    const auto control = inject_news({fact}, pairs, c, 3, false);
    const auto rumored = inject_news({fact}, pairs, c, 3, true);
    CHECK(control.at(AgentId(2)).front().item_id == "F1");
    CHECK(rumored.at(AgentId(2)).front().item_id == "R1");
    CHECK(rumored.at(AgentId(4)).front().is_rumor);
    CHECK_FALSE(rumored.count(AgentId(5)));
}

TEST_CASE("news scenario validation") {
    const json j = json::parse(R"({"items":[{"id":"F1","day":0,"content":"a","is_rumor":false,"category":"m"},
                                            {"id":"R1","day":0,"content":"b","is_rumor":true,"category":"m"}],
                                   "pairs":{"F1":"R1"}})");
    const auto sc = news_scenario_from_json(j);
    CHECK(sc.factual_for_day(0).size() == 1);
    CHECK(sc.counterparts().at("F1").item_id == "R1");
    json bad = j;
    bad["pairs"]["F1"] = "R9";
    CHECK_THROWS(news_scenario_from_json(bad));
}
