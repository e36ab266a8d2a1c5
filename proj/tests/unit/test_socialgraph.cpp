#include <doctest.h>

#include <cmath>
#include <set>
#include <sstream>

#include "twinmarket/common/errors.hpp"
#include "twinmarket/common/rng.hpp"
#include "twinmarket/socialgraph/graph.hpp"
#include "twinmarket/socialgraph/io.hpp"

using namespace twinmarket;
using namespace twinmarket::socialgraph;

namespace {

TradeRecord rec(std::uint32_t u, const char* ind, Day d, std::int64_t vol = 100) {
    return {AgentId(u), ind, d, Side::buy, vol};
}

std::vector<TradeRecord> random_records(std::uint64_t seed, std::uint32_t users, int per_user) {
    Rng rng(seed);
    const char* inds[] = {"A", "B", "C", "D", "E", "F"};
    std::vector<TradeRecord> out;
    for (std::uint32_t u = 0; u < users; ++u) {
        for (int k = 0; k < per_user; ++k) {
            out.push_back(rec(u, inds[static_cast<int>(uniform01(rng) * 6)], static_cast<Day>(uniform01(rng) * 20)));
        }
    }
    return out;
}

}  // namespace

TEST_CASE("trading intensity") {
    std::vector<TradeRecord> r = {rec(1, "A", 10), rec(1, "A", 9), rec(1, "A", 8), rec(1, "B", 10), rec(2, "A", 10)};
    CHECK(trading_intensity(AgentId(1), "A", r, 10, 0.5) == doctest::Approx(1.0 + std::exp(-0.5) + std::exp(-1.0)));
    CHECK(trading_intensity(AgentId(1), "A", r, 10, 0.5) == doctest::Approx(1.9744).epsilon(1e-4));
    CHECK(trading_intensity(AgentId(1), "B", r, 10, 0.5) == 1.0);
    CHECK(trading_intensity(AgentId(3), "A", r, 10, 0.5) == 0.0);
    CHECK_THROWS_AS(trading_intensity(AgentId(1), "A", r, 9, 0.5), InvalidSpec);
}

TEST_CASE("generalized Jaccard similarity") {
    CHECK(similarity({{"a", 2}, {"b", 1}}, {{"a", 1}, {"b", 3}}) == doctest::Approx(0.4));
    CHECK(similarity({{"a", 2}}, {{"a", 2}}) == 1.0);
    CHECK(similarity({{"a", 2}}, {{"b", 2}}) == 0.0);
    CHECK(similarity({}, {}) == 0.0);
}

TEST_CASE("graph construction matches a pairwise oracle") {
    const auto records = random_records(5, 8, 6);
    std::vector<AgentId> users;
    for (std::uint32_t u = 0; u < 8; ++u) users.push_back(AgentId(u));
    const GraphParams p{0.3, 0.25};
    const auto g = build_graph(records, users, 20, p);
    const auto vecs = intensity_vectors(records, users, 20, p.lambda);
    std::size_t edges = 0;
    for (std::size_t i = 0; i < users.size(); ++i) {
        for (std::size_t j = i + 1; j < users.size(); ++j) {
            const double s = similarity(vecs.at(users[i]), vecs.at(users[j]));
            const auto w = g.weight(users[i], users[j]);
            CHECK(w.has_value() == (s > p.tau));
            if (w) {
                CHECK(*w == doctest::Approx(s));
                ++edges;
            }
        }
    }
    CHECK(g.edge_count() == edges);
    CHECK(g.edges().size() == edges);

    const std::vector<TradeRecord> one = {rec(1, "A", 0)};
    CHECK(build_graph(one, 0, p).edge_count() == 0);
    const std::vector<TradeRecord> twins = {rec(1, "A", 0), rec(2, "A", 0)};
    const auto tg = build_graph(twins, 0, p);
    REQUIRE(tg.edge_count() == 1);
    CHECK(*tg.weight(AgentId(1), AgentId(2)) == doctest::Approx(1.0));
}

TEST_CASE("neighbors use a strict threshold and weight ordering") {
    std::vector<AgentId> ids = {AgentId(1), AgentId(2), AgentId(3), AgentId(4), AgentId(5)};
    SocialGraph g(ids);
    g.add_edge(AgentId(1), AgentId(2), 0.5);
    g.add_edge(AgentId(1), AgentId(3), 0.9);
    g.add_edge(AgentId(1), AgentId(4), 0.5);
    g.add_edge(AgentId(1), AgentId(5), 0.2);
    const auto n = neighbors(g, AgentId(1), 0.2);
    REQUIRE(n.size() == 3);
    CHECK(n[0].first == AgentId(3));
    CHECK(n[1].first == AgentId(2));
    CHECK(n[2].first == AgentId(4));
    CHECK(neighbors(g, AgentId(5), 0.2).empty());
    CHECK_THROWS_AS(g.add_edge(AgentId(1), AgentId(1), 1.0), InvalidSpec);
    CHECK_THROWS_AS(neighbors(g, AgentId(9), 0.2), UnknownUser);
}

TEST_CASE("centrality and graph statistics") {
    std::vector<AgentId> ids = {AgentId(0), AgentId(1), AgentId(2), AgentId(3)};
    SocialGraph star(ids);
    for (std::uint32_t i = 1; i < 4; ++i) star.add_edge(AgentId(0), AgentId(i), 1.0);
    const auto c = degree_centrality(star);
    CHECK(c.at(AgentId(0)) == 1.0);
    CHECK(c.at(AgentId(1)) == doctest::Approx(1.0 / 3.0));

    SocialGraph k4(ids);
    for (std::uint32_t i = 0; i < 4; ++i) {
        for (std::uint32_t j = i + 1; j < 4; ++j) k4.add_edge(AgentId(i), AgentId(j), 1.0);
    }
    const auto s = graph_stats(k4);
    CHECK(s.density == 1.0);
    CHECK(s.avg_clustering == 1.0);
    CHECK(s.largest_component == 4);

    const auto e = graph_stats(SocialGraph(ids));
    CHECK(e.density == 0.0);
    CHECK(e.avg_clustering == 0.0);
    CHECK(e.largest_component == 1);

    // path 0-1-2 plus triangle 3-4-5 with a pendant 6 on 5
    std::vector<AgentId> seven;
    for (std::uint32_t i = 0; i < 7; ++i) seven.push_back(AgentId(i));
    SocialGraph g(seven);
    g.add_edge(AgentId(0), AgentId(1), 1);
    g.add_edge(AgentId(1), AgentId(2), 1);
    g.add_edge(AgentId(3), AgentId(4), 1);
    g.add_edge(AgentId(4), AgentId(5), 1);
    g.add_edge(AgentId(3), AgentId(5), 1);
    g.add_edge(AgentId(5), AgentId(6), 1);
    const auto gs = graph_stats(g);
    CHECK(gs.edges == 6);
    CHECK(gs.density == doctest::Approx(6.0 / 21.0));
    // local clustering: 3 -> 1, 4 -> 1, 5 -> 1/3, others 0
    CHECK(gs.avg_clustering == doctest::Approx((1.0 + 1.0 + 1.0 / 3.0) / 7.0));
    CHECK(gs.largest_component == 4);
}

TEST_CASE("density never rises with the threshold") {
    const auto records = random_records(9, 30, 8);
    double last = 2.0;
    for (double tau : {0.1, 0.2, 0.3, 0.4}) {
        const double d = graph_stats(build_graph(records, 20, {0.5, tau})).density;
        CHECK(d <= last);
        last = d;
    }
}

TEST_CASE("csv writers") {
    std::vector<AgentId> ids = {AgentId(1), AgentId(2)};
    SocialGraph g(ids);
    g.add_edge(AgentId(1), AgentId(2), 0.5);
    std::ostringstream e, s;
    write_edges(e, 3, g);
    CHECK(e.str() == "3,1,2,0.5\n");
    write_stats(s, 3, graph_stats(g));
    CHECK(s.str() == "3,2,1,1,0,2\n");
}
