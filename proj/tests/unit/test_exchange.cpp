#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>
#include <set>

#include "twinmarket/common/errors.hpp"
#include "twinmarket/common/rng.hpp"
#include "twinmarket/exchange/auction.hpp"
#include "twinmarket/exchange/daily_bar.hpp"
#include "twinmarket/exchange/index.hpp"
#include "twinmarket/exchange/io.hpp"
#include "twinmarket/exchange/market.hpp"
#include "twinmarket/exchange/order.hpp"
#include "twinmarket/exchange/portfolio.hpp"

using namespace twinmarket;
using namespace twinmarket::exchange;

namespace {

Money px(double x) { return Money::from_double(x); }

Order buy(std::uint32_t agent, double limit, std::int64_t q, std::uint64_t seq) {
    return {AgentId(agent), "A", Side::buy, px(limit), q, seq};
}
Order sell(std::uint32_t agent, double limit, std::int64_t q, std::uint64_t seq) {
    return {AgentId(agent), "A", Side::sell, px(limit), q, seq};
}

// Independent maximum over the candidate prices.
std::int64_t brute_force_volume(const std::vector<Order>& book) {
    std::int64_t best = 0;
    for (const auto& c : book) {
        std::int64_t b = 0, s = 0;
        for (const auto& o : book) {
            if (o.side == Side::buy && o.limit_price >= c.limit_price) b += o.quantity;
            if (o.side == Side::sell && o.limit_price <= c.limit_price) s += o.quantity;
        }
        best = std::max(best, std::min(b, s));
    }
    return best;
}

}  // namespace

TEST_CASE("price band is inclusive at both edges") {
    const Money prev = px(100);
    CHECK_FALSE(validate_order(buy(1, 110.00, 1, 0), prev, px(1000), 0).has_value());
    CHECK(validate_order(buy(1, 110.01, 1, 0), prev, px(1000), 0) == RejectReason::price_out_of_band);
    CHECK_FALSE(validate_order(sell(1, 90.00, 1, 0), prev, px(0), 1).has_value());
    CHECK(validate_order(sell(1, 89.99, 1, 0), prev, px(0), 1) == RejectReason::price_out_of_band);
    const auto band = price_band(px(10.01));
    CHECK(band.lower == Money::from_ticks(901));  // ceil(900.9)
    CHECK(band.upper == Money::from_ticks(1101)); // floor(1101.1)
}

TEST_CASE("order validation rejects unfunded or oversized orders") {
    CHECK(validate_order(sell(1, 100, 5, 0), px(100), px(0), 3) == RejectReason::insufficient_holdings);
    CHECK(validate_order(buy(1, 100, 5, 0), px(100), px(499.99), 0) == RejectReason::insufficient_cash);
    CHECK_FALSE(validate_order(buy(1, 100, 5, 0), px(100), px(500), 0).has_value());
    CHECK(validate_order(buy(1, 100, 0, 0), px(100), px(500), 0) == RejectReason::invalid_quantity);
    CHECK(std::string(to_string(RejectReason::price_out_of_band)) == "PriceOutOfBand");
}

TEST_CASE("worked auction clears at 101 with volume 12") {
    std::vector<Order> book = {buy(1, 102, 10, 0), buy(2, 101, 5, 1), sell(3, 100, 8, 2), sell(4, 101, 4, 3)};
    CHECK(brute_force_volume(book) == 12);
    const auto r = match_call_auction(book, px(100));
    REQUIRE(r.clearing_price.has_value());
    CHECK(*r.clearing_price == px(101));
    CHECK(r.volume() == 12);
    for (const auto& t : r.trades) CHECK(t.price == px(101));
    // buy priority: the 102 bid fills fully, the 101 bid gets the remaining 2
    std::map<std::uint32_t, std::int64_t> bought;
    for (const auto& t : r.trades) bought[t.buyer_id.value] += t.quantity;
    CHECK(bought[1] == 10);
    CHECK(bought[2] == 2);
}

TEST_CASE("no cross and mirrored books") {
    auto none = match_call_auction(std::vector<Order>{buy(1, 101, 10, 0), sell(2, 103, 10, 1)}, px(100));
    CHECK_FALSE(none.clearing_price.has_value());
    CHECK(none.trades.empty());
    CHECK(none.unfilled.size() == 2);

    auto mirror = match_call_auction(std::vector<Order>{buy(1, 100.5, 7, 0), sell(2, 100.5, 7, 1)}, px(100));
    REQUIRE(mirror.clearing_price.has_value());
    CHECK(*mirror.clearing_price == px(100.5));
    CHECK(mirror.volume() == 7);
    CHECK(mirror.unfilled.empty());

    auto empty = match_call_auction(std::vector<Order>{}, px(100));
    CHECK_FALSE(empty.clearing_price.has_value());
}

TEST_CASE("random books: volume equals the brute-force maximum and fills respect priority") {
    Rng rng(7);
    for (int trial = 0; trial < 1000; ++trial) {
        const std::size_t n = 1 + static_cast<std::size_t>(uniform01(rng) * 8.0);
        std::vector<Order> book;
        for (std::size_t i = 0; i < n; ++i) {
            const double limit = 98.0 + static_cast<double>(static_cast<int>(uniform01(rng) * 5.0));
            const std::int64_t q = 1 + static_cast<std::int64_t>(uniform01(rng) * 10.0);
            book.push_back(uniform01(rng) < 0.5 ? buy(static_cast<std::uint32_t>(i), limit, q, i)
                                                : sell(static_cast<std::uint32_t>(i), limit, q, i));
        }
        const auto r = match_call_auction(book, px(100));
        REQUIRE(r.volume() == brute_force_volume(book));
        std::map<std::uint32_t, std::int64_t> filled;
        for (const auto& t : r.trades) {
            filled[t.buyer_id.value] += t.quantity;
            filled[t.seller_id.value] += t.quantity;
            CHECK(t.price == *r.clearing_price);
        }
        int partial_buys = 0, partial_sells = 0;
        for (const auto& o : book) {
            const auto f = filled[o.agent_id.value];
            CHECK(f <= o.quantity);
            if (f > 0) {
                if (o.side == Side::buy) CHECK(o.limit_price >= *r.clearing_price);
                if (o.side == Side::sell) CHECK(o.limit_price <= *r.clearing_price);
            }
            if (f > 0 && f < o.quantity) (o.side == Side::buy ? partial_buys : partial_sells) += 1;
        }
        CHECK(partial_buys <= 1);
        CHECK(partial_sells <= 1);
    }
}

TEST_CASE("settlement conserves cash and holdings") {
    PortfolioStore store;
    store.add({AgentId(1), px(1000), {}, {}});
    store.add({AgentId(2), px(0), {{"A", 10}}, {{"A", 9.0}}});
    const std::vector<Trade> trades = {{AgentId(1), AgentId(2), "A", px(10), 5, 0}};
    settle(trades, store);
    CHECK(store.get(AgentId(1)).cash == px(950));
    CHECK(store.get(AgentId(2)).cash == px(50));
    CHECK(store.get(AgentId(1)).units("A") == 5);
    CHECK(store.get(AgentId(2)).units("A") == 5);
    CHECK(store.total_cash() == px(1000));

    const auto before = store.all();
    settle(std::vector<Trade>{}, store);
    CHECK(store.all() == before);

    const std::vector<Trade> bad = {{AgentId(1), AgentId(2), "A", px(10), 500, 0}};
    CHECK_THROWS_AS(settle(bad, store), ConsistencyError);
    CHECK(store.all() == before);
}

TEST_CASE("random 50-trade batch keeps per-asset sums") {
    Rng rng(3);
    PortfolioStore store;
    for (std::uint32_t i = 0; i < 10; ++i) store.add({AgentId(i), px(100000), {{"A", 1000}, {"B", 1000}}, {}});
    const auto cash0 = store.total_cash();
    const auto hold0 = store.total_holdings();
    std::vector<Trade> trades;
    for (int k = 0; k < 50; ++k) {
        const auto b = static_cast<std::uint32_t>(uniform01(rng) * 10);
        auto s = static_cast<std::uint32_t>(uniform01(rng) * 10);
        if (s == b) s = (s + 1) % 10;
        trades.push_back({AgentId(b), AgentId(s), uniform01(rng) < 0.5 ? "A" : "B",
                          Money::from_ticks(900 + static_cast<std::int64_t>(uniform01(rng) * 200)),
                          1 + static_cast<std::int64_t>(uniform01(rng) * 20), 0});
    }
    settle(trades, store);
    CHECK(store.total_cash() == cash0);
    CHECK(store.total_holdings() == hold0);
}

TEST_CASE("index arithmetic") {
    IndexSpec spec{"IDX", {{"a", 0.5, 10}, {"b", 0.3, 20}, {"c", 0.2, 40}}, 1000.0};
    spec.validate();
    CHECK(compute_index(spec, {{"a", 10}, {"b", 20}, {"c", 40}}) == doctest::Approx(1000.0));
    CHECK(compute_index(spec, {{"a", 11}, {"b", 18}, {"c", 40}}) == doctest::Approx(1020.0).epsilon(1e-12));
    CHECK_THROWS_AS(compute_index(spec, {{"a", 11}, {"b", 18}}), MissingConstituent);
    IndexSpec single{"ONE", {{"x", 1.0, 5}}, 100.0};
    CHECK(compute_index(single, {{"x", 10}}) == doctest::Approx(200.0));
}

TEST_CASE("fundamentals re-anchor to the simulated price") {
    FundamentalBase f{"s", 2.0, 5.0, 10.0, 0.5};
    const auto v = adjust_fundamentals(f, 20.0);
    REQUIRE(v.pe.has_value());
    CHECK(*v.pe == doctest::Approx(10.0));
    CHECK(v.pb == doctest::Approx(4.0));
    CHECK(v.ps == doctest::Approx(2.0));
    CHECK(v.dv == doctest::Approx(0.025));
    CHECK(adjust_fundamentals(f, 5.0).pb == doctest::Approx(1.0));
    FundamentalBase loss{"s", -1.0, 5.0, 10.0, 0.0};
    CHECK_FALSE(adjust_fundamentals(loss, 20.0).pe.has_value());
}

TEST_CASE("daily bar moving statistics") {
    std::vector<DailyBar> hist;
    const auto first = update_daily_bar(hist, "A", 0, 7.0, 10);
    CHECK(first.ma_5 == 7.0);
    CHECK(first.pct_chg == 0.0);
    for (int d = 1; d <= 5; ++d) hist.push_back(update_daily_bar(hist, "A", d, d, 10));
    CHECK(hist.back().ma_5 == doctest::Approx(3.0));
    CHECK(hist.back().change == doctest::Approx(1.0));
    CHECK(hist.back().pct_chg == doctest::Approx(0.25));

    Rng rng(11);
    std::vector<DailyBar> h2;
    std::vector<double> closes;
    for (int d = 0; d < 30; ++d) {
        closes.push_back(50.0 + 10.0 * uniform01(rng));
        h2.push_back(update_daily_bar(h2, "A", d, closes.back(), d));
    }
    CHECK(h2.back().ma_30 == doctest::Approx(std::accumulate(closes.begin(), closes.end(), 0.0) / 30.0));
    CHECK(h2.back().ma_10 == doctest::Approx(std::accumulate(closes.end() - 10, closes.end(), 0.0) / 10.0));
}

TEST_CASE("market session: validation, clearing and carry-forward") {
    Universe u = default_universe(5);
    std::map<AssetId, std::vector<DailyBar>> hist;
    Market m(u, hist);
    const auto assets = m.assets();
    REQUIRE(assets.size() == 10);
    const AssetId a = assets.front();

    PortfolioStore store;
    store.add({AgentId(1), px(10000), {}, {}});
    store.add({AgentId(2), px(0), {{a, 50}}, {}});
    const Money prev = m.prev_close(a);
    std::vector<Order> orders = {
        {AgentId(1), a, Side::buy, prev, 10, 1},
        {AgentId(2), a, Side::sell, prev, 10, 0},
        {AgentId(2), a, Side::sell, prev, 100, 2},   // exceeds what is left after seq 0
        {AgentId(1), "NOPE", Side::buy, prev, 1, 3},
    };
    const auto cash0 = store.total_cash();
    const auto res = m.run_session(0, orders, store);
    CHECK(res.trades.size() == 1);
    CHECK(res.rejected.size() == 2);
    CHECK(store.total_cash() == cash0);
    CHECK(store.get(AgentId(1)).units(a) == 10);
    for (const auto& other : assets) {
        if (other == a) continue;
        CHECK(res.bars.at(other).close == m.history(other)[m.history(other).size() - 2].close);
        CHECK(res.bars.at(other).vol == 0);
    }
}

TEST_CASE("universe CSV and JSON round trips") {
    const std::string csv =
        "index_id,index_base,stock_id,weight,base_price,eps0,bvps0,sps0,dps0\n"
        "X,100,s1,0.6,10,1,5,8,0.2\n"
        "X,100,s2,0.4,20,2,10,16,0.4\n"
        "Y,50,s3,1.0,30,-1,15,20,0\n";
    const auto u = parse_universe(csv);
    REQUIRE(u.indices.size() == 2);
    CHECK(u.indices[0].index_id == "X");
    CHECK(u.indices[1].base_value == 50.0);
    CHECK(u.fundamentals.at("s3").eps0 == -1.0);

    const Trade t{AgentId(3), AgentId(4), "X", Money::from_ticks(10123), 7, 2};
    CHECK(trade_from_json(json::parse(to_json(t).dump())) == t);
    const Order o{AgentId(3), "X", Side::sell, Money::from_ticks(999), 4, 11};
    CHECK(order_from_json(json::parse(to_json(o).dump())) == o);
    std::vector<DailyBar> h;
    const auto b = update_daily_bar(h, "X", 4, 101.37, 250, 25342.5);
    CHECK(bar_from_json(json::parse(to_json(b).dump())) == b);
}
