#include <doctest.h>

#include <cstdlib>
#include <random>

#include "twinmarket/agents/agent.hpp"
#include "twinmarket/agents/belief.hpp"
#include "twinmarket/agents/chat_client.hpp"
#include "twinmarket/agents/llm_policy.hpp"
#include "twinmarket/agents/persona.hpp"
#include "twinmarket/agents/prompts.hpp"
#include "twinmarket/agents/rule_policies.hpp"
#include "twinmarket/agents/transactions.hpp"
#include "twinmarket/common/errors.hpp"
#include "twinmarket/exchange/daily_bar.hpp"

using namespace twinmarket;
using namespace twinmarket::agents;

namespace {

BeliefState uniform_belief(double v) {
    BeliefState b;
    b.dims.fill(v);
    return b;
}

// Flat history at `close` with steady volume, one asset.
std::shared_ptr<MarketView> flat_market(const AssetId& a, double close, int days = 40) {
    std::vector<exchange::DailyBar> bars;
    for (int d = -days; d < 0; ++d) bars.push_back(exchange::update_daily_bar(bars, a, d, close, 1000));
    auto m = std::make_shared<MarketView>();
    AssetView v;
    v.asset = a;
    v.bars = bars;
    v.valuation.pb = 1.5;
    v.pb_history.assign(20, 1.5);
    (*m)[a] = v;
    return m;
}

Observation observation_with(std::shared_ptr<MarketView> m, Money cash, std::int64_t units, double cost) {
    Observation obs;
    obs.day = 0;
    obs.market = m;
    const auto& [asset, view] = *m->begin();
    obs.portfolio.cash = cash;
    if (units > 0) {
        obs.portfolio.holdings[asset] = units;
        obs.portfolio.cost_basis[asset] = cost;
    }
    obs.portfolio.total_value = cash.to_double() + static_cast<double>(units) * view.prev_close();
    obs.portfolio.initial_value = obs.portfolio.total_value;
    return obs;
}

Persona persona(std::uint32_t id, Strategy s, const AssetId& a) {
    Persona p;
    p.agent_id = AgentId(id);
    p.strategy = s;
    p.followed_industries = {a};
    p.bias.turnover = Level::high;  // always active
    return p;
}

}  // namespace

TEST_CASE("sentiment score maps 0..10 onto 1..5") {
    CHECK(sentiment_score(uniform_belief(10)) == 5.0);
    CHECK(sentiment_score(uniform_belief(0)) == 1.0);
    CHECK(sentiment_score(uniform_belief(5)) == 3.0);
    CHECK(uniform_belief(7.5).tilt() == doctest::Approx(0.5));
}

TEST_CASE("belief initialization") {
    BeliefInitParams p;
    p.brar_percentile = 0.7;
    for (double d : init_belief(p).dims) CHECK(d == doctest::Approx(7.0));
    p.brar_percentile = 0.5;
    for (double d : init_belief(p).dims) CHECK(d == 5.0);

    // reference sampler with the same engine, distribution and clamping
    p.brar_percentile = 0.9;
    p.variance = 4.0;
    p.seed = 1234;
    std::mt19937_64 eng(1234);
    std::normal_distribution<double> dist(9.0, 2.0);
    const auto b = init_belief(p);
    for (double d : b.dims) CHECK(d == std::clamp(dist(eng), 0.0, 10.0));
    CHECK(init_belief(p) == b);

    p.variance = -1.0;
    CHECK_THROWS_AS(init_belief(p), InvalidSpec);
}

TEST_CASE("strategy and capital split") {
    for (std::size_t n : {10u, 100u}) {
        std::vector<Persona> ps;
        std::vector<AgentId> rank;
        for (std::uint32_t i = 0; i < n; ++i) {
            ps.push_back(persona(i, Strategy::technical, "A"));
            rank.push_back(AgentId(static_cast<std::uint32_t>(n - 1 - i)));
        }
        assign_strategies_and_capital(ps, rank);
        std::size_t fund = 0, large = 0;
        for (const auto& p : ps) {
            fund += p.strategy == Strategy::fundamental;
            large += p.capital_tier == CapitalTier::large;
        }
        CHECK(fund == n * 4 / 10);
        CHECK(large == n / 10);
        CHECK(ps.back().capital_tier == CapitalTier::large);  // ranked first
        auto again = ps;
        assign_strategies_and_capital(again, rank);
        for (std::size_t i = 0; i < n; ++i) CHECK(again[i].strategy == ps[i].strategy);
    }
    std::vector<Persona> ps{persona(1, Strategy::technical, "A")};
    std::vector<AgentId> bad{AgentId(2)};
    CHECK_THROWS_AS(assign_strategies_and_capital(ps, bad), InvalidSpec);
}

TEST_CASE("generated personas are reproducible and split 40/10") {
    PersonaGenConfig cfg;
    const std::vector<AssetId> inds{"A", "B", "C", "D"};
    const auto a = generate_personas(cfg, inds, SeedTree(9));
    const auto b = generate_personas(cfg, inds, SeedTree(9));
    REQUIRE(a.size() == 100);
    std::size_t fund = 0, large = 0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        CHECK(to_json(a[i]) == to_json(b[i]));
        fund += a[i].strategy == Strategy::fundamental;
        large += a[i].capital_tier == CapitalTier::large;
        CHECK(persona_from_json(json::parse(to_json(a[i]).dump())).agent_id == a[i].agent_id);
    }
    CHECK(fund == 40);
    CHECK(large == 10);
}

TEST_CASE("synthetic transactions follow the template") {
    TemplateStats t;
    t.trade_count = 50;
    t.industry_weights = {{"ONLY", 1.0}};
    t.volumes = {100, 200};
    const auto recs = synth_transactions(AgentId(3), t, -30, 30, 7);
    CHECK(recs.size() >= 40);
    CHECK(recs.size() <= 60);
    for (const auto& r : recs) {
        CHECK(r.industry == "ONLY");
        CHECK(r.day >= -30);
        CHECK(r.day < 0);
        CHECK(r.user_id == AgentId(3));
    }
    CHECK(synth_transactions(AgentId(3), t, -30, 30, 7) == recs);

    TemplateStats zero;
    CHECK(synth_transactions(AgentId(1), zero, 0, 10, 1).empty());
    TemplateStats empty;
    empty.trade_count = 5;
    CHECK_THROWS_AS(synth_transactions(AgentId(1), empty, 0, 10, 1), EmptyTemplate);
}

TEST_CASE("synthetic industry frequencies pass a chi-square check") {
    TemplateStats t;
    t.trade_count = 10000;
    t.industry_weights = {{"A", 1.0}, {"B", 2.0}, {"C", 7.0}};
    t.buy_probability = 0.3;
    t.volumes = {100};
    const auto recs = synth_transactions(AgentId(1), t, 0, 30, 42);
    std::map<AssetId, double> count;
    double buys = 0;
    for (const auto& r : recs) {
        count[r.industry] += 1;
        buys += r.direction == Side::buy;
    }
    const double n = static_cast<double>(recs.size());
    double chi2 = 0.0;
    for (const auto& [ind, w] : t.industry_weights) {
        const double e = n * w / 10.0;
        chi2 += (count[ind] - e) * (count[ind] - e) / e;
    }
    CHECK(chi2 < 13.82);  // 0.999 quantile, two degrees of freedom
    CHECK(buys / n == doctest::Approx(0.3).epsilon(0.1));
}

TEST_CASE("rule tables") {
    const auto m = flat_market("A", 100.0);
    const AssetView& flat = m->at("A");
    const Persona p = persona(1, Strategy::fundamental, "A");
    const PortfolioView pf;
    FundamentalRule fund;
    CHECK(fund.signal(flat, p, uniform_belief(5), pf) == 0);

    AssetView cheap = flat;
    cheap.pb_history = {2, 2, 2, 2, 2, 2, 2, 2, 2, 1};
    CHECK(trailing_zscore(cheap.pb_history) <= -2.0);
    CHECK(fund.signal(cheap, p, uniform_belief(7), pf) == 1);
    CHECK(fund.signal(cheap, p, uniform_belief(3), pf) == 0);
    AssetView rich = flat;
    rich.pb_history = {1, 1, 1, 1, 1, 1, 1, 1, 1, 2};
    CHECK(fund.signal(rich, p, uniform_belief(3), pf) == -1);

    TechnicalRule tech;
    CHECK(tech.signal(flat, p, uniform_belief(5), pf) == 0);
    AssetView golden = flat;
    golden.bars.back().ma_5 = 105;
    golden.bars.back().ma_30 = 100;
    CHECK(tech.signal(golden, p, uniform_belief(5), pf) == 1);
    golden.bars.back().vol = 100;  // volume not confirmed
    CHECK(tech.signal(golden, p, uniform_belief(5), pf) == 0);

    ContrarianRule con;
    AssetView up = flat;
    up.bars.back().pct_chg = 0.03;
    CHECK(con.signal(up, p, uniform_belief(5), pf) == -1);
    up.bars.back().pct_chg = -0.03;
    CHECK(con.signal(up, p, uniform_belief(5), pf) == 1);
}

TEST_CASE("planned intentions: neutral holds, disposition takes profits") {
    RuleParams rp;
    rp.noise_probability = 0.0;
    auto m = flat_market("A", 112.0);
    Persona p = persona(1, Strategy::technical, "A");
    Rng rng(3);

    TechnicalRule tech(rp);
    auto obs = observation_with(m, Money::from_double(10000), 0, 0.0);
    const auto desires = tech.generate_desires(obs, p, uniform_belief(5), rng);
    CHECK(tech.plan_intentions(obs, p, uniform_belief(5), desires, rng).all_hold());

    p.bias.disposition = Level::high;
    obs = observation_with(m, Money::from_double(10000), 10, 100.0);  // +12%
    const auto it = tech.plan_intentions(obs, p, uniform_belief(5), desires, rng);
    REQUIRE(it.items.size() == 1);
    CHECK(it.items[0].action == Action::sell);
    CHECK(it.items[0].trading_position == doctest::Approx(100.0 * 1120.0 / 11120.0));

    // an optimistic belief alone drives a buy
    obs = observation_with(m, Money::from_double(10000), 0, 0.0);
    const auto bull = tech.plan_intentions(obs, p, uniform_belief(8), desires, rng);
    CHECK(bull.items[0].action == Action::buy);
    CHECK(bull.items[0].trading_position > 0.0);
    CHECK(bull.items[0].trading_position <= position_cap_pct(p.bias.underdiversification));
}

TEST_CASE("intentions become whole-unit orders inside the band") {
    auto m = flat_market("A", 100.0);
    auto obs = observation_with(m, Money::from_double(1000), 5, 90.0);
    TradeIntention ti;
    ti.items.push_back({"A", Action::sell, 90.0, Money::from_double(50.0)});
    std::vector<std::string> notes;
    auto orders = intention_to_orders(AgentId(1), ti, obs.portfolio, *m, notes);
    REQUIRE(orders.size() == 1);
    CHECK(orders[0].quantity == 5);
    CHECK(orders[0].limit_price == Money::from_double(90.0));
    CHECK(notes.size() == 2);  // band clamp and holdings clip

    ti.items = {{"A", Action::buy, 100.0, Money::from_double(105.0)}};
    notes.clear();
    orders = intention_to_orders(AgentId(1), ti, obs.portfolio, *m, notes);
    REQUIRE(orders.size() == 1);
    CHECK(orders[0].limit_price * orders[0].quantity <= obs.portfolio.cash);
    CHECK(orders[0].quantity == 9);

    ti.items = {{"A", Action::hold, 0.0, std::nullopt}, {"B", Action::buy, 10.0, std::nullopt}};
    notes.clear();
    CHECK(intention_to_orders(AgentId(1), ti, obs.portfolio, *m, notes).empty());
}

TEST_CASE("all-hold policy emits nothing but still updates beliefs") {
    auto m = flat_market("A", 100.0);
    auto obs = observation_with(m, Money::from_double(1000), 0, 0.0);
    Agent agent(persona(1, Strategy::technical, "A"), uniform_belief(5), std::make_shared<HoldPolicy>());
    Rng rng(1);
    const auto cycle = bdi_cycle(
        agent, obs,
        [&](const DayPlan&) {
            Feedback fb;
            fb.day = 0;
            fb.pct_change = {{"A", 0.02}};
            fb.portfolio = obs.portfolio;
            fb.prior_total_value = obs.portfolio.total_value;
            return fb;
        },
        rng);
    CHECK(cycle.plan.orders.empty());
    CHECK(cycle.belief.dims[trend] > 5.0);
    CHECK(cycle.phases.size() == 6);
    CHECK(cycle.phases.front() == Phase::belief_formation);
    CHECK(cycle.phases.back() == Phase::belief_update);
}

TEST_CASE("structured reply parsers") {
    CHECK(strip_code_fence("```yaml\na: 1\n```") == "a: 1");
    CHECK(parse_query_reply("queries:\n  - rates\nstock_id: [A]").stock_ids == std::vector<AssetId>{"A"});
    CHECK_THROWS_AS(parse_query_reply("queries: []"), SchemaViolation);
    CHECK(parse_index_selection("selected_index: [A, B]").size() == 2);
    CHECK(parse_data_query("indicators: [close, pb]").size() == 2);

    const auto d = parse_decision("A:\n  action: buy\n  trading_position: 12.5\n  target_price: 101.2\n"
                                  "B:\n  action: hold\n  trading_position: 30\n",
                                  {"A", "B"});
    REQUIRE(d.items.size() == 2);
    CHECK(d.items[0].action == Action::buy);
    CHECK(d.items[0].trading_position == 12.5);
    CHECK(*d.items[0].target_price == Money::from_double(101.2));
    CHECK(d.items[1].trading_position == 0.0);
    CHECK_THROWS_AS(parse_decision("C:\n  action: buy\n", {"A"}), SchemaViolation);
    CHECK_THROWS_AS(parse_decision("A:\n  action: buy\n  trading_position: -1\n", {"A"}), SchemaViolation);
    CHECK_THROWS_AS(parse_decision("A: [unclosed", {"A"}), SchemaViolation);

    CHECK(parse_post("post: hello\ntype: type2").post_type == feed::PostType::type2);
    const auto [text, scores] = parse_belief_reply("belief: calm\nbelief_scores: [1, 2, 3, 4, 12]");
    CHECK(text == "calm");
    CHECK(scores[4] == 10.0);
    CHECK(parse_forum_action("ok <action>Repost</action>") == feed::ActionKind::repost);
    CHECK_FALSE(parse_forum_action("nothing").has_value());
}

TEST_CASE("prompt catalog renders every template and rejects missing fields") {
    const auto cat = PromptCatalog::defaults();
    for (const char* name : {"system", "identity", "forum_check", "news_analysis", "news_query_initial",
                             "news_query_formulation", "belief_update", "index_selection", "data_query",
                             "decision_step1", "decision_step2", "posting"}) {
        REQUIRE(cat.contains(name));
        std::map<std::string, std::string> fields;
        for (const auto& ph : placeholders(cat.get(name).text)) fields[ph] = "x";
        CHECK_NOTHROW((void)cat.render(name, fields));
    }
    CHECK(render_text("a {x} {{b}}", {{"x", "1"}}) == "a 1 {b}");
    CHECK_THROWS_AS(render_text("{missing}", {}), ConfigError);
    CHECK_THROWS_AS((void)cat.get("nope"), ConfigError);
}

namespace {

std::vector<std::string> llm_day_script(const std::string& decision) {
    return {"thinking about news",                 // news_query_initial
            "queries: [rates]\nstock_id: [A]",     // news_query_formulation
            "selected_index: [A]",                 // index_selection
            "indicators: [close, pb]",             // data_query
            "looks fine",                          // decision_step1
            decision,                              // decision_step2
            "post: selling out\ntype: type2",      // posting
            "belief: cautious\nbelief_scores: [4, 4, 4, 4, 4]"};
}

}  // namespace

TEST_CASE("chat policy: scripted day with an oversized sell") {
    auto client = std::make_shared<ScriptedChatClient>(
        llm_day_script("A:\n  action: sell\n  trading_position: 50\n  target_price: 99\n"));
    Agent agent(persona(1, Strategy::technical, "A"), uniform_belief(5), std::make_shared<LlmPolicy>(client));
    auto m = flat_market("A", 100.0);
    auto obs = observation_with(m, Money::from_double(10000), 10, 100.0);
    Rng rng(1);
    const auto plan = agent.plan(obs, rng);
    REQUIRE_FALSE(plan.failure.has_value());
    REQUIRE(plan.orders.size() == 1);
    CHECK(plan.orders[0].side == Side::sell);
    CHECK(plan.orders[0].quantity == 10);
    CHECK(plan.orders[0].limit_price == Money::from_double(99));
    CHECK(std::any_of(plan.notes.begin(), plan.notes.end(),
                      [](const auto& n) { return n.find("clipped") != std::string::npos; }));
    REQUIRE(plan.social.post.has_value());
    CHECK(plan.social.post->content == "selling out");

    Feedback fb;
    fb.portfolio = obs.portfolio;
    agent.respond(fb, rng);
    CHECK(agent.belief().dims[0] == 4.0);
    CHECK(agent.belief().narrative == "cautious");
    CHECK(client->remaining() == 0);
    CHECK(client->requests().front().front().role == "system");
}

TEST_CASE("chat policy: malformed decisions degrade to a hold") {
    auto script = llm_day_script("not: [valid");
    script.insert(script.begin() + 6, "still: [broken");  // the retry
    auto client = std::make_shared<ScriptedChatClient>(script);
    auto policy = std::make_shared<LlmPolicy>(client);
    Agent agent(persona(1, Strategy::technical, "A"), uniform_belief(5), policy);
    auto obs = observation_with(flat_market("A", 100.0), Money::from_double(10000), 10, 100.0);
    Rng rng(1);
    const auto plan = agent.plan(obs, rng);
    CHECK(plan.failure.has_value());
    CHECK(plan.orders.empty());
    CHECK(policy->schema_violations() == 2);
}

TEST_CASE("chat policy: service outage degrades to a hold") {
    auto client = std::make_shared<ScriptedChatClient>(std::vector<std::string>{});
    Agent agent(persona(1, Strategy::technical, "A"), uniform_belief(5), std::make_shared<LlmPolicy>(client));
    auto obs = observation_with(flat_market("A", 100.0), Money::from_double(10000), 0, 0.0);
    Rng rng(1);
    const auto plan = agent.plan(obs, rng);
    CHECK(plan.failure.has_value());
    CHECK(plan.orders.empty());
}

TEST_CASE("http client reads its key from the environment only") {
    ChatSettings s;
    s.api_key_env = "TWINMARKET_TEST_KEY_UNSET";
    ::unsetenv("TWINMARKET_TEST_KEY_UNSET");
    CHECK_THROWS_AS(HttpChatClient{s}, ConfigError);

    ::setenv("TWINMARKET_TEST_KEY_SET", "secret", 1);
    s.api_key_env = "TWINMARKET_TEST_KEY_SET";
    s.model = "m1";
    HttpChatClient c(s);
    const auto body = c.request_body({{"user", "hi"}});
    CHECK(body.at("model") == "m1");
    CHECK(body.at("messages").size() == 1);
    CHECK(body.dump().find("secret") == std::string::npos);
}
