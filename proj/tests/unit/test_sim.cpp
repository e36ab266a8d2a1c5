#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "twinmarket/agents/rule_policies.hpp"
#include "twinmarket/common/errors.hpp"
#include "twinmarket/sim/baseline_compare.hpp"
#include "twinmarket/sim/calendar.hpp"
#include "twinmarket/sim/config.hpp"
#include "twinmarket/sim/event_log.hpp"
#include "twinmarket/sim/reports.hpp"
#include "twinmarket/sim/runner.hpp"
#include "twinmarket/sim/world.hpp"

using namespace twinmarket;
using namespace twinmarket::sim;
namespace fs = std::filesystem;

namespace {

fs::path scratch(const std::string& name) {
    const fs::path p = fs::temp_directory_path() / ("twinmarket_test_sim_" + name);
    fs::remove_all(p);
    return p;
}

SimConfig small_config(std::size_t agents, int days) {
    SimConfig c;
    c.agents = agents;
    c.trading_days = days;
    c.injection_count = std::min<std::size_t>(agents, 5);
    return c;
}

std::string dump(const EventLog& log) {
    std::ostringstream os;
    log.write(os);
    return os.str();
}

void check_conservation(const World& w) {
    Money cash;
    std::map<AssetId, std::int64_t> units;
    for (const auto& [id, p] : w.portfolios().all()) {
        cash += p.cash;
        for (const auto& [a, q] : p.holdings) units[a] += q;
    }
    CHECK(cash == w.initial_cash());
    for (const auto& [a, q] : w.initial_holdings()) CHECK(units[a] == q);
}

// Trades a fixed intention on one asset, chosen after the world is built.
class ScriptedPolicy : public agents::HoldPolicy {
public:
    ScriptedPolicy(std::shared_ptr<AssetId> asset, agents::Action action, double position)
        : asset_(std::move(asset)), action_(action), position_(position) {}
    agents::TradeIntention plan_intentions(const agents::Observation& obs, const agents::Persona&,
                                           const agents::BeliefState&, const agents::DesireQuery&,
                                           Rng&) override {
        agents::TradeIntention ti;
        const auto* v = obs.asset(*asset_);
        if (!obs.trading_day || !v) return ti;
        const double px = v->prev_close() * (action_ == agents::Action::buy ? 1.01 : 0.99);
        ti.items.push_back({*asset_, action_, position_, Money::from_double(px)});
        return ti;
    }

private:
    std::shared_ptr<AssetId> asset_;
    agents::Action action_;
    double position_;
};

}  // namespace

TEST_CASE("config rejects unknown keys and round-trips") {
    CHECK_THROWS_AS(config_from_json(json::parse(R"({"agnets": 5, "trading_days": 3})")), ConfigError);
    CHECK_THROWS_AS(config_from_json(json::parse(R"({"trading_days": 3, "graph": {"tau": 0.2, "x": 1}})")),
                    ConfigError);
    const auto c = config_from_json(json::parse(R"({"agents": 7, "trading_days": 3, "scenario": "rumor", "injection_count": 5,
                                                    "graph": {"lambda": 1.0},
                                                    "population": {"groups": [{"count": 7, "policy": "contrarian"}]}})"));
    CHECK(c.agents == 7);
    CHECK(c.scenario == Scenario::rumor);
    CHECK(c.graph.lambda == 1.0);
    const auto back = config_from_json(json::parse(to_json(c).dump()));
    CHECK(to_json(back) == to_json(c));
    CHECK(config_hash(back) == config_hash(c));
    CHECK(config_hash(small_config(5, 3)) != config_hash(c));

    auto bad = small_config(5, 3);
    bad.population.groups = {{3, "contrarian", "high"}};
    CHECK_THROWS_AS(bad.validate(), ConfigError);
    bad = small_config(5, 0);
    CHECK_THROWS_AS(bad.validate(), ConfigError);
}

TEST_CASE("calendar skips weekends and holidays") {
    // 2023-06-15 is a Thursday
    const auto cal = build_calendar("2023-06-15", "", 3, {"2023-06-16"});
    REQUIRE(cal.size() == 6);
    CHECK(cal[0].trading);
    CHECK_FALSE(cal[1].trading);  // holiday
    CHECK_FALSE(cal[2].trading);
    CHECK_FALSE(cal[3].trading);
    CHECK(cal[4].date == "2023-06-19");
    CHECK(cal[4].trading_ordinal == 1);
    CHECK(cal[5].trading_ordinal == 2);
    CHECK(cal[2].trading_ordinal == 0);
    CHECK(build_calendar("2023-06-15", "2023-06-18", 0, {}).size() == 4);
    CHECK_THROWS_AS(build_calendar("2023-13-40", "", 3, {}), ConfigError);
}

TEST_CASE("event log ordering and round trip") {
    EventLog log;
    log.append(0, "a", {{"x", 1}});
    log.append(0, "b", {});
    log.append(2, "c", {});
    CHECK(log.events()[1].seq == 1);
    CHECK(log.events()[2].seq == 0);
    CHECK_THROWS_AS(log.append(1, "late", {}), ConsistencyError);

    std::istringstream in(dump(log));
    const auto back = EventLog::read(in);
    CHECK(dump(back) == dump(log));

    std::istringstream swapped(R"({"day":1,"seq":0,"type":"a","data":{}})"
                               "\n"
                               R"({"day":0,"seq":0,"type":"b","data":{}})"
                               "\n");
    CHECK_THROWS_AS(EventLog::read(swapped), SchemaViolation);
}

TEST_CASE("report helpers") {
    CHECK(ls_slope({1, 2, 3}) == doctest::Approx(1.0));
    CHECK(ls_slope({5}) == 0.0);
    ReportInputs in;
    in.decisions = {{0, Side::buy}, {1, Side::sell}, {1, Side::sell}, {2, Side::buy}};
    CHECK(*sell_buy_ratio_from(in, 0) == 1.0);
    CHECK(*sell_buy_ratio_from(in, 1) == 2.0);
    CHECK_FALSE(sell_buy_ratio_from(in, 3).has_value());
    CHECK(fmt_num(std::nullopt) == "NA");
    CHECK(fmt_num(0.5) == "0.5");
}

TEST_CASE("zero active agents carry prices over") {
    auto cfg = small_config(20, 3);
    cfg.activation = 0.01;  // rounds to nobody
    World w(cfg);
    const auto before = w.market().last_closes();
    w.run_all();
    CHECK(w.market().last_closes() == before);
    for (const auto& s : w.day_stats()) {
        CHECK(s.active == 0);
        CHECK(s.trades == 0);
    }
    CHECK(w.report_inputs().trades.empty());
    check_conservation(w);
}

TEST_CASE("one buyer and one seller produce exactly one trade") {
    auto cfg = small_config(2, 1);
    cfg.injection_count = 0;
    auto asset = std::make_shared<AssetId>();
    std::vector<agents::Agent> pop;
    for (std::uint32_t id : {0u, 1u}) {
        agents::Persona p;
        p.agent_id = AgentId(id);
        p.followed_industries = {exchange::industry_codes().front()};
        const auto action = id == 0 ? agents::Action::buy : agents::Action::sell;
        pop.emplace_back(p, agents::BeliefState{}, std::make_shared<ScriptedPolicy>(asset, action, id == 0 ? 0.5 : 100.0));
    }
    World w(cfg, std::move(pop));
    // pick an asset the seller holds
    const auto& seller = w.portfolios().get(AgentId(1));
    for (const auto& [a, q] : seller.holdings) {
        if (q > 0) {
            *asset = a;
            break;
        }
    }
    REQUIRE_FALSE(asset->empty());
    w.run_all();
    REQUIRE(w.report_inputs().trades.size() == 1);
    const auto& t = w.report_inputs().trades.front();
    CHECK(t.buyer_id == AgentId(0));
    CHECK(t.seller_id == AgentId(1));
    CHECK(t.asset_id == *asset);
    check_conservation(w);
}

TEST_CASE("same config and seed give identical event logs") {
    const auto cfg = small_config(30, 5);
    World a(cfg), b(cfg);
    a.run_all();
    b.run_all();
    CHECK(dump(a.log()) == dump(b.log()));
    check_conservation(a);
    auto other = cfg;
    other.seed = 43;
    World c(other);
    c.run_all();
    CHECK(dump(c.log()) != dump(a.log()));
}

TEST_CASE("a run writes every declared output and replays") {
    const auto dir = scratch("run");
    const auto out = run_simulation(small_config(20, 2), dir);
    for (const auto& f : declared_outputs()) CHECK_MESSAGE(fs::exists(dir / f), f);
    CHECK(read_reports(dir) == out.reports);

    const auto rep = replay(dir, dir / "replay");
    CHECK(rep.matches());
    CHECK(rep.reports == out.reports);
    const auto logged = inputs_from_log(EventLog::read(dir / "events.jsonl"));
    CHECK(compute_reports(logged) == out.reports);
    fs::remove_all(dir);
}

TEST_CASE("rumor run sells more than the control run") {
    auto cfg = small_config(40, 12);
    World c(cfg);
    c.run_all();
    cfg.scenario = Scenario::rumor;
    World r(cfg);
    r.run_all();
    const Day focus = r.report_inputs().focus_day;
    REQUIRE(focus >= 0);
    CHECK(c.report_inputs().focus_day == focus);
    const auto rc = sell_buy_ratio_from(c.report_inputs(), focus);
    const auto rr = sell_buy_ratio_from(r.report_inputs(), focus);
    REQUIRE(rc.has_value());
    REQUIRE(rr.has_value());
    CHECK(*rr > *rc);
}

TEST_CASE("baseline comparison rows") {
    const auto dir = scratch("cmp");
    run_simulation(small_config(20, 15), dir);
    BaselineCompareConfig cfg;
    cfg.seeds = {1, 2};
    cfg.hpm.T = 600;
    cfg.bh.T = 600;
    cfg.engine_run = dir.string();
    ReferenceMetrics ref;
    ref.kurtosis = 7.26;
    cfg.reference_metrics = ref;
    const auto rows = compare_baselines(cfg);
    REQUIRE(rows.size() == 4);
    CHECK(rows[0].system == "Real Data");
    CHECK(*rows[0].metrics.kurtosis == 7.26);
    CHECK(rows[1].system == "HPM");
    CHECK(rows[1].runs == 2);
    CHECK(rows[2].system == "BH");
    CHECK(rows[3].system == "TwinMarket");
    const auto table = render_table(rows);
    CHECK(table.rfind("system\t", 0) == 0);
    CHECK(std::count(table.begin(), table.end(), '\n') == 5);
    CHECK(median({3, 1, 2}) == 2.0);
    CHECK(median({4, 1, 2, 3}) == 2.5);
    CHECK_FALSE(median({}).has_value());
    CHECK_THROWS_AS(baseline_config_from_json(json::parse(R"({"seedz": [1]})")), ConfigError);
    fs::remove_all(dir);
}
