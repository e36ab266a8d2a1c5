#include <chrono>
#include <fstream>
#include <iostream>

#include <CLI11.hpp>

#include "twinmarket/analytics/performance.hpp"
#include "twinmarket/common/errors.hpp"
#include "twinmarket/sim/baseline_compare.hpp"
#include "twinmarket/sim/runner.hpp"

namespace twm = twinmarket;

namespace {

struct Overrides {
    std::string config;
    std::optional<std::uint64_t> seed;
    std::string scenario;
    std::string policy;
    std::optional<std::size_t> agents;
    std::optional<int> trading_days;
};

void add_overrides(CLI::App* cmd, Overrides& o) {
    cmd->add_option("-c,--config", o.config, "Simulation config (JSON)");
    cmd->add_option("--seed", o.seed, "Root seed override");
    cmd->add_option("--scenario", o.scenario, "control or rumor")->check(CLI::IsMember({"control", "rumor"}));
    cmd->add_option("--policy", o.policy, "rules, llm or mixed")->check(CLI::IsMember({"rules", "llm", "mixed"}));
    cmd->add_option("--agents", o.agents, "Agent count override");
    cmd->add_option("--trading-days", o.trading_days, "Run length in trading days (clears end_date)");
}

twm::sim::SimConfig resolve(const Overrides& o) {
    twm::json j = o.config.empty() ? twm::json::object() : twm::json(twm::sim::to_json(twm::sim::load_config(o.config)));
    if (o.config.empty()) {
        j["trading_days"] = 20;
        j["end_date"] = "";
    }
    if (o.seed) j["seed"] = *o.seed;
    if (!o.scenario.empty()) j["scenario"] = o.scenario;
    if (!o.policy.empty()) j["policy_mode"] = o.policy;
    if (o.agents) {
        j["agents"] = *o.agents;
        if (j.contains("population")) j["population"]["groups"] = twm::json::array();
        if (j.contains("injection_count") && j["injection_count"].get<std::size_t>() > *o.agents) {
            j["injection_count"] = *o.agents;
        }
    }
    if (o.trading_days) {
        j["trading_days"] = *o.trading_days;
        j["end_date"] = "";
    }
    return twm::sim::config_from_json(j);
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Agent-based stock market simulator with a social feed"};
    app.require_subcommand(1);

    Overrides run_o;
    std::string run_out = "run";
    auto* run = app.add_subcommand("run", "Simulate and write logs and reports");
    add_overrides(run, run_o);
    run->add_option("-o,--out", run_out, "Output directory");

    std::string an_events, an_prices, an_out = "analysis";
    auto* analyze = app.add_subcommand("analyze", "Compute reports from an event log or a price series");
    auto* ev_opt = analyze->add_option("--events", an_events, "events.jsonl of a run");
    analyze->add_option("--prices", an_prices, "CSV with close (and vol) columns")->excludes(ev_opt);
    analyze->add_option("-o,--out", an_out, "Output directory");

    std::string cb_config, cb_engine, cb_out;
    auto* compare = app.add_subcommand("compare-baselines", "Stylized facts of HPM, BH and the engine side by side");
    compare->add_option("-c,--config", cb_config, "Comparison config (JSON)");
    compare->add_option("--engine-run", cb_engine, "Run directory for the engine row");
    compare->add_option("-o,--out", cb_out, "Write the table here as well as to stdout");

    Overrides gp_o;
    std::string gp_out = "profiles";
    auto* gen = app.add_subcommand("gen-profiles", "Synthesize personas and warm-up transactions");
    add_overrides(gen, gp_o);
    gen->add_option("-o,--out", gp_out, "Output directory");

    std::string rp_run, rp_out;
    auto* rep = app.add_subcommand("replay", "Recompute a run's reports from its event log and compare");
    rep->add_option("--run", rp_run, "Run directory")->required();
    rep->add_option("-o,--out", rp_out, "Write the recomputed reports here");

    CLI11_PARSE(app, argc, argv);

    try {
        if (*run) {
            const auto cfg = resolve(run_o);
            const auto t0 = std::chrono::steady_clock::now();
            const auto out = twm::sim::run_simulation(cfg, run_out);
            const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
            std::cout << "wrote " << out.dir.string() << ": " << out.events << " events, "
                      << out.inputs.trading_days.size() << " trading days, " << out.inputs.trades.size() << " trades in "
                      << secs << " s\n";
        } else if (*analyze) {
            if (!an_events.empty()) {
                const auto r = twm::sim::analyze_log(an_events, an_out);
                std::cout << r.stylized_facts;
            } else if (!an_prices.empty()) {
                const auto [p, v] = twm::sim::read_price_series(an_prices);
                std::vector<twm::sim::SFRow> rows;
                const auto f = twm::analytics::stylized_facts(p, v);
                twm::sim::SFRow row;
                row.system = an_prices;
                row.runs = 1;
                row.metrics.kurtosis = f.kurtosis;
                row.metrics.leverage = f.leverage;
                row.metrics.volume_corr = f.volume_corr;
                row.metrics.volume_p = f.volume_p;
                if (f.garch) {
                    row.metrics.garch_persistence = f.garch->persistence();
                    row.converged = f.garch->converged ? 1 : 0;
                }
                std::cout << twm::sim::render_table({row});
            } else {
                std::cerr << "analyze needs --events or --prices\n";
                return 2;
            }
        } else if (*compare) {
            auto cfg = cb_config.empty() ? twm::sim::BaselineCompareConfig{} : twm::sim::load_baseline_config(cb_config);
            if (!cb_engine.empty()) cfg.engine_run = cb_engine;
            const auto table = twm::sim::render_table(twm::sim::compare_baselines(cfg));
            std::cout << table;
            if (!cb_out.empty()) std::ofstream(cb_out) << table;
        } else if (*gen) {
            twm::sim::generate_profiles(resolve(gp_o), gp_out);
            std::cout << "wrote " << gp_out << "/personas.jsonl and transactions.csv\n";
        } else if (*rep) {
            const auto r = twm::sim::replay(rp_run, rp_out);
            if (r.matches()) {
                std::cout << "replay matches all report files\n";
                return 0;
            }
            for (const auto& f : r.mismatched) std::cout << "mismatch: " << f << '\n';
            return 1;
        }
    } catch (const twm::Error& e) {
        std::cerr << e.what() << '\n';
        return 1;
    }
    return 0;
}
