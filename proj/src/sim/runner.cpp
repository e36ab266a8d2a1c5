#include "twinmarket/sim/runner.hpp"

#include <fstream>

#include "twinmarket/agents/transactions.hpp"
#include "twinmarket/common/errors.hpp"

namespace twinmarket::sim {

namespace {

constexpr const char* kVersion = "0.1.0";

void spit(const std::filesystem::path& p, const std::string& text) {
    std::ofstream out(p, std::ios::binary);
    if (!out) throw MissingData("cannot write " + p.string());
    out << text;
}

// One JSONL file per event type, each line stamped with (day, seq).
void write_filtered(const EventLog& log, const std::string& type, const std::filesystem::path& p) {
    std::ofstream out(p, std::ios::binary);
    if (!out) throw MissingData("cannot write " + p.string());
    for (const auto& e : log.events()) {
        if (e.type != type) continue;
        ordered_json j;
        j["day"] = e.day;
        j["seq"] = e.seq;
        for (const auto& [k, v] : e.data.items()) {
            if (k != "day") j[k] = v;
        }
        out << j.dump() << '\n';
    }
}

}  // namespace

const std::vector<std::string>& declared_outputs() {
    static const std::vector<std::string> files = {
        "events.jsonl",       "trades.jsonl",     "bars.jsonl",      "posts.jsonl",
        "beliefs.jsonl",      "graph_edges.csv",  "graph_stats.csv", "intensities.csv",
        "stylized_facts.tsv", "inequality.csv",   "turnover.csv",    "sentiment.csv",
        "decisions.csv",      "summary.json",     "config.json",     "manifest.json",
    };
    return files;
}

RunOutcome write_run(const World& world, const SimConfig& cfg, const std::filesystem::path& out_dir) {
    std::filesystem::create_directories(out_dir);
    RunOutcome out;
    out.dir = out_dir;
    out.inputs = world.report_inputs();
    out.reports = compute_reports(out.inputs);
    out.events = world.log().size();
    out.days = world.day_stats();

    world.log().write(out_dir / "events.jsonl");
    write_filtered(world.log(), "trade", out_dir / "trades.jsonl");
    write_filtered(world.log(), "bar", out_dir / "bars.jsonl");
    write_filtered(world.log(), "post", out_dir / "posts.jsonl");
    write_filtered(world.log(), "belief", out_dir / "beliefs.jsonl");
    spit(out_dir / "graph_edges.csv", world.graph_edges_csv());
    spit(out_dir / "graph_stats.csv", world.graph_stats_csv());
    spit(out_dir / "intensities.csv", world.intensities_csv());
    write_reports(out.reports, out_dir);
    spit(out_dir / "config.json", to_json(cfg).dump(2) + "\n");

    std::size_t trading = 0;
    for (const auto& cd : world.calendar()) trading += cd.trading ? 1 : 0;
    ordered_json m;
    m["tool"] = "twinmarket";
    m["version"] = kVersion;
    m["config_hash"] = config_hash(cfg);
    m["seed"] = cfg.seed;
    m["scenario"] = to_string(cfg.scenario);
    m["policy_mode"] = to_string(cfg.policy_mode);
    m["agents"] = cfg.agents;
    m["calendar_days"] = world.calendar().size();
    m["trading_days"] = trading;
    m["events"] = out.events;
    m["files"] = declared_outputs();
    spit(out_dir / "manifest.json", m.dump(2) + "\n");
    return out;
}

RunOutcome run_simulation(const SimConfig& cfg, const std::filesystem::path& out_dir) {
    World world(cfg);
    world.run_all();
    return write_run(world, cfg, out_dir);
}

ReplayResult replay(const std::filesystem::path& run_dir, const std::filesystem::path& out_dir) {
    ReplayResult r;
    r.reports = compute_reports(inputs_from_log(EventLog::read(run_dir / "events.jsonl")));
    if (!out_dir.empty()) write_reports(r.reports, out_dir);
    const ReportFiles orig = read_reports(run_dir);
    if (orig.stylized_facts != r.reports.stylized_facts) r.mismatched.push_back("stylized_facts.tsv");
    if (orig.inequality != r.reports.inequality) r.mismatched.push_back("inequality.csv");
    if (orig.turnover != r.reports.turnover) r.mismatched.push_back("turnover.csv");
    if (orig.sentiment != r.reports.sentiment) r.mismatched.push_back("sentiment.csv");
    if (orig.decisions != r.reports.decisions) r.mismatched.push_back("decisions.csv");
    if (orig.summary != r.reports.summary) r.mismatched.push_back("summary.json");
    return r;
}

ReportFiles analyze_log(const std::filesystem::path& events, const std::filesystem::path& out_dir) {
    auto reports = compute_reports(inputs_from_log(EventLog::read(events)));
    write_reports(reports, out_dir);
    return reports;
}

void generate_profiles(const SimConfig& cfg, const std::filesystem::path& out_dir) {
    std::filesystem::create_directories(out_dir);
    SimConfig c = cfg;
    c.policy_mode = PolicyMode::rules;  // profile synthesis never needs the chat service
    World world(c);
    std::ofstream personas(out_dir / "personas.jsonl", std::ios::binary);
    for (const auto& a : world.agents()) personas << agents::to_json(a.persona()).dump() << '\n';

    std::ofstream tx(out_dir / "transactions.csv", std::ios::binary);
    tx << "user,industry,day,direction,volume\n";
    const SeedTree seeds(c.seed);
    const auto assets = world.market().assets();
    for (const auto& a : world.agents()) {
        const auto& p = a.persona();
        Rng trng = seeds.stream("template", p.agent_id.value);
        const auto tmpl = agents::random_template(assets, p.followed_industries, trng);
        const int h = c.population.history_days;
        for (const auto& r : agents::synth_transactions(p.agent_id, tmpl, -h, h, seeds.derive("transactions", p.agent_id.value))) {
            tx << r.user_id << ',' << r.industry << ',' << r.day << ',' << to_string(r.direction) << ',' << r.volume
               << '\n';
        }
    }
}

}  // namespace twinmarket::sim
