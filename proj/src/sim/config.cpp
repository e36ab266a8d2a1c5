#include "twinmarket/sim/config.hpp"

#include <cstdio>
#include <fstream>
#include <set>
#include <sstream>

#include "twinmarket/common/errors.hpp"
#include "twinmarket/common/rng.hpp"
#include "twinmarket/sim/json_reader.hpp"

namespace twinmarket::sim {

const char* to_string(Scenario s) { return s == Scenario::rumor ? "rumor" : "control"; }

const char* to_string(PolicyMode m) {
    switch (m) {
        case PolicyMode::rules: return "rules";
        case PolicyMode::llm: return "llm";
        case PolicyMode::mixed: return "mixed";
    }
    return "rules";
}

Scenario scenario_from_string(const std::string& s) {
    if (s == "control") return Scenario::control;
    if (s == "rumor") return Scenario::rumor;
    throw ConfigError("unknown scenario " + s);
}

PolicyMode policy_mode_from_string(const std::string& s) {
    if (s == "rules") return PolicyMode::rules;
    if (s == "llm") return PolicyMode::llm;
    if (s == "mixed") return PolicyMode::mixed;
    throw ConfigError("unknown policy mode " + s);
}

namespace {

void read_rules(const json& j, agents::RuleParams& r) {
    JsonReader rd(j, "rules");
    rd.get("smoothing", r.smoothing);
    rd.get("news_weight", r.news_weight);
    rd.get("feed_weight", r.feed_weight);
    rd.get("override_tilt", r.override_tilt);
    rd.get("fundamental_z", r.fundamental_z);
    rd.get("valuation_window", r.valuation_window);
    rd.get("ma_band", r.ma_band);
    rd.get("volume_confirm", r.volume_confirm);
    rd.get("contrarian_move", r.contrarian_move);
    rd.get("price_spread", r.price_spread);
    rd.get("post_probability", r.post_probability);
    rd.get("vote_probability", r.vote_probability);
    rd.get("repost_probability", r.repost_probability);
    rd.get("return_scale", r.return_scale);
    rd.get("noise_probability", r.noise_probability);
    rd.finish();
}

ordered_json rules_json(const agents::RuleParams& r) {
    return {{"smoothing", r.smoothing},
            {"news_weight", r.news_weight},
            {"feed_weight", r.feed_weight},
            {"override_tilt", r.override_tilt},
            {"fundamental_z", r.fundamental_z},
            {"valuation_window", r.valuation_window},
            {"ma_band", r.ma_band},
            {"volume_confirm", r.volume_confirm},
            {"contrarian_move", r.contrarian_move},
            {"price_spread", r.price_spread},
            {"post_probability", r.post_probability},
            {"vote_probability", r.vote_probability},
            {"repost_probability", r.repost_probability},
            {"return_scale", r.return_scale},
            {"noise_probability", r.noise_probability}};
}

bool valid_date(const std::string& s) {
    int y = 0, m = 0, d = 0;
    char tail = 0;
    return s.size() == 10 && std::sscanf(s.c_str(), "%4d-%2d-%2d%c", &y, &m, &d, &tail) == 3 && m >= 1 && m <= 12 &&
           d >= 1 && d <= 31;
}

}  // namespace

void SimConfig::validate() const {
    if (!valid_date(start_date)) throw ConfigError("start_date must be YYYY-MM-DD");
    if (end_date.empty()) {
        if (trading_days <= 0) throw ConfigError("set end_date or a positive trading_days");
    } else {
        if (!valid_date(end_date)) throw ConfigError("end_date must be YYYY-MM-DD");
        if (!(start_date < end_date)) throw ConfigError("start_date must precede end_date");
    }
    for (const auto& h : holidays) {
        if (!valid_date(h)) throw ConfigError("holiday " + h + " must be YYYY-MM-DD");
    }
    if (agents == 0) throw ConfigError("agents must be positive");
    if (!(activation > 0.0 && activation <= 1.0)) throw ConfigError("activation must lie in (0, 1]");
    if (injection_count > agents) throw ConfigError("injection_count exceeds the agent count");
    if (!(llm_fraction >= 0.0 && llm_fraction <= 1.0)) throw ConfigError("llm_fraction must lie in [0, 1]");
    if (!(brar_percentile >= 0.0 && brar_percentile <= 1.0)) throw ConfigError("brar_percentile must lie in [0, 1]");
    if (!(population.initial_cash > 0.0)) throw ConfigError("initial_cash must be positive");
    if (!(population.large_capital_multiplier >= 1.0)) throw ConfigError("large_capital_multiplier must be >= 1");
    if (!(population.holdings_fraction >= 0.0 && population.holdings_fraction < 1.0)) {
        throw ConfigError("holdings_fraction must lie in [0, 1)");
    }
    if (population.history_days < 1) throw ConfigError("history_days must be positive");
    if (population.belief_variance < 0.0) throw ConfigError("belief_variance must be non-negative");
    if (!population.groups.empty()) {
        std::size_t total = 0;
        for (const auto& g : population.groups) {
            total += g.count;
            if (g.bias != "generated" && g.bias != "high" && g.bias != "low") {
                throw ConfigError("group bias must be generated, high or low");
            }
        }
        if (total != agents) throw ConfigError("group counts must add up to the agent count");
    }
    if (market.warmup_days < 2) throw ConfigError("warmup_days must be at least 2");
    if (!(market.warmup_volatility >= 0.0)) throw ConfigError("warmup_volatility must be non-negative");
    if (!(market.warmup_volume >= 0.0)) throw ConfigError("warmup_volume must be non-negative");
    if (news_gen.factual_tone < -1.0 || news_gen.factual_tone > 1.0 || news_gen.rumor_tone < -1.0 ||
        news_gen.rumor_tone > 1.0) {
        throw ConfigError("news tones must lie in [-1, 1]");
    }
    try {
        graph.validate();
        feed.validate();
        rules.validate();
    } catch (const InvalidSpec& e) {
        throw ConfigError(e.what());
    }
}

SimConfig config_from_json(const json& j) {
    SimConfig c;
    JsonReader rd(j, "config");
    rd.get("start_date", c.start_date);
    rd.get("end_date", c.end_date);
    rd.get("trading_days", c.trading_days);
    rd.get("holidays", c.holidays);
    rd.get("agents", c.agents);
    rd.get("activation", c.activation);
    if (const json* g = rd.child("graph")) {
        JsonReader r(*g, "graph");
        r.get("lambda", c.graph.lambda);
        r.get("tau", c.graph.tau);
        r.finish();
    }
    if (const json* f = rd.child("feed")) {
        JsonReader r(*f, "feed");
        r.get("alpha", c.feed.alpha);
        r.get("epsilon", c.feed.epsilon);
        r.get("k", c.feed.k);
        r.get("window", c.feed.window);
        r.finish();
    }
    rd.get("injection_count", c.injection_count);
    std::string scenario = to_string(c.scenario);
    rd.get("scenario", scenario);
    c.scenario = scenario_from_string(scenario);
    rd.get("seed", c.seed);
    if (const json* d = rd.child("data")) {
        JsonReader r(*d, "data");
        r.get("personas", c.data.personas);
        r.get("constituents", c.data.constituents);
        r.get("news", c.data.news);
        r.get("reference", c.data.reference);
        r.get("sentiment", c.data.sentiment);
        r.finish();
    }
    std::string mode = to_string(c.policy_mode);
    rd.get("policy_mode", mode);
    c.policy_mode = policy_mode_from_string(mode);
    rd.get("llm_fraction", c.llm_fraction);
    if (const json* ch = rd.child("chat")) {
        JsonReader r(*ch, "chat");
        r.get("endpoint", c.chat.endpoint);
        r.get("model", c.chat.model);
        r.get("temperature", c.chat.temperature);
        r.get("timeout_seconds", c.chat.timeout_seconds);
        r.get("retries", c.chat.retries);
        r.get("api_key_env", c.chat.api_key_env);
        r.get("min_interval_seconds", c.chat.min_interval_seconds);
        r.get("transcript", c.chat_transcript);
        r.finish();
    }
    rd.get("inactive_update_beliefs", c.inactive_update_beliefs);
    rd.get("brar_percentile", c.brar_percentile);
    if (const json* p = rd.child("population")) {
        JsonReader r(*p, "population");
        r.get("initial_cash", c.population.initial_cash);
        r.get("large_capital_multiplier", c.population.large_capital_multiplier);
        r.get("uniform_capital", c.population.uniform_capital);
        r.get("holdings_fraction", c.population.holdings_fraction);
        r.get("history_days", c.population.history_days);
        r.get("belief_variance", c.population.belief_variance);
        if (const json* gs = r.child("groups")) {
            if (!gs->is_array()) throw ConfigError("population.groups must be an array");
            for (const auto& g : *gs) {
                AgentGroup grp;
                JsonReader gr(g, "population.groups[]");
                gr.get("count", grp.count);
                gr.get("policy", grp.policy);
                gr.get("bias", grp.bias);
                gr.finish();
                c.population.groups.push_back(grp);
            }
        }
        r.finish();
    }
    if (const json* n = rd.child("news_generation")) {
        JsonReader r(*n, "news_generation");
        r.get("factual_tone", c.news_gen.factual_tone);
        r.get("rumor_tone", c.news_gen.rumor_tone);
        r.get("rumor_start", c.news_gen.rumor_start);
        r.finish();
    }
    if (const json* m = rd.child("market")) {
        JsonReader r(*m, "market");
        r.get("warmup_days", c.market.warmup_days);
        r.get("warmup_volatility", c.market.warmup_volatility);
        r.get("warmup_volume", c.market.warmup_volume);
        r.get("recommendations", c.market.recommendations);
        r.finish();
    }
    if (const json* rj = rd.child("rules")) read_rules(*rj, c.rules);
    rd.finish();
    c.validate();
    return c;
}

SimConfig load_config(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw MissingData("cannot open config " + path.string());
    json j;
    try {
        j = json::parse(in, nullptr, true, true);
    } catch (const json::parse_error& e) {
        throw ConfigError(path.string() + ": " + e.what());
    }
    return config_from_json(j);
}

ordered_json to_json(const SimConfig& c) {
    ordered_json groups = ordered_json::array();
    for (const auto& g : c.population.groups) {
        groups.push_back({{"count", g.count}, {"policy", g.policy}, {"bias", g.bias}});
    }
    ordered_json j;
    j["start_date"] = c.start_date;
    j["end_date"] = c.end_date;
    j["trading_days"] = c.trading_days;
    j["holidays"] = c.holidays;
    j["agents"] = c.agents;
    j["activation"] = c.activation;
    j["graph"] = {{"lambda", c.graph.lambda}, {"tau", c.graph.tau}};
    j["feed"] = {{"alpha", c.feed.alpha}, {"epsilon", c.feed.epsilon}, {"k", c.feed.k}, {"window", c.feed.window}};
    j["injection_count"] = c.injection_count;
    j["scenario"] = to_string(c.scenario);
    j["seed"] = c.seed;
    j["data"] = {{"personas", c.data.personas},
                 {"constituents", c.data.constituents},
                 {"news", c.data.news},
                 {"reference", c.data.reference},
                 {"sentiment", c.data.sentiment}};
    j["policy_mode"] = to_string(c.policy_mode);
    j["llm_fraction"] = c.llm_fraction;
    j["chat"] = {{"endpoint", c.chat.endpoint},
                 {"model", c.chat.model},
                 {"temperature", c.chat.temperature},
                 {"timeout_seconds", c.chat.timeout_seconds},
                 {"retries", c.chat.retries},
                 {"api_key_env", c.chat.api_key_env},
                 {"min_interval_seconds", c.chat.min_interval_seconds},
                 {"transcript", c.chat_transcript}};
    j["inactive_update_beliefs"] = c.inactive_update_beliefs;
    j["brar_percentile"] = c.brar_percentile;
    j["population"] = {{"initial_cash", c.population.initial_cash},
                       {"large_capital_multiplier", c.population.large_capital_multiplier},
                       {"uniform_capital", c.population.uniform_capital},
                       {"holdings_fraction", c.population.holdings_fraction},
                       {"history_days", c.population.history_days},
                       {"belief_variance", c.population.belief_variance},
                       {"groups", groups}};
    j["news_generation"] = {{"factual_tone", c.news_gen.factual_tone},
                            {"rumor_tone", c.news_gen.rumor_tone},
                            {"rumor_start", c.news_gen.rumor_start}};
    j["market"] = {{"warmup_days", c.market.warmup_days},
                   {"warmup_volatility", c.market.warmup_volatility},
                   {"warmup_volume", c.market.warmup_volume},
                   {"recommendations", c.market.recommendations}};
    j["rules"] = rules_json(c.rules);
    return j;
}

std::string config_hash(const SimConfig& c) {
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(hash_tag(to_json(c).dump())));
    return buf;
}

}  // namespace twinmarket::sim
