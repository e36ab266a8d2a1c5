#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "twinmarket/agents/chat_client.hpp"
#include "twinmarket/agents/rule_policies.hpp"
#include "twinmarket/common/json.hpp"
#include "twinmarket/feed/ranking.hpp"
#include "twinmarket/socialgraph/graph.hpp"

namespace twinmarket::sim {

enum class Scenario { control, rumor };
enum class PolicyMode { rules, llm, mixed };

const char* to_string(Scenario s);
const char* to_string(PolicyMode m);
Scenario scenario_from_string(const std::string& s);
PolicyMode policy_mode_from_string(const std::string& s);

struct DataPaths {
    std::string personas;      // JSONL of personas; empty generates them
    std::string constituents;  // universe CSV; empty uses the built-in synthetic universe
    std::string news;          // scenario JSON; empty generates a default scenario
    std::string reference;     // CSV with a close column, for tracking metrics
    std::string sentiment;     // CSV date,percentile; the last row on or before the start date is used
};

/// A block of agents sharing a rule override and a bias profile.
struct AgentGroup {
    std::size_t count = 0;
    std::string policy;             // rule override, see make_rule_policy
    std::string bias = "generated"; // generated | high | low
};

struct PopulationConfig {
    double initial_cash = 100000.0;
    double large_capital_multiplier = 10.0;
    bool uniform_capital = false;
    double holdings_fraction = 0.5;  // share of capital placed in the warm-up portfolio
    int history_days = 30;           // synthetic transaction history before day 0
    double belief_variance = 1.0;
    std::vector<AgentGroup> groups;  // counts must add up to the agent count when non-empty
};

/// Defaults for the generated news scenario.
struct NewsGenConfig {
    double factual_tone = 0.2;
    double rumor_tone = -0.9;
    int rumor_start = 5;  // trading-day ordinal of the first rumor
};

struct MarketConfig {
    int warmup_days = 40;
    double warmup_volatility = 0.01;
    double warmup_volume = 2000.0;
    std::size_t recommendations = 2;
};

struct SimConfig {
    std::string start_date = "2023-06-15";
    std::string end_date;                // inclusive; may be empty when trading_days is set
    int trading_days = 0;                // run until this many trading days when end_date is empty
    std::vector<std::string> holidays;   // YYYY-MM-DD
    std::size_t agents = 100;
    double activation = 1.0;
    socialgraph::GraphParams graph;
    feed::FeedParams feed;
    std::size_t injection_count = 10;
    Scenario scenario = Scenario::control;
    std::uint64_t seed = 42;
    DataPaths data;
    PolicyMode policy_mode = PolicyMode::rules;
    double llm_fraction = 0.1;           // share of LLM agents in mixed mode
    agents::ChatSettings chat;
    std::string chat_transcript;         // optional JSONL transcript of chat traffic
    bool inactive_update_beliefs = true;
    double brar_percentile = 0.5;        // used when no sentiment file is given
    PopulationConfig population;
    NewsGenConfig news_gen;
    MarketConfig market;
    agents::RuleParams rules;

    /// Throws ConfigError.
    void validate() const;
};

/// Unknown keys anywhere in the document are rejected with ConfigError.
SimConfig config_from_json(const json& j);
SimConfig load_config(const std::filesystem::path& path);
/// Every field in a fixed order; parses back to the same config.
ordered_json to_json(const SimConfig& c);
/// FNV-1a of the canonical JSON dump.
std::string config_hash(const SimConfig& c);

}  // namespace twinmarket::sim
