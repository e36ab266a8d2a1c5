#include "twinmarket/agents/persona.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <set>

#include "twinmarket/common/errors.hpp"

namespace twinmarket::agents {

const char* to_string(Level l) {
    switch (l) {
        case Level::low: return "low";
        case Level::medium: return "medium";
        case Level::high: return "high";
    }
    return "medium";
}

const char* to_string(Strategy s) { return s == Strategy::fundamental ? "fundamental" : "technical"; }

const char* to_string(CapitalTier t) { return t == CapitalTier::large ? "large" : "normal"; }

Level level_from_string(const std::string& s) {
    if (s == "low") return Level::low;
    if (s == "medium") return Level::medium;
    if (s == "high") return Level::high;
    throw SchemaViolation("bias level must be low|medium|high, got " + s);
}

Strategy strategy_from_string(const std::string& s) {
    if (s == "fundamental") return Strategy::fundamental;
    if (s == "technical") return Strategy::technical;
    throw SchemaViolation("strategy must be fundamental|technical, got " + s);
}

CapitalTier tier_from_string(const std::string& s) {
    if (s == "normal") return CapitalTier::normal;
    if (s == "large") return CapitalTier::large;
    throw SchemaViolation("capital tier must be normal|large, got " + s);
}

Level level_from_score(double score, const LevelCuts& cuts) {
    if (score < cuts.low_max) return Level::low;
    if (score > cuts.high_min) return Level::high;
    return Level::medium;
}

void assign_strategies_and_capital(std::vector<Persona>& personas, std::span<const AgentId> rationality_rank) {
    const std::size_t n = personas.size();
    std::set<AgentId> ids;
    for (const auto& p : personas) ids.insert(p.agent_id);
    std::set<AgentId> ranked(rationality_rank.begin(), rationality_rank.end());
    if (rationality_rank.size() != n || ranked != ids) {
        throw InvalidSpec("rationality rank is not a permutation of the agents");
    }
    const auto n_fund = static_cast<std::size_t>(std::lround(0.4 * static_cast<double>(n)));
    const auto n_large = static_cast<std::size_t>(std::lround(0.1 * static_cast<double>(n)));
    std::map<AgentId, std::size_t> pos;
    for (std::size_t i = 0; i < n; ++i) pos[rationality_rank[i]] = i;
    for (auto& p : personas) {
        const std::size_t r = pos.at(p.agent_id);
        p.strategy = r < n_fund ? Strategy::fundamental : Strategy::technical;
        p.capital_tier = r < n_large ? CapitalTier::large : CapitalTier::normal;
    }
}

namespace {

const char* disposition_text(Level l) {
    switch (l) {
        case Level::high: return "You take profits fast once a position is up more than 10% and tend to sit on losers.";
        case Level::medium: return "You sometimes lock in gains early and are slow to cut losses.";
        case Level::low: return "You judge winners and losers on their prospects, not on your entry price.";
    }
    return "";
}

const char* lottery_text(Level l) {
    switch (l) {
        case Level::high: return "Long-shot, high-payoff bets appeal to you.";
        case Level::medium: return "Speculative assets catch your eye now and then.";
        case Level::low: return "You have little interest in speculative long shots.";
    }
    return "";
}

const char* diversification_text(Level l) {
    switch (l) {
        case Level::high: return "You concentrate heavily in a few familiar industries.";
        case Level::medium: return "You hold a handful of industries you know well.";
        case Level::low: return "You spread your money across many industries.";
    }
    return "";
}

const char* turnover_text(Level l) {
    switch (l) {
        case Level::high: return "You trade very often.";
        case Level::medium: return "You adjust positions at a moderate pace.";
        case Level::low: return "You rarely trade.";
    }
    return "";
}

}  // namespace

std::string describe(const Persona& p) {
    std::string s = "You are a " + p.demographics.gender + " investor from " + p.demographics.region + " with " +
                    std::to_string(p.demographics.followers) + " followers. ";
    s += "You follow a " + std::string(to_string(p.strategy)) + " approach. ";
    s += disposition_text(p.bias.disposition);
    s += ' ';
    s += lottery_text(p.bias.lottery);
    s += ' ';
    s += diversification_text(p.bias.underdiversification);
    s += ' ';
    s += turnover_text(p.bias.turnover);
    return s;
}

std::vector<Persona> generate_personas(const PersonaGenConfig& cfg, const std::vector<AssetId>& industries,
                                       const SeedTree& seeds, std::vector<AgentId>* rank_out) {
    static const char* kRegions[] = {"Beijing", "Shanghai", "Guangdong", "Zhejiang", "Jiangsu",
                                     "Sichuan", "Hubei",    "Shandong",  "Fujian",   "Henan"};
    if (industries.empty()) throw InvalidSpec("no industries to follow");
    const std::size_t lo = std::max<std::size_t>(1, cfg.min_followed);
    const std::size_t hi = std::min(std::max(lo, cfg.max_followed), industries.size());

    std::vector<Persona> out;
    std::vector<std::pair<int, double>> rank_key;  // (high-bias count, tiebreak)
    for (std::size_t i = 0; i < cfg.count; ++i) {
        Rng rng = seeds.stream("persona", i);
        Persona p;
        p.agent_id = AgentId(static_cast<std::uint32_t>(i));
        p.demographics.gender = uniform01(rng) < 0.5 ? "male" : "female";
        p.demographics.region = kRegions[static_cast<std::size_t>(uniform01(rng) * 10.0) % 10];
        // heavy-tailed follower counts
        p.demographics.followers = static_cast<std::int64_t>(std::floor(std::exp(uniform01(rng) * 9.0)));
        p.bias.disposition = level_from_score(uniform01(rng), cfg.cuts);
        p.bias.lottery = level_from_score(uniform01(rng), cfg.cuts);
        p.bias.underdiversification = level_from_score(uniform01(rng), cfg.cuts);
        p.bias.turnover = level_from_score(uniform01(rng), cfg.cuts);
        const std::size_t k = lo + static_cast<std::size_t>(uniform01(rng) * static_cast<double>(hi - lo + 1));
        for (std::size_t idx : sample_without_replacement(industries.size(), std::min(k, hi), rng)) {
            p.followed_industries.push_back(industries[idx]);
        }
        int highs = 0;
        for (Level l : {p.bias.disposition, p.bias.lottery, p.bias.underdiversification, p.bias.turnover}) {
            highs += l == Level::high ? 1 : 0;
        }
        rank_key.emplace_back(highs, uniform01(rng));
        out.push_back(std::move(p));
    }

    std::vector<std::size_t> order(out.size());
    for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return rank_key[a] < rank_key[b]; });
    std::vector<AgentId> rank;
    for (std::size_t i : order) rank.push_back(out[i].agent_id);
    assign_strategies_and_capital(out, rank);
    for (auto& p : out) p.system_prompt = describe(p);
    if (rank_out) *rank_out = rank;
    return out;
}

ordered_json to_json(const Persona& p) {
    ordered_json j;
    j["agent_id"] = p.agent_id.value;
    j["gender"] = p.demographics.gender;
    j["region"] = p.demographics.region;
    j["followers"] = p.demographics.followers;
    j["disposition"] = to_string(p.bias.disposition);
    j["lottery"] = to_string(p.bias.lottery);
    j["underdiversification"] = to_string(p.bias.underdiversification);
    j["turnover"] = to_string(p.bias.turnover);
    j["strategy"] = to_string(p.strategy);
    j["capital_tier"] = to_string(p.capital_tier);
    j["followed_industries"] = p.followed_industries;
    j["policy"] = p.policy;
    j["system_prompt"] = p.system_prompt;
    return j;
}

Persona persona_from_json(const json& j) {
    Persona p;
    p.agent_id = AgentId(j.at("agent_id").get<std::uint32_t>());
    p.demographics.gender = j.value("gender", std::string{});
    p.demographics.region = j.value("region", std::string{});
    p.demographics.followers = j.value("followers", std::int64_t{0});
    p.bias.disposition = level_from_string(j.value("disposition", std::string("medium")));
    p.bias.lottery = level_from_string(j.value("lottery", std::string("medium")));
    p.bias.underdiversification = level_from_string(j.value("underdiversification", std::string("medium")));
    p.bias.turnover = level_from_string(j.value("turnover", std::string("medium")));
    p.strategy = strategy_from_string(j.at("strategy").get<std::string>());
    p.capital_tier = tier_from_string(j.value("capital_tier", std::string("normal")));
    p.followed_industries = j.value("followed_industries", std::vector<std::string>{});
    p.policy = j.value("policy", std::string{});
    p.system_prompt = j.value("system_prompt", std::string{});
    if (p.system_prompt.empty()) p.system_prompt = describe(p);
    return p;
}

}  // namespace twinmarket::agents
