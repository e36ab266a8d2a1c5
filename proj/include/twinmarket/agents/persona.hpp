#pragma once

#include <span>
#include <string>
#include <vector>

#include "twinmarket/common/ids.hpp"
#include "twinmarket/common/json.hpp"
#include "twinmarket/common/rng.hpp"

namespace twinmarket::agents {

enum class Level { low, medium, high };
enum class Strategy { fundamental, technical };
enum class CapitalTier { normal, large };

const char* to_string(Level l);
const char* to_string(Strategy s);
const char* to_string(CapitalTier t);
Level level_from_string(const std::string& s);
Strategy strategy_from_string(const std::string& s);
CapitalTier tier_from_string(const std::string& s);

/// Cut points on a raw bias score in [0, 1]: below `low_max` is low, above
/// `high_min` is high.
struct LevelCuts {
    double low_max = 1.0 / 3.0;
    double high_min = 2.0 / 3.0;
};

Level level_from_score(double score, const LevelCuts& cuts = {});

struct Demographics {
    std::string gender;
    std::string region;
    std::int64_t followers = 0;
};

struct BiasLevels {
    Level disposition = Level::medium;
    Level lottery = Level::medium;
    Level underdiversification = Level::medium;
    Level turnover = Level::medium;
};

struct Persona {
    AgentId agent_id;
    Demographics demographics;
    BiasLevels bias;
    Strategy strategy = Strategy::technical;
    CapitalTier capital_tier = CapitalTier::normal;
    std::vector<AssetId> followed_industries;
    std::string system_prompt;
    /// Optional rule override ("contrarian"); empty selects the strategy's default rule.
    std::string policy;
};

/// Top 40% of `rationality_rank` (most rational first) become fundamental,
/// the rest technical; the top 10% get the large capital tier. Counts are
/// rounded to nearest. Throws InvalidSpec unless the rank is a permutation of
/// the personas' ids.
void assign_strategies_and_capital(std::vector<Persona>& personas, std::span<const AgentId> rationality_rank);

/// Persona description text built from demographics, strategy and bias levels.
std::string describe(const Persona& p);

struct PersonaGenConfig {
    std::size_t count = 100;
    LevelCuts cuts;
    std::size_t min_followed = 1;
    std::size_t max_followed = 3;
};

/// Seeded personas with random demographics and bias scores. The rationality
/// ordering used for the strategy split ranks agents by how few high-bias
/// traits they carry, ties broken by a seeded shuffle; it is returned through
/// `rank_out` when non-null.
std::vector<Persona> generate_personas(const PersonaGenConfig& cfg, const std::vector<AssetId>& industries,
                                       const SeedTree& seeds, std::vector<AgentId>* rank_out = nullptr);

ordered_json to_json(const Persona& p);
Persona persona_from_json(const json& j);

}  // namespace twinmarket::agents
