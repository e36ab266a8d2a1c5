#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "twinmarket/common/ids.hpp"

namespace twinmarket::exchange {

struct Constituent {
    std::string stock_id;
    double weight = 0.0;      // fixed at t=0
    double base_price = 0.0;  // P_j0
};

/// Aggregated industry index with capitalization weights frozen at t=0.
struct IndexSpec {
    AssetId index_id;
    std::vector<Constituent> constituents;
    double base_value = 100.0;

    /// Throws InvalidSpec unless weights sum to 1 (1e-9) and base prices are positive.
    void validate() const;
};

/// I_t = I_0 * sum_j w_j * P_jt / P_j0. Throws MissingConstituent.
double compute_index(const IndexSpec& spec, const std::map<std::string, double>& prices);

/// Constituent prices implied by an index level when every member moves with
/// its index: P_jt = P_j0 * I_t / I_0.
std::map<std::string, double> implied_prices(const IndexSpec& spec, double index_value);

/// Static per-share fundamentals observed before the simulation starts.
struct FundamentalBase {
    std::string stock_id;
    double eps0 = 0.0;
    double bvps0 = 1.0;
    double sps0 = 1.0;
    double dps0 = 0.0;

    void validate() const;
};

struct Valuation {
    std::optional<double> pe;  // absent when earnings are non-positive
    double pb = 0.0;
    double ps = 0.0;
    double dv = 0.0;
};

/// Ratios re-anchored to the simulated price.
Valuation adjust_fundamentals(const FundamentalBase& base, double sim_price);

/// Index-level valuation: constituent ratios averaged with the index weights.
/// P/E averages only over members with positive earnings (weights renormalized).
Valuation index_valuation(const IndexSpec& spec, const std::map<std::string, FundamentalBase>& fundamentals,
                          double index_value);

/// The tradable universe: industry indices plus constituent fundamentals.
struct Universe {
    std::vector<IndexSpec> indices;
    std::map<std::string, FundamentalBase> fundamentals;

    [[nodiscard]] const IndexSpec& index(const AssetId& id) const;
    [[nodiscard]] std::vector<AssetId> asset_ids() const;
    void validate() const;
};

/// The ten industry codes in canonical order.
const std::vector<AssetId>& industry_codes();

/// Deterministic synthetic universe with the ten industry indices and the
/// member counts of the blue-chip reference index (50 stocks in total).
Universe default_universe(std::uint64_t seed, double base_value = 100.0);

}  // namespace twinmarket::exchange
