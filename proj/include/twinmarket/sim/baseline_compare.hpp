#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "twinmarket/baselines/brock_hommes.hpp"
#include "twinmarket/baselines/hpm.hpp"
#include "twinmarket/common/json.hpp"

namespace twinmarket::sim {

struct ReferenceMetrics {
    std::optional<double> kurtosis;
    std::optional<double> leverage;
    std::optional<double> volume_corr;
    std::optional<double> volume_p;
    std::optional<double> garch_persistence;
};

struct BaselineCompareConfig {
    std::vector<std::uint64_t> seeds{1, 2, 3, 4, 5, 6, 7, 8, 9, 10};
    baselines::HPMParams hpm;
    baselines::BHParams bh;
    std::string engine_run;        // run directory whose events.jsonl supplies the engine row
    std::string reference_series;  // CSV with close (and vol) columns
    std::optional<ReferenceMetrics> reference_metrics;  // echoed verbatim when given
};

/// Unknown keys are rejected with ConfigError.
BaselineCompareConfig baseline_config_from_json(const json& j);
BaselineCompareConfig load_baseline_config(const std::filesystem::path& path);

/// One system's stylized facts; multi-seed systems report per-measure medians.
struct SFRow {
    std::string system;
    std::size_t runs = 0;
    std::size_t converged = 0;  // GARCH fits that converged
    ReferenceMetrics metrics;
};

/// Median over the values present; std::nullopt when none are.
std::optional<double> median(std::vector<double> xs);

SFRow baseline_row(const std::string& name, const std::vector<std::vector<double>>& price_runs);
std::vector<SFRow> compare_baselines(const BaselineCompareConfig& cfg);
/// Tab-separated table with a header row.
std::string render_table(const std::vector<SFRow>& rows);

}  // namespace twinmarket::sim
