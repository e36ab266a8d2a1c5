#pragma once

#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "twinmarket/analytics/performance.hpp"
#include "twinmarket/common/json.hpp"
#include "twinmarket/exchange/order.hpp"
#include "twinmarket/sim/event_log.hpp"

namespace twinmarket::sim {

/// Everything the report tables are computed from. A live run fills this
/// from its state; replay rebuilds it from the event log alone.
struct ReportInputs {
    std::vector<AssetId> assets;
    /// Per asset, the pre-run close followed by one close per trading day.
    std::map<AssetId, std::vector<double>> closes;
    std::map<AssetId, std::vector<double>> volumes;
    std::vector<Day> trading_days;
    /// Total assets per agent, starting with the pre-run value at day -1, then one entry per trading day.
    std::map<AgentId, std::vector<std::pair<Day, double>>> wealth;
    std::vector<exchange::Trade> trades;
    /// Side of every submitted order, by day.
    std::vector<std::pair<Day, Side>> decisions;
    /// Sentiment of every agent at the end of each simulated day.
    std::map<Day, std::vector<double>> sentiment;
    std::map<AgentId, std::string> policy_of;
    /// First day of the scheduled rumor window (also set for control runs); -1 when outside the run.
    Day focus_day = -1;
    std::vector<double> reference;  // optional reference closes, one per trading day plus the start

    friend bool operator==(const ReportInputs&, const ReportInputs&) = default;
};

/// Report tables derived from the inputs.
struct ReportFiles {
    std::string stylized_facts;  // stylized_facts.tsv
    std::string inequality;      // inequality.csv
    std::string turnover;        // turnover.csv
    std::string sentiment;       // sentiment.csv
    std::string decisions;       // decisions.csv
    ordered_json summary;        // summary.json

    friend bool operator==(const ReportFiles&, const ReportFiles&) = default;
};

/// Equal-weight composite of the asset closes, rebased to 100 at the start.
std::vector<double> composite_closes(const ReportInputs& in);
std::vector<double> composite_volumes(const ReportInputs& in);
/// (day, gini) for every day in the wealth series.
std::vector<std::pair<Day, double>> gini_series(const ReportInputs& in);
/// Least-squares slope of y against 0, 1, 2, ...; 0 with fewer than two points.
double ls_slope(const std::vector<double>& y);
/// sells / buys over decisions on or after `from`; std::nullopt without buys.
std::optional<double> sell_buy_ratio_from(const ReportInputs& in, Day from);
/// Mean sentiment by day.
std::map<Day, double> mean_sentiment(const ReportInputs& in);

ReportFiles compute_reports(const ReportInputs& in);
void write_reports(const ReportFiles& r, const std::filesystem::path& dir);
/// Reads the files written by write_reports back in.
ReportFiles read_reports(const std::filesystem::path& dir);

/// Rebuilds the inputs from an event log: portfolios from their initial
/// state plus settled trades, prices from bars, beliefs from belief events.
/// Throws SchemaViolation on a log that lacks the required records.
ReportInputs inputs_from_log(const EventLog& log);

/// Reads a CSV with a `close` column (and optional `vol`).
std::pair<std::vector<double>, std::vector<double>> read_price_series(const std::filesystem::path& path);

/// %.10g, or NA for an empty value.
std::string fmt_num(std::optional<double> x);

}  // namespace twinmarket::sim
