#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "twinmarket/sim/config.hpp"
#include "twinmarket/sim/reports.hpp"
#include "twinmarket/sim/world.hpp"

namespace twinmarket::sim {

/// Files every run directory contains.
const std::vector<std::string>& declared_outputs();

struct RunOutcome {
    std::filesystem::path dir;
    ReportInputs inputs;
    ReportFiles reports;
    std::size_t events = 0;
    std::vector<DayStats> days;
};

/// Runs the whole calendar and writes logs, graph tables, reports and the
/// manifest into `out_dir` (created if needed).
RunOutcome run_simulation(const SimConfig& cfg, const std::filesystem::path& out_dir);

/// Writes the outputs of an already-run world.
RunOutcome write_run(const World& world, const SimConfig& cfg, const std::filesystem::path& out_dir);

struct ReplayResult {
    ReportFiles reports;
    std::vector<std::string> mismatched;  // report files that differ from the run's
    [[nodiscard]] bool matches() const { return mismatched.empty(); }
};

/// Recomputes the reports of `run_dir` from its events.jsonl alone, writes
/// them to `out_dir` when it is non-empty, and compares with the originals.
ReplayResult replay(const std::filesystem::path& run_dir, const std::filesystem::path& out_dir = {});

/// Reports from an event log, written to `out_dir`.
ReportFiles analyze_log(const std::filesystem::path& events, const std::filesystem::path& out_dir);

/// Personas (personas.jsonl) and their synthetic warm-up transactions
/// (transactions.csv) for the config's population.
void generate_profiles(const SimConfig& cfg, const std::filesystem::path& out_dir);

}  // namespace twinmarket::sim
