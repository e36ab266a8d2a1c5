#pragma once

#include <filesystem>
#include <map>
#include <string>
#include <vector>

namespace twinmarket {

/// Minimal reader for comma-separated text with a header row.
/// Blank lines and lines starting with '#' are skipped; no quoting.
struct CsvTable {
    std::vector<std::string> header;
    std::vector<std::vector<std::string>> rows;

    [[nodiscard]] std::size_t column(const std::string& name) const;
    [[nodiscard]] bool has_column(const std::string& name) const;
};

CsvTable read_csv(const std::filesystem::path& path);
CsvTable parse_csv(const std::string& text);

std::vector<std::string> split(const std::string& s, char delim);
std::string trim(const std::string& s);

double parse_double(const std::string& s, const std::string& context);
long long parse_int(const std::string& s, const std::string& context);

}  // namespace twinmarket
