#pragma once

#include <filesystem>
#include <map>
#include <string>
#include <vector>

#include "twinmarket/common/ids.hpp"
#include "twinmarket/common/json.hpp"

namespace twinmarket::feed {

struct NewsItem {
    std::string item_id;
    Day day = 0;
    std::string content;
    bool is_rumor = false;
    std::string category;
    /// Signed tone in [-1, 1]; negative is bearish.
    double tone = 0.0;

    friend bool operator==(const NewsItem&, const NewsItem&) = default;
};

/// Scenario file contents: dated items plus factual_id -> rumor_id pairs.
struct NewsScenario {
    std::vector<NewsItem> items;
    std::map<std::string, std::string> rumor_pairs;

    /// Throws InvalidSpec on duplicate ids or pairs naming missing items.
    void validate() const;
    /// Factual items scheduled for `day`, in file order.
    [[nodiscard]] std::vector<NewsItem> factual_for_day(Day day) const;
    /// rumor counterpart keyed by factual id
    [[nodiscard]] std::map<std::string, NewsItem> counterparts() const;
};

NewsScenario load_news_scenario(const std::filesystem::path& path);
NewsScenario news_scenario_from_json(const json& j);

/// The m most central users (ties by lower id) each receive `news`. With
/// rumor_mode, any item that has a counterpart is swapped for it.
/// Throws InvalidSpec when m exceeds the number of users.
std::map<AgentId, std::vector<NewsItem>> inject_news(const std::vector<NewsItem>& news,
                                                     const std::map<std::string, NewsItem>& counterparts,
                                                     const std::map<AgentId, double>& centrality, std::size_t m,
                                                     bool rumor_mode);

/// The selection rule on its own.
std::vector<AgentId> top_central(const std::map<AgentId, double>& centrality, std::size_t m);

ordered_json to_json(const NewsItem& n);

}  // namespace twinmarket::feed
