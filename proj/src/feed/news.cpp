#include "twinmarket/feed/news.hpp"

#include <algorithm>
#include <fstream>
#include <set>

#include "twinmarket/common/errors.hpp"

namespace twinmarket::feed {

void NewsScenario::validate() const {
    std::set<std::string> ids;
    for (const auto& n : items) {
        if (!ids.insert(n.item_id).second) throw InvalidSpec("duplicate news id " + n.item_id);
        if (n.tone < -1.0 || n.tone > 1.0) throw InvalidSpec("news tone outside [-1, 1]: " + n.item_id);
    }
    for (const auto& [f, r] : rumor_pairs) {
        if (!ids.count(f) || !ids.count(r)) throw InvalidSpec("rumor pair names a missing item: " + f);
    }
}

std::vector<NewsItem> NewsScenario::factual_for_day(Day day) const {
    std::vector<NewsItem> out;
    for (const auto& n : items) {
        if (n.day == day && !n.is_rumor) out.push_back(n);
    }
    return out;
}

std::map<std::string, NewsItem> NewsScenario::counterparts() const {
    std::map<std::string, const NewsItem*> by_id;
    for (const auto& n : items) by_id[n.item_id] = &n;
    std::map<std::string, NewsItem> out;
    for (const auto& [f, r] : rumor_pairs) {
        auto it = by_id.find(r);
        if (it != by_id.end()) out[f] = *it->second;
    }
    return out;
}

NewsScenario news_scenario_from_json(const json& j) {
    NewsScenario sc;
    for (const auto& e : j.at("items")) {
        NewsItem n;
        n.item_id = e.at("id").get<std::string>();
        n.day = e.at("day").get<Day>();
        n.content = e.value("content", std::string{});
        n.is_rumor = e.value("is_rumor", false);
        n.category = e.value("category", std::string{});
        n.tone = e.value("tone", 0.0);
        sc.items.push_back(std::move(n));
    }
    if (j.contains("pairs")) {
        for (const auto& [f, r] : j.at("pairs").items()) sc.rumor_pairs[f] = r.get<std::string>();
    }
    sc.validate();
    return sc;
}

NewsScenario load_news_scenario(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw MissingData("cannot open news scenario " + path.string());
    try {
        return news_scenario_from_json(json::parse(in));
    } catch (const json::exception& e) {
        throw ConfigError("news scenario " + path.string() + ": " + e.what());
    }
}

std::vector<AgentId> top_central(const std::map<AgentId, double>& centrality, std::size_t m) {
    if (m > centrality.size()) throw InvalidSpec("injection count exceeds user count");
    std::vector<std::pair<AgentId, double>> v(centrality.begin(), centrality.end());
    std::stable_sort(v.begin(), v.end(), [](const auto& a, const auto& b) { return a.second > b.second; });
    std::vector<AgentId> out;
    out.reserve(m);
    for (std::size_t i = 0; i < m; ++i) out.push_back(v[i].first);
    return out;
}

std::map<AgentId, std::vector<NewsItem>> inject_news(const std::vector<NewsItem>& news,
                                                     const std::map<std::string, NewsItem>& counterparts,
                                                     const std::map<AgentId, double>& centrality, std::size_t m,
                                                     bool rumor_mode) {
    const auto targets = top_central(centrality, m);
    std::vector<NewsItem> delivered;
    for (const auto& n : news) {
        auto it = counterparts.find(n.item_id);
        delivered.push_back(rumor_mode && it != counterparts.end() ? it->second : n);
    }
    std::map<AgentId, std::vector<NewsItem>> out;
    if (delivered.empty()) return out;
    for (AgentId u : targets) out[u] = delivered;
    return out;
}

ordered_json to_json(const NewsItem& n) {
    ordered_json j;
    j["id"] = n.item_id;
    j["day"] = n.day;
    j["is_rumor"] = n.is_rumor;
    j["category"] = n.category;
    j["tone"] = n.tone;
    j["content"] = n.content;
    return j;
}

}  // namespace twinmarket::feed
