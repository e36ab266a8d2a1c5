#pragma once

#include <map>
#include <memory>
#include <sstream>
#include <vector>

#include "twinmarket/agents/agent.hpp"
#include "twinmarket/agents/persona.hpp"
#include "twinmarket/exchange/market.hpp"
#include "twinmarket/feed/news.hpp"
#include "twinmarket/feed/post.hpp"
#include "twinmarket/sim/calendar.hpp"
#include "twinmarket/sim/config.hpp"
#include "twinmarket/sim/event_log.hpp"
#include "twinmarket/sim/reports.hpp"
#include "twinmarket/socialgraph/graph.hpp"

namespace twinmarket::sim {

/// Default scenario: one factual item per trading day, mildly positive, and
/// from `rumor_start` on a bearish rumor paired with each one.
feed::NewsScenario default_news(const std::vector<CalendarDay>& calendar, const std::vector<AssetId>& industries,
                                const NewsGenConfig& gen);

/// Initial holdings from an agent's synthetic history: `fraction` of capital
/// split across industries in proportion to net units bought (followed
/// industries equally when nothing was net bought), whole units at `prices`.
exchange::Portfolio initial_portfolio(AgentId id, double capital, double fraction,
                                      std::span<const socialgraph::TradeRecord> history,
                                      const std::vector<AssetId>& fallback, const std::map<AssetId, double>& prices);

/// Per-day counters exposed for tests.
struct DayStats {
    Day day = 0;
    bool trading = false;
    std::size_t active = 0;
    std::size_t agents_with_orders = 0;
    std::size_t orders = 0;
    std::size_t trades = 0;
    std::size_t posts = 0;
};

/// Full simulation state. Built from a config; advanced with run_day.
class World {
public:
    /// Uses an explicit population instead of the config's persona source.
    World(const SimConfig& cfg, std::vector<agents::Agent> population);
    explicit World(const SimConfig& cfg);

    const std::vector<CalendarDay>& calendar() const { return calendar_; }
    DayStats run_day(const CalendarDay& cd);
    void run_all();

    const EventLog& log() const { return log_; }
    const ReportInputs& report_inputs() const { return live_; }
    const exchange::PortfolioStore& portfolios() const { return store_; }
    const exchange::Market& market() const { return *market_; }
    const feed::PostStore& posts() const { return posts_; }
    const socialgraph::SocialGraph& graph() const { return graph_; }
    const std::vector<agents::Agent>& agents() const { return agents_; }
    const std::vector<DayStats>& day_stats() const { return stats_; }
    const feed::NewsScenario& news() const { return news_; }

    Money initial_cash() const { return initial_cash_; }
    const std::map<AssetId, std::int64_t>& initial_holdings() const { return initial_holdings_; }

    /// CSV bodies for the graph outputs, header included.
    std::string graph_edges_csv() const { return edges_.str(); }
    std::string graph_stats_csv() const { return graph_stats_.str(); }
    std::string intensities_csv() const { return intensities_.str(); }

private:
    void setup(std::vector<agents::Agent> population);
    std::vector<agents::Agent> build_population();
    void rebuild_graph(Day day, int now);
    agents::PortfolioView view_of(AgentId id, const std::map<AssetId, double>& prices) const;
    std::vector<agents::FeedEntry> feed_for(AgentId id, Day day) const;

    SimConfig cfg_;
    SeedTree seeds_;
    std::vector<CalendarDay> calendar_;
    std::unique_ptr<exchange::Market> market_;
    exchange::PortfolioStore store_;
    feed::PostStore posts_;
    socialgraph::SocialGraph graph_;
    std::vector<socialgraph::TradeRecord> records_;
    std::vector<AgentId> users_;
    std::vector<agents::Agent> agents_;
    std::map<AgentId, std::size_t> index_of_;
    std::map<AgentId, double> initial_value_;
    feed::NewsScenario news_;
    std::map<std::string, feed::NewsItem> counterparts_;
    EventLog log_;
    ReportInputs live_;
    std::vector<DayStats> stats_;
    Money initial_cash_;
    std::map<AssetId, std::int64_t> initial_holdings_;
    std::ostringstream edges_;
    std::ostringstream graph_stats_;
    std::ostringstream intensities_;
};

}  // namespace twinmarket::sim
