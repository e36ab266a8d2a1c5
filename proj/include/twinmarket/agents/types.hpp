#pragma once

#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "twinmarket/agents/belief.hpp"
#include "twinmarket/exchange/daily_bar.hpp"
#include "twinmarket/exchange/index.hpp"
#include "twinmarket/exchange/order.hpp"
#include "twinmarket/feed/news.hpp"
#include "twinmarket/feed/post.hpp"

namespace twinmarket::agents {

/// What an agent may see about one index: bars up to yesterday, oldest first.
struct AssetView {
    AssetId asset;
    std::vector<exchange::DailyBar> bars;
    exchange::Valuation valuation;  // at the last close
    std::vector<double> pb_history; // trailing, oldest first, last close included

    [[nodiscard]] const exchange::DailyBar& last() const { return bars.back(); }
    [[nodiscard]] double prev_close() const { return bars.back().close; }
};

using MarketView = std::map<AssetId, AssetView>;

struct FeedEntry {
    PostId post_id;
    AgentId author;
    feed::PostType post_type = feed::PostType::type1;
    std::string content;
    std::string root_content;
    double stance = 0.0;
    std::int64_t upvotes = 0;
    std::int64_t downvotes = 0;
};

struct PortfolioView {
    Money cash;
    std::map<AssetId, std::int64_t> holdings;
    std::map<AssetId, double> cost_basis;
    double total_value = 0.0;    // at yesterday's closes
    double initial_value = 0.0;

    [[nodiscard]] std::int64_t units(const AssetId& a) const {
        auto it = holdings.find(a);
        return it == holdings.end() ? 0 : it->second;
    }
    [[nodiscard]] double return_rate() const {
        return initial_value > 0.0 ? total_value / initial_value - 1.0 : 0.0;
    }
};

/// Day-start snapshot. Holds only information available before today's auction.
struct Observation {
    Day day = 0;
    std::string date;  // calendar label, YYYY-MM-DD
    bool trading_day = true;
    std::vector<feed::NewsItem> news;
    std::vector<FeedEntry> feed;
    std::shared_ptr<const MarketView> market;
    PortfolioView portfolio;
    std::vector<AssetId> recommendations;

    [[nodiscard]] const AssetView* asset(const AssetId& a) const {
        if (!market) return nullptr;
        auto it = market->find(a);
        return it == market->end() ? nullptr : &it->second;
    }
};

struct DesireQuery {
    std::vector<std::string> queries;
    std::vector<AssetId> stock_ids;
};

enum class Action { buy, sell, hold };

const char* to_string(Action a);
Action action_from_string(const std::string& s);

struct AssetIntention {
    AssetId asset;
    Action action = Action::hold;
    double trading_position = 0.0;  // percent of total assets, >= 0
    std::optional<Money> target_price;
};

struct TradeIntention {
    std::vector<AssetIntention> items;

    [[nodiscard]] bool all_hold() const;
};

struct PostDraft {
    std::string content;
    feed::PostType post_type = feed::PostType::type1;
    double stance = 0.0;
};

struct SocialOutput {
    std::vector<feed::SocialAction> actions;
    std::optional<PostDraft> post;
};

/// Environment response delivered after the auction.
struct Feedback {
    Day day = 0;
    bool trading_day = true;
    std::vector<exchange::Trade> trades;       // own executions
    std::size_t rejected_orders = 0;
    std::map<AssetId, double> pct_change;      // today's close vs previous close
    PortfolioView portfolio;                   // after settlement, at today's closes
    double prior_total_value = 0.0;
    std::vector<feed::NewsItem> news;          // as delivered this morning
    std::vector<FeedEntry> feed;               // as shown this morning
};

}  // namespace twinmarket::agents
