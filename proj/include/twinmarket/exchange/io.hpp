#pragma once

#include <filesystem>

#include "twinmarket/common/json.hpp"
#include "twinmarket/exchange/daily_bar.hpp"
#include "twinmarket/exchange/index.hpp"
#include "twinmarket/exchange/order.hpp"

namespace twinmarket::exchange {

/// Reads a constituent table with columns
/// index_id, index_base, stock_id, weight, base_price, eps0, bvps0, sps0, dps0.
/// Rows are grouped by index_id in first-seen order.
Universe load_universe(const std::filesystem::path& path);
Universe parse_universe(const std::string& csv_text);

ordered_json to_json(const Trade& t);
ordered_json to_json(const Order& o);
ordered_json to_json(const DailyBar& b);

Trade trade_from_json(const json& j);
Order order_from_json(const json& j);
DailyBar bar_from_json(const json& j);

Side side_from_string(const std::string& s);

}  // namespace twinmarket::exchange
