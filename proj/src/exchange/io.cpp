#include "twinmarket/exchange/io.hpp"

#include <algorithm>
#include <iterator>

#include "twinmarket/common/csv.hpp"
#include "twinmarket/common/errors.hpp"

namespace twinmarket::exchange {

namespace {

Universe from_table(const CsvTable& t) {
    for (const char* col : {"index_id", "stock_id", "weight", "base_price", "bvps0", "sps0"}) {
        if (!t.has_column(col)) throw MissingData(std::string("constituent table lacks column ") + col);
    }
    auto get = [&](const std::vector<std::string>& row, const char* col, const std::string& dflt) {
        if (!t.has_column(col)) return dflt;
        const std::size_t i = t.column(col);
        return i < row.size() && !row[i].empty() ? row[i] : dflt;
    };

    Universe u;
    for (const auto& row : t.rows) {
        const std::string idx = get(row, "index_id", "");
        const std::string stock = get(row, "stock_id", "");
        auto it = std::find_if(u.indices.begin(), u.indices.end(),
                               [&](const IndexSpec& s) { return s.index_id == idx; });
        if (it == u.indices.end()) {
            IndexSpec spec;
            spec.index_id = idx;
            spec.base_value = parse_double(get(row, "index_base", "100"), "index_base");
            u.indices.push_back(spec);
            it = std::prev(u.indices.end());
        }
        it->constituents.push_back({stock, parse_double(get(row, "weight", ""), "weight"),
                                    parse_double(get(row, "base_price", ""), "base_price")});
        FundamentalBase f;
        f.stock_id = stock;
        f.eps0 = parse_double(get(row, "eps0", "0"), "eps0");
        f.bvps0 = parse_double(get(row, "bvps0", ""), "bvps0");
        f.sps0 = parse_double(get(row, "sps0", ""), "sps0");
        f.dps0 = parse_double(get(row, "dps0", "0"), "dps0");
        u.fundamentals[stock] = f;
    }
    u.validate();
    return u;
}

}  // namespace

Universe load_universe(const std::filesystem::path& path) { return from_table(read_csv(path)); }

Universe parse_universe(const std::string& csv_text) { return from_table(parse_csv(csv_text)); }

Side side_from_string(const std::string& s) {
    if (s == "buy") return Side::buy;
    if (s == "sell") return Side::sell;
    throw SchemaViolation("side must be buy or sell, got " + s);
}

ordered_json to_json(const Trade& t) {
    ordered_json j;
    j["day"] = t.day;
    j["asset"] = t.asset_id;
    j["buyer"] = t.buyer_id.value;
    j["seller"] = t.seller_id.value;
    j["price_ticks"] = t.price.ticks();
    j["qty"] = t.quantity;
    return j;
}

ordered_json to_json(const Order& o) {
    ordered_json j;
    j["seq"] = o.seq;
    j["agent"] = o.agent_id.value;
    j["asset"] = o.asset_id;
    j["side"] = to_string(o.side);
    j["limit_ticks"] = o.limit_price.ticks();
    j["qty"] = o.quantity;
    return j;
}

ordered_json to_json(const DailyBar& b) {
    ordered_json j;
    j["day"] = b.day;
    j["asset"] = b.asset_id;
    j["close"] = b.close;
    j["pre_close"] = b.pre_close;
    j["change"] = b.change;
    j["pct_chg"] = b.pct_chg;
    j["vol"] = b.vol;
    j["amount"] = b.amount;
    j["vol_5"] = b.vol_5;
    j["vol_10"] = b.vol_10;
    j["vol_30"] = b.vol_30;
    j["ma_5"] = b.ma_5;
    j["ma_10"] = b.ma_10;
    j["ma_30"] = b.ma_30;
    return j;
}

Trade trade_from_json(const json& j) {
    Trade t;
    t.day = j.at("day").get<Day>();
    t.asset_id = j.at("asset").get<std::string>();
    t.buyer_id = AgentId(j.at("buyer").get<std::uint32_t>());
    t.seller_id = AgentId(j.at("seller").get<std::uint32_t>());
    t.price = Money::from_ticks(j.at("price_ticks").get<std::int64_t>());
    t.quantity = j.at("qty").get<std::int64_t>();
    return t;
}

Order order_from_json(const json& j) {
    Order o;
    o.seq = j.at("seq").get<std::uint64_t>();
    o.agent_id = AgentId(j.at("agent").get<std::uint32_t>());
    o.asset_id = j.at("asset").get<std::string>();
    o.side = side_from_string(j.at("side").get<std::string>());
    o.limit_price = Money::from_ticks(j.at("limit_ticks").get<std::int64_t>());
    o.quantity = j.at("qty").get<std::int64_t>();
    return o;
}

DailyBar bar_from_json(const json& j) {
    DailyBar b;
    b.day = j.at("day").get<Day>();
    b.asset_id = j.at("asset").get<std::string>();
    b.close = j.at("close").get<double>();
    b.pre_close = j.at("pre_close").get<double>();
    b.change = j.at("change").get<double>();
    b.pct_chg = j.at("pct_chg").get<double>();
    b.vol = j.at("vol").get<std::int64_t>();
    b.amount = j.value("amount", 0.0);
    b.vol_5 = j.at("vol_5").get<double>();
    b.vol_10 = j.at("vol_10").get<double>();
    b.vol_30 = j.at("vol_30").get<double>();
    b.ma_5 = j.at("ma_5").get<double>();
    b.ma_10 = j.at("ma_10").get<double>();
    b.ma_30 = j.at("ma_30").get<double>();
    return b;
}

}  // namespace twinmarket::exchange
