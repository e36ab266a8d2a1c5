#include "twinmarket/sim/reports.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <set>
#include <sstream>

#include "twinmarket/agents/belief.hpp"
#include "twinmarket/analytics/inequality.hpp"
#include "twinmarket/common/csv.hpp"
#include "twinmarket/common/errors.hpp"
#include "twinmarket/exchange/io.hpp"
#include "twinmarket/exchange/portfolio.hpp"

namespace twinmarket::sim {

std::string fmt_num(std::optional<double> x) {
    if (!x || !std::isfinite(*x)) return "NA";
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.10g", *x);
    return buf;
}

namespace {

ordered_json num_or_null(std::optional<double> x) {
    if (!x || !std::isfinite(*x)) return nullptr;
    return *x;
}

std::string slurp(const std::filesystem::path& p) {
    std::ifstream in(p, std::ios::binary);
    if (!in) throw MissingData("cannot open " + p.string());
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void spit(const std::filesystem::path& p, const std::string& text) {
    std::ofstream out(p, std::ios::binary);
    if (!out) throw MissingData("cannot write " + p.string());
    out << text;
}

std::string facts_row(const std::string& name, const analytics::StylizedFactsReport& f) {
    std::ostringstream os;
    os << name << '\t' << f.n_returns << '\t' << fmt_num(f.kurtosis) << '\t' << fmt_num(f.leverage) << '\t'
       << fmt_num(f.volume_corr) << '\t' << fmt_num(f.volume_p);
    if (f.garch) {
        os << '\t' << fmt_num(f.garch->omega) << '\t' << fmt_num(f.garch->alpha) << '\t' << fmt_num(f.garch->beta)
           << '\t' << fmt_num(f.garch->persistence()) << '\t' << (f.garch->converged ? 1 : 0);
    } else {
        os << "\tNA\tNA\tNA\tNA\t0";
    }
    os << '\n';
    return os.str();
}

}  // namespace

std::vector<double> composite_closes(const ReportInputs& in) {
    std::vector<double> out;
    for (const auto& a : in.assets) {
        const auto& c = in.closes.at(a);
        if (out.empty()) out.assign(c.size(), 0.0);
        if (c.size() != out.size()) throw SchemaViolation("close series differ in length");
        for (std::size_t t = 0; t < c.size(); ++t) out[t] += 100.0 * c[t] / c.front();
    }
    for (double& x : out) x /= static_cast<double>(in.assets.size());
    return out;
}

std::vector<double> composite_volumes(const ReportInputs& in) {
    std::vector<double> out;
    for (const auto& a : in.assets) {
        const auto& v = in.volumes.at(a);
        if (out.empty()) out.assign(v.size(), 0.0);
        for (std::size_t t = 0; t < v.size() && t < out.size(); ++t) out[t] += v[t];
    }
    return out;
}

std::vector<std::pair<Day, double>> gini_series(const ReportInputs& in) {
    std::map<Day, std::vector<double>> by_day;
    for (const auto& [_, series] : in.wealth) {
        for (const auto& [d, w] : series) by_day[d].push_back(w);
    }
    std::vector<std::pair<Day, double>> out;
    for (const auto& [d, ws] : by_day) out.emplace_back(d, analytics::gini(ws));
    return out;
}

double ls_slope(const std::vector<double>& y) {
    const std::size_t n = y.size();
    if (n < 2) return 0.0;
    const double xbar = (static_cast<double>(n) - 1.0) / 2.0;
    double ybar = 0.0;
    for (double v : y) ybar += v;
    ybar /= static_cast<double>(n);
    double sxy = 0.0, sxx = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double dx = static_cast<double>(i) - xbar;
        sxy += dx * (y[i] - ybar);
        sxx += dx * dx;
    }
    return sxy / sxx;
}

std::optional<double> sell_buy_ratio_from(const ReportInputs& in, Day from) {
    std::vector<Side> sides;
    for (const auto& [d, s] : in.decisions) {
        if (d >= from) sides.push_back(s);
    }
    try {
        return analytics::sell_buy_ratio(sides);
    } catch (const NoBuys&) {
        return std::nullopt;
    }
}

std::map<Day, double> mean_sentiment(const ReportInputs& in) {
    std::map<Day, double> out;
    for (const auto& [d, xs] : in.sentiment) {
        double s = 0.0;
        for (double x : xs) s += x;
        out[d] = xs.empty() ? 0.0 : s / static_cast<double>(xs.size());
    }
    return out;
}

ReportFiles compute_reports(const ReportInputs& in) {
    ReportFiles r;

    // stylized facts
    {
        std::ostringstream os;
        os << "series\tn_returns\tkurtosis\tleverage\tvolume_corr\tvolume_p\tgarch_omega\tgarch_alpha\tgarch_beta"
              "\tgarch_persistence\tgarch_converged\n";
        for (const auto& a : in.assets) {
            os << facts_row(a, analytics::stylized_facts(in.closes.at(a), in.volumes.at(a)));
        }
        if (!in.assets.empty()) {
            os << facts_row("composite", analytics::stylized_facts(composite_closes(in), composite_volumes(in)));
        }
        r.stylized_facts = os.str();
    }

    // inequality by day
    const auto gini = gini_series(in);
    {
        std::map<Day, std::map<AgentId, double>> by_day;
        for (const auto& [agent, series] : in.wealth) {
            for (const auto& [d, w] : series) by_day[d][agent] = w;
        }
        std::ostringstream os;
        os << "day,gini,top10_share,bottom50_share\n";
        for (const auto& [d, ws] : by_day) {
            const auto rep = analytics::inequality(ws);
            os << d << ',' << fmt_num(rep.gini) << ',' << fmt_num(rep.shares.top10) << ','
               << fmt_num(rep.shares.bottom50) << '\n';
        }
        r.inequality = os.str();
    }

    // turnover and return per agent
    const auto perf = analytics::turnover_and_return(in.trades, in.wealth);
    {
        std::ostringstream os;
        os << "rank,agent,policy,turnover_pct,return_pct\n";
        std::size_t rank = 0;
        for (const auto& a : perf.agents) {
            auto it = in.policy_of.find(a.agent_id);
            os << ++rank << ',' << a.agent_id << ',' << (it == in.policy_of.end() ? "" : it->second) << ','
               << fmt_num(a.turnover_pct) << ',' << fmt_num(a.return_pct) << '\n';
        }
        r.turnover = os.str();
    }

    // sentiment
    {
        std::ostringstream os;
        os << "day,mean,min,max,n\n";
        for (const auto& [d, xs] : in.sentiment) {
            double s = 0.0, lo = 1e300, hi = -1e300;
            for (double x : xs) {
                s += x;
                lo = std::min(lo, x);
                hi = std::max(hi, x);
            }
            const double m = xs.empty() ? 0.0 : s / static_cast<double>(xs.size());
            os << d << ',' << fmt_num(m) << ',' << fmt_num(xs.empty() ? 0.0 : lo) << ','
               << fmt_num(xs.empty() ? 0.0 : hi) << ',' << xs.size() << '\n';
        }
        r.sentiment = os.str();
    }

    // order decisions by day
    std::int64_t buys = 0, sells = 0;
    {
        std::map<Day, std::pair<std::int64_t, std::int64_t>> by_day;
        for (Day d : in.trading_days) by_day[d];
        for (const auto& [d, s] : in.decisions) {
            auto& c = by_day[d];
            (s == Side::buy ? c.first : c.second) += 1;
            (s == Side::buy ? buys : sells) += 1;
        }
        std::ostringstream os;
        os << "day,buys,sells\n";
        for (const auto& [d, c] : by_day) os << d << ',' << c.first << ',' << c.second << '\n';
        r.decisions = os.str();
    }

    // summary
    ordered_json s;
    s["agents"] = in.wealth.size();
    s["trading_days"] = in.trading_days.size();
    std::int64_t volume = 0;
    for (const auto& t : in.trades) volume += t.quantity;
    s["trades"] = in.trades.size();
    s["traded_units"] = volume;
    s["buy_orders"] = buys;
    s["sell_orders"] = sells;
    s["sell_buy_ratio"] = num_or_null(sell_buy_ratio_from(in, std::numeric_limits<Day>::min()));
    s["focus_day"] = in.focus_day;
    if (in.focus_day >= 0) {
        s["sell_buy_ratio_from_focus"] = num_or_null(sell_buy_ratio_from(in, in.focus_day));
        double acc = 0.0;
        std::size_t n = 0;
        for (const auto& [d, m] : mean_sentiment(in)) {
            if (d >= in.focus_day) {
                acc += m;
                ++n;
            }
        }
        s["mean_sentiment_from_focus"] = n ? ordered_json(acc / static_cast<double>(n)) : ordered_json(nullptr);
    }
    std::vector<double> g;
    for (const auto& [_, x] : gini) g.push_back(x);
    s["gini_start"] = g.empty() ? ordered_json(nullptr) : ordered_json(g.front());
    s["gini_end"] = g.empty() ? ordered_json(nullptr) : ordered_json(g.back());
    s["gini_slope"] = ls_slope(g);
    s["top10_turnover_pct"] = perf.top10_turnover_pct;
    s["top10_return_pct"] = perf.top10_return_pct;
    s["bottom50_turnover_pct"] = perf.bottom50_turnover_pct;
    s["bottom50_return_pct"] = perf.bottom50_return_pct;

    std::map<std::string, std::pair<double, std::size_t>> by_policy;
    for (const auto& a : perf.agents) {
        auto it = in.policy_of.find(a.agent_id);
        auto& acc = by_policy[it == in.policy_of.end() ? "" : it->second];
        acc.first += a.return_pct;
        acc.second += 1;
    }
    ordered_json groups = ordered_json::object();
    for (const auto& [name, acc] : by_policy) {
        groups[name] = {{"agents", acc.second}, {"mean_return_pct", acc.first / static_cast<double>(acc.second)}};
    }
    s["policies"] = groups;

    if (!in.reference.empty() && !in.assets.empty()) {
        const auto sim = composite_closes(in);
        const std::size_t n = std::min(sim.size(), in.reference.size());
        const auto tm = analytics::tracking_metrics(std::span(sim).first(n), std::span(in.reference).first(n));
        s["tracking"] = {{"rmse", tm.rmse}, {"mae", tm.mae}, {"corr", num_or_null(tm.corr)}, {"n", n}};
    } else {
        s["tracking"] = nullptr;
    }
    r.summary = s;
    return r;
}

void write_reports(const ReportFiles& r, const std::filesystem::path& dir) {
    std::filesystem::create_directories(dir);
    spit(dir / "stylized_facts.tsv", r.stylized_facts);
    spit(dir / "inequality.csv", r.inequality);
    spit(dir / "turnover.csv", r.turnover);
    spit(dir / "sentiment.csv", r.sentiment);
    spit(dir / "decisions.csv", r.decisions);
    spit(dir / "summary.json", r.summary.dump(2) + "\n");
}

ReportFiles read_reports(const std::filesystem::path& dir) {
    ReportFiles r;
    r.stylized_facts = slurp(dir / "stylized_facts.tsv");
    r.inequality = slurp(dir / "inequality.csv");
    r.turnover = slurp(dir / "turnover.csv");
    r.sentiment = slurp(dir / "sentiment.csv");
    r.decisions = slurp(dir / "decisions.csv");
    r.summary = ordered_json::parse(slurp(dir / "summary.json"));
    return r;
}

ReportInputs inputs_from_log(const EventLog& log) {
    ReportInputs in;
    exchange::PortfolioStore store;
    std::map<AssetId, double> last_close;
    std::set<Day> trading;
    std::vector<exchange::Trade> day_trades;
    Day current = std::numeric_limits<Day>::min();
    bool current_trading = false;
    bool saw_run = false;

    auto close_day = [&]() {
        if (current == -1) {
            for (const auto& [id, p] : store.all()) in.wealth[id].emplace_back(-1, p.total_value(last_close));
            return;
        }
        if (current < 0 || !current_trading) return;
        exchange::settle(day_trades, store);
        in.trades.insert(in.trades.end(), day_trades.begin(), day_trades.end());
        day_trades.clear();
        for (const auto& [id, p] : store.all()) in.wealth[id].emplace_back(current, p.total_value(last_close));
    };

    try {
        for (const auto& e : log.events()) {
            if (e.day != current) {
                close_day();
                current = e.day;
                current_trading = false;
            }
            const auto& d = e.data;
            if (e.type == "run") {
                saw_run = true;
                in.focus_day = d.at("focus_day").get<Day>();
                for (const auto& a : d.at("assets")) in.assets.push_back(a.get<AssetId>());
                if (d.contains("reference")) in.reference = d.at("reference").get<std::vector<double>>();
            } else if (e.type == "init_bar") {
                const auto asset = d.at("asset").get<AssetId>();
                last_close[asset] = d.at("close").get<double>();
                in.closes[asset].push_back(d.at("close").get<double>());
                in.volumes[asset].push_back(d.at("vol").get<double>());
            } else if (e.type == "init_portfolio") {
                exchange::Portfolio p;
                p.agent_id = d.at("agent").get<AgentId>();
                p.cash = Money::from_ticks(d.at("cash_ticks").get<std::int64_t>());
                for (const auto& [a, q] : d.at("holdings").items()) p.holdings[a] = q.get<std::int64_t>();
                for (const auto& [a, c] : d.at("cost_basis").items()) p.cost_basis[a] = c.get<double>();
                in.policy_of[p.agent_id] = d.at("policy").get<std::string>();
                store.add(p);
            } else if (e.type == "day_start") {
                current_trading = d.at("trading").get<bool>();
                if (current_trading) trading.insert(e.day);
            } else if (e.type == "order") {
                in.decisions.emplace_back(e.day, exchange::side_from_string(d.at("side").get<std::string>()));
            } else if (e.type == "trade") {
                day_trades.push_back(exchange::trade_from_json(d));
            } else if (e.type == "bar") {
                const auto bar = exchange::bar_from_json(d);
                last_close[bar.asset_id] = bar.close;
                in.closes[bar.asset_id].push_back(bar.close);
                in.volumes[bar.asset_id].push_back(static_cast<double>(bar.vol));
            } else if (e.type == "belief" && e.day >= 0) {
                agents::BeliefState b;
                const auto dims = d.at("dims").get<std::vector<double>>();
                if (dims.size() != agents::kBeliefDims) throw SchemaViolation("belief needs five dims");
                std::copy(dims.begin(), dims.end(), b.dims.begin());
                in.sentiment[e.day].push_back(agents::sentiment_score(b));
            }
        }
        close_day();
    } catch (const json::exception& ex) {
        throw SchemaViolation(std::string("event log: ") + ex.what());
    } catch (const ConsistencyError& ex) {
        throw SchemaViolation(std::string("event log does not settle: ") + ex.what());
    }
    if (!saw_run) throw SchemaViolation("event log has no run record");
    in.trading_days.assign(trading.begin(), trading.end());
    return in;
}

std::pair<std::vector<double>, std::vector<double>> read_price_series(const std::filesystem::path& path) {
    const CsvTable t = read_csv(path);
    const std::size_t ci = t.column("close");
    const bool has_vol = t.has_column("vol");
    std::vector<double> closes, vols;
    for (const auto& row : t.rows) {
        closes.push_back(parse_double(row.at(ci), path.string() + " close"));
        if (has_vol) vols.push_back(parse_double(row.at(t.column("vol")), path.string() + " vol"));
    }
    return {closes, vols};
}

}  // namespace twinmarket::sim
