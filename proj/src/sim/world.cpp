#include "twinmarket/sim/world.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <set>

#include "twinmarket/agents/llm_policy.hpp"
#include "twinmarket/agents/rule_policies.hpp"
#include "twinmarket/agents/transactions.hpp"
#include "twinmarket/common/csv.hpp"
#include "twinmarket/common/errors.hpp"
#include "twinmarket/exchange/io.hpp"
#include "twinmarket/feed/ranking.hpp"
#include "twinmarket/socialgraph/io.hpp"

namespace twinmarket::sim {

namespace {

constexpr std::size_t kViewBars = 60;
constexpr std::size_t kPbWindow = 30;

std::vector<std::size_t> permutation(std::size_t n, Rng& rng) {
    std::vector<std::size_t> p(n);
    for (std::size_t i = 0; i < n; ++i) p[i] = i;
    for (std::size_t i = n; i > 1; --i) {
        const auto j = static_cast<std::size_t>(uniform01(rng) * static_cast<double>(i));
        std::swap(p[i - 1], p[std::min(j, i - 1)]);
    }
    return p;
}

double sentiment_percentile(const SimConfig& cfg) {
    if (cfg.data.sentiment.empty()) return cfg.brar_percentile;
    const CsvTable t = read_csv(cfg.data.sentiment);
    const std::size_t dc = t.column("date");
    const std::size_t pc = t.column("percentile");
    std::optional<double> best;
    std::string best_date;
    for (const auto& row : t.rows) {
        const std::string& d = row.at(dc);
        if (d <= cfg.start_date && (best_date.empty() || d >= best_date)) {
            best_date = d;
            best = parse_double(row.at(pc), "sentiment percentile");
        }
    }
    if (!best) throw MissingData("no sentiment percentile on or before " + cfg.start_date);
    if (*best > 1.0) *best /= 100.0;
    return std::clamp(*best, 0.0, 1.0);
}

std::vector<agents::Persona> load_personas(const std::string& path, std::size_t n) {
    std::ifstream in(path);
    if (!in) throw MissingData("cannot open personas " + path);
    std::vector<agents::Persona> out;
    std::string line;
    while (out.size() < n && std::getline(in, line)) {
        if (trim(line).empty()) continue;
        try {
            out.push_back(agents::persona_from_json(json::parse(line)));
        } catch (const json::exception& e) {
            throw ConfigError("personas " + path + ": " + e.what());
        }
    }
    if (out.size() < n) throw ConfigError("personas file has fewer entries than agents");
    return out;
}

void apply_bias(agents::Persona& p, const std::string& bias) {
    using agents::Level;
    if (bias == "high") p.bias = {Level::high, Level::high, Level::high, Level::high};
    if (bias == "low") p.bias = {Level::low, Level::low, Level::low, Level::low};
}

ordered_json belief_json(AgentId id, const agents::BeliefState& b) {
    ordered_json j;
    j["agent"] = id.value;
    j["dims"] = b.dims;
    j["sentiment"] = agents::sentiment_score(b);
    j["narrative_hash"] = agents::narrative_hash(b.narrative);
    return j;
}

}  // namespace

feed::NewsScenario default_news(const std::vector<CalendarDay>& calendar, const std::vector<AssetId>& industries,
                                const NewsGenConfig& gen) {
    feed::NewsScenario s;
    if (industries.empty()) return s;
    for (const auto& cd : calendar) {
        if (!cd.trading) continue;
        const AssetId& ind = industries[static_cast<std::size_t>(cd.trading_ordinal) % industries.size()];
        feed::NewsItem f;
        f.item_id = "F" + std::to_string(cd.trading_ordinal);
        f.day = cd.day;
        f.category = ind;
        f.tone = gen.factual_tone;
        f.content = "Monthly activity figures for the " + ind + " sector came in slightly above expectations.";
        s.items.push_back(f);
        if (cd.trading_ordinal >= gen.rumor_start) {
            feed::NewsItem r = f;
            r.item_id = "R" + std::to_string(cd.trading_ordinal);
            r.is_rumor = true;
            r.tone = gen.rumor_tone;
            r.content = "Unverified chatter says regulators will impose sweeping restrictions on " + ind +
                        " firms, with the wider market expected to follow lower.";
            s.items.push_back(r);
            s.rumor_pairs[f.item_id] = r.item_id;
        }
    }
    s.validate();
    return s;
}

exchange::Portfolio initial_portfolio(AgentId id, double capital, double fraction,
                                      std::span<const socialgraph::TradeRecord> history,
                                      const std::vector<AssetId>& fallback, const std::map<AssetId, double>& prices) {
    std::map<AssetId, double> net;
    for (const auto& r : history) {
        if (r.user_id != id) continue;
        net[r.industry] += static_cast<double>(r.direction == Side::buy ? r.volume : -r.volume);
    }
    std::map<AssetId, double> weights;
    double total = 0.0;
    for (const auto& [a, q] : net) {
        if (q > 0.0 && prices.count(a)) {
            weights[a] = q;
            total += q;
        }
    }
    if (total <= 0.0) {
        for (const auto& a : fallback) {
            if (prices.count(a)) {
                weights[a] = 1.0;
                total += 1.0;
            }
        }
    }
    exchange::Portfolio p;
    p.agent_id = id;
    Money cash = Money::from_double(capital);
    for (const auto& [a, w] : weights) {
        const Money px = Money::from_double(prices.at(a));
        const auto units = static_cast<std::int64_t>(std::floor(fraction * capital * w / total / px.to_double()));
        if (units <= 0) continue;
        p.holdings[a] = units;
        p.cost_basis[a] = px.to_double();
        cash -= px * units;
    }
    p.cash = cash;
    return p;
}

World::World(const SimConfig& cfg, std::vector<agents::Agent> population) : cfg_(cfg), seeds_(cfg.seed) {
    cfg_.validate();
    setup(std::move(population));
}

World::World(const SimConfig& cfg) : cfg_(cfg), seeds_(cfg.seed) {
    cfg_.validate();
    setup({});
}

std::vector<agents::Agent> World::build_population() {
    const auto industries = market_->assets();
    std::vector<agents::Persona> personas;
    if (!cfg_.data.personas.empty()) {
        personas = load_personas(cfg_.data.personas, cfg_.agents);
    } else {
        agents::PersonaGenConfig pg;
        pg.count = cfg_.agents;
        personas = agents::generate_personas(pg, industries, SeedTree(seeds_.derive("personas")));
    }
    std::size_t at = 0;
    for (const auto& g : cfg_.population.groups) {
        for (std::size_t i = 0; i < g.count; ++i, ++at) {
            personas[at].policy = g.policy;
            apply_bias(personas[at], g.bias);
        }
    }

    std::set<std::size_t> llm_slots;
    if (cfg_.policy_mode == PolicyMode::llm) {
        for (std::size_t i = 0; i < personas.size(); ++i) llm_slots.insert(i);
    } else if (cfg_.policy_mode == PolicyMode::mixed) {
        Rng rng = seeds_.stream("llm-slots");
        const auto k = static_cast<std::size_t>(std::llround(cfg_.llm_fraction * static_cast<double>(personas.size())));
        for (std::size_t i : sample_without_replacement(personas.size(), k, rng)) llm_slots.insert(i);
    }
    agents::ChatClientPtr client;
    if (!llm_slots.empty()) {
        client = std::make_shared<agents::HttpChatClient>(cfg_.chat);
        if (!cfg_.chat_transcript.empty()) {
            client = std::make_shared<agents::TranscriptChatClient>(client, cfg_.chat_transcript);
        }
    }

    const double p = sentiment_percentile(cfg_);
    std::vector<agents::Agent> out;
    for (std::size_t i = 0; i < personas.size(); ++i) {
        auto& persona = personas[i];
        agents::BeliefInitParams bp{p, cfg_.population.belief_variance, seeds_.derive("belief", persona.agent_id.value)};
        agents::PolicyPtr policy = llm_slots.count(i) ? std::make_shared<agents::LlmPolicy>(client)
                                                      : agents::make_rule_policy(persona, cfg_.rules);
        out.emplace_back(persona, agents::init_belief(bp), policy);
    }
    return out;
}

void World::setup(std::vector<agents::Agent> population) {
    calendar_ = build_calendar(cfg_.start_date, cfg_.end_date, cfg_.trading_days, cfg_.holidays);

    exchange::Universe universe = cfg_.data.constituents.empty()
                                      ? exchange::default_universe(seeds_.derive("universe"))
                                      : exchange::load_universe(cfg_.data.constituents);
    Rng hist_rng = seeds_.stream("history");
    auto history = exchange::synthetic_history(universe, cfg_.market.warmup_days, -1, cfg_.market.warmup_volatility,
                                               cfg_.market.warmup_volume, hist_rng);
    market_ = std::make_unique<exchange::Market>(std::move(universe), std::move(history));
    const auto assets = market_->assets();

    if (population.empty()) population = build_population();
    if (population.size() != cfg_.agents) throw ConfigError("population size differs from the agent count");
    agents_ = std::move(population);
    for (std::size_t i = 0; i < agents_.size(); ++i) {
        const AgentId id = agents_[i].id();
        if (!index_of_.emplace(id, i).second) throw ConfigError("duplicate agent id");
        users_.push_back(id);
    }
    std::sort(users_.begin(), users_.end());

    // warm-up transactions and the portfolios they imply
    const auto closes = market_->last_closes();
    const int h = cfg_.population.history_days;
    for (const auto& a : agents_) {
        const auto& persona = a.persona();
        Rng trng = seeds_.stream("template", persona.agent_id.value);
        const auto tmpl = agents::random_template(assets, persona.followed_industries, trng);
        auto recs = agents::synth_transactions(persona.agent_id, tmpl, -h, h,
                                               seeds_.derive("transactions", persona.agent_id.value));
        double capital = cfg_.population.initial_cash;
        if (!cfg_.population.uniform_capital && persona.capital_tier == agents::CapitalTier::large) {
            capital *= cfg_.population.large_capital_multiplier;
        }
        auto fallback = persona.followed_industries.empty() ? assets : persona.followed_industries;
        auto pf = initial_portfolio(persona.agent_id, capital, cfg_.population.holdings_fraction, recs, fallback, closes);
        initial_value_[pf.agent_id] = pf.total_value(closes);
        store_.add(pf);
        records_.insert(records_.end(), recs.begin(), recs.end());
    }
    initial_cash_ = store_.total_cash();
    initial_holdings_ = store_.total_holdings();

    // news
    news_ = cfg_.data.news.empty() ? default_news(calendar_, assets, cfg_.news_gen)
                                   : feed::load_news_scenario(cfg_.data.news);
    counterparts_ = news_.counterparts();

    Day focus = -1;
    if (cfg_.data.news.empty()) {
        for (const auto& cd : calendar_) {
            if (cd.trading && cd.trading_ordinal == cfg_.news_gen.rumor_start) {
                focus = cd.day;
                break;
            }
        }
    } else {
        for (const auto& [_, r] : counterparts_) focus = focus < 0 ? r.day : std::min(focus, r.day);
    }

    // run record and initial state
    live_.assets = assets;
    live_.focus_day = focus;
    if (!cfg_.data.reference.empty()) {
        live_.reference = read_price_series(cfg_.data.reference).first;
    }
    ordered_json run;
    run["scenario"] = to_string(cfg_.scenario);
    run["seed"] = cfg_.seed;
    run["config_hash"] = config_hash(cfg_);
    run["policy_mode"] = to_string(cfg_.policy_mode);
    run["agents"] = agents_.size();
    run["focus_day"] = focus;
    run["assets"] = assets;
    if (!live_.reference.empty()) run["reference"] = live_.reference;
    log_.append(-1, "run", run);

    for (const auto& a : assets) {
        const auto& last = market_->history(a).back();
        live_.closes[a].push_back(last.close);
        live_.volumes[a].push_back(static_cast<double>(last.vol));
        log_.append(-1, "init_bar", {{"asset", a}, {"close", last.close}, {"vol", last.vol}});
    }
    for (const auto& a : agents_) {
        const auto& pf = store_.get(a.id());
        ordered_json j;
        j["agent"] = a.id().value;
        j["policy"] = a.policy().name();
        j["strategy"] = agents::to_string(a.persona().strategy);
        j["capital_tier"] = agents::to_string(a.persona().capital_tier);
        j["cash_ticks"] = pf.cash.ticks();
        j["holdings"] = pf.holdings;
        j["cost_basis"] = pf.cost_basis;
        log_.append(-1, "init_portfolio", j);
        live_.policy_of[a.id()] = a.policy().name();
        live_.wealth[a.id()].emplace_back(-1, initial_value_.at(a.id()));
    }
    for (const auto& a : agents_) log_.append(-1, "belief", belief_json(a.id(), a.belief()));

    edges_ << socialgraph::kEdgeHeader << '\n';
    graph_stats_ << socialgraph::kStatsHeader << '\n';
    intensities_ << socialgraph::kIntensityHeader << '\n';
    rebuild_graph(-1, -1);
}

void World::rebuild_graph(Day day, int now) {
    graph_ = socialgraph::build_graph(records_, users_, now, cfg_.graph);
    const auto stats = socialgraph::graph_stats(graph_);
    socialgraph::write_edges(edges_, day, graph_);
    socialgraph::write_stats(graph_stats_, day, stats);
    socialgraph::write_intensities(intensities_, day,
                                   socialgraph::intensity_vectors(records_, users_, now, cfg_.graph.lambda));
    log_.append(day, "graph",
                {{"nodes", stats.nodes},
                 {"edges", stats.edges},
                 {"density", stats.density},
                 {"avg_clustering", stats.avg_clustering},
                 {"largest_component", stats.largest_component}});
}

agents::PortfolioView World::view_of(AgentId id, const std::map<AssetId, double>& prices) const {
    const auto& pf = store_.get(id);
    agents::PortfolioView v;
    v.cash = pf.cash;
    v.holdings = pf.holdings;
    v.cost_basis = pf.cost_basis;
    v.total_value = pf.total_value(prices);
    v.initial_value = initial_value_.at(id);
    return v;
}

std::vector<agents::FeedEntry> World::feed_for(AgentId id, Day day) const {
    std::vector<agents::FeedEntry> out;
    for (PostId pid : feed::rank_feed(id, graph_, posts_, day, cfg_.feed, cfg_.graph.tau)) {
        const auto& p = posts_.get(pid);
        agents::FeedEntry e;
        e.post_id = pid;
        e.author = p.author_id;
        e.post_type = p.post_type;
        e.content = p.content;
        e.root_content = posts_.get(p.root_id).content;
        e.stance = p.stance;
        e.upvotes = p.upvotes;
        e.downvotes = p.downvotes;
        out.push_back(std::move(e));
    }
    return out;
}

DayStats World::run_day(const CalendarDay& cd) {
    const Day day = cd.day;
    DayStats st;
    st.day = day;
    st.trading = cd.trading;
    const std::size_t n = agents_.size();

    // (1) active agents
    Rng act_rng = seeds_.stream("activation", static_cast<std::uint64_t>(day));
    const auto k = static_cast<std::size_t>(std::llround(cfg_.activation * static_cast<double>(n)));
    std::vector<bool> active(n, false);
    std::vector<std::uint32_t> active_ids;
    for (std::size_t i : sample_without_replacement(n, k, act_rng)) active[i] = true;
    for (std::size_t i = 0; i < n; ++i) {
        if (active[i]) active_ids.push_back(agents_[i].id().value);
    }
    st.active = active_ids.size();

    // day-start snapshot: bars through yesterday only
    const auto prev_closes = market_->last_closes();
    auto view = std::make_shared<agents::MarketView>();
    Day snapshot_through = std::numeric_limits<Day>::min();
    std::vector<std::pair<double, AssetId>> by_amount;
    for (const auto& a : market_->assets()) {
        const auto& bars = market_->history(a);
        agents::AssetView av;
        av.asset = a;
        const std::size_t from = bars.size() > kViewBars ? bars.size() - kViewBars : 0;
        av.bars.assign(bars.begin() + static_cast<std::ptrdiff_t>(from), bars.end());
        av.valuation = market_->valuation_at(a, bars.back().close);
        av.pb_history = market_->pb_history(a, kPbWindow);
        snapshot_through = std::max(snapshot_through, bars.back().day);
        by_amount.emplace_back(-bars.back().amount, a);
        view->emplace(a, std::move(av));
    }
    if (snapshot_through >= day) throw ConsistencyError("snapshot contains same-day data");
    std::sort(by_amount.begin(), by_amount.end());
    std::vector<AssetId> recs;
    for (std::size_t i = 0; i < by_amount.size() && i < cfg_.market.recommendations; ++i) {
        recs.push_back(by_amount[i].second);
    }

    log_.append(day, "day_start",
                {{"date", cd.date},
                 {"trading", cd.trading},
                 {"trading_ordinal", cd.trading_ordinal},
                 {"active", active_ids},
                 {"snapshot_through", snapshot_through}});

    // (2) news to the most central users
    std::map<AgentId, std::vector<feed::NewsItem>> delivered;
    const auto todays = news_.factual_for_day(day);
    if (!todays.empty() && cfg_.injection_count > 0) {
        const bool rumor = cfg_.scenario == Scenario::rumor;
        delivered = feed::inject_news(todays, counterparts_, socialgraph::degree_centrality(graph_),
                                      cfg_.injection_count, rumor);
        for (const auto& [id, items] : delivered) {
            for (const auto& it : items) {
                log_.append(day, "delivery",
                            {{"agent", id.value}, {"item", it.item_id}, {"is_rumor", it.is_rumor}, {"tone", it.tone}});
            }
        }
    }

    // (3) plans against the snapshot
    std::vector<std::optional<agents::DayPlan>> plans(n);
    std::vector<std::vector<agents::FeedEntry>> shown(n);
    std::vector<double> prior_value(n);
    for (std::size_t i = 0; i < n; ++i) prior_value[i] = store_.get(agents_[i].id()).total_value(prev_closes);
    for (std::size_t i = 0; i < n; ++i) {
        if (!active[i]) continue;
        auto& agent = agents_[i];
        agents::Observation obs;
        obs.day = day;
        obs.date = cd.date;
        obs.trading_day = cd.trading;
        if (auto it = delivered.find(agent.id()); it != delivered.end()) obs.news = it->second;
        obs.feed = feed_for(agent.id(), day);
        obs.market = view;
        obs.portfolio = view_of(agent.id(), prev_closes);
        obs.recommendations = recs;
        shown[i] = obs.feed;
        Rng rng = seeds_.stream("agent", agent.id().value, static_cast<std::uint64_t>(day));
        plans[i] = agent.plan(obs, rng);
        if (plans[i]->failure) {
            log_.append(day, "failure", {{"agent", agent.id().value}, {"phase", "plan"}, {"message", *plans[i]->failure}});
        }
    }

    // (4)-(6) auction, settlement, bars
    std::vector<exchange::Order> orders;
    for (std::size_t i = 0; i < n; ++i) {
        if (!plans[i]) continue;
        if (!plans[i]->orders.empty()) ++st.agents_with_orders;
        for (const auto& o : plans[i]->orders) orders.push_back(o);
    }
    if (!cd.trading) orders.clear();
    Rng seq_rng = seeds_.stream("seq", static_cast<std::uint64_t>(day));
    const auto perm = permutation(orders.size(), seq_rng);
    for (std::size_t i = 0; i < orders.size(); ++i) orders[i].seq = perm[i];
    std::sort(orders.begin(), orders.end(), [](const auto& a, const auto& b) { return a.seq < b.seq; });
    st.orders = orders.size();

    exchange::SessionResult session;
    std::map<AgentId, std::vector<exchange::Trade>> own_trades;
    std::map<AgentId, std::size_t> rejected;
    if (cd.trading) {
        session = market_->run_session(day, orders, store_);
        std::map<std::uint64_t, const char*> reject_of;
        for (const auto& r : session.rejected) {
            reject_of[r.order.seq] = exchange::to_string(r.reason);
            ++rejected[r.order.agent_id];
        }
        for (const auto& o : orders) {
            auto j = exchange::to_json(o);
            auto it = reject_of.find(o.seq);
            j["result"] = it == reject_of.end() ? "accepted" : it->second;
            log_.append(day, "order", j);
            live_.decisions.emplace_back(day, o.side);
        }
        for (const auto& t : session.trades) {
            log_.append(day, "trade", exchange::to_json(t));
            own_trades[t.buyer_id].push_back(t);
            own_trades[t.seller_id].push_back(t);
            records_.push_back({t.buyer_id, t.asset_id, cd.trading_ordinal, Side::buy, t.quantity});
            records_.push_back({t.seller_id, t.asset_id, cd.trading_ordinal, Side::sell, t.quantity});
            live_.trades.push_back(t);
        }
        st.trades = session.trades.size();
        for (const auto& [a, bar] : session.bars) {
            log_.append(day, "bar", exchange::to_json(bar));
            const auto v = market_->valuation_at(a, bar.close);
            ordered_json vj;
            vj["asset"] = a;
            vj["pe"] = v.pe ? ordered_json(*v.pe) : ordered_json(nullptr);
            vj["pb"] = v.pb;
            vj["ps"] = v.ps;
            vj["dv"] = v.dv;
            log_.append(day, "valuation", vj);
            live_.closes[a].push_back(bar.close);
            live_.volumes[a].push_back(static_cast<double>(bar.vol));
        }
        live_.trading_days.push_back(day);
    }

    // (7) social actions and posts
    for (std::size_t i = 0; i < n; ++i) {
        if (!plans[i]) continue;
        const AgentId id = agents_[i].id();
        for (const auto& act : plans[i]->social.actions) {
            ordered_json j{{"actor", id.value}, {"kind", feed::to_string(act.kind)}, {"target", act.target.value}};
            try {
                auto created = feed::apply_action(posts_, act, day);
                if (created) {
                    j["new_post"] = created->value;
                    log_.append(day, "action", j);
                    log_.append(day, "post", feed::to_json(posts_.get(*created)));
                    ++st.posts;
                } else {
                    log_.append(day, "action", j);
                }
            } catch (const UnknownPost& e) {
                j["error"] = e.what();
                log_.append(day, "action", j);
            }
        }
        if (const auto& d = plans[i]->social.post) {
            const PostId pid = posts_.create(id, day, d->content, d->post_type, d->stance);
            log_.append(day, "post", feed::to_json(posts_.get(pid)));
            ++st.posts;
        }
    }

    // (8) graph from decayed records
    if (cd.trading) rebuild_graph(day, cd.trading_ordinal);

    // (9) feedback and belief update
    const auto closes = market_->last_closes();
    std::map<AssetId, double> pct;
    for (const auto& [a, bar] : session.bars) pct[a] = bar.pct_chg;
    for (std::size_t i = 0; i < n; ++i) {
        if (!active[i] && !cfg_.inactive_update_beliefs) continue;
        auto& agent = agents_[i];
        const AgentId id = agent.id();
        agents::Feedback fb;
        fb.day = day;
        fb.trading_day = cd.trading;
        if (auto it = own_trades.find(id); it != own_trades.end()) fb.trades = it->second;
        if (auto it = rejected.find(id); it != rejected.end()) fb.rejected_orders = it->second;
        fb.pct_change = pct;
        fb.portfolio = view_of(id, closes);
        fb.prior_total_value = prior_value[i];
        if (auto it = delivered.find(id); it != delivered.end()) fb.news = it->second;
        fb.feed = shown[i];
        Rng rng = seeds_.stream("respond", id.value, static_cast<std::uint64_t>(day));
        agent.respond(fb, rng);
        for (const auto& note : agent.response_notes()) {
            log_.append(day, "failure", {{"agent", id.value}, {"phase", "update"}, {"message", note}});
        }
    }

    // (10) end-of-day records
    auto& sent = live_.sentiment[day];
    for (const auto& a : agents_) {
        log_.append(day, "belief", belief_json(a.id(), a.belief()));
        sent.push_back(agents::sentiment_score(a.belief()));
    }
    if (cd.trading) {
        for (const auto& [id, pf] : store_.all()) live_.wealth[id].emplace_back(day, pf.total_value(closes));
    }
    if (store_.total_cash() != initial_cash_ || store_.total_holdings() != initial_holdings_) {
        throw ConsistencyError("settlement changed total cash or holdings");
    }
    stats_.push_back(st);
    return st;
}

void World::run_all() {
    for (const auto& cd : calendar_) run_day(cd);
}

}  // namespace twinmarket::sim
