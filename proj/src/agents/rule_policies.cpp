#include "twinmarket/agents/rule_policies.hpp"

#include <algorithm>
#include <cmath>
#include <set>

#include "twinmarket/common/errors.hpp"
#include "twinmarket/exchange/order.hpp"

namespace twinmarket::agents {

void RuleParams::validate() const {
    auto unit = [](double x) { return x >= 0.0 && x <= 1.0; };
    if (!unit(smoothing) || !unit(news_weight) || !unit(feed_weight)) {
        throw InvalidSpec("belief weights must lie in [0, 1]");
    }
    if (!unit(post_probability) || !unit(vote_probability) || !unit(repost_probability)) {
        throw InvalidSpec("social probabilities must lie in [0, 1]");
    }
    if (!(price_spread >= 0.0 && price_spread <= 0.1)) throw InvalidSpec("price spread must lie in [0, 0.1]");
    if (valuation_window < 2) throw InvalidSpec("valuation window must be at least 2");
    if (!(return_scale > 0.0)) throw InvalidSpec("return scale must be positive");
    if (!unit(noise_probability)) throw InvalidSpec("noise probability must lie in [0, 1]");
}

double position_cap_pct(Level underdiversification) {
    switch (underdiversification) {
        case Level::low: return 10.0;
        case Level::medium: return 20.0;
        case Level::high: return 35.0;
    }
    return 20.0;
}

double activity_probability(Level turnover) {
    switch (turnover) {
        case Level::low: return 0.35;
        case Level::medium: return 0.65;
        case Level::high: return 1.0;
    }
    return 0.65;
}

double trailing_zscore(std::span<const double> values) {
    if (values.size() < 2) return 0.0;
    double mean = 0.0;
    for (double v : values) mean += v;
    mean /= static_cast<double>(values.size());
    double var = 0.0;
    for (double v : values) var += (v - mean) * (v - mean);
    var /= static_cast<double>(values.size() - 1);
    if (var <= 1e-24) return 0.0;
    return (values.back() - mean) / std::sqrt(var);
}

int ma_regime(const exchange::DailyBar& bar, double band) {
    if (bar.ma_5 > bar.ma_30 * (1.0 + band)) return 1;
    if (bar.ma_5 < bar.ma_30 * (1.0 - band)) return -1;
    return 0;
}

namespace {

double toward(double current, double target, double weight) { return (1.0 - weight) * current + weight * target; }

double mean_tone(const std::vector<feed::NewsItem>& news) {
    double s = 0.0;
    for (const auto& n : news) s += n.tone;
    return news.empty() ? 0.0 : s / static_cast<double>(news.size());
}

double mean_stance(const std::vector<FeedEntry>& feed) {
    double s = 0.0;
    for (const auto& f : feed) s += f.stance;
    return feed.empty() ? 0.0 : s / static_cast<double>(feed.size());
}

std::vector<AssetId> candidate_assets(const Observation& obs, const Persona& persona) {
    std::set<AssetId> set(persona.followed_industries.begin(), persona.followed_industries.end());
    for (const auto& [a, q] : obs.portfolio.holdings) {
        if (q > 0) set.insert(a);
    }
    set.insert(obs.recommendations.begin(), obs.recommendations.end());
    return {set.begin(), set.end()};
}

int sign(double x) { return x > 0.0 ? 1 : (x < 0.0 ? -1 : 0); }

}  // namespace

RulePolicy::RulePolicy(RuleParams params) : params_(params) { params_.validate(); }

BeliefState RulePolicy::form_belief(const Observation& obs, const Persona&, const BeliefState& prior, Rng&) {
    BeliefState b = prior;
    if (!obs.news.empty()) {
        const double target = 5.0 + 5.0 * mean_tone(obs.news);
        for (std::size_t d : {economy, trend, peers}) b.dims[d] = toward(b.dims[d], target, params_.news_weight);
    }
    if (!obs.feed.empty()) {
        b.dims[peers] = toward(b.dims[peers], 5.0 + 5.0 * mean_stance(obs.feed), params_.feed_weight);
    }
    b.clamp();
    b.last_updated = obs.day;
    b.narrative = narrate(b);
    return b;
}

DesireQuery RulePolicy::generate_desires(const Observation& obs, const Persona& persona, const BeliefState&, Rng&) {
    DesireQuery q;
    for (const auto& a : candidate_assets(obs, persona)) {
        q.queries.push_back("recent developments in " + a);
        q.stock_ids.push_back(a);
    }
    if (q.queries.empty()) q.queries.push_back("overall market direction");
    return q;
}

TradeIntention RulePolicy::plan_intentions(const Observation& obs, const Persona& persona, const BeliefState& belief,
                                           const DesireQuery& desires, Rng& rng) {
    TradeIntention out;
    if (!obs.trading_day) return out;
    const bool active = uniform01(rng) < activity_probability(persona.bias.turnover);
    const double tilt = belief.tilt();
    const double cap = position_cap_pct(persona.bias.underdiversification);
    const double total = obs.portfolio.total_value;

    for (const auto& a : desires.stock_ids) {
        const AssetView* view = obs.asset(a);
        // drawn for every asset so streams stay aligned
        const double u = uniform01(rng);
        const double u_noise = uniform01(rng);
        const double u_dir = uniform01(rng);
        if (!view || view->bars.empty()) continue;
        AssetIntention it;
        it.asset = a;
        if (!active) {
            out.items.push_back(it);
            continue;
        }
        const std::int64_t held = obs.portfolio.units(a);
        const double prev = view->prev_close();
        int s = signal(*view, persona, belief, obs.portfolio);
        const bool overridden = belief_driven() && std::abs(tilt) >= params_.override_tilt;
        if (overridden) s = sign(tilt);
        if (s == 0 && u_noise < params_.noise_probability) s = u_dir < 0.5 + 0.5 * tilt ? 1 : -1;

        bool take_profit = false;
        if (applies_disposition() && held > 0 && persona.bias.disposition != Level::low) {
            const double cost = obs.portfolio.cost_basis.count(a) ? obs.portfolio.cost_basis.at(a) : 0.0;
            if (cost > 0.0) {
                const double gain = prev / cost - 1.0;
                const double threshold = persona.bias.disposition == Level::high ? 0.10 : 0.20;
                if (gain > threshold) {
                    s = -1;
                    take_profit = true;
                } else if (gain < 0.0 && s < 0 && !overridden && persona.bias.disposition == Level::high) {
                    s = 0;  // hold the loser
                }
            }
        }
        if (s < 0 && held == 0) s = 0;

        if (s != 0 && total > 0.0) {
            double pct = cap * std::min(1.0, 0.25 + 1.5 * std::abs(tilt));
            if (s < 0) {
                const double share = 100.0 * static_cast<double>(held) * prev / total;
                pct = take_profit ? share : std::min(pct, share);
            }
            it.action = s > 0 ? Action::buy : Action::sell;
            it.trading_position = pct;
            const double offset = params_.price_spread * u;
            it.target_price = Money::from_double(prev * (s > 0 ? 1.0 + offset : 1.0 - offset));
        }
        out.items.push_back(it);
    }
    return out;
}

SocialOutput RulePolicy::social(const Observation& obs, const Persona& persona, const BeliefState& belief,
                                const TradeIntention& intention, Rng& rng) {
    SocialOutput out;
    const double tilt = belief.tilt();
    for (const auto& f : obs.feed) {
        const double u_vote = uniform01(rng);
        const double u_repost = uniform01(rng);
        if (u_vote >= params_.vote_probability) continue;
        const bool agree = f.stance * tilt >= 0.0;
        out.actions.push_back({persona.agent_id, agree ? feed::ActionKind::like : feed::ActionKind::unlike, f.post_id,
                               {}});
        if (agree && std::abs(f.stance) > 0.5 && u_repost < params_.repost_probability) {
            out.actions.push_back({persona.agent_id, feed::ActionKind::repost, f.post_id, "worth a read"});
        }
    }

    const double u_post = uniform01(rng);
    if (!obs.news.empty() || u_post < params_.post_probability) {
        PostDraft d;
        d.stance = std::clamp(tilt, -1.0, 1.0);
        const bool traded = !intention.all_hold();
        d.post_type = !obs.news.empty() ? feed::PostType::type1 : (traded ? feed::PostType::type2 : feed::PostType::type3);
        const char* mood = d.stance > 0.1 ? "bullish" : (d.stance < -0.1 ? "bearish" : "undecided");
        d.content = std::string("Feeling ") + mood + " today.";
        if (!obs.news.empty()) d.content += " News: " + obs.news.front().content;
        for (const auto& i : intention.items) {
            if (i.action != Action::hold) d.content += std::string(" ") + to_string(i.action) + " " + i.asset + ".";
        }
        out.post = d;
    }
    return out;
}

BeliefState RulePolicy::update_belief(const Feedback& fb, const Persona&, const BeliefState& belief, Rng&) {
    BeliefState b = belief;
    const double keep = params_.smoothing;
    auto blend = [&](std::size_t d, double target) { b.dims[d] = keep * b.dims[d] + (1.0 - keep) * target; };

    if (!fb.pct_change.empty()) {
        double r = 0.0;
        for (const auto& [_, x] : fb.pct_change) r += x;
        r /= static_cast<double>(fb.pct_change.size());
        blend(trend, 5.0 + 5.0 * std::tanh(r / params_.return_scale));
    }
    if (fb.prior_total_value > 0.0) {
        const double own = fb.portfolio.total_value / fb.prior_total_value - 1.0;
        blend(self_assessment, 5.0 + 5.0 * std::tanh(own / params_.return_scale));
    }
    if (!fb.feed.empty()) blend(peers, 5.0 + 5.0 * mean_stance(fb.feed));
    if (!fb.news.empty()) {
        const double target = 5.0 + 5.0 * mean_tone(fb.news);
        blend(economy, target);
        blend(valuation, target);
    }
    b.clamp();
    b.last_updated = fb.day;
    b.narrative = narrate(b);
    return b;
}

int FundamentalRule::signal(const AssetView& view, const Persona&, const BeliefState& belief,
                            const PortfolioView&) const {
    const std::size_t n = std::min(params_.valuation_window, view.pb_history.size());
    const std::span<const double> window(view.pb_history.data() + (view.pb_history.size() - n), n);
    const double z = trailing_zscore(window);
    const double tilt = belief.tilt();
    if (z <= -params_.fundamental_z && tilt > 0.0) return 1;
    if (z >= params_.fundamental_z && tilt < 0.0) return -1;
    return 0;
}

int TechnicalRule::signal(const AssetView& view, const Persona&, const BeliefState& belief,
                          const PortfolioView&) const {
    const auto& bar = view.last();
    const bool confirmed = bar.vol_5 > 0.0 && static_cast<double>(bar.vol) >= params_.volume_confirm * bar.vol_5;
    if (!confirmed) return 0;
    const int regime = ma_regime(bar, params_.ma_band);
    const double tilt = belief.tilt();
    if (regime > 0 && tilt > -params_.override_tilt) return 1;
    if (regime < 0 && tilt < params_.override_tilt) return -1;
    return 0;
}

int ContrarianRule::signal(const AssetView& view, const Persona&, const BeliefState&, const PortfolioView&) const {
    const double r = view.last().pct_chg;
    if (r < -params_.contrarian_move) return 1;
    if (r > params_.contrarian_move) return -1;
    return 0;
}

PolicyPtr make_rule_policy(const Persona& persona, const RuleParams& params) {
    const std::string& p = persona.policy;
    if (p.empty() || p == "rules") {
        if (persona.strategy == Strategy::fundamental) return std::make_shared<FundamentalRule>(params);
        return std::make_shared<TechnicalRule>(params);
    }
    if (p == "fundamental") return std::make_shared<FundamentalRule>(params);
    if (p == "technical") return std::make_shared<TechnicalRule>(params);
    if (p == "contrarian") return std::make_shared<ContrarianRule>(params);
    if (p == "hold") return std::make_shared<HoldPolicy>(params);
    throw ConfigError("unknown rule policy " + p);
}

}  // namespace twinmarket::agents
