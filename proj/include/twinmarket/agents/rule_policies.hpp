#pragma once

#include "twinmarket/agents/policy.hpp"

namespace twinmarket::agents {

struct RuleParams {
    double smoothing = 0.8;        // weight kept on the prior in the daily update
    double news_weight = 0.5;      // pull of delivered news while forming beliefs
    double feed_weight = 0.3;      // pull of the feed's stance on the peer dim
    double override_tilt = 0.3;    // |tilt| at which beliefs alone drive trades
    double fundamental_z = 1.0;
    std::size_t valuation_window = 20;
    double ma_band = 0.005;
    double volume_confirm = 0.8;   // yesterday's volume vs its 5-day mean
    double contrarian_move = 0.01;
    double price_spread = 0.02;    // max limit offset from the previous close
    double post_probability = 0.3;
    double vote_probability = 0.5;
    double repost_probability = 0.1;
    double return_scale = 0.01;    // daily return that moves a dim most of the way
    double noise_probability = 0.1;  // chance of a liquidity trade when the rule is silent

    void validate() const;
};

/// Share of total assets one position may take, by underdiversification level (percent).
double position_cap_pct(Level underdiversification);
/// Probability of trading at all on a given day, by turnover level.
double activity_probability(Level turnover);

/// Trailing z-score of the last value; 0 when the window is degenerate.
double trailing_zscore(std::span<const double> values);

/// +1 above the band, -1 below, 0 inside: ma_5 vs ma_30 with a relative band.
int ma_regime(const exchange::DailyBar& bar, double band);

/// Shared machinery for the rule-based traders. Subclasses supply the
/// per-asset signal; the base adds belief override, disposition overlay,
/// sizing, pricing and the social behaviour.
class RulePolicy : public DecisionPolicy {
public:
    explicit RulePolicy(RuleParams params = {});

    BeliefState form_belief(const Observation& obs, const Persona& persona, const BeliefState& prior,
                            Rng& rng) override;
    DesireQuery generate_desires(const Observation& obs, const Persona& persona, const BeliefState& belief,
                                 Rng& rng) override;
    TradeIntention plan_intentions(const Observation& obs, const Persona& persona, const BeliefState& belief,
                                   const DesireQuery& desires, Rng& rng) override;
    SocialOutput social(const Observation& obs, const Persona& persona, const BeliefState& belief,
                        const TradeIntention& intention, Rng& rng) override;
    BeliefState update_belief(const Feedback& fb, const Persona& persona, const BeliefState& belief,
                              Rng& rng) override;

    [[nodiscard]] const RuleParams& params() const { return params_; }

    /// -1 sell, 0 hold, +1 buy, before belief override and disposition.
    [[nodiscard]] virtual int signal(const AssetView& view, const Persona& persona, const BeliefState& belief,
                                     const PortfolioView& pf) const = 0;

protected:
    [[nodiscard]] virtual bool belief_driven() const { return true; }
    [[nodiscard]] virtual bool applies_disposition() const { return true; }

    RuleParams params_;
};

/// Valuation rule: buys cheap P/B with an optimistic view, sells rich P/B with a pessimistic one.
class FundamentalRule : public RulePolicy {
public:
    using RulePolicy::RulePolicy;
    [[nodiscard]] std::string name() const override { return "rule-fundamental"; }
    [[nodiscard]] int signal(const AssetView& view, const Persona& persona, const BeliefState& belief,
                             const PortfolioView& pf) const override;
};

/// Momentum rule on the moving-average regime with volume confirmation.
class TechnicalRule : public RulePolicy {
public:
    using RulePolicy::RulePolicy;
    [[nodiscard]] std::string name() const override { return "rule-technical"; }
    [[nodiscard]] int signal(const AssetView& view, const Persona& persona, const BeliefState& belief,
                             const PortfolioView& pf) const override;
};

/// Fades yesterday's move. Ignores beliefs and the disposition overlay.
class ContrarianRule : public RulePolicy {
public:
    using RulePolicy::RulePolicy;
    [[nodiscard]] std::string name() const override { return "rule-contrarian"; }
    [[nodiscard]] int signal(const AssetView& view, const Persona& persona, const BeliefState& belief,
                             const PortfolioView& pf) const override;

protected:
    [[nodiscard]] bool belief_driven() const override { return false; }
    [[nodiscard]] bool applies_disposition() const override { return false; }
};

/// Holds every day; used for stub populations.
class HoldPolicy : public RulePolicy {
public:
    using RulePolicy::RulePolicy;
    [[nodiscard]] std::string name() const override { return "hold"; }
    TradeIntention plan_intentions(const Observation&, const Persona&, const BeliefState&, const DesireQuery&,
                                   Rng&) override {
        return {};
    }
    [[nodiscard]] int signal(const AssetView&, const Persona&, const BeliefState&,
                             const PortfolioView&) const override {
        return 0;
    }
};

/// Rule policy for a persona: its `policy` override if set, else its strategy.
/// Throws ConfigError for an unknown override.
PolicyPtr make_rule_policy(const Persona& persona, const RuleParams& params = {});

}  // namespace twinmarket::agents
