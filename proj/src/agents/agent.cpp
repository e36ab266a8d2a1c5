#include "twinmarket/agents/agent.hpp"

#include <algorithm>
#include <cmath>
#include <set>

#include "twinmarket/common/errors.hpp"

namespace twinmarket::agents {

const char* to_string(Action a) {
    switch (a) {
        case Action::buy: return "buy";
        case Action::sell: return "sell";
        case Action::hold: return "hold";
    }
    return "hold";
}

Action action_from_string(const std::string& s) {
    if (s == "buy") return Action::buy;
    if (s == "sell") return Action::sell;
    if (s == "hold") return Action::hold;
    throw SchemaViolation("action must be buy|sell|hold, got " + s);
}

bool TradeIntention::all_hold() const {
    for (const auto& i : items) {
        if (i.action != Action::hold) return false;
    }
    return true;
}

const char* to_string(Phase p) {
    switch (p) {
        case Phase::belief_formation: return "belief_formation";
        case Phase::desire_generation: return "desire_generation";
        case Phase::intention_planning: return "intention_planning";
        case Phase::action_execution: return "action_execution";
        case Phase::environment_response: return "environment_response";
        case Phase::belief_update: return "belief_update";
    }
    return "unknown";
}

std::vector<exchange::Order> intention_to_orders(AgentId agent, const TradeIntention& intention,
                                                 const PortfolioView& pf, const MarketView& market,
                                                 std::vector<std::string>& notes) {
    std::vector<exchange::Order> orders;
    std::set<AssetId> seen;
    Money cash_left = pf.cash;
    const double total = pf.total_value;

    for (const auto& it : intention.items) {
        if (it.action == Action::hold) continue;
        if (!seen.insert(it.asset).second) {
            notes.push_back("duplicate intention for " + it.asset + " ignored");
            continue;
        }
        auto mv = market.find(it.asset);
        if (mv == market.end() || mv->second.bars.empty()) {
            notes.push_back("no market data for " + it.asset);
            continue;
        }
        double pct = it.trading_position;
        if (!(pct >= 0.0) || !std::isfinite(pct)) {
            notes.push_back("negative trading position for " + it.asset + " set to 0");
            continue;
        }
        const double prev = mv->second.prev_close();
        const Money prev_m = Money::from_double(prev);
        Money price = it.target_price.value_or(prev_m);
        const auto band = exchange::price_band(prev_m);
        if (!band.contains(price)) {
            notes.push_back("target price for " + it.asset + " clamped into the daily band");
            price = band.clamp(price);
        }
        const double px = price.to_double();
        const std::int64_t held = pf.units(it.asset);

        if (it.action == Action::sell) {
            if (held <= 0) {
                notes.push_back("sell of " + it.asset + " without holdings dropped");
                continue;
            }
            const double share = total > 0.0 ? 100.0 * static_cast<double>(held) * prev / total : 0.0;
            if (pct > share + 1e-9) {
                notes.push_back("sell of " + it.asset + " clipped to holdings");
                pct = share;
            }
            auto units = static_cast<std::int64_t>(std::floor(pct / 100.0 * total / px + 1e-9));
            if (units > held) {
                notes.push_back("sell of " + it.asset + " clipped to holdings");
                units = held;
            }
            if (units <= 0) continue;
            orders.push_back({agent, it.asset, Side::sell, price, units, 0});
        } else {
            auto units = static_cast<std::int64_t>(std::floor(pct / 100.0 * total / px + 1e-9));
            const std::int64_t affordable = price.ticks() > 0 ? cash_left.ticks() / price.ticks() : 0;
            if (units > affordable) {
                notes.push_back("buy of " + it.asset + " clipped to available cash");
                units = affordable;
            }
            if (units <= 0) continue;
            cash_left -= price * units;
            orders.push_back({agent, it.asset, Side::buy, price, units, 0});
        }
    }
    return orders;
}

Agent::Agent(Persona persona, BeliefState belief, PolicyPtr policy)
    : persona_(std::move(persona)), belief_(std::move(belief)), policy_(std::move(policy)) {
    if (!policy_) throw InvalidSpec("agent needs a policy");
}

DayPlan Agent::plan(const Observation& obs, Rng& rng) {
    phases_.clear();
    response_notes_.clear();
    DayPlan plan;
    plan.day = obs.day;
    BeliefState formed = belief_;
    try {
        phases_.push_back(Phase::belief_formation);
        formed = policy_->form_belief(obs, persona_, belief_, rng);
        formed.clamp();
        phases_.push_back(Phase::desire_generation);
        plan.desires = policy_->generate_desires(obs, persona_, formed, rng);
        phases_.push_back(Phase::intention_planning);
        plan.intention = policy_->plan_intentions(obs, persona_, formed, plan.desires, rng);
        phases_.push_back(Phase::action_execution);
        if (obs.trading_day && obs.market) {
            plan.orders = intention_to_orders(persona_.agent_id, plan.intention, obs.portfolio, *obs.market, plan.notes);
        }
        plan.social = policy_->social(obs, persona_, formed, plan.intention, rng);
    } catch (const PolicyFailure& e) {
        plan.failure = e.what();
        plan.intention = {};
        plan.orders.clear();
        plan.social = {};
        // the remaining phases still run, with nothing to act on
        for (Phase p : {Phase::belief_formation, Phase::desire_generation, Phase::intention_planning,
                        Phase::action_execution}) {
            if (std::find(phases_.begin(), phases_.end(), p) == phases_.end()) phases_.push_back(p);
        }
    }
    belief_ = formed;
    return plan;
}

void Agent::respond(const Feedback& fb, Rng& rng) {
    phases_.push_back(Phase::environment_response);
    phases_.push_back(Phase::belief_update);
    try {
        BeliefState b = policy_->update_belief(fb, persona_, belief_, rng);
        b.clamp();
        belief_ = std::move(b);
    } catch (const PolicyFailure& e) {
        response_notes_.push_back(std::string("belief update failed: ") + e.what());
    }
}

CycleResult bdi_cycle(Agent& agent, const Observation& obs,
                      const std::function<Feedback(const DayPlan&)>& environment, Rng& rng) {
    CycleResult r;
    r.plan = agent.plan(obs, rng);
    agent.respond(environment(r.plan), rng);
    r.belief = agent.belief();
    r.phases = agent.phase_log();
    return r;
}

}  // namespace twinmarket::agents
