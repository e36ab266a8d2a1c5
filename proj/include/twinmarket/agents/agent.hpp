#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "twinmarket/agents/policy.hpp"

namespace twinmarket::agents {

enum class Phase {
    belief_formation,
    desire_generation,
    intention_planning,
    action_execution,
    environment_response,
    belief_update,
};

const char* to_string(Phase p);

struct DayPlan {
    Day day = 0;
    DesireQuery desires;
    TradeIntention intention;
    std::vector<exchange::Order> orders;  // seq left at 0; the orchestrator assigns it
    SocialOutput social;
    std::vector<std::string> notes;       // clipping and degradation messages
    std::optional<std::string> failure;   // set when the policy failed and the agent held
};

/// Turns percent-of-assets intentions into whole-unit limit orders.
///
/// Hold entries and zero-unit results are dropped. Targets default to the
/// previous close and are clamped into the daily band. Sells are clipped to
/// holdings and buys to the cash left after earlier buys; every adjustment
/// is recorded in `notes`.
std::vector<exchange::Order> intention_to_orders(AgentId agent, const TradeIntention& intention,
                                                 const PortfolioView& pf, const MarketView& market,
                                                 std::vector<std::string>& notes);

/// One investor: persona, private beliefs and a decision policy.
///
/// plan() runs belief formation through action execution against the
/// day-start snapshot; respond() runs the environment response and belief
/// update once the auction has settled. A PolicyFailure in any hook turns
/// the day into a hold and is reported in the plan or the notes.
class Agent {
public:
    Agent(Persona persona, BeliefState belief, PolicyPtr policy);

    DayPlan plan(const Observation& obs, Rng& rng);
    void respond(const Feedback& fb, Rng& rng);

    [[nodiscard]] const Persona& persona() const { return persona_; }
    [[nodiscard]] AgentId id() const { return persona_.agent_id; }
    [[nodiscard]] const BeliefState& belief() const { return belief_; }
    [[nodiscard]] const DecisionPolicy& policy() const { return *policy_; }
    /// Phases run since the last plan() call, in order.
    [[nodiscard]] const std::vector<Phase>& phase_log() const { return phases_; }
    [[nodiscard]] const std::vector<std::string>& response_notes() const { return response_notes_; }

    void set_belief(BeliefState b) { belief_ = std::move(b); }

private:
    Persona persona_;
    BeliefState belief_;
    PolicyPtr policy_;
    std::vector<Phase> phases_;
    std::vector<std::string> response_notes_;
};

struct CycleResult {
    DayPlan plan;
    BeliefState belief;
    std::vector<Phase> phases;
};

/// Full six-phase cycle for a single agent with `environment` standing in
/// for the market between planning and the belief update.
CycleResult bdi_cycle(Agent& agent, const Observation& obs,
                      const std::function<Feedback(const DayPlan&)>& environment, Rng& rng);

}  // namespace twinmarket::agents
