#pragma once

#include <memory>
#include <string>

#include "twinmarket/agents/persona.hpp"
#include "twinmarket/agents/types.hpp"
#include "twinmarket/common/rng.hpp"

namespace twinmarket::agents {

/// Decision maker behind one agent. The agent drives the phases in order;
/// each hook corresponds to one of them. Implementations may throw
/// PolicyFailure, which the agent turns into a hold for the day.
class DecisionPolicy {
public:
    virtual ~DecisionPolicy() = default;

    [[nodiscard]] virtual std::string name() const = 0;

    /// Belief formation from the morning's news and feed.
    virtual BeliefState form_belief(const Observation& obs, const Persona& persona, const BeliefState& prior,
                                    Rng& rng) = 0;
    /// Desire generation: what to look up.
    virtual DesireQuery generate_desires(const Observation& obs, const Persona& persona, const BeliefState& belief,
                                         Rng& rng) = 0;
    /// Intention planning: one entry per considered asset.
    virtual TradeIntention plan_intentions(const Observation& obs, const Persona& persona,
                                           const BeliefState& belief, const DesireQuery& desires, Rng& rng) = 0;
    /// Social part of action execution: votes, reposts and an optional post.
    virtual SocialOutput social(const Observation& obs, const Persona& persona, const BeliefState& belief,
                                const TradeIntention& intention, Rng& rng) = 0;
    /// Belief update after the environment responds.
    virtual BeliefState update_belief(const Feedback& fb, const Persona& persona, const BeliefState& belief,
                                      Rng& rng) = 0;
};

using PolicyPtr = std::shared_ptr<DecisionPolicy>;

}  // namespace twinmarket::agents
