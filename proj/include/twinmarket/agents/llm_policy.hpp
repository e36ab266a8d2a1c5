#pragma once

#include <string>
#include <vector>

#include "twinmarket/agents/chat_client.hpp"
#include "twinmarket/agents/policy.hpp"
#include "twinmarket/agents/prompts.hpp"

namespace twinmarket::agents {

/// Removes a surrounding ``` fence (with optional language tag) and trims.
std::string strip_code_fence(const std::string& text);

/// Parsers for the structured replies. Each throws SchemaViolation.
DesireQuery parse_query_reply(const std::string& text);
std::vector<AssetId> parse_index_selection(const std::string& text);
std::vector<std::string> parse_data_query(const std::string& text);
TradeIntention parse_decision(const std::string& text, const std::vector<AssetId>& allowed);
PostDraft parse_post(const std::string& text);
/// Returns the narrative and five scores.
std::pair<std::string, std::array<double, kBeliefDims>> parse_belief_reply(const std::string& text);
/// "<action>Like</action>..." to an action kind; std::nullopt when no action is given.
std::optional<feed::ActionKind> parse_forum_action(const std::string& text);

/// Chat-backed policy following the prompt catalog. Keeps one conversation
/// per day, so each agent needs its own instance. Structured replies are
/// validated; a bad reply is retried once, after which the hook throws
/// PolicyFailure. Service errors also surface as PolicyFailure.
class LlmPolicy : public DecisionPolicy {
public:
    LlmPolicy(ChatClientPtr client, PromptCatalog catalog = PromptCatalog::defaults(), std::size_t max_forum_posts = 5);

    [[nodiscard]] std::string name() const override { return "llm"; }

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

    /// Count of replies that failed validation, including retried ones.
    [[nodiscard]] std::size_t schema_violations() const { return violations_; }

private:
    std::string ask(const std::string& prompt);
    template <class Parse>
    auto ask_structured(const std::string& prompt, Parse parse);

    ChatClientPtr client_;
    PromptCatalog catalog_;
    std::size_t max_forum_posts_;
    std::vector<ChatMessage> convo_;
    std::vector<feed::SocialAction> pending_actions_;
    std::size_t violations_ = 0;
};

}  // namespace twinmarket::agents
