#pragma once

#include <map>
#include <string>
#include <vector>

namespace twinmarket::agents {

struct PromptTemplate {
    std::string name;
    std::string text;  // {field} placeholders; "{{" and "}}" are literal braces
};

/// Named prompt templates used by the chat-backed policy:
/// system, identity, forum_check, news_analysis, news_query_initial,
/// news_query_formulation, belief_update, index_selection, data_query,
/// decision_step1, decision_step2, posting.
class PromptCatalog {
public:
    /// Built-in English templates.
    static PromptCatalog defaults();

    void set(PromptTemplate t);
    [[nodiscard]] bool contains(const std::string& name) const { return templates_.count(name) != 0; }
    /// Throws ConfigError for an unknown template.
    [[nodiscard]] const PromptTemplate& get(const std::string& name) const;
    [[nodiscard]] std::vector<std::string> names() const;

    /// Substitutes every placeholder. Throws ConfigError on a missing field.
    [[nodiscard]] std::string render(const std::string& name, const std::map<std::string, std::string>& fields) const;

private:
    std::map<std::string, PromptTemplate> templates_;
};

/// Placeholder names appearing in a template text, in first-seen order.
std::vector<std::string> placeholders(const std::string& text);

std::string render_text(const std::string& text, const std::map<std::string, std::string>& fields);

}  // namespace twinmarket::agents
