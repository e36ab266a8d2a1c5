#include "twinmarket/agents/prompts.hpp"

#include <algorithm>

#include "twinmarket/common/errors.hpp"

namespace twinmarket::agents {

namespace {

const char* kSystem = R"(You act as a retail investor who trades industry indexes on a stock exchange with daily price limits.
Stay in character for every answer.

Persona:
- {persona}
- Strategy: {strategy}

Account:
- Followed industries: {followed}
- Holdings: {holdings_brief})";

const char* kIdentity = R"(Context for today.

- Date: {date} ({day_kind})
- Belief carried over from yesterday: {belief}

Account:
- Total assets: {total_value} thousand
- Cash: {cash} thousand
- Cumulative return: {return_rate}%

Positions:
{positions})";

const char* kForumCheck = R"({persona}

You are reading the forum. Decide whether to react to the post below, in line with your style.

Post {post_id}: {post_content}
Quoted original: {root_content}

Options:
- Repost: share it, optionally with a comment
- Unlike: you disagree or find it low quality
- Like: you find it useful

Answer exactly as:
<action>Like|Unlike|Repost</action><reason>one sentence</reason>)";

const char* kNewsAnalysis = R"(These headlines arrived this morning and are public. Give your first reaction as the investor you play.

Headlines:
{news})";

const char* kNewsQueryInitial = R"(You are watching these assets, some suggested by the platform:
{stock_details}

Date: {date}. Before trading, think about what news would help you. What kind of information matters to you today, and which topics do you want to dig into?)";

const char* kNewsQueryFormulation = R"(Turn those thoughts into search queries.

Reply in YAML only:
queries:   # list of concrete questions, most important first
  - ...
stock_id:  # optional list of codes
  - ...)";

const char* kBeliefUpdate = R"(Yesterday you believed:
{old_belief}

Today's outcome:
{outcome}

Write your updated belief in the first person, covering the market trend over the next month, valuation, the economy, the mood of other investors and your own recent performance.

Reply in YAML only:
belief: one paragraph
belief_scores:   # five numbers 0-10, 5 neutral: economy, valuation, trend, peers, self
  - 5
  - 5
  - 5
  - 5
  - 5)";

const char* kIndexSelection = R"(Using everything above, choose the indexes you might trade today from your holdings and the suggested list.

Holdings:
{holdings}

Followed industries: {followed}

Suggested indexes:
{recommended}

Current belief: {belief}

Reply in YAML only:
selected_index:   # codes only
  - ...
reason: one paragraph)";

const char* kDataQuery = R"(Date: {date}. Candidates: {selected}. Only data up to yesterday is available.

Yesterday's quotes:
{quotes}

Your positions in these:
{positions}

You are a {strategy} investor. Total return {return_rate}%, assets {total_value}, cash {cash}.

Available indicators:
{indicator_schema}

Pick only the indicators you need. Reply in YAML only:
indicators:
  - ...
start_date: 'YYYY-MM-DD'
end_date: 'YYYY-MM-DD'
reason: one paragraph)";

const char* kDecisionStep1 = R"(Time to decide. Analyse {selected} using everything gathered so far: the overall market, the news, each index's technicals and fundamentals with a buy/hold/sell view, and the main risks. Plain prose, stay in character.

Indicator data:
{indicator_data})";

const char* kDecisionStep2 = R"(Now give the final orders.

Remaining capacity: {available_position}% of total assets.

Per index:
{stock_info}

Rules:
1. target_price must lie between the index's lower and upper limit.
2. trading_position is the percent of total assets this trade uses and is never negative. Use 0 for hold.
3. A sell cannot exceed your current position. An index you do not hold can only be bought or held.

Example:
TLEI:
  action: sell
  trading_position: 8.0
  target_price: 99.5
CPEI:
  action: buy
  trading_position: 5.0
  target_price: 101.2

Reply in YAML only, using this skeleton:
{yaml_template})";

const char* kPosting = R"(Write a forum post based on today's news and your decisions.

Pick one type:
- type1: comment on a news item
- type2: recap of your latest trades
- type3: outlook

Keep it in character, 100-200 words.

Your earlier belief: {old_belief}
Also restate your belief in the first person covering trend, valuation, economy, sentiment and self-assessment.

Reply in YAML only:
post: text
type: type1|type2|type3
belief: text)";

}  // namespace

PromptCatalog PromptCatalog::defaults() {
    PromptCatalog c;
    c.set({"system", kSystem});
    c.set({"identity", kIdentity});
    c.set({"forum_check", kForumCheck});
    c.set({"news_analysis", kNewsAnalysis});
    c.set({"news_query_initial", kNewsQueryInitial});
    c.set({"news_query_formulation", kNewsQueryFormulation});
    c.set({"belief_update", kBeliefUpdate});
    c.set({"index_selection", kIndexSelection});
    c.set({"data_query", kDataQuery});
    c.set({"decision_step1", kDecisionStep1});
    c.set({"decision_step2", kDecisionStep2});
    c.set({"posting", kPosting});
    return c;
}

void PromptCatalog::set(PromptTemplate t) {
    auto name = t.name;
    templates_[name] = std::move(t);
}

const PromptTemplate& PromptCatalog::get(const std::string& name) const {
    auto it = templates_.find(name);
    if (it == templates_.end()) throw ConfigError("unknown prompt template " + name);
    return it->second;
}

std::vector<std::string> PromptCatalog::names() const {
    std::vector<std::string> out;
    for (const auto& [n, _] : templates_) out.push_back(n);
    return out;
}

std::string PromptCatalog::render(const std::string& name, const std::map<std::string, std::string>& fields) const {
    return render_text(get(name).text, fields);
}

std::vector<std::string> placeholders(const std::string& text) {
    std::vector<std::string> out;
    for (std::size_t i = 0; i < text.size(); ++i) {
        if (text[i] != '{') continue;
        if (i + 1 < text.size() && text[i + 1] == '{') {
            ++i;
            continue;
        }
        const auto close = text.find('}', i);
        if (close == std::string::npos) break;
        std::string key = text.substr(i + 1, close - i - 1);
        if (std::find(out.begin(), out.end(), key) == out.end()) out.push_back(key);
        i = close;
    }
    return out;
}

std::string render_text(const std::string& text, const std::map<std::string, std::string>& fields) {
    std::string out;
    out.reserve(text.size() * 2);
    for (std::size_t i = 0; i < text.size(); ++i) {
        const char c = text[i];
        if ((c == '{' || c == '}') && i + 1 < text.size() && text[i + 1] == c) {
            out += c;
            ++i;
            continue;
        }
        if (c != '{') {
            out += c;
            continue;
        }
        const auto close = text.find('}', i);
        if (close == std::string::npos) throw ConfigError("unterminated placeholder");
        const std::string key = text.substr(i + 1, close - i - 1);
        auto it = fields.find(key);
        if (it == fields.end()) throw ConfigError("missing prompt field " + key);
        out += it->second;
        i = close;
    }
    return out;
}

}  // namespace twinmarket::agents
