#include "twinmarket/agents/llm_policy.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <regex>

#include <yaml-cpp/yaml.h>

#include "twinmarket/common/errors.hpp"
#include "twinmarket/exchange/order.hpp"

namespace twinmarket::agents {

std::string strip_code_fence(const std::string& text) {
    static const std::regex fence(R"(^\s*```[A-Za-z0-9_-]*\s*\n([\s\S]*?)\n?\s*```\s*$)");
    std::smatch m;
    std::string body = std::regex_match(text, m, fence) ? m[1].str() : text;
    const auto first = body.find_first_not_of(" \t\r\n");
    const auto last = body.find_last_not_of(" \t\r\n");
    return first == std::string::npos ? std::string{} : body.substr(first, last - first + 1);
}

namespace {

YAML::Node load_yaml(const std::string& text) {
    try {
        YAML::Node n = YAML::Load(strip_code_fence(text));
        if (!n.IsMap()) throw SchemaViolation("reply is not a YAML mapping");
        return n;
    } catch (const YAML::Exception& e) {
        throw SchemaViolation(std::string("malformed YAML: ") + e.what());
    }
}

std::vector<std::string> string_list(const YAML::Node& n, const char* field, bool required) {
    std::vector<std::string> out;
    if (!n || n.IsNull()) {
        if (required) throw SchemaViolation(std::string(field) + " is required");
        return out;
    }
    if (!n.IsSequence()) throw SchemaViolation(std::string(field) + " must be a list");
    for (const auto& e : n) {
        if (!e.IsScalar()) throw SchemaViolation(std::string(field) + " entries must be strings");
        out.push_back(e.as<std::string>());
    }
    if (required && out.empty()) throw SchemaViolation(std::string(field) + " must not be empty");
    return out;
}

std::string fmt2(double x) {
    char buf[48];
    std::snprintf(buf, sizeof buf, "%.2f", x);
    return buf;
}

std::string holdings_lines(const Observation& obs, bool brief) {
    std::string s;
    for (const auto& [a, q] : obs.portfolio.holdings) {
        if (q <= 0) continue;
        const AssetView* v = obs.asset(a);
        s += "- " + a + ": " + std::to_string(q) + " units";
        if (!brief && v) {
            const double cost = obs.portfolio.cost_basis.count(a) ? obs.portfolio.cost_basis.at(a) : 0.0;
            s += ", cost " + fmt2(cost) + ", last " + fmt2(v->prev_close());
        }
        s += '\n';
    }
    return s.empty() ? "- none\n" : s;
}

std::string quote_line(const AssetView& v) {
    const auto& b = v.last();
    std::string s = "- " + v.asset + ": close " + fmt2(b.close) + " (" + fmt2(100.0 * b.pct_chg) + "%), vol " +
                    std::to_string(b.vol) + ", pb " + fmt2(v.valuation.pb);
    const auto band = exchange::price_band(Money::from_double(b.close));
    s += ", limits [" + fmt2(band.lower.to_double()) + ", " + fmt2(band.upper.to_double()) + "]";
    return s;
}

std::map<std::string, std::string> base_fields(const Observation& obs, const Persona& persona, const BeliefState& b) {
    std::string followed;
    for (const auto& f : persona.followed_industries) followed += (followed.empty() ? "" : ", ") + f;
    return {
        {"persona", persona.system_prompt},
        {"strategy", to_string(persona.strategy)},
        {"followed", followed.empty() ? "none" : followed},
        {"holdings_brief", holdings_lines(obs, true)},
        {"holdings", holdings_lines(obs, false)},
        {"positions", holdings_lines(obs, false)},
        {"date", obs.date.empty() ? "day " + std::to_string(obs.day) : obs.date},
        {"day_kind", obs.trading_day ? "Trading Day" : "Non-Trading Day"},
        {"belief", b.narrative.empty() ? "None" : b.narrative},
        {"old_belief", b.narrative.empty() ? "None" : b.narrative},
        {"total_value", fmt2(obs.portfolio.total_value / 1000.0)},
        {"cash", fmt2(obs.portfolio.cash.to_double() / 1000.0)},
        {"return_rate", fmt2(100.0 * obs.portfolio.return_rate())},
    };
}

const char* kIndicatorSchema =
    "close, pre_close, change, pct_chg, vol, amount, ma_5, ma_10, ma_30, vol_5, vol_10, vol_30, pe, pb, ps, dv";

}  // namespace

DesireQuery parse_query_reply(const std::string& text) {
    const YAML::Node n = load_yaml(text);
    DesireQuery q;
    q.queries = string_list(n["queries"], "queries", true);
    q.stock_ids = string_list(n["stock_id"], "stock_id", false);
    return q;
}

std::vector<AssetId> parse_index_selection(const std::string& text) {
    const YAML::Node n = load_yaml(text);
    return string_list(n["selected_index"], "selected_index", false);
}

std::vector<std::string> parse_data_query(const std::string& text) {
    const YAML::Node n = load_yaml(text);
    return string_list(n["indicators"], "indicators", false);
}

TradeIntention parse_decision(const std::string& text, const std::vector<AssetId>& allowed) {
    const YAML::Node n = load_yaml(text);
    TradeIntention out;
    for (const auto& kv : n) {
        const auto code = kv.first.as<std::string>();
        if (std::find(allowed.begin(), allowed.end(), code) == allowed.end()) {
            throw SchemaViolation("decision for an index not offered: " + code);
        }
        const YAML::Node d = kv.second;
        if (!d.IsMap() || !d["action"]) throw SchemaViolation("decision for " + code + " lacks an action");
        AssetIntention it;
        it.asset = code;
        it.action = action_from_string(d["action"].as<std::string>());
        try {
            if (d["trading_position"] && !d["trading_position"].IsNull()) {
                it.trading_position = d["trading_position"].as<double>();
            }
            if (d["target_price"] && !d["target_price"].IsNull()) {
                const double p = d["target_price"].as<double>();
                if (!(p > 0.0)) throw SchemaViolation("target_price must be positive for " + code);
                it.target_price = Money::from_double(p);
            }
        } catch (const YAML::Exception&) {
            throw SchemaViolation("non-numeric position or price for " + code);
        }
        if (!(it.trading_position >= 0.0) || !std::isfinite(it.trading_position)) {
            throw SchemaViolation("trading_position must be non-negative for " + code);
        }
        if (it.action == Action::hold) it.trading_position = 0.0;
        out.items.push_back(std::move(it));
    }
    return out;
}

PostDraft parse_post(const std::string& text) {
    const YAML::Node n = load_yaml(text);
    if (!n["post"] || !n["post"].IsScalar()) throw SchemaViolation("post is required");
    if (!n["type"] || !n["type"].IsScalar()) throw SchemaViolation("type is required");
    PostDraft d;
    d.content = n["post"].as<std::string>();
    d.post_type = feed::post_type_from_string(n["type"].as<std::string>());
    return d;
}

std::pair<std::string, std::array<double, kBeliefDims>> parse_belief_reply(const std::string& text) {
    const YAML::Node n = load_yaml(text);
    if (!n["belief"] || !n["belief"].IsScalar()) throw SchemaViolation("belief is required");
    const YAML::Node s = n["belief_scores"];
    if (!s || !s.IsSequence() || s.size() != kBeliefDims) throw SchemaViolation("belief_scores needs five numbers");
    std::array<double, kBeliefDims> scores{};
    try {
        for (std::size_t i = 0; i < kBeliefDims; ++i) scores[i] = std::clamp(s[i].as<double>(), 0.0, 10.0);
    } catch (const YAML::Exception&) {
        throw SchemaViolation("belief_scores must be numbers");
    }
    return {n["belief"].as<std::string>(), scores};
}

std::optional<feed::ActionKind> parse_forum_action(const std::string& text) {
    static const std::regex tag(R"(<action>\s*([A-Za-z]+)\s*</action>)", std::regex::icase);
    std::smatch m;
    if (!std::regex_search(text, m, tag)) return std::nullopt;
    std::string a = m[1].str();
    std::transform(a.begin(), a.end(), a.begin(), [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
    if (a == "like") return feed::ActionKind::like;
    if (a == "unlike") return feed::ActionKind::unlike;
    if (a == "repost") return feed::ActionKind::repost;
    return std::nullopt;
}

LlmPolicy::LlmPolicy(ChatClientPtr client, PromptCatalog catalog, std::size_t max_forum_posts)
    : client_(std::move(client)), catalog_(std::move(catalog)), max_forum_posts_(max_forum_posts) {
    if (!client_) throw ConfigError("chat policy needs a client");
}

std::string LlmPolicy::ask(const std::string& prompt) {
    convo_.push_back({"user", prompt});
    std::string reply;
    try {
        reply = client_->complete(convo_);
    } catch (const ServiceUnavailable& e) {
        convo_.pop_back();
        throw PolicyFailure(std::string("ServiceUnavailable: ") + e.what());
    }
    convo_.push_back({"assistant", reply});
    return reply;
}

template <class Parse>
auto LlmPolicy::ask_structured(const std::string& prompt, Parse parse) {
    std::string reply = ask(prompt);
    try {
        return parse(reply);
    } catch (const SchemaViolation& first) {
        ++violations_;
        reply = ask(std::string("That reply could not be parsed (") + first.what() +
                    "). Answer again using exactly the requested YAML format.");
        try {
            return parse(reply);
        } catch (const SchemaViolation& second) {
            ++violations_;
            throw PolicyFailure(std::string("SchemaViolation: ") + second.what());
        }
    }
}

BeliefState LlmPolicy::form_belief(const Observation& obs, const Persona& persona, const BeliefState& prior, Rng&) {
    const auto fields = base_fields(obs, persona, prior);
    convo_.clear();
    pending_actions_.clear();
    convo_.push_back({"system", catalog_.render("system", fields) + "\n\n" + catalog_.render("identity", fields)});

    for (std::size_t i = 0; i < obs.feed.size() && i < max_forum_posts_; ++i) {
        const auto& post = obs.feed[i];
        auto f = fields;
        f["post_id"] = std::to_string(post.post_id.value);
        f["post_content"] = post.content;
        f["root_content"] = post.root_content.empty() ? "none" : post.root_content;
        std::string reply;
        try {
            reply = client_->complete({{"user", catalog_.render("forum_check", f)}});
        } catch (const ServiceUnavailable& e) {
            throw PolicyFailure(std::string("ServiceUnavailable: ") + e.what());
        }
        if (auto kind = parse_forum_action(reply)) {
            pending_actions_.push_back({persona.agent_id, *kind, post.post_id, *kind == feed::ActionKind::repost ? reply : ""});
        }
    }

    if (!obs.news.empty()) {
        std::string list;
        for (const auto& n : obs.news) list += "- " + n.content + "\n";
        auto f = fields;
        f["news"] = list;
        ask(catalog_.render("news_analysis", f));
    }
    BeliefState b = prior;
    b.last_updated = obs.day;
    return b;
}

DesireQuery LlmPolicy::generate_desires(const Observation& obs, const Persona& persona, const BeliefState& belief,
                                        Rng&) {
    auto f = base_fields(obs, persona, belief);
    std::string details;
    std::vector<AssetId> watched(persona.followed_industries.begin(), persona.followed_industries.end());
    for (const auto& [a, q] : obs.portfolio.holdings) {
        if (q > 0) watched.push_back(a);
    }
    watched.insert(watched.end(), obs.recommendations.begin(), obs.recommendations.end());
    std::sort(watched.begin(), watched.end());
    watched.erase(std::unique(watched.begin(), watched.end()), watched.end());
    for (const auto& a : watched) {
        if (const AssetView* v = obs.asset(a)) details += quote_line(*v) + "\n";
    }
    f["stock_details"] = details.empty() ? "- none\n" : details;
    ask(catalog_.render("news_query_initial", f));
    return ask_structured(catalog_.render("news_query_formulation", f), parse_query_reply);
}

TradeIntention LlmPolicy::plan_intentions(const Observation& obs, const Persona& persona, const BeliefState& belief,
                                          const DesireQuery&, Rng&) {
    if (!obs.trading_day) return {};
    auto f = base_fields(obs, persona, belief);
    std::string rec;
    for (const auto& a : obs.recommendations) {
        if (const AssetView* v = obs.asset(a)) rec += quote_line(*v) + "\n";
    }
    f["recommended"] = rec.empty() ? "- none\n" : rec;

    std::vector<AssetId> selected;
    for (const auto& code : ask_structured(catalog_.render("index_selection", f), parse_index_selection)) {
        if (obs.asset(code) && std::find(selected.begin(), selected.end(), code) == selected.end()) {
            selected.push_back(code);
        }
    }
    if (selected.empty()) return {};

    std::string sel;
    std::string quotes;
    for (const auto& a : selected) {
        sel += (sel.empty() ? "" : ", ") + a;
        quotes += quote_line(*obs.asset(a)) + "\n";
    }
    f["selected"] = sel;
    f["quotes"] = quotes;
    f["indicator_schema"] = kIndicatorSchema;
    const auto indicators = ask_structured(catalog_.render("data_query", f), parse_data_query);

    std::string data;
    for (const auto& a : selected) {
        const AssetView& v = *obs.asset(a);
        const auto& b = v.last();
        data += "- " + a + ":";
        for (const auto& ind : indicators) {
            double x = 0.0;
            bool known = true;
            if (ind == "close") x = b.close;
            else if (ind == "pre_close") x = b.pre_close;
            else if (ind == "change") x = b.change;
            else if (ind == "pct_chg") x = 100.0 * b.pct_chg;
            else if (ind == "vol") x = static_cast<double>(b.vol);
            else if (ind == "amount") x = b.amount;
            else if (ind == "ma_5") x = b.ma_5;
            else if (ind == "ma_10") x = b.ma_10;
            else if (ind == "ma_30") x = b.ma_30;
            else if (ind == "vol_5") x = b.vol_5;
            else if (ind == "vol_10") x = b.vol_10;
            else if (ind == "vol_30") x = b.vol_30;
            else if (ind == "pb") x = v.valuation.pb;
            else if (ind == "ps") x = v.valuation.ps;
            else if (ind == "dv") x = v.valuation.dv;
            else if (ind == "pe" && v.valuation.pe) x = *v.valuation.pe;
            else known = false;
            data += " " + ind + "=" + (known ? fmt2(x) : std::string("n/a"));
        }
        data += "\n";
    }
    f["indicator_data"] = data;
    ask(catalog_.render("decision_step1", f));

    double invested = 0.0;
    std::string info;
    std::string skeleton;
    for (const auto& a : selected) {
        const AssetView& v = *obs.asset(a);
        const std::int64_t q = obs.portfolio.units(a);
        const double share = obs.portfolio.total_value > 0.0
                                 ? 100.0 * static_cast<double>(q) * v.prev_close() / obs.portfolio.total_value
                                 : 0.0;
        invested += share;
        info += quote_line(v) + ", your position " + fmt2(share) + "%\n";
        skeleton += a + ":\n  action: buy|sell|hold\n  trading_position: 0\n  target_price: 0\n";
    }
    f["available_position"] = fmt2(std::max(0.0, 100.0 - invested));
    f["stock_info"] = info;
    f["yaml_template"] = skeleton;
    return ask_structured(catalog_.render("decision_step2", f),
                          [&](const std::string& t) { return parse_decision(t, selected); });
}

SocialOutput LlmPolicy::social(const Observation& obs, const Persona& persona, const BeliefState& belief,
                               const TradeIntention&, Rng&) {
    SocialOutput out;
    out.actions = pending_actions_;
    pending_actions_.clear();
    const auto f = base_fields(obs, persona, belief);
    PostDraft d = ask_structured(catalog_.render("posting", f), parse_post);
    d.stance = std::clamp(belief.tilt(), -1.0, 1.0);
    out.post = d;
    return out;
}

BeliefState LlmPolicy::update_belief(const Feedback& fb, const Persona&, const BeliefState& belief, Rng&) {
    std::string outcome;
    for (const auto& t : fb.trades) {
        outcome += "- traded " + std::to_string(t.quantity) + " " + t.asset_id + " at " + fmt2(t.price.to_double()) + "\n";
    }
    for (const auto& [a, r] : fb.pct_change) outcome += "- " + a + " moved " + fmt2(100.0 * r) + "%\n";
    if (fb.prior_total_value > 0.0) {
        outcome += "- your assets changed " + fmt2(100.0 * (fb.portfolio.total_value / fb.prior_total_value - 1.0)) + "%\n";
    }
    std::map<std::string, std::string> f{{"old_belief", belief.narrative.empty() ? "None" : belief.narrative},
                                         {"outcome", outcome.empty() ? "- no market activity\n" : outcome}};
    const auto [narrative, scores] = ask_structured(catalog_.render("belief_update", f), parse_belief_reply);
    BeliefState b = belief;
    b.dims = scores;
    b.narrative = narrative;
    b.last_updated = fb.day;
    b.clamp();
    return b;
}

}  // namespace twinmarket::agents
