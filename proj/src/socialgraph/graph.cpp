#include "twinmarket/socialgraph/graph.hpp"

#include <algorithm>
#include <cmath>
#include <queue>

#include "twinmarket/common/errors.hpp"

namespace twinmarket::socialgraph {

void GraphParams::validate() const {
    if (!(lambda > 0.0)) throw InvalidSpec("lambda must be positive");
    if (!(tau >= 0.0 && tau <= 1.0)) throw InvalidSpec("tau must lie in [0, 1]");
}

double trading_intensity(AgentId user, const AssetId& industry, std::span<const TradeRecord> records, Day now,
                         double lambda) {
    double w = 0.0;
    for (const auto& r : records) {
        if (r.user_id != user || r.industry != industry) continue;
        if (r.day > now) throw InvalidSpec("trade record lies after the evaluation day");
        w += std::exp(-lambda * static_cast<double>(now - r.day));
    }
    return w;
}

std::map<AgentId, IntensityVector> intensity_vectors(std::span<const TradeRecord> records,
                                                     std::span<const AgentId> users, Day now, double lambda) {
    std::map<AgentId, IntensityVector> out;
    for (AgentId u : users) out[u];
    for (const auto& r : records) {
        auto it = out.find(r.user_id);
        if (it == out.end()) continue;
        if (r.day > now) throw InvalidSpec("trade record lies after the evaluation day");
        it->second[r.industry] += std::exp(-lambda * static_cast<double>(now - r.day));
    }
    return out;
}

double similarity(const IntensityVector& u, const IntensityVector& v) {
    double num = 0.0;
    double den = 0.0;
    auto a = u.begin();
    auto b = v.begin();
    // merge over the sorted keys; a missing key is weight 0
    while (a != u.end() || b != v.end()) {
        if (b == v.end() || (a != u.end() && a->first < b->first)) {
            den += a->second;
            ++a;
        } else if (a == u.end() || b->first < a->first) {
            den += b->second;
            ++b;
        } else {
            num += std::min(a->second, b->second);
            den += std::max(a->second, b->second);
            ++a;
            ++b;
        }
    }
    return den > 0.0 ? num / den : 0.0;
}

SocialGraph::SocialGraph(std::span<const AgentId> nodes) {
    for (AgentId u : nodes) add_node(u);
}

void SocialGraph::add_node(AgentId u) { adj_[u]; }

void SocialGraph::add_edge(AgentId u, AgentId v, double weight) {
    if (u == v) throw InvalidSpec("self-loop");
    if (!has_node(u) || !has_node(v)) throw UnknownUser("edge endpoint not in graph");
    auto [it, inserted] = adj_[u].insert_or_assign(v, weight);
    adj_[v][u] = weight;
    if (inserted) ++edge_count_;
}

std::optional<double> SocialGraph::weight(AgentId u, AgentId v) const {
    auto it = adj_.find(u);
    if (it == adj_.end()) return std::nullopt;
    auto jt = it->second.find(v);
    if (jt == it->second.end()) return std::nullopt;
    return jt->second;
}

std::vector<AgentId> SocialGraph::nodes() const {
    std::vector<AgentId> out;
    out.reserve(adj_.size());
    for (const auto& [u, _] : adj_) out.push_back(u);
    return out;
}

std::size_t SocialGraph::degree(AgentId u) const { return adjacent(u).size(); }

const std::map<AgentId, double>& SocialGraph::adjacent(AgentId u) const {
    auto it = adj_.find(u);
    if (it == adj_.end()) throw UnknownUser("unknown user " + std::to_string(u.value));
    return it->second;
}

std::vector<std::tuple<AgentId, AgentId, double>> SocialGraph::edges() const {
    std::vector<std::tuple<AgentId, AgentId, double>> out;
    out.reserve(edge_count_);
    for (const auto& [u, nb] : adj_) {
        for (const auto& [v, w] : nb) {
            if (u < v) out.emplace_back(u, v, w);
        }
    }
    return out;
}

SocialGraph build_graph(std::span<const TradeRecord> records, std::span<const AgentId> users, Day now,
                        const GraphParams& params) {
    params.validate();
    const auto vectors = intensity_vectors(records, users, now, params.lambda);
    std::vector<std::pair<AgentId, const IntensityVector*>> flat;
    flat.reserve(vectors.size());
    for (const auto& [u, vec] : vectors) flat.emplace_back(u, &vec);

    SocialGraph g(std::vector<AgentId>(users.begin(), users.end()));
    for (std::size_t i = 0; i < flat.size(); ++i) {
        if (flat[i].second->empty()) continue;
        for (std::size_t j = i + 1; j < flat.size(); ++j) {
            if (flat[j].second->empty()) continue;
            const double s = similarity(*flat[i].second, *flat[j].second);
            if (s > params.tau) g.add_edge(flat[i].first, flat[j].first, s);
        }
    }
    return g;
}

SocialGraph build_graph(std::span<const TradeRecord> records, Day now, const GraphParams& params) {
    std::set<AgentId> users;
    for (const auto& r : records) users.insert(r.user_id);
    const std::vector<AgentId> list(users.begin(), users.end());
    return build_graph(records, list, now, params);
}

std::vector<std::pair<AgentId, double>> neighbors(const SocialGraph& g, AgentId user, double tau) {
    std::vector<std::pair<AgentId, double>> out;
    for (const auto& [v, w] : g.adjacent(user)) {
        if (w > tau) out.emplace_back(v, w);
    }
    std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) {
        if (a.second != b.second) return a.second > b.second;
        return a.first < b.first;
    });
    return out;
}

std::map<AgentId, double> degree_centrality(const SocialGraph& g) {
    std::map<AgentId, double> out;
    const std::size_t n = g.node_count();
    for (AgentId u : g.nodes()) {
        out[u] = n <= 1 ? 0.0 : static_cast<double>(g.degree(u)) / static_cast<double>(n - 1);
    }
    return out;
}

GraphStats graph_stats(const SocialGraph& g) {
    GraphStats s;
    s.nodes = g.node_count();
    s.edges = g.edge_count();
    if (s.nodes == 0) return s;
    if (s.nodes > 1) {
        s.density = 2.0 * static_cast<double>(s.edges) / (static_cast<double>(s.nodes) * (s.nodes - 1));
    }

    double clustering_sum = 0.0;
    for (AgentId u : g.nodes()) {
        const auto& nb = g.adjacent(u);
        const std::size_t k = nb.size();
        if (k < 2) continue;
        std::size_t links = 0;
        for (auto a = nb.begin(); a != nb.end(); ++a) {
            const auto& na = g.adjacent(a->first);
            for (auto b = std::next(a); b != nb.end(); ++b) {
                if (na.count(b->first)) ++links;
            }
        }
        clustering_sum += 2.0 * static_cast<double>(links) / (static_cast<double>(k) * (k - 1));
    }
    s.avg_clustering = clustering_sum / static_cast<double>(s.nodes);

    std::set<AgentId> seen;
    for (AgentId start : g.nodes()) {
        if (seen.count(start)) continue;
        std::size_t size = 0;
        std::queue<AgentId> q;
        q.push(start);
        seen.insert(start);
        while (!q.empty()) {
            AgentId u = q.front();
            q.pop();
            ++size;
            for (const auto& [v, _] : g.adjacent(u)) {
                if (seen.insert(v).second) q.push(v);
            }
        }
        s.largest_component = std::max(s.largest_component, size);
    }
    return s;
}

}  // namespace twinmarket::socialgraph
