#pragma once

#include <map>
#include <optional>
#include <set>
#include <span>
#include <tuple>
#include <utility>
#include <vector>

#include "twinmarket/common/ids.hpp"

namespace twinmarket::socialgraph {

struct TradeRecord {
    AgentId user_id;
    AssetId industry;
    Day day = 0;
    Side direction = Side::buy;
    std::int64_t volume = 0;

    friend bool operator==(const TradeRecord&, const TradeRecord&) = default;
};

struct GraphParams {
    double lambda = 0.5;  // decay per trading day
    double tau = 0.2;     // strict similarity threshold

    void validate() const;
};

/// industry -> time-decayed trading intensity
using IntensityVector = std::map<AssetId, double>;

/// Sum over the user's records in `industry` of exp(-lambda * (now - day)).
/// Throws InvalidSpec if a matching record lies after `now`.
double trading_intensity(AgentId user, const AssetId& industry, std::span<const TradeRecord> records, Day now,
                         double lambda);

/// All users' intensity vectors in one pass. Users without records map to an empty vector.
std::map<AgentId, IntensityVector> intensity_vectors(std::span<const TradeRecord> records,
                                                     std::span<const AgentId> users, Day now, double lambda);

/// Generalized Jaccard: sum of minima over sum of maxima; 0 when both are all-zero.
double similarity(const IntensityVector& u, const IntensityVector& v);

/// Undirected weighted graph without self-loops. Nodes are kept sorted.
class SocialGraph {
public:
    SocialGraph() = default;
    explicit SocialGraph(std::span<const AgentId> nodes);

    void add_node(AgentId u);
    /// Inserts or overwrites; throws InvalidSpec on a self-loop, UnknownUser if an endpoint is missing.
    void add_edge(AgentId u, AgentId v, double weight);

    [[nodiscard]] bool has_node(AgentId u) const { return adj_.count(u) != 0; }
    [[nodiscard]] std::optional<double> weight(AgentId u, AgentId v) const;
    [[nodiscard]] std::vector<AgentId> nodes() const;
    [[nodiscard]] std::size_t node_count() const { return adj_.size(); }
    [[nodiscard]] std::size_t edge_count() const { return edge_count_; }
    [[nodiscard]] std::size_t degree(AgentId u) const;
    /// Neighbor -> weight. Throws UnknownUser.
    [[nodiscard]] const std::map<AgentId, double>& adjacent(AgentId u) const;

    /// Each undirected edge once, with u < v, in (u, v) order.
    [[nodiscard]] std::vector<std::tuple<AgentId, AgentId, double>> edges() const;

    friend bool operator==(const SocialGraph&, const SocialGraph&) = default;

private:
    std::map<AgentId, std::map<AgentId, double>> adj_;
    std::size_t edge_count_ = 0;
};

/// Rebuilds the graph from scratch: edge (u, v) iff similarity > tau.
SocialGraph build_graph(std::span<const TradeRecord> records, std::span<const AgentId> users, Day now,
                        const GraphParams& params);
/// Same, with the user set taken from the records.
SocialGraph build_graph(std::span<const TradeRecord> records, Day now, const GraphParams& params);

/// Neighbors with weight strictly above tau, by weight descending then id.
std::vector<std::pair<AgentId, double>> neighbors(const SocialGraph& g, AgentId user, double tau);

/// degree / (n - 1); all zeros when n <= 1.
std::map<AgentId, double> degree_centrality(const SocialGraph& g);

struct GraphStats {
    std::size_t nodes = 0;
    std::size_t edges = 0;
    double density = 0.0;
    double avg_clustering = 0.0;  // unweighted local clustering, nodes of degree < 2 count as 0
    std::size_t largest_component = 0;
};

GraphStats graph_stats(const SocialGraph& g);

}  // namespace twinmarket::socialgraph
