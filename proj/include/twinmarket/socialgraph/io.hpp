#pragma once

#include <ostream>

#include "twinmarket/socialgraph/graph.hpp"

namespace twinmarket::socialgraph {

// Column headers; rows are appended once per simulation day.
inline constexpr const char* kEdgeHeader = "day,u,v,weight";
inline constexpr const char* kStatsHeader = "day,nodes,edges,density,avg_clustering,largest_component";
inline constexpr const char* kIntensityHeader = "day,user,industry,intensity";

void write_edges(std::ostream& os, Day day, const SocialGraph& g);
void write_stats(std::ostream& os, Day day, const GraphStats& s);
void write_intensities(std::ostream& os, Day day, const std::map<AgentId, IntensityVector>& vectors);

}  // namespace twinmarket::socialgraph
