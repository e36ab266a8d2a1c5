#include "twinmarket/socialgraph/io.hpp"

#include <cstdio>
#include <string>

namespace twinmarket::socialgraph {

namespace {

std::string fmt(double x) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.10g", x);
    return buf;
}

}  // namespace

void write_edges(std::ostream& os, Day day, const SocialGraph& g) {
    for (const auto& [u, v, w] : g.edges()) {
        os << day << ',' << u.value << ',' << v.value << ',' << fmt(w) << '\n';
    }
}

void write_stats(std::ostream& os, Day day, const GraphStats& s) {
    os << day << ',' << s.nodes << ',' << s.edges << ',' << fmt(s.density) << ',' << fmt(s.avg_clustering) << ','
       << s.largest_component << '\n';
}

void write_intensities(std::ostream& os, Day day, const std::map<AgentId, IntensityVector>& vectors) {
    for (const auto& [u, vec] : vectors) {
        for (const auto& [ind, w] : vec) os << day << ',' << u.value << ',' << ind << ',' << fmt(w) << '\n';
    }
}

}  // namespace twinmarket::socialgraph
