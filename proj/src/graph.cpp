#include "amcp/graph.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <set>

#include "amcp/error.hpp"

namespace amcp {

std::int64_t DependencyGraph::total_weight() const {
    std::int64_t total = 0;
    for (const Edge& e : edges) total += e.weight;
    return total;
}

int DependencyGraph::index_of(const std::string& name) const {
    auto it = std::lower_bound(modules.begin(), modules.end(), name);
    if (it == modules.end() || *it != name) return -1;
    return static_cast<int>(it - modules.begin());
}

DependencyGraph build_graph(const std::vector<NamedEdge>& edge_list,
                            const std::vector<std::string>& declared_modules) {
    if (edge_list.empty() && declared_modules.empty()) throw Error("empty graph");

    std::set<std::string> names(declared_modules.begin(), declared_modules.end());
    for (const NamedEdge& e : edge_list) {
        if (e.source.empty() || e.target.empty()) throw Error("empty module name in edge list");
        if (e.weight < 1) throw Error("edge weight must be >= 1");
        names.insert(e.source);
        names.insert(e.target);
    }
    if (names.count("")) throw Error("empty module name");

    DependencyGraph g;
    g.modules.assign(names.begin(), names.end()); // std::set iterates sorted

    std::map<std::pair<int, int>, std::int64_t> merged;
    for (const NamedEdge& e : edge_list) {
        int s = g.index_of(e.source);
        int t = g.index_of(e.target);
        if (s == t) continue; // self-loop dropped
        merged[{s, t}] += e.weight;
    }
    g.edges.reserve(merged.size());
    for (const auto& [key, weight] : merged) g.edges.push_back({key.first, key.second, weight});
    return g;
}

} // namespace amcp
