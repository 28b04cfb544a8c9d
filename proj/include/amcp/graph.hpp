#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace amcp {

struct Edge {
    int src = 0;
    int dst = 0;
    std::int64_t weight = 1;

    friend bool operator==(const Edge&, const Edge&) = default;
};

struct NamedEdge {
    std::string source;
    std::string target;
    std::int64_t weight = 1;
};

// Directed weighted module dependency graph (the DSM view of a system).
// Module indices are dense 0..n-1 in lexicographic name order; edges are
// unique (src,dst) pairs sorted by (src,dst), self-loops dropped at
// ingestion, weights >= 1.
struct DependencyGraph {
    std::vector<std::string> modules;
    std::vector<Edge> edges;

    int n() const { return static_cast<int>(modules.size()); }
    std::int64_t total_weight() const;

    // Index of a module name, -1 if absent.
    int index_of(const std::string& name) const;

    friend bool operator==(const DependencyGraph&, const DependencyGraph&) = default;
};

// Builds a graph from an edge list plus optionally declared (possibly
// isolated) modules. Duplicate (source,target) pairs are summed, self-loops
// dropped. Throws Error("empty graph") when there is nothing to build from.
DependencyGraph build_graph(const std::vector<NamedEdge>& edge_list,
                            const std::vector<std::string>& declared_modules = {});

} // namespace amcp
