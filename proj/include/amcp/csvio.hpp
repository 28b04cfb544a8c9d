#pragma once

#include <filesystem>
#include <string>
#include <utility>
#include <vector>

#include "amcp/baseline.hpp"
#include "amcp/graph.hpp"
#include "amcp/negotiation.hpp"
#include "amcp/partition.hpp"
#include "amcp/sweep.hpp"

namespace amcp {

// All CSV files: UTF-8, LF line endings, one header line, '#' comment lines
// and blank lines ignored on input.

// Edge list, header "source,target,weight"; the weight column is optional
// on input and defaults to 1.
std::vector<NamedEdge> read_edge_csv(const std::filesystem::path& path);
void write_edge_csv(const std::filesystem::path& path, const DependencyGraph& graph);

// Partition file, header "module,cluster".
std::vector<std::pair<std::string, int>> read_partition_csv(const std::filesystem::path& path);
void write_partition_csv(const std::filesystem::path& path, const DependencyGraph& graph,
                         const Partition& partition);

// Matches partition rows against a graph's module set (must cover it
// exactly) and canonicalizes.
Partition partition_for_graph(const DependencyGraph& graph,
                              const std::vector<std::pair<std::string, int>>& rows);

// Negotiation/baseline trace, header
// "step,module,from_cluster,to_cluster,u_coh,u_sta,ratio,sw".
void write_trace_csv(const std::filesystem::path& path, const DependencyGraph& graph,
                     const std::vector<StepRecord>& trace);

// Sweep table, header "tau_sta,u_coh,u_sta,sw,steps,diverged".
void write_sweep_csv(const std::filesystem::path& path, const std::vector<SweepRow>& rows);

} // namespace amcp
