#pragma once

#include <cstdint>
#include <vector>

#include "amcp/graph.hpp"
#include "amcp/partition.hpp"

namespace amcp {

// Intra-cluster totals mu[i] and ordered inter-cluster totals eps[i][j].
// Sum of all entries equals the graph's total edge weight.
struct ClusterFlows {
    std::vector<std::int64_t> mu;
    std::vector<std::vector<std::int64_t>> eps; // k x k, diagonal zero
};

ClusterFlows cluster_flows(const DependencyGraph& graph, const Partition& partition);

// TurboMQ(D) = sum_i mu_i / (mu_i + 0.5 * sum_{j!=i} (eps_ij + eps_ji)).
// A cluster with no incident weight at all contributes 0 (0/0 -> 0).
double turbomq(const DependencyGraph& graph, const Partition& partition);

// Cohesion utility: TurboMQ / k, in [0,1].
double u_coh(const DependencyGraph& graph, const Partition& partition);

// Direction of the Move-plus-Join distance. mno(A,B) transforms A into B;
// the classic MoJo is the symmetric min of both directions.
enum class MojoMode { symmetric, a_to_b, b_to_a };

// Exact MoJo. One-way mno(A,B) is computed by optimal cluster tagging:
// every cluster of A is assigned one of its maximum-overlap groups of B
// (minimizing moves at n - sum_i max_j |A_i ∩ B_j|), and joins are
// minimized by maximizing the number of distinct tags, a maximum bipartite
// matching over the max-overlap candidate edges:
//   mno(A,B) = (n - sum_i M_i) + (l - matching_size).
int mojo(const Partition& a, const Partition& b, MojoMode mode = MojoMode::symmetric);

// Independent oracle: breadth-first search over the whole partition space,
// one edge per Move (to existing or fresh cluster) or Join. Guarded to
// n <= 6; throws Error("oracle limit") above that.
int mojo_bruteforce(const Partition& a, const Partition& b, MojoMode mode = MojoMode::symmetric);

// Stability utility: 1 - MoJo(candidate, previous) / n_common. Both
// partitions must already be restricted to the common module set.
double u_sta(const Partition& candidate, const Partition& previous, int n_common,
             MojoMode mode = MojoMode::symmetric);

// SW = U_coh + U_sta.
double social_welfare(double u_coh_value, double u_sta_value);

struct MetricsBundle {
    double turbomq = 0.0;
    double u_coh = 0.0;
    double u_sta = 0.0;
    double sw = 0.0;
    int mojo = 0;
};

// Full bundle for a candidate partition of the current version, judged
// against the previous decomposition on the common restriction.
MetricsBundle evaluate_metrics(const DependencyGraph& graph, const Partition& partition,
                               const Partition& previous, const CommonRestriction& restriction,
                               MojoMode mode = MojoMode::symmetric);

} // namespace amcp
