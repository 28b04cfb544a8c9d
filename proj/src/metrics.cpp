#include "amcp/metrics.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <numeric>

#include "amcp/error.hpp"

namespace amcp {

namespace {

void check_sizes(const DependencyGraph& graph, const Partition& partition) {
    if (graph.n() != partition.n()) throw Error("size mismatch between graph and partition");
}

// One-way Move-plus-Join distance mno(a -> b) by optimal tagging.
//
// Assigning cluster A_i the tag j means A_i ends up inside group B_j. For a
// tag assignment T the cost is
//   moves = n - sum_i |A_i ∩ B_T(i)|      (members outside the group leave)
//   joins = l - |distinct tags|           (same-tag clusters are merged)
// Re-tagging one cluster lowers the overlap sum by at least as much as it
// can raise the distinct count, so some optimum tags every cluster with a
// maximum-overlap group; among those, joins are minimized by giving as many
// clusters as possible distinct tags, a maximum bipartite matching over the
// max-overlap candidate edges.
int mno_directed(const Partition& a, const Partition& b) {
    const int n = a.n();
    const int l = a.k;
    const int m = b.k;
    if (n == 0) return 0;

    std::vector<std::vector<int>> overlap(l, std::vector<int>(m, 0));
    for (int i = 0; i < n; ++i) ++overlap[a.assignment[i]][b.assignment[i]];

    long long overlap_sum = 0;
    std::vector<std::vector<int>> candidates(l);
    for (int i = 0; i < l; ++i) {
        int best = *std::max_element(overlap[i].begin(), overlap[i].end());
        overlap_sum += best;
        for (int j = 0; j < m; ++j)
            if (overlap[i][j] == best) candidates[i].push_back(j);
    }

    // Kuhn's matching, clusters of a against groups of b.
    std::vector<int> group_match(m, -1);
    std::vector<char> visited(m, 0);
    auto augment = [&](auto&& self, int i) -> bool {
        for (int j : candidates[i]) {
            if (visited[j]) continue;
            visited[j] = 1;
            if (group_match[j] < 0 || self(self, group_match[j])) {
                group_match[j] = i;
                return true;
            }
        }
        return false;
    };
    int matched = 0;
    for (int i = 0; i < l; ++i) {
        std::fill(visited.begin(), visited.end(), 0);
        if (augment(augment, i)) ++matched;
    }

    return static_cast<int>(n - overlap_sum) + (l - matched);
}

} // namespace

ClusterFlows cluster_flows(const DependencyGraph& graph, const Partition& partition) {
    check_sizes(graph, partition);
    ClusterFlows flows;
    flows.mu.assign(partition.k, 0);
    flows.eps.assign(partition.k, std::vector<std::int64_t>(partition.k, 0));
    for (const Edge& e : graph.edges) {
        int cs = partition.assignment[e.src];
        int ct = partition.assignment[e.dst];
        if (cs == ct)
            flows.mu[cs] += e.weight;
        else
            flows.eps[cs][ct] += e.weight;
    }
    return flows;
}

double turbomq(const DependencyGraph& graph, const Partition& partition) {
    check_sizes(graph, partition);
    std::vector<std::int64_t> mu(partition.k, 0);
    std::vector<std::int64_t> inter(partition.k, 0); // sum_j (eps_ij + eps_ji)
    for (const Edge& e : graph.edges) {
        int cs = partition.assignment[e.src];
        int ct = partition.assignment[e.dst];
        if (cs == ct) {
            mu[cs] += e.weight;
        } else {
            inter[cs] += e.weight;
            inter[ct] += e.weight;
        }
    }
    double total = 0.0;
    for (int i = 0; i < partition.k; ++i) {
        if (mu[i] == 0) continue; // covers the 0/0 cluster as well
        total += static_cast<double>(mu[i]) / (static_cast<double>(mu[i]) + 0.5 * static_cast<double>(inter[i]));
    }
    return total;
}

double u_coh(const DependencyGraph& graph, const Partition& partition) {
    if (partition.k == 0) return 0.0;
    return turbomq(graph, partition) / partition.k;
}

int mojo(const Partition& a, const Partition& b, MojoMode mode) {
    if (a.n() != b.n()) throw Error("module-set mismatch between partitions");
    switch (mode) {
    case MojoMode::a_to_b: return mno_directed(a, b);
    case MojoMode::b_to_a: return mno_directed(b, a);
    case MojoMode::symmetric: break;
    }
    return std::min(mno_directed(a, b), mno_directed(b, a));
}

namespace {

// All Move/Join successors of a canonical partition.
std::vector<Partition> edit_neighbors(const Partition& p) {
    std::vector<Partition> out;
    const int n = p.n();
    // Moves, to every other existing cluster and to a fresh one.
    for (int m = 0; m < n; ++m) {
        for (int target = 0; target <= p.k; ++target) {
            if (target == p.assignment[m]) continue;
            std::vector<int> labels = p.assignment;
            labels[m] = target;
            out.push_back(make_partition(labels));
        }
    }
    // Joins.
    for (int c1 = 0; c1 < p.k; ++c1)
        for (int c2 = c1 + 1; c2 < p.k; ++c2) {
            std::vector<int> labels = p.assignment;
            for (int& label : labels)
                if (label == c2) label = c1;
            out.push_back(make_partition(labels));
        }
    return out;
}

int bfs_edit_distance(const Partition& start, const Partition& goal) {
    if (start == goal) return 0;
    std::map<std::vector<int>, int> dist;
    dist[start.assignment] = 0;
    std::deque<Partition> queue{start};
    while (!queue.empty()) {
        Partition cur = std::move(queue.front());
        queue.pop_front();
        int d = dist[cur.assignment];
        for (Partition& next : edit_neighbors(cur)) {
            if (dist.count(next.assignment)) continue;
            if (next == goal) return d + 1;
            dist[next.assignment] = d + 1;
            queue.push_back(std::move(next));
        }
    }
    throw Error("edit distance search exhausted"); // unreachable: space is connected
}

} // namespace

int mojo_bruteforce(const Partition& a, const Partition& b, MojoMode mode) {
    if (a.n() != b.n()) throw Error("module-set mismatch between partitions");
    if (a.n() > 6) throw Error("oracle limit");
    switch (mode) {
    case MojoMode::a_to_b: return bfs_edit_distance(a, b);
    case MojoMode::b_to_a: return bfs_edit_distance(b, a);
    case MojoMode::symmetric: break;
    }
    return std::min(bfs_edit_distance(a, b), bfs_edit_distance(b, a));
}

double u_sta(const Partition& candidate, const Partition& previous, int n_common, MojoMode mode) {
    if (n_common <= 0) throw Error("no common modules");
    if (candidate.n() != n_common || previous.n() != n_common)
        throw Error("partitions not restricted to the common module set");
    return 1.0 - static_cast<double>(mojo(candidate, previous, mode)) / n_common;
}

double social_welfare(double u_coh_value, double u_sta_value) {
    return u_coh_value + u_sta_value;
}

MetricsBundle evaluate_metrics(const DependencyGraph& graph, const Partition& partition,
                               const Partition& previous, const CommonRestriction& restriction,
                               MojoMode mode) {
    if (restriction.n_common() == 0) throw Error("no common modules");
    MetricsBundle bundle;
    bundle.turbomq = turbomq(graph, partition);
    bundle.u_coh = partition.k == 0 ? 0.0 : bundle.turbomq / partition.k;
    Partition candidate_common = restrict_partition(partition, restriction, Side::new_version);
    Partition previous_common = restrict_partition(previous, restriction, Side::new_version);
    bundle.mojo = mojo(candidate_common, previous_common, mode);
    bundle.u_sta = 1.0 - static_cast<double>(bundle.mojo) / restriction.n_common();
    bundle.sw = social_welfare(bundle.u_coh, bundle.u_sta);
    return bundle;
}

} // namespace amcp
