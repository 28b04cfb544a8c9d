#pragma once

#include <string>
#include <vector>

#include "amcp/graph.hpp"

namespace amcp {

// Flat decomposition: assignment[i] is the cluster label of module i.
// Canonical form: labels are 0..k-1 in order of first occurrence over the
// module index, every label inhabited. All operations return canonical
// partitions and never mutate their inputs.
struct Partition {
    std::vector<int> assignment;
    int k = 0;

    int n() const { return static_cast<int>(assignment.size()); }

    friend bool operator==(const Partition&, const Partition&) = default;
    friend bool operator<(const Partition& a, const Partition& b) {
        return a.assignment < b.assignment;
    }
};

// Canonicalizes arbitrary labels (first-occurrence relabeling).
Partition make_partition(const std::vector<int>& labels);

bool is_canonical(const Partition& p);

// Members of each cluster, by cluster label.
std::vector<std::vector<int>> cluster_members(const Partition& p);

// Single-module reassignment to an existing cluster.
struct Move {
    int module = 0;
    int from_cluster = 0;
    int to_cluster = 0;

    friend bool operator==(const Move&, const Move&) = default;
};

// Applies a move and re-canonicalizes; the source cluster disappears if it
// was emptied. Throws on moves that do not match the partition.
Partition apply_move(const Partition& p, const Move& move);

// Every single-module reassignment to another existing non-empty cluster,
// ordered by (module index, target label). Exactly n*(k-1) moves; empty for
// k = 1. Fresh singleton clusters are never proposed.
std::vector<Move> enumerate_moves(const Partition& p);

enum class Side { old_version, new_version };

// Intersection of two versions' module sets with index maps into the sorted
// common name list (-1 marks modules absent from the other side).
struct CommonRestriction {
    std::vector<std::string> common_names;
    std::vector<int> old_to_common; // size = old version's module count
    std::vector<int> new_to_common; // size = new version's module count

    int n_common() const { return static_cast<int>(common_names.size()); }
};

CommonRestriction make_restriction(const std::vector<std::string>& old_names,
                                   const std::vector<std::string>& new_names);

// Both sides equal; restriction is a no-op relabeling.
CommonRestriction identity_restriction(const std::vector<std::string>& names);

// Projects a partition of one version's full module set onto the common
// modules; clusters emptied by the projection vanish.
Partition restrict_partition(const Partition& p, const CommonRestriction& r, Side side);

} // namespace amcp
