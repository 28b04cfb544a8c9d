#include "amcp/partition.hpp"

#include <algorithm>
#include <unordered_map>

#include "amcp/error.hpp"

namespace amcp {

Partition make_partition(const std::vector<int>& labels) {
    Partition p;
    p.assignment.resize(labels.size());
    std::unordered_map<int, int> relabel;
    int next = 0;
    for (std::size_t i = 0; i < labels.size(); ++i) {
        auto [it, inserted] = relabel.try_emplace(labels[i], next);
        if (inserted) ++next;
        p.assignment[i] = it->second;
    }
    p.k = next;
    return p;
}

bool is_canonical(const Partition& p) {
    int seen = 0;
    for (int label : p.assignment) {
        if (label < 0 || label > seen) return false;
        if (label == seen) ++seen;
    }
    return seen == p.k;
}

std::vector<std::vector<int>> cluster_members(const Partition& p) {
    std::vector<std::vector<int>> members(p.k);
    for (int i = 0; i < p.n(); ++i) members[p.assignment[i]].push_back(i);
    return members;
}

Partition apply_move(const Partition& p, const Move& move) {
    if (move.module < 0 || move.module >= p.n()) throw Error("move module out of range");
    if (move.from_cluster == move.to_cluster) throw Error("move must change cluster");
    if (p.assignment[move.module] != move.from_cluster) throw Error("move source cluster mismatch");
    if (move.to_cluster < 0 || move.to_cluster >= p.k) throw Error("move target cluster does not exist");

    std::vector<int> labels = p.assignment;
    labels[move.module] = move.to_cluster;
    return make_partition(labels);
}

std::vector<Move> enumerate_moves(const Partition& p) {
    std::vector<Move> moves;
    if (p.k < 2) return moves;
    moves.reserve(static_cast<std::size_t>(p.n()) * (p.k - 1));
    for (int m = 0; m < p.n(); ++m) {
        int from = p.assignment[m];
        for (int to = 0; to < p.k; ++to) {
            if (to == from) continue;
            moves.push_back({m, from, to});
        }
    }
    return moves;
}

CommonRestriction make_restriction(const std::vector<std::string>& old_names,
                                   const std::vector<std::string>& new_names) {
    CommonRestriction r;
    std::vector<std::string> old_sorted = old_names;
    std::vector<std::string> new_sorted = new_names;
    std::sort(old_sorted.begin(), old_sorted.end());
    std::sort(new_sorted.begin(), new_sorted.end());
    std::set_intersection(old_sorted.begin(), old_sorted.end(), new_sorted.begin(),
                          new_sorted.end(), std::back_inserter(r.common_names));

    auto map_side = [&r](const std::vector<std::string>& names) {
        std::vector<int> to_common(names.size(), -1);
        for (std::size_t i = 0; i < names.size(); ++i) {
            auto it = std::lower_bound(r.common_names.begin(), r.common_names.end(), names[i]);
            if (it != r.common_names.end() && *it == names[i])
                to_common[i] = static_cast<int>(it - r.common_names.begin());
        }
        return to_common;
    };
    r.old_to_common = map_side(old_names);
    r.new_to_common = map_side(new_names);
    return r;
}

CommonRestriction identity_restriction(const std::vector<std::string>& names) {
    return make_restriction(names, names);
}

Partition restrict_partition(const Partition& p, const CommonRestriction& r, Side side) {
    const std::vector<int>& to_common =
        side == Side::old_version ? r.old_to_common : r.new_to_common;
    if (static_cast<int>(to_common.size()) != p.n())
        throw Error("restriction does not match partition size");

    std::vector<int> labels(r.common_names.size(), 0);
    for (int i = 0; i < p.n(); ++i) {
        int c = to_common[i];
        if (c >= 0) labels[c] = p.assignment[i];
    }
    return make_partition(labels);
}

} // namespace amcp
