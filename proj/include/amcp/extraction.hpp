#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "amcp/classfile.hpp"
#include "amcp/graph.hpp"
#include "amcp/partition.hpp"

namespace amcp {

struct ExtractOptions {
    bool merge_nested = true;      // fold Outer$Inner into Outer
    bool count_references = false; // weight = number of referencing class files, else 1
};

// One analyzed version: its dependency graph over in-set modules plus the
// declared package structure as a partition.
struct VersionSnapshot {
    std::string label;
    DependencyGraph graph;
    Partition package_partition;
    std::vector<std::string> package_names; // cluster label -> package
    ExtractOptions options;
    std::int64_t dropped_references = 0; // references to classes outside the set
    int class_file_count = 0;
};

// Scans a directory tree of .class files or a ZIP-format archive (.jar),
// parses every class's constant pool, and assembles the snapshot. Edges
// point only at in-set modules; everything else counts as dropped.
VersionSnapshot extract_snapshot(const std::filesystem::path& input,
                                 const ExtractOptions& options = {},
                                 const std::string& label = "");

struct AlignResult {
    CommonRestriction restriction;
    Partition seeded_previous; // over the new version's full module set
};

// Intersects the two versions' module sets and seeds the previous
// decomposition onto the new version: common modules keep their old package
// cluster; new-only modules (in lexicographic order) join the cluster of
// their lexicographically-first already-seeded dependency target, or open a
// fresh singleton cluster.
AlignResult align_versions(const VersionSnapshot& old_snapshot, const VersionSnapshot& new_snapshot);

} // namespace amcp
