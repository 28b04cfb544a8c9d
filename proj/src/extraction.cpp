#include "amcp/extraction.hpp"

#include <algorithm>
#include <fstream>
#include <map>
#include <set>

#include "amcp/error.hpp"
#include "amcp/zip_reader.hpp"

namespace amcp {

namespace {

std::string top_level_name(const std::string& class_name, bool merge_nested) {
    if (!merge_nested) return class_name;
    std::size_t dollar = class_name.find('$');
    return dollar == std::string::npos ? class_name : class_name.substr(0, dollar);
}

std::string package_of(const std::string& module_name) {
    std::size_t slash = module_name.rfind('/');
    return slash == std::string::npos ? std::string() : module_name.substr(0, slash);
}

std::vector<std::uint8_t> read_file_bytes(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error("cannot open " + path.string());
    return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

bool is_class_entry(const std::string& name) {
    return name.size() > 6 && name.ends_with(".class");
}

std::vector<ClassFileSummary> load_summaries(const std::filesystem::path& input) {
    std::vector<ClassFileSummary> summaries;
    if (std::filesystem::is_directory(input)) {
        std::vector<std::filesystem::path> files;
        for (const auto& entry : std::filesystem::recursive_directory_iterator(input))
            if (entry.is_regular_file() && entry.path().extension() == ".class")
                files.push_back(entry.path());
        std::sort(files.begin(), files.end());
        summaries.reserve(files.size());
        for (const auto& file : files) summaries.push_back(parse_class_file(read_file_bytes(file)));
    } else if (std::filesystem::is_regular_file(input) && looks_like_zip(input)) {
        for (const ZipEntry& entry : read_zip(input))
            if (is_class_entry(entry.name)) summaries.push_back(parse_class_file(entry.data));
    } else {
        throw Error("input is neither a directory nor a zip archive: " + input.string());
    }
    if (summaries.empty()) throw Error("zero class files");
    return summaries;
}

} // namespace

VersionSnapshot extract_snapshot(const std::filesystem::path& input, const ExtractOptions& options,
                                 const std::string& label) {
    std::vector<ClassFileSummary> summaries = load_summaries(input);

    std::set<std::string> module_set;
    for (const ClassFileSummary& s : summaries)
        module_set.insert(top_level_name(s.class_name, options.merge_nested));

    // Weight = number of constituent class files referencing the target
    // module (count mode), or 1 per distinct ordered pair (binary mode).
    std::map<std::pair<std::string, std::string>, std::int64_t> pair_counts;
    std::int64_t dropped = 0;
    for (const ClassFileSummary& s : summaries) {
        std::string source = top_level_name(s.class_name, options.merge_nested);
        std::set<std::string> targets;
        for (const std::string& ref : s.referenced_classes) {
            std::string target = top_level_name(ref, options.merge_nested);
            if (!module_set.count(target)) {
                ++dropped;
                continue;
            }
            if (target != source) targets.insert(target);
        }
        for (const std::string& target : targets) ++pair_counts[{source, target}];
    }

    std::vector<NamedEdge> edges;
    edges.reserve(pair_counts.size());
    for (const auto& [pair, count] : pair_counts)
        edges.push_back({pair.first, pair.second, options.count_references ? count : 1});

    VersionSnapshot snapshot;
    snapshot.label = label;
    snapshot.options = options;
    snapshot.dropped_references = dropped;
    snapshot.class_file_count = static_cast<int>(summaries.size());
    snapshot.graph = build_graph(edges, {module_set.begin(), module_set.end()});

    std::vector<int> labels(snapshot.graph.n());
    std::map<std::string, int> package_ids;
    for (int i = 0; i < snapshot.graph.n(); ++i) {
        std::string package = package_of(snapshot.graph.modules[i]);
        auto [it, inserted] = package_ids.try_emplace(package, static_cast<int>(snapshot.package_names.size()));
        if (inserted) snapshot.package_names.push_back(package);
        labels[i] = it->second;
    }
    snapshot.package_partition = make_partition(labels);
    return snapshot;
}

AlignResult align_versions(const VersionSnapshot& old_snapshot, const VersionSnapshot& new_snapshot) {
    AlignResult result;
    result.restriction = make_restriction(old_snapshot.graph.modules, new_snapshot.graph.modules);
    if (result.restriction.n_common() == 0) throw Error("no common modules");

    const DependencyGraph& graph = new_snapshot.graph;
    constexpr int kUnassigned = -1;
    std::vector<int> labels(graph.n(), kUnassigned);

    for (int i = 0; i < graph.n(); ++i) {
        if (result.restriction.new_to_common[i] < 0) continue;
        int old_index = old_snapshot.graph.index_of(graph.modules[i]);
        labels[i] = old_snapshot.package_partition.assignment[old_index];
    }

    std::vector<std::vector<int>> out_neighbors(graph.n());
    for (const Edge& e : graph.edges) out_neighbors[e.src].push_back(e.dst); // dst ascending

    // New-only modules, in lexicographic (= index) order: join the cluster
    // of the first already-seeded dependency target, else open a fresh one.
    int fresh = old_snapshot.package_partition.k;
    for (int i = 0; i < graph.n(); ++i) {
        if (labels[i] != kUnassigned) continue;
        int chosen = kUnassigned;
        for (int target : out_neighbors[i]) {
            if (labels[target] != kUnassigned) {
                chosen = labels[target];
                break;
            }
        }
        labels[i] = chosen != kUnassigned ? chosen : fresh++;
    }

    result.seeded_previous = make_partition(labels);
    return result;
}

} // namespace amcp
