#include "amcp/csvio.hpp"

#include <cstdio>
#include <fstream>
#include <map>
#include <sstream>

#include "amcp/error.hpp"

namespace amcp {

namespace {

std::vector<std::string> split_fields(const std::string& line) {
    std::vector<std::string> fields;
    std::string field;
    std::stringstream stream(line);
    while (std::getline(stream, field, ',')) fields.push_back(field);
    if (!line.empty() && line.back() == ',') fields.emplace_back();
    return fields;
}

// Data lines of a CSV file: comments and blanks skipped, CR stripped,
// header returned separately.
struct CsvLines {
    std::vector<std::string> header;
    std::vector<std::vector<std::string>> rows;
};

CsvLines read_csv(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw Error("cannot open " + path.string());
    CsvLines result;
    std::string line;
    while (std::getline(in, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty() || line[0] == '#') continue;
        if (result.header.empty())
            result.header = split_fields(line);
        else
            result.rows.push_back(split_fields(line));
    }
    if (result.header.empty()) throw Error("empty CSV file: " + path.string());
    return result;
}

std::int64_t parse_int(const std::string& text, const std::filesystem::path& path) {
    try {
        std::size_t used = 0;
        std::int64_t value = std::stoll(text, &used);
        if (used != text.size()) throw Error("");
        return value;
    } catch (...) {
        throw Error("bad integer '" + text + "' in " + path.string());
    }
}

std::string format_double(double value) {
    char buffer[64];
    std::snprintf(buffer, sizeof(buffer), "%.12g", value);
    return buffer;
}

} // namespace

std::vector<NamedEdge> read_edge_csv(const std::filesystem::path& path) {
    CsvLines csv = read_csv(path);
    bool has_weight = csv.header.size() == 3;
    if (csv.header.size() < 2 || csv.header[0] != "source" || csv.header[1] != "target" ||
        (has_weight && csv.header[2] != "weight") || csv.header.size() > 3)
        throw Error("edge CSV needs header source,target[,weight]: " + path.string());

    std::vector<NamedEdge> edges;
    edges.reserve(csv.rows.size());
    for (const auto& row : csv.rows) {
        if (row.size() < 2 || row.size() > 3 || (row.size() == 3 && !has_weight))
            throw Error("malformed edge row in " + path.string());
        NamedEdge e{row[0], row[1], 1};
        if (row.size() == 3) e.weight = parse_int(row[2], path);
        edges.push_back(std::move(e));
    }
    return edges;
}

void write_edge_csv(const std::filesystem::path& path, const DependencyGraph& graph) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw Error("cannot write " + path.string());
    out << "source,target,weight\n";
    for (const Edge& e : graph.edges)
        out << graph.modules[e.src] << ',' << graph.modules[e.dst] << ',' << e.weight << '\n';
}

std::vector<std::pair<std::string, int>> read_partition_csv(const std::filesystem::path& path) {
    CsvLines csv = read_csv(path);
    if (csv.header.size() != 2 || csv.header[0] != "module" || csv.header[1] != "cluster")
        throw Error("partition CSV needs header module,cluster: " + path.string());
    std::vector<std::pair<std::string, int>> rows;
    rows.reserve(csv.rows.size());
    for (const auto& row : csv.rows) {
        if (row.size() != 2) throw Error("malformed partition row in " + path.string());
        rows.emplace_back(row[0], static_cast<int>(parse_int(row[1], path)));
    }
    return rows;
}

void write_partition_csv(const std::filesystem::path& path, const DependencyGraph& graph,
                         const Partition& partition) {
    if (graph.n() != partition.n()) throw Error("partition does not cover the graph");
    std::ofstream out(path, std::ios::binary);
    if (!out) throw Error("cannot write " + path.string());
    out << "module,cluster\n";
    for (int i = 0; i < graph.n(); ++i)
        out << graph.modules[i] << ',' << partition.assignment[i] << '\n';
}

Partition partition_for_graph(const DependencyGraph& graph,
                              const std::vector<std::pair<std::string, int>>& rows) {
    std::map<std::string, int> by_name;
    for (const auto& [name, cluster] : rows)
        if (!by_name.emplace(name, cluster).second)
            throw Error("duplicate module '" + name + "' in partition");
    if (static_cast<int>(by_name.size()) != graph.n())
        throw Error("partition does not cover the graph's module set");

    std::vector<int> labels(graph.n());
    for (int i = 0; i < graph.n(); ++i) {
        auto it = by_name.find(graph.modules[i]);
        if (it == by_name.end())
            throw Error("partition is missing module '" + graph.modules[i] + "'");
        labels[i] = it->second;
    }
    return make_partition(labels);
}

void write_trace_csv(const std::filesystem::path& path, const DependencyGraph& graph,
                     const std::vector<StepRecord>& trace) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw Error("cannot write " + path.string());
    out << "step,module,from_cluster,to_cluster,u_coh,u_sta,ratio,sw\n";
    for (const StepRecord& record : trace) {
        out << record.step << ',' << graph.modules[record.move.module] << ','
            << record.move.from_cluster << ',' << record.move.to_cluster << ','
            << format_double(record.u_coh) << ',' << format_double(record.u_sta) << ','
            << format_double(record.ratio) << ',' << format_double(record.sw) << '\n';
    }
}

void write_sweep_csv(const std::filesystem::path& path, const std::vector<SweepRow>& rows) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw Error("cannot write " + path.string());
    out << "tau_sta,u_coh,u_sta,sw,steps,diverged\n";
    for (const SweepRow& row : rows) {
        out << format_double(row.tau_sta) << ',' << format_double(row.u_coh) << ','
            << format_double(row.u_sta) << ',' << format_double(row.sw) << ',' << row.steps << ','
            << (row.diverged ? "true" : "false") << '\n';
    }
}

} // namespace amcp
