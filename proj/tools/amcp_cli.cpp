// Command-line front end: extraction, negotiation, sweeps, baseline runs,
// MoJo queries and benchmark generation. Machine-readable results go to
// files and stdout; diagnostics to stderr. Exit codes: 0 success, 2 bad
// usage or input, 1 internal error.

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "amcp/baseline.hpp"
#include "amcp/benchgen.hpp"
#include "amcp/csvio.hpp"
#include "amcp/error.hpp"
#include "amcp/extraction.hpp"
#include "amcp/metrics.hpp"
#include "amcp/negotiation.hpp"
#include "amcp/sweep.hpp"

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitInternal = 1;
constexpr int kExitUsage = 2;

amcp::MojoMode parse_mojo_mode(const std::string& name) {
    if (name == "symmetric") return amcp::MojoMode::symmetric;
    if (name == "ab") return amcp::MojoMode::a_to_b;
    if (name == "ba") return amcp::MojoMode::b_to_a;
    throw amcp::Error("unknown mojo mode: " + name);
}

void ensure_parent_dir(const fs::path& path) {
    fs::path parent = path.parent_path();
    if (!parent.empty()) fs::create_directories(parent);
}

void write_json(const fs::path& path, const json& value) {
    ensure_parent_dir(path);
    std::ofstream out(path, std::ios::binary);
    if (!out) throw amcp::Error("cannot write " + path.string());
    out << value.dump(2) << '\n';
}

json partition_json(const amcp::DependencyGraph& graph, const amcp::Partition& partition) {
    json object = json::object();
    for (int i = 0; i < graph.n(); ++i) object[graph.modules[i]] = partition.assignment[i];
    return object;
}

// Graph plus start/previous partition from the two CSV inputs; the
// partition file declares the full module set (edges may omit isolated
// modules).
struct LoadedInstance {
    amcp::DependencyGraph graph;
    amcp::Partition partition;
};

LoadedInstance load_instance(const fs::path& edges_path, const fs::path& partition_path) {
    std::vector<amcp::NamedEdge> edges = amcp::read_edge_csv(edges_path);
    std::vector<std::pair<std::string, int>> rows = amcp::read_partition_csv(partition_path);
    std::vector<std::string> declared;
    declared.reserve(rows.size());
    for (const auto& [name, cluster] : rows) declared.push_back(name);
    LoadedInstance loaded;
    loaded.graph = amcp::build_graph(edges, declared);
    loaded.partition = amcp::partition_for_graph(loaded.graph, rows);
    return loaded;
}

void check_tau(double value, const char* name) {
    if (value < 0.0 || value > 1.0)
        throw amcp::Error(std::string(name) + " must lie in [0,1]");
}

struct ExtractArgs {
    std::string input;
    std::string out_prefix;
    std::string label;
    bool keep_nested = false;
    bool count_refs = false;
};

int run_extract(const ExtractArgs& args) {
    amcp::ExtractOptions options;
    options.merge_nested = !args.keep_nested;
    options.count_references = args.count_refs;
    amcp::VersionSnapshot snap = amcp::extract_snapshot(args.input, options, args.label);

    fs::path prefix(args.out_prefix);
    ensure_parent_dir(prefix.string() + "_edges.csv");
    amcp::write_edge_csv(prefix.string() + "_edges.csv", snap.graph);
    amcp::write_partition_csv(prefix.string() + "_partition.csv", snap.graph,
                              snap.package_partition);

    json manifest{
        {"command", "extract"},
        {"config",
         {{"input", args.input},
          {"label", args.label},
          {"merge_nested", options.merge_nested},
          {"count_references", options.count_references}}},
        {"modules", snap.graph.n()},
        {"packages", snap.package_partition.k},
        {"edges", snap.graph.edges.size()},
        {"class_files", snap.class_file_count},
        {"dropped_references", snap.dropped_references},
    };
    write_json(prefix.string() + "_manifest.json", manifest);
    std::printf("%d %d %zu\n", snap.graph.n(), snap.package_partition.k, snap.graph.edges.size());
    return kExitOk;
}

struct NegotiateArgs {
    std::string edges, previous, out_prefix;
    double tau_sta = 0.0, tau_coh = 1.0;
    std::string mojo_mode = "symmetric";
    int threads = 1;
};

int run_negotiate(const NegotiateArgs& args) {
    check_tau(args.tau_sta, "tau-sta");
    check_tau(args.tau_coh, "tau-coh");
    LoadedInstance loaded = load_instance(args.edges, args.previous);
    amcp::CommonRestriction restriction = amcp::identity_restriction(loaded.graph.modules);
    amcp::ThresholdConfig config{args.tau_sta, args.tau_coh};
    amcp::EngineOptions options;
    options.mojo_mode = parse_mojo_mode(args.mojo_mode);
    options.threads = args.threads;

    amcp::NegotiationResult result =
        amcp::negotiate(loaded.graph, loaded.partition, restriction, config, options);
    amcp::MetricsBundle final_metrics = amcp::evaluate_metrics(
        loaded.graph, result.final_partition, loaded.partition, restriction, options.mojo_mode);

    fs::path prefix(args.out_prefix);
    ensure_parent_dir(prefix.string() + "_final.csv");
    amcp::write_partition_csv(prefix.string() + "_final.csv", loaded.graph, result.final_partition);
    amcp::write_trace_csv(prefix.string() + "_trace.csv", loaded.graph, result.trace);

    const char* termination =
        result.termination == amcp::Termination::deadlock ? "deadlock" : "threshold_reached";
    json out{
        {"command", "negotiate"},
        {"config",
         {{"edges", args.edges},
          {"previous", args.previous},
          {"tau_sta", args.tau_sta},
          {"tau_coh", args.tau_coh},
          {"mojo_mode", args.mojo_mode},
          {"threads", args.threads}}},
        {"initial", {{"u_coh", result.initial_u_coh}, {"u_sta", result.initial_u_sta}}},
        {"final",
         {{"u_coh", final_metrics.u_coh},
          {"u_sta", final_metrics.u_sta},
          {"sw", final_metrics.sw},
          {"mojo", final_metrics.mojo},
          {"k", result.final_partition.k}}},
        {"steps", result.trace.size()},
        {"termination", termination},
        {"ratio_decreases", result.ratio_decreases},
        {"final_partition", partition_json(loaded.graph, result.final_partition)},
    };
    write_json(prefix.string() + "_result.json", out);
    if (result.ratio_decreases > 0)
        std::cerr << "note: concession ratio decreased at " << result.ratio_decreases
                  << " step(s)\n";
    std::printf("%.10g %.10g %.10g %zu %s\n", final_metrics.u_coh, final_metrics.u_sta,
                final_metrics.sw, result.trace.size(), termination);
    return kExitOk;
}

struct SweepArgs {
    std::string edges, previous, out;
    std::vector<double> tau_sta;
    double tau_coh = 1.0;
    std::string mojo_mode = "symmetric";
    int threads = 1;
};

int run_sweep(const SweepArgs& args) {
    for (double tau : args.tau_sta) check_tau(tau, "tau-sta");
    check_tau(args.tau_coh, "tau-coh");
    LoadedInstance loaded = load_instance(args.edges, args.previous);
    amcp::CommonRestriction restriction = amcp::identity_restriction(loaded.graph.modules);
    amcp::EngineOptions options;
    options.mojo_mode = parse_mojo_mode(args.mojo_mode);
    options.threads = args.threads;

    std::vector<amcp::SweepRow> rows =
        amcp::run_sweep(loaded.graph, loaded.partition, restriction, args.tau_sta, args.tau_coh,
                        options);
    ensure_parent_dir(args.out);
    amcp::write_sweep_csv(args.out, rows);

    json rows_json = json::array();
    for (const amcp::SweepRow& row : rows)
        rows_json.push_back({{"tau_sta", row.tau_sta},
                             {"u_coh", row.u_coh},
                             {"u_sta", row.u_sta},
                             {"sw", row.sw},
                             {"steps", row.steps},
                             {"diverged", row.diverged}});
    json out{
        {"command", "sweep"},
        {"config",
         {{"edges", args.edges},
          {"previous", args.previous},
          {"tau_sta_list", args.tau_sta},
          {"tau_coh", args.tau_coh},
          {"mojo_mode", args.mojo_mode},
          {"threads", args.threads}}},
        {"rows", rows_json},
    };
    write_json(fs::path(args.out).string() + ".json", out);
    std::printf("%zu\n", rows.size());
    return kExitOk;
}

struct BaselineArgs {
    std::string edges, start, out_prefix;
    int max_steps = 100000;
};

int run_baseline(const BaselineArgs& args) {
    LoadedInstance loaded = load_instance(args.edges, args.start);
    amcp::HillClimbResult result =
        amcp::hillclimb_turbomq(loaded.graph, loaded.partition, args.max_steps);

    // trace utilities judged against the start partition
    amcp::CommonRestriction restriction = amcp::identity_restriction(loaded.graph.modules);
    std::vector<amcp::StepRecord> trace;
    amcp::Partition current = loaded.partition;
    double prev_u_coh = amcp::u_coh(loaded.graph, current);
    double prev_u_sta = 1.0;
    for (std::size_t i = 0; i < result.steps.size(); ++i) {
        current = amcp::apply_move(current, result.steps[i].move);
        amcp::MetricsBundle metrics =
            amcp::evaluate_metrics(loaded.graph, current, loaded.partition, restriction);
        amcp::StepRecord record;
        record.step = static_cast<int>(i) + 1;
        record.move = result.steps[i].move;
        record.u_coh = metrics.u_coh;
        record.u_sta = metrics.u_sta;
        record.ratio = metrics.u_coh - prev_u_coh > amcp::kImprovementEpsilon
                           ? (prev_u_sta - metrics.u_sta) / (metrics.u_coh - prev_u_coh)
                           : 0.0;
        record.sw = metrics.sw;
        trace.push_back(record);
        prev_u_coh = metrics.u_coh;
        prev_u_sta = metrics.u_sta;
    }

    amcp::MetricsBundle final_metrics =
        amcp::evaluate_metrics(loaded.graph, result.final_partition, loaded.partition, restriction);

    fs::path prefix(args.out_prefix);
    ensure_parent_dir(prefix.string() + "_final.csv");
    amcp::write_partition_csv(prefix.string() + "_final.csv", loaded.graph, result.final_partition);
    amcp::write_trace_csv(prefix.string() + "_trace.csv", loaded.graph, trace);

    json out{
        {"command", "baseline"},
        {"config", {{"edges", args.edges}, {"start", args.start}, {"max_steps", args.max_steps}}},
        {"final",
         {{"turbomq", amcp::turbomq(loaded.graph, result.final_partition)},
          {"u_coh", final_metrics.u_coh},
          {"u_sta", final_metrics.u_sta},
          {"sw", final_metrics.sw},
          {"k", result.final_partition.k}}},
        {"steps", result.steps.size()},
        {"final_partition", partition_json(loaded.graph, result.final_partition)},
    };
    write_json(prefix.string() + "_result.json", out);
    std::printf("%.10g %.10g %.10g %zu\n", final_metrics.u_coh, final_metrics.u_sta,
                final_metrics.sw, result.steps.size());
    return kExitOk;
}

struct MojoArgs {
    std::string a, b;
    std::string mode = "symmetric";
    std::string json_out;
};

int run_mojo(const MojoArgs& args) {
    std::vector<std::pair<std::string, int>> rows_a = amcp::read_partition_csv(args.a);
    std::vector<std::pair<std::string, int>> rows_b = amcp::read_partition_csv(args.b);

    std::map<std::string, int> map_a(rows_a.begin(), rows_a.end());
    std::map<std::string, int> map_b(rows_b.begin(), rows_b.end());
    if (map_a.size() != rows_a.size() || map_b.size() != rows_b.size())
        throw amcp::Error("duplicate module in partition file");
    for (const auto& [name, cluster] : map_b)
        if (!map_a.count(name)) throw amcp::Error("module sets differ: " + name);
    if (map_a.size() != map_b.size()) throw amcp::Error("module sets differ");

    std::vector<int> labels_a, labels_b;
    labels_a.reserve(map_a.size());
    labels_b.reserve(map_a.size());
    for (const auto& [name, cluster] : map_a) {
        labels_a.push_back(cluster);
        labels_b.push_back(map_b.at(name));
    }
    amcp::MojoMode mode = parse_mojo_mode(args.mode);
    amcp::Partition pa = amcp::make_partition(labels_a);
    amcp::Partition pb = amcp::make_partition(labels_b);
    int distance = amcp::mojo(pa, pb, mode);
    double stability = amcp::u_sta(pa, pb, pa.n(), mode);

    if (!args.json_out.empty()) {
        json out{
            {"command", "mojo"},
            {"config", {{"a", args.a}, {"b", args.b}, {"mode", args.mode}}},
            {"mojo", distance},
            {"u_sta", stability},
            {"n_common", pa.n()},
        };
        write_json(args.json_out, out);
    }
    std::printf("%d %.10g\n", distance, stability);
    return kExitOk;
}

struct GenArgs {
    int n = 0;
    int blocks = 1;
    double p_in = 1.0;
    double p_out = 0.0;
    double perturb = 0.0;
    std::uint64_t seed = 0;
    std::string out_prefix;
};

int run_gen(const GenArgs& args) {
    amcp::BenchSpec spec{args.n, args.blocks, args.p_in, args.p_out, args.perturb, args.seed};
    amcp::BenchInstance instance = amcp::generate(spec);

    fs::path prefix(args.out_prefix);
    ensure_parent_dir(prefix.string() + "_edges.csv");
    amcp::write_edge_csv(prefix.string() + "_edges.csv", instance.graph);
    amcp::write_partition_csv(prefix.string() + "_truth.csv", instance.graph,
                              instance.ground_truth);
    amcp::write_partition_csv(prefix.string() + "_previous.csv", instance.graph,
                              instance.previous);

    json out{
        {"command", "gen"},
        {"config",
         {{"n", spec.n},
          {"blocks", spec.blocks},
          {"p_in", spec.p_in},
          {"p_out", spec.p_out},
          {"perturb_fraction", spec.perturb_fraction},
          {"seed", spec.seed}}},
        {"modules", instance.graph.n()},
        {"edges", instance.graph.edges.size()},
    };
    write_json(prefix.string() + "_spec.json", out);
    std::printf("%d %zu\n", instance.graph.n(), instance.graph.edges.size());
    return kExitOk;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"AMCP module-clustering toolkit"};
    app.require_subcommand(1);

    ExtractArgs extract_args;
    CLI::App* extract = app.add_subcommand("extract", "Build a DSM from .class files or a JAR");
    extract->add_option("input", extract_args.input, "directory or .jar")->required();
    extract->add_option("--out-prefix", extract_args.out_prefix, "output file prefix")->required();
    extract->add_option("--label", extract_args.label, "version label");
    extract->add_flag("--keep-nested", extract_args.keep_nested, "keep Outer$Inner separate");
    extract->add_flag("--count-refs", extract_args.count_refs,
                      "weight edges by referencing class-file count");

    NegotiateArgs negotiate_args;
    CLI::App* negotiate = app.add_subcommand("negotiate", "Run the AMCP negotiation");
    negotiate->add_option("--edges", negotiate_args.edges)->required();
    negotiate->add_option("--previous", negotiate_args.previous)->required();
    negotiate->add_option("--tau-sta", negotiate_args.tau_sta)->required();
    negotiate->add_option("--tau-coh", negotiate_args.tau_coh)->required();
    negotiate->add_option("--out-prefix", negotiate_args.out_prefix)->required();
    negotiate->add_option("--mojo-mode", negotiate_args.mojo_mode, "symmetric|ab|ba");
    negotiate->add_option("--threads", negotiate_args.threads)->check(CLI::PositiveNumber);

    SweepArgs sweep_args;
    CLI::App* sweep = app.add_subcommand("sweep", "tau_sta sensitivity sweep");
    sweep->add_option("--edges", sweep_args.edges)->required();
    sweep->add_option("--previous", sweep_args.previous)->required();
    sweep->add_option("--tau-sta", sweep_args.tau_sta, "list of budgets")
        ->required()
        ->delimiter(',');
    sweep->add_option("--tau-coh", sweep_args.tau_coh)->required();
    sweep->add_option("--out", sweep_args.out, "sweep CSV path")->required();
    sweep->add_option("--mojo-mode", sweep_args.mojo_mode, "symmetric|ab|ba");
    sweep->add_option("--threads", sweep_args.threads)->check(CLI::PositiveNumber);

    BaselineArgs baseline_args;
    CLI::App* baseline = app.add_subcommand("baseline", "TurboMQ hill-climb baseline");
    baseline->add_option("--edges", baseline_args.edges)->required();
    baseline->add_option("--start", baseline_args.start)->required();
    baseline->add_option("--out-prefix", baseline_args.out_prefix)->required();
    baseline->add_option("--max-steps", baseline_args.max_steps)->check(CLI::NonNegativeNumber);

    MojoArgs mojo_args;
    CLI::App* mojo_cmd = app.add_subcommand("mojo", "MoJo distance between two partitions");
    mojo_cmd->add_option("--a", mojo_args.a)->required();
    mojo_cmd->add_option("--b", mojo_args.b)->required();
    mojo_cmd->add_option("--mode", mojo_args.mode, "symmetric|ab|ba");
    mojo_cmd->add_option("--json", mojo_args.json_out, "optional JSON result path");

    GenArgs gen_args;
    CLI::App* gen = app.add_subcommand("gen", "Generate a block benchmark");
    gen->add_option("--n", gen_args.n)->required();
    gen->add_option("--blocks", gen_args.blocks)->required();
    gen->add_option("--p-in", gen_args.p_in)->required();
    gen->add_option("--p-out", gen_args.p_out)->required();
    gen->add_option("--perturb", gen_args.perturb)->required();
    gen->add_option("--seed", gen_args.seed);
    gen->add_option("--out-prefix", gen_args.out_prefix)->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitUsage;
    }

    try {
        if (extract->parsed()) return run_extract(extract_args);
        if (negotiate->parsed()) return run_negotiate(negotiate_args);
        if (sweep->parsed()) return run_sweep(sweep_args);
        if (baseline->parsed()) return run_baseline(baseline_args);
        if (mojo_cmd->parsed()) return run_mojo(mojo_args);
        if (gen->parsed()) return run_gen(gen_args);
    } catch (const amcp::Error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitUsage;
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << '\n';
        return kExitInternal;
    }
    return kExitUsage;
}
