#include "amcp/baseline.hpp"

#include <utility>

namespace amcp {

HillClimbResult hillclimb_turbomq(const DependencyGraph& graph, const Partition& start,
                                  int max_steps) {
    HillClimbResult result;
    result.final_partition = start;
    double current = turbomq(graph, result.final_partition);

    while (static_cast<int>(result.steps.size()) < max_steps) {
        const Move* best_move = nullptr;
        Partition best_partition;
        double best_value = current;
        std::vector<Move> moves = enumerate_moves(result.final_partition);
        for (const Move& move : moves) {
            Partition after = apply_move(result.final_partition, move);
            double value = turbomq(graph, after);
            // strictly-greater keeps the first (module, target) on ties
            if (value - current > kImprovementEpsilon && value > best_value) {
                best_move = &move;
                best_partition = std::move(after);
                best_value = value;
            }
        }
        if (!best_move) break;
        result.steps.push_back({*best_move, best_value});
        result.final_partition = std::move(best_partition);
        current = best_value;
    }
    return result;
}

std::vector<ComparisonRow> compare_runs(const DependencyGraph& graph, const Partition& previous,
                                        const CommonRestriction& restriction,
                                        const ThresholdConfig& config,
                                        const EngineOptions& options) {
    std::vector<ComparisonRow> rows;

    NegotiationResult negotiated = negotiate(graph, previous, restriction, config, options);
    MetricsBundle amcp_metrics =
        evaluate_metrics(graph, negotiated.final_partition, previous, restriction, options.mojo_mode);
    rows.push_back({"amcp", config.tau_sta, amcp_metrics.u_coh, amcp_metrics.u_sta,
                    amcp_metrics.sw, static_cast<int>(negotiated.trace.size())});

    HillClimbResult climbed = hillclimb_turbomq(graph, previous);
    MetricsBundle baseline_metrics =
        evaluate_metrics(graph, climbed.final_partition, previous, restriction, options.mojo_mode);
    rows.push_back({"hillclimb", std::nullopt, baseline_metrics.u_coh, baseline_metrics.u_sta,
                    baseline_metrics.sw, static_cast<int>(climbed.steps.size())});

    return rows;
}

} // namespace amcp
