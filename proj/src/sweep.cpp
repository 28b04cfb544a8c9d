#include "amcp/sweep.hpp"

#include "amcp/error.hpp"
#include "amcp/metrics.hpp"

namespace amcp {

std::vector<SweepRow> run_sweep(const DependencyGraph& graph, const Partition& previous,
                                const CommonRestriction& restriction,
                                const std::vector<double>& tau_sta_values, double tau_coh,
                                const EngineOptions& options) {
    if (tau_sta_values.empty()) throw Error("empty tau_sta list");

    // Unconstrained reference run for the diverged column.
    NegotiationResult reference =
        negotiate(graph, previous, restriction, {0.0, tau_coh}, options);

    std::vector<SweepRow> rows;
    rows.reserve(tau_sta_values.size());
    for (double tau_sta : tau_sta_values) {
        NegotiationResult run = negotiate(graph, previous, restriction, {tau_sta, tau_coh}, options);
        MetricsBundle metrics =
            evaluate_metrics(graph, run.final_partition, previous, restriction, options.mojo_mode);
        rows.push_back({tau_sta, metrics.u_coh, metrics.u_sta, metrics.sw,
                        static_cast<int>(run.trace.size()),
                        run.final_partition != reference.final_partition});
    }
    return rows;
}

} // namespace amcp
