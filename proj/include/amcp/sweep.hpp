#pragma once

#include <vector>

#include "amcp/negotiation.hpp"

namespace amcp {

// One tau_sta sensitivity row. diverged: the final partition differs from
// the unconstrained reference run (tau_sta = 0, same tau_coh).
struct SweepRow {
    double tau_sta = 0.0;
    double u_coh = 0.0;
    double u_sta = 0.0;
    double sw = 0.0;
    int steps = 0;
    bool diverged = false;
};

std::vector<SweepRow> run_sweep(const DependencyGraph& graph, const Partition& previous,
                                const CommonRestriction& restriction,
                                const std::vector<double>& tau_sta_values, double tau_coh,
                                const EngineOptions& options = {});

} // namespace amcp
