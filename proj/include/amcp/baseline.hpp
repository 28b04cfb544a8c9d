#pragma once

#include <optional>
#include <string>
#include <vector>

#include "amcp/negotiation.hpp"

namespace amcp {

struct HillClimbStep {
    Move move;
    double turbomq_after = 0.0;
};

struct HillClimbResult {
    Partition final_partition;
    std::vector<HillClimbStep> steps;
};

// Bunch-style steepest-ascent hill climb on raw TurboMQ, no stability
// constraint. Each step takes the single-module move with the largest
// TurboMQ gain (ties by module index, then target label) until no move
// improves by more than kImprovementEpsilon or max_steps is reached.
HillClimbResult hillclimb_turbomq(const DependencyGraph& graph, const Partition& start,
                                  int max_steps = 100000);

// One row of a Table-I-style comparison. tau_sta is empty for systems that
// take no stability budget.
struct ComparisonRow {
    std::string system;
    std::optional<double> tau_sta;
    double u_coh = 0.0;
    double u_sta = 0.0;
    double sw = 0.0;
    int steps = 0;
};

// AMCP at the given config plus the unconstrained hill-climb baseline, both
// started from `previous`, both judged against `previous` on the common
// restriction.
std::vector<ComparisonRow> compare_runs(const DependencyGraph& graph, const Partition& previous,
                                        const CommonRestriction& restriction,
                                        const ThresholdConfig& config,
                                        const EngineOptions& options = {});

} // namespace amcp
