#pragma once

#include <cstdint>
#include <vector>

#include "amcp/graph.hpp"
#include "amcp/metrics.hpp"
#include "amcp/partition.hpp"

namespace amcp {

// Strict-improvement epsilon for u_coh comparisons. The stability budget
// check u_sta >= tau_sta is plain >=, never relaxed.
inline constexpr double kImprovementEpsilon = 1e-12;

// Survival thresholds set by the architect.
struct ThresholdConfig {
    double tau_sta = 0.0;
    double tau_coh = 1.0;
};

struct EngineOptions {
    MojoMode mojo_mode = MojoMode::symmetric;
    int threads = 1; // candidate evaluations per round run in parallel when > 1
};

// One admissible move with its post-move utilities and concession ratio.
struct CandidateEvaluation {
    Move move;
    Partition partition_after;
    double u_coh_after = 0.0;
    double u_sta_after = 0.0;
    double ratio = 0.0;
};

// One accepted negotiation step. evaluated_move_count is the number of
// candidate reassignments scored during the round (== n*(k-1)).
struct StepRecord {
    int step = 0; // 1-based
    Move move;
    double u_coh = 0.0;
    double u_sta = 0.0;
    double ratio = 0.0;
    double sw = 0.0;
    int valid_move_count = 0;
    int evaluated_move_count = 0;
};

enum class Termination { threshold_reached, deadlock };

struct NegotiationResult {
    Partition final_partition;
    std::vector<StepRecord> trace;
    Termination termination = Termination::threshold_reached;
    double initial_u_coh = 0.0;
    double initial_u_sta = 0.0;
    // Diagnostic only: steps whose ratio undercut the previous step's. The
    // concession path is non-decreasing only while no reassignment opens a
    // cheaper move, so this is reported, never asserted.
    int ratio_decreases = 0;
};

// R(delta) = (u_sta_before - u_sta_after) / (u_coh_after - u_coh_before).
// Throws unless the denominator clears the improvement epsilon; the result
// may be <= 0 when the move costs no stability (or gains some).
double concession_ratio(double u_sta_before, double u_sta_after,
                        double u_coh_before, double u_coh_after);

// The valid-move set V of one round: every enumerated move whose result
// strictly improves u_coh and keeps u_sta >= tau_sta, in enumeration order.
// `previous` is the stability reference over the current module set; the
// restriction projects both onto the common modules for MoJo.
std::vector<CandidateEvaluation> valid_moves(const DependencyGraph& graph,
                                             const Partition& partition,
                                             const Partition& previous,
                                             const CommonRestriction& restriction,
                                             const ThresholdConfig& config,
                                             const EngineOptions& options = {});

// Minimum-ratio candidate; ties broken by (module index, target label)
// ascending. Throws Error("deadlock") on an empty set.
const CandidateEvaluation& select_move(const std::vector<CandidateEvaluation>& candidates);

// The AMCP engine. Starts at D = previous, accepts the minimum-ratio valid
// move while u_coh < tau_coh, and stops on the threshold or on deadlock.
// Deterministic: identical inputs give bit-identical traces.
NegotiationResult negotiate(const DependencyGraph& graph, const Partition& previous,
                            const CommonRestriction& restriction, const ThresholdConfig& config,
                            const EngineOptions& options = {});

// Exhaustive single-move neighborhood re-check of a deadlock state: true
// iff no move strictly improves u_coh while keeping u_sta >= tau_sta.
// Deliberately does not reuse valid_moves.
bool verify_local_pareto(const DependencyGraph& graph, const Partition& final_partition,
                         const Partition& previous, const CommonRestriction& restriction,
                         const ThresholdConfig& config, MojoMode mode = MojoMode::symmetric);

} // namespace amcp
