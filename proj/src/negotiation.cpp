#include "amcp/negotiation.hpp"

#include <algorithm>
#include <optional>
#include <thread>

#include "amcp/error.hpp"

namespace amcp {

double concession_ratio(double u_sta_before, double u_sta_after,
                        double u_coh_before, double u_coh_after) {
    double gain = u_coh_after - u_coh_before;
    if (gain <= kImprovementEpsilon) throw Error("concession ratio needs a cohesion gain");
    return (u_sta_before - u_sta_after) / gain;
}

namespace {

// Per-run evaluation context: the previous decomposition is projected onto
// the common modules once, candidates once per evaluation.
struct Round {
    const DependencyGraph& graph;
    const CommonRestriction& restriction;
    Partition previous_common;
    ThresholdConfig config;
    EngineOptions options;

    Round(const DependencyGraph& g, const Partition& previous, const CommonRestriction& r,
          const ThresholdConfig& c, const EngineOptions& o)
        : graph(g), restriction(r),
          previous_common(restrict_partition(previous, r, Side::new_version)),
          config(c), options(o) {
        if (restriction.n_common() == 0) throw Error("no common modules");
        if (previous.n() != graph.n()) throw Error("previous decomposition does not cover the graph");
    }

    double stability(const Partition& p) const {
        Partition common = restrict_partition(p, restriction, Side::new_version);
        return u_sta(common, previous_common, restriction.n_common(), options.mojo_mode);
    }

    std::optional<CandidateEvaluation> evaluate(const Partition& current, double u_coh_before,
                                                double u_sta_before, const Move& move) const {
        Partition after = apply_move(current, move);
        double u_coh_after = u_coh(graph, after);
        if (u_coh_after - u_coh_before <= kImprovementEpsilon) return std::nullopt;
        double u_sta_after = stability(after);
        if (u_sta_after < config.tau_sta) return std::nullopt;
        CandidateEvaluation cand;
        cand.move = move;
        cand.partition_after = std::move(after);
        cand.u_coh_after = u_coh_after;
        cand.u_sta_after = u_sta_after;
        cand.ratio = (u_sta_before - u_sta_after) / (u_coh_after - u_coh_before);
        return cand;
    }

    // Candidates surviving the validity filter, in enumeration order
    // regardless of thread count.
    std::vector<CandidateEvaluation> collect(const Partition& current, double u_coh_before,
                                             double u_sta_before, int* evaluated_count) const {
        std::vector<Move> moves = enumerate_moves(current);
        if (evaluated_count) *evaluated_count = static_cast<int>(moves.size());

        std::vector<std::optional<CandidateEvaluation>> slots(moves.size());
        int workers = std::min<int>(std::max(options.threads, 1), static_cast<int>(moves.size()));
        if (workers <= 1 || moves.size() < 64) {
            for (std::size_t i = 0; i < moves.size(); ++i)
                slots[i] = evaluate(current, u_coh_before, u_sta_before, moves[i]);
        } else {
            std::vector<std::thread> pool;
            pool.reserve(workers);
            for (int w = 0; w < workers; ++w) {
                pool.emplace_back([&, w] {
                    for (std::size_t i = w; i < moves.size(); i += workers)
                        slots[i] = evaluate(current, u_coh_before, u_sta_before, moves[i]);
                });
            }
            for (std::thread& t : pool) t.join();
        }

        std::vector<CandidateEvaluation> valid;
        for (auto& slot : slots)
            if (slot) valid.push_back(std::move(*slot));
        return valid;
    }
};

} // namespace

std::vector<CandidateEvaluation> valid_moves(const DependencyGraph& graph,
                                             const Partition& partition,
                                             const Partition& previous,
                                             const CommonRestriction& restriction,
                                             const ThresholdConfig& config,
                                             const EngineOptions& options) {
    Round round(graph, previous, restriction, config, options);
    double u_coh_before = u_coh(graph, partition);
    double u_sta_before = round.stability(partition);
    return round.collect(partition, u_coh_before, u_sta_before, nullptr);
}

const CandidateEvaluation& select_move(const std::vector<CandidateEvaluation>& candidates) {
    if (candidates.empty()) throw Error("deadlock");
    const CandidateEvaluation* best = &candidates.front();
    for (const CandidateEvaluation& cand : candidates) {
        if (cand.ratio < best->ratio ||
            (cand.ratio == best->ratio &&
             (cand.move.module < best->move.module ||
              (cand.move.module == best->move.module &&
               cand.move.to_cluster < best->move.to_cluster))))
            best = &cand;
    }
    return *best;
}

NegotiationResult negotiate(const DependencyGraph& graph, const Partition& previous,
                            const CommonRestriction& restriction, const ThresholdConfig& config,
                            const EngineOptions& options) {
    if (config.tau_sta < 0.0 || config.tau_sta > 1.0 || config.tau_coh < 0.0 || config.tau_coh > 1.0)
        throw Error("thresholds must lie in [0,1]");

    Round round(graph, previous, restriction, config, options);

    NegotiationResult result;
    result.final_partition = previous;
    double u_coh_cur = u_coh(graph, previous);
    double u_sta_cur = round.stability(previous);
    result.initial_u_coh = u_coh_cur;
    result.initial_u_sta = u_sta_cur;
    result.termination = Termination::threshold_reached;

    while (u_coh_cur < config.tau_coh) {
        int evaluated = 0;
        std::vector<CandidateEvaluation> candidates =
            round.collect(result.final_partition, u_coh_cur, u_sta_cur, &evaluated);
        if (candidates.empty()) {
            result.termination = Termination::deadlock;
            break;
        }
        const CandidateEvaluation& best = select_move(candidates);

        StepRecord record;
        record.step = static_cast<int>(result.trace.size()) + 1;
        record.move = best.move;
        record.u_coh = best.u_coh_after;
        record.u_sta = best.u_sta_after;
        record.ratio = best.ratio;
        record.sw = social_welfare(best.u_coh_after, best.u_sta_after);
        record.valid_move_count = static_cast<int>(candidates.size());
        record.evaluated_move_count = evaluated;
        if (!result.trace.empty() && record.ratio < result.trace.back().ratio)
            ++result.ratio_decreases;
        result.trace.push_back(record);

        result.final_partition = best.partition_after;
        u_coh_cur = best.u_coh_after;
        u_sta_cur = best.u_sta_after;
    }
    return result;
}

bool verify_local_pareto(const DependencyGraph& graph, const Partition& final_partition,
                         const Partition& previous, const CommonRestriction& restriction,
                         const ThresholdConfig& config, MojoMode mode) {
    Partition previous_common = restrict_partition(previous, restriction, Side::new_version);
    double u_coh_here = u_coh(graph, final_partition);
    for (const Move& move : enumerate_moves(final_partition)) {
        Partition after = apply_move(final_partition, move);
        if (u_coh(graph, after) - u_coh_here <= kImprovementEpsilon) continue;
        Partition after_common = restrict_partition(after, restriction, Side::new_version);
        double stability = u_sta(after_common, previous_common, restriction.n_common(), mode);
        if (stability >= config.tau_sta) return false;
    }
    return true;
}

} // namespace amcp
