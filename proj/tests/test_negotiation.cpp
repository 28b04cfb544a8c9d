#include <doctest.h>

#include <random>
#include <set>

#include "amcp/benchgen.hpp"
#include "amcp/error.hpp"
#include "amcp/negotiation.hpp"
#include "testutil.hpp"

using namespace amcp;

namespace {

struct WorkedExample {
    DependencyGraph graph = testutil::worked_example_graph();
    Partition previous = testutil::worked_example_previous();
    CommonRestriction restriction = identity_restriction(graph.modules);
};

} // namespace

TEST_CASE("concession_ratio reproduces the bargaining arithmetic") {
    CHECK(concession_ratio(1.0, 0.98, 0.50, 0.52) == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(concession_ratio(1.0, 0.90, 0.50, 0.55) == doctest::Approx(2.0).epsilon(1e-12));
    CHECK(concession_ratio(0.8, 0.8, 0.50, 0.55) == 0.0);
    CHECK(concession_ratio(0.5, 0.7, 0.50, 0.55) < 0.0); // stability improved
    CHECK_THROWS_AS(concession_ratio(1.0, 0.9, 0.5, 0.5), Error);
}

TEST_CASE("valid_moves on the worked example") {
    WorkedExample ex;

    SUBCASE("tight budget leaves no valid move") {
        auto candidates = valid_moves(ex.graph, ex.previous, ex.previous, ex.restriction, {0.7, 0.9});
        CHECK(candidates.empty());
    }
    SUBCASE("relaxed budget admits exactly the merge move") {
        auto candidates = valid_moves(ex.graph, ex.previous, ex.previous, ex.restriction, {0.6, 0.9});
        REQUIRE(candidates.size() == 1);
        CHECK(candidates[0].move == Move{2, 1, 0});
        CHECK(candidates[0].ratio == doctest::Approx(0.5).epsilon(1e-12));
        CHECK(candidates[0].u_coh_after == doctest::Approx(1.0));
        CHECK(candidates[0].u_sta_after == doctest::Approx(2.0 / 3.0));
    }
    SUBCASE("zero budget never binds") {
        auto candidates = valid_moves(ex.graph, ex.previous, ex.previous, ex.restriction, {0.0, 0.9});
        CHECK(!candidates.empty());
    }
}

TEST_CASE("select_move minimizes ratio with deterministic tie-breaks") {
    CandidateEvaluation a;
    a.move = {3, 0, 1};
    a.ratio = 1.0;
    CandidateEvaluation b;
    b.move = {1, 0, 1};
    b.ratio = 2.0;
    CHECK(select_move({a, b}).ratio == 1.0);
    CHECK(select_move({b}).move == b.move);

    CandidateEvaluation tie = a;
    tie.move = {1, 0, 2};
    CHECK(select_move({a, tie}).move == tie.move); // lower module index wins
    CandidateEvaluation tie2 = a;
    tie2.move = {3, 0, 2};
    CHECK(select_move({tie2, a}).move == a.move); // then lower target label

    CandidateEvaluation negative = b;
    negative.move = {5, 0, 1};
    negative.ratio = -0.25;
    CHECK(select_move({a, negative}).ratio == -0.25); // negatives preferred

    CHECK_THROWS_WITH_AS(select_move({}), "deadlock", Error);
}

TEST_CASE("negotiate stops immediately under the tight budget") {
    WorkedExample ex;
    NegotiationResult result = negotiate(ex.graph, ex.previous, ex.restriction, {0.7, 0.9});
    CHECK(result.trace.empty());
    CHECK(result.termination == Termination::deadlock);
    CHECK(result.final_partition == ex.previous);
    CHECK(result.initial_u_coh == doctest::Approx(1.0 / 3.0));
    CHECK(result.initial_u_sta == doctest::Approx(1.0));
    CHECK(verify_local_pareto(ex.graph, result.final_partition, ex.previous, ex.restriction, {0.7, 0.9}));
}

TEST_CASE("negotiate accepts the merge under the relaxed budget") {
    WorkedExample ex;
    NegotiationResult result = negotiate(ex.graph, ex.previous, ex.restriction, {0.6, 0.9});
    REQUIRE(result.trace.size() == 1);
    CHECK(result.termination == Termination::threshold_reached);
    CHECK(result.trace[0].move == Move{2, 1, 0});
    CHECK(result.trace[0].u_coh == doctest::Approx(1.0));
    CHECK(result.trace[0].u_sta == doctest::Approx(2.0 / 3.0));
    CHECK(result.trace[0].ratio == doctest::Approx(0.5).epsilon(1e-12));
    CHECK(result.trace[0].valid_move_count == 1);
    CHECK(result.trace[0].evaluated_move_count == 3);
    CHECK(result.final_partition.k == 1);
}

TEST_CASE("negotiate returns immediately when the cohesion threshold already holds") {
    WorkedExample ex;
    NegotiationResult result = negotiate(ex.graph, ex.previous, ex.restriction, {0.6, 0.2});
    CHECK(result.trace.empty());
    CHECK(result.termination == Termination::threshold_reached);
}

TEST_CASE("negotiate validates thresholds") {
    WorkedExample ex;
    CHECK_THROWS_AS(negotiate(ex.graph, ex.previous, ex.restriction, {-0.1, 0.9}), Error);
    CHECK_THROWS_AS(negotiate(ex.graph, ex.previous, ex.restriction, {0.5, 1.5}), Error);
}

TEST_CASE("verify_local_pareto flags states with remaining valid moves") {
    WorkedExample ex;
    // relaxed budget: the merge move is still open from D_prev
    CHECK(!verify_local_pareto(ex.graph, ex.previous, ex.previous, ex.restriction, {0.6, 0.9}));
}

TEST_CASE("negotiation is deterministic and obeys the protocol invariants") {
    std::mt19937_64 rng(41);
    for (int round = 0; round < 30; ++round) {
        BenchSpec spec;
        spec.n = 6 + static_cast<int>(testutil::draw_index(rng, 15));
        spec.blocks = 2 + static_cast<int>(testutil::draw_index(rng, 3));
        spec.p_in = 0.5 + 0.4 * testutil::draw_unit(rng);
        spec.p_out = 0.1 * testutil::draw_unit(rng);
        spec.perturb_fraction = 0.4 * testutil::draw_unit(rng);
        spec.seed = rng();
        BenchInstance instance = generate(spec);
        CommonRestriction restriction = identity_restriction(instance.graph.modules);

        ThresholdConfig config;
        config.tau_sta = 0.5 + 0.5 * testutil::draw_unit(rng);
        config.tau_coh = 0.9;

        NegotiationResult first = negotiate(instance.graph, instance.previous, restriction, config);
        NegotiationResult second = negotiate(instance.graph, instance.previous, restriction, config);
        REQUIRE(first.trace.size() == second.trace.size());
        for (std::size_t i = 0; i < first.trace.size(); ++i) {
            CHECK(first.trace[i].move == second.trace[i].move);
            CHECK(first.trace[i].u_coh == second.trace[i].u_coh); // bit-identical
            CHECK(first.trace[i].ratio == second.trace[i].ratio);
        }
        CHECK(first.final_partition == second.final_partition);

        // strict ascent, budget, step bound, no revisits
        double prev_u_coh = first.initial_u_coh;
        std::set<std::vector<int>> seen{instance.previous.assignment};
        Partition replay = instance.previous;
        for (const StepRecord& record : first.trace) {
            CHECK(record.u_coh > prev_u_coh);
            CHECK(record.u_sta >= config.tau_sta);
            prev_u_coh = record.u_coh;
            replay = apply_move(replay, record.move);
            CHECK(seen.insert(replay.assignment).second);
        }
        CHECK(replay == first.final_partition);
        CHECK(first.trace.size() <=
              static_cast<std::size_t>(instance.graph.n()) * (instance.previous.k - 1));
        if (first.termination == Termination::deadlock)
            CHECK(verify_local_pareto(instance.graph, first.final_partition, instance.previous,
                                      restriction, config));
        else
            CHECK(prev_u_coh >= config.tau_coh);
    }
}

TEST_CASE("threaded evaluation matches single-threaded traces") {
    BenchSpec spec{20, 4, 0.7, 0.05, 0.3, 99};
    BenchInstance instance = generate(spec);
    CommonRestriction restriction = identity_restriction(instance.graph.modules);
    ThresholdConfig config{0.6, 0.95};
    EngineOptions sequential;
    EngineOptions threaded;
    threaded.threads = 4;
    NegotiationResult a = negotiate(instance.graph, instance.previous, restriction, config, sequential);
    NegotiationResult b = negotiate(instance.graph, instance.previous, restriction, config, threaded);
    REQUIRE(a.trace.size() == b.trace.size());
    for (std::size_t i = 0; i < a.trace.size(); ++i) {
        CHECK(a.trace[i].move == b.trace[i].move);
        CHECK(a.trace[i].u_coh == b.trace[i].u_coh);
    }
    CHECK(a.final_partition == b.final_partition);
}
