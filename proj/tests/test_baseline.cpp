#include <doctest.h>

#include <random>

#include "amcp/baseline.hpp"
#include "amcp/benchgen.hpp"
#include "testutil.hpp"

using namespace amcp;

TEST_CASE("hill climb stays put at a local optimum") {
    DependencyGraph cliques =
        build_graph({{"a", "b", 1}, {"b", "a", 1}, {"c", "d", 1}, {"d", "c", 1}});
    Partition truth = make_partition({0, 0, 1, 1});
    HillClimbResult result = hillclimb_turbomq(cliques, truth);
    CHECK(result.steps.empty());
    CHECK(result.final_partition == truth);
}

TEST_CASE("hill climb merges the worked example into one cluster") {
    DependencyGraph g = testutil::worked_example_graph();
    HillClimbResult result = hillclimb_turbomq(g, testutil::worked_example_previous());
    REQUIRE(result.steps.size() == 1);
    CHECK(result.final_partition.k == 1);
    CHECK(result.steps[0].turbomq_after == doctest::Approx(1.0));
}

TEST_CASE("hill climb ascends and terminates at a single-move optimum") {
    std::mt19937_64 rng(51);
    for (int round = 0; round < 40; ++round) {
        int n = 3 + static_cast<int>(testutil::draw_index(rng, 4));
        DependencyGraph g = testutil::random_graph(n, 0.5, rng, 2);
        Partition start = testutil::random_partition(n, rng);
        HillClimbResult result = hillclimb_turbomq(g, start);

        double before = turbomq(g, start);
        double last = before;
        for (const HillClimbStep& step : result.steps) {
            CHECK(step.turbomq_after > last);
            last = step.turbomq_after;
        }
        CHECK(turbomq(g, result.final_partition) >= before);

        // no remaining single-move improvement
        for (const Move& move : enumerate_moves(result.final_partition)) {
            CHECK(turbomq(g, apply_move(result.final_partition, move)) - last <=
                  kImprovementEpsilon);
        }
    }
}

TEST_CASE("hill climb honors the step cap") {
    DependencyGraph g = testutil::worked_example_graph();
    HillClimbResult result = hillclimb_turbomq(g, testutil::worked_example_previous(), 0);
    CHECK(result.steps.empty());
    CHECK(result.final_partition == testutil::worked_example_previous());
}

TEST_CASE("compare_runs emits an AMCP row and a tau-free baseline row") {
    BenchSpec spec{16, 3, 0.8, 0.05, 0.25, 7};
    BenchInstance instance = generate(spec);
    CommonRestriction restriction = identity_restriction(instance.graph.modules);
    std::vector<ComparisonRow> rows =
        compare_runs(instance.graph, instance.previous, restriction, {0.8, 0.95});
    REQUIRE(rows.size() == 2);
    CHECK(rows[0].system == "amcp");
    CHECK(rows[0].tau_sta.has_value());
    CHECK(rows[0].sw == doctest::Approx(rows[0].u_coh + rows[0].u_sta));
    CHECK(rows[1].system == "hillclimb");
    CHECK(!rows[1].tau_sta.has_value());
    CHECK(rows[1].sw == doctest::Approx(rows[1].u_coh + rows[1].u_sta));
}
