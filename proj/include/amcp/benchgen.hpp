#pragma once

#include <cstdint>

#include "amcp/graph.hpp"
#include "amcp/partition.hpp"

namespace amcp {

// Block-structured synthetic benchmark parameters.
// Requires 0 <= p_out <= p_in <= 1, 0 <= perturb_fraction <= 1, 1 <= blocks <= n.
struct BenchSpec {
    int n = 0;
    int blocks = 1;
    double p_in = 1.0;
    double p_out = 0.0;
    double perturb_fraction = 0.0;
    std::uint64_t seed = 0;
};

struct BenchInstance {
    DependencyGraph graph;
    Partition ground_truth;
    Partition previous;
};

// Deterministic generator, bit-stable across platforms:
//  - modules named m000.. (zero-padded, so lexicographic order = numeric);
//  - blocks near-even, remainder modules to the first blocks, assigned
//    contiguously; ground_truth = that block partition;
//  - edge stream: std::mt19937_64(seed), one draw per ordered pair (i,j),
//    i != j, row-major; pair kept (weight 1) when draw < p_in / p_out;
//    doubles mapped as (x >> 11) * 2^-53, never via std::distributions;
//  - perturbation stream: std::mt19937_64(seed ^ 0x9e3779b97f4a7c15):
//    partial Fisher-Yates picks ceil(perturb_fraction*n) distinct modules,
//    each then reassigned to a uniformly drawn other block; bounded draws
//    use power-of-two masking with rejection.
BenchInstance generate(const BenchSpec& spec);

} // namespace amcp
