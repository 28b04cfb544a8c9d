#include "amcp/benchgen.hpp"

#include <cmath>
#include <random>

#include "amcp/error.hpp"

namespace amcp {

namespace {

// Raw-bit mappings only; std:: distributions are not bit-stable across
// standard library implementations.
double next_unit(std::mt19937_64& rng) {
    return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

// Uniform draw in [0, bound) by power-of-two masking with rejection.
std::uint64_t next_index(std::mt19937_64& rng, std::uint64_t bound) {
    std::uint64_t mask = bound - 1;
    mask |= mask >> 1;
    mask |= mask >> 2;
    mask |= mask >> 4;
    mask |= mask >> 8;
    mask |= mask >> 16;
    mask |= mask >> 32;
    for (;;) {
        std::uint64_t draw = rng() & mask;
        if (draw < bound) return draw;
    }
}

} // namespace

BenchInstance generate(const BenchSpec& spec) {
    if (spec.n < 1) throw Error("benchmark needs at least one module");
    if (spec.blocks < 1 || spec.blocks > spec.n) throw Error("blocks must lie in [1, n]");
    if (!(spec.p_out >= 0.0 && spec.p_out <= spec.p_in && spec.p_in <= 1.0))
        throw Error("require 0 <= p_out <= p_in <= 1");
    if (spec.perturb_fraction < 0.0 || spec.perturb_fraction > 1.0)
        throw Error("perturb_fraction must lie in [0,1]");

    const int n = spec.n;
    int width = 1;
    for (int v = n - 1; v >= 10; v /= 10) ++width;
    std::vector<std::string> names(n);
    for (int i = 0; i < n; ++i) {
        std::string digits = std::to_string(i);
        names[i] = "m" + std::string(width - digits.size(), '0') + digits;
    }

    // Near-even contiguous blocks, remainder to the first blocks.
    std::vector<int> block_of(n);
    int base = n / spec.blocks;
    int remainder = n % spec.blocks;
    int module = 0;
    for (int b = 0; b < spec.blocks; ++b) {
        int size = base + (b < remainder ? 1 : 0);
        for (int s = 0; s < size; ++s) block_of[module++] = b;
    }

    std::mt19937_64 edge_rng(spec.seed);
    std::vector<NamedEdge> edges;
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) {
            if (i == j) continue;
            double draw = next_unit(edge_rng);
            double p = block_of[i] == block_of[j] ? spec.p_in : spec.p_out;
            if (draw < p) edges.push_back({names[i], names[j], 1});
        }
    }

    BenchInstance instance;
    instance.graph = build_graph(edges, names);
    instance.ground_truth = make_partition(block_of);

    std::vector<int> perturbed = block_of;
    // tiny slack keeps exact products (0.1 * 30) from ceiling one too high
    int to_move = static_cast<int>(std::ceil(spec.perturb_fraction * n - 1e-9));
    if (to_move > n) to_move = n;
    if (to_move < 0) to_move = 0;
    if (to_move > 0 && spec.blocks > 1) {
        std::mt19937_64 perturb_rng(spec.seed ^ 0x9e3779b97f4a7c15ULL);
        std::vector<int> order(n);
        for (int i = 0; i < n; ++i) order[i] = i;
        for (int i = 0; i < to_move; ++i) {
            int j = i + static_cast<int>(next_index(perturb_rng, static_cast<std::uint64_t>(n - i)));
            std::swap(order[i], order[j]);
        }
        for (int i = 0; i < to_move; ++i) {
            int target = static_cast<int>(next_index(perturb_rng, static_cast<std::uint64_t>(spec.blocks - 1)));
            if (target >= block_of[order[i]]) ++target;
            perturbed[order[i]] = target;
        }
    }
    instance.previous = make_partition(perturbed);
    return instance;
}

} // namespace amcp
