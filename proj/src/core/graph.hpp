#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "correlation.hpp"
#include "kernel.hpp"
#include "matrix.hpp"

namespace orka {

constexpr std::uint64_t kDefaultNodeBudget = 1ull << 28;

// Per-step relative moves of the DP, each component in [-C, C].
struct MoveSet {
    int dims = 1;
    long lipschitz = 1;
    // Tie order: most-negative-first by default; centered (0, +-1, ...) for the
    // mu = infinity background pass where zero drift is the intended answer.
    bool centered_ties = false;

    std::size_t span() const { return static_cast<std::size_t>(2 * lipschitz + 1); }
    std::size_t count() const { return dims == 2 ? span() * span() : span(); }

    long move_x(std::size_t c) const {
        return static_cast<long>(c % span()) - lipschitz;
    }
    long move_y(std::size_t c) const {
        return dims == 2 ? static_cast<long>(c / span()) - lipschitz : 0;
    }

    // Canonical move indices in tie-break preference order.
    std::vector<std::uint32_t> enumeration_order() const;
};

struct LongestPathResult {
    ShiftVector lambda;
    double path_weight = 0.0;  // sum of edge weights; tau_K(lambda) = 2*path + diagonal terms
    std::uint64_t nodes_per_partition = 1;      // steady-state count
    std::vector<std::uint64_t> partition_nodes; // per partition j = 0..N-1
};

// Maximizes tau_K over C-Lipschitz shift vectors anchored at lambda_1 = 0 by
// forward DP over the (K,C)-approximation graph, holding two partitions of
// states at a time. Throws BudgetError when (2C+1)^((K-1)*dims) exceeds the
// node budget.
LongestPathResult longest_path(const CorrelationBand& band, const KernelWeights& kernel,
                               const MoveSet& moves, std::size_t k_band,
                               std::uint64_t node_budget = kDefaultNodeBudget);

// Weight of the edge entering column j (0-based) given the relative-shift
// history [r_{j-1}, r_{j-2}, ...] ordered most recent first, where
// r_l = lambda_l - lambda_{l+1}. Covers the up-to-k_band stored predecessors.
double edge_weight(std::size_t j, std::span<const long> history_x,
                   std::span<const long> history_y, const CorrelationBand& band,
                   const KernelWeights& kernel, std::size_t k_band);

// lambda_1 = 0, lambda_{j+1} = lambda_j - r_j from the relative shifts
// r_j = lambda_j - lambda_{j+1}.
ShiftVector recover_lambda(std::span<const long> rx, std::span<const long> ry,
                           long lipschitz);

}  // namespace orka
