#pragma once

#include <cstdint>
#include <vector>

#include "correlation.hpp"
#include "graph.hpp"
#include "kernel.hpp"
#include "matrix.hpp"

namespace orka {

constexpr std::uint64_t kDefaultEnumBudget = 100'000'000ull;

struct BruteForceResult {
    ShiftVector lambda;
    double tau = 0.0;
    std::uint64_t candidates = 0;
};

// Enumerates every C-Lipschitz shift vector with lambda_1 = 0 and returns the
// tau_K maximizer. Tie order matches the graph DP. Intended for desk-scale
// validation only; throws BudgetError past the enumeration budget.
BruteForceResult brute_force_best_lambda(const Matrix& d, double mu, long c,
                                         std::size_t k_band, int dims = 1,
                                         std::uint64_t budget = kDefaultEnumBudget);

// Approximation-error bounds for the K-truncation, exp and Gaussian form.
struct ErrorBoundReport {
    std::size_t n = 0, k = 0;
    double mu = 0.0;
    double phi = 0.0;
    double g = 0.0;            // G(mu, N) = 1 / (mu sinh(phi) sinh(N phi))
    double bound_exp = 0.0;    // 2 G (N-K)^2 e^{(N-K) phi}
    double bound_gauss = 0.0;  // G (N-K)^2 e^{(N-K)^2 phi^2 / 2}
    double theorem_bound = 0.0;  // min of the two
};

ErrorBoundReport error_bounds(std::size_t n, std::size_t k, double mu);

struct TheoremCheck {
    double left = 0.0;  // tau_{N-1}(best full) - tau_{N-1}(best truncated)
    ErrorBoundReport bound;
    bool holds = false;
    ShiftVector best_full, best_truncated;
};

// Evaluates both sides of the truncation-error theorem by exhaustive search.
// Requires normalized columns for the bound to apply.
TheoremCheck verify_theorem(const Matrix& d, double mu, long c, std::size_t k,
                            std::uint64_t budget = kDefaultEnumBudget);

}  // namespace orka
